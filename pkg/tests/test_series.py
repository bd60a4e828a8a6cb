"""Truncated series: arithmetic, roots, reversion, completion, hat chart."""

import json
import random
from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from soscert.poly import Poly, parse_poly
from soscert.series import (
    HAT_VARS,
    NotApplicable,
    TruncSeries,
    adic_decompose,
    complete_squares,
    compose_univariate,
    hat_chart,
    hat_change,
    inverse_unit,
    nth_root_unit,
    reversion,
    sqrt_unit,
    substitute_series,
)

T = ("t",)
XY = ("x", "y")
XYZ = ("x", "y", "z")


def S(text, vars=T, n=10):
    return TruncSeries(parse_poly(text, vars), n)


# -- arithmetic and order -----------------------------------------------------

def test_truncation_discards_high_terms():
    assert (S("1+t", n=1) * S("1-t", n=1)).body == parse_poly("1", T)


def test_order_of_f1_series():
    s = TruncSeries(parse_poly("w^3 - 3*u^2*v*w + u^5 + u*v^3", ("u", "v", "w")), 10)
    assert s.order() == 3


def test_order_of_zero_body():
    assert TruncSeries.zero(T, 10).order() is None


def test_series_arith_dispatch():
    from soscert.series import series_arith

    a, b = S("1+t", n=4), S("1-t", n=4)
    assert series_arith(a, b, "mul") == S("1-t^2", n=4)
    assert series_arith(a, b, "sub") == S("2*t", n=4)
    with pytest.raises(ValueError):
        series_arith(a, b, "pow")


def test_order_is_a_valuation():
    rng = random.Random(7)
    for _ in range(40):
        a_terms = {
            (rng.randint(0, 3), rng.randint(0, 3)): Fraction(rng.randint(1, 5))
            for _ in range(rng.randint(1, 3))
        }
        b_terms = {
            (rng.randint(0, 3), rng.randint(0, 3)): Fraction(rng.randint(1, 5))
            for _ in range(rng.randint(1, 3))
        }
        a = TruncSeries(Poly(XY, a_terms), 12)
        b = TruncSeries(Poly(XY, b_terms), 12)
        prod = a * b
        if prod.order() is not None:
            assert prod.order() >= a.order() + b.order()
        # positive coefficients: the lowest forms cannot cancel
        assert prod.order() == a.order() + b.order()


# -- roots, inverses, reversion -------------------------------------------------

def test_sqrt_binomial_series():
    r = sqrt_unit(S("1+t", n=4))
    assert r.body == parse_poly("1 + 1/2*t - 1/8*t^2 + 1/16*t^3 - 5/128*t^4", T)


def test_eighth_root_defines_hat_y():
    n = 16
    unit = S("1 - y^2 + y^3", ("y",), n)
    yhat = TruncSeries.variable(("y",), "y", n) * nth_root_unit(unit, 8)
    assert (yhat ** 8) == S("y^8 - y^10 + y^11", ("y",), n)


def test_root_of_one_is_one():
    assert nth_root_unit(S("1", n=8), 5) == S("1", n=8)


def test_root_requires_unit_constant_one():
    with pytest.raises(ValueError):
        nth_root_unit(S("2+t", n=4), 2)


@given(st.integers(2, 5))
@settings(max_examples=10, deadline=None)
def test_root_power_round_trip(n):
    s = S("1 + t + 2*t^2 - 1/3*t^3", n=12)
    assert nth_root_unit(s, n) ** n == s


def test_inverse_unit():
    s = S("1 - t", n=8)
    inv = inverse_unit(s)
    assert s * inv == S("1", n=8)
    with pytest.raises(ValueError):
        inverse_unit(S("t", n=4))


def test_reversion_catalan_oracle():
    golden = json.loads(
        (resources.files("soscert") / "data" / "goldens.json").read_text(encoding="utf-8")
    )["reversion_t_plus_t2"]
    rev = reversion(S("t + t^2", n=len(golden) - 1))
    coeffs = [str(rev.coeff((k,))) for k in range(len(golden))]
    assert coeffs == golden


def test_reversion_identity():
    assert reversion(S("t", n=8)) == S("t", n=8)


def test_reversion_round_trips_with_composition():
    s = S("t + 3*t^2 - t^3 + 1/2*t^5", n=14)
    rev = reversion(s)
    assert compose_univariate(rev, s) == S("t", n=14)
    assert compose_univariate(s, rev) == S("t", n=14)


def test_reversion_with_scaled_linear_term():
    s = S("2*t + t^2", n=10)
    rev = reversion(s)
    assert compose_univariate(rev, s) == S("t", n=10)


def test_reversion_preconditions():
    with pytest.raises(ValueError):
        reversion(S("1 + t", n=4))
    with pytest.raises(ValueError):
        reversion(S("t^2", n=4))


# -- substitution ----------------------------------------------------------------

def test_substitute_series_is_a_morphism():
    a = parse_poly("x^2 + y", XY)
    b = parse_poly("x - y^2", XY)
    images = {
        "x": S("t + t^2", n=10),
        "y": S("t^3", n=10),
    }
    lhs = substitute_series(a * b, images)
    rhs = substitute_series(a, images) * substitute_series(b, images)
    assert lhs == rhs


# -- layer-by-layer square completion -----------------------------------------------

def test_adic_single_variable_example():
    g = TruncSeries(parse_poly("x^3", ("x",)), 6)
    res = adic_decompose(g, 1)
    a = res.shifts[0]
    assert a.coeff((2,)) == Fraction(1, 2)
    assert a.coeff((3,)) == Fraction(-1, 8)
    assert a.coeff((4,)) == Fraction(1, 16)
    assert res.residual.is_zero()
    assert res.reconstruct() == TruncSeries(parse_poly("x^2 + x^3", ("x",)), 6)


def test_adic_zero_input():
    res = adic_decompose(TruncSeries.zero(XY, 8), 1)
    assert all(a.is_zero() for a in res.shifts) and res.residual.is_zero()


def test_adic_trailing_variable_absorbed():
    g = TruncSeries(parse_poly("y^3", XY), 6)
    res = adic_decompose(g, 1)
    assert res.shifts[0].is_zero()
    assert res.residual.body == parse_poly("y^3", XY)


def test_adic_rejects_low_order_terms():
    with pytest.raises(ValueError):
        adic_decompose(TruncSeries(parse_poly("x^2", XY), 6), 1)
    with pytest.raises(ValueError):
        adic_decompose(TruncSeries(parse_poly("x^3", XY), 6), 5)


def test_adic_random_reconstruction_suite():
    rng = random.Random(20250811)
    n = 12
    for i in range(80):
        arity = 1 + (i % 3)
        vars = tuple("xyz"[:arity])
        r = i % (arity + 1)
        terms = {}
        for _ in range(1 + rng.randrange(4)):
            while True:
                mono = tuple(rng.randint(0, 4) for _ in range(arity))
                if 3 <= sum(mono) <= n:
                    break
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            if c:
                terms[mono] = c
        g = TruncSeries(Poly(vars, terms), n)
        res = adic_decompose(g, r)
        base = Poly(vars, {tuple(2 if k == j else 0 for k in range(arity)): Fraction(1) for j in range(r)})
        assert res.reconstruct() == TruncSeries(base, n) + g
        for a in res.shifts:
            assert a.order() is None or a.order() >= 2
        assert not any(m[j] for m in res.residual.body.terms for j in range(r))


def test_adic_with_scales():
    g = TruncSeries(parse_poly("x^3", XY), 10)
    res = adic_decompose(g, 1, scales=[Fraction(2)])
    assert res.reconstruct() == TruncSeries(parse_poly("2*x^2 + x^3", XY), 10)


# -- quadratic completion --------------------------------------------------------------

def test_complete_squares_diagonal():
    f = TruncSeries(parse_poly("x^2 + y^2 + x^3", XY), 10)
    res = complete_squares(f)
    assert res.scales == (Fraction(1), Fraction(1))
    assert res.residual.is_zero()
    assert res.reconstruct() == f


def test_complete_squares_one_elimination_step():
    f = TruncSeries(parse_poly("x^2 + 2*x*y + 2*y^2 + y^5", XY), 12)
    res = complete_squares(f)
    assert res.scales == (Fraction(1), Fraction(1))
    assert [str(p) for p in res.forward] == ["x + y", "y"]
    assert res.residual.is_zero()
    assert res.reconstruct() == f


def test_complete_squares_indefinite():
    res = complete_squares(TruncSeries(parse_poly("x^2 - y^2", XY), 8))
    assert isinstance(res, NotApplicable)
    assert "negative pivot" in res.reason


def test_complete_squares_cross_term_without_diagonal():
    res = complete_squares(TruncSeries(parse_poly("2*x*y + x^3", XY), 8))
    assert isinstance(res, NotApplicable)


def test_complete_squares_residual_in_trailing_variables():
    f = TruncSeries(parse_poly("x^2 + 2*x*y + y^2 + z^5", XYZ), 10)
    res = complete_squares(f)
    assert len(res.scales) == 1
    assert not res.residual.is_zero()
    assert res.reconstruct() == f


def test_complete_squares_rank_deficient():
    W = ("w", "x", "y", "z")
    res = complete_squares(TruncSeries(parse_poly("w^2 + x^4 + y^4 + z^4", W), 8))
    assert isinstance(res, NotApplicable)
    assert "rank" in res.reason


def test_complete_squares_requires_order_two():
    with pytest.raises(ValueError):
        complete_squares(TruncSeries(parse_poly("x^3", XY), 8))


# -- hat chart ------------------------------------------------------------------------

@pytest.fixture(scope="module")
def chart():
    return hat_chart(24)


def test_hat_defining_relations(chart):
    assert chart.yhat ** 8 == TruncSeries(parse_poly("y^8 - y^10 + y^11", ("y",)), 24)
    assert chart.zhat ** 2 == TruncSeries(parse_poly("z^2 - 2*z^3", ("z",)), 24)


def test_hat_change_of_h_is_exactly_yh8(chart):
    h = parse_poly("y^8 - y^10 + y^11", XYZ)
    assert hat_change(h, chart).body == Poly(HAT_VARS, {(0, 8, 0): Fraction(1)})


def test_hat_change_of_x_is_xh(chart):
    assert hat_change(parse_poly("x", XYZ), chart).body == Poly(HAT_VARS, {(1, 0, 0): Fraction(1)})


def test_hat_change_is_a_ring_morphism(chart):
    a = parse_poly("x + y^2", XYZ)
    b = parse_poly("z - x*y", XYZ)
    assert hat_change(a * b, chart) == hat_change(a, chart) * hat_change(b, chart)


def test_hat_reversion_round_trip(chart):
    composed = compose_univariate(chart.y_of_yhat.embed(("y",), {"yh": "y"}), chart.yhat)
    assert composed == TruncSeries(parse_poly("y", ("y",)), 24)
