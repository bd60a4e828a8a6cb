"""Polynomial kernel: arithmetic, parsing, evaluation, calculus, supports."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from soscert.errors import ParseError, VariableMismatchError
from soscert.poly import (
    GaussRat,
    Poly,
    format_poly,
    in_convex_hull,
    newton_half_support,
    parse_gauss,
    parse_poly,
)

XY = ("x", "y")
XYZ = ("x", "y", "z")
UVW = ("u", "v", "w")


def P(text, vars=XYZ):
    return parse_poly(text, vars)


# -- strategies ---------------------------------------------------------------

coeffs = st.fractions(
    min_value=Fraction(-6), max_value=Fraction(6), max_denominator=4
).filter(lambda c: c != 0)


def polys(vars=XY, max_exp=3, max_terms=4):
    mono = st.tuples(*[st.integers(0, max_exp)] * len(vars))
    return st.dictionaries(mono, coeffs, max_size=max_terms).map(
        lambda terms: Poly(vars, terms)
    )


# -- arithmetic ---------------------------------------------------------------

def test_difference_of_squares():
    assert P("(x+1)*(x-1)") == P("x^2-1")


def test_curve_identity_exact():
    f1 = parse_poly("u^5+u*v^3+w^3-3*u^2*v*w", UVW)
    lhs = parse_poly("v", UVW) * f1
    rhs = parse_poly("u*(v^2-u*w)^2+(w^2-u^2*v)*(w*v-u^3)", UVW)
    assert lhs == rhs


def test_additive_identity():
    p = P("x^2*y - 3*z")
    assert Poly.zero(XYZ) + p == p


def test_arith_dispatch():
    from soscert.poly import poly_arith

    a, b = P("x+1"), P("x-1")
    assert poly_arith(a, b, "mul") == P("x^2-1")
    assert poly_arith(a, b, "add") == P("2*x")
    assert poly_arith(a, b, "sub") == P("2")
    with pytest.raises(ValueError):
        poly_arith(a, b, "div")


def test_arity_mismatch_error_names_both():
    with pytest.raises(VariableMismatchError) as err:
        parse_poly("x", ("x",)) + parse_poly("y", ("y",))
    assert "x" in str(err.value) and "y" in str(err.value)


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(polys(max_exp=2, max_terms=3), polys(max_exp=2, max_terms=3))
@settings(max_examples=40, deadline=None)
def test_evaluation_is_multiplicative(a, b):
    pt = [GaussRat.of(Fraction(1, 2)), GaussRat.of(-2)]
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)


# -- substitution --------------------------------------------------------------

def test_pullback_of_f1_matches_degree_ten_polynomial():
    f1 = parse_poly("u^5+u*v^3+w^3-3*u^2*v*w", UVW)
    psi = {"u": P("x^2"), "v": P("y^2"), "w": P("z^2+1")}
    assert f1.substitute(psi) == P("x^10 + x^2*y^6 + (z^2+1)^3 - 3*x^4*y^2*(z^2+1)")


def test_pullback_of_first_curve_generator():
    g = parse_poly("u^3-v*w", UVW)
    phi = {"u": P("x^2"), "v": P("y^8-y^10+y^11"), "w": P("-z^2+2*z^3")}
    assert g.substitute(phi) == P("x^6 + (y^8-y^10+y^11)*(z^2-2*z^3)")


def test_identity_substitution():
    p = P("x^2*y - z + 3")
    images = {v: Poly.variable(XYZ, v) for v in XYZ}
    assert p.substitute(images) == p


def test_missing_image_raises():
    with pytest.raises(ValueError, match="no image"):
        P("x*y").substitute({"x": P("x")})


@given(polys(max_exp=2, max_terms=3), polys(max_exp=2, max_terms=3))
@settings(max_examples=30, deadline=None)
def test_substitution_is_a_ring_morphism(a, b):
    images = {"x": parse_poly("u+v", ("u", "v")), "y": parse_poly("u*v-1", ("u", "v"))}
    assert (a + b).substitute(images) == a.substitute(images) + b.substitute(images)
    assert (a * b).substitute(images) == a.substitute(images) * b.substitute(images)


# -- evaluation ------------------------------------------------------------------

def test_h_at_ones():
    h = P("y^8-y^10+y^11")
    assert h.evaluate([1, 1, 1]) == GaussRat.of(1)


def test_f1_vanishes_on_the_parametrized_curve():
    f1 = parse_poly("u^5+u*v^3+w^3-3*u^2*v*w", UVW)
    assert f1.evaluate([8, 16, 32]).is_zero()  # (t^3, t^4, t^5) at t = 2


def test_z_squared_plus_one_at_i():
    assert P("z^2+1").evaluate([GaussRat.of(0), GaussRat.of(0), GaussRat.of(0, 1)]).is_zero()


def test_gauss_parse_and_format():
    for text in ("0", "1", "-2/3", "i", "-i", "1+2*i", "3/4-1/2*i"):
        v = parse_gauss(text)
        assert parse_gauss(str(v)) == v
    assert parse_gauss("i") * parse_gauss("i") == GaussRat.of(-1)
    assert (parse_gauss("1+2*i") / parse_gauss("1+2*i")) == GaussRat.of(1)


# -- calculus ---------------------------------------------------------------------

def test_power_rule():
    assert P("x^10").derivative("x") == P("10*x^9")


def test_hessian_determinant_identity():
    f = P("x^10 + x^2*y^6 + (z^2+1)^3 - 3*x^4*y^2*(z^2+1)")
    H = f.hessian()
    det = H[0][1] * H[1][2] - H[1][1] * H[0][2]
    assert det == P("144*x^5*y^2*z*(4*y^4 + x^2*(z^2+1))")


def test_hessian_of_linear_is_zero():
    H = P("x - 2*y + z").hessian()
    assert all(e.is_zero() for row in H for e in row)


@given(polys(max_exp=3, max_terms=4))
@settings(max_examples=40, deadline=None)
def test_mixed_partials_commute(p):
    assert p.derivative("x").derivative("y") == p.derivative("y").derivative("x")


def test_unknown_variable_in_derivative():
    with pytest.raises(ValueError, match="unknown variable"):
        P("x").derivative("q")


# -- parsing and formatting ---------------------------------------------------------

def test_parse_format_round_trip_examples():
    for text in (
        "x^10 + x^2*y^6 + (z^2+1)^3 - 3*x^4*y^2*(z^2+1)",
        "0",
        "3/4*y^8",
        "-x + 1/2",
    ):
        p = P(text)
        assert parse_poly(format_poly(p), XYZ) == p


@given(polys())
@settings(max_examples=60, deadline=None)
def test_parse_format_round_trip_random(p):
    assert parse_poly(format_poly(p), XY) == p


def test_zero_parses_to_empty_term_map():
    assert P("0").terms == {}


def test_rational_coefficient():
    p = P("3/4*y^8")
    assert p.terms == {(0, 8, 0): Fraction(3, 4)}


def test_syntax_error_carries_position():
    with pytest.raises(ParseError) as err:
        P("x^")
    assert err.value.line == 1 and err.value.column == 3


def test_unknown_variable_rejected():
    with pytest.raises(ParseError, match="unknown variable"):
        P("x + q")


# -- Newton half-support ----------------------------------------------------------

def test_half_support_classical_motzkin():
    p = parse_poly("x^4*y^2+x^2*y^4+1-3*x^2*y^2", XY)
    assert newton_half_support(p) == ((0, 0), (1, 1), (1, 2), (2, 1))


def test_half_support_specialized_variant():
    p = parse_poly("1+4*y^2*z^4+4*y^4*z^2-y^2*z^2", ("y", "z"))
    assert newton_half_support(p) == ((0, 0), (1, 1), (1, 2), (2, 1))


def test_half_support_single_square():
    p = parse_poly("x^2", XY)
    assert newton_half_support(p) == ((1, 0),)


def test_half_support_rejects_zero():
    with pytest.raises(ValueError):
        newton_half_support(Poly.zero(XY))


def _fm_in_hull(point, pts):
    """Independent oracle: Fourier-Motzkin on the convex-combination system."""
    m = len(pts)
    n = len(point)
    # rows: [coeffs over lambda | rhs]; equalities for each coordinate + sum
    rows = [[Fraction(p[i]) for p in pts] + [Fraction(point[i])] for i in range(n)]
    rows.append([Fraction(1)] * m + [Fraction(1)])
    # eliminate variables by substitution where possible
    ineqs = [[Fraction(1 if j == k else 0) for j in range(m)] + [Fraction(0)] for k in range(m)]
    # Gaussian elimination on equalities
    pivots = {}
    r = 0
    for c in range(m):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c]
        rows[r] = [v / inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [v - f * w for v, w in zip(rows[i], rows[r])]
        pivots[c] = r
        r += 1
    for i in range(r, len(rows)):
        if rows[i][m] != 0:
            return False  # inconsistent equalities
    # substitute pivot variables into the nonnegativity inequalities
    free = [c for c in range(m) if c not in pivots]
    subbed = []
    for iq in ineqs:
        expr = [Fraction(0)] * (len(free) + 1)
        expr[-1] = iq[m]
        for c in range(m):
            if iq[c] == 0:
                continue
            if c in pivots:
                row = rows[pivots[c]]
                for fi, fc in enumerate(free):
                    expr[fi] -= iq[c] * row[fc]
                expr[-1] += iq[c] * row[m]
            else:
                expr[free.index(c)] += iq[c]
        subbed.append(expr)  # expr . free_vars + const >= 0
    # Fourier-Motzkin elimination over the free variables
    work = subbed
    for fi in range(len(free)):
        pos = [e for e in work if e[fi] > 0]
        neg = [e for e in work if e[fi] < 0]
        zero = [e for e in work if e[fi] == 0]
        new = list(zero)
        for p_ in pos:
            for n_ in neg:
                combo = [a / p_[fi] - b / n_[fi] for a, b in zip(p_, n_)]
                new.append(combo)
        work = new
    return all(e[-1] >= 0 for e in work)


@given(polys(max_exp=3, max_terms=5).filter(lambda p: not p.is_zero()))
@settings(max_examples=30, deadline=None)
def test_half_support_matches_independent_oracle(p):
    supp = p.support()
    box = [max(s[i] for s in supp) // 2 for i in range(2)]
    expected = tuple(
        sorted(
            (a, b)
            for a in range(box[0] + 1)
            for b in range(box[1] + 1)
            if _fm_in_hull((2 * a, 2 * b), supp)
        )
    )
    assert newton_half_support(p) == expected


def test_in_convex_hull_basics():
    pts = [(0, 0), (4, 0), (0, 4)]
    assert in_convex_hull((1, 1), pts)
    assert in_convex_hull((2, 2), pts)
    assert not in_convex_hull((3, 3), pts)
