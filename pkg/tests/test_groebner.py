"""Groebner engine: orders, bases, normal forms, quotients, localization."""

import json
from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from soscert.errors import BudgetExceededError, NotOnVarietyError
from soscert.groebner import (
    GREVLEX,
    LEX,
    Ideal,
    MonOrder,
    buchberger_criterion,
    dimension,
    groebner_basis,
    ideal_product,
    ideal_quotient,
    ideal_square,
    jacobian_rank_at,
    leading_monomial,
    local_order_bound,
    member_localized,
    normal_form,
)
from soscert.poly import GaussRat, Poly, parse_poly

UVW = ("u", "v", "w")
XYZ = ("x", "y", "z")
XY = ("x", "y")


def gold():
    return json.loads(
        (resources.files("soscert") / "data" / "goldens.json").read_text(encoding="utf-8")
    )


def ic():
    return Ideal([parse_poly(s, UVW) for s in ("u^3-v*w", "v^2-u*w", "w^2-u^2*v")])


def igamma():
    return Ideal(
        [
            parse_poly(s, XYZ)
            for s in ("x^6-y^2*(z^2+1)", "y^4-x^2*(z^2+1)", "(z^2+1)^2-x^4*y^2")
        ]
    )


F1 = parse_poly("u^5+u*v^3+w^3-3*u^2*v*w", UVW)
F_CX = parse_poly("x^10+x^2*y^6+(z^2+1)^3-3*x^4*y^2*(z^2+1)", XYZ)


# -- monomial orders -------------------------------------------------------------

def test_orders_are_total_and_respect_multiplication():
    monos = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 2), (1, 1, 0), (2, 0, 1)]
    for order in (GREVLEX, LEX, MonOrder("elim", 1)):
        keys = [order.key(m) for m in monos]
        assert len(set(keys)) == len(keys)
        one = order.key((0, 0, 0))
        for m in monos[1:]:
            assert order.key(m) > one
        # compatible with multiplication
        for a in monos:
            for b in monos:
                if order.key(a) > order.key(b):
                    shifted = tuple(x + 1 for x in a[:1]) + a[1:]
                    shifted_b = tuple(x + 1 for x in b[:1]) + b[1:]
                    assert order.key(shifted) > order.key(shifted_b)


def test_grevlex_tie_break():
    # same degree: last nonzero exponent difference negative means larger
    assert GREVLEX.key((0, 2, 0)) > GREVLEX.key((1, 0, 1))


def test_elim_order_blocks():
    elim = MonOrder("elim", 1)
    assert elim.key((1, 0, 0)) > elim.key((0, 9, 9))


# -- bases -------------------------------------------------------------------------

def test_principal_ideal_basis():
    basis = Ideal([parse_poly("x", XY)]).groebner()
    assert [str(g) for g in basis] == ["x"]


def test_demo_basis_matches_golden():
    demo = Ideal([parse_poly("x^2+y^2", XY), parse_poly("y^3", XY)])
    assert [str(g) for g in demo.groebner()] == gold()["gb"]["demo_x2y2_y3"]


def test_curve_basis_matches_golden():
    assert [str(g) for g in ic().groebner()] == gold()["gb"]["IC"]


def test_every_generator_reduces_to_zero():
    ideal = ic()
    for g in ideal.generators:
        assert normal_form(g, ideal).member


def test_buchberger_criterion_on_suite_bases():
    for ideal in (ic(), igamma(), ideal_square(ic())):
        assert buchberger_criterion(ideal.groebner())


def test_budget_exceeded_is_structured():
    gens = [parse_poly(s, UVW) for s in ("u^3-v*w", "v^2-u*w", "w^2-u^2*v")]
    with pytest.raises(BudgetExceededError) as err:
        groebner_basis(gens, budget=1)
    assert err.value.budget == 1


@given(
    st.lists(
        st.dictionaries(
            st.tuples(st.integers(0, 2), st.integers(0, 2)),
            st.fractions(min_value=Fraction(-4), max_value=Fraction(4), max_denominator=3).filter(bool),
            min_size=1,
            max_size=3,
        ).map(lambda t: Poly(XY, t)),
        min_size=1,
        max_size=3,
    ).filter(lambda gens: any(not g.is_zero() for g in gens))
)
@settings(max_examples=25, deadline=None)
def test_random_bases_pass_criterion_and_match_sympy(gens):
    basis = groebner_basis(gens)
    assert buchberger_criterion(basis)
    sympy = pytest.importorskip("sympy")
    xs = sympy.symbols("x y")
    sp_gens = []
    for g in gens:
        expr = sympy.Integer(0)
        for mono, c in g.terms.items():
            expr += sympy.Rational(c.numerator, c.denominator) * xs[0] ** mono[0] * xs[1] ** mono[1]
        if expr != 0:
            sp_gens.append(expr)
    G = sympy.groebner(sp_gens, *xs, order="grevlex")
    theirs = set()
    for e in G.exprs:
        sp_poly = sympy.Poly(sympy.expand(e), *xs)
        terms = {
            tuple(int(x) for x in mono): Fraction(int(c.p), int(c.q))
            for mono, c in ((mm, sympy.Rational(cc)) for mm, cc in sp_poly.terms())
        }
        p = Poly(XY, terms)
        theirs.add(p.scale(1 / p.terms[leading_monomial(p, GREVLEX)]))
    assert set(basis) == theirs


# -- normal forms --------------------------------------------------------------------

def test_f1_in_curve_ideal():
    wit = normal_form(F1, ic())
    assert wit.member and wit.check()


def test_pullback_in_pulled_back_ideal():
    wit = normal_form(F_CX, igamma())
    assert wit.member and wit.check()


def test_unit_not_in_proper_monomial_ideal():
    ideal = Ideal([parse_poly("x", XY), parse_poly("y", XY)])
    wit = normal_form(parse_poly("1", XY), ideal)
    assert not wit.member and str(wit.remainder) == "1"


def test_normal_form_idempotent():
    ideal = ic()
    wit = normal_form(parse_poly("u^4 + v^3 + u*v", UVW), ideal)
    again = normal_form(wit.remainder, ideal)
    assert again.remainder == wit.remainder


# -- products and quotients -----------------------------------------------------------

def test_product_of_principal_ideals():
    a = Ideal([parse_poly("x", XY)])
    b = Ideal([parse_poly("y", XY)])
    prod = ideal_product(a, b)
    assert [str(g) for g in prod.generators] == ["x*y"]


def test_square_contains_curve_products():
    assert normal_form(parse_poly("v", UVW) * F1, ideal_square(ic())).member


def test_simple_quotients():
    i1 = Ideal([parse_poly("x^2", XY)])
    q1 = ideal_quotient(i1, parse_poly("x", XY))
    assert [str(g) for g in q1.groebner()] == ["x"]
    i2 = Ideal([parse_poly("x", XY)])
    q2 = ideal_quotient(i2, parse_poly("y", XY))
    assert [str(g) for g in q2.groebner()] == ["x"]


def test_quotient_by_zero_rejected():
    with pytest.raises(ValueError):
        ideal_quotient(ic(), Poly.zero(UVW))


def test_quotient_goldens():
    q1 = ideal_quotient(ideal_square(ic()), F1)
    assert [str(g) for g in q1.groebner()] == gold()["quotient_gb"]["IC2_f1"]
    q2 = ideal_quotient(ideal_square(igamma()), F_CX)
    assert [str(g) for g in q2.groebner()] == gold()["quotient_gb"]["IGamma2_f_cxbad"]


def test_quotient_soundness_every_generator_multiplies_in():
    ideal = ideal_square(ic())
    q = ideal_quotient(ideal, F1)
    for g in q.generators:
        assert normal_form(g * F1, ideal).member


def test_quotient_soundness_on_random_small_instances():
    import random

    rng = random.Random(99)
    for _ in range(15):
        gens = []
        for _ in range(rng.randint(1, 2)):
            terms = {
                (rng.randint(0, 2), rng.randint(0, 2)): Fraction(rng.randint(-3, 3))
                for _ in range(rng.randint(1, 3))
            }
            p = Poly(XY, terms)
            if not p.is_zero():
                gens.append(p)
        if not gens:
            continue
        ideal = Ideal(gens)
        f_terms = {(rng.randint(0, 2), rng.randint(0, 2)): Fraction(rng.randint(1, 3))}
        f = Poly(XY, f_terms)
        q = ideal_quotient(ideal, f)
        for g in q.generators:
            assert normal_form(g * f, ideal).member


def _all_polys_up_to(vars, max_deg):
    import itertools

    monos = [
        m
        for m in itertools.product(*[range(max_deg + 1)] * len(vars))
        if sum(m) <= max_deg
    ]
    return monos


def test_quotient_completeness_by_degree_bounded_linear_algebra():
    """Every g of degree <= 4 with g*f in I lies in the computed quotient."""
    ideal = Ideal([parse_poly("x^2", XY), parse_poly("x*y", XY)])
    f = parse_poly("x", XY)
    quotient = ideal_quotient(ideal, f)
    monos = _all_polys_up_to(XY, 4)
    # brute force: nullspace of the linear map g -> NF(g*f, I) over monomials
    from fractions import Fraction as Fr

    cols = []
    rhs_monos = set()
    for mono in monos:
        g = Poly(XY, {mono: Fr(1)})
        rem = normal_form(g * f, ideal).remainder
        cols.append(rem.terms)
        rhs_monos.update(rem.terms)
    rhs_monos = sorted(rhs_monos)
    rows = [[col.get(mono, Fr(0)) for col in cols] for mono in rhs_monos]
    # nullspace by Gaussian elimination
    ncols = len(cols)
    aug = [row[:] for row in rows]
    pivots = {}
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = aug[r][c]
        aug[r] = [v / inv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                fct = aug[i][c]
                aug[i] = [v - fct * w for v, w in zip(aug[i], aug[r])]
        pivots[c] = r
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    for fc in free:
        vec = [Fr(0)] * ncols
        vec[fc] = Fr(1)
        for c, rr in pivots.items():
            vec[c] = -aug[rr][fc]
        g = Poly(XY, {monos[i]: vec[i] for i in range(ncols) if vec[i]})
        assert normal_form(g, quotient).member, f"missed quotient element {g}"


# -- localized membership ---------------------------------------------------------------

ORIGIN3 = (GaussRat.of(0), GaussRat.of(0), GaussRat.of(0))


def test_f1_not_in_localized_square_at_origin():
    res = member_localized(F1, ideal_square(ic()), ORIGIN3)
    assert not res.member
    assert all(v.is_zero() for v in res.evaluations)


def test_pullback_not_in_localized_square_at_complex_point():
    pt = (GaussRat.of(0), GaussRat.of(0), GaussRat.of(0, 1))
    res = member_localized(F_CX, ideal_square(igamma()), pt)
    assert not res.member
    assert all(v.is_zero() for v in res.evaluations)


def test_member_when_quotient_is_unit():
    ideal = Ideal([parse_poly("x", XYZ)])
    res = member_localized(parse_poly("x", XYZ), ideal, (GaussRat.of(1),) * 3)
    assert res.member
    assert str(res.witness) == "1"
    assert normal_form(res.witness * parse_poly("x", XYZ), ideal).member


def test_member_localized_witness_contract():
    ideal = Ideal([parse_poly("x*y", XY)])
    res = member_localized(parse_poly("x", XY), ideal, (GaussRat.of(0), GaussRat.of(2)))
    # (I : x) = <y>, nonzero at (0, 2)
    assert res.member
    assert not res.witness_value.is_zero()
    assert normal_form(res.witness * parse_poly("x", XY), ideal).member


# -- order bound ---------------------------------------------------------------------------

def test_order_obstruction_for_f1():
    ob = local_order_bound(F1, ic())
    assert ob.obstruction and (ob.f_order, ob.bound) == (3, 4)
    assert str(ob) == "obstruction(3,4)"


def test_order_bound_inconclusive():
    ideal = Ideal([parse_poly("x^2", XY)])
    ob = local_order_bound(parse_poly("x^4", XY), ideal)
    assert not ob.obstruction


def test_order_bound_simple_obstruction():
    ideal = Ideal([parse_poly("u^2", UVW), parse_poly("v^2", UVW)])
    ob = local_order_bound(parse_poly("w^3", UVW), ideal)
    assert ob.obstruction and (ob.f_order, ob.bound) == (3, 4)


def test_order_bound_agrees_with_localized_membership():
    """Cross-validation: the cheap valuation bound never contradicts the
    quotient-based decision at the origin."""
    for ideal, f in ((ic(), F1), (igamma(), F_CX)):
        ob = local_order_bound(f, ideal)
        if ob.obstruction:
            res = member_localized(f, ideal_square(ideal), ORIGIN3)
            assert not res.member


# -- dimension and Jacobian ------------------------------------------------------------------

def test_curve_has_dimension_one():
    assert dimension(ic()) == 1


def test_coordinate_line():
    assert dimension(Ideal([parse_poly("x", XYZ), parse_poly("y", XYZ)])) == 1


def test_double_line_in_plane():
    assert dimension(Ideal([parse_poly("x^2", XY)])) == 1


def test_unit_ideal_rejected():
    with pytest.raises(ValueError):
        dimension(Ideal([parse_poly("1", XY)]))


def test_jacobian_rank_at_smooth_point():
    gens = [parse_poly("x^8-y^6", XYZ), parse_poly("x^10-(z^2+1)^3", XYZ)]
    pt = (GaussRat.of(1), GaussRat.of(1), GaussRat.of(0))
    assert jacobian_rank_at(gens, pt) == 2


def test_jacobian_rank_simple():
    assert jacobian_rank_at([parse_poly("x", XY)], (GaussRat.of(0), GaussRat.of(0))) == 1
    gens = [parse_poly("x^2", XY), parse_poly("y^2", XY)]
    assert jacobian_rank_at(gens, (GaussRat.of(0), GaussRat.of(0))) == 0


def test_jacobian_requires_point_on_variety():
    with pytest.raises(NotOnVarietyError, match="x"):
        jacobian_rank_at([parse_poly("x", XY)], (GaussRat.of(1), GaussRat.of(0)))
