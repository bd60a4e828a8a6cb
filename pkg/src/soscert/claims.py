"""Catalog of named objects and the replayable claim suite.

Every headline identity, membership, obstruction, and certificate of the
toolkit is bound to a named claim with a frozen expected outcome.  Claims
recompute everything from the shipped data files (whose hashes are
checked on load) and report pass/fail; reports are byte-identical across
runs and worker counts.
"""

from __future__ import annotations

import hashlib
import json
import random
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable, Optional, Sequence

from .certificates import (
    AmGmCert,
    BadPointCert,
    ConeObstruction,
    DensityWitness,
    SosCert,
    StructNonneg,
    find_non_sos_obstruction,
    sample_nonnegativity,
    birational_avoid,
    verify_avoid_map,
    verify_amgm,
    verify_bad_point,
    verify_cone_obstruction,
    verify_non_sos,
    verify_sos,
)
from .groebner import (
    Ideal,
    buchberger_criterion,
    dimension,
    ideal_quotient,
    ideal_square,
    local_order_bound,
    member_localized,
    normal_form,
)
from .io import load_ideal_text, load_map_text, load_poly_text
from .poly import GaussRat, Poly, parse_poly
from .series import (
    HAT_VARS,
    NotApplicable,
    TruncSeries,
    adic_decompose,
    complete_squares,
    hat_chart,
    hat_change,
    sqrt_unit,
)

DEFAULT_TRUNC = 48
X = ("x", "y", "z")
UVW = ("u", "v", "w")


def _data_text(rel: str) -> str:
    return (resources.files("soscert") / "data" / rel).read_text(encoding="utf-8")


def _data_bytes(rel: str) -> bytes:
    return (resources.files("soscert") / "data" / rel).read_bytes()


class Catalog:
    """Loads the shipped objects, checks their hashes, and caches the
    shared heavy computations (Groebner bases live on the ideals)."""

    def __init__(self, trunc: int = DEFAULT_TRUNC):
        self.trunc = trunc
        self._lock = threading.RLock()
        self._cache: dict[str, object] = {}
        self.hashes = json.loads(_data_text("hashes.json"))
        self.verify_hashes()
        self.goldens = json.loads(_data_text("goldens.json"))
        self.f1 = load_poly_text(_data_text("objects/f1.poly"))
        self.IC = load_ideal_text(_data_text("objects/IC.ideal"))
        self.psi = load_map_text(_data_text("objects/psi.map"))
        self.f_cxbad = load_poly_text(_data_text("objects/f_cxbad.poly"))
        self.IGamma = load_ideal_text(_data_text("objects/IGamma.ideal"))
        self.phi = load_map_text(_data_text("objects/phi.map"))
        self.ID = load_ideal_text(_data_text("objects/ID.ideal"))
        self.ghat = load_ideal_text(_data_text("objects/ghat.ideal"))
        self.h = load_poly_text(_data_text("objects/h.poly"))
        self.f2 = load_poly_text(_data_text("objects/f2.poly"))
        self.f_motzkin4 = load_poly_text(_data_text("objects/f_motzkin4.poly"))
        self.motzkin_classical = load_poly_text(_data_text("objects/motzkin_classical.poly"))

    def verify_hashes(self) -> None:
        for rel, expected in self.hashes.items():
            digest = hashlib.sha256(_data_bytes(rel)).hexdigest()
            if digest != expected:
                raise ValueError(f"data file {rel} does not match its frozen hash")

    def _cached(self, key: str, build: Callable[[], object]):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = build()
            return self._cache[key]

    # -- shared derived objects ------------------------------------------
    @property
    def chart(self):
        return self._cached("chart", lambda: hat_chart(self.trunc + 8))

    @property
    def F_pullback(self) -> Poly:
        """phi^* f1 as a polynomial in x, y, z."""
        return self._cached("F_pullback", lambda: self.f1.substitute(self.phi))

    @property
    def F_hat(self) -> Poly:
        """f1 rewritten in the hat generators' coordinates: u=xh^2, v=yh^8, w=-zh^2."""
        return self._cached(
            "F_hat",
            lambda: self.f1.substitute(
                {
                    "u": parse_poly("xh^2", HAT_VARS),
                    "v": parse_poly("yh^8", HAT_VARS),
                    "w": parse_poly("-zh^2", HAT_VARS),
                }
            ),
        )

    @property
    def y6F_hat(self) -> TruncSeries:
        """hat coordinates of y^6 * phi^*f1, truncated at the suite order."""
        return self._cached(
            "y6F_hat",
            lambda: hat_change(parse_poly("y^6", X) * self.F_pullback, self.chart).truncate(self.trunc),
        )

    @property
    def Y_hat(self) -> TruncSeries:
        """y as a series in yh, embedded into the hat variables."""
        return self._cached(
            "Y_hat", lambda: self.chart.y_of_yhat.embed(HAT_VARS, {"yh": "yh"})
        )

    @property
    def alpha(self) -> TruncSeries:
        """(y^6 - yh^6)/yh^8; constant term 3/4."""
        def build():
            yh6 = TruncSeries(parse_poly("yh^6", HAT_VARS), self.chart.trunc)
            return ((self.Y_hat ** 6) - yh6).shift_down("yh", 8)

        return self._cached("alpha", build)

    def hat_gen_series(self) -> tuple[TruncSeries, TruncSeries, TruncSeries]:
        g1, g2, g3 = self.ghat.generators
        return tuple(TruncSeries(g, self.trunc) for g in (g1, g2, g3))


# ---------------------------------------------------------------------------
# Claim registry

@dataclass(frozen=True)
class Claim:
    id: str
    title: str
    tags: tuple[str, ...]
    run: Callable[[Catalog], tuple[bool, str]]


@dataclass(frozen=True)
class ClaimResult:
    id: str
    title: str
    passed: bool
    detail: str


_REGISTRY: dict[str, Claim] = {}


def claim(id: str, title: str, tags: Sequence[str]):
    def wrap(fn: Callable[[Catalog], tuple[bool, str]]) -> Callable:
        _REGISTRY[id] = Claim(id, title, tuple(tags), fn)
        return fn

    return wrap


def all_claims() -> tuple[Claim, ...]:
    return tuple(_REGISTRY[k] for k in sorted(_REGISTRY))


# -- monomial curve ----------------------------------------------------------

@claim(
    "symboleq",
    "v*f1 decomposes exactly over the curve ideal generators",
    ["monomial-curve"],
)
def _symboleq(cat: Catalog):
    u, v, w = (Poly.variable(UVW, n) for n in UVW)
    g1 = parse_poly("v^2 - u*w", UVW)
    g2 = parse_poly("w^2 - u^2*v", UVW)
    rhs = u * g1 * g1 + g2 * parse_poly("w*v - u^3", UVW)
    lhs = v * cat.f1
    ok = lhs == rhs
    return ok, "v*f1 = u*(v^2-u*w)^2 + (w^2-u^2*v)*(w*v-u^3) holds exactly"


@claim("symb-membership", "f1 lies in the curve ideal I_C", ["monomial-curve"])
def _symb_membership(cat: Catalog):
    wit = normal_form(cat.f1, cat.IC)
    ok = wit.member and wit.check()
    return ok, f"normal form {'is zero' if wit.member else wit.remainder}; division identity checked"


@claim(
    "symb-order-obstruction",
    "order valuation rules f1 out of the localized square at the origin",
    ["monomial-curve", "non-sos-criterion"],
)
def _symb_order(cat: Catalog):
    ob = local_order_bound(cat.f1, cat.IC)
    ok = ob.obstruction and ob.f_order == 3 and ob.bound == 4
    return ok, f"{ob} (order 3 against bound 4)"


@claim(
    "symb-localized-nonmembership",
    "f1 is outside the localized square of I_C at the origin",
    ["monomial-curve", "symbolic-square-localization"],
)
def _symb_localized(cat: Catalog):
    res = member_localized(cat.f1, ideal_square(cat.IC), [GaussRat.of(0)] * 3)
    evals = ", ".join(str(v) for v in res.evaluations)
    return (not res.member), f"quotient basis evaluations at the origin: [{evals}]"


@claim("symb-dimension", "the curve ideal defines a one-dimensional variety", ["monomial-curve"])
def _symb_dimension(cat: Catalog):
    d = dimension(cat.IC)
    return d == 1, f"Krull dimension {d}"


@claim(
    "symb-bad-point",
    "assembled bad-point evidence for the curve at the origin verifies",
    ["monomial-curve", "non-sos-criterion"],
)
def _symb_bad_point(cat: Catalog):
    cert = BadPointCert(
        cat.IC,
        cat.f1,
        (GaussRat.of(0),) * 3,
        "order_bound",
        (DensityWitness((GaussRat.of(1),) * 3, 2),),
    )
    rep = verify_bad_point(cert)
    return rep.ok, f"{sum(l.ok for l in rep.lines)}/{len(rep.lines)} hypotheses pass"


# -- complex bad point -------------------------------------------------------

@claim("cxbad-pullback", "the degree-10 polynomial is the pullback of f1", ["complex-bad-point"])
def _cxbad_pullback(cat: Catalog):
    ok = cat.f1.substitute(cat.psi) == cat.f_cxbad
    return ok, "substitution along (x^2, y^2, z^2+1) reproduces the polynomial exactly"


@claim("cxbad-membership", "the pullback lies in the pulled-back curve ideal", ["complex-bad-point"])
def _cxbad_membership(cat: Catalog):
    wit = normal_form(cat.f_cxbad, cat.IGamma)
    return wit.member and wit.check(), "normal form is zero; division identity checked"


@claim(
    "cxbad-localized-nonmembership",
    "the pullback is outside the localized ideal square at (0,0,i)",
    ["complex-bad-point", "symbolic-square-localization", "non-sos-criterion"],
)
def _cxbad_localized(cat: Catalog):
    pt = (GaussRat.of(0), GaussRat.of(0), GaussRat.of(0, 1))
    res = member_localized(cat.f_cxbad, ideal_square(cat.IGamma), pt)
    evals = ", ".join(str(v) for v in res.evaluations)
    return (not res.member), f"quotient basis evaluations at (0,0,i): [{evals}]"


@claim("cxbad-amgm", "arithmetic-geometric mean certificate for nonnegativity", ["complex-bad-point"])
def _cxbad_amgm(cat: Catalog):
    cert = AmGmCert(
        (
            StructNonneg.of_squares(X, [parse_poly("x^5", X)]),
            StructNonneg.of_squares(X, [parse_poly("x*y^3", X)]),
            StructNonneg(X, (parse_poly("z^2+1", X),), ((parse_poly("z", X), Fraction(1)),)),
        ),
        StructNonneg(X, (parse_poly("x^2", X), parse_poly("y", X)), ((parse_poly("z", X), Fraction(1)),)),
        cat.f_cxbad,
    )
    res = verify_amgm(cert)
    return res.ok, "mean^3 equals the product and the target reconstructs exactly"


@claim("cxbad-hessian-det", "mixed second-derivative determinant identity", ["complex-bad-point"])
def _cxbad_hessian_det(cat: Catalog):
    H = cat.f_cxbad.hessian()
    det = H[0][1] * H[1][2] - H[1][1] * H[0][2]
    expected = parse_poly("144*x^5*y^2*z*(4*y^4 + x^2*(z^2+1))", X)
    return det == expected, "det of the xy/yy/xz/yz block equals 144*x^5*y^2*z*(4*y^4+x^2*(z^2+1))"


@claim(
    "cxbad-hessian-reduction",
    "upper Hessian block reduces to the expected matrix modulo the slice ideal",
    ["complex-bad-point"],
)
def _cxbad_hessian_red(cat: Catalog):
    H = cat.f_cxbad.hessian()
    J = Ideal([parse_poly(s, X) for s in ("z", "x^6 - y^2", "y^4 - x^2")])
    red = [[normal_form(H[a][b], J).remainder for b in (0, 1)] for a in (0, 1)]
    expected = [
        [parse_poly("56*x^2*y^2", X), parse_poly("-12*x^3*y", X)],
        [parse_poly("-12*x^3*y", X), parse_poly("24*x^4", X)],
    ]
    det = red[0][0] * red[1][1] - red[0][1] * red[1][0]
    ok = red == expected and det == parse_poly("1200*x^6*y^2", X)
    return ok, "entries reduce to [[56*x^2*y^2, -12*x^3*y], [-12*x^3*y, 24*x^4]]; det = 1200*x^6*y^2"


@claim(
    "cxbad-bad-point",
    "assembled bad-point evidence at the nonreal point verifies",
    ["complex-bad-point", "non-sos-criterion"],
)
def _cxbad_bad_point(cat: Catalog):
    cert = BadPointCert(
        cat.IGamma,
        cat.f_cxbad,
        (GaussRat.of(0), GaussRat.of(0), GaussRat.of(0, 1)),
        "localized",
        (DensityWitness((GaussRat.of(1), GaussRat.of(1), GaussRat.of(0)), 2),),
    )
    rep = verify_bad_point(cert)
    return rep.ok, f"{sum(l.ok for l in rep.lines)}/{len(rep.lines)} hypotheses pass"


# -- coordinate change construction ------------------------------------------

@claim(
    "genJ-identities",
    "hat-coordinate generators equal the pullbacks of the curve ideal generators",
    ["coordinate-change-construction"],
)
def _genj(cat: Catalog):
    pulled = [g.substitute(cat.phi) for g in cat.IC.generators]
    ok = list(cat.ID.generators) == pulled
    hat_ok = True
    for gen, hat_gen in zip(cat.ID.generators, cat.ghat.generators):
        if hat_change(gen, cat.chart).truncate(cat.trunc).body != hat_gen:
            hat_ok = False
    return ok and hat_ok, "three exact polynomial identities; hat rewrite reproduces the hat generators"


@claim("f2-membership", "f2 lies in the pulled-back curve ideal", ["coordinate-change-construction"])
def _f2_membership(cat: Catalog):
    wit = normal_form(cat.f2, cat.ID)
    return wit.member and wit.check(), "normal form is zero; division identity checked"


@claim("h-not-in-ID", "the unit-at-witness polynomial h avoids the ideal", ["coordinate-change-construction", "symbolic-square-localization"])
def _h_not_in(cat: Catalog):
    wit = normal_form(cat.h, cat.ID)
    one = GaussRat.of(1)
    val = cat.h.evaluate([one, one, one])
    gens_vanish = all(g.evaluate([one, one, one]).is_zero() for g in cat.ID.generators)
    ok = (not wit.member) and val == GaussRat.of(1) and gens_vanish
    return ok, "nonzero normal form; h(1,1,1) = 1 while every generator vanishes there"


@claim("hf2-in-ID2", "h*f2 lies in the square of the ideal", ["coordinate-change-construction", "symbolic-square-localization"])
def _hf2(cat: Catalog):
    wit = normal_form(cat.h * cat.f2, ideal_square(cat.ID))
    return wit.member and wit.check(), "normal form is zero against the squared ideal"


@claim(
    "yhat6zhat6-coefficient",
    "the obstruction monomial coefficient matches the frozen golden",
    ["coordinate-change-construction"],
)
def _yhat_coeff(cat: Catalog):
    c = cat.y6F_hat.coeff((0, 6, 6))
    expected = Fraction(cat.goldens["yhat6zhat6_coefficient"])
    return c == expected and c != 0, f"coefficient of yh^6*zh^6 is {c} (golden {expected})"


@claim(
    "f2-cone-obstruction",
    "the obstruction monomial lies outside every product cone",
    ["coordinate-change-construction", "non-sos-criterion"],
)
def _f2_cone(cat: Catalog):
    cert = ConeObstruction(target=(0, 6, 6))
    res = verify_cone_obstruction(cert, list(cat.ghat.generators), cat.y6F_hat)
    return res.ok, "yh^6*zh^6 appears in the series but in no product support cone"


@claim("g-identity", "the exact polynomial square decomposition of g verifies", ["coordinate-change-construction"])
def _g_identity(cat: Catalog):
    data = json.loads(_data_text("certs/g_identity.json"))
    target = parse_poly(data["target"], HAT_VARS)
    g1, g2, _ = cat.ghat.generators
    built = -(parse_poly("yh^6", HAT_VARS) * cat.F_hat) + g1 * g1 + parse_poly("yh^4", HAT_VARS) * g2 * g2
    if built != target:
        return False, "frozen certificate target does not match the construction"
    items = tuple(
        (StructNonneg.of_scalar(HAT_VARS, Fraction(it["scale"]["scalar"])), parse_poly(it["root"], HAT_VARS))
        for it in data["items"]
    )
    res = verify_sos(SosCert(target, items))
    return res.ok, f"{len(items)} squares reproduce g exactly"


@claim(
    "gprime-square",
    "the y^4 - yh^4 correction splits into two squares through the truncation order",
    ["coordinate-change-construction"],
)
def _gprime(cat: Catalog):
    n = cat.trunc
    yh4 = TruncSeries(parse_poly("yh^4", HAT_VARS), cat.chart.trunc)
    yh6 = TruncSeries(parse_poly("yh^6", HAT_VARS), cat.chart.trunc)
    y4 = cat.Y_hat ** 4
    q = y4 - yh4 - yh6 * Fraction(1, 4)
    if q.order() != 6 or q.coeff((0, 6, 0)) != Fraction(1, 4):
        return False, "lowest term of y^4 - yh^4 - yh^6/4 is not yh^6/4"
    s_root = sqrt_unit(q.shift_down("yh", 6) * 4) * TruncSeries(
        parse_poly("yh^3", HAT_VARS), q.trunc - 6
    ) * Fraction(1, 2)
    _, g2, _ = cat.ghat.generators
    g2s = TruncSeries(g2, n)
    target = (y4 - yh4) * g2s * g2s
    items = (
        (StructNonneg.of_scalar(HAT_VARS, 1), TruncSeries(parse_poly("yh^3", HAT_VARS), n) * Fraction(1, 2) * g2s),
        (StructNonneg.of_scalar(HAT_VARS, 1), s_root.truncate(n) * g2s),
    )
    res = verify_sos(SosCert(target.truncate(n), items, trunc=n))
    return res.ok, f"two squares reproduce the correction through degree {n}"


@claim(
    "gsecond-identity",
    "the alpha-weighted square decomposition verifies through the truncation order",
    ["coordinate-change-construction"],
)
def _gsecond(cat: Catalog):
    n = cat.trunc
    alpha = cat.alpha
    g1, g2, g3 = cat.hat_gen_series()
    yh8 = TruncSeries(parse_poly("yh^8", HAT_VARS), n)
    F_hat_s = TruncSeries(cat.F_hat, n)
    target = alpha.truncate(n) * yh8 * F_hat_s + g1 * g1 + g3 * g3
    one_minus = TruncSeries.constant(HAT_VARS, 1, alpha.trunc) - alpha * alpha * Fraction(1, 4)
    u = sqrt_unit(alpha * Fraction(4, 3))
    v = sqrt_unit(one_minus * Fraction(64, 55))
    xh = TruncSeries(parse_poly("xh", HAT_VARS), n)
    items = (
        (StructNonneg.of_scalar(HAT_VARS, Fraction(3, 4)), u.truncate(n) * xh * g2),
        (StructNonneg.of_scalar(HAT_VARS, 1), g1 - alpha.truncate(n) * Fraction(1, 2) * g3),
        (StructNonneg.of_scalar(HAT_VARS, Fraction(55, 64)), v.truncate(n) * g3),
    )
    res = verify_sos(SosCert(target, items, trunc=n))
    return res.ok, f"alpha*xh^2*g2^2 + middle square + (1-alpha^2/4)*g3^2 holds through degree {n}"


@claim("alpha-constants", "constant terms of alpha and 1 - alpha^2/4", ["coordinate-change-construction"])
def _alpha_constants(cat: Catalog):
    a0 = cat.alpha.constant_term()
    om = Fraction(1) - a0 * a0 / 4
    ok = a0 == Fraction(3, 4) and om == Fraction(55, 64)
    return ok, f"alpha(0) = {a0}, (1 - alpha^2/4)(0) = {om}"


# -- Motzkin variant ----------------------------------------------------------

def _motzkin_specialization(cat: Catalog, w0: Fraction) -> Poly:
    YZ = ("y", "z")
    images = {
        "w": Poly.constant(YZ, w0),
        "x": Poly.constant(YZ, 1),
        "y": Poly.variable(YZ, "y"),
        "z": Poly.variable(YZ, "z"),
    }
    return cat.f_motzkin4.substitute(images)


def _motzkin_nonsos(cat: Catalog, w0: Fraction):
    g = _motzkin_specialization(cat, w0)
    res = find_non_sos_obstruction(g)
    if not res.found:
        return False, "no obstruction found"
    obs = res.obstruction
    ok = (
        obs.beta == (1, 1)
        and obs.coefficient == 1 - w0
        and verify_non_sos(obs).ok
    )
    return ok, f"corner y^2*z^2 has coefficient {obs.coefficient} = 1 - {w0}"


@claim("motzkin4-nonsos-w0-3-2", "specialization at w0 = 3/2 is not a sum of squares", ["motzkin-variant", "non-sos-criterion"])
def _motzkin_32(cat: Catalog):
    return _motzkin_nonsos(cat, Fraction(3, 2))


@claim("motzkin4-nonsos-w0-2", "specialization at w0 = 2 is not a sum of squares", ["motzkin-variant", "non-sos-criterion"])
def _motzkin_2(cat: Catalog):
    return _motzkin_nonsos(cat, Fraction(2))


@claim("motzkin4-nonsos-w0-5", "specialization at w0 = 5 is not a sum of squares", ["motzkin-variant", "non-sos-criterion"])
def _motzkin_5(cat: Catalog):
    return _motzkin_nonsos(cat, Fraction(5))


@claim("motzkin4-classical-nonsos", "the classical ternary sextic pattern is not a sum of squares", ["motzkin-variant"])
def _motzkin_classical(cat: Catalog):
    res = find_non_sos_obstruction(cat.motzkin_classical)
    ok = res.found and res.obstruction.beta == (1, 1) and res.obstruction.coefficient == -3
    return ok, "corner x^2*y^2 has coefficient -3 with a singleton pair audit"


@claim("motzkin4-sampling", "grid falsification finds no negative value", ["motzkin-variant"])
def _motzkin_sampling(cat: Catalog):
    rep = sample_nonnegativity(
        cat.f_motzkin4, [(-2, 2)] * 4, Fraction(1, 4)
    )
    return rep.ok, f"{rep.checked} exact evaluations on [-2,2]^4 with step 1/4, none negative"


@claim(
    "motzkin4-series-sos",
    "the four-variable polynomial is a sum of squares in the truncated series ring",
    ["motzkin-variant", "adic-square-completion"],
)
def _motzkin_series(cat: Catalog):
    n = 16
    W = ("w", "x", "y", "z")
    s = sqrt_unit(TruncSeries(parse_poly("1 - w", W), n))
    items = (
        (StructNonneg.of_scalar(W, 1), TruncSeries(parse_poly("x^3", W), n)),
        (StructNonneg.of_scalar(W, 1), TruncSeries(parse_poly("w*y*z^2", W), n)),
        (StructNonneg.of_scalar(W, 1), TruncSeries(parse_poly("w*y^2*z", W), n)),
        (StructNonneg.of_scalar(W, 1), s * TruncSeries(parse_poly("x*y*z", W), n)),
    )
    res = verify_sos(SosCert(TruncSeries(cat.f_motzkin4, n), items, trunc=n))
    return res.ok, f"sqrt(1 - w) exists at the origin; four squares match through degree {n}"


# -- series toolkit -----------------------------------------------------------

@claim("adic-roundtrip", "random square-completion decompositions reconstruct exactly", ["adic-square-completion"])
def _adic_roundtrip(cat: Catalog):
    rng = random.Random(511220)
    n = 12
    cases = 0
    for i in range(200):
        arity = 1 + (i % 3)
        vars = tuple("xyz"[:arity])
        r = i % (arity + 1)
        terms = {}
        for _ in range(1 + rng.randrange(4)):
            while True:
                mono = tuple(rng.randint(0, 4) for _ in range(arity))
                if 3 <= sum(mono) <= n:
                    break
            coeff = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            if coeff:
                terms[mono] = coeff
        g = TruncSeries(Poly(vars, terms), n)
        res = adic_decompose(g, r)
        lhs = TruncSeries(
            Poly(vars, {tuple(2 if k == j else 0 for k in range(arity)): Fraction(1) for j in range(r)}),
            n,
        ) + g
        if res.reconstruct() != lhs:
            return False, f"case {i} failed to reconstruct"
        if any(a.order() is not None and a.order() < 2 for a in res.shifts):
            return False, f"case {i} produced a shift of order < 2"
        if any(m[j] for m in res.residual.body.terms for j in range(r)):
            return False, f"case {i} leaked leading variables into the residual"
        cases += 1
    return True, f"{cases} random decompositions over arity 1..3, all orders r, reconstruct through degree {n}"


@claim(
    "square-completion-rank",
    "quadratic diagonalization completes squares or reports inapplicability",
    ["rank-bounded-completion"],
)
def _square_completion(cat: Catalog):
    XY = ("x", "y")
    f = TruncSeries(parse_poly("x^2 + y^2 + x^3", XY), 10)
    res = complete_squares(f)
    if isinstance(res, NotApplicable) or res.scales != (Fraction(1), Fraction(1)) or not res.residual.is_zero():
        return False, "diagonal case failed"
    if res.reconstruct() != f:
        return False, "diagonal case does not reconstruct"
    f2 = TruncSeries(parse_poly("x^2 + 2*x*y + 2*y^2 + y^5", XY), 10)
    res2 = complete_squares(f2)
    if isinstance(res2, NotApplicable) or not res2.residual.is_zero() or res2.reconstruct() != f2:
        return False, "one elimination step case failed"
    res3 = complete_squares(TruncSeries(parse_poly("x^2 - y^2", XY), 8))
    if not isinstance(res3, NotApplicable):
        return False, "indefinite form was not rejected"
    XYZ = ("x", "y", "z")
    f4 = TruncSeries(parse_poly("x^2 + 2*x*y + y^2 + z^5", XYZ), 10)
    res4 = complete_squares(f4)
    if isinstance(res4, NotApplicable) or len(res4.scales) != 1 or res4.reconstruct() != f4:
        return False, "rank-1 in three variables failed"
    if res4.residual.is_zero():
        return False, "expected a residual in the trailing variables"
    W4 = ("w", "x", "y", "z")
    res5 = complete_squares(TruncSeries(parse_poly("w^2 + x^4 + y^4 + z^4", W4), 8))
    if not isinstance(res5, NotApplicable):
        return False, "rank below arity - 2 was not rejected"
    return True, "diagonal, shear, indefinite, residual, and rank-deficient cases behave as specified"


# -- birational avoidance ------------------------------------------------------

@claim("biraffine-demo", "point-avoiding birational maps verify by evaluation", ["birational-avoidance"])
def _biraffine(cat: Catalog):
    zero, one = GaussRat.of(0), GaussRat.of(1)
    i = GaussRat.of(0, 1)
    # avoid a rational point, keep the origin
    m1 = birational_avoid([(one, zero, zero, one)], [(zero, zero, zero, zero)])
    r1 = verify_avoid_map(m1, [(one, zero, zero, one)], [(zero, zero, zero, zero)])
    if not (r1.ok and m1.stages[0].min_poly == (Fraction(-1), Fraction(1))):
        return False, "rational avoid case failed"
    # avoid the Gaussian point (i, 0, 1), keep (1, 1, 1)
    m2 = birational_avoid([(i, zero, one)], [(one, one, one)])
    r2 = verify_avoid_map(m2, [(i, zero, one)], [(one, one, one)])
    if not (r2.ok and m2.stages[0].min_poly == (Fraction(1), Fraction(0), Fraction(1))):
        return False, "Gaussian avoid case failed"
    # avoid two points with one composite map
    two = GaussRat.of(2)
    m3 = birational_avoid([(one, zero, one), (two, zero, one)], [(zero, zero, zero)])
    r3 = verify_avoid_map(m3, [(one, zero, one), (two, zero, one)], [(zero, zero, zero)])
    if not (r3.ok and len(m3.stages) == 2):
        return False, "composite avoid case failed"
    return True, "single rational, single Gaussian (min poly t^2+1), and composite two-point maps verify"


# -- groebner self-checks -------------------------------------------------------

@claim("gb-goldens", "reduced bases match the independently derived goldens byte for byte", ["monomial-curve", "complex-bad-point", "coordinate-change-construction"])
def _gb_goldens(cat: Catalog):
    def fmt(ideal: Ideal) -> list[str]:
        return [str(g) for g in ideal.groebner()]

    demo = Ideal([parse_poly("x^2+y^2", ("x", "y")), parse_poly("y^3", ("x", "y"))])
    checks = {
        "IC": fmt(cat.IC) == cat.goldens["gb"]["IC"],
        "demo": fmt(demo) == cat.goldens["gb"]["demo_x2y2_y3"],
        "IGamma": fmt(cat.IGamma) == cat.goldens["gb"]["IGamma"],
        "ID": fmt(cat.ID) == cat.goldens["gb"]["ID"],
        "quot_IC2_f1": fmt(ideal_quotient(ideal_square(cat.IC), cat.f1))
        == cat.goldens["quotient_gb"]["IC2_f1"],
        "quot_IGamma2": fmt(ideal_quotient(ideal_square(cat.IGamma), cat.f_cxbad))
        == cat.goldens["quotient_gb"]["IGamma2_f_cxbad"],
    }
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    return ok, "six bases identical to the frozen CAS output" if ok else f"mismatch: {failed}"


@claim("gb-buchberger", "every basis in the suite passes the S-polynomial criterion", ["monomial-curve", "complex-bad-point", "coordinate-change-construction"])
def _gb_buchberger(cat: Catalog):
    ideals = [
        cat.IC,
        cat.IGamma,
        cat.ID,
        ideal_square(cat.IC),
        ideal_square(cat.IGamma),
        ideal_square(cat.ID),
        ideal_quotient(ideal_square(cat.IC), cat.f1),
        ideal_quotient(ideal_square(cat.IGamma), cat.f_cxbad),
    ]
    count = 0
    for ideal in ideals:
        if not buchberger_criterion(ideal.groebner()):
            return False, f"basis {count} fails the criterion"
        count += 1
    return True, f"{count} reduced bases: all S-polynomials reduce to zero"


# ---------------------------------------------------------------------------
# Runner

@dataclass(frozen=True)
class SuiteReport:
    results: tuple[ClaimResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def render(self) -> str:
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"{r.id:<32} {status}  {r.detail}")
        passed = sum(r.passed for r in self.results)
        lines.append(f"claims: {len(self.results)} run, {passed} passed")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "claims": [
                {"id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail}
                for r in self.results
            ],
            "total": len(self.results),
            "passed": sum(r.passed for r in self.results),
            "all_passed": self.all_passed,
        }


def run_claims(
    ids: Optional[Sequence[str]] = None,
    jobs: int = 1,
    catalog: Optional[Catalog] = None,
) -> SuiteReport:
    registry = {c.id: c for c in all_claims()}
    if ids is None:
        selected = list(registry.values())
    else:
        unknown = [i for i in ids if i not in registry]
        if unknown:
            raise KeyError(f"unknown claim id(s): {', '.join(sorted(unknown))}")
        selected = [registry[i] for i in sorted(set(ids))]
    cat = catalog or Catalog()

    def run_one(c: Claim) -> ClaimResult:
        try:
            passed, detail = c.run(cat)
        except Exception as exc:  # deterministic message, never silent
            passed, detail = False, f"error: {exc}"
        return ClaimResult(c.id, c.title, passed, detail)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_one, selected))
    else:
        results = [run_one(c) for c in selected]
    results.sort(key=lambda r: r.id)
    return SuiteReport(tuple(results))
