"""Machine-checkable positivity and non-negativity evidence.

Certificate objects carry enough data to be re-verified from scratch:
exact SOS identities (polynomial or truncated), arithmetic-geometric mean
identities over structurally nonnegative factors, Newton-polytope
obstructions to being a sum of squares, monomial-cone obstructions to
membership in an ideal square inside a power-series ring, grid
falsification sampling, point-avoiding birational maps, and the assembled
bad-point evidence bundle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import NotOnVarietyError
from .groebner import (
    Ideal,
    jacobian_rank_at,
    local_order_bound,
    member_localized,
    normal_form,
)
from .poly import (
    GaussRat,
    Monomial,
    Poly,
    Scalar,
    mono_deg,
    newton_half_support,
)
from .series import TruncSeries

Carrier = Union[Poly, TruncSeries]


# ---------------------------------------------------------------------------
# Structural nonnegativity

@dataclass(frozen=True)
class StructNonneg:
    """scalar * prod(f_i^2) * prod(g_j^2 + c_j): pointwise >= 0 by shape.

    The grammar is closed and decidable; no analytic reasoning is needed
    to conclude nonnegativity on real points.
    """

    vars: tuple[str, ...]
    square_factors: tuple[Poly, ...] = ()
    atom_factors: tuple[tuple[Poly, Fraction], ...] = ()
    scalar: Fraction = Fraction(1)

    def validate(self) -> None:
        if self.scalar < 0:
            raise ValueError("scalar must be nonnegative")
        for f in self.square_factors:
            if f.vars != self.vars:
                raise ValueError("square factor over wrong variables")
        for g, c in self.atom_factors:
            if g.vars != self.vars:
                raise ValueError("atom factor over wrong variables")
            if c <= 0:
                raise ValueError("atom constant must be positive")

    def denote(self) -> Poly:
        self.validate()
        out = Poly.constant(self.vars, self.scalar)
        for f in self.square_factors:
            out = out * f * f
        for g, c in self.atom_factors:
            out = out * (g * g + Poly.constant(self.vars, c))
        return out

    @staticmethod
    def of_scalar(vars: Sequence[str], c: Scalar) -> "StructNonneg":
        return StructNonneg(tuple(vars), scalar=Fraction(c))

    @staticmethod
    def of_squares(vars: Sequence[str], squares: Sequence[Poly], scalar: Scalar = 1) -> "StructNonneg":
        return StructNonneg(tuple(vars), tuple(squares), (), Fraction(scalar))


# ---------------------------------------------------------------------------
# Sums of squares

@dataclass(frozen=True)
class SosCert:
    """target = sum(scale_i * root_i^2), exactly or through a truncation order."""

    target: Carrier
    items: tuple[tuple[StructNonneg, Carrier], ...]
    trunc: Optional[int] = None  # None: exact polynomial ring

    @property
    def ring(self) -> str:
        return "polynomial" if self.trunc is None else f"truncated({self.trunc})"


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    residual: Optional[Carrier] = None
    reason: str = ""


def verify_sos(cert: SosCert) -> VerifyResult:
    try:
        if cert.trunc is None:
            if not isinstance(cert.target, Poly):
                return VerifyResult(False, reason="polynomial ring needs a polynomial target")
            acc = Poly.zero(cert.target.vars)
            for scale, root in cert.items:
                if not isinstance(root, Poly):
                    return VerifyResult(False, reason="polynomial ring needs polynomial roots")
                acc = acc + scale.denote() * root * root
            diff = cert.target - acc
            if diff.is_zero():
                return VerifyResult(True)
            return VerifyResult(False, residual=diff, reason="nonzero residual")
        n = cert.trunc
        target = cert.target if isinstance(cert.target, TruncSeries) else TruncSeries(cert.target, n)
        acc = TruncSeries.zero(target.vars, n)
        for scale, root in cert.items:
            root_s = root if isinstance(root, TruncSeries) else TruncSeries(root, n)
            if root_s.trunc < n:
                return VerifyResult(
                    False, reason=f"root only known through {root_s.trunc} < {n}"
                )
            acc = acc + root_s.truncate(n) * root_s.truncate(n) * TruncSeries(scale.denote(), n)
        diff = target.truncate(n) - acc
        if diff.is_zero():
            return VerifyResult(True)
        return VerifyResult(False, residual=diff, reason="nonzero residual through truncation")
    except ValueError as exc:
        return VerifyResult(False, reason=str(exc))


# ---------------------------------------------------------------------------
# Arithmetic-geometric mean

@dataclass(frozen=True)
class AmGmCert:
    """target = sum(terms) - n*mean with mean^n = prod(terms).

    All factors are structurally nonnegative, so the arithmetic-geometric
    mean inequality certifies that the target is pointwise nonnegative.
    """

    terms: tuple[StructNonneg, ...]
    mean: StructNonneg
    target: Poly


def verify_amgm(cert: AmGmCert) -> VerifyResult:
    n = len(cert.terms)
    if n < 2:
        return VerifyResult(False, reason="need at least two terms")
    try:
        term_polys = [t.denote() for t in cert.terms]
        mean_poly = cert.mean.denote()
    except ValueError as exc:
        return VerifyResult(False, reason=f"structural nonnegativity violated: {exc}")
    prod = Poly.constant(cert.target.vars, 1)
    for t in term_polys:
        prod = prod * t
    if mean_poly ** n != prod:
        return VerifyResult(False, reason="mean^n != product of terms")
    acc = Poly.zero(cert.target.vars)
    for t in term_polys:
        acc = acc + t
    acc = acc - mean_poly.scale(n)
    diff = cert.target - acc
    if not diff.is_zero():
        return VerifyResult(False, residual=diff, reason="target reconstruction failed")
    return VerifyResult(True)


# ---------------------------------------------------------------------------
# Newton-polytope non-SOS obstruction

@dataclass(frozen=True)
class NonSosObstruction:
    """A negative corner coefficient that any SOS would force nonnegative.

    Squares in an SOS decomposition have support inside the half Newton
    polytope; if the only way to write 2*beta as a sum of two support
    points is beta+beta, the coefficient of 2*beta equals a sum of squares
    of root coefficients, so it cannot be negative.
    """

    poly: Poly
    support: tuple[Monomial, ...]
    beta: Monomial
    corner: Monomial
    coefficient: Fraction
    pair_audit: tuple[tuple[Monomial, Monomial], ...]


@dataclass(frozen=True)
class NonSosSearch:
    obstruction: Optional[NonSosObstruction]

    @property
    def found(self) -> bool:
        return self.obstruction is not None


def _corner_pairs(support: Sequence[Monomial], corner: Monomial) -> list[tuple[Monomial, Monomial]]:
    pairs = []
    for b1 in support:
        rest = tuple(c - e for c, e in zip(corner, b1))
        if any(e < 0 for e in rest):
            continue
        if rest in support and b1 <= rest:
            pairs.append((b1, rest))
    return pairs


def find_non_sos_obstruction(p: Poly) -> NonSosSearch:
    """Scan half-Newton lattice points for a certified negative corner.

    Returns none_found when no corner qualifies; that outcome is
    inconclusive, not a proof that p is a sum of squares.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    support = newton_half_support(p)
    for beta in support:
        corner = tuple(2 * e for e in beta)
        c = p.coeff(corner)
        if c >= 0:
            continue
        pairs = _corner_pairs(support, corner)
        if pairs == [(beta, beta)]:
            return NonSosSearch(
                NonSosObstruction(p, support, beta, corner, c, tuple(pairs))
            )
    return NonSosSearch(None)


def verify_non_sos(obs: NonSosObstruction) -> VerifyResult:
    """Recompute the support and the pair audit; ignore stored copies."""
    support = newton_half_support(obs.poly)
    if obs.beta not in support:
        return VerifyResult(False, reason="corner root is not in the half support")
    c = obs.poly.coeff(obs.corner)
    if c >= 0:
        return VerifyResult(False, reason="corner coefficient is not negative")
    if tuple(2 * e for e in obs.beta) != tuple(obs.corner):
        return VerifyResult(False, reason="corner is not twice the root")
    pairs = _corner_pairs(support, obs.corner)
    if pairs != [(obs.beta, obs.beta)]:
        return VerifyResult(False, reason=f"corner splits as {pairs}")
    return VerifyResult(True)


# ---------------------------------------------------------------------------
# Cone obstruction in a power-series ring

@dataclass(frozen=True)
class ConeObstruction:
    """target monomial outside every product-support upper cone.

    If the target does not lie in m + N^arity for any monomial m of any
    pairwise product of the generators, then no series combination of the
    products can produce the target monomial, so an element with a nonzero
    target coefficient is outside the square of the generated ideal.
    """

    target: Monomial
    products: tuple[tuple[int, int, tuple[Monomial, ...]], ...] = ()


def verify_cone_obstruction(
    cert: ConeObstruction,
    gens: Sequence[Carrier],
    f: TruncSeries,
) -> VerifyResult:
    """Recompute the pairwise product supports; stored ones are not trusted."""
    target = tuple(cert.target)
    deg = mono_deg(target)
    if deg > f.trunc:
        return VerifyResult(False, reason=f"truncation {f.trunc} below target degree {deg}")
    coeff = f.coeff(target)
    if coeff == 0:
        return VerifyResult(False, reason="target coefficient vanishes in f")
    gs = [g if isinstance(g, TruncSeries) else TruncSeries(g, f.trunc) for g in gens]
    for g in gs:
        if g.trunc < deg:
            return VerifyResult(
                False, reason=f"generator truncation {g.trunc} below target degree {deg}"
            )
    for i in range(len(gs)):
        for j in range(i, len(gs)):
            prod = gs[i] * gs[j]
            for m in prod.body.terms:
                if all(e <= t for e, t in zip(m, target)):
                    return VerifyResult(
                        False,
                        reason=f"target lies in the cone of product ({i},{j}) monomial {m}",
                    )
    return VerifyResult(True)


def cone_products(gens: Sequence[Carrier], trunc: int) -> tuple[tuple[int, int, tuple[Monomial, ...]], ...]:
    gs = [g if isinstance(g, TruncSeries) else TruncSeries(g, trunc) for g in gens]
    out = []
    for i in range(len(gs)):
        for j in range(i, len(gs)):
            out.append((i, j, tuple(sorted((gs[i] * gs[j]).body.terms))))
    return tuple(out)


# ---------------------------------------------------------------------------
# Falsification sampling

@dataclass(frozen=True)
class SampleReport:
    counterexample: Optional[tuple[tuple[Fraction, ...], Fraction]]
    checked: int

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def sample_nonnegativity(
    p: Poly,
    box: Sequence[tuple[Scalar, Scalar]],
    step: Scalar,
) -> SampleReport:
    """Exact evaluation on a rational grid; any negative value is returned.

    This is falsification only: an empty report corroborates but never
    proves nonnegativity.
    """
    if len(box) != p.arity:
        raise ValueError("box arity mismatch")
    h = Fraction(step)
    if h <= 0:
        raise ValueError("step must be positive")
    axes: list[list[Fraction]] = []
    for lo, hi in box:
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("empty box")
        vals = []
        v = lo
        while v <= hi:
            vals.append(v)
            v += h
        axes.append(vals)
    maxes = [0] * p.arity
    for m in p.terms:
        for i, e in enumerate(m):
            maxes[i] = max(maxes[i], e)
    tables: list[list[list[Fraction]]] = []
    for i, axis in enumerate(axes):
        per_val = []
        for v in axis:
            row = [Fraction(1)]
            for _ in range(maxes[i]):
                row.append(row[-1] * v)
            per_val.append(row)
        tables.append(per_val)
    terms = list(p.terms.items())
    checked = 0
    for idx in itertools.product(*[range(len(a)) for a in axes]):
        total = Fraction(0)
        for m, c in terms:
            val = c
            for i, e in enumerate(m):
                if e:
                    val = val * tables[i][idx[i]][e]
            total += val
        checked += 1
        if total < 0:
            point = tuple(axes[i][idx[i]] for i in range(p.arity))
            return SampleReport((point, total), checked)
    return SampleReport(None, checked)


# ---------------------------------------------------------------------------
# Point-avoiding birational morphisms

@dataclass(frozen=True)
class AvoidStage:
    """One map x -> (x_1..x_{n-1}, P(x_1)*x_n) after a linear change."""

    matrix: tuple[tuple[Fraction, ...], ...]
    min_poly: tuple[Fraction, ...]  # coefficients, constant first, monic

    def apply_linear(self, point: Sequence[GaussRat]) -> tuple[GaussRat, ...]:
        return tuple(
            sum(
                (GaussRat.of(c) * point[j] for j, c in enumerate(row)),
                GaussRat.of(0),
            )
            for row in self.matrix
        )

    def eval_min_poly(self, value: GaussRat) -> GaussRat:
        acc = GaussRat.of(0)
        power = GaussRat.of(1)
        for c in self.min_poly:
            acc = acc + GaussRat.of(c) * power
            power = power * value
        return acc

    def image(self, point: Sequence[GaussRat]) -> tuple[GaussRat, ...]:
        y = self.apply_linear(point)
        scale = self.eval_min_poly(y[0])
        return y[:-1] + (y[-1] * scale,)

    def preimage(self, point: Sequence[GaussRat]) -> Optional[tuple[GaussRat, ...]]:
        """Unique preimage where the map is an isomorphism; None if absent."""
        scale = self.eval_min_poly(point[0])
        if scale.is_zero():
            return None
        y = point[:-1] + (point[-1] / scale,)
        inv = _matrix_inverse(self.matrix)
        return tuple(
            sum((GaussRat.of(c) * y[j] for j, c in enumerate(row)), GaussRat.of(0))
            for row in inv
        )

    def as_polys(self, vars: Sequence[str]) -> tuple[Poly, ...]:
        vs = tuple(vars)
        n = len(vs)
        lin = []
        for row in self.matrix:
            terms = {}
            for j, c in enumerate(row):
                if c:
                    terms[tuple(1 if k == j else 0 for k in range(n))] = c
            lin.append(Poly(vs, terms))
        pval = Poly.zero(vs)
        for k, c in enumerate(self.min_poly):
            if c:
                pval = pval + (lin[0] ** k).scale(c)
        return tuple(lin[:-1] + [pval * lin[-1]])


@dataclass(frozen=True)
class AvoidMap:
    stages: tuple[AvoidStage, ...]

    def image(self, point: Sequence[GaussRat]) -> tuple[GaussRat, ...]:
        pt = tuple(point)
        for stage in reversed(self.stages):
            pt = stage.image(pt)
        return pt

    def preimage(self, point: Sequence[GaussRat]) -> Optional[tuple[GaussRat, ...]]:
        pt = tuple(point)
        for stage in self.stages:
            nxt = stage.preimage(pt)
            if nxt is None:
                return None
            pt = nxt
        return pt


def _matrix_inverse(matrix: Sequence[Sequence[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(matrix)
    aug = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)] for i, row in enumerate(matrix)]
    for c in range(n):
        pivot = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = aug[c][c]
        aug[c] = [v / inv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def _min_poly(value: GaussRat) -> tuple[Fraction, ...]:
    """Monic minimal polynomial over Q, constant coefficient first."""
    if value.im == 0:
        return (-value.re, Fraction(1))
    return (value.re * value.re + value.im * value.im, -2 * value.re, Fraction(1))


def _candidate_matrices(n: int):
    ident = tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )
    yield ident
    coeffs = [Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(3)]
    for c in coeffs:
        for j in range(1, n):
            rows = [list(r) for r in ident]
            rows[0][j] += c
            yield tuple(tuple(r) for r in rows)
    for c in coeffs:
        for j in range(n - 1):
            rows = [list(r) for r in ident]
            rows[n - 1][j] += c
            yield tuple(tuple(r) for r in rows)
    for c1 in coeffs:
        for c2 in coeffs:
            for j1 in range(1, n):
                for j2 in range(n - 1):
                    rows = [list(r) for r in ident]
                    rows[0][j1] += c1
                    rows[n - 1][j2] += c2
                    yield tuple(tuple(r) for r in rows)


def birational_avoid(
    avoid: Sequence[Sequence[GaussRat]],
    keep: Sequence[Sequence[GaussRat]],
) -> AvoidMap:
    """Compose single-point-avoiding maps, one stage per avoided point.

    Each stage is a deterministic small-integer linear change followed by
    (x_1,...,x_{n-1}, P(x_1)*x_n) with P the minimal polynomial of the
    avoided point's first coordinate after the change.
    """
    avoid_pts = [tuple(p) for p in avoid]
    keep_pts = [tuple(q) for q in keep]
    if not avoid_pts:
        raise ValueError("nothing to avoid")
    n = len(avoid_pts[0])
    if n < 2:
        raise ValueError("need at least two coordinates")
    allpts = avoid_pts + keep_pts
    for a, b in itertools.combinations(range(len(allpts)), 2):
        if allpts[a] == allpts[b]:
            raise ValueError("points must be pairwise distinct")

    stages: list[AvoidStage] = []
    pending = list(avoid_pts)
    kept = list(keep_pts)
    while pending:
        target = pending[0]
        rest = pending[1:]
        stage = None
        for mat in _candidate_matrices(n):
            probe = AvoidStage(mat, (Fraction(0), Fraction(1)))
            y = probe.apply_linear(target)
            if y[-1].is_zero():
                continue
            p_coeffs = _min_poly(y[0])
            candidate = AvoidStage(mat, p_coeffs)
            others = [candidate.apply_linear(q)[0] for q in kept + rest]
            if any(candidate.eval_min_poly(v).is_zero() for v in others):
                continue
            stage = candidate
            break
        if stage is None:
            raise ValueError("no small linear change separates the points")
        stages.append(stage)
        new_pending = []
        for p in rest:
            pre = stage.preimage(p)
            if pre is None:
                continue  # already avoided by this stage
            new_pending.append(pre)
        pending = new_pending
        kept = [stage.preimage(q) for q in kept]
        if any(q is None for q in kept):
            raise ValueError("a kept point fell outside the isomorphism locus")
    return AvoidMap(tuple(stages))


def verify_avoid_map(
    amap: AvoidMap,
    avoid: Sequence[Sequence[GaussRat]],
    keep: Sequence[Sequence[GaussRat]],
) -> VerifyResult:
    for q in keep:
        pre = amap.preimage(q)
        if pre is None:
            return VerifyResult(False, reason="kept point has no preimage in the iso locus")
        img = amap.image(pre)
        if tuple(img) != tuple(q):
            return VerifyResult(False, reason="preimage does not map back to the kept point")
    for p in avoid:
        if amap.preimage(p) is not None:
            return VerifyResult(False, reason="avoided point lifts through every stage")
    return VerifyResult(True)


# ---------------------------------------------------------------------------
# Bad-point certificates

@dataclass(frozen=True)
class DensityWitness:
    """A real point of the variety with the expected Jacobian rank,
    supporting Zariski density of real points on its component."""

    point: tuple[GaussRat, ...]
    expected_rank: int


@dataclass(frozen=True)
class BadPointCert:
    """Evidence bundle: f in I, f outside the localized square of I at the
    point, and smooth real points of the variety.  The conclusion (no SOS
    representation in the localization) is conditional on Zariski density
    of the real points, which the witnesses support but do not prove."""

    ideal: Ideal
    element: Poly
    point: tuple[GaussRat, ...]
    evidence_kind: str  # "localized" | "order_bound" | "cone"
    witnesses: tuple[DensityWitness, ...] = ()
    cone: Optional[ConeObstruction] = None
    cone_gens: tuple[Poly, ...] = ()
    cone_series: Optional[TruncSeries] = None


@dataclass(frozen=True)
class ReportLine:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class BadPointReport:
    lines: tuple[ReportLine, ...]
    conclusion: str

    @property
    def ok(self) -> bool:
        return all(l.ok for l in self.lines)

    def render(self) -> str:
        out = []
        for l in self.lines:
            out.append(f"  [{'pass' if l.ok else 'FAIL'}] {l.name}: {l.detail}")
        out.append(f"  conclusion: {self.conclusion}")
        return "\n".join(out)


def verify_bad_point(cert: BadPointCert) -> BadPointReport:
    lines: list[ReportLine] = []

    nf = normal_form(cert.element, cert.ideal)
    lines.append(
        ReportLine(
            "membership",
            nf.member,
            "normal form of the element is zero" if nf.member else f"remainder {nf.remainder}",
        )
    )

    from .groebner import ideal_square  # local import to avoid cycle noise

    if cert.evidence_kind == "localized":
        loc = member_localized(cert.element, ideal_square(cert.ideal), cert.point)
        lines.append(
            ReportLine(
                "localized non-membership",
                not loc.member,
                "all quotient basis elements vanish at the point"
                if not loc.member
                else f"witness {loc.witness} is nonzero at the point",
            )
        )
    elif cert.evidence_kind == "order_bound":
        origin_ok = all(c.is_zero() for c in cert.point)
        ob = local_order_bound(cert.element, cert.ideal)
        lines.append(
            ReportLine(
                "order obstruction",
                origin_ok and ob.obstruction,
                f"{ob} at the origin" if origin_ok else "order bound only applies at the origin",
            )
        )
    elif cert.evidence_kind == "cone":
        if cert.cone is None or cert.cone_series is None:
            lines.append(ReportLine("cone obstruction", False, "missing cone data"))
        else:
            res = verify_cone_obstruction(cert.cone, cert.cone_gens, cert.cone_series)
            lines.append(
                ReportLine(
                    "cone obstruction",
                    res.ok,
                    "target monomial outside every product cone" if res.ok else res.reason,
                )
            )
    else:
        lines.append(ReportLine("evidence", False, f"unknown evidence kind {cert.evidence_kind!r}"))

    if not cert.witnesses:
        lines.append(ReportLine("density witnesses", False, "no real smooth points supplied"))
    for k, wit in enumerate(cert.witnesses):
        if any(c.im != 0 for c in wit.point):
            lines.append(ReportLine(f"witness {k}", False, "witness point is not real"))
            continue
        try:
            rank = jacobian_rank_at(cert.ideal.generators, wit.point)
        except NotOnVarietyError as exc:
            lines.append(ReportLine(f"witness {k}", False, str(exc)))
            continue
        lines.append(
            ReportLine(
                f"witness {k}",
                rank == wit.expected_rank,
                f"generators vanish, Jacobian rank {rank} (expected {wit.expected_rank})",
            )
        )

    conclusion = (
        "the element is not a sum of squares in the localization at the point, "
        "conditional on Zariski density of the real points of the variety "
        "(supported by the smooth real witnesses above)"
    )
    return BadPointReport(tuple(lines), conclusion)
