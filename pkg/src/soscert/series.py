"""Truncated multivariate power series over the rationals.

A series is a polynomial body of total degree <= N together with the
truncation order N; arithmetic discards higher terms.  Includes unit
n-th roots, one-variable reversion, the layer-by-layer square-completion
iteration, quadratic-form diagonalization, and the hat-coordinate change
used by the curve-pullback constructions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .errors import VariableMismatchError
from .poly import Monomial, Poly, Scalar, mono_deg, mono_mul

DEFAULT_TRUNC = 48


class TruncSeries:
    """Power series stored through total degree `trunc`."""

    __slots__ = ("body", "trunc")

    def __init__(self, body: Poly, trunc: int):
        if trunc < 0:
            raise ValueError("truncation order must be nonnegative")
        object.__setattr__(self, "body", body.truncated(trunc))
        object.__setattr__(self, "trunc", trunc)

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @staticmethod
    def from_poly(p: Poly, trunc: int) -> "TruncSeries":
        return TruncSeries(p, trunc)

    @staticmethod
    def zero(vars: Sequence[str], trunc: int) -> "TruncSeries":
        return TruncSeries(Poly.zero(vars), trunc)

    @staticmethod
    def constant(vars: Sequence[str], c: Scalar, trunc: int) -> "TruncSeries":
        return TruncSeries(Poly.constant(vars, c), trunc)

    @staticmethod
    def variable(vars: Sequence[str], name: str, trunc: int) -> "TruncSeries":
        return TruncSeries(Poly.variable(vars, name), trunc)

    @property
    def vars(self) -> tuple[str, ...]:
        return self.body.vars

    def _join(self, other: "TruncSeries") -> int:
        if self.vars != other.vars:
            raise VariableMismatchError(self.vars, other.vars)
        return min(self.trunc, other.trunc)

    def coerce(self, other: Union["TruncSeries", Poly, Scalar]) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, Poly):
            return TruncSeries(other, self.trunc)
        return TruncSeries.constant(self.vars, other, self.trunc)

    def __add__(self, other) -> "TruncSeries":
        other = self.coerce(other)
        n = self._join(other)
        return TruncSeries(self.body.truncated(n) + other.body.truncated(n), n)

    def __sub__(self, other) -> "TruncSeries":
        other = self.coerce(other)
        n = self._join(other)
        return TruncSeries(self.body.truncated(n) - other.body.truncated(n), n)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(-self.body, self.trunc)

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            return TruncSeries(self.body.scale(other), self.trunc)
        other = self.coerce(other)
        n = self._join(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.body.terms.items():
            d1 = mono_deg(m1)
            if d1 > n:
                continue
            for m2, c2 in other.body.terms.items():
                if d1 + mono_deg(m2) > n:
                    continue
                m = mono_mul(m1, m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return TruncSeries(Poly(self.vars, out), n)

    def __rmul__(self, other: Scalar) -> "TruncSeries":
        return self * other

    def __pow__(self, k: int) -> "TruncSeries":
        if k < 0:
            raise ValueError("negative series power")
        out = TruncSeries.constant(self.vars, 1, self.trunc)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def truncate(self, n: int) -> "TruncSeries":
        return TruncSeries(self.body, min(self.trunc, n))

    def order(self) -> Optional[int]:
        """Least total degree of a nonzero term; None means > trunc."""
        if self.body.is_zero():
            return None
        return self.body.order()

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def coeff(self, mono: Monomial) -> Fraction:
        return self.body.coeff(mono)

    def constant_term(self) -> Fraction:
        return self.body.coeff((0,) * len(self.vars))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.trunc, other.trunc)
        return self.vars == other.vars and self.body.truncated(n) == other.body.truncated(n)

    def __hash__(self) -> int:
        return hash((self.body, self.trunc))

    def shift_down(self, var: str, k: int) -> "TruncSeries":
        """Divide by var^k; every term must be divisible.

        The quotient is only determined through trunc - k, and the result
        carries that reduced truncation order.
        """
        i = self.vars.index(var)
        out = {}
        for m, c in self.body.terms.items():
            if m[i] < k:
                raise ValueError(f"term {m} not divisible by {var}^{k}")
            mm = list(m)
            mm[i] -= k
            out[tuple(mm)] = c
        return TruncSeries(Poly(self.vars, out), self.trunc - k)

    def embed(self, vars: Sequence[str], mapping: Mapping[str, str]) -> "TruncSeries":
        """Rename/extend variables: each own variable maps to one of `vars`."""
        vs = tuple(vars)
        idx = {v: vs.index(mapping[v]) for v in self.vars}
        out = {}
        for m, c in self.body.terms.items():
            mm = [0] * len(vs)
            for i, e in enumerate(m):
                mm[idx[self.vars[i]]] = e
            out[tuple(mm)] = c
        return TruncSeries(Poly(vs, out), self.trunc)

    def __str__(self) -> str:
        return f"O({self.trunc}): {self.body}"

    def __repr__(self) -> str:
        return f"TruncSeries({self.body!r}, N={self.trunc})"


def series_arith(a: TruncSeries, b: TruncSeries, kind: str) -> TruncSeries:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


# ---------------------------------------------------------------------------
# Unit roots, inverses, reversion

def _binomial(r: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out = out * (r - i) / (i + 1)
    return out


def nth_root_unit(s: TruncSeries, n: int) -> TruncSeries:
    """Principal n-th root of a series with constant term 1 (binomial series)."""
    if n < 1:
        raise ValueError("root index must be positive")
    if s.constant_term() != 1:
        raise ValueError("nth_root_unit requires constant term 1")
    u = s - TruncSeries.constant(s.vars, 1, s.trunc)
    out = TruncSeries.constant(s.vars, 1, s.trunc)
    power = TruncSeries.constant(s.vars, 1, s.trunc)
    r = Fraction(1, n)
    for k in range(1, s.trunc + 1):
        power = power * u
        if power.is_zero():
            break
        out = out + power * _binomial(r, k)
    return out


def sqrt_unit(s: TruncSeries) -> TruncSeries:
    return nth_root_unit(s, 2)


def inverse_unit(s: TruncSeries) -> TruncSeries:
    """Multiplicative inverse of a series with nonzero constant term."""
    c = s.constant_term()
    if c == 0:
        raise ValueError("series is not a unit")
    geom = TruncSeries.constant(s.vars, 1, s.trunc) - s * (Fraction(1) / c)
    out = TruncSeries.constant(s.vars, 1, s.trunc)
    power = TruncSeries.constant(s.vars, 1, s.trunc)
    for _ in range(s.trunc):
        power = power * geom
        if power.is_zero():
            break
        out = out + power
    return out * (Fraction(1) / c)


def reversion(s: TruncSeries) -> TruncSeries:
    """Compositional inverse of a one-variable series with s(0)=0, s'(0)!=0.

    Lagrange inversion: writing s = t*u(t), the inverse has coefficients
    y_n = [t^(n-1)] u(t)^(-n) / n.
    """
    if len(s.vars) != 1:
        raise ValueError("reversion needs a one-variable series")
    var = s.vars[0]
    n = s.trunc
    if s.constant_term() != 0:
        raise ValueError("reversion requires zero constant term")
    c1 = s.coeff((1,))
    if c1 == 0:
        raise ValueError("reversion requires a nonzero linear coefficient")
    u = s.shift_down(var, 1)
    inv_u = inverse_unit(u)
    out: dict[Monomial, Fraction] = {}
    power = TruncSeries.constant(s.vars, 1, n)
    for k in range(1, n + 1):
        power = power * inv_u
        ck = power.coeff((k - 1,))
        if ck:
            out[(k,)] = ck / k
    return TruncSeries(Poly(s.vars, out), n)


def compose_univariate(outer: TruncSeries, inner: TruncSeries) -> TruncSeries:
    """outer(inner) for one-variable series with inner(0) = 0 (Horner)."""
    if inner.constant_term() != 0:
        raise ValueError("composition requires inner constant term 0")
    n = min(outer.trunc, inner.trunc)
    degmax = max((m[0] for m in outer.body.terms), default=0)
    out = TruncSeries.zero(inner.vars, n)
    for d in range(degmax, -1, -1):
        out = out * inner
        c = outer.coeff((d,))
        if c:
            out = out + TruncSeries.constant(inner.vars, c, n)
    return out


def substitute_series(p: Poly, images: Mapping[str, TruncSeries]) -> TruncSeries:
    """Evaluate a polynomial on series values (a ring morphism through N)."""
    if not images:
        raise ValueError("empty substitution map")
    first = next(iter(images.values()))
    vars, n = first.vars, first.trunc
    for img in images.values():
        if img.vars != vars:
            raise VariableMismatchError(vars, img.vars)
        n = min(n, img.trunc)
    missing = [v for v in p.vars if v not in images and any(m[p.vars.index(v)] for m in p.terms)]
    if missing:
        raise ValueError(f"no image for variable(s) {missing!r}")
    cache: dict[tuple[str, int], TruncSeries] = {}

    def power(v: str, e: int) -> TruncSeries:
        key = (v, e)
        if key not in cache:
            cache[key] = images[v] ** e
        return cache[key]

    out = TruncSeries.zero(vars, n)
    for m, c in p.terms.items():
        term = TruncSeries.constant(vars, c, n)
        for i, e in enumerate(m):
            if e:
                term = term * power(p.vars[i], e)
        out = out + term
    return out


# ---------------------------------------------------------------------------
# Square-completion iteration

@dataclass(frozen=True)
class AdicResult:
    """sum(scale_i*(x_i + a_i)^2) + b matches the input through degree N."""

    shifts: tuple[TruncSeries, ...]
    residual: TruncSeries
    scales: tuple[Fraction, ...]
    verified_to: int

    def reconstruct(self) -> TruncSeries:
        vars = self.residual.vars
        n = self.verified_to
        acc = TruncSeries.zero(vars, n)
        for i, (a, c) in enumerate(zip(self.shifts, self.scales)):
            xi = TruncSeries.variable(vars, vars[i], n)
            acc = acc + (xi + a) ** 2 * c
        return acc + self.residual


def adic_decompose(
    g: TruncSeries,
    r: int,
    scales: Optional[Sequence[Scalar]] = None,
) -> AdicResult:
    """Absorb a perturbation of order >= 3 into shifted squares.

    Writes sum(scale_i*x_i^2) + g as sum(scale_i*(x_i + a_i)^2) + b through
    the truncation order, with each a_i of order >= 2 and b free of the
    first r variables.  Each homogeneous layer of the running remainder is
    split deterministically: a monomial divisible by some x_i (i <= r) is
    assigned to the smallest such i, the rest go to the residual.
    """
    vars = g.vars
    n = g.trunc
    arity = len(vars)
    if not 0 <= r <= arity:
        raise ValueError(f"r must be between 0 and {arity}")
    if not g.is_zero() and g.order() < 3:
        raise ValueError("input must have only terms of degree >= 3")
    if scales is None:
        sc = tuple(Fraction(1) for _ in range(r))
    else:
        sc = tuple(Fraction(s) for s in scales)
        if len(sc) != r or any(s <= 0 for s in sc):
            raise ValueError("scales must be r positive rationals")

    a = [TruncSeries.zero(vars, n) for _ in range(r)]
    b = TruncSeries.zero(vars, n)
    c = g
    for layer in range(3, n + 1):
        part = c.body.homogeneous_part(layer)
        if part.is_zero():
            continue
        us: list[dict[Monomial, Fraction]] = [dict() for _ in range(r)]
        v: dict[Monomial, Fraction] = {}
        for m, coeff in part.terms.items():
            slot = next((i for i in range(r) if m[i] > 0), None)
            if slot is None:
                v[m] = coeff
            else:
                mm = list(m)
                mm[slot] -= 1
                us[slot][tuple(mm)] = coeff
        v_s = TruncSeries(Poly(vars, v), n)
        b = b + v_s
        delta = v_s
        for i in range(r):
            if not us[i]:
                continue
            u = TruncSeries(Poly(vars, us[i]), n)
            xi = TruncSeries.variable(vars, vars[i], n)
            delta = delta + xi * u + a[i] * u + u * u * (Fraction(1, 4) / sc[i])
            a[i] = a[i] + u * (Fraction(1, 2) / sc[i])
        c = c - delta
    return AdicResult(tuple(a), b, sc, n)


# ---------------------------------------------------------------------------
# Quadratic diagonalization + completion

@dataclass(frozen=True)
class SquareCompletion:
    """Positive-definite part completed to squares; residual in the rest.

    new_vars are fresh coordinates: the first `rank` are the pivot linear
    forms, the others the untouched original variables.  forward maps each
    new variable to its expression in the original variables; backward is
    the inverse linear map.
    """

    scales: tuple[Fraction, ...]
    shifts: tuple[TruncSeries, ...]
    residual: TruncSeries
    new_vars: tuple[str, ...]
    forward: tuple[Poly, ...]
    backward: tuple[Poly, ...]
    verified_to: int

    def reconstruct(self) -> TruncSeries:
        """Re-expand in the original coordinates for verification."""
        inner = AdicResult(self.shifts, self.residual, self.scales, self.verified_to)
        acc = inner.reconstruct()
        images = {
            v: TruncSeries(f, self.verified_to)
            for v, f in zip(self.new_vars, self.forward)
        }
        return substitute_series(acc.body, images)


@dataclass(frozen=True)
class NotApplicable:
    reason: str


def _invert_linear(vars_in: tuple[str, ...], vars_out: tuple[str, ...], rows: list[list[Fraction]]) -> list[Poly]:
    """Invert new = M*old; return each old variable as a Poly in new vars."""
    n = len(rows)
    aug = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(n)] for i, row in enumerate(rows)]
    for c in range(n):
        pivot = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = aug[c][c]
        aug[c] = [v / inv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[c])]
    # aug[:, n:] is M^-1; old_i = sum_j invM[i][j] * new_j
    out = []
    for i in range(n):
        terms = {}
        for j in range(n):
            coef = aug[i][n + j]
            if coef:
                mono = tuple(1 if k == j else 0 for k in range(n))
                terms[mono] = coef
        out.append(Poly(vars_out, terms))
    return out


def complete_squares(f: TruncSeries) -> Union[SquareCompletion, NotApplicable]:
    """Diagonalize the quadratic lowest term over Q and absorb the tail.

    Requires order exactly 2.  Declares not_applicable when a pivot is
    nonpositive, when a zero diagonal entry meets a cross term (indefinite),
    or when the rank is below arity - 2.
    """
    vars = f.vars
    n_trunc = f.trunc
    arity = len(vars)
    if f.order() != 2:
        raise ValueError("complete_squares requires a series of order exactly 2")

    quad = f.body.homogeneous_part(2)
    # symmetric Gaussian congruence, polynomial-level
    remaining = quad
    pivots: list[tuple[int, Fraction, list[Fraction]]] = []  # (var index, alpha, row of linear form)
    for i in range(arity):
        sq = tuple(2 if k == i else 0 for k in range(arity))
        d = remaining.coeff(sq)
        cross = {
            j: remaining.coeff(tuple((1 if k in (i, j) else 0) for k in range(arity)))
            for j in range(arity)
            if j != i
        }
        if d == 0:
            if any(cross.values()):
                return NotApplicable("indefinite: zero diagonal entry with a cross term")
            continue
        if d < 0:
            return NotApplicable(f"negative pivot {d} at {vars[i]}")
        row = [Fraction(0)] * arity
        row[i] = Fraction(1)
        for j, cij in cross.items():
            row[j] = cij / (2 * d)
        ell = Poly(vars, {tuple(1 if k == j else 0 for k in range(arity)): c for j, c in enumerate(row) if c})
        remaining = remaining - (ell * ell).scale(d)
        pivots.append((i, d, row))
    if not remaining.is_zero():
        return NotApplicable("quadratic part not diagonalizable with rational pivots")
    rank = len(pivots)
    if rank < arity - 2:
        return NotApplicable(f"rank {rank} below arity - 2 = {arity - 2}")

    pivot_idx = [i for i, _, _ in pivots]
    rest_idx = [i for i in range(arity) if i not in pivot_idx]
    new_order = pivot_idx + rest_idx
    base = "q"
    while any(v.startswith(base) for v in vars):
        base += "q"
    new_vars = tuple(f"{base}{k+1}" for k in range(arity))

    rows = []
    for i, _, row in pivots:
        rows.append(row[:])
    for i in rest_idx:
        unit = [Fraction(0)] * arity
        unit[i] = Fraction(1)
        rows.append(unit)
    forward = tuple(
        Poly(vars, {tuple(1 if k == j else 0 for k in range(arity)): c for j, c in enumerate(row) if c})
        for row in rows
    )
    backward_old = _invert_linear(vars, new_vars, rows)

    images = {vars[i]: TruncSeries(backward_old[i], n_trunc) for i in range(arity)}
    transformed = substitute_series(f.body, images)
    scales = tuple(d for _, d, _ in pivots)
    quad_new = Poly(
        new_vars,
        {tuple(2 if k == i else 0 for k in range(arity)): scales[i] for i in range(rank)},
    )
    tail = transformed - TruncSeries(quad_new, n_trunc)
    if not tail.is_zero() and tail.order() < 3:
        return NotApplicable("transformed series keeps low-order terms; not diagonalized")
    inner = adic_decompose(tail, rank, scales=scales)
    return SquareCompletion(
        scales=scales,
        shifts=inner.shifts,
        residual=inner.residual,
        new_vars=new_vars,
        forward=forward,
        backward=tuple(backward_old),
        verified_to=min(n_trunc, inner.verified_to),
    )


# ---------------------------------------------------------------------------
# Hat coordinates for the degree-raising curve pullback

HAT_VARS = ("xh", "yh", "zh")


@dataclass(frozen=True)
class HatChart:
    """Coordinate change x=xh, y=Y(yh), z=Z(zh) with yh^8 = y^8-y^10+y^11
    and zh^2 = z^2-2z^3 (principal roots tangent to the identity)."""

    trunc: int
    yhat: TruncSeries  # yh as a series in y
    zhat: TruncSeries  # zh as a series in z
    y_of_yhat: TruncSeries  # y as a series in yh
    z_of_zhat: TruncSeries  # z as a series in zh


def hat_chart(trunc: int = DEFAULT_TRUNC) -> HatChart:
    yv = ("y",)
    unit_y = TruncSeries(
        Poly(yv, {(0,): Fraction(1), (2,): Fraction(-1), (3,): Fraction(1)}), trunc
    )
    yhat = TruncSeries.variable(yv, "y", trunc) * nth_root_unit(unit_y, 8)
    zv = ("z",)
    unit_z = TruncSeries(Poly(zv, {(0,): Fraction(1), (1,): Fraction(-2)}), trunc)
    zhat = TruncSeries.variable(zv, "z", trunc) * sqrt_unit(unit_z)
    return HatChart(
        trunc=trunc,
        yhat=yhat,
        zhat=zhat,
        y_of_yhat=reversion(yhat).embed(("yh",), {"y": "yh"}),
        z_of_zhat=reversion(zhat).embed(("zh",), {"z": "zh"}),
    )


def hat_change(p: Poly, chart: HatChart) -> TruncSeries:
    """Rewrite a polynomial in x, y, z as a series in xh, yh, zh."""
    n = chart.trunc
    images = {
        "x": TruncSeries.variable(HAT_VARS, "xh", n),
        "y": chart.y_of_yhat.embed(HAT_VARS, {"yh": "yh"}),
        "z": chart.z_of_zhat.embed(HAT_VARS, {"zh": "zh"}),
    }
    return substitute_series(p, images)
