"""Reduced Groebner bases, normal forms, and ideal operations over Q.

Buchberger's algorithm with the normal selection strategy (minimal lcm
degree, ties broken by the monomial order on the lcm, then by pair index),
the coprime-lcm criterion, and an optional chain criterion.  The reduced
basis is unique for a given ideal and order, so every strategy choice is
an implementation detail; determinism of intermediate steps is still kept
for reproducible budget accounting.
"""

from __future__ import annotations

import itertools
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import BudgetExceededError, NotOnVarietyError, VariableMismatchError
from .poly import (
    GaussRat,
    Monomial,
    Poly,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

BUDGET_ENV = "SOSCERT_GB_BUDGET"
DEFAULT_BUDGET = 10**6


def step_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# Monomial orders

@dataclass(frozen=True)
class MonOrder:
    """Total order on monomials; kind in {grevlex, lex, elim}.

    ``elim`` is the block order that compares the first ``block`` exponents
    by grevlex, then the rest by grevlex; it eliminates the leading block.
    """

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise ValueError("elimination order needs a positive block size")

    def key(self, m: Monomial) -> tuple:
        if self.kind == "lex":
            return m
        if self.kind == "grevlex":
            return (sum(m), tuple(-e for e in reversed(m)))
        head, tail = m[: self.block], m[self.block :]
        return (
            (sum(head), tuple(-e for e in reversed(head))),
            (sum(tail), tuple(-e for e in reversed(tail))),
        )

    def name(self) -> str:
        return self.kind if self.kind != "elim" else f"elim({self.block})"


GREVLEX = MonOrder("grevlex")
LEX = MonOrder("lex")


def parse_order(text: str) -> MonOrder:
    t = text.strip().lower()
    if t.startswith("elim"):
        inner = t[t.index("(") + 1 : t.index(")")] if "(" in t else "1"
        return MonOrder("elim", int(inner))
    return MonOrder(t)


def leading_monomial(p: Poly, order: MonOrder) -> Monomial:
    if p.is_zero():
        raise ValueError("zero polynomial has no leading monomial")
    return max(p.terms, key=order.key)


def leading_coeff(p: Poly, order: MonOrder) -> Fraction:
    return p.terms[leading_monomial(p, order)]


def monic(p: Poly, order: MonOrder) -> Poly:
    if p.is_zero():
        return p
    return p.scale(1 / leading_coeff(p, order))


# ---------------------------------------------------------------------------
# Division with cofactors

@dataclass(frozen=True)
class MembershipWitness:
    """Exact division identity: target = sum(cofactor_i * basis_i) + remainder."""

    target: Poly
    basis: tuple[Poly, ...]
    cofactors: tuple[Poly, ...]
    remainder: Poly

    @property
    def member(self) -> bool:
        return self.remainder.is_zero()

    def check(self) -> bool:
        acc = Poly.zero(self.target.vars)
        for c, g in zip(self.cofactors, self.basis):
            acc = acc + c * g
        return acc + self.remainder == self.target


class _Budget:
    __slots__ = ("left", "limit")

    def __init__(self, limit: int):
        self.left = limit
        self.limit = limit

    def spend(self, n: int = 1) -> None:
        self.left -= n
        if self.left < 0:
            raise BudgetExceededError(self.limit)


def _divide(
    f: Poly,
    basis: Sequence[Poly],
    order: MonOrder,
    budget: _Budget,
    with_cofactors: bool = True,
) -> tuple[list[dict[Monomial, Fraction]], Poly]:
    lead = [(leading_monomial(g, order), g) for g in basis]
    lcs = [g.terms[lm] for lm, g in lead]
    work = dict(f.terms)
    rem: dict[Monomial, Fraction] = {}
    cof: list[dict[Monomial, Fraction]] = [dict() for _ in basis]
    okey = order.key
    while work:
        lm = max(work, key=okey)
        lc = work[lm]
        for i, (glm, g) in enumerate(lead):
            if mono_divides(glm, lm):
                budget.spend()
                q = mono_div(lm, glm)
                c = lc / lcs[i]
                if with_cofactors:
                    cof[i][q] = cof[i].get(q, Fraction(0)) + c
                for gm, gc in g.terms.items():
                    m = mono_mul(q, gm)
                    s = work.get(m, Fraction(0)) - c * gc
                    if s:
                        work[m] = s
                    else:
                        work.pop(m, None)
                break
        else:
            rem[lm] = lc
            del work[lm]
    return cof, Poly(f.vars, rem)


def s_polynomial(f: Poly, g: Poly, order: MonOrder) -> Poly:
    lf, lg = leading_monomial(f, order), leading_monomial(g, order)
    l = mono_lcm(lf, lg)
    mf = Poly(f.vars, {mono_div(l, lf): 1 / leading_coeff(f, order)})
    mg = Poly(g.vars, {mono_div(l, lg): 1 / leading_coeff(g, order)})
    return mf * f - mg * g


def groebner_basis(
    generators: Sequence[Poly],
    order: MonOrder = GREVLEX,
    budget: Optional[int] = None,
    use_chain_criterion: bool = True,
) -> tuple[Poly, ...]:
    """Unique reduced Groebner basis (monic, pairwise interreduced)."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise ValueError("empty generator list")
    vars = gens[0].vars
    for g in gens:
        if g.vars != vars:
            raise VariableMismatchError(vars, g.vars)
    bd = _Budget(budget if budget is not None else step_budget())

    G = [monic(g, order) for g in gens]
    lms = [leading_monomial(g, order) for g in G]
    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}
    processed: set[tuple[int, int]] = set()

    def pair_rank(p: tuple[int, int]) -> tuple:
        l = mono_lcm(lms[p[0]], lms[p[1]])
        return (mono_deg(l), order.key(l), p)

    while pairs:
        i, j = min(pairs, key=pair_rank)
        pairs.discard((i, j))
        processed.add((i, j))
        l = mono_lcm(lms[i], lms[j])
        if l == mono_mul(lms[i], lms[j]):
            continue  # coprime leading monomials
        if use_chain_criterion and any(
            k not in (i, j)
            and mono_divides(lms[k], l)
            and (min(i, k), max(i, k)) in processed
            and (min(j, k), max(j, k)) in processed
            for k in range(len(G))
        ):
            continue
        s = s_polynomial(G[i], G[j], order)
        _, r = _divide(s, G, order, bd, with_cofactors=False)
        if not r.is_zero():
            G.append(monic(r, order))
            lms.append(leading_monomial(G[-1], order))
            new = len(G) - 1
            pairs.update((k, new) for k in range(new))

    # minimalize: drop elements whose leading monomial is divisible by another's
    keep = []
    for i, lm in enumerate(lms):
        if not any(
            j != i and mono_divides(lms[j], lm) and (lms[j] != lm or j < i)
            for j in range(len(G))
        ):
            keep.append(i)
    minimal = [G[i] for i in keep]
    # tail-reduce each against the others
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        if others:
            _, r = _divide(g, others, order, bd, with_cofactors=False)
        else:
            r = g
        reduced.append(monic(r, order))
    reduced.sort(key=lambda p: order.key(leading_monomial(p, order)))
    return tuple(reduced)


def buchberger_criterion(basis: Sequence[Poly], order: MonOrder = GREVLEX) -> bool:
    """Every S-polynomial of the basis reduces to zero against it."""
    bd = _Budget(step_budget())
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = s_polynomial(basis[i], basis[j], order)
            if s.is_zero():
                continue
            _, r = _divide(s, basis, order, bd, with_cofactors=False)
            if not r.is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# Ideals

class Ideal:
    """Generator list with a lazily cached reduced Groebner basis."""

    def __init__(self, generators: Sequence[Poly], order: MonOrder = GREVLEX):
        gens = tuple(generators)
        if not gens:
            raise ValueError("ideal needs at least one generator")
        vars = gens[0].vars
        for g in gens:
            if g.vars != vars:
                raise VariableMismatchError(vars, g.vars)
        self.vars = vars
        self.generators = gens
        self.default_order = order
        self._cache: dict[MonOrder, tuple[Poly, ...]] = {}
        self._lock = threading.Lock()

    def groebner(self, order: Optional[MonOrder] = None, budget: Optional[int] = None) -> tuple[Poly, ...]:
        order = order or self.default_order
        with self._lock:
            if order not in self._cache:
                self._cache[order] = groebner_basis(self.generators, order, budget)
            return self._cache[order]

    def __repr__(self) -> str:
        return f"Ideal({len(self.generators)} gens in {'+'.join(self.vars)})"


def normal_form(f: Poly, ideal: Ideal, order: Optional[MonOrder] = None) -> MembershipWitness:
    order = order or ideal.default_order
    if f.vars != ideal.vars:
        raise VariableMismatchError(f.vars, ideal.vars)
    basis = ideal.groebner(order)
    bd = _Budget(step_budget())
    cof, rem = _divide(f, basis, order, bd)
    cofactors = tuple(Poly(f.vars, c) for c in cof)
    return MembershipWitness(f, basis, cofactors, rem)


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    if a.vars != b.vars:
        raise VariableMismatchError(a.vars, b.vars)
    if a is b or a.generators == b.generators:
        gens = [
            a.generators[i] * a.generators[j]
            for i in range(len(a.generators))
            for j in range(i, len(a.generators))
        ]
    else:
        gens = [f * g for f in a.generators for g in b.generators]
    return Ideal(gens, a.default_order)


def ideal_square(a: Ideal) -> Ideal:
    return ideal_product(a, a)


def ideal_quotient(ideal: Ideal, f: Poly, budget: Optional[int] = None) -> Ideal:
    """(I : f) via intersection with the principal ideal of f.

    Uses one auxiliary elimination variable t: the elements of
    t*I + (1-t)*<f> free of t generate I ∩ <f>, and dividing them by f
    yields the quotient.
    """
    if f.is_zero():
        raise ValueError("quotient by the zero polynomial")
    if f.vars != ideal.vars:
        raise VariableMismatchError(f.vars, ideal.vars)
    tname = "t_"
    while tname in ideal.vars:
        tname += "_"
    ext = (tname,) + ideal.vars

    def lift(p: Poly) -> Poly:
        return Poly(ext, {(0,) + m: c for m, c in p.terms.items()})

    t = Poly.variable(ext, tname)
    one = Poly.constant(ext, 1)
    gens = [t * lift(g) for g in ideal.generators]
    gens.append((one - t) * lift(f))
    basis = groebner_basis(gens, MonOrder("elim", 1), budget)
    quot_gens = []
    bd = _Budget(budget if budget is not None else step_budget())
    for g in basis:
        if any(m[0] for m in g.terms):
            continue
        drop = Poly(ideal.vars, {m[1:]: c for m, c in g.terms.items()})
        cof, rem = _divide(drop, [f], ideal.default_order, bd)
        if not rem.is_zero():
            raise ArithmeticError("intersection element not divisible by f")
        quot_gens.append(Poly(ideal.vars, cof[0]))
    if not quot_gens:
        raise ArithmeticError("empty intersection basis; expected f*I inside <f>")
    return Ideal(quot_gens, ideal.default_order)


# ---------------------------------------------------------------------------
# Localized membership at a point

@dataclass(frozen=True)
class LocalMembership:
    member: bool
    point: tuple[GaussRat, ...]
    witness: Optional[Poly]
    witness_value: Optional[GaussRat]
    evaluations: tuple[GaussRat, ...]
    quotient_basis: tuple[Poly, ...]


def member_localized(f: Poly, ideal: Ideal, point: Sequence[GaussRat]) -> LocalMembership:
    """Decide f in I localized at the maximal ideal of a point.

    f lies in the localization iff some element of (I : f) is nonvanishing
    at the point; the quotient basis evaluations are the returned evidence.
    For nonreal points the ideal of the point and its conjugate is meant;
    since all coefficients are rational, evaluating at the single given
    point decides nonvanishing for the conjugate as well.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    pt = tuple(p if isinstance(p, GaussRat) else GaussRat.of(p) for p in point)
    quotient = ideal_quotient(ideal, f)
    basis = quotient.groebner()
    evals = tuple(g.evaluate(pt) for g in basis)
    for g, val in zip(basis, evals):
        if not val.is_zero():
            return LocalMembership(True, pt, g, val, evals, basis)
    return LocalMembership(False, pt, None, None, evals, basis)


# ---------------------------------------------------------------------------
# Order-valuation obstruction at the origin

@dataclass(frozen=True)
class OrderBound:
    obstruction: bool
    f_order: int
    bound: int

    def __str__(self) -> str:
        if self.obstruction:
            return f"obstruction({self.f_order},{self.bound})"
        return "inconclusive"


def local_order_bound(f: Poly, ideal: Ideal) -> OrderBound:
    """Certify f not in the square of I localized at the origin when
    ord(f) < 2*min ord(generators): every element of the localized square
    has order at least the bound."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    for g in ideal.generators:
        if g.is_zero():
            raise ValueError("zero generator")
    bound = 2 * min(g.order() for g in ideal.generators)
    fo = f.order()
    return OrderBound(fo < bound, fo, bound)


# ---------------------------------------------------------------------------
# Dimension and Jacobian rank

def dimension(ideal: Ideal, order: MonOrder = GREVLEX) -> int:
    """Krull dimension of the quotient ring via independent variable sets
    modulo the leading-term ideal (exhaustive over subsets; small arity)."""
    basis = ideal.groebner(order)
    lms = [leading_monomial(g, order) for g in basis]
    if any(mono_deg(m) == 0 for m in lms):
        raise ValueError("unit ideal has no dimension")
    n = len(ideal.vars)
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    best = 0
    for size in range(n, 0, -1):
        for subset in itertools.combinations(range(n), size):
            sset = set(subset)
            if all(not s <= sset for s in supports):
                return size
    return best


def jacobian_rank_at(gens: Sequence[Poly], point: Sequence[GaussRat]) -> int:
    """Exact rank of the Jacobian of gens at a common zero (checked)."""
    pt = tuple(p if isinstance(p, GaussRat) else GaussRat.of(p) for p in point)
    for g in gens:
        val = g.evaluate(pt)
        if not val.is_zero():
            raise NotOnVarietyError(str(g), str(val))
    vars = gens[0].vars
    rows = [[g.derivative(v).evaluate(pt) for v in vars] for g in gens]
    # Gaussian elimination over Q(i)
    rank = 0
    ncols = len(vars)
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [v / inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                fctr = rows[i][c]
                rows[i] = [v - fctr * w for v, w in zip(rows[i], rows[r])]
        r += 1
        rank += 1
        if r == len(rows):
            break
    return rank
