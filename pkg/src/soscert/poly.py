"""Exact sparse multivariate polynomials over the rationals.

Coefficients are `fractions.Fraction` throughout; evaluation additionally
supports Gaussian rationals.  Monomials are exponent tuples whose arity is
the length of the declared variable list.  All values are immutable and
safe to share across threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .errors import ParseError, VariableMismatchError

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]


# ---------------------------------------------------------------------------
# Gaussian rationals

@dataclass(frozen=True)
class GaussRat:
    """Element of Q(i), componentwise reduced via Fraction."""

    re: Fraction
    im: Fraction = Fraction(0)

    @staticmethod
    def of(re: Scalar, im: Scalar = 0) -> "GaussRat":
        return GaussRat(Fraction(re), Fraction(im))

    def __add__(self, other: "GaussRat") -> "GaussRat":
        return GaussRat(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussRat") -> "GaussRat":
        return GaussRat(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussRat") -> "GaussRat":
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "GaussRat") -> "GaussRat":
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRat(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __neg__(self) -> "GaussRat":
        return GaussRat(-self.re, -self.im)

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        im = "i" if abs(self.im) == 1 else f"{abs(self.im)}*i"
        sign = "-" if self.im < 0 else "+"
        if self.re == 0:
            return f"-{im}" if self.im < 0 else im
        return f"{self.re}{sign}{im}"


GAUSS_I = GaussRat.of(0, 1)


def parse_gauss(text: str) -> GaussRat:
    """Parse literals like ``1``, ``-2/3``, ``i``, ``-i``, ``3/4*i``, ``1+2*i``."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty Gaussian rational literal")

    def part(tok: str) -> tuple[Fraction, bool]:
        imag = tok.endswith("i")
        if imag:
            tok = tok[:-1]
            if tok.endswith("*"):
                tok = tok[:-1]
            if tok in ("", "+"):
                return Fraction(1), True
            if tok == "-":
                return Fraction(-1), True
        return Fraction(tok), imag

    # split on +/- that are not leading
    pieces: list[str] = []
    start = 0
    for k, ch in enumerate(s):
        if ch in "+-" and k > 0 and s[k - 1] not in "+-*/":
            pieces.append(s[start:k])
            start = k
    pieces.append(s[start:])
    re = Fraction(0)
    im = Fraction(0)
    for piece in pieces:
        val, imag = part(piece)
        if imag:
            im += val
        else:
            re += val
    return GaussRat(re, im)


# ---------------------------------------------------------------------------
# Monomial helpers

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a: Monomial) -> int:
    return sum(a)


def grevlex_key(m: Monomial) -> tuple:
    """Sort key: larger key = larger monomial under graded reverse lex."""
    return (sum(m), tuple(-e for e in reversed(m)))


# ---------------------------------------------------------------------------
# Polynomials

class Poly:
    """Canonical sparse polynomial: a term map with no zero coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Monomial, Scalar]):
        vs = tuple(vars)
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in terms.items():
            c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
            if c == 0:
                continue
            if len(mono) != len(vs) or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono!r} for variables {vs!r}")
            clean[tuple(mono)] = c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # immutable after construction
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------------
    @staticmethod
    def zero(vars: Sequence[str]) -> "Poly":
        return Poly(vars, {})

    @staticmethod
    def constant(vars: Sequence[str], c: Scalar) -> "Poly":
        return Poly(vars, {(0,) * len(tuple(vars)): Fraction(c)})

    @staticmethod
    def variable(vars: Sequence[str], name: str) -> "Poly":
        vs = tuple(vars)
        i = vs.index(name)
        mono = tuple(1 if j == i else 0 for j in range(len(vs)))
        return Poly(vs, {mono: Fraction(1)})

    # -- basic structure ----------------------------------------------------
    @property
    def arity(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def support(self) -> tuple[Monomial, ...]:
        return tuple(sorted(self.terms))

    def coeff(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(mono_deg(m) for m in self.terms)

    def order(self) -> int:
        """Least total degree of a nonzero term."""
        if not self.terms:
            raise ValueError("order of the zero polynomial is undefined")
        return min(mono_deg(m) for m in self.terms)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.vars, {m: c for m, c in self.terms.items() if mono_deg(m) == d})

    def truncated(self, n: int) -> "Poly":
        return Poly(self.vars, {m: c for m, c in self.terms.items() if mono_deg(m) <= n})

    def _check(self, other: "Poly") -> None:
        if self.vars != other.vars:
            raise VariableMismatchError(self.vars, other.vars)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(self.vars, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) - c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(self.vars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.vars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: Union["Poly", Scalar]) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly(self.vars, out)

    def __rmul__(self, other: Scalar) -> "Poly":
        return self.scale(other)

    def scale(self, c: Scalar) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly.zero(self.vars)
        return Poly(self.vars, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Poly.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Poly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    # -- calculus ------------------------------------------------------------
    def derivative(self, var: str) -> "Poly":
        if var not in self.vars:
            raise ValueError(f"unknown variable {var!r} (have {self.vars!r})")
        i = self.vars.index(var)
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                continue
            dm = list(m)
            dm[i] -= 1
            out[tuple(dm)] = c * m[i]
        return Poly(self.vars, out)

    def hessian(self) -> list[list["Poly"]]:
        firsts = [self.derivative(v) for v in self.vars]
        return [[d.derivative(v) for v in self.vars] for d in firsts]

    # -- evaluation and substitution -----------------------------------------
    def evaluate(self, point: Sequence[Union[GaussRat, Scalar]]) -> GaussRat:
        if len(point) != self.arity:
            raise VariableMismatchError(self.vars, (f"<point of arity {len(point)}>",))
        pt = [p if isinstance(p, GaussRat) else GaussRat.of(p) for p in point]
        # cache powers per coordinate
        maxes = [0] * self.arity
        for m in self.terms:
            for i, e in enumerate(m):
                maxes[i] = max(maxes[i], e)
        pows: list[list[GaussRat]] = []
        for i, v in enumerate(pt):
            row = [GaussRat.of(1)]
            for _ in range(maxes[i]):
                row.append(row[-1] * v)
            pows.append(row)
        total = GaussRat.of(0)
        for m, c in self.terms.items():
            val = GaussRat.of(c)
            for i, e in enumerate(m):
                if e:
                    val = val * pows[i][e]
            total = total + val
        return total

    def substitute(self, images: Mapping[str, "Poly"]) -> "Poly":
        """Ring morphism determined by variable images (all in one target ring)."""
        used = [v for v in self.vars if any(m[self.vars.index(v)] for m in self.terms)]
        missing = [v for v in used if v not in images]
        if missing:
            raise ValueError(f"no image for variable(s) {missing!r}")
        if not images:
            raise ValueError("empty substitution map")
        target = next(iter(images.values())).vars
        for img in images.values():
            if img.vars != target:
                raise VariableMismatchError(target, img.vars)
        pows: dict[tuple[str, int], Poly] = {}

        def power(v: str, e: int) -> Poly:
            key = (v, e)
            if key not in pows:
                pows[key] = images[v] ** e
            return pows[key]

        out = Poly.zero(target)
        for m, c in self.terms.items():
            term = Poly.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(self.vars[i], e)
            out = out + term
        return out

    def rename(self, new_vars: Sequence[str]) -> "Poly":
        if len(tuple(new_vars)) != self.arity:
            raise VariableMismatchError(self.vars, tuple(new_vars))
        return Poly(new_vars, dict(self.terms))

    # -- formatting -----------------------------------------------------------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({'+'.join(self.vars)}: {format_poly(self)})"


def poly_arith(a: Poly, b: Poly, kind: str) -> Poly:
    """Dispatch used by the service layer; kind in {add, sub, mul}."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


# ---------------------------------------------------------------------------
# Formatting (canonical: grevlex-descending, deterministic signs)

def _format_term(vars: tuple[str, ...], mono: Monomial, coeff: Fraction) -> str:
    factors = []
    for v, e in zip(vars, mono):
        if e == 1:
            factors.append(v)
        elif e > 1:
            factors.append(f"{v}^{e}")
    a = abs(coeff)
    if not factors:
        return str(a)
    if a != 1:
        factors.insert(0, str(a))
    return "*".join(factors)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    monos = sorted(p.terms, key=grevlex_key, reverse=True)
    first = monos[0]
    out = []
    if p.terms[first] < 0:
        out.append("-")
    out.append(_format_term(p.vars, first, p.terms[first]))
    for m in monos[1:]:
        c = p.terms[m]
        out.append(" - " if c < 0 else " + ")
        out.append(_format_term(p.vars, m, c))
    return "".join(out)


# ---------------------------------------------------------------------------
# Parsing
#
# expression := ['+'|'-'] term (('+'|'-') term)*
# term       := factor ('*' factor)*
# factor     := rational | variable ('^' natural)? | '(' expression ')' ('^' natural)?
# rational   := integer ('/' positive-integer)?

class _Parser:
    def __init__(self, text: str, vars: tuple[str, ...]):
        self.text = text
        self.vars = vars
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.line, self.col)

    def _advance(self, n: int) -> None:
        for ch in self.text[self.pos : self.pos + n]:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self._advance(1)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self._advance(1)

    def parse(self) -> Poly:
        self.skip_ws()
        p = self.expression()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.peek()!r}")
        return p

    def expression(self) -> Poly:
        self.skip_ws()
        sign = 1
        if self.peek() in ("+", "-"):
            if self.peek() == "-":
                sign = -1
            self._advance(1)
        p = self.term().scale(sign)
        while True:
            self.skip_ws()
            ch = self.peek()
            if ch not in ("+", "-"):
                return p
            self._advance(1)
            t = self.term()
            p = p + t if ch == "+" else p - t

    def term(self) -> Poly:
        p = self.factor()
        while True:
            self.skip_ws()
            if self.peek() != "*":
                return p
            self._advance(1)
            p = p * self.factor()

    def natural(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.peek().isdigit():
            self._advance(1)
        if start == self.pos:
            raise self.error("expected a natural number")
        return int(self.text[start : self.pos])

    def factor(self) -> Poly:
        self.skip_ws()
        ch = self.peek()
        if ch == "(":
            self._advance(1)
            p = self.expression()
            self.skip_ws()
            self.expect(")")
            self.skip_ws()
            if self.peek() == "^":
                self._advance(1)
                return p ** self.natural()
            return p
        if ch.isdigit():
            num = self.natural()
            self.skip_ws()
            if self.peek() == "/":
                self._advance(1)
                den = self.natural()
                if den == 0:
                    raise self.error("zero denominator")
                return Poly.constant(self.vars, Fraction(num, den))
            return Poly.constant(self.vars, num)
        if ch.isalpha() or ch == "_":
            start = self.pos
            while self.peek().isalnum() or self.peek() == "_":
                self._advance(1)
            name = self.text[start : self.pos]
            if name not in self.vars:
                raise self.error(f"unknown variable {name!r} (declared: {' '.join(self.vars)})")
            p = Poly.variable(self.vars, name)
            self.skip_ws()
            if self.peek() == "^":
                self._advance(1)
                return p ** self.natural()
            return p
        raise self.error(f"unexpected {ch!r}" if ch else "unexpected end of input")


def parse_poly(text: str, vars: Sequence[str]) -> Poly:
    return _Parser(text, tuple(vars)).parse()


# ---------------------------------------------------------------------------
# Newton polytope half-support

def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve A*x = b exactly; None if inconsistent or underdetermined."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    a = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if a[i][c] != 0), None)
        if pivot is None:
            return None  # free column: affinely dependent subset, skip
        a[r], a[pivot] = a[pivot], a[r]
        inv = a[r][c]
        a[r] = [v / inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None  # inconsistent
    if len(pivots) < n:
        return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        sol[c] = a[i][n]
    return sol


def in_convex_hull(point: Monomial, points: Sequence[Monomial]) -> bool:
    """Exact test via Caratheodory subsets and rational elimination."""
    if not points:
        return False
    n = len(point)
    pts = list(dict.fromkeys(points))
    if tuple(point) in pts:
        return True
    for k in range(2, n + 2):
        for sub in itertools.combinations(pts, k):
            rows = [[Fraction(s[i]) for s in sub] for i in range(n)]
            rows.append([Fraction(1)] * k)
            rhs = [Fraction(point[i]) for i in range(n)] + [Fraction(1)]
            sol = _solve_exact(rows, rhs)
            if sol is not None and all(l >= 0 for l in sol):
                return True
    return False


def newton_half_support(p: Poly) -> tuple[Monomial, ...]:
    """All lattice points b with 2b inside the Newton polytope of p.

    Any square summand of an SOS representation of p has its support inside
    this set.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no Newton polytope")
    supp = p.support()
    n = p.arity
    box = [max(m[i] for m in supp) // 2 for i in range(n)]
    out = []
    for beta in itertools.product(*[range(b + 1) for b in box]):
        if in_convex_hull(tuple(2 * e for e in beta), supp):
            out.append(beta)
    return tuple(sorted(out))
