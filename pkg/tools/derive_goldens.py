#!/usr/bin/env python3
"""Regenerate the frozen goldens and derived data files.

Groebner bases and quotient bases are computed with sympy (an independent
implementation) and frozen in canonical soscert formatting; the runtime
claim suite compares its own output byte-for-byte against these strings.
Also expands and writes the derived object files (f2.poly, ID.ideal),
the shipped certificate JSON files, and the sha256 manifest.

Run from the repository root:  python tools/derive_goldens.py
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

import sympy as sp

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from soscert.io import dump_ideal, dump_poly, load_path, sha256_of  # noqa: E402
from soscert.groebner import GREVLEX, Ideal, leading_monomial  # noqa: E402
from soscert.poly import Poly, parse_poly  # noqa: E402

DATA = ROOT / "src" / "soscert" / "data"
OBJECTS = DATA / "objects"
CERTS = DATA / "certs"


def to_sympy(p: Poly, syms):
    expr = sp.Integer(0)
    for mono, coeff in p.terms.items():
        term = sp.Rational(coeff.numerator, coeff.denominator)
        for s, e in zip(syms, mono):
            if e:
                term *= s**e
        expr += term
    return sp.expand(expr)


def from_sympy(expr, syms, vars) -> Poly:
    poly = sp.Poly(sp.expand(expr), *syms)
    terms = {}
    for mono, coeff in poly.terms():
        q = sp.Rational(coeff)
        terms[tuple(int(e) for e in mono)] = Fraction(int(q.p), int(q.q))
    return Poly(vars, terms)


def canonical_basis(polys: list[Poly]) -> list[str]:
    monic = [p.scale(1 / p.terms[leading_monomial(p, GREVLEX)]) for p in polys]
    ordered = sorted(monic, key=lambda p: GREVLEX.key(leading_monomial(p, GREVLEX)))
    return [str(p) for p in ordered]


def sympy_groebner(gens: list[Poly], vars) -> list[Poly]:
    syms = sp.symbols(" ".join(vars))
    if len(vars) == 1:
        syms = (syms,)
    G = sp.groebner([to_sympy(g, syms) for g in gens], *syms, order="grevlex")
    return [from_sympy(e, syms, tuple(vars)) for e in G.exprs]


def sympy_quotient(gens: list[Poly], f: Poly, vars) -> list[Poly]:
    """(I : f) through t-elimination with lex, then exact division by f."""
    tname = "t_"
    syms = sp.symbols(" ".join((tname,) + tuple(vars)))
    t, rest = syms[0], syms[1:]
    ideal = [t * to_sympy(g, rest) for g in gens]
    ideal.append(sp.expand((1 - t) * to_sympy(f, rest)))
    G = sp.groebner(ideal, *syms, order="lex")
    fs = to_sympy(f, rest)
    out = []
    for e in G.exprs:
        if e.has(t):
            continue
        q, r = sp.div(e, fs, *rest)
        assert r == 0, f"elimination element not divisible: {e}"
        out.append(from_sympy(sp.expand(q), rest, tuple(vars)))
    assert out, "no elimination elements found"
    return sympy_groebner(out, vars)


def main() -> None:
    X = ("x", "y", "z")
    H = ("xh", "yh", "zh")

    f1 = load_path(OBJECTS / "f1.poly")
    IC = load_path(OBJECTS / "IC.ideal")
    IGamma = load_path(OBJECTS / "IGamma.ideal")
    f_cxbad = load_path(OBJECTS / "f_cxbad.poly")
    phi = load_path(OBJECTS / "phi.map")
    h = load_path(OBJECTS / "h.poly")

    # ----- derived object files ------------------------------------------
    # curve ideal downstairs: pullback of IC along phi
    ID_gens = [g.substitute(phi) for g in IC.generators]
    ID = Ideal(ID_gens)
    (OBJECTS / "ID.ideal").write_text(dump_ideal(ID), encoding="utf-8")

    # f2 = -y^6*phi*f1 + 2*g1^2 + y^4*g2^2 + g3^2
    y6 = parse_poly("y^6", X)
    y4 = parse_poly("y^4", X)
    F = f1.substitute(phi)
    g1, g2, g3 = ID_gens
    f2 = -(y6 * F) + (g1 * g1).scale(2) + y4 * g2 * g2 + g3 * g3
    (OBJECTS / "f2.poly").write_text(dump_poly(f2), encoding="utf-8")

    # ----- groebner goldens (independent CAS) -----------------------------
    demo = [parse_poly("x^2+y^2", ("x", "y")), parse_poly("y^3", ("x", "y"))]
    goldens = {
        "gb": {
            "IC": canonical_basis(sympy_groebner(list(IC.generators), IC.vars)),
            "demo_x2y2_y3": canonical_basis(sympy_groebner(demo, ("x", "y"))),
            "IGamma": canonical_basis(sympy_groebner(list(IGamma.generators), X)),
            "ID": canonical_basis(sympy_groebner(ID_gens, X)),
        },
        "quotient_gb": {},
        "yhat6zhat6_coefficient": None,
        "reversion_t_plus_t2": [],
    }

    def squares(gens):
        return [gens[i] * gens[j] for i in range(len(gens)) for j in range(i, len(gens))]

    goldens["quotient_gb"]["IC2_f1"] = canonical_basis(
        sympy_quotient(squares(list(IC.generators)), f1, IC.vars)
    )
    goldens["quotient_gb"]["IGamma2_f_cxbad"] = canonical_basis(
        sympy_quotient(squares(list(IGamma.generators)), f_cxbad, X)
    )

    # ----- series goldens (independent dense-list arithmetic) -------------
    # y as a series in yh by order-by-order reversion of
    # yh = y*(1-y^2+y^3)^(1/8); the yh^6*zh^6 coefficient of
    # hat(y^6 * phi*f1) is -[t^6] Y(t)^6 because only the w-image of f1
    # contributes an x-free zh^6 monomial, with w |-> -zh^2.
    N = 16

    def ser_mul(a, b):
        out = [Fraction(0)] * (N + 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj and i + j <= N:
                        out[i + j] += ai * bj
        return out

    def ser_pow(a, m):
        out = [Fraction(0)] * (N + 1)
        out[0] = Fraction(1)
        for _ in range(m):
            out = ser_mul(out, a)
        return out

    unit = [Fraction(0)] * (N + 1)
    unit[0], unit[2], unit[3] = Fraction(1), Fraction(-1), Fraction(1)
    root8 = [Fraction(0)] * (N + 1)
    root8[0] = Fraction(1)
    u = unit[:]
    u[0] = Fraction(0)
    upow = [Fraction(0)] * (N + 1)
    upow[0] = Fraction(1)
    binom = Fraction(1)
    for k in range(1, N + 1):
        binom = binom * (Fraction(1, 8) - (k - 1)) / k
        upow = ser_mul(upow, u)
        if all(c == 0 for c in upow):
            break
        root8 = [a + binom * b for a, b in zip(root8, upow)]
    yhat = [Fraction(0)] * (N + 1)
    for i in range(N):
        yhat[i + 1] = root8[i]
    Y = [Fraction(0)] * (N + 1)
    Y[1] = Fraction(1)
    for k in range(2, N + 1):
        comp = [Fraction(0)] * (N + 1)
        Ypow = [Fraction(0)] * (N + 1)
        Ypow[0] = Fraction(1)
        for d in range(N + 1):
            if yhat[d]:
                comp = [a + yhat[d] * b for a, b in zip(comp, Ypow)]
            Ypow = ser_mul(Ypow, Y)
        Y[k] -= comp[k]
    coeff = -ser_pow(Y, 6)[6]
    goldens["yhat6zhat6_coefficient"] = str(coeff)

    # reversion of t + t^2: signed Catalan numbers (closed form oracle)
    catalan = [1]
    for n in range(1, 10):
        catalan.append(catalan[-1] * 2 * (2 * n - 1) // (n + 1))
    rev = ["0", "1"] + [str(((-1) ** (n - 1)) * catalan[n - 1]) for n in range(2, 10)]
    goldens["reversion_t_plus_t2"] = rev

    (DATA / "goldens.json").write_text(
        json.dumps(goldens, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )

    # ----- certificate files ----------------------------------------------
    write_cert_files(F, h)

    # ----- hash manifest ----------------------------------------------------
    manifest = {}
    for sub in ("objects", "certs"):
        for path in sorted((DATA / sub).iterdir()):
            manifest[f"{sub}/{path.name}"] = sha256_of(path)
    (DATA / "hashes.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    print("wrote goldens, derived objects, certs, hashes")


def write_cert_files(F: Poly, h: Poly) -> None:
    amgm = {
        "kind": "amgm",
        "vars": ["x", "y", "z"],
        "target": "x^10 + x^2*y^6 + (z^2 + 1)^3 - 3*x^4*y^2*(z^2 + 1)",
        "terms": [
            {"scalar": "1", "squares": ["x^5"], "atoms": []},
            {"scalar": "1", "squares": ["x*y^3"], "atoms": []},
            {"scalar": "1", "squares": ["z^2 + 1"], "atoms": [{"g": "z", "c": "1"}]},
        ],
        "mean": {"scalar": "1", "squares": ["x^2", "y"], "atoms": [{"g": "z", "c": "1"}]},
    }
    (CERTS / "cxbad_amgm.json").write_text(
        json.dumps(amgm, indent=2) + "\n", encoding="utf-8"
    )

    H = ("xh", "yh", "zh")
    F_hat_text = "xh^10 + xh^2*yh^24 - zh^6 + 3*xh^4*yh^8*zh^2"
    g_target = (
        f"-yh^6*({F_hat_text}) + (xh^6 + yh^8*zh^2)^2 + yh^4*(yh^16 + xh^2*zh^2)^2"
    )
    base = "xh^2 - yh^6"
    g_cert = {
        "kind": "sos",
        "vars": ["xh", "yh", "zh"],
        "ring": "polynomial",
        "target": str(parse_poly(g_target, H)),
        "items": [
            {"scale": {"scalar": "1", "squares": [], "atoms": []}, "root": f"({base})*xh^4"},
            {"scale": {"scalar": "1", "squares": [], "atoms": []}, "root": f"({base})*xh^3*yh^3"},
            {"scale": {"scalar": "1", "squares": [], "atoms": []}, "root": f"({base})*xh^2*yh^6"},
            {"scale": {"scalar": "1", "squares": [], "atoms": []}, "root": f"({base})*xh*yh^9"},
            {"scale": {"scalar": "1", "squares": [], "atoms": []}, "root": f"({base})*yh^12"},
            {"scale": {"scalar": "2", "squares": [], "atoms": []}, "root": f"({base})*xh*yh^4*zh"},
            {"scale": {"scalar": "1", "squares": [], "atoms": []}, "root": "xh^2*yh^7*zh"},
            {"scale": {"scalar": "1", "squares": [], "atoms": []}, "root": "xh^2*yh^2*zh^2"},
            {"scale": {"scalar": "1", "squares": [], "atoms": []}, "root": "yh^8*zh^2"},
            {"scale": {"scalar": "1", "squares": [], "atoms": []}, "root": "yh^3*zh^3"},
        ],
    }
    (CERTS / "g_identity.json").write_text(
        json.dumps(g_cert, indent=2) + "\n", encoding="utf-8"
    )

    fake = {
        "kind": "sos",
        "vars": ["x", "y"],
        "ring": "polynomial",
        "target": "x^4*y^2 + x^2*y^4 + 1 - 3*x^2*y^2",
        "items": [
            {"scale": {"scalar": "1", "squares": [], "atoms": []}, "root": "x^2*y"},
            {"scale": {"scalar": "1", "squares": [], "atoms": []}, "root": "x*y^2"},
            {"scale": {"scalar": "1", "squares": [], "atoms": []}, "root": "1 - x*y"},
        ],
    }
    (CERTS / "motzkin_attempt.json").write_text(
        json.dumps(fake, indent=2) + "\n", encoding="utf-8"
    )

    bad_point = {
        "kind": "bad_point",
        "vars": ["u", "v", "w"],
        "ideal": ["u^3 - v*w", "v^2 - u*w", "w^2 - u^2*v"],
        "order": "grevlex",
        "element": "u^5 + u*v^3 + w^3 - 3*u^2*v*w",
        "point": ["0", "0", "0"],
        "evidence": "order_bound",
        "witnesses": [{"point": ["1", "1", "1"], "rank": 2}],
    }
    (CERTS / "symb_bad_point.json").write_text(
        json.dumps(bad_point, indent=2) + "\n", encoding="utf-8"
    )


if __name__ == "__main__":
    main()
