"""File formats: polynomial, ideal, map, and series files.

All files are UTF-8 text.  A header line ``vars: x y z`` declares the
variable list; ideal files may add ``order: grevlex`` and then carry one
polynomial per line; series files add ``trunc: N``.  Blank lines and
``#`` comments are ignored.
"""

from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Union

from .groebner import Ideal, parse_order
from .poly import Poly, parse_poly
from .series import TruncSeries


def split_object_text(text: str) -> tuple[dict[str, str], list[str]]:
    headers: dict[str, str] = {}
    body: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key = line.split(":", 1)[0].strip().lower()
        if ":" in line and key in ("vars", "order", "trunc", "names"):
            headers[key] = line.split(":", 1)[1].strip()
        else:
            body.append(line)
    return headers, body


def _vars_of(headers: dict[str, str]) -> tuple[str, ...]:
    if "vars" not in headers:
        raise ValueError("missing 'vars:' header")
    return tuple(headers["vars"].split())


def load_poly_text(text: str) -> Poly:
    headers, body = split_object_text(text)
    vars = _vars_of(headers)
    if len(body) != 1:
        raise ValueError(f"polynomial file needs exactly one body line, got {len(body)}")
    return parse_poly(body[0], vars)


def load_ideal_text(text: str) -> Ideal:
    headers, body = split_object_text(text)
    vars = _vars_of(headers)
    if not body:
        raise ValueError("ideal file has no generators")
    order = parse_order(headers.get("order", "grevlex"))
    return Ideal([parse_poly(line, vars) for line in body], order)


def load_map_text(text: str) -> dict[str, Poly]:
    headers, body = split_object_text(text)
    vars = _vars_of(headers)
    if "names" not in headers:
        raise ValueError("map file needs a 'names:' header")
    names = tuple(headers["names"].split())
    if len(body) != len(names):
        raise ValueError(f"map file needs {len(names)} image lines, got {len(body)}")
    return {name: parse_poly(line, vars) for name, line in zip(names, body)}


def load_series_text(text: str) -> TruncSeries:
    headers, body = split_object_text(text)
    vars = _vars_of(headers)
    if "trunc" not in headers:
        raise ValueError("series file needs a 'trunc:' header")
    if len(body) != 1:
        raise ValueError("series file needs exactly one body line")
    return TruncSeries(parse_poly(body[0], vars), int(headers["trunc"]))


def dump_poly(p: Poly) -> str:
    return f"vars: {' '.join(p.vars)}\n{p}\n"


def dump_ideal(i: Ideal) -> str:
    lines = [f"vars: {' '.join(i.vars)}", f"order: {i.default_order.name()}"]
    lines.extend(str(g) for g in i.generators)
    return "\n".join(lines) + "\n"


def dump_series(s: TruncSeries) -> str:
    return f"vars: {' '.join(s.vars)}\ntrunc: {s.trunc}\n{s.body}\n"


def load_path(path: Union[str, Path]):
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    suffix = path.suffix
    if suffix == ".poly":
        return load_poly_text(text)
    if suffix == ".ideal":
        return load_ideal_text(text)
    if suffix == ".map":
        return load_map_text(text)
    if suffix == ".series":
        return load_series_text(text)
    raise ValueError(f"unknown object file type {suffix!r}")


def sha256_of(path: Union[str, Path]) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
