"""JSON file formats for algebras and probe sets.

Rationals are written as strings (``"2"``, ``"-1/2"``); float literals are
rejected so nothing inexact can enter.

Algebra file::

    {"name": "sl2",
     "basis": [{"name": "e", "parity": 0}, ...],
     "brackets": [{"left": "h", "right": "e", "result": [["2", "e"]]}, ...]}

Only one orientation of each bracket is needed. Probe file::

    {"probes": [{"f": "1", "q": "1", "z": "-1/2"}, ...]}
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .superalg import SuperAlgebra, catalog, from_table


class InputError(ValueError):
    """Unreadable or malformed input; the message names the offending field."""


def _scalar(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"{where}: coefficients must be strings or integers, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{where}: {value!r} is not a rational number") from None
    raise InputError(f"{where}: expected a rational string, got {type(value).__name__}")


def _load_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def algebra_from_json(data, source: str = "<input>", strict: bool = True) -> SuperAlgebra:
    if not isinstance(data, dict):
        raise InputError(f"{source}: top level must be an object")
    name = data.get("name", Path(source).stem)
    raw_basis = data.get("basis")
    if not isinstance(raw_basis, list) or not raw_basis:
        raise InputError(f"{source}: 'basis' must be a non-empty list")
    basis = []
    for i, entry in enumerate(raw_basis):
        where = f"{source}: basis[{i}]"
        if isinstance(entry, dict):
            bname, parity = entry.get("name"), entry.get("parity")
        elif isinstance(entry, list) and len(entry) == 2:
            bname, parity = entry
        else:
            raise InputError(f"{where}: expected {{'name', 'parity'}}")
        if not isinstance(bname, str) or not bname:
            raise InputError(f"{where}.name: must be a non-empty string")
        if parity not in (0, 1) or isinstance(parity, bool):
            raise InputError(f"{where}.parity: must be 0 or 1")
        basis.append((bname, parity))
    names = [b[0] for b in basis]
    if len(set(names)) != len(names):
        dup = next(s for s in names if names.count(s) > 1)
        raise InputError(f"{source}: basis name {dup!r} is repeated")

    known = set(names)
    brackets = []
    seen = set()
    for i, entry in enumerate(data.get("brackets", [])):
        where = f"{source}: brackets[{i}]"
        if not isinstance(entry, dict):
            raise InputError(f"{where}: expected an object")
        left, right, result = entry.get("left"), entry.get("right"), entry.get("result")
        for field_name, val in (("left", left), ("right", right)):
            if val not in known:
                raise InputError(f"{where}.{field_name}: unknown basis name {val!r}")
        if (left, right) in seen:
            raise InputError(f"{where}: [{left},{right}] given twice")
        seen.add((left, right))
        if not isinstance(result, list):
            raise InputError(f"{where}.result: expected a list of [coefficient, name] pairs")
        terms: dict = {}
        for j, term in enumerate(result):
            tw = f"{where}.result[{j}]"
            if not isinstance(term, list) or len(term) != 2:
                raise InputError(f"{tw}: expected [coefficient, name]")
            coef, target = term
            if target not in known:
                raise InputError(f"{tw}: unknown basis name {target!r}")
            terms[target] = terms.get(target, Fraction(0)) + _scalar(coef, tw)
        brackets.append((left, right, terms))
    return from_table(str(name), basis, brackets, strict=strict)


def algebra_to_json(alg: SuperAlgebra) -> dict:
    return {
        "name": alg.name,
        "basis": [{"name": s, "parity": p} for s, p in zip(alg.names, alg.parities)],
        "brackets": [
            {
                "left": alg.names[i],
                "right": alg.names[j],
                "result": [[str(c), alg.names[k]] for k, c in terms],
            }
            for i, j, terms in alg.table()
        ],
    }


def load_algebra(spec: str, strict: bool = True) -> SuperAlgebra:
    """``catalog:<name>`` or a path to an algebra file."""
    if spec.startswith("catalog:"):
        try:
            return catalog(spec.split(":", 1)[1])
        except KeyError as exc:
            raise InputError(str(exc.args[0])) from None
    path = Path(spec)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{spec}: {exc.strerror}") from None
    return algebra_from_json(_load_json(text, spec), spec, strict=strict)


def probes_from_json(data, alg: SuperAlgebra, source: str = "<probes>") -> list:
    if isinstance(data, dict):
        data = data.get("probes")
    if not isinstance(data, list) or not data:
        raise InputError(f"{source}: expected a non-empty list of probes")
    out = []
    for i, p in enumerate(data):
        where = f"{source}: probes[{i}]"
        if not isinstance(p, dict):
            raise InputError(f"{where}: expected a {{basis name: coefficient}} object")
        coeffs = {}
        for name, c in p.items():
            if name not in alg.names:
                raise InputError(f"{where}: unknown basis name {name!r}")
            coeffs[name] = _scalar(c, f"{where}.{name}")
        x = alg.element(coeffs)
        if not any(x):
            raise InputError(f"{where}: probe is zero")
        out.append(x)
    return out


def load_probes(path: str, alg: SuperAlgebra) -> list:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return probes_from_json(_load_json(text, path), alg, path)


def load_json_file(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return _load_json(text, path)


def element_to_json(alg: SuperAlgebra, x: Sequence) -> dict:
    return {alg.names[i]: str(c) for i, c in enumerate(x) if c}


def map_to_json(alg: SuperAlgebra, vec: Sequence) -> dict:
    """Flattened map -> {source name: {target name: coefficient}}, zero images omitted."""
    n = alg.dim
    out = {}
    for i in range(n):
        img = element_to_json(alg, vec[i * n:(i + 1) * n])
        if img:
            out[alg.names[i]] = img
    return out
