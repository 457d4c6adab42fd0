"""Command-line front end.

Exit codes: 0 success/certified, 1 violation or failed assertion,
2 inconclusive, 3 input error. Reports go to stdout as one JSON document
(``--format=text`` gives a flat human-readable rendering instead). Reports
contain no timestamps unless ``--timing`` is passed, so identical arguments
give byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from .derivations import InvalidAlgebraError, derivation_space, inner_space, verify_theorem_der
from .io import (
    InputError,
    algebra_to_json,
    element_to_json,
    load_algebra,
    load_json_file,
    load_probes,
    map_to_json,
)
from .localder import CERTIFIED, builtin_probe_maps, builtin_probes, certify
from .replay import ReplayInputError, SCHRODINGER_FACTS, facts_from_json, facts_to_json, replay_lemmas
from .superalg import CATALOG_NAMES, InconsistentBracketError, catalog, same_structure, super_schrodinger, validate

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3


def _summary(alg) -> dict:
    return {
        "name": alg.name,
        "dim": alg.dim,
        "basis": [[s, p] for s, p in zip(alg.names, alg.parities)],
    }


def _invalid(alg) -> Optional[list]:
    bad = validate(alg)
    return [v.describe(alg) for v in bad] if bad else None


def _load_valid(source: str):
    """(algebra, None) or (None, (exit code, payload))."""
    try:
        alg = load_algebra(source)
    except InconsistentBracketError as exc:
        return None, (EXIT_FAIL, {"error": str(exc)})
    except (InputError, KeyError, ValueError) as exc:
        return None, (EXIT_INPUT, {"error": str(exc)})
    bad = _invalid(alg)
    if bad:
        return None, (EXIT_FAIL, {"error": "not a Lie superalgebra", "violations": bad})
    return alg, None


def cmd_validate(args) -> tuple:
    try:
        alg = load_algebra(args.input, strict=False)
    except (InputError, KeyError, ValueError) as exc:
        return EXIT_INPUT, {"error": str(exc)}
    violations = validate(alg)
    payload = {
        "algebra": _summary(alg),
        "valid": not violations,
        "violation_count": len(violations),
        "violations": [
            {"kind": v.kind, "basis": [alg.names[i] for i in v.triple], "residual": element_to_json(alg, v.residual)}
            for v in violations
        ],
    }
    return (EXIT_FAIL if violations else EXIT_OK), payload


def cmd_derivations(args) -> tuple:
    alg, err = _load_valid(args.input)
    if err:
        return err
    der = derivation_space(alg, check=False)
    inner = inner_space(alg)
    payload = {
        "algebra": _summary(alg),
        "dims": {
            "even": der.even.dim,
            "odd": der.odd.dim,
            "total": der.total.dim,
            "inner": inner.dim,
            "outer_quotient": der.total.dim - inner.dim,
        },
    }
    degrees = {"0": (0,), "1": (1,), "all": (0, 1)}[args.degree]
    names = {0: "even", 1: "odd"}
    payload["bases"] = {names[d]: [map_to_json(alg, v) for v in der.part(d).basis] for d in degrees}
    code = EXIT_OK
    if same_structure(alg, super_schrodinger()):
        rep = verify_theorem_der(alg, der)
        payload["theorem_check"] = {
            "delta_is_derivation": rep.delta_is_derivation,
            "delta_not_inner": rep.delta_not_inner,
            "inner_plus_delta_equals_der": rep.inner_plus_delta_is_der,
            "dim_der_is_dim_inner_plus_one": rep.dim_formula,
        }
        if not rep.ok:
            code = EXIT_FAIL
    return code, payload


def cmd_local_check(args) -> tuple:
    alg, err = _load_valid(args.input)
    if err:
        return err
    if args.probes == "builtin":
        probes = builtin_probes(alg)
    else:
        try:
            probes = load_probes(args.probes, alg)
        except InputError as exc:
            return EXIT_INPUT, {"error": str(exc)}
    der = derivation_space(alg, check=False)
    report = certify(alg, probes, der, refute_trials=args.refute_trials, seed=args.seed)
    payload = {
        "algebra": _summary(alg),
        "probes": [element_to_json(alg, p) for p in report.probes],
        "dim_der": report.dim_der,
        "dim_closure": report.dim_closure,
        "verdict": report.verdict,
        "note": report.note,
    }
    if report.gap:
        payload["gap_basis"] = [map_to_json(alg, v) for v in report.gap]
    if report.refutations:
        payload["refutations"] = [
            {"gap_index": g, "witness": None}
            if r is None
            else {"gap_index": g, "witness": {"trial": r.trial, "x": element_to_json(alg, r.element), "value": element_to_json(alg, r.value)}}
            for g, r in report.refutations
        ]
        payload["refute"] = {"trials": args.refute_trials, "seed": args.seed}
    # Sanity: the closure can never be smaller than Der.
    if report.dim_closure < report.dim_der:
        return EXIT_FAIL, payload
    return (EXIT_OK if report.verdict == CERTIFIED else EXIT_INCONCLUSIVE), payload


def cmd_replay(args) -> tuple:
    try:
        alg = load_algebra(args.input)
    except (InputError, KeyError, ValueError) as exc:
        return EXIT_INPUT, {"error": str(exc)}
    if not same_structure(alg, super_schrodinger()):
        return EXIT_INPUT, {"error": "replay is defined for catalog:super-schrodinger only"}
    facts = SCHRODINGER_FACTS
    if args.facts:
        try:
            facts = facts_from_json(load_json_file(args.facts))
        except (InputError, ReplayInputError) as exc:
            return EXIT_INPUT, {"error": str(exc)}
    try:
        tr = replay_lemmas(alg, facts)
    except (ReplayInputError, KeyError) as exc:
        return EXIT_INPUT, {"error": str(exc)}
    payload = {
        "algebra": _summary(alg),
        "steps": [
            {
                "id": s.id,
                "title": s.title,
                "probes_added": s.probes_added,
                "dim": s.dim,
                "passed": s.passed,
                "assertions": [
                    {"label": a.label, "passed": a.passed}
                    if a.passed
                    else {"label": a.label, "passed": False, "failing_basis_index": a.failing_basis_index, "value": str(a.value)}
                    for a in s.assertions
                ],
            }
            for s in tr.steps
        ],
        "final": {"dim": tr.final_dim, "equals_span_ad_h_ad_G": tr.final_is_inner_h_G},
        "reconstruction": {
            "formula": tr.formula,
            "closure_basis": [
                {
                    "D_h+z": {"inner": element_to_json(alg, r.d_inner), "delta": str(r.d_outer)},
                    "b_he": str(r.b_he),
                    "b_GE": str(r.b_GE),
                    "ok": r.ok,
                }
                for r in tr.reconstructions
            ],
        },
        "passed": tr.passed,
    }
    return (EXIT_OK if tr.passed else EXIT_FAIL), payload


def cmd_catalog(args) -> tuple:
    return EXIT_OK, {"algebras": [{**_summary(catalog(n)), "definition": algebra_to_json(catalog(n))} for n in CATALOG_NAMES]}


def cmd_probes_export(args) -> tuple:
    if args.facts:
        return EXIT_OK, {"facts": facts_to_json()}
    return EXIT_OK, {"probes": builtin_probe_maps()}


def _text(obj, prefix: str = "") -> list:
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            lines.extend(_text(v, f"{prefix}{k}." if isinstance(v, (dict, list)) and v else f"{prefix}{k}"))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            lines.extend(_text(v, f"{prefix}{i}." if isinstance(v, (dict, list)) and v else f"{prefix}{i}"))
    else:
        lines.append(f"{prefix.rstrip('.')}: {json.dumps(obj, ensure_ascii=False)}")
    return lines


def render(report: dict, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(_text(report)) + "\n"
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superder",
        description="Exact super-derivations and local super-derivations of Lie superalgebras.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check grading, graded skew-symmetry and graded Jacobi")
    p.add_argument("input", help="catalog:<name> or an algebra JSON file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("derivations", parents=[common], help="compute Der, IDer and their dimensions")
    p.add_argument("input")
    p.add_argument("--degree", choices=("0", "1", "all"), default="all")
    p.set_defaults(func=cmd_derivations)

    p = sub.add_parser("local-check", parents=[common], help="certify LocDer = Der by probe closure")
    p.add_argument("input")
    p.add_argument("--probes", default="builtin", help="'builtin' or a probe JSON file")
    p.add_argument("--refute-trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_local_check)

    p = sub.add_parser("replay", parents=[common], help="replay the step-by-step argument for super-schrodinger")
    p.add_argument("input")
    p.add_argument("--facts", help="lemma-fact JSON file (see 'probes export --facts')")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("catalog", parents=[common], help="list built-in algebras")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("probes", help="probe-set utilities")
    psub = p.add_subparsers(dest="probes_command", required=True)
    pe = psub.add_parser("export", parents=[common], help="print the built-in probe set")
    pe.add_argument("--facts", action="store_true", help="print the replay's lemma facts instead")
    pe.set_defaults(func=cmd_probes_export)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> tuple:
    """Execute a command; returns (exit code, rendered report)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        code, payload = args.func(args)
    except InvalidAlgebraError as exc:
        code, payload = EXIT_FAIL, {"error": str(exc)}
    report = {"command": argv, "exit_code": code, "result": payload}
    if args.timing:
        report["seconds"] = round(time.perf_counter() - start, 3)
    return code, render(report, args.format)


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
