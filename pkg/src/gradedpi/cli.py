"""Command-line front end: ``gradedpi VERB FILE NAMES... [options]``.

Exit status is 0 for a definitive answer, 2 for an inconclusive pipeline
verdict and 1 for errors (bad input, resource refusals).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Callable

from . import __version__
from .algebra import neutral_component, verify_associativity, verify_grading
from .groups import GroupHom
from .identities import (
    DEFAULT_MAX_DEGREE,
    ResourceLimitError,
    StructuralAssumptionError,
    capelli_rank,
    capelli_rank_witness,
    is_identity,
    recover_division_support,
    same_identities_upto,
)
from .isomorphism import elementary_tensor_iso, pipeline
from .polynomials import GradedPolynomial, GradedVariable, UnsupportedError
from .specfile import SpecError, SpecFile, parse_spec
from .ut import decompose_neutral

SCHEMA_VERSION = 1
EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


class UsageError(Exception):
    pass


def _pushforward(poly: GradedPolynomial, hom: GroupHom) -> GradedPolynomial:
    vs = [GradedVariable(v.name, None if v.degree is None else hom(v.degree)) for v in poly.variables]
    return GradedPolynomial(vs, poly.terms)


def _coarsening_hom(spec: SpecFile, name: str) -> GroupHom | None:
    """Composite hom from the file group to the grading group of ``name``, if any."""
    from .specfile import BinaryDecl, CoarsenDecl

    d = spec.declaration(name)
    if isinstance(d, CoarsenDecl):
        inner = _coarsening_hom(spec, d.source)
        h = spec.hom(d.hom)
        return h if inner is None else inner.then(h)
    if isinstance(d, BinaryDecl):
        return _coarsening_hom(spec, d.left) or _coarsening_hom(spec, d.right)
    return None


def _need(args, n: int, what: str):
    if len(args.names) != n:
        raise UsageError(f"{args.verb} expects {what}")


def cmd_check_identity(spec: SpecFile, args) -> tuple[dict, int]:
    _need(args, 2, "ALGEBRA POLY")
    alg_name, poly_name = args.names
    alg = spec.algebra(alg_name)
    poly = spec.polynomial(poly_name)
    if alg.group != spec.group:
        hom = _coarsening_hom(spec, alg_name)
        if hom is None or hom.target != alg.group:
            raise SpecError(f"{poly_name} is graded by {spec.group}, {alg_name} by {alg.group}")
        poly = _pushforward(poly, hom)
    res = is_identity(poly, alg, workers=args.threads)
    return {"algebra": alg_name, "polynomial": poly_name, "identity": res.to_json()}, EXIT_OK


def cmd_capelli_rank(spec: SpecFile, args) -> tuple[dict, int]:
    _need(args, 1, "ALGEBRA")
    alg = spec.algebra(args.names[0])
    t, witness = capelli_rank_witness(alg, workers=args.threads)
    te = capelli_rank(neutral_component(alg), workers=args.threads)
    return {
        "algebra": args.names[0],
        "rank": t,
        "non_identity_witness": None if witness is None else {"capelli": t - 1, **witness.to_json()},
        "neutral_rank": te,
    }, EXIT_OK


def cmd_support(spec: SpecFile, args) -> tuple[dict, int]:
    _need(args, 1, "ALGEBRA")
    name = args.names[0]
    alg = spec.algebra(name)
    try:
        sub = recover_division_support(alg, workers=args.threads)
    except StructuralAssumptionError as exc:
        return {"algebra": name, "out_of_model": str(exc)}, EXIT_INCONCLUSIVE
    out = {"algebra": name, "support": [g.to_json() for g in sub.elements()], "order": sub.order}
    try:
        out["matches_declared"] = sub == spec.model(name).division.support()
    except SpecError:
        pass
    return out, EXIT_OK


def cmd_id_compare(spec: SpecFile, args) -> tuple[dict, int]:
    _need(args, 2, "ALGEBRA ALGEBRA")
    a, b = (spec.algebra(n) for n in args.names)
    cmp = same_identities_upto(a, b, args.max_degree, workers=args.threads)
    return {"algebras": list(args.names), "max_degree": args.max_degree, "comparison": cmp.to_json()}, EXIT_OK


def cmd_iso(spec: SpecFile, args) -> tuple[dict, int]:
    _need(args, 2, "MODEL MODEL")
    m, m2 = (spec.model(n) for n in args.names)
    w = elementary_tensor_iso(m.spec, m.division, m2.spec, m2.division)
    out = {"algebras": list(args.names), "isomorphic": w is not None}
    if w is not None:
        out["witness"] = w.to_json()
        out["witness_verified"] = w.verify(m.spec, m2.spec, m.division.support())
    return out, EXIT_OK


def cmd_pipeline(spec: SpecFile, args) -> tuple[dict, int]:
    _need(args, 2, "MODEL MODEL")
    m, m2 = (spec.model(n) for n in args.names)
    v = pipeline(m, m2, args.max_degree, workers=args.threads, verify_pi_degree=args.verify_pi_degree)
    code = EXIT_OK if v.definitive else EXIT_INCONCLUSIVE
    return {"algebras": list(args.names), "max_degree": args.max_degree, "verdict": v.to_json()}, code


def cmd_decompose_neutral(spec: SpecFile, args) -> tuple[dict, int]:
    _need(args, 1, "UT-ALGEBRA")
    ideals = decompose_neutral(spec.elementary(args.names[0]))
    return {
        "algebra": args.names[0],
        "ideals": [
            {
                "value": i.value.to_json(),
                "rows": [r + 1 for r in i.rows],
                "shape": list(i.shape),
                "dimension": len(i.basis),
                "basis": list(i.labels),
            }
            for i in ideals
        ],
    }, EXIT_OK


def cmd_verify_grading(spec: SpecFile, args) -> tuple[dict, int]:
    _need(args, 1, "ALGEBRA")
    alg = spec.algebra(args.names[0])
    bad_g, bad_a = verify_grading(alg), verify_associativity(alg)
    return {
        "algebra": args.names[0],
        "group": str(alg.group),
        "dimension": alg.dim,
        "support": [g.to_json() for g in alg.support],
        "grading_ok": not bad_g,
        "associative": not bad_a,
        "violations": [list(t) for t in (bad_g + bad_a)[:10]],
    }, EXIT_OK


COMMANDS: dict[str, Callable] = {
    "check-identity": cmd_check_identity,
    "capelli-rank": cmd_capelli_rank,
    "support": cmd_support,
    "id-compare": cmd_id_compare,
    "iso": cmd_iso,
    "pipeline": cmd_pipeline,
    "decompose-neutral": cmd_decompose_neutral,
    "verify-grading": cmd_verify_grading,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gradedpi", description="Graded polynomial identities of block-triangular algebras.")
    p.add_argument("--version", action="version", version=f"gradedpi {__version__}")
    p.add_argument("verb", choices=sorted(COMMANDS))
    p.add_argument("file", help="spec file ('-' for stdin)")
    p.add_argument("names", nargs="*", help="algebra and polynomial names from the file")
    p.add_argument("--max-degree", type=int, default=3, help=f"degree bound for identity comparison (<= {DEFAULT_MAX_DEGREE})")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker processes")
    p.add_argument("--json", action="store_true", help="print the JSON report")
    p.add_argument("--verify-pi-degree", action="store_true", help="cross-check B against M_t up to degree 4")
    p.add_argument("--timing", action="store_true", help="add wall-clock timings to the report")
    return p


def _has_dict(v) -> bool:
    return isinstance(v, dict) or (isinstance(v, list) and any(_has_dict(x) for x in v))


def _render_text(report: dict) -> str:
    lines = []

    def walk(obj, indent):
        pad = "  " * indent
        items = obj.items() if isinstance(obj, dict) else ((None, x) for x in obj)
        for k, v in items:
            label = f"{pad}{k}:" if k is not None else f"{pad}-"
            if _has_dict(v) and v:
                lines.append(label)
                walk(v, indent + 1)
            else:
                lines.append(f"{label} {json.dumps(v)}")

    walk(report, 0)
    return "\n".join(lines)


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv:
        parser.print_usage(sys.stderr)
        return EXIT_ERROR
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    started = time.perf_counter()
    try:
        if args.max_degree > DEFAULT_MAX_DEGREE or args.max_degree < 1:
            raise ResourceLimitError(f"--max-degree must lie in 1..{DEFAULT_MAX_DEGREE}")
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
        spec = parse_spec(text)
        result, code = COMMANDS[args.verb](spec, args)
    except (SpecError, UsageError, ResourceLimitError, UnsupportedError, KeyError, OSError, ValueError) as exc:
        msg = f"undefined name {exc.args[0]}" if isinstance(exc, KeyError) else str(exc)
        print(f"gradedpi: error: {msg}", file=sys.stderr)
        return EXIT_ERROR
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "gradedpi", "version": __version__},
        "command": {"verb": args.verb, "names": list(args.names), "max_degree": args.max_degree},
        "result": result,
    }
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - started, 6), "threads": args.threads}
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2), file=stdout)
    else:
        print(_render_text(report), file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
