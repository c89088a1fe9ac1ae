"""Command line entry point: ``skewmorita reduce|transport|verify|selftest``.

Exit codes: 0 on success, 1 when an internal consistency check fails
(round trip, fast/slow mismatch, degenerate pairing), 2 on invalid input.
Validation errors are printed to stderr as a JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .groups import ActionValidationError, GroupValidationError
from .instance import InstanceValidationError, load_instance_file
from .morita import InternalConsistencyError, build_qg
from .reduce import QGPathComb, transport, transport_potential, verify_roundtrip, workers_from_env
from .reps import IrrepValidationError
from .skew import NotProjectedError, SkewElement, e_tilde, potential_element

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    def __init__(self, details: dict):
        super().__init__(details.get("message", ""))
        self.details = details


def _load(path: str):
    try:
        inst = load_instance_file(path)
    except InstanceValidationError as exc:
        raise InputError(exc.details) from exc
    except (GroupValidationError, ActionValidationError, IrrepValidationError) as exc:
        raise InputError({"error": type(exc).__name__, "message": str(exc)}) from exc
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError({"error": "file", "message": str(exc)}) from exc
    return inst


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError({"error": "file", "message": str(exc)}) from exc


def _element(inst, args) -> SkewElement:
    if args.unit:
        return e_tilde(inst)
    if args.element:
        try:
            theta = SkewElement.from_json(inst.space, _read_json(args.element))
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError({"error": "element", "message": str(exc)}) from exc
        if args.project:
            et = e_tilde(inst)
            theta = et * theta * et
        return theta
    if inst.potential is None:
        raise InputError({"error": "element", "message": "instance has no potential; pass --element or --unit"})
    et = e_tilde(inst)
    return et * potential_element(inst) * et


def cmd_reduce(args) -> int:
    inst = _load(args.instance)
    qg = build_qg(inst)
    if args.json:
        print(qg.dumps())
        return EXIT_OK
    if args.dot:
        print(qg.to_dot())
        return EXIT_OK
    print(f"{len(qg.vertices)} vertices, {len(qg.arrows)} arrows")
    for k in range(len(qg.vertices)):
        print(f"  vertex ({qg.vertex_label(k)})")
    for (s, t), c in sorted(qg.multiplicities().items()):
        print(f"  ({qg.vertex_label(s)}) -> ({qg.vertex_label(t)}): {c}")
    return EXIT_OK


def cmd_transport(args) -> int:
    inst = _load(args.instance)
    qg = build_qg(inst)
    theta = _element(inst, args)
    try:
        if args.element or args.unit:
            comb = transport(theta, qg, method=args.method, workers=args.workers)
        else:
            comb = transport_potential(qg, method=args.method, workers=args.workers)
    except NotProjectedError as exc:
        raise InputError({"error": "not_projected", "message": str(exc)}) from exc
    except ValueError as exc:
        raise InputError({"error": "method", "message": str(exc)}) from exc
    if args.json:
        print(json.dumps(comb.to_json(), indent=2, sort_keys=True))
    else:
        print(comb.render())
    if not args.no_verify:
        res = verify_roundtrip(theta, comb, qg)
        if not res:
            print(res.report(qg), file=sys.stderr)
            return EXIT_INTERNAL
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load(args.instance)
    qg = build_qg(inst)
    theta = _element(inst, args)
    try:
        comb = QGPathComb.from_json(qg, _read_json(args.comb))
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError({"error": "combination", "message": str(exc)}) from exc
    res = verify_roundtrip(theta, comb, qg)
    print(res.report(qg))
    return EXIT_OK if res else EXIT_INTERNAL


def cmd_selftest(args) -> int:
    from .selftest import run_selftest
    results = run_selftest(args.fixtures, args.golden, seed=args.seed, trials=args.trials)
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.ok for r in results) else EXIT_INTERNAL


def _element_options(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--element", help="JSON file with a skew element (default: the instance potential)")
    src.add_argument("--unit", action="store_true", help="use the idempotent e~ itself")
    p.add_argument("--project", action="store_true", help="sandwich the element with e~ first")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skewmorita",
                                     description="Morita reduction of skew group algebras of quivers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="build the reduced quiver")
    p.add_argument("instance")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true", help="print Graphviz DOT")
    fmt.add_argument("--json", action="store_true", help="print JSON with intertwiners")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("transport", help="express an element as a combination of reduced-quiver paths")
    p.add_argument("instance")
    _element_options(p)
    m = p.add_mutually_exclusive_group()
    m.add_argument("--fast", dest="method", action="store_const", const="fast")
    m.add_argument("--slow", dest="method", action="store_const", const="slow")
    m.add_argument("--both", dest="method", action="store_const", const="both")
    p.set_defaults(method="auto")
    p.add_argument("--no-verify", action="store_true", help="skip the round-trip check")
    p.add_argument("--json", action="store_true")
    p.add_argument("--workers", type=int, default=None,
                   help="worker threads (default: SKEWMORITA_WORKERS or 1)")
    p.set_defaults(func=cmd_transport)

    p = sub.add_parser("verify", help="check that a path combination maps back to an element")
    p.add_argument("instance")
    p.add_argument("comb", help="JSON file as printed by 'transport --json'")
    _element_options(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", help="run the invariant suites on the bundled fixtures")
    p.add_argument("--fixtures", type=Path, default=None, help="directory of instance JSON files")
    p.add_argument("--golden", type=Path, default=None, help="directory of golden files")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "workers", None) is None and hasattr(args, "workers"):
            args.workers = workers_from_env()
        return args.func(args)
    except InputError as exc:
        print(json.dumps(exc.details, sort_keys=True), file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        if "SKEWMORITA_WORKERS" in str(exc):
            print(json.dumps({"error": "environment", "message": str(exc)}), file=sys.stderr)
            return EXIT_INPUT
        raise
    except InternalConsistencyError as exc:
        print(json.dumps({"error": "internal", "message": str(exc)}), file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
