"""Batch command-line entry point.

Exit codes: 0 ok, 1 I/O or parse failure, 2 structural violation, 3 path/fault
validation failure, 4 no path found.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import generators, ioformat, render, sim
from .errors import (
    InvalidCircuit,
    InvalidSize,
    MinError,
    NoPath,
    ParseError,
    SameEndpoint,
    SinkError,
    UnknownComponent,
    UnsupportedVersion,
    ValidationFailed,
)
from .model import check_circuit
from .paths import FaultSet, PathSpec, max_disjoint_paths, validate

EXIT_OK = 0
EXIT_IO = 1
EXIT_STRUCTURAL = 2
EXIT_VALIDATION = 3
EXIT_NO_PATH = 4


def _machine(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _parse_parity(value: str) -> str:
    return value.replace("-", "_")


def cmd_gen(args) -> int:
    if args.family == "omega":
        circuit = generators.generate_omega(args.size)
    elif args.family == "extra-stage":
        circuit = generators.generate_extra_stage(args.size)
    else:
        circuit = generators.generate_replicated(generators.generate_omega(args.size), args.copies)
    ioformat.save_circuit(ioformat.CircuitDocument(circuit), args.output)
    print(f"wrote {args.output}: {circuit.no_cmp} components, {circuit.no_line} wires")
    return EXIT_OK


def cmd_check(args) -> int:
    doc = _load_unchecked(args.file)
    violations = check_circuit(doc.circuit)
    for v in violations:
        print(v.message)
    if violations:
        return EXIT_STRUCTURAL
    print("ok")
    return EXIT_OK


def _load_unchecked(path: str) -> ioformat.CircuitDocument:
    # `min check` must be able to inspect invalid circuits, so bypass the
    # loader's check_circuit gate but keep its parsing.
    payload = ioformat._parse_json(ioformat._read(path))
    return ioformat.circuit_from_payload(payload, check=False)


def cmd_validate(args) -> int:
    doc = ioformat.load_circuit(args.file)
    path = PathSpec.parse(args.path)
    faults = FaultSet.parse(args.faults)
    report = validate(doc.circuit, path, faults)
    for finding in report.findings:
        print(f"{finding.severity}: {finding.message}")
    if report.is_valid:
        if not report.findings:
            print("valid")
        return EXIT_OK
    for finding in report.errors:
        print(finding.message, file=sys.stderr)
    return EXIT_VALIDATION


def cmd_paths(args) -> int:
    doc = ioformat.load_circuit(args.file)
    result = max_disjoint_paths(doc.circuit, args.src, args.dst, args.k)
    if args.format == "machine":
        sys.stdout.write(_machine({
            "source": result.source,
            "dest": result.dest,
            "k": result.disjointness,
            "paths": [list(p) for p in result.paths],
        }))
    else:
        print(f"k={result.disjointness}")
        for p in result.paths:
            print("path: " + " ".join(str(c) for c in p))
    return EXIT_OK


def cmd_simulate(args) -> int:
    doc = ioformat.load_circuit(args.file)
    path = PathSpec.parse(args.path)
    faults = FaultSet.parse(args.faults)
    config = sim.SimConfig(duration_ticks=args.ticks, drop_parity=_parse_parity(args.parity))
    report = sim.run(doc.circuit, path, faults, config)
    print(f"delivered={report.delivered} dropped={report.dropped}")
    if args.droplog:
        sim.export_drop_log(report, args.droplog)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(_machine(report.to_payload()))
    return EXIT_OK


def cmd_render(args) -> int:
    doc = ioformat.load_circuit(args.file)
    if args.path is not None:
        path = PathSpec.parse(args.path)
        faults = FaultSet.parse(args.faults)
        plan = render.plan_simulation_frame(
            doc.circuit, path, faults, args.state, bug_compat=args.bug_compat
        )
    else:
        plan = render.plan_circuit(doc.circuit, bug_compat=args.bug_compat)
    render.emit_svg(plan, args.output)
    print(f"wrote {args.output}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    initial = ioformat.load_circuit(args.circuit) if args.circuit else None
    app = create_app(initial)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="min", description="MIN workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a standard MIN circuit")
    p.add_argument("family", choices=["omega", "replicated", "extra-stage"])
    p.add_argument("--size", type=int, required=True, help="terminal count (power of two >= 4)")
    p.add_argument("--copies", type=int, default=2, help="planes for the replicated family")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="structural validation of a circuit file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("validate", help="validate path/fault input against a circuit")
    p.add_argument("file")
    p.add_argument("--path", required=True)
    p.add_argument("--faults", default="")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("paths", help="search node-disjoint paths")
    p.add_argument("file")
    p.add_argument("--src", type=int, required=True)
    p.add_argument("--dst", type=int, required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--format", choices=["text", "machine"], default="text")
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("simulate", help="run the packet-drop simulation")
    p.add_argument("file")
    p.add_argument("--path", required=True)
    p.add_argument("--faults", default="")
    p.add_argument("--ticks", type=int, default=150)
    p.add_argument("--parity", choices=["drop-first", "deliver-first"], default="drop-first")
    p.add_argument("--droplog")
    p.add_argument("--report")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("render", help="render a circuit or simulation frame to SVG")
    p.add_argument("file")
    p.add_argument("--path")
    p.add_argument("--faults", default="")
    p.add_argument("--state", choices=["green", "red"], default="green")
    p.add_argument("--bug-compat", action="store_true", help="reproduce the original bent-wire offset quirk")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("serve", help="start the local HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=int(os.environ.get("MINFORGE_PORT", "7420")))
    p.add_argument("--circuit", help="circuit file to load as the current document")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnsupportedVersion, SinkError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InvalidCircuit, InvalidSize) as exc:
        print(f"error: {exc}", file=sys.stderr)
        for violation in getattr(exc, "violations", ()):
            print(violation.message, file=sys.stderr)
        return EXIT_STRUCTURAL
    except ValidationFailed as exc:
        for finding in exc.report.errors:
            print(finding.message, file=sys.stderr)
        return EXIT_VALIDATION
    except (UnknownComponent, SameEndpoint) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NoPath as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_PATH
    except MinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
