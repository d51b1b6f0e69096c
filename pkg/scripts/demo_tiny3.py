"""End-to-end demo on the three-component fixture: save the circuit, run the
packet-drop simulation, export the drop log, and render both frame states.

Usage: python scripts/demo_tiny3.py [outdir]
"""

import sys
from pathlib import Path

from minforge.ioformat import CircuitDocument, save_circuit
from minforge.model import Circuit, Component, STANDARD_KINDS, Wire
from minforge.paths import FaultSet, PathSpec
from minforge.render import emit_svg, plan_simulation_frame
from minforge.sim import SimConfig, export_drop_log, run


def tiny3() -> Circuit:
    return Circuit(
        (
            Component(0, STANDARD_KINDS["source_terminal"], (100, 100), 40, 40),
            Component(1, STANDARD_KINDS["switch_2x2"], (300, 100), 40, 60),
            Component(2, STANDARD_KINDS["dest_terminal"], (500, 100), 40, 40),
        ),
        (Wire(0, 0, 0, 1, 0), Wire(1, 1, 2, 2, 0)),
        "tiny3",
    )


def main() -> None:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("out")
    outdir.mkdir(parents=True, exist_ok=True)
    circuit = tiny3()
    save_circuit(CircuitDocument(circuit), outdir / "tiny3.mincir")

    path = PathSpec.parse("01")
    faults = FaultSet.parse("1")
    report = run(circuit, path, faults, SimConfig(duration_ticks=10))
    print(f"delivered={report.delivered} dropped={report.dropped}")
    for event in report.events:
        where = f" at component {event.drop_component}" if event.outcome == "dropped" else ""
        print(f"  tick {event.tick}: {event.outcome}{where}")

    export_drop_log(report, outdir / "tiny3.droplog")
    for state in ("green", "red"):
        emit_svg(plan_simulation_frame(circuit, path, faults, state), outdir / f"tiny3_{state}.svg")
    print(f"artifacts in {outdir}/")


if __name__ == "__main__":
    main()
