"""Generate the three topology families, save circuit documents and SVG
renderings, and tabulate the disjoint-path count of each family.

Usage: python scripts/gen_gallery.py [outdir]
"""

import sys
from pathlib import Path

from minforge.generators import dest_ids, generate_extra_stage, generate_omega, generate_replicated, source_ids
from minforge.ioformat import CircuitDocument, save_circuit
from minforge.paths import max_disjoint_paths
from minforge.render import emit_svg, plan_circuit


def main() -> None:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("out")
    outdir.mkdir(parents=True, exist_ok=True)

    gallery = {
        "omega8": generate_omega(8),
        "omega16": generate_omega(16),
        "extra_stage8": generate_extra_stage(8),
        "replicated2_omega4": generate_replicated(generate_omega(4), 2),
        "replicated3_omega4": generate_replicated(generate_omega(4), 3),
    }
    print(f"{'circuit':<22} {'comps':>5} {'wires':>5} {'k(first pair)':>13}")
    for name, circuit in gallery.items():
        save_circuit(CircuitDocument(circuit), outdir / f"{name}.mincir")
        emit_svg(plan_circuit(circuit), outdir / f"{name}.svg")
        src, dst = source_ids(circuit)[0], dest_ids(circuit)[0]
        k = max_disjoint_paths(circuit, src, dst, 4).disjointness
        print(f"{name:<22} {circuit.no_cmp:>5} {circuit.no_line:>5} {k:>13}")
    print(f"artifacts in {outdir}/")


if __name__ == "__main__":
    main()
