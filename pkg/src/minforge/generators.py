"""Programmatic construction of standard MIN circuits.

Three families: the baseline Omega network (unique-path), replicated parallel
planes behind fresh terminals (k node-disjoint routes), and an Omega with one
extra leading switch stage (two routes per terminal pair). All generators are
pure and lay components on a fixed stage grid so the same input always yields
a byte-identical saved document.
"""

from __future__ import annotations

from .errors import InvalidCircuit, InvalidSize
from .model import STANDARD_KINDS, Circuit, Component, Wire, check_circuit

COLUMN_PITCH = 160
ROW_PITCH = 100
GRID_ORIGIN = (100, 100)
TERMINAL_SIZE = (40, 40)
SWITCH_SIZE = (40, 60)


def source_ids(circuit: Circuit) -> list[int]:
    return [c.id for c in circuit.components if c.kind.name == "source_terminal"]


def dest_ids(circuit: Circuit) -> list[int]:
    return [c.id for c in circuit.components if c.kind.name == "dest_terminal"]


def _check_size(n_terminals: int) -> int:
    if n_terminals < 4 or n_terminals & (n_terminals - 1):
        raise InvalidSize(f"terminal count must be a power of two >= 4, got {n_terminals}")
    return n_terminals.bit_length() - 1


def _rotate_left(value: int, bits: int) -> int:
    return ((value << 1) | (value >> (bits - 1))) & ((1 << bits) - 1)


def _build_shuffle_min(n: int, n_switch_stages: int, name: str) -> Circuit:
    """n terminals, n_switch_stages columns of n/2 2x2 switches, shuffle links
    ahead of each switch column, identity links into the destinations.

    Input position j of a switch column receives from output position
    rotate_left(j) of the previous column; positions 2i and 2i+1 belong to
    switch i (ports 0/1 in on the left, 2/3 out on the right).
    """
    bits = n.bit_length() - 1
    ox, oy = GRID_ORIGIN
    components: list[Component] = []
    for j in range(n):
        components.append(Component(
            len(components), STANDARD_KINDS["source_terminal"],
            (ox, oy + j * ROW_PITCH), *TERMINAL_SIZE,
        ))
    switch_base: list[int] = []
    for stage in range(n_switch_stages):
        switch_base.append(len(components))
        for i in range(n // 2):
            components.append(Component(
                len(components), STANDARD_KINDS["switch_2x2"],
                (ox + (stage + 1) * COLUMN_PITCH, oy + ROW_PITCH // 2 + i * 2 * ROW_PITCH),
                *SWITCH_SIZE,
            ))
    dest_base = len(components)
    for j in range(n):
        components.append(Component(
            len(components), STANDARD_KINDS["dest_terminal"],
            (ox + (n_switch_stages + 1) * COLUMN_PITCH, oy + j * ROW_PITCH), *TERMINAL_SIZE,
        ))

    wires: list[Wire] = []
    for stage in range(n_switch_stages):
        for j in range(n):
            src_pos = _rotate_left(j, bits)
            if stage == 0:
                a_comp, a_port = src_pos, 0
            else:
                a_comp, a_port = switch_base[stage - 1] + src_pos // 2, 2 + src_pos % 2
            wires.append(Wire(len(wires), a_comp, a_port, switch_base[stage] + j // 2, j % 2))
    for p in range(n):
        wires.append(Wire(len(wires), switch_base[-1] + p // 2, 2 + p % 2, dest_base + p, 0))
    return Circuit(tuple(components), tuple(wires), name)


def generate_omega(n_terminals: int) -> Circuit:
    """Baseline Omega: log2(n) shuffle-wired stages, one path per pair."""
    bits = _check_size(n_terminals)
    return _build_shuffle_min(n_terminals, bits, f"omega{n_terminals}")


def generate_extra_stage(n_terminals: int) -> Circuit:
    """Omega plus one leading switch stage; the extra switch's two outputs
    reach different first-stage switches, giving every pair two routes."""
    bits = _check_size(n_terminals)
    return _build_shuffle_min(n_terminals, bits + 1, f"extra_stage{n_terminals}")


def generate_replicated(base: Circuit, copies: int) -> Circuit:
    """`copies` parallel planes of `base` behind fresh shared terminals.

    Each plane's own terminals become switch_1x2 (entry) / switch_2x1 (exit)
    components, and every fresh terminal fans one wire into each plane, so the
    per-plane routes stay node-disjoint end to end.
    """
    if copies < 2:
        raise InvalidCircuit(f"copies must be >= 2, got {copies}")
    violations = check_circuit(base)
    if violations:
        raise InvalidCircuit("base circuit is invalid", violations=tuple(violations))
    base_sources = source_ids(base)
    base_dests = dest_ids(base)
    if not base_sources or not base_dests:
        raise InvalidCircuit("base circuit has no identifiable source/dest terminals")

    xs = [c.centre[0] for c in base.components]
    ys = [c.centre[1] for c in base.components]
    plane_pitch = (max(ys) - min(ys)) + 2 * ROW_PITCH
    n_base = base.no_cmp

    components: list[Component] = []
    for i, src in enumerate(base_sources):
        cy = base.components[src].centre[1] + (copies - 1) * plane_pitch // 2
        components.append(Component(
            len(components), STANDARD_KINDS["source_terminal"],
            (min(xs), cy), *TERMINAL_SIZE,
        ))

    def plane_id(plane: int, comp_id: int) -> int:
        return len(base_sources) + plane * n_base + comp_id

    for plane in range(copies):
        for comp in base.components:
            if comp.kind.name == "source_terminal":
                kind = STANDARD_KINDS["switch_1x2"]
            elif comp.kind.name == "dest_terminal":
                kind = STANDARD_KINDS["switch_2x1"]
            else:
                kind = comp.kind
            components.append(Component(
                len(components), kind,
                (comp.centre[0] + COLUMN_PITCH, comp.centre[1] + plane * plane_pitch),
                comp.width, comp.height,
            ))

    dest_base = len(components)
    for j, dst in enumerate(base_dests):
        cy = base.components[dst].centre[1] + (copies - 1) * plane_pitch // 2
        components.append(Component(
            len(components), STANDARD_KINDS["dest_terminal"],
            (max(xs) + 2 * COLUMN_PITCH, cy), *TERMINAL_SIZE,
        ))

    source_set = set(base_sources)
    dest_set = set(base_dests)
    wires: list[Wire] = []
    for plane in range(copies):
        for w in base.wires:
            # Outgoing (a-side) endpoints at replaced terminals move to the
            # switch's right-side out port; incoming ones keep port 0 (left).
            a_port = w.a_port
            if w.a_port == 0 and w.a_comp in source_set:
                a_port = 1
            elif w.a_port == 0 and w.a_comp in dest_set:
                a_port = 2
            b_port = w.b_port
            wires.append(Wire(
                len(wires), plane_id(plane, w.a_comp), a_port, plane_id(plane, w.b_comp), b_port,
                color=w.color, thickness=w.thickness, bent=w.bent,
            ))
    for i, src in enumerate(base_sources):
        for plane in range(copies):
            wires.append(Wire(len(wires), i, 0, plane_id(plane, src), 0))
    for j, dst in enumerate(base_dests):
        for plane in range(copies):
            wires.append(Wire(len(wires), plane_id(plane, dst), 2, dest_base + j, 0))

    return Circuit(tuple(components), tuple(wires), f"replicated{copies}_{base.name}")
