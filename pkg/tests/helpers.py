"""Independent oracles and random instance builders shared by the suite.

Everything here works from first principles on the wire lists (directed
a->b), deliberately avoiding the flow-based engine it is used to check.
"""

from __future__ import annotations

import random

from minforge.model import Circuit, Component, STANDARD_KINDS, Wire

IN_PORTS = {
    "source_terminal": [],
    "dest_terminal": [0],
    "switch_1x2": [0],
    "switch_2x1": [0, 1],
    "switch_2x2": [0, 1],
    "switch_3x3": [0, 1, 2],
}
OUT_PORTS = {
    "source_terminal": [0],
    "dest_terminal": [],
    "switch_1x2": [1, 2],
    "switch_2x1": [2],
    "switch_2x2": [2, 3],
    "switch_3x3": [3, 4, 5],
}


def enumerate_simple_paths(circuit: Circuit, source: int, dest: int, cap: int = 100000):
    """All simple directed component paths source->dest, DFS order."""
    adjacency: dict[int, list[int]] = {}
    for wire in circuit.wires:
        adjacency.setdefault(wire.a_comp, []).append(wire.b_comp)
    for nbrs in adjacency.values():
        nbrs.sort()
    found: list[tuple[int, ...]] = []

    def visit(node: int, trail: tuple[int, ...]):
        if len(found) >= cap:
            return
        if node == dest:
            found.append(trail)
            return
        for nxt in adjacency.get(node, ()):
            if nxt not in trail:
                visit(nxt, trail + (nxt,))

    visit(source, (source,))
    assert len(found) < cap, "path enumeration cap hit"
    return found


def brute_force_max_disjoint(circuit: Circuit, source: int, dest: int) -> int:
    """Maximum set of pairwise internally-disjoint paths, by exhaustive
    search over all simple paths with branch-and-bound."""
    paths = enumerate_simple_paths(circuit, source, dest)
    internals = [frozenset(p[1:-1]) for p in paths]
    best = 0

    def extend(idx: int, used: frozenset, count: int):
        nonlocal best
        best = max(best, count)
        if count + (len(paths) - idx) <= best:
            return
        for i in range(idx, len(paths)):
            if not (internals[i] & used):
                extend(i + 1, used | internals[i], count + 1)

    extend(0, frozenset(), 0)
    return best


def wires_between(circuit: Circuit, a: int, b: int) -> list[int]:
    return [w.id for w in circuit.wires if w.a_comp == a and w.b_comp == b]


def component_path_to_wires(circuit: Circuit, comp_path) -> list[int]:
    """Lowest-id wire for each hop of a component path."""
    wires = []
    for u, v in zip(comp_path, comp_path[1:]):
        candidates = wires_between(circuit, u, v)
        assert candidates, f"no wire {u}->{v}"
        wires.append(candidates[0])
    return wires


def random_dag_circuit(rng: random.Random, max_comps: int = 12) -> Circuit:
    """Layered random DAG: one source, one dest, random switches between,
    wires always pointing to a later layer."""
    n_mid = rng.randint(2, max_comps - 2)
    kinds = ["source_terminal"]
    kinds += [rng.choice(["switch_2x2", "switch_3x3"]) for _ in range(n_mid)]
    kinds += ["dest_terminal"]
    layers = [0] + sorted(rng.randint(1, 4) for _ in range(n_mid)) + [5]
    components = tuple(
        Component(
            i,
            STANDARD_KINDS[kind],
            (100 + layers[i] * 150 + (i % 3) * 10, 100 + i * 60),
            40,
            40 if kind.endswith("terminal") else 60,
        )
        for i, kind in enumerate(kinds)
    )
    wires = []
    n = len(components)
    for i in range(n):
        for j in range(i + 1, n):
            if layers[j] <= layers[i]:
                continue
            if not OUT_PORTS[kinds[i]] or not IN_PORTS[kinds[j]]:
                continue
            if rng.random() < 0.45:
                wires.append(Wire(
                    len(wires), i, rng.choice(OUT_PORTS[kinds[i]]),
                    j, rng.choice(IN_PORTS[kinds[j]]),
                ))
    return Circuit(components, tuple(wires), f"dag{n}")


def random_scenario(rng: random.Random):
    """A circuit with a contiguous wire path on it, plus a random fault set;
    retries until the random DAG has at least one source->dest path."""
    while True:
        circuit = random_dag_circuit(rng)
        paths = enumerate_simple_paths(circuit, 0, circuit.no_cmp - 1, cap=5000)
        if paths:
            break
    comp_path = rng.choice(paths)
    wire_path = component_path_to_wires(circuit, comp_path)
    n_faults = rng.randint(0, 3)
    faults = frozenset(rng.sample(range(circuit.no_cmp), min(n_faults, circuit.no_cmp)))
    return circuit, wire_path, comp_path, faults
