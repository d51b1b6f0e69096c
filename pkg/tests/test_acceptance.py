"""Acceptance criteria, one test per criterion with its runtime budget.

Each test prints a single PASS line (pytest -v adds its own PASSED/FAILED
verdict per criterion); a budget overrun or property violation fails the test.
"""

import io
import random
import time
from contextlib import contextmanager

from minforge.generators import dest_ids, generate_omega, generate_replicated, source_ids
from minforge.ioformat import CircuitDocument, dumps_circuit, load_circuit
from minforge.model import Circuit, Wire
from minforge.paths import (
    FaultSet,
    INVALID_COMPONENT_MESSAGE,
    INVALID_PATH_MESSAGE,
    PathSpec,
    are_disjoint,
    max_disjoint_paths,
    path_components,
    validate,
)
from minforge.render import emit_svg, plan_circuit, plan_simulation_frame, svg_string
from minforge.sim import SimConfig, close, inject_fault, open_session, remove_fault, run, step
from minforge.errors import NoPath

from conftest import build_tiny3
from helpers import (
    brute_force_max_disjoint,
    enumerate_simple_paths,
    random_dag_circuit,
    random_scenario,
)


@contextmanager
def budget(name: str, seconds: float):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"{name}: {elapsed:.2f}s exceeded the {seconds}s budget"
    print(f"PASS {name} ({elapsed:.2f}s < {seconds:.0f}s)")


def test_validation_messages_byte_exact():
    with budget("validation-messages", 1.0):
        tiny3 = build_tiny3()
        report = validate(tiny3, PathSpec.parse("05"), FaultSet.parse(""))
        assert report.errors[0].message == "Invalid Path. Please check the input."
        assert report.errors[0].message == INVALID_PATH_MESSAGE

        report = validate(tiny3, PathSpec.parse("01"), FaultSet.parse("9"))
        assert report.errors[0].message == "Invalid Component number. Please check the input."
        assert report.errors[0].message == INVALID_COMPONENT_MESSAGE

        # Strict range: ids run 0..count-1, so index == count is invalid even
        # though the original tool's > check accepted it.
        assert not validate(tiny3, PathSpec.parse(str(tiny3.no_line)), FaultSet.parse("")).is_valid
        assert not validate(tiny3, PathSpec.parse("01"), FaultSet.parse(str(tiny3.no_cmp))).is_valid
        assert validate(tiny3, PathSpec.parse("01"), FaultSet.parse("1")).is_valid


def test_alternation_law():
    with budget("alternation-law", 10.0):
        rng = random.Random(0xA17E)
        checked = 0
        while checked < 200:
            circuit, wire_path, comp_path, faults = random_scenario(rng)
            if rng.random() < 0.5:  # force a decent share of on-path faults
                faults = faults | {rng.choice(comp_path)}
            m = rng.randint(1, 25)
            parity = rng.choice(["drop_first", "deliver_first"])
            spec = PathSpec("", tuple(wire_path))
            fault_set = FaultSet("", frozenset(faults))
            report = run(circuit, spec, fault_set, SimConfig(2 * m, parity))
            on_path = faults & set(path_components(circuit, spec))
            if on_path:
                assert report.delivered == m and report.dropped == m
            else:
                assert report.delivered == 2 * m and report.dropped == 0
            checked += 1
        assert checked == 200


def test_unique_path_property():
    with budget("omega-unique-path", 30.0):
        for n in (4, 8, 16):
            circuit = generate_omega(n)
            for src in source_ids(circuit):
                for dst in dest_ids(circuit):
                    assert len(enumerate_simple_paths(circuit, src, dst)) == 1
                    assert max_disjoint_paths(circuit, src, dst, 3).disjointness == 1


def test_replicated_disjointness():
    with budget("replicated-disjointness", 30.0):
        for copies in (2, 3):
            circuit = generate_replicated(generate_omega(4), copies)
            for src in source_ids(circuit):
                for dst in dest_ids(circuit):
                    result = max_disjoint_paths(circuit, src, dst, copies + 1)
                    assert result.disjointness == copies
                    ok, shared = are_disjoint(circuit, result.paths)
                    assert ok and shared is None
                    assert brute_force_max_disjoint(circuit, src, dst) == copies


def test_flow_matches_brute_force():
    with budget("flow-vs-brute-force", 60.0):
        rng = random.Random(0xF10B)
        for _ in range(100):
            circuit = random_dag_circuit(rng, max_comps=12)
            assert circuit.no_cmp <= 12
            src, dst = 0, circuit.no_cmp - 1
            expected = brute_force_max_disjoint(circuit, src, dst)
            try:
                result = max_disjoint_paths(circuit, src, dst, k_limit=12)
                actual = result.disjointness
                assert are_disjoint(circuit, result.paths)[0]
            except NoPath:
                actual = 0
            assert actual == expected


def test_geometry_goldens():
    with budget("geometry-goldens", 5.0):
        tiny3 = build_tiny3()
        red = plan_simulation_frame(tiny3, PathSpec.parse("01"), FaultSet.parse("1"), "red")
        # cross arms 40 px on both diagonals around component 1 at (300,100)
        svg = svg_string(red)
        assert '<line x1="260" y1="60" x2="340" y2="140"' in svg
        assert '<line x1="260" y1="140" x2="340" y2="60"' in svg
        # highlight thickness 3
        overlays = [p for p in red.polylines if p.thickness == 3]
        assert len(overlays) == 2

        # bent offsets: 1.5W for lateral ports, 2W for top/bottom ports
        from minforge.model import Component, ComponentKind, STANDARD_KINDS

        topped = ComponentKind("switch_2x2", (
            ("left", 0.25), ("left", 0.75), ("right", 0.25), ("right", 0.75), ("top", 0.5),
        ))
        circuit = Circuit(
            (
                Component(0, STANDARD_KINDS["switch_2x2"], (100, 100), 40, 60),
                Component(1, topped, (400, 300), 40, 60),
            ),
            (Wire(0, 0, 2, 1, 4, bent=True),),
        )
        p1, p2, p3, p4 = plan_circuit(circuit).polylines[-1].points
        assert p2[0] - p1[0] == 60   # 1.5 * 40, lateral port
        assert p3[0] - p4[0] == 80   # 2 * 40, top port

        # byte stability across two emissions
        a, b = io.BytesIO(), io.BytesIO()
        emit_svg(red, a)
        emit_svg(red, b)
        assert a.getvalue() == b.getvalue()


def test_round_trip_stability():
    with budget("round-trip", 30.0):
        rng = random.Random(0x207D)
        checked = 0
        while checked < 200:
            circuit = _decorated(random_dag_circuit(rng), rng)
            doc = CircuitDocument(circuit)
            text = dumps_circuit(doc)
            loaded = load_circuit(text.encode())
            assert loaded.circuit == circuit
            assert dumps_circuit(loaded) == text
            checked += 1
        for factory in (lambda: generate_omega(8), lambda: generate_replicated(generate_omega(4), 3)):
            text = dumps_circuit(CircuitDocument(factory()))
            assert dumps_circuit(load_circuit(text.encode())) == text


def _decorated(circuit: Circuit, rng: random.Random) -> Circuit:
    wires = tuple(
        Wire(
            w.id, w.a_comp, w.a_port, w.b_comp, w.b_port,
            color=(rng.randrange(256), rng.randrange(256), rng.randrange(256)),
            thickness=rng.randint(1, 5),
            bent=rng.random() < 0.3,
        )
        for w in circuit.wires
    )
    return Circuit(circuit.components, wires, circuit.name)


def test_session_batch_equivalence():
    with budget("session-batch-equivalence", 30.0):
        rng = random.Random(0x5E55)
        for _ in range(50):
            circuit, wire_path, comp_path, faults = random_scenario(rng)
            duration = rng.randint(2, 30)
            spec = PathSpec("", tuple(wire_path))
            fault_set = FaultSet("", frozenset(faults))

            # plain step-by-step equals batch run
            batch = run(circuit, spec, fault_set, SimConfig(duration))
            session = open_session(circuit, spec, fault_set, SimConfig(duration))
            stepped = []
            for _ in range(duration):
                stepped.extend(step(session, 1))
            assert tuple(stepped) == batch.events
            report = close(session)
            assert (report.delivered, report.dropped) == (batch.delivered, batch.dropped)

            # with a mid-run mutation schedule, equals stitched constant-fault re-runs
            schedule: dict[int, list] = {}
            for _ in range(rng.randint(1, 3)):
                tick = rng.randint(1, duration - 1)
                target = rng.choice(comp_path) if rng.random() < 0.7 else rng.randrange(circuit.no_cmp)
                schedule.setdefault(tick, []).append((rng.choice(["add", "remove"]), target))

            session = open_session(circuit, spec, fault_set, SimConfig(duration))
            current = set(faults)
            segments = [(0, frozenset(current))]
            events = []
            for tick in range(duration):
                if tick in schedule:
                    for op, comp in schedule[tick]:
                        if op == "add":
                            inject_fault(session, comp)
                            current.add(comp)
                        else:
                            remove_fault(session, comp)
                            current.discard(comp)
                    segments.append((tick, frozenset(current)))
                events.extend(step(session, 1))

            expected = []
            for idx, (start, segment_faults) in enumerate(segments):
                end = segments[idx + 1][0] if idx + 1 < len(segments) else duration
                ref = run(circuit, spec, FaultSet("", segment_faults), SimConfig(duration))
                expected.extend(ref.events[start:end])
            assert events == expected
