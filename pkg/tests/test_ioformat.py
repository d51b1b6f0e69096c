import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from minforge.errors import InvalidCircuit, ParseError, SinkError, UnsupportedVersion
from minforge.ioformat import (
    CircuitDocument,
    ScenarioDocument,
    dumps_circuit,
    load_circuit,
    load_scenario,
    save_circuit,
    save_scenario,
)
from minforge.model import Circuit, Component, ComponentKind, STANDARD_KINDS, Wire, check_circuit


@st.composite
def circuits(draw):
    n = draw(st.integers(1, 8))
    kind_names = draw(st.lists(st.sampled_from(sorted(STANDARD_KINDS)), min_size=n, max_size=n))
    components = tuple(
        Component(
            i,
            STANDARD_KINDS[kind],
            (draw(st.integers(0, 2000)), draw(st.integers(0, 2000))),
            draw(st.integers(8, 120)),
            draw(st.integers(8, 120)),
        )
        for i, kind in enumerate(kind_names)
    )
    wires = []
    for _ in range(draw(st.integers(0, 10))):
        a = draw(st.integers(0, n - 1))
        b = draw(st.integers(0, n - 1))
        a_port = draw(st.integers(0, components[a].kind.port_count - 1))
        b_port = draw(st.integers(0, components[b].kind.port_count - 1))
        if (a, a_port) == (b, b_port):
            continue
        wires.append(Wire(
            len(wires), a, a_port, b, b_port,
            color=(draw(st.integers(0, 255)), draw(st.integers(0, 255)), draw(st.integers(0, 255))),
            thickness=draw(st.integers(1, 5)),
            bent=draw(st.booleans()),
        ))
    name = draw(st.text(st.characters(min_codepoint=32, max_codepoint=126), max_size=16))
    return Circuit(components, tuple(wires), name)


class TestCircuitRoundTrip:
    def test_file_roundtrip(self, tiny3, tmp_path):
        target = tmp_path / "tiny3.mincir"
        save_circuit(CircuitDocument(tiny3), target)
        loaded = load_circuit(target)
        assert loaded.circuit == tiny3
        assert loaded.format_version == 1

    def test_record_counts(self, tiny3):
        text = dumps_circuit(CircuitDocument(tiny3))
        payload = json.loads(text)
        assert len(payload["circuit"]["components"]) == 3
        assert len(payload["circuit"]["wires"]) == 2

    def test_canonical_form_stable(self, tiny3):
        first = dumps_circuit(CircuitDocument(tiny3))
        again = dumps_circuit(load_circuit(first.encode()))
        assert again == first

    def test_bytesio_sink_and_source(self, tiny3):
        sink = io.BytesIO()
        save_circuit(CircuitDocument(tiny3), sink)
        assert load_circuit(io.BytesIO(sink.getvalue())).circuit == tiny3

    def test_custom_port_layout_roundtrips(self):
        kind = ComponentKind("switch_2x2", (
            ("left", 0.25), ("left", 0.75), ("right", 0.25), ("right", 0.75),
            ("bottom", 0.5),
        ))
        circuit = Circuit((Component(0, kind, (50, 50), 40, 40),), (), "custom")
        loaded = load_circuit(dumps_circuit(CircuitDocument(circuit)).encode())
        assert loaded.circuit.components[0].kind == kind

    @settings(max_examples=120, deadline=None)
    @given(circuit=circuits())
    def test_roundtrip_property(self, circuit):
        if check_circuit(circuit):
            return
        text = dumps_circuit(CircuitDocument(circuit))
        assert load_circuit(text.encode()).circuit == circuit
        assert dumps_circuit(load_circuit(text.encode())) == text


class TestCircuitErrors:
    def test_save_rejects_invalid_circuit(self, tiny3):
        broken = Circuit(tiny3.components, (Wire(0, 0, 0, 7, 0),), "broken")
        with pytest.raises(InvalidCircuit) as err:
            save_circuit(CircuitDocument(broken), io.BytesIO())
        assert err.value.violations[0].kind == "dangling_endpoint"

    def test_truncated_document(self, tiny3):
        text = dumps_circuit(CircuitDocument(tiny3))
        with pytest.raises(ParseError):
            load_circuit(text[: len(text) // 2].encode())

    def test_unknown_version(self, tiny3):
        payload = json.loads(dumps_circuit(CircuitDocument(tiny3)))
        payload["format_version"] = 99
        with pytest.raises(UnsupportedVersion):
            load_circuit(json.dumps(payload).encode())

    def test_missing_version(self):
        with pytest.raises(ParseError):
            load_circuit(b'{"circuit": {}}')

    def test_root_not_object(self):
        with pytest.raises(ParseError):
            load_circuit(b"[1, 2]")

    def test_loader_rejects_structurally_invalid(self, tiny3):
        payload = json.loads(dumps_circuit(CircuitDocument(tiny3)))
        payload["circuit"]["wires"][1]["b"] = [7, 0]
        with pytest.raises(InvalidCircuit):
            load_circuit(json.dumps(payload).encode())

    def test_loader_rejects_unknown_kind(self, tiny3):
        payload = json.loads(dumps_circuit(CircuitDocument(tiny3)))
        payload["circuit"]["components"][0]["kind"] = "quantum_teleporter"
        with pytest.raises(ParseError):
            load_circuit(json.dumps(payload).encode())

    def test_strict_capacity(self):
        comps = tuple(
            Component(i, STANDARD_KINDS["source_terminal"], (i * 50, 100), 40, 40)
            for i in range(101)
        )
        text = dumps_circuit(CircuitDocument(Circuit(comps, (), "big")))
        assert load_circuit(text.encode()).circuit.no_cmp == 101
        with pytest.raises(InvalidCircuit):
            load_circuit(text.encode(), strict_capacity=True)

    def test_sink_error(self, tiny3, tmp_path):
        with pytest.raises(SinkError):
            save_circuit(CircuitDocument(tiny3), tmp_path)  # a directory, not a file


class TestScenario:
    def test_roundtrip(self, tmp_path):
        doc = ScenarioDocument("01", "1", 150)
        target = tmp_path / "demo.minsc"
        save_scenario(doc, target)
        assert load_scenario(target) == doc

    def test_zero_ticks_rejected(self):
        raw = json.dumps({
            "format_version": 1,
            "scenario": {"path": "01", "faults": "", "duration_ticks": 0},
        })
        with pytest.raises(ParseError):
            load_scenario(raw.encode())

    def test_empty_faults_allowed(self):
        doc = ScenarioDocument("01", "", 10)
        sink = io.BytesIO()
        save_scenario(doc, sink)
        assert load_scenario(io.BytesIO(sink.getvalue())).faults_input == ""

    def test_scenario_canonical(self):
        doc = ScenarioDocument("01", "2", 42)
        a, b = io.BytesIO(), io.BytesIO()
        save_scenario(doc, a)
        save_scenario(doc, b)
        assert a.getvalue() == b.getvalue()
