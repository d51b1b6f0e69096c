"""Versioned text persistence for circuit and scenario documents.

The on-disk form is canonical JSON (sorted keys, two-space indent, trailing
newline) so a given document always serializes to identical bytes. Circuit
files use the `.mincir` extension, scenario files `.minsc`; the same payload
schema is used verbatim as the HTTP service body encoding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, BinaryIO

from .errors import InvalidCircuit, ParseError, SinkError, UnsupportedVersion
from .model import STANDARD_KINDS, Circuit, Component, ComponentKind, Wire, check_circuit

FORMAT_VERSION = 1

# The original tool stored fixed 100-slot arrays; strict mode mirrors that cap.
LEGACY_CAPACITY = 100


@dataclass(frozen=True)
class CircuitDocument:
    circuit: Circuit
    format_version: int = FORMAT_VERSION


@dataclass(frozen=True)
class ScenarioDocument:
    """Raw path/fault input strings plus the simulation duration."""

    path_input: str
    faults_input: str
    duration_ticks: int = 150

    def __post_init__(self):
        if self.duration_ticks < 1:
            raise ValueError("duration_ticks must be >= 1")


# --- payload (dict) encoding, shared with the HTTP service ---------------


def circuit_to_payload(doc: CircuitDocument) -> dict[str, Any]:
    comps = []
    for comp in doc.circuit.components:
        record: dict[str, Any] = {
            "id": comp.id,
            "kind": comp.kind.name,
            "centre": [comp.centre[0], comp.centre[1]],
            "width": comp.width,
            "height": comp.height,
        }
        if comp.kind != STANDARD_KINDS[comp.kind.name]:
            record["ports"] = [[side, offset] for side, offset in comp.kind.port_layout]
        comps.append(record)
    wires = [
        {
            "id": w.id,
            "a": [w.a_comp, w.a_port],
            "b": [w.b_comp, w.b_port],
            "color": list(w.color),
            "thickness": w.thickness,
            "bent": w.bent,
        }
        for w in doc.circuit.wires
    ]
    return {
        "format_version": doc.format_version,
        "circuit": {"name": doc.circuit.name, "components": comps, "wires": wires},
    }


def circuit_from_payload(payload: Any, *, strict_capacity: bool = False, check: bool = True) -> CircuitDocument:
    version = _version_of(payload)
    body = _require(payload, "circuit", dict)
    name = _require(body, "name", str)
    comp_records = _require(body, "components", list)
    wire_records = _require(body, "wires", list)
    if strict_capacity and (len(comp_records) > LEGACY_CAPACITY or len(wire_records) > LEGACY_CAPACITY):
        raise InvalidCircuit(
            f"document exceeds the legacy {LEGACY_CAPACITY}-component/{LEGACY_CAPACITY}-wire capacity"
        )
    try:
        components = tuple(_component_from(r) for r in comp_records)
        wires = tuple(_wire_from(r) for r in wire_records)
        circuit = Circuit(components, wires, name)
    except (ValueError, TypeError, KeyError) as exc:
        raise ParseError(f"malformed circuit document: {exc}") from exc
    if check:
        violations = check_circuit(circuit)
        if violations:
            raise InvalidCircuit(
                "; ".join(v.message for v in violations), violations=tuple(violations)
            )
    return CircuitDocument(circuit, version)


def scenario_to_payload(doc: ScenarioDocument) -> dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "scenario": {
            "path": doc.path_input,
            "faults": doc.faults_input,
            "duration_ticks": doc.duration_ticks,
        },
    }


def scenario_from_payload(payload: Any) -> ScenarioDocument:
    _version_of(payload)
    body = _require(payload, "scenario", dict)
    path = _require(body, "path", str)
    faults = _require(body, "faults", str)
    ticks = _require(body, "duration_ticks", int)
    try:
        return ScenarioDocument(path, faults, ticks)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _version_of(payload: Any) -> int:
    if not isinstance(payload, dict):
        raise ParseError("document root must be an object")
    version = payload.get("format_version")
    if not isinstance(version, int) or isinstance(version, bool):
        raise ParseError("missing or non-integer format_version")
    if version != FORMAT_VERSION:
        raise UnsupportedVersion(f"format_version {version} not supported (expected {FORMAT_VERSION})")
    return version


def _require(obj: Any, key: str, typ: type) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing key: {key}")
    value = obj[key]
    if not isinstance(value, typ) or (typ is int and isinstance(value, bool)):
        raise ParseError(f"key {key} must be {typ.__name__}")
    return value


def _component_from(record: Any) -> Component:
    kind_name = record["kind"]
    if kind_name not in STANDARD_KINDS:
        raise ValueError(f"unknown component kind {kind_name!r}")
    if "ports" in record:
        layout = tuple((side, float(offset)) for side, offset in record["ports"])
        kind = ComponentKind(kind_name, layout)
    else:
        kind = STANDARD_KINDS[kind_name]
    cx, cy = record["centre"]
    return Component(int(record["id"]), kind, (int(cx), int(cy)), int(record["width"]), int(record["height"]))


def _wire_from(record: Any) -> Wire:
    a_comp, a_port = record["a"]
    b_comp, b_port = record["b"]
    return Wire(
        int(record["id"]),
        int(a_comp), int(a_port), int(b_comp), int(b_port),
        color=tuple(record["color"]),
        thickness=int(record["thickness"]),
        bent=bool(record["bent"]),
    )


# --- byte-level save/load -------------------------------------------------


def dumps_circuit(doc: CircuitDocument) -> str:
    return _canonical(circuit_to_payload(doc))


def dumps_scenario(doc: ScenarioDocument) -> str:
    return _canonical(scenario_to_payload(doc))


def _canonical(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def save_circuit(doc: CircuitDocument, destination: str | Path | BinaryIO) -> None:
    """Write the canonical circuit serialization; the circuit must be valid."""
    violations = check_circuit(doc.circuit)
    if violations:
        raise InvalidCircuit(
            "; ".join(v.message for v in violations), violations=tuple(violations)
        )
    _write(destination, dumps_circuit(doc).encode("utf-8"))


def load_circuit(source: str | Path | BinaryIO | bytes, *, strict_capacity: bool = False) -> CircuitDocument:
    """Parse and validate a circuit document; the result passes check_circuit."""
    return circuit_from_payload(_parse_json(_read(source)), strict_capacity=strict_capacity)


def save_scenario(doc: ScenarioDocument, destination: str | Path | BinaryIO) -> None:
    _write(destination, dumps_scenario(doc).encode("utf-8"))


def load_scenario(source: str | Path | BinaryIO | bytes) -> ScenarioDocument:
    return scenario_from_payload(_parse_json(_read(source)))


def _parse_json(raw: bytes) -> Any:
    try:
        return json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"not a valid document: {exc}") from exc


def _write(destination: str | Path | BinaryIO, data: bytes) -> None:
    try:
        if isinstance(destination, (str, Path)):
            Path(destination).write_bytes(data)
        else:
            destination.write(data)
    except OSError as exc:
        raise SinkError(str(exc)) from exc


def _read(source: str | Path | BinaryIO | bytes) -> bytes:
    if isinstance(source, bytes):
        return source
    try:
        if isinstance(source, (str, Path)):
            return Path(source).read_bytes()
        return source.read()
    except OSError as exc:
        raise ParseError(f"cannot read source: {exc}") from exc
