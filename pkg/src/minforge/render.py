"""Deterministic SVG planning and emission for circuits and sim frames.

Geometry follows the original tool's drawing code: wire id labels sit 2 px
above the first anchor, bent wires detour horizontally by 1.5x or 2x the
endpoint component's width (2x when the port is on the top/bottom side),
path highlights are 3 px thick, and fault crosses span 40 px arms on both
diagonals.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO

from .errors import InvalidCircuit, SinkError, ValidationFailed
from .model import Circuit, Wire, check_circuit, port_anchor, port_is_top_bottom, _px
from .paths import FaultSet, PathSpec, validate

CROSS_ARM = 40
HIGHLIGHT_THICKNESS = 3
LABEL_OFFSET = (0, -2)
CANVAS_MARGIN = 50

BLACK = (0, 0, 0)
GREEN = (0, 255, 0)
RED = (255, 0, 0)


@dataclass(frozen=True)
class Polyline:
    points: tuple[tuple[int, int], ...]
    color: tuple[int, int, int] = BLACK
    thickness: int = 1


@dataclass(frozen=True)
class Cross:
    centre: tuple[int, int]
    arm: int = CROSS_ARM


@dataclass(frozen=True)
class Label:
    text: str
    anchor: tuple[int, int]


@dataclass(frozen=True)
class RenderPlan:
    polylines: tuple[Polyline, ...]
    crosses: tuple[Cross, ...]
    labels: tuple[Label, ...]
    canvas: tuple[int, int]


def _glyph(comp) -> tuple[tuple[int, int], ...]:
    cx, cy = comp.centre
    x0, x1 = _px(cx - comp.width / 2), _px(cx + comp.width / 2)
    y0, y1 = _px(cy - comp.height / 2), _px(cy + comp.height / 2)
    if comp.kind.name == "source_terminal":
        return ((x0, y0), (x0, y1), (x1, cy), (x0, y0))
    if comp.kind.name == "dest_terminal":
        return ((x1, y0), (x1, y1), (x0, cy), (x1, y0))
    return ((x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0))


def _wire_points(circuit: Circuit, wire: Wire, *, bug_compat: bool = False) -> tuple[tuple[int, int], ...]:
    p1 = port_anchor(circuit, wire.a_comp, wire.a_port)
    p3 = port_anchor(circuit, wire.b_comp, wire.b_port)
    if not wire.bent:
        return (p1, p3)
    a_comp = circuit.components[wire.a_comp]
    b_comp = circuit.components[wire.b_comp]
    a_top_bot = port_is_top_bottom(a_comp.kind, wire.a_port)
    # The original code tested the first endpoint's port for both offsets;
    # that literal behavior hides behind bug_compat.
    b_top_bot = a_top_bot if bug_compat else port_is_top_bottom(b_comp.kind, wire.b_port)
    wtm1 = 2 * a_comp.width if a_top_bot else int(1.5 * a_comp.width)
    wtm2 = 2 * b_comp.width if b_top_bot else int(1.5 * b_comp.width)
    sign = 1 if p1[0] <= p3[0] else -1
    return (p1, (p1[0] + sign * wtm1, p1[1]), (p3[0] + sign * wtm2, p3[1]), p3)


def _fit_canvas(polylines, crosses, labels) -> tuple[int, int]:
    max_x = max_y = 0
    for pl in polylines:
        for x, y in pl.points:
            max_x, max_y = max(max_x, x), max(max_y, y)
    for cross in crosses:
        max_x = max(max_x, cross.centre[0] + cross.arm)
        max_y = max(max_y, cross.centre[1] + cross.arm)
    for label in labels:
        max_x, max_y = max(max_x, label.anchor[0]), max(max_y, label.anchor[1])
    return max_x + CANVAS_MARGIN, max_y + CANVAS_MARGIN


def plan_circuit(circuit: Circuit, *, bug_compat: bool = False) -> RenderPlan:
    """Glyphs and id labels for every component, polylines and id labels for
    every wire (bent wires carry no label, matching the original drawing)."""
    violations = check_circuit(circuit)
    if violations:
        raise InvalidCircuit("cannot render invalid circuit", violations=tuple(violations))
    polylines = []
    labels = []
    for comp in circuit.components:
        polylines.append(Polyline(_glyph(comp)))
        labels.append(Label(str(comp.id), comp.centre))
    for wire in circuit.wires:
        points = _wire_points(circuit, wire, bug_compat=bug_compat)
        polylines.append(Polyline(points, wire.color, wire.thickness))
        if not wire.bent:
            anchor = (points[0][0] + LABEL_OFFSET[0], points[0][1] + LABEL_OFFSET[1])
            labels.append(Label(str(wire.id), anchor))
    crosses: tuple[Cross, ...] = ()
    return RenderPlan(tuple(polylines), crosses, tuple(labels), _fit_canvas(polylines, crosses, labels))


def plan_simulation_frame(
    circuit: Circuit,
    path: PathSpec,
    faults: FaultSet,
    state: str,
    *,
    bug_compat: bool = False,
) -> RenderPlan:
    """Base circuit plan plus the frame overlay: path wires re-drawn 3 px
    thick in green or red, and on red frames a cross over every declared
    faulty component whether or not it lies on the path."""
    if state not in ("green", "red"):
        raise ValueError(f"state must be green or red, got {state!r}")
    report = validate(circuit, path, faults)
    if not report.is_valid:
        raise ValidationFailed(report)
    base = plan_circuit(circuit, bug_compat=bug_compat)
    overlay_color = GREEN if state == "green" else RED
    polylines = list(base.polylines)
    for wire_id in path.wires:
        points = _wire_points(circuit, circuit.wires[wire_id], bug_compat=bug_compat)
        polylines.append(Polyline(points, overlay_color, HIGHLIGHT_THICKNESS))
    crosses = tuple(
        Cross(circuit.components[c].centre) for c in sorted(faults.components)
    ) if state == "red" else ()
    return RenderPlan(
        tuple(polylines), crosses, base.labels,
        _fit_canvas(polylines, crosses, base.labels),
    )


def _hex(color: tuple[int, int, int]) -> str:
    return "#{:02x}{:02x}{:02x}".format(*color)


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def svg_string(plan: RenderPlan) -> str:
    """Canonical SVG text: elements in plan order, integer coordinates."""
    w, h = plan.canvas
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">\n'
    ]
    for pl in plan.polylines:
        points = " ".join(f"{x},{y}" for x, y in pl.points)
        out.append(
            f'<polyline points="{points}" fill="none" stroke="{_hex(pl.color)}" stroke-width="{pl.thickness}" />\n'
        )
    for cross in plan.crosses:
        cx, cy = cross.centre
        arm = cross.arm
        out.append(
            f'<line x1="{cx - arm}" y1="{cy - arm}" x2="{cx + arm}" y2="{cy + arm}" stroke="{_hex(RED)}" stroke-width="1" />\n'
        )
        out.append(
            f'<line x1="{cx - arm}" y1="{cy + arm}" x2="{cx + arm}" y2="{cy - arm}" stroke="{_hex(RED)}" stroke-width="1" />\n'
        )
    for label in plan.labels:
        x, y = label.anchor
        out.append(
            f'<text x="{x}" y="{y}" font-family="sans-serif" font-size="12" fill="{_hex(BLACK)}">{_escape(label.text)}</text>\n'
        )
    out.append("</svg>\n")
    return "".join(out)


def emit_svg(plan: RenderPlan, sink: str | Path | BinaryIO) -> None:
    data = svg_string(plan).encode("utf-8")
    try:
        if isinstance(sink, (str, Path)):
            Path(sink).write_bytes(data)
        else:
            sink.write(data)
    except OSError as exc:
        raise SinkError(str(exc)) from exc
