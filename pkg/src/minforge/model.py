"""Immutable circuit data model: component kinds with port layouts, components,
wires, and structural validation.

Coordinates are integer pixels, x right, y down (screen semantics). Component
ids equal their position in the circuit's component list (drawing order), and
wire ids likewise; both are kept dense by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UnknownComponent, UnknownPort

SIDES = ("left", "right", "top", "bottom")

KIND_NAMES = (
    "source_terminal",
    "dest_terminal",
    "switch_1x2",
    "switch_2x1",
    "switch_2x2",
    "switch_3x3",
)

# Components narrower or shorter than this are structural violations.
MIN_DIMENSION = 8


def _spread(n: int) -> tuple[float, ...]:
    # Evenly spread n ports along a side: 1/2 for one, 1/4-3/4 for two,
    # 1/6-3/6-5/6 for three.
    return tuple((2 * i + 1) / (2 * n) for i in range(n))


@dataclass(frozen=True)
class ComponentKind:
    """A component shape: a name and an ordered port layout.

    Each layout entry is (side, fractional offset along that side). For
    switch_MxN names the first M ports must be on the left side and the next
    N on the right; further ports (e.g. chaining stubs) may sit anywhere.
    """

    name: str
    port_layout: tuple[tuple[str, float], ...]

    def __post_init__(self):
        if self.name not in KIND_NAMES:
            raise ValueError(f"unknown kind name: {self.name!r}")
        object.__setattr__(self, "port_layout", tuple((s, float(o)) for s, o in self.port_layout))
        if not self.port_layout:
            raise ValueError("port_layout must be non-empty")
        per_side: dict[str, float] = {}
        for side, offset in self.port_layout:
            if side not in SIDES:
                raise ValueError(f"bad port side: {side!r}")
            if not 0.0 <= offset <= 1.0:
                raise ValueError(f"port offset {offset} outside [0, 1]")
            if side in per_side and offset <= per_side[side]:
                raise ValueError(f"port offsets on side {side!r} not strictly increasing")
            per_side[side] = offset
        if self.name.startswith("switch_"):
            m, n = (int(c) for c in self.name.removeprefix("switch_").split("x"))
            sides = [s for s, _ in self.port_layout]
            if len(sides) < m + n or sides[:m] != ["left"] * m or sides[m:m + n] != ["right"] * n:
                raise ValueError(f"{self.name} needs {m} left ports then {n} right ports")

    @property
    def port_count(self) -> int:
        return len(self.port_layout)

    def port(self, index: int) -> tuple[str, float]:
        if not 0 <= index < len(self.port_layout):
            raise UnknownPort(f"port {index} invalid for kind {self.name}")
        return self.port_layout[index]


def _switch_layout(m: int, n: int) -> tuple[tuple[str, float], ...]:
    return tuple(("left", o) for o in _spread(m)) + tuple(("right", o) for o in _spread(n))


STANDARD_KINDS: dict[str, ComponentKind] = {
    "source_terminal": ComponentKind("source_terminal", (("right", 0.5),)),
    "dest_terminal": ComponentKind("dest_terminal", (("left", 0.5),)),
    "switch_1x2": ComponentKind("switch_1x2", _switch_layout(1, 2)),
    "switch_2x1": ComponentKind("switch_2x1", _switch_layout(2, 1)),
    "switch_2x2": ComponentKind("switch_2x2", _switch_layout(2, 2)),
    "switch_3x3": ComponentKind("switch_3x3", _switch_layout(3, 3)),
}


@dataclass(frozen=True)
class Component:
    """One placed component: dense id, kind, centre point, pixel size."""

    id: int
    kind: ComponentKind
    centre: tuple[int, int]
    width: int
    height: int

    def __post_init__(self):
        if self.id < 0:
            raise ValueError("component id must be non-negative")
        object.__setattr__(self, "centre", (int(self.centre[0]), int(self.centre[1])))


@dataclass(frozen=True)
class Wire:
    """A wire between two component ports, with drawing attributes."""

    id: int
    a_comp: int
    a_port: int
    b_comp: int
    b_port: int
    color: tuple[int, int, int] = (0, 0, 0)
    thickness: int = 1
    bent: bool = False

    def __post_init__(self):
        if self.id < 0:
            raise ValueError("wire id must be non-negative")
        if min(self.a_comp, self.a_port, self.b_comp, self.b_port) < 0:
            raise ValueError("wire endpoints must be non-negative")
        if self.thickness < 1:
            raise ValueError("wire thickness must be >= 1")
        color = tuple(int(c) for c in self.color)
        if len(color) != 3 or not all(0 <= c <= 255 for c in color):
            raise ValueError(f"bad RGB color: {self.color!r}")
        object.__setattr__(self, "color", color)

    @property
    def endpoints(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a_comp, self.a_port), (self.b_comp, self.b_port)


@dataclass(frozen=True)
class Circuit:
    """The drawable/simulatable document: components plus wires.

    Counts are always derived from the lists; ids must equal list positions.
    """

    components: tuple[Component, ...] = ()
    wires: tuple[Wire, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "wires", tuple(self.wires))
        for i, comp in enumerate(self.components):
            if comp.id != i:
                raise ValueError(f"component ids must be dense: found {comp.id} at position {i}")
        for i, wire in enumerate(self.wires):
            if wire.id != i:
                raise ValueError(f"wire ids must be dense: found {wire.id} at position {i}")

    @property
    def no_cmp(self) -> int:
        return len(self.components)

    @property
    def no_line(self) -> int:
        return len(self.wires)

    def component(self, comp_id: int) -> Component:
        if not 0 <= comp_id < self.no_cmp:
            raise UnknownComponent(f"component {comp_id} not in circuit (no_cmp={self.no_cmp})")
        return self.components[comp_id]


@dataclass(frozen=True)
class Violation:
    """One structural defect found by check_circuit."""

    kind: str  # dangling_endpoint | invalid_port | duplicate_endpoints | bad_dimension
    message: str
    wire: int | None = None
    component: int | None = None


def port_anchor(circuit: Circuit, comp_id: int, port: int) -> tuple[int, int]:
    """Absolute pixel coordinate of a component port.

    The centre is offset by half the width/height to the port's side, then by
    the fractional offset along that side.
    """
    comp = circuit.component(comp_id)
    side, offset = comp.kind.port(port)
    cx, cy = comp.centre
    left = cx - comp.width / 2
    top = cy - comp.height / 2
    if side == "left":
        x, y = left, top + offset * comp.height
    elif side == "right":
        x, y = left + comp.width, top + offset * comp.height
    elif side == "top":
        x, y = left + offset * comp.width, top
    else:
        x, y = left + offset * comp.width, top + comp.height
    return _px(x), _px(y)


def _px(value: float) -> int:
    # Round half up; round() would alternate on .5 boundaries.
    return math.floor(value + 0.5)


def port_is_top_bottom(kind: ComponentKind, port: int) -> bool:
    """True iff the port sits on the top or bottom side."""
    side, _ = kind.port(port)
    return side in ("top", "bottom")


def check_circuit(circuit: Circuit) -> list[Violation]:
    """Report every structural violation; an empty list means valid.

    Wire-scoped violations come first ordered by wire id, then component
    violations by component id, so output order is deterministic.
    """
    violations: list[Violation] = []
    for wire in circuit.wires:
        seen_dangling = False
        for label, comp_id, port in (("a", wire.a_comp, wire.a_port), ("b", wire.b_comp, wire.b_port)):
            if comp_id >= circuit.no_cmp:
                violations.append(Violation(
                    "dangling_endpoint",
                    f"wire {wire.id} endpoint {label} references missing component {comp_id}",
                    wire=wire.id,
                ))
                seen_dangling = True
            elif port >= circuit.components[comp_id].kind.port_count:
                violations.append(Violation(
                    "invalid_port",
                    f"wire {wire.id} endpoint {label} uses port {port} invalid for {circuit.components[comp_id].kind.name}",
                    wire=wire.id,
                ))
        if not seen_dangling and (wire.a_comp, wire.a_port) == (wire.b_comp, wire.b_port):
            violations.append(Violation(
                "duplicate_endpoints",
                f"wire {wire.id} connects a port to itself",
                wire=wire.id,
            ))
    for comp in circuit.components:
        if comp.width < MIN_DIMENSION or comp.height < MIN_DIMENSION:
            violations.append(Violation(
                "bad_dimension",
                f"component {comp.id} is {comp.width}x{comp.height}, below the {MIN_DIMENSION}px minimum",
                component=comp.id,
            ))
    return violations
