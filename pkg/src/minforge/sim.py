"""Deterministic tick-based packet-drop simulation.

One packet traverses the chosen path per tick. When the fault set intersects
the path's components, alternate packets are dropped at the first such fault
in path order; otherwise every packet is delivered. Parity is computed from
the global tick index, so mid-run fault changes keep the alternation phase.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO

from .errors import PastEnd, SessionClosed, SinkError, UnknownComponent, ValidationFailed
from .model import Circuit
from .paths import FaultSet, PathSpec, path_components, validate

PARITIES = ("drop_first", "deliver_first")


@dataclass(frozen=True)
class SimConfig:
    duration_ticks: int = 150
    drop_parity: str = "drop_first"

    def __post_init__(self):
        if self.duration_ticks < 1:
            raise ValueError("duration_ticks must be >= 1")
        if self.drop_parity not in PARITIES:
            raise ValueError(f"drop_parity must be one of {PARITIES}")


@dataclass(frozen=True)
class SimEvent:
    tick: int
    packet_id: int
    outcome: str  # delivered | dropped
    drop_component: int | None = None


@dataclass(frozen=True)
class SimulationReport:
    config: SimConfig
    events: tuple[SimEvent, ...]
    delivered: int
    dropped: int
    path_state_per_tick: tuple[str, ...]  # green | red, one per tick
    path_raw: str = ""
    partial: bool = False

    def to_payload(self) -> dict:
        return {
            "config": {
                "duration_ticks": self.config.duration_ticks,
                "drop_parity": self.config.drop_parity,
            },
            "events": [
                {
                    "tick": e.tick,
                    "packet_id": e.packet_id,
                    "outcome": e.outcome,
                    "drop_component": e.drop_component,
                }
                for e in self.events
            ],
            "delivered": self.delivered,
            "dropped": self.dropped,
            "path_state_per_tick": list(self.path_state_per_tick),
            "path": self.path_raw,
            "partial": self.partial,
        }


def _require_valid(circuit: Circuit, path: PathSpec, faults: FaultSet):
    report = validate(circuit, path, faults)
    if not report.is_valid:
        raise ValidationFailed(report)


def _drops_at(tick: int, parity: str) -> bool:
    return tick % 2 == (0 if parity == "drop_first" else 1)


def run(circuit: Circuit, path: PathSpec, faults: FaultSet, config: SimConfig | None = None) -> SimulationReport:
    """Simulate the whole duration in one shot."""
    config = config or SimConfig()
    _require_valid(circuit, path, faults)
    order = path_components(circuit, path)
    on_path = [c for c in order if c in faults.components]
    events = []
    for tick in range(config.duration_ticks):
        if on_path and _drops_at(tick, config.drop_parity):
            events.append(SimEvent(tick, tick, "dropped", on_path[0]))
        else:
            events.append(SimEvent(tick, tick, "delivered"))
    dropped = sum(1 for e in events if e.outcome == "dropped")
    return SimulationReport(
        config=config,
        events=tuple(events),
        delivered=len(events) - dropped,
        dropped=dropped,
        path_state_per_tick=tuple("red" if e.outcome == "dropped" else "green" for e in events),
        path_raw=path.raw,
    )


@dataclass
class SimSession:
    """Incremental simulation with live fault injection/removal.

    Fault changes take effect from the next simulated tick; the drop parity
    always follows the global tick index.
    """

    circuit: Circuit
    path: PathSpec
    config: SimConfig
    faults: set[int] = field(default_factory=set)
    cursor: int = 0
    events: list[SimEvent] = field(default_factory=list)
    closed: bool = False
    _path_order: list[int] = field(default_factory=list)

    def _check_open(self):
        if self.closed:
            raise SessionClosed("session is closed")


def open_session(circuit: Circuit, path: PathSpec, faults: FaultSet, config: SimConfig | None = None) -> SimSession:
    config = config or SimConfig()
    _require_valid(circuit, path, faults)
    session = SimSession(circuit=circuit, path=path, config=config, faults=set(faults.components))
    session._path_order = path_components(circuit, path)
    return session


def step(session: SimSession, n_ticks: int = 1) -> list[SimEvent]:
    """Advance the session, returning just the newly produced events."""
    session._check_open()
    if n_ticks < 0:
        raise ValueError("n_ticks must be >= 0")
    if session.cursor + n_ticks > session.config.duration_ticks:
        raise PastEnd(
            f"step of {n_ticks} from tick {session.cursor} exceeds duration {session.config.duration_ticks}"
        )
    fresh = []
    for _ in range(n_ticks):
        tick = session.cursor
        on_path = [c for c in session._path_order if c in session.faults]
        if on_path and _drops_at(tick, session.config.drop_parity):
            event = SimEvent(tick, tick, "dropped", on_path[0])
        else:
            event = SimEvent(tick, tick, "delivered")
        session.events.append(event)
        session.cursor += 1
        fresh.append(event)
    return fresh


def inject_fault(session: SimSession, component_id: int) -> None:
    session._check_open()
    if not 0 <= component_id < session.circuit.no_cmp:
        raise UnknownComponent(f"component {component_id} not in circuit")
    session.faults.add(component_id)


def remove_fault(session: SimSession, component_id: int) -> None:
    session._check_open()
    session.faults.discard(component_id)


def close(session: SimSession) -> SimulationReport:
    """Finish the session; closing before the configured end truncates the
    report and marks it partial."""
    session._check_open()
    session.closed = True
    events = tuple(session.events)
    dropped = sum(1 for e in events if e.outcome == "dropped")
    return SimulationReport(
        config=session.config,
        events=events,
        delivered=len(events) - dropped,
        dropped=dropped,
        path_state_per_tick=tuple("red" if e.outcome == "dropped" else "green" for e in events),
        path_raw=session.path.raw,
        partial=session.cursor < session.config.duration_ticks,
    )


DROP_LOG_HEADER = "tick\tpacket_id\tcomponent\tpath\n"


def export_drop_log(report: SimulationReport, sink: str | Path | BinaryIO) -> None:
    """Append-only style log of dropped packets, one tab-separated record per
    drop, ordered by tick."""
    lines = [DROP_LOG_HEADER]
    for event in report.events:
        if event.outcome == "dropped":
            lines.append(f"{event.tick}\t{event.packet_id}\t{event.drop_component}\t{report.path_raw}\n")
    data = "".join(lines).encode("utf-8")
    try:
        if isinstance(sink, (str, Path)):
            Path(sink).write_bytes(data)
        else:
            sink.write(data)
    except OSError as exc:
        raise SinkError(str(exc)) from exc
