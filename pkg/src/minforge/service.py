"""Local HTTP facade over the workbench for the studio UI.

One current circuit document per instance, guarded by a revision counter;
simulation sessions stream ticks over server-sent events and accept live
fault changes. Request/response bodies reuse the io-format payload schema.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field

from fastapi import Body, FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, StreamingResponse

from . import sim
from .errors import (
    InvalidCircuit,
    InvalidSize,
    NoPath,
    ParseError,
    PastEnd,
    SameEndpoint,
    UnknownComponent,
    UnsupportedVersion,
    ValidationFailed,
)
from .generators import generate_extra_stage, generate_omega, generate_replicated
from .ioformat import CircuitDocument, circuit_from_payload, circuit_to_payload
from .model import Circuit
from .paths import FaultSet, PathSpec, max_disjoint_paths, validate_input
from .render import plan_circuit, plan_simulation_frame, svg_string

DEFAULT_PORT = 7420


@dataclass
class _Session:
    id: str
    sim: sim.SimSession
    revision: int
    state: str = "running"  # running | finished | closed
    lock: threading.Lock = field(default_factory=threading.Lock)

    def summary(self) -> dict:
        dropped = sum(1 for e in self.sim.events if e.outcome == "dropped")
        return {
            "delivered": len(self.sim.events) - dropped,
            "dropped": dropped,
            "partial": self.sim.cursor < self.sim.config.duration_ticks,
        }


class _State:
    def __init__(self, doc: CircuitDocument):
        self.doc = doc
        self.revision = 1
        self.sessions: dict[str, _Session] = {}
        self.lock = threading.Lock()


def _error(status: int, message: str, **extra) -> JSONResponse:
    return JSONResponse({"error": message, **extra}, status_code=status)


def _violations_payload(exc: InvalidCircuit) -> list[dict]:
    return [
        {"kind": v.kind, "message": v.message, "wire": v.wire, "component": v.component}
        for v in exc.violations
    ]


def create_app(initial: CircuitDocument | None = None) -> FastAPI:
    app = FastAPI(title="minforge service")
    state = _State(initial or CircuitDocument(Circuit(name="empty")))
    app.state.workbench = state

    @app.exception_handler(RequestValidationError)
    def _on_request_parse_error(request: Request, exc: RequestValidationError):
        return _error(400, "malformed request")

    @app.get("/api/circuit")
    def get_circuit():
        with state.lock:
            return {"revision": state.revision, "document": circuit_to_payload(state.doc)}

    @app.put("/api/circuit")
    def put_circuit(payload: dict = Body(...)):
        try:
            doc = circuit_from_payload(payload)
        except (ParseError, UnsupportedVersion) as exc:
            return _error(400, str(exc))
        except InvalidCircuit as exc:
            return _error(422, str(exc), violations=_violations_payload(exc))
        with state.lock:
            state.doc = doc
            state.revision += 1
            for session in state.sessions.values():
                session.state = "closed"
            return {"revision": state.revision}

    @app.post("/api/generate")
    def generate(payload: dict = Body(...)):
        family = payload.get("family")
        size = payload.get("size")
        copies = payload.get("copies", 2)
        if family not in ("omega", "replicated", "extra-stage") or not isinstance(size, int):
            return _error(400, "family must be omega|replicated|extra-stage with integer size")
        try:
            if family == "omega":
                circuit = generate_omega(size)
            elif family == "extra-stage":
                circuit = generate_extra_stage(size)
            else:
                if not isinstance(copies, int):
                    return _error(400, "copies must be an integer")
                circuit = generate_replicated(generate_omega(size), copies)
        except (InvalidSize, InvalidCircuit) as exc:
            return _error(422, str(exc))
        return circuit_to_payload(CircuitDocument(circuit))

    @app.post("/api/validate")
    def validate_endpoint(payload: dict = Body(...)):
        path_text = payload.get("path")
        faults_text = payload.get("faults", "")
        if not isinstance(path_text, str) or not isinstance(faults_text, str):
            return _error(400, "path and faults must be strings")
        with state.lock:
            circuit = state.doc.circuit
        return validate_input(circuit, path_text, faults_text).to_payload()

    @app.get("/api/paths")
    def paths_endpoint(src: int, dst: int, k: int = 3):
        with state.lock:
            circuit = state.doc.circuit
        try:
            result = max_disjoint_paths(circuit, src, dst, k)
        except NoPath as exc:
            return _error(404, str(exc))
        except (UnknownComponent, SameEndpoint, ValueError) as exc:
            return _error(422, str(exc))
        return {
            "source": result.source,
            "dest": result.dest,
            "k": result.disjointness,
            "paths": [list(p) for p in result.paths],
        }

    @app.post("/api/sessions")
    def open_session(payload: dict = Body(...)):
        path_text = payload.get("path")
        faults_text = payload.get("faults", "")
        ticks = payload.get("ticks", 150)
        parity = str(payload.get("parity", "drop-first")).replace("-", "_")
        if not isinstance(path_text, str) or not isinstance(faults_text, str) or not isinstance(ticks, int):
            return _error(400, "body must carry path/faults strings and integer ticks")
        with state.lock:
            circuit = state.doc.circuit
            revision = state.revision
        try:
            path = PathSpec.parse(path_text)
            faults = FaultSet.parse(faults_text)
            config = sim.SimConfig(duration_ticks=ticks, drop_parity=parity)
        except (ParseError, ValueError) as exc:
            return _error(400, str(exc))
        try:
            engine = sim.open_session(circuit, path, faults, config)
        except ValidationFailed as exc:
            return _error(422, "validation failed", report=exc.report.to_payload())
        session = _Session(uuid.uuid4().hex, engine, revision)
        with state.lock:
            state.sessions[session.id] = session
        return {
            "id": session.id,
            "state": session.state,
            "revision": session.revision,
            "duration_ticks": ticks,
        }

    def _find(session_id: str) -> _Session | JSONResponse:
        with state.lock:
            session = state.sessions.get(session_id)
        if session is None:
            return _error(404, f"unknown session {session_id}")
        if session.state == "closed":
            return _error(409, "session was invalidated by a circuit revision change")
        return session

    @app.post("/api/sessions/{session_id}/step")
    def step_session(session_id: str, payload: dict = Body(...)):
        session = _find(session_id)
        if isinstance(session, JSONResponse):
            return session
        n = payload.get("n", 1)
        if not isinstance(n, int) or n < 0:
            return _error(400, "n must be a non-negative integer")
        with session.lock:
            try:
                events = sim.step(session.sim, n)
            except PastEnd as exc:
                return _error(409, str(exc))
            if session.sim.cursor >= session.sim.config.duration_ticks:
                session.state = "finished"
            return {
                "events": [_event_payload(e) for e in events],
                "state": session.state,
                "cursor": session.sim.cursor,
            }

    @app.post("/api/sessions/{session_id}/faults")
    def change_faults(session_id: str, payload: dict = Body(...)):
        session = _find(session_id)
        if isinstance(session, JSONResponse):
            return session
        add = payload.get("add", [])
        remove = payload.get("remove", [])
        if not isinstance(add, list) or not isinstance(remove, list):
            return _error(400, "add and remove must be lists of component ids")
        with session.lock:
            try:
                for comp in add:
                    sim.inject_fault(session.sim, int(comp))
                for comp in remove:
                    sim.remove_fault(session.sim, int(comp))
            except UnknownComponent as exc:
                return _error(422, str(exc))
            return {
                "faults": sorted(session.sim.faults),
                "effective_from_tick": session.sim.cursor,
            }

    @app.get("/api/sessions/{session_id}/stream")
    def stream_session(session_id: str):
        session = _find(session_id)
        if isinstance(session, JSONResponse):
            return session

        def event_stream():
            while True:
                with session.lock:
                    if session.state == "closed":
                        yield _sse("error", {"error": "session invalidated"})
                        return
                    if session.sim.cursor >= session.sim.config.duration_ticks:
                        break
                    event = sim.step(session.sim, 1)[0]
                yield _sse("tick", _event_payload(event))
            with session.lock:
                session.state = "finished"
                summary = session.summary()
            yield _sse("summary", summary)

        return StreamingResponse(event_stream(), media_type="text/event-stream")

    @app.delete("/api/sessions/{session_id}")
    def close_session(session_id: str):
        with state.lock:
            session = state.sessions.pop(session_id, None)
        if session is None:
            return _error(404, f"unknown session {session_id}")
        with session.lock:
            summary = session.summary()
            if not session.sim.closed:
                sim.close(session.sim)
            session.state = "closed"
        return {"id": session_id, "state": "closed", **summary}

    @app.get("/api/render.svg")
    def render_svg(
        path: str | None = None,
        faults: str = "",
        frame: int | None = None,
        state_q: str | None = Query(None, alias="state"),
        bug_compat: bool = False,
    ):
        with state.lock:
            circuit = state.doc.circuit
        try:
            if path is None:
                plan = plan_circuit(circuit, bug_compat=bug_compat)
            else:
                path_spec = PathSpec.parse(path)
                fault_set = FaultSet.parse(faults)
                if state_q is not None:
                    if state_q not in ("green", "red"):
                        return _error(400, "state must be green or red")
                    frame_state = state_q
                elif frame is not None:
                    if frame < 0:
                        return _error(400, "frame must be >= 0")
                    report = sim.run(circuit, path_spec, fault_set, sim.SimConfig(duration_ticks=frame + 1))
                    frame_state = report.path_state_per_tick[frame]
                else:
                    frame_state = "green"
                plan = plan_simulation_frame(circuit, path_spec, fault_set, frame_state, bug_compat=bug_compat)
        except ParseError as exc:
            return _error(400, str(exc))
        except ValidationFailed as exc:
            return _error(422, "validation failed", report=exc.report.to_payload())
        return Response(svg_string(plan).encode("utf-8"), media_type="image/svg+xml")

    return app


def _event_payload(event: sim.SimEvent) -> dict:
    return {
        "tick": event.tick,
        "packet_id": event.packet_id,
        "outcome": event.outcome,
        "drop_component": event.drop_component,
    }


def _sse(event_name: str, payload: dict) -> str:
    return f"event: {event_name}\ndata: {json.dumps(payload, sort_keys=True)}\n\n"
