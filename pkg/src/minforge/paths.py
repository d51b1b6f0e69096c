"""Path/fault input parsing, validation against a circuit, and node-disjoint
path search.

Wire direction for search purposes is a_comp -> b_comp (generators emit wires
in stage order). Node-disjointness is computed by vertex splitting plus
unit-capacity max flow, with lowest-id tie-breaking so results are stable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import (
    InvalidPath,
    MismatchedEndpoints,
    NoPath,
    ParseError,
    SameEndpoint,
    UnknownComponent,
)
from .model import Circuit

INVALID_PATH_MESSAGE = "Invalid Path. Please check the input."
INVALID_COMPONENT_MESSAGE = "Invalid Component number. Please check the input."


def parse_indices(text: str, *, allow_empty: bool = False) -> list[int]:
    """Parse an index list in either accepted syntax.

    Legacy form treats every character as one digit index (0-9); any string
    containing a comma is instead split into decimal integer tokens, which
    allows indices >= 10.
    """
    if text == "":
        if allow_empty:
            return []
        raise ParseError("empty input")
    if "," in text:
        indices = []
        for token in text.split(","):
            token = token.strip()
            if not token.isdigit():
                raise ParseError(f"malformed index token: {token!r}")
            indices.append(int(token))
        return indices
    if not text.isdigit():
        bad = next(c for c in text if not c.isdigit())
        raise ParseError(f"non-digit character {bad!r} in legacy index string")
    return [int(c) for c in text]


@dataclass(frozen=True)
class PathSpec:
    """Ordered wire ids plus the raw input string they came from."""

    raw: str
    wires: tuple[int, ...]

    @classmethod
    def parse(cls, text: str) -> "PathSpec":
        return cls(text, tuple(parse_indices(text)))


@dataclass(frozen=True)
class FaultSet:
    """Declared faulty component ids (set semantics) plus the raw string."""

    raw: str
    components: frozenset[int]

    @classmethod
    def parse(cls, text: str) -> "FaultSet":
        return cls(text, frozenset(parse_indices(text, allow_empty=True)))


@dataclass(frozen=True)
class Finding:
    code: str  # invalid_path | invalid_component | non_contiguous | off_path_fault | parse_error
    severity: str  # error | warning
    message: str


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...]

    @property
    def errors(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "error")

    @property
    def warnings(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "warning")

    @property
    def is_valid(self) -> bool:
        return not self.errors

    def to_payload(self) -> dict:
        return {
            "valid": self.is_valid,
            "findings": [
                {"code": f.code, "severity": f.severity, "message": f.message}
                for f in self.findings
            ],
        }


def validate(circuit: Circuit, path: PathSpec, faults: FaultSet) -> ValidationReport:
    """Range-check path wires and fault components, then warn about
    non-contiguous wire sequences and faults that touch no path wire.

    Never raises; the report is the result either way.
    """
    findings: list[Finding] = []
    path_ok = all(0 <= w < circuit.no_line for w in path.wires)
    if not path_ok:
        findings.append(Finding("invalid_path", "error", INVALID_PATH_MESSAGE))
    faults_ok = all(0 <= c < circuit.no_cmp for c in faults.components)
    if not faults_ok:
        findings.append(Finding("invalid_component", "error", INVALID_COMPONENT_MESSAGE))
    if path_ok:
        gaps = []
        for prev, nxt in zip(path.wires, path.wires[1:]):
            a, b = circuit.wires[prev], circuit.wires[nxt]
            if not ({a.a_comp, a.b_comp} & {b.a_comp, b.b_comp}):
                gaps.append((prev, nxt))
        if gaps:
            detail = "; ".join(f"wires {p} and {n} share no component" for p, n in gaps)
            findings.append(Finding("non_contiguous", "warning", f"path is not contiguous: {detail}"))
        if faults_ok:
            on_path = set(path_components(circuit, path))
            off = sorted(faults.components - on_path)
            if off:
                listed = ", ".join(str(c) for c in off)
                findings.append(Finding(
                    "off_path_fault", "warning",
                    f"faults not on any path wire endpoint: {listed}",
                ))
    return ValidationReport(tuple(findings))


def validate_input(circuit: Circuit, path_text: str, faults_text: str) -> ValidationReport:
    """Text-level variant of validate: parse failures become report findings,
    so any input strings yield a report rather than an exception."""
    findings: list[Finding] = []
    path = faults = None
    try:
        path = PathSpec.parse(path_text)
    except ParseError as exc:
        findings.append(Finding("parse_error", "error", f"path: {exc}"))
    try:
        faults = FaultSet.parse(faults_text)
    except ParseError as exc:
        findings.append(Finding("parse_error", "error", f"faults: {exc}"))
    if findings:
        if path is None:
            path = PathSpec(path_text, ())
        if faults is None:
            faults = FaultSet(faults_text, frozenset())
        return ValidationReport(tuple(findings) + validate(circuit, path, faults).findings)
    return validate(circuit, path, faults)


def path_components(circuit: Circuit, path: PathSpec) -> list[int]:
    """Endpoint components of the path's wires, ordered by first touch."""
    seen: dict[int, None] = {}
    for w in path.wires:
        if not 0 <= w < circuit.no_line:
            raise InvalidPath(INVALID_PATH_MESSAGE)
        wire = circuit.wires[w]
        seen.setdefault(wire.a_comp, None)
        seen.setdefault(wire.b_comp, None)
    return list(seen)


def _as_component_sequence(circuit: Circuit, path) -> list[int]:
    if isinstance(path, PathSpec):
        return path_components(circuit, path)
    comps = [int(c) for c in path]
    for c in comps:
        if not 0 <= c < circuit.no_cmp:
            raise InvalidPath(f"component {c} not in circuit")
    return comps


def are_disjoint(circuit: Circuit, paths) -> tuple[bool, int | None]:
    """True iff no two paths share a component besides the common endpoints.

    Paths may be PathSpec values or plain component-id sequences; all must
    start and end at the same source/destination. On overlap the second
    element names the first shared component found.
    """
    seqs = [_as_component_sequence(circuit, p) for p in paths]
    if any(not s for s in seqs):
        raise InvalidPath("empty path")
    src, dst = seqs[0][0], seqs[0][-1]
    for seq in seqs[1:]:
        if seq[0] != src or seq[-1] != dst:
            raise MismatchedEndpoints(
                f"paths run {seqs[0][0]}->{seqs[0][-1]} and {seq[0]}->{seq[-1]}"
            )
    for i in range(len(seqs)):
        others = set(seqs[i]) - {src, dst}
        for j in range(i + 1, len(seqs)):
            for comp in seqs[j]:
                if comp in others:
                    return False, comp
    return True, None


@dataclass(frozen=True)
class PathSetResult:
    """k node-disjoint component paths between one terminal pair."""

    source: int
    dest: int
    paths: tuple[tuple[int, ...], ...]

    @property
    def disjointness(self) -> int:
        return len(self.paths)


def max_disjoint_paths(circuit: Circuit, source: int, dest: int, k_limit: int = 3) -> PathSetResult:
    """Find min(k_limit, maximum) node-disjoint directed paths source->dest.

    Every component becomes an in/out node pair joined by a unit-capacity arc
    (Menger construction); each wire is a unit arc from its a-side component's
    out node to its b-side in node. Augmentation explores lowest node ids
    first, so the returned set is deterministic.
    """
    if not 0 <= source < circuit.no_cmp:
        raise UnknownComponent(f"source {source} not in circuit")
    if not 0 <= dest < circuit.no_cmp:
        raise UnknownComponent(f"dest {dest} not in circuit")
    if source == dest:
        raise SameEndpoint(f"source and destination are both {source}")
    if k_limit < 1:
        raise ValueError("k_limit must be >= 1")

    n = circuit.no_cmp
    # Node 2v = in-side of component v, 2v+1 = out-side.
    adj: list[list[int]] = [[] for _ in range(2 * n)]
    arcs: list[list[int]] = []  # [head, cap, rev_index, orig_cap]

    def add_arc(tail: int, head: int, cap: int) -> None:
        adj[tail].append(len(arcs))
        arcs.append([head, cap, len(arcs) + 1, cap])
        adj[head].append(len(arcs))
        arcs.append([tail, 0, len(arcs) - 1, 0])

    for v in range(n):
        add_arc(2 * v, 2 * v + 1, 1)
    for w in circuit.wires:
        add_arc(2 * w.a_comp + 1, 2 * w.b_comp, 1)
    for lst in adj:
        lst.sort(key=lambda idx: (arcs[idx][0], idx))

    s, t = 2 * source + 1, 2 * dest
    flow = 0
    while flow < k_limit:
        parent_arc = [-1] * (2 * n)
        parent_arc[s] = -2
        queue = deque([s])
        while queue:
            node = queue.popleft()
            if node == t:
                break
            for idx in adj[node]:
                head, cap = arcs[idx][0], arcs[idx][1]
                if cap > 0 and parent_arc[head] == -1:
                    parent_arc[head] = idx
                    queue.append(head)
        if parent_arc[t] == -1:
            break
        node = t
        while node != s:
            idx = parent_arc[node]
            arcs[idx][1] -= 1
            arcs[arcs[idx][2]][1] += 1
            node = arcs[arcs[idx][2]][0]
        flow += 1

    if flow == 0:
        raise NoPath(f"no path from {source} to {dest}")

    paths = []
    for _ in range(flow):
        comps = [source]
        node = s
        while node != t:
            for idx in adj[node]:
                head, cap, _, orig = arcs[idx]
                if orig > 0 and cap < orig:
                    arcs[idx][1] += 1  # consume this unit so decomposition is a partition
                    node = head
                    if node % 2 == 0 and node != t:
                        comps.append(node // 2)
                    break
            else:
                raise AssertionError("flow decomposition lost conservation")
        comps.append(dest)
        paths.append(tuple(comps))
    return PathSetResult(source, dest, tuple(paths))
