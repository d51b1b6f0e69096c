"""minforge: a workbench for fault-tolerant multistage interconnection
networks. Build switch/wire circuits, search node-disjoint paths, run the
alternate-packet-drop simulation, and render deterministic SVG schematics.
"""

from .model import (
    Circuit,
    Component,
    ComponentKind,
    STANDARD_KINDS,
    Violation,
    Wire,
    check_circuit,
    port_anchor,
    port_is_top_bottom,
)
from .ioformat import (
    CircuitDocument,
    ScenarioDocument,
    load_circuit,
    load_scenario,
    save_circuit,
    save_scenario,
)
from .generators import generate_extra_stage, generate_omega, generate_replicated
from .paths import (
    FaultSet,
    PathSpec,
    PathSetResult,
    ValidationReport,
    are_disjoint,
    max_disjoint_paths,
    parse_indices,
    path_components,
    validate,
    validate_input,
)
from .sim import (
    SimConfig,
    SimEvent,
    SimSession,
    SimulationReport,
    close,
    export_drop_log,
    inject_fault,
    open_session,
    remove_fault,
    run,
    step,
)
from .render import RenderPlan, emit_svg, plan_circuit, plan_simulation_frame, svg_string

__version__ = "0.1.0"
