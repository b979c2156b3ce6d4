"""torsokit: finite verification of torso separators for finitely-presented
infinite graphs.

The library builds the contracted torso of a graph relative to a designated
host subgraph of finite adhesion, projects eventually-periodic rays into it,
and checks — on growing finite truncations — whether a separator found in
the torso lifts back to the full graph, comparing the uncorrected lift
against its S-modification.
"""
from .cardinal import ALEPH0, ALEPH1, Cardinal, parse_cardinal
from .presentation import (
    ComponentId,
    ComponentPattern,
    FiniteTruncation,
    GraphPresentation,
    GroundVertex,
    HostFamily,
    PresentationError,
    VertexTerm,
    host_truncation,
    neighborhood,
    parse_address,
    parse_presentation,
    serialize_presentation,
    truncate,
    validate_presentation,
)
from .adhesion import (
    AdhesionClass,
    AdhesionClassification,
    adhesion_set_of,
    all_components,
    brute_force_components,
    classify_adhesion,
)
from .torso import (
    EtaAssignment,
    Torso,
    build_torso,
    choose_eta,
    conservativity_check,
    is_torso_vertex,
    rho_of,
    torso_vertex_component,
)
from .projection import (
    MaskedSequence,
    ProjectionSeq,
    RayError,
    RaySpec,
    UnstablePeriodError,
    check_local_finiteness,
    finite_walk,
    is_tendril,
    k_project,
    mask_sequence,
    parse_ray,
    ray_vertex_set,
    tail_component,
    validate_ray,
)
from .separation import (
    LemmaReport,
    PipelineReport,
    RemarkReport,
    SeparationCertificate,
    d_hat_double_prime,
    d_hat_prime,
    faithfulness_pipeline,
    lemma421_check,
    min_separator,
    pitz_x,
    remark_tail_check,
    s_modification,
    separates_at_depths,
    separates_finite,
    witness_is_valid,
)
from .scenario import (
    GOLDEN_PRESENTATION,
    GOLDEN_RAY,
    Scenario,
    golden_scenario,
    parse_scenario,
    run_example4,
    run_scenario,
    serialize_scenario,
)
from .search import Finding, SearchConfig, SearchReport, run_search
from .dot import to_dot

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
