"""Stitch-pattern loops on the integer grid: tracing, enumeration, and a
verifiable certificate that every loop length is 4 mod 8."""

from .sequence import (
    Constant,
    Periodic,
    Seeded,
    SequenceSpec,
    SpecParseError,
    bit_at,
    format_spec,
    parse_spec,
)
from .pattern import ContractViolation, Edge, PatternHandle, has_edge, incident_edges
from .trace import (
    DEFAULT_BUDGET,
    DIR_NAMES,
    LOOP,
    MINUS_X,
    MINUS_Y,
    PLUS_X,
    PLUS_Y,
    UNRESOLVED,
    InternalContradiction,
    OrientedEdge,
    TracedComponent,
    canonicalize_loop,
    enumerate_loops,
    next_edge,
    orient_loop_for_decomposition,
    trace_from,
)
from .decompose import (
    Excursion,
    ExcursionCertificate,
    LoopCertificate,
    VerificationReport,
    decompose_excursion,
    decompose_loop,
    parse_certificate,
    predicted_mod8,
    serialize_certificate,
    verify_certificate,
)
from .verify import (
    CampaignReport,
    check_parity_direction,
    check_vertical_direction,
    exhaustive_verify,
    random_verify,
    serialize_report,
)
from .render import RenderStyle, render_ascii, render_svg

__all__ = [
    "Constant",
    "Periodic",
    "Seeded",
    "SequenceSpec",
    "SpecParseError",
    "bit_at",
    "format_spec",
    "parse_spec",
    "ContractViolation",
    "Edge",
    "PatternHandle",
    "has_edge",
    "incident_edges",
    "DEFAULT_BUDGET",
    "DIR_NAMES",
    "LOOP",
    "MINUS_X",
    "MINUS_Y",
    "PLUS_X",
    "PLUS_Y",
    "UNRESOLVED",
    "InternalContradiction",
    "OrientedEdge",
    "TracedComponent",
    "canonicalize_loop",
    "enumerate_loops",
    "next_edge",
    "orient_loop_for_decomposition",
    "trace_from",
    "Excursion",
    "ExcursionCertificate",
    "LoopCertificate",
    "VerificationReport",
    "decompose_excursion",
    "decompose_loop",
    "parse_certificate",
    "predicted_mod8",
    "serialize_certificate",
    "verify_certificate",
    "CampaignReport",
    "check_parity_direction",
    "check_vertical_direction",
    "exhaustive_verify",
    "random_verify",
    "serialize_report",
    "RenderStyle",
    "render_ascii",
    "render_svg",
]

__version__ = "0.1.0"
