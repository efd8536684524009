"""Terminality, extractions and contractions for local Brauer pairs."""

from .castelnuovo import (
    beta_blowup,
    castelnuovo_ray,
    chain_from_rays,
    extraction_candidates,
    resolution_rays,
    singular_points,
    terminal_model,
)
from .chain import (
    RAMIFIED,
    ChainCurve,
    ChainSurface,
    ContractionStep,
    Germ,
    b_values,
    component_config,
    contractible,
    final_config,
    is_terminal,
    partial_intersections,
    terminality_report,
    zariski_factorize,
)
from .classify import classify, match_case, scan, witness_key
from .screen import ScreenResult, screen_regular_center
from .verdict import NotTerminal, Terminal, Unsupported, Verdict

__all__ = [
    "RAMIFIED",
    "ChainCurve",
    "ChainSurface",
    "ContractionStep",
    "Germ",
    "NotTerminal",
    "ScreenResult",
    "Terminal",
    "Unsupported",
    "Verdict",
    "b_values",
    "beta_blowup",
    "castelnuovo_ray",
    "chain_from_rays",
    "classify",
    "component_config",
    "contractible",
    "extraction_candidates",
    "final_config",
    "is_terminal",
    "match_case",
    "partial_intersections",
    "resolution_rays",
    "scan",
    "screen_regular_center",
    "singular_points",
    "terminal_model",
    "terminality_report",
    "witness_key",
    "zariski_factorize",
]
