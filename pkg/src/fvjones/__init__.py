"""Flat-virtual Jones polynomial of cylinder and torus diagrams under phi_d / phi'_l."""

from .closure import (build_slash_tangle, classify_cylinder, classify_torus, essential_component_count,
                      per_component_flat_crossings, reduce_cylinder, reduce_torus)
from .diagram import (CrossingRecord, CutTangle, End, Slot, SurfaceSpec, crossing_sign, mirror,
                      parse_tangle, serialize, validate, writhe)
from .errors import EmbeddingViolation, InvalidTangle, StateCapExceeded, TangleSyntaxError
from .laurent import (ComponentCensus, FlatValue, LaurentPoly, fv_add, fv_scale, loop_factor,
                      normalize_census, render, writhe_prefactor)
from .oracle import block_identities, oracle_census, trace_components
from .states import SmoothedState, enumerate_states, flat_bracket, flat_jones, resolve_state

__version__ = "0.1.0"

__all__ = [
    "build_slash_tangle",
    "classify_cylinder",
    "classify_torus",
    "essential_component_count",
    "per_component_flat_crossings",
    "reduce_cylinder",
    "reduce_torus",
    "CrossingRecord",
    "CutTangle",
    "End",
    "Slot",
    "SurfaceSpec",
    "crossing_sign",
    "mirror",
    "parse_tangle",
    "serialize",
    "validate",
    "writhe",
    "EmbeddingViolation",
    "InvalidTangle",
    "StateCapExceeded",
    "TangleSyntaxError",
    "ComponentCensus",
    "FlatValue",
    "LaurentPoly",
    "fv_add",
    "fv_scale",
    "loop_factor",
    "normalize_census",
    "render",
    "writhe_prefactor",
    "block_identities",
    "oracle_census",
    "trace_components",
    "SmoothedState",
    "enumerate_states",
    "flat_bracket",
    "flat_jones",
    "resolve_state",
]
