"""Finite real-valued generalized metric spaces over the extended reals.

Costs live in ``[-inf, +inf]`` with exact rational finite values.  Spaces
may be asymmetric, take negative values and have flat points (self-cost
``-inf``).  The package builds products, tensors, quotients and mapping
spaces, symmetrizes, derives topologies and preorders, and values paths.
"""

from __future__ import annotations

from .constructions import (
    EquivRelation,
    QuotientResult,
    coproduct,
    curry,
    equalizer,
    exponential,
    one_lipschitz_maps,
    product,
    quotient,
    tensor,
    terminal,
    uncurry,
)
from .extended_reals import NEG_INF, ONE, POS_INF, ZERO, ExtReal, ediff, esum, ext, parse_ext, render_ext
from .paths import LineKind, PLPath, StepPath, grid_line, pl_valuation, step_valuation
from .space import (
    AxiomError,
    CapExceeded,
    FiniteRhoSpace,
    NotLipschitz,
    PointMap,
    RhoError,
    StructuralError,
    classify,
    lipschitz_weight,
    opposite,
    require_valid,
    validate,
)
from .symmetry import coreflective_preorder, coreflective_sym, reflective_preorder, reflective_sym
from .topology import FiniteTopology, future_topology, past_topology

__version__ = "0.1.0"

__all__ = [
    "ExtReal", "NEG_INF", "POS_INF", "ZERO", "ONE", "ext", "esum", "ediff", "parse_ext", "render_ext",
    "FiniteRhoSpace", "PointMap", "validate", "require_valid", "classify", "opposite", "lipschitz_weight",
    "RhoError", "StructuralError", "AxiomError", "CapExceeded", "NotLipschitz",
    "product", "tensor", "coproduct", "equalizer", "quotient", "exponential", "curry", "uncurry",
    "one_lipschitz_maps", "terminal", "EquivRelation", "QuotientResult",
    "reflective_sym", "coreflective_sym", "reflective_preorder", "coreflective_preorder",
    "FiniteTopology", "future_topology", "past_topology",
    "LineKind", "StepPath", "PLPath", "grid_line", "step_valuation", "pl_valuation",
]
