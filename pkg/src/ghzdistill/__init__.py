"""Single-copy distillation of a GHZ state from a pure three-qubit state by local filters."""

__version__ = "0.1.0"

from .analytic import CanonicalState, analytic_plan, gghz_conditions, intermediates, to_amplitudes
from .distill import (
    DistillationPlan,
    GghzForm,
    StateClass,
    balance_op,
    classify,
    distill_plan,
    extract_gghz,
    fidelity_after,
    filter_op,
    revert_unitary,
    success_probability,
)
from .errors import NonDistillableError, NotGghzError, WClassError
from .qstate import GHZ, W, LocalOp, PureState3, apply_local, concurrence2, fidelity_ghz, haar_random, reduced_density
from .wootters import WoottersRep, wootters_rep

__all__ = [
    "CanonicalState", "DistillationPlan", "GHZ", "GghzForm", "LocalOp", "NonDistillableError",
    "NotGghzError", "PureState3", "StateClass", "W", "WClassError", "WoottersRep", "analytic_plan",
    "apply_local", "balance_op", "classify", "concurrence2", "distill_plan", "extract_gghz", "fidelity_after",
    "fidelity_ghz", "filter_op", "gghz_conditions", "haar_random", "intermediates",
    "reduced_density", "revert_unitary", "success_probability", "to_amplitudes", "wootters_rep",
]
