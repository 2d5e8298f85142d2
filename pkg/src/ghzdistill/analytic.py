"""Closed-form distillation for states in the five-term canonical form

    lambda0|000> + lambda1 e^{i phi}|100> + lambda2|101> + lambda3|110> + lambda4|111>

with real non-negative ``lambda`` and ``phi`` in ``[0, pi]``. Everything here
is evaluated from ``lambda`` and ``phi`` directly and serves as an oracle for
the numeric pipeline in :mod:`ghzdistill.distill`.

Two sign conventions differ from the textbook expressions. The qubit A
rotation needs a bit flip between its phase and rotation parts,
``U_A0 = exp(-i th2 sy) sx exp(-i th3 sz)``, and the primed basis of A carries
the opposite sign on its ``|1>`` component. The diagonal phase ``U_R1`` and the
phases of the primed A vectors are computed rather than fixed constants.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distill import (
    GENERALIZED_GHZ,
    GHZ_CLASS,
    DistillationPlan,
    StateClass,
    classify,
)
from .errors import NonDistillableError
from .qstate import QUBITS, LocalOp, PureState3, apply_product
from .smallmat import SIGMA1
from .wootters import marginal_pair, snap_pi, tau_matrix

CANONICAL_NORM_TOL = 1e-10


@dataclass(frozen=True)
class CanonicalState:
    lambdas: tuple[float, float, float, float, float]
    phi: float = 0.0

    def __post_init__(self):
        lam = tuple(float(x) for x in self.lambdas)
        if len(lam) != 5:
            raise ValueError("the canonical form has five coefficients")
        if any(x < 0 or not np.isfinite(x) for x in lam):
            raise ValueError("canonical coefficients must be finite and non-negative")
        if not 0.0 <= self.phi <= np.pi:
            raise ValueError("phi must lie in [0, pi]")
        if abs(sum(x * x for x in lam) - 1.0) > CANONICAL_NORM_TOL:
            raise ValueError("canonical coefficients must have unit norm")
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "phi", float(self.phi))

    @classmethod
    def from_json(cls, obj: dict) -> "CanonicalState":
        return cls(tuple(float(x) for x in obj["lambda"]), float(obj.get("phi", 0.0)))

    def to_json(self) -> dict:
        return {"lambda": list(self.lambdas), "phi": self.phi}


def to_amplitudes(c: CanonicalState) -> PureState3:
    l0, l1, l2, l3, l4 = c.lambdas
    amps = np.zeros(8, dtype=complex)
    amps[0b000] = l0
    amps[0b100] = l1 * np.exp(1j * c.phi)
    amps[0b101] = l2
    amps[0b110] = l3
    amps[0b111] = l4
    return PureState3(amps)


@dataclass(frozen=True)
class AnalyticIntermediates:
    delta: complex
    pi: dict
    theta2: float
    theta3: float
    theta_b: float
    theta_c: float
    ratio_raw: float
    ratio: float
    swapped: bool


def _delta(c: CanonicalState) -> complex:
    l0, l1, l2, l3, l4 = c.lambdas
    return l2 * l3 - l1 * l4 * np.exp(1j * c.phi)


def _theta3(delta: complex) -> float:
    # -arctan((|D| + Re D) / Im D); the ReD < 0 branch is the same quantity without cancellation
    mod, re, im = abs(delta), delta.real, delta.imag
    if im == 0.0:
        return -np.pi / 2 if mod + re > 0 else 0.0
    if re < 0:
        return float(-np.arctan(im / (mod - re)))
    return float(-np.arctan((mod + re) / im))


def _require_distillable(c: CanonicalState) -> None:
    l0, _, _, _, l4 = c.lambdas
    if l0 == 0.0 or l4 == 0.0:
        raise NonDistillableError(classify(to_amplitudes(c)))


def intermediates(c: CanonicalState) -> AnalyticIntermediates:
    _require_distillable(c)
    l0, l1, l2, l3, l4 = c.lambdas
    delta = _delta(c)
    mod = abs(delta)
    r_a = np.hypot(mod, l0 * l4)
    r_b = np.hypot(l2, l4)
    r_c = np.hypot(l3, l4)
    # each pi1 uses pi0 * pi1 = (l0 l4)^2 to avoid cancellation
    pi_a0 = r_a + mod
    pi_b0 = l0 * (r_b + l2)
    pi_c0 = l0 * (r_c + l3)
    prod = (l0 * l4) ** 2
    pi = {
        "A": (pi_a0, prod / pi_a0),
        "B": (pi_b0, l0 * l4 * l4 / (r_b + l2)),
        "C": (pi_c0, l0 * l4 * l4 / (r_c + l3)),
    }
    theta2 = float(np.arctan(-l0 * l4 / (mod + r_a)))
    theta_b = float(np.arctan(-l4 / (l2 + r_b)))
    theta_c = float(np.arctan(-l4 / (l3 + r_c)))
    ratio_raw = float(np.sqrt((l2**2 + l4**2) * (l3**2 + l4**2) / (mod**2 + prod)))
    swapped = ratio_raw > 1.0
    ratio = 1.0 / ratio_raw if swapped else ratio_raw
    return AnalyticIntermediates(delta, pi, theta2, _theta3(delta), theta_b, theta_c, ratio_raw, ratio, swapped)


def gghz_conditions(c: CanonicalState, tol: float = 1e-9) -> bool:
    """Pairwise-separability conditions on the canonical coefficients."""
    l0, _, l2, l3, _ = c.lambdas
    return abs(_delta(c)) <= tol and l0 * l2 <= tol and l0 * l3 <= tol


def _rot2(theta: float) -> np.ndarray:
    """``exp(-i theta sigma_y)``."""
    ct, st = np.cos(theta), np.sin(theta)
    return np.array([[ct, -st], [st, ct]], dtype=complex)


def _phase3(theta: float) -> np.ndarray:
    """``exp(-i theta sigma_z)``."""
    return np.diag([np.exp(-1j * theta), np.exp(1j * theta)])


def rotation_parts(inter: AnalyticIntermediates) -> dict[str, np.ndarray]:
    """``U_R0`` for each qubit, diagonalizing ``tau tau*``."""
    return {
        "A": _rot2(inter.theta2) @ SIGMA1 @ _phase3(inter.theta3),
        "B": _rot2(inter.theta_b),
        "C": _rot2(inter.theta_c),
    }


def _diag_phase(u0: np.ndarray, tau: np.ndarray) -> np.ndarray:
    d = np.diag(u0 @ tau @ u0.T)
    return np.diag(np.exp(-0.5j * np.angle(d)))


def primed_basis(theta: float, theta3: float = 0.0) -> np.ndarray:
    """Rows ``|0'>``, ``|1'>`` of the generalized GHZ basis for rotation angle ``theta``."""
    ct, st = np.cos(theta), np.sin(theta)
    k = np.sqrt(2) * 1j / 2
    e_m, e_p = np.exp(-1j * theta3), np.exp(1j * theta3)
    return k * np.array([
        [(ct + st) * e_m, (ct - st) * e_p],
        [(ct - st) * e_m, -(ct + st) * e_p],
    ])


def primed_bases(inter: AnalyticIntermediates) -> dict[str, np.ndarray]:
    return {
        "A": primed_basis(inter.theta2, inter.theta3) @ np.diag([1.0, -1.0]),
        "B": primed_basis(inter.theta_b),
        "C": primed_basis(inter.theta_c),
    }


def analytic_filters(c: CanonicalState, inter: AnalyticIntermediates | None = None) -> list[LocalOp]:
    inter = inter or intermediates(c)
    state = to_amplitudes(c)
    out = []
    for q, u0 in rotation_parts(inter).items():
        pi0, pi1 = inter.pi[q]
        if snap_pi(pi0, pi1) == 0.0:
            raise NonDistillableError(StateClass("WClass"), f"pi1 of qubit {q} is below the snap threshold")
        u = _diag_phase(u0, tau_matrix(marginal_pair(state, q))) @ u0
        d = np.diag([np.sqrt(pi1 / pi0), 1.0])
        out.append(LocalOp(u.T @ d @ u.conj(), q))
    return out


def analytic_plan(c: CanonicalState, balance_qubit="C") -> DistillationPlan:
    """Distillation operators assembled from the closed-form parameters."""
    inter = intermediates(c)
    state = to_amplitudes(c)
    filters = analytic_filters(c, inter)
    bases = primed_bases(inter)
    filtered = apply_product(state, filters)
    # absorb the residual phases of the two surviving terms into the A vectors
    g = np.einsum("ai,bj,ck,ijk->abc", bases["A"].conj(), bases["B"].conj(), bases["C"].conj(), filtered.tensor)
    bases["A"] = np.diag(np.exp(1j * np.angle([g[0, 0, 0], g[1, 1, 1]]))) @ bases["A"]
    if inter.swapped:
        bases = {q: b[::-1] for q, b in bases.items()}
    ops = []
    for q, f in zip(QUBITS, filters):
        m = f.matrix
        if q == balance_qubit:
            m = bases[q].T @ np.diag([1.0, inter.ratio]) @ bases[q].conj() @ m
        ops.append(LocalOp(bases[q].conj() @ m, q))
    n = apply_product(state, ops).norm_sq
    l0, _, _, _, l4 = c.lambdas
    if gghz_conditions(c):
        alpha, beta = sorted((l0, l4))
        state_class = StateClass(GENERALIZED_GHZ, alpha=alpha, beta=beta)
    else:
        state_class = StateClass(GHZ_CLASS)
    return DistillationPlan(
        *ops,
        success_probability=n,
        state_class=state_class,
        pi_table={q: list(p) for q, p in inter.pi.items()},
        balance_qubit=balance_qubit,
    )
