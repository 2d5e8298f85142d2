"""Numeric single-copy GHZ distillation.

Pipeline for a genuinely tripartite state with nonzero ``pi1`` on every qubit:

1. filter each qubit with ``f_R = U_R^T diag(sqrt(pi1/pi0), 1) U_R^*``, which
   balances its Wootters parameters and leaves every pair separable;
2. read the resulting generalized GHZ form ``alpha|0'0'0'> + beta|1'1'1'>``;
3. damp the heavier branch on one qubit by ``alpha/beta``;
4. rotate the primed bases back to the standard basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    ContractViolationError,
    DegenerateEquationError,
    DegenerateFormError,
    NonDistillableError,
    NotGghzError,
    WClassError,
)
from .qstate import (
    CONTRACTION_TOL,
    QUBITS,
    LocalOp,
    PureState3,
    apply_local,
    apply_product,
    fidelity_ghz,
    qubit_index,
    reduced_density,
    require_normalized,
)
from .smallmat import hermitian_eig2, is_unitary, quad_roots_homogeneous
from .wootters import WoottersRep, wootters_reps

DEFAULT_TOL = 1e-9
BALANCED_TOL = 1e-9

PRODUCT = "Product"
BISEPARABLE = "Biseparable"
WCLASS = "WClass"
GHZ_CLASS = "GhzClass"
GENERALIZED_GHZ = "GeneralizedGhz"
CLASS_TAGS = (PRODUCT, BISEPARABLE, WCLASS, GHZ_CLASS, GENERALIZED_GHZ)
DISTILLABLE = (GHZ_CLASS, GENERALIZED_GHZ)

CUTS = {"A": "A|BC", "B": "B|AC", "C": "C|AB"}


@dataclass(frozen=True)
class StateClass:
    tag: str
    cut: Optional[str] = None
    alpha: Optional[float] = None
    beta: Optional[float] = None
    note: Optional[str] = None

    def __post_init__(self):
        if self.tag not in CLASS_TAGS:
            raise ValueError(f"unknown state class {self.tag!r}")

    @property
    def distillable(self) -> bool:
        return self.tag in DISTILLABLE

    def __str__(self):
        if self.tag == BISEPARABLE:
            return f"Biseparable({self.cut})"
        if self.tag == GENERALIZED_GHZ:
            return f"GeneralizedGhz({self.alpha:.6g}, {self.beta:.6g})"
        return self.tag

    def to_json(self) -> dict:
        out = {"class": self.tag}
        if self.cut is not None:
            out["cut"] = self.cut
        if self.alpha is not None:
            out["alpha"] = self.alpha
            out["beta"] = self.beta
        if self.note is not None:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class GghzForm:
    """``alpha |0'0'0'> + beta |1'1'1'>``; each basis holds ``|0'>``, ``|1'>`` as rows."""

    alpha: float
    beta: float
    basis_a: np.ndarray = field(repr=False)
    basis_b: np.ndarray = field(repr=False)
    basis_c: np.ndarray = field(repr=False)
    residual: float = 0.0

    def basis(self, qubit) -> np.ndarray:
        return (self.basis_a, self.basis_b, self.basis_c)[qubit_index(qubit)]

    def reconstruct(self) -> PureState3:
        a, b, c = self.basis_a, self.basis_b, self.basis_c
        t = self.alpha * np.einsum("i,j,k->ijk", a[0], b[0], c[0])
        t = t + self.beta * np.einsum("i,j,k->ijk", a[1], b[1], c[1])
        return PureState3(t.reshape(8))


@dataclass(frozen=True)
class DistillationPlan:
    tA: LocalOp
    tB: LocalOp
    tC: LocalOp
    success_probability: float
    state_class: StateClass
    pi_table: dict = field(default_factory=dict)
    balance_qubit: str = "C"
    form: Optional[GghzForm] = field(default=None, repr=False)

    @property
    def ops(self) -> tuple[LocalOp, LocalOp, LocalOp]:
        return (self.tA, self.tB, self.tC)


def _single_qubit_purity(state: PureState3) -> dict[str, float]:
    return {q: float(hermitian_eig2(reduced_density(state, q))[0][0]) for q in QUBITS}


def pi_table(reps) -> dict[str, list[float]]:
    return {r.qubit: [r.pi0, r.pi1_raw] for r in reps}


def classify(state: PureState3, tol: float = DEFAULT_TOL) -> StateClass:
    """SLOCC-style class of a normalized state.

    Marginals with largest eigenvalue ``>= 1 - tol`` count as pure. A
    genuinely tripartite state is W class when a Wootters ``pi1`` snaps to
    zero and GHZ class otherwise; it is reported as a generalized GHZ state
    when every pair is also separable and the two-term form is recovered.
    """
    require_normalized(state)
    purity = _single_qubit_purity(state)
    pure = [q for q in QUBITS if purity[q] >= 1.0 - tol]
    if len(pure) == 3:
        return StateClass(PRODUCT)
    if pure:
        purest = max(pure, key=lambda q: purity[q])
        note = None
        if len(pure) > 1:
            note = "pure marginals on " + ",".join(pure)
        return StateClass(BISEPARABLE, cut=CUTS[purest], note=note)
    reps = wootters_reps(state)
    if any(r.is_w_like for r in reps):
        return StateClass(WCLASS)
    if all(r.pi0 - r.pi1_raw <= tol for r in reps):
        try:
            form = extract_gghz(state, tol)
        except NotGghzError:
            return StateClass(GHZ_CLASS)
        return StateClass(GENERALIZED_GHZ, alpha=form.alpha, beta=form.beta)
    return StateClass(GHZ_CLASS)


def filter_op(rep: WoottersRep) -> LocalOp:
    """Local filter that equalizes the Wootters parameters of ``rep.qubit``."""
    if rep.pi1 == 0.0:
        raise WClassError(StateClass(WCLASS), f"pi1 of qubit {rep.qubit} is zero; the filter would disentangle the state")
    u = rep.U
    d = np.diag([np.sqrt(rep.pi1 / rep.pi0), 1.0])
    return LocalOp(u.T @ d @ u.conj(), rep.qubit)


def _nearest_unitary(m: np.ndarray) -> np.ndarray:
    x, _, yh = np.linalg.svd(m)
    return x @ yh


def _conditional_matrices(t: np.ndarray):
    m0, m1 = t[0], t[1]
    a = np.linalg.det(m0)
    c = np.linalg.det(m1)
    b = m0[0, 0] * m1[1, 1] + m1[0, 0] * m0[1, 1] - m0[0, 1] * m1[1, 0] - m1[0, 1] * m0[1, 0]
    return m0, m1, (a, b, c)


def extract_gghz(state: PureState3, tol: float = DEFAULT_TOL) -> GghzForm:
    """Recover ``alpha |0'0'0'> + beta |1'1'1'>`` from a generalized GHZ state.

    The directions on A that leave B and C in a product state solve
    ``det(u M0 + v M1) = 0``, where ``M_i`` is the BC amplitude block with A
    in ``|i>``. Each root yields one product term; the state may be
    unnormalized and is normalized first.
    """
    s = state.normalized()
    m0, m1, coeffs = _conditional_matrices(s.tensor)
    try:
        roots, is_double = quad_roots_homogeneous(*coeffs)
    except DegenerateEquationError:
        raise NotGghzError("A is not entangled with BC") from None
    if is_double:
        raise NotGghzError("double root: the state has no two-term product form (W-like)")
    rows_a, rows_b, rows_c = [], [], []
    for u, v in roots:
        x, _, yh = np.linalg.svd(u * m0 + v * m1)
        rows_a.append(np.conj([u, v]))
        rows_b.append(x[:, 0])
        rows_c.append(yh[0])
    basis_a = _nearest_unitary(np.array(rows_a))
    basis_b = _nearest_unitary(np.array(rows_b))
    basis_c = _nearest_unitary(np.array(rows_c))
    g = np.einsum("ai,bj,ck,ijk->abc", basis_a.conj(), basis_b.conj(), basis_c.conj(), s.tensor)
    gamma = np.array([g[0, 0, 0], g[1, 1, 1]])
    off = g.copy()
    off[0, 0, 0] = off[1, 1, 1] = 0.0
    residual = float(np.linalg.norm(off))
    if residual > tol:
        raise NotGghzError(f"off-form weight {residual:.3g} exceeds tolerance {tol:.3g}")
    basis_a = np.diag(np.exp(1j * np.angle(gamma))) @ basis_a
    alpha, beta = np.abs(gamma)
    if alpha > beta:
        alpha, beta = beta, alpha
        basis_a, basis_b, basis_c = basis_a[::-1], basis_b[::-1], basis_c[::-1]
    return GghzForm(float(alpha), float(beta), basis_a, basis_b, basis_c, residual)


def balance_op(form: GghzForm, target="C") -> LocalOp:
    """``|0'><0'| + (alpha/beta)|1'><1'|`` on ``target``; identity when balanced."""
    if form.beta <= 0.0:
        raise DegenerateFormError("beta = 0: the state is a product state")
    if form.beta - form.alpha <= BALANCED_TOL:
        return LocalOp(np.eye(2), target)
    basis = form.basis(target)
    d = np.diag([1.0, form.alpha / form.beta])
    return LocalOp(basis.T @ d @ basis.conj(), target)


def revert_unitary(basis, qubit="A") -> LocalOp:
    """``|0><0'| + |1><1'|`` for a basis given as rows ``|0'>``, ``|1'>``."""
    basis = np.asarray(basis, dtype=complex)
    if basis.shape != (2, 2) or not is_unitary(basis):
        raise ContractViolationError("primed basis must be a 2x2 unitary")
    return LocalOp(basis.conj(), qubit)


def distill_plan(state: PureState3, tol: float = DEFAULT_TOL, balance_qubit="C") -> DistillationPlan:
    """Local operators ``T_A, T_B, T_C`` taking ``state`` to GHZ, with their success probability."""
    require_normalized(state)
    state_class = classify(state, tol)
    if not state_class.distillable:
        raise NonDistillableError(state_class)
    balance_qubit = QUBITS[qubit_index(balance_qubit)]
    reps = wootters_reps(state)
    filters = [filter_op(r) for r in reps]
    filtered = apply_product(state, filters)
    form = extract_gghz(filtered, tol)
    balance = balance_op(form, balance_qubit)
    p_filter = filtered.norm_sq
    p_balance = apply_local(filtered.normalized(), balance).norm_sq
    ops = []
    for q, f in zip(QUBITS, filters):
        op = balance.then(revert_unitary(form.basis(q), q)) if q == balance_qubit else revert_unitary(form.basis(q), q)
        ops.append(f.then(op))
    return DistillationPlan(
        *ops,
        success_probability=p_filter * p_balance,
        state_class=state_class,
        pi_table=pi_table(reps),
        balance_qubit=balance_qubit,
        form=form,
    )


def check_contractions(ops, tol: float = CONTRACTION_TOL) -> None:
    for op in ops:
        if not op.is_contraction(tol):
            raise ContractViolationError(
                f"operator on {op.qubit} has singular value {op.max_singular_value:.12g} > 1"
            )


def apply_plan(state: PureState3, plan: DistillationPlan) -> PureState3:
    """Unnormalized output of the successful branch."""
    return apply_product(state, plan.ops)


def success_probability(state: PureState3, plan: DistillationPlan) -> float:
    check_contractions(plan.ops)
    return apply_plan(state, plan).norm_sq


def fidelity_after(state: PureState3, plan: DistillationPlan) -> float:
    out = apply_plan(state, plan)
    if out.norm_sq == 0.0:
        return 0.0
    return fidelity_ghz(out.normalized())
