"""Wootters representation of a three-qubit pure state about one qubit.

For qubit R the state splits as ``sum_i |i_R>|phi_i>`` with two sub-normalized
two-qubit vectors. The symmetric overlap matrix ``tau[i, j] = <phi_i|phi~_j>``
against the spin-flipped partners has a Takagi factorization
``U tau U^T = diag(pi0, pi1)``, and ``pi0 - pi1`` is the concurrence of the
two remaining qubits.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .qstate import QUBITS, PureState3, qubit_index
from .smallmat import SIGMA2, takagi2

_SIGMA_YY = np.kron(SIGMA2, SIGMA2).real.astype(complex)

# pi1 is snapped to zero below this fraction of pi0
SNAP_REL = 1e-9
SNAP_FLOOR = 1e-30


@dataclass(frozen=True)
class MarginalPair:
    qubit: str
    phi0: np.ndarray = field(repr=False)
    phi1: np.ndarray = field(repr=False)

    @property
    def matrix(self) -> np.ndarray:
        """Columns are ``phi0`` and ``phi1``."""
        return np.column_stack([self.phi0, self.phi1])

    def reassemble(self) -> PureState3:
        q = qubit_index(self.qubit)
        t = np.stack([self.phi0, self.phi1]).reshape(2, 2, 2)
        return PureState3(np.moveaxis(t, 0, q).reshape(8))


def marginal_pair(state: PureState3, qubit) -> MarginalPair:
    q = qubit_index(qubit)
    rows = np.moveaxis(state.tensor, q, 0).reshape(2, 4)
    return MarginalPair(QUBITS[q], rows[0].copy(), rows[1].copy())


def spin_flip2(v) -> np.ndarray:
    """Time reversal ``(sy x sy) v*`` of a two-qubit vector."""
    return _SIGMA_YY @ np.conj(np.asarray(v, dtype=complex))


def tau_matrix(pair: MarginalPair) -> np.ndarray:
    phi = pair.matrix
    tau = phi.conj().T @ _SIGMA_YY @ phi.conj()
    return 0.5 * (tau + tau.T)


@dataclass(frozen=True)
class WoottersRep:
    qubit: str
    U: np.ndarray = field(repr=False)
    pi0: float
    pi1: float
    pi1_raw: float = field(default=0.0, repr=False)

    @property
    def ratio(self) -> float:
        """``pi1 / pi0``; zero for a snapped ``pi1``."""
        return self.pi1 / self.pi0 if self.pi0 > 0 else 0.0

    @property
    def concurrence(self) -> float:
        return self.pi0 - self.pi1_raw

    @property
    def is_w_like(self) -> bool:
        return self.pi1 == 0.0

    def transformed_vectors(self, state: PureState3) -> np.ndarray:
        """Columns ``x_i = sum_j conj(U[i, j]) phi_j``."""
        return marginal_pair(state, self.qubit).matrix @ self.U.conj().T


def snap_pi(pi0: float, pi1: float) -> float:
    return 0.0 if pi1 < SNAP_REL * max(pi0, SNAP_FLOOR) else pi1


def wootters_rep(state: PureState3, qubit) -> WoottersRep:
    pair = marginal_pair(state, qubit)
    t = takagi2(tau_matrix(pair))
    return WoottersRep(pair.qubit, t.U, t.pi0, snap_pi(t.pi0, t.pi1), t.pi1)


def wootters_reps(state: PureState3) -> tuple[WoottersRep, WoottersRep, WoottersRep]:
    return tuple(wootters_rep(state, q) for q in QUBITS)
