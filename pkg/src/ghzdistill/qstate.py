"""Pure states of three qubits A, B, C and single-qubit operators on them.

Amplitudes are indexed by the basis label ``|abc>`` as ``4a + 2b + c``, so A
is the most significant bit and ``state.tensor[a, b, c]`` is the amplitude.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import ContractViolationError
from .smallmat import SIGMA2, as_c2x2, max_singular_value

QUBITS = ("A", "B", "C")
NORM_TOL = 1e-8
CONTRACTION_TOL = 1e-10

_SIGMA_YY = np.kron(SIGMA2, SIGMA2)


def qubit_index(qubit) -> int:
    if isinstance(qubit, (int, np.integer)) and 0 <= qubit < 3:
        return int(qubit)
    try:
        return QUBITS.index(str(qubit).upper())
    except ValueError:
        raise ValueError(f"unknown qubit {qubit!r}; expected one of A, B, C") from None


@dataclass(frozen=True)
class PureState3:
    """Eight complex amplitudes, possibly unnormalized.

    An unnormalized state is the output of a filtering branch; its squared
    norm is the probability of that branch and is kept, not divided out.
    """

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (8,):
            raise ValueError(f"a three-qubit state has 8 amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(2, 2, 2)

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm_sq - 1.0) <= tol

    def normalized(self) -> "PureState3":
        n = self.norm
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return PureState3(self.amplitudes / n)

    def __repr__(self):
        return f"PureState3({np.array2string(self.amplitudes, precision=6)}, norm_sq={self.norm_sq:.6g})"

    def to_json(self) -> dict:
        return {"amplitudes": [[float(z.real), float(z.imag)] for z in self.amplitudes]}

    @classmethod
    def from_json(cls, obj: dict) -> "PureState3":
        raw = obj["amplitudes"]
        if len(raw) != 8:
            raise ValueError("'amplitudes' must hold 8 entries")
        amps = []
        for pair in raw:
            if len(pair) != 2:
                raise ValueError("each amplitude is a [re, im] pair")
            amps.append(complex(float(pair[0]), float(pair[1])))
        return cls(np.array(amps))


def require_normalized(state: PureState3, tol: float = NORM_TOL) -> None:
    if not state.is_normalized(tol):
        raise ValueError(f"state must be normalized (norm^2 = {state.norm_sq!r})")


def basis_state(label: str) -> PureState3:
    amps = np.zeros(8, dtype=complex)
    amps[int(label, 2)] = 1.0
    return PureState3(amps)


def ghz_state() -> PureState3:
    amps = np.zeros(8, dtype=complex)
    amps[0] = amps[7] = 1 / np.sqrt(2)
    return PureState3(amps)


def w_state() -> PureState3:
    amps = np.zeros(8, dtype=complex)
    amps[[1, 2, 4]] = 1 / np.sqrt(3)
    return PureState3(amps)


def gghz_state(alpha: float, beta: float) -> PureState3:
    """``alpha |000> + beta |111>`` in the standard basis."""
    amps = np.zeros(8, dtype=complex)
    amps[0], amps[7] = alpha, beta
    return PureState3(amps)


GHZ = ghz_state()
W = w_state()


@dataclass(frozen=True)
class LocalOp:
    """A 2x2 operator acting on one qubit."""

    matrix: np.ndarray = field(repr=False)
    qubit: str = "A"

    def __post_init__(self):
        m = as_c2x2(self.matrix).copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "qubit", QUBITS[qubit_index(self.qubit)])

    @property
    def max_singular_value(self) -> float:
        return max_singular_value(self.matrix)

    def is_contraction(self, tol: float = CONTRACTION_TOL) -> bool:
        return self.max_singular_value <= 1.0 + tol

    def is_unitary(self, tol: float = 1e-9) -> bool:
        m = self.matrix
        return bool(np.abs(m @ m.conj().T - np.eye(2)).max() <= tol)

    def then(self, other: "LocalOp") -> "LocalOp":
        """The operator ``other @ self`` (apply self first)."""
        if other.qubit != self.qubit:
            raise ValueError("can only compose operators on the same qubit")
        return LocalOp(other.matrix @ self.matrix, self.qubit)

    def __repr__(self):
        return f"LocalOp({self.qubit}, {np.array2string(self.matrix, precision=6)})"


def identity_op(qubit) -> LocalOp:
    return LocalOp(np.eye(2), qubit)


def apply_local(state: PureState3, op: LocalOp) -> PureState3:
    """Apply ``op`` to its qubit; the result keeps whatever norm it ends up with."""
    q = qubit_index(op.qubit)
    t = np.tensordot(op.matrix, state.tensor, axes=([1], [q]))
    return PureState3(np.moveaxis(t, 0, q).reshape(8))


def apply_product(state: PureState3, ops: Iterable[LocalOp]) -> PureState3:
    for op in ops:
        state = apply_local(state, op)
    return state


def _keep_indices(keep) -> tuple[int, ...]:
    if isinstance(keep, str):
        keep = tuple(keep)
    idx = tuple(sorted({qubit_index(q) for q in keep}))
    if len(idx) not in (1, 2):
        raise ValueError("reduced_density keeps one or two qubits")
    return idx


def reduced_density(state: PureState3, keep) -> np.ndarray:
    """Partial trace over the qubits not in ``keep`` (e.g. ``"BC"`` or ``["A"]``)."""
    idx = _keep_indices(keep)
    traced = [q for q in range(3) if q not in idx]
    t = np.moveaxis(state.tensor, idx + tuple(traced), range(3))
    m = t.reshape(2 ** len(idx), -1)
    rho = m @ m.conj().T
    return 0.5 * (rho + rho.conj().T)


def concurrence2(rho, tol: float = 1e-10) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    Uses the singular values of ``sqrt(rho) (sy x sy) sqrt(rho)*``, which are
    the square roots of the eigenvalues of ``rho (sy x sy) rho* (sy x sy)``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ContractViolationError("concurrence2 needs a 4x4 density matrix")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise ContractViolationError("density matrix is not Hermitian")
    rho = 0.5 * (rho + rho.conj().T)
    w, v = np.linalg.eigh(rho)
    if w[0] < -tol:
        raise ContractViolationError(f"density matrix is not positive (min eigenvalue {w[0]:.3g})")
    sqrt_rho = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    s = np.linalg.svd(sqrt_rho @ _SIGMA_YY @ sqrt_rho.conj(), compute_uv=False)
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))


def pairwise_concurrences(state: PureState3) -> dict[str, float]:
    """Concurrence of each two-qubit marginal, keyed by the pair kept."""
    s = state.normalized()
    return {pair: concurrence2(reduced_density(s, pair)) for pair in ("BC", "AC", "AB")}


def fidelity_ghz(state: PureState3) -> float:
    """``|<GHZ|psi>|^2``; blind to the global phase of ``psi`` by construction."""
    return float(abs(np.vdot(GHZ.amplitudes, state.amplitudes)) ** 2)


def fidelity_ghz_max_phase(state: PureState3) -> float:
    # the overlap modulus already maximizes over exp(i*theta)
    return fidelity_ghz(state)


def haar_random(seed) -> PureState3:
    """Haar-random pure state from ``seed`` (an int or a ``numpy.random.Generator``).

    Draws eight standard complex Gaussians ``x + iy`` from numpy's PCG64
    generator and normalizes. Integer seeds give the same state every call.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    z = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    return PureState3(z / np.linalg.norm(z))


def random_invertible(rng: np.random.Generator, cond_max: float = 50.0) -> np.ndarray:
    """Random 2x2 complex matrix with condition number at most ``cond_max``."""
    while True:
        m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        if np.linalg.cond(m) <= cond_max:
            return m


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
