"""Closed-form and small dense linear algebra on 2x2 complex matrices.

Matrices are plain ``numpy`` arrays of shape ``(2, 2)`` and dtype
``complex128``; nothing here mutates its inputs.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError, DegenerateEquationError

SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)

HERMITIAN_TOL = 1e-9
SYMMETRIC_TOL = 1e-9
UNITARY_TOL = 1e-9
# pi0 - pi1 below this (relative to pi0) selects the closest-to-identity Takagi basis.
DEGENERATE_TOL = 1e-12


def as_c2x2(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.shape != (2, 2):
        raise ContractViolationError(f"expected a 2x2 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ContractViolationError("matrix has non-finite entries")
    return a


def _scale(m: np.ndarray) -> float:
    return max(1.0, float(np.abs(m).max()))


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    return bool(np.abs(m - m.conj().T).max() <= tol * _scale(m))


def is_symmetric(m, tol: float = SYMMETRIC_TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    return bool(np.abs(m - m.T).max() <= tol * _scale(m))


def is_unitary(m, tol: float = UNITARY_TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    return bool(np.abs(m @ m.conj().T - np.eye(n)).max() <= tol)


def max_singular_value(m) -> float:
    return float(np.linalg.svd(np.asarray(m, dtype=complex), compute_uv=False)[0])


def complement(v: np.ndarray) -> np.ndarray:
    """Unit vector orthogonal to the unit 2-vector ``v``."""
    return np.array([-np.conj(v[1]), np.conj(v[0])])


def hermitian_eig2(h, tol: float = HERMITIAN_TOL):
    """Eigen-decomposition of a 2x2 Hermitian matrix.

    Returns ``(evals, evecs)`` with ``evals[0] >= evals[1]`` and the
    eigenvectors as the orthonormal columns of ``evecs``.
    """
    h = as_c2x2(h)
    if not is_hermitian(h, tol):
        raise ContractViolationError("hermitian_eig2 needs a Hermitian matrix")
    a = h[0, 0].real
    d = h[1, 1].real
    b = 0.5 * (h[0, 1] + np.conj(h[1, 0]))
    mean = 0.5 * (a + d)
    radius = float(np.hypot(0.5 * (a - d), abs(b)))
    e0, e1 = mean + radius, mean - radius
    if abs(b) == 0.0:
        if a >= d:
            return np.array([a, d]), IDENTITY2.copy()
        return np.array([d, a]), np.array([[0, 1], [1, 0]], dtype=complex)
    # both candidates solve (H - e0) v = 0; the longer one avoids cancellation
    v_first = np.array([b, e0 - a])
    v_second = np.array([e0 - d, np.conj(b)])
    v0 = v_first if np.linalg.norm(v_first) >= np.linalg.norm(v_second) else v_second
    v0 = v0 / np.linalg.norm(v0)
    evecs = np.column_stack([v0, complement(v0)])
    return np.array([e0, e1]), evecs


def hermitian_eigvalsh(h) -> np.ndarray:
    """Descending eigenvalues of a Hermitian matrix of any small size."""
    h = np.asarray(h, dtype=complex)
    return np.linalg.eigvalsh(0.5 * (h + h.conj().T))[::-1]


@dataclass(frozen=True)
class TakagiResult:
    """``U @ S @ U.T == diag(pi0, pi1)`` with ``U`` unitary, ``pi0 >= pi1 >= 0``."""

    U: np.ndarray
    pi0: float
    pi1: float

    @property
    def diag(self) -> np.ndarray:
        return np.array([self.pi0, self.pi1])


def _phase_fix(u: np.ndarray, s: np.ndarray) -> np.ndarray:
    d = np.diag(u @ s @ u.T)
    return np.diag(np.exp(-0.5j * np.angle(d))) @ u


def _closest_to_identity(u: np.ndarray) -> np.ndarray:
    # for S ~ pi*I the Takagi unitaries are exactly {R @ u : R real orthogonal}
    # argmax over R of Re tr(R u) is the orthogonal polar factor of Re(u)^T
    x, _, yt = np.linalg.svd(u.real)
    return (yt.T @ x.T) @ u


def takagi2(s, tol: float = SYMMETRIC_TOL, degenerate_tol: float = DEGENERATE_TOL) -> TakagiResult:
    """Takagi factorization ``U S U^T = diag(pi0, pi1)`` of a complex symmetric 2x2.

    The leading Takagi vector ``w`` (``S w* = pi0 w``) is read off the top
    eigenvector of the real symmetric embedding ``[[Re S, Im S], [Im S, -Re S]]``,
    whose spectrum is ``{pi0, pi1, -pi1, -pi0}``. The second vector is its
    orthogonal complement, then a diagonal phase makes the diagonal real and
    non-negative. When ``pi0 == pi1`` the unitary closest to the identity is
    returned.
    """
    s = as_c2x2(s)
    if not is_symmetric(s, tol):
        raise ContractViolationError("takagi2 needs a symmetric matrix")
    s = 0.5 * (s + s.T)
    if not np.any(s):
        return TakagiResult(IDENTITY2.copy(), 0.0, 0.0)
    re, im = s.real, s.imag
    k = np.block([[re, im], [im, -re]])
    _, vecs = np.linalg.eigh(k)
    top = vecs[:, -1]
    w0 = top[:2] + 1j * top[2:]
    w0 = w0 / np.linalg.norm(w0)
    w = np.column_stack([w0, complement(w0)])
    u = _phase_fix(w.conj().T, s)
    pi0, pi1 = np.abs(np.diag(u @ s @ u.T))
    if pi1 > pi0:
        u = u[::-1]
        pi0, pi1 = pi1, pi0
    if pi0 - pi1 <= degenerate_tol * pi0:
        u = _closest_to_identity(u)
        u = _phase_fix(u, s)
    d = np.diag(u @ s @ u.T).real
    return TakagiResult(u, float(d[0]), float(min(d[0], d[1])))


def _normalize_root(r: np.ndarray) -> np.ndarray:
    # rescale first so subnormal inputs do not lose precision in the norm
    r = r / np.abs(r).max()
    r = r / np.linalg.norm(r)
    k = int(np.argmax(np.abs(r) > np.abs(r).max() * (1 - 1e-12)))
    r = r * np.exp(-1j * np.angle(r[k]))
    r[k] = abs(r[k])
    return r


def quad_roots_homogeneous(a, b, c, double_tol: float = 1e-12):
    """Projective roots ``(u:v)`` of ``a u^2 + b u v + c v^2 = 0``.

    Returns ``(roots, is_double)``: a ``(2, 2)`` array whose rows are unit
    vectors with the larger-modulus entry real positive, and whether the
    discriminant vanishes relative to the coefficients.
    """
    a, b, c = complex(a), complex(b), complex(c)
    scale = max(abs(a), abs(b), abs(c))
    if scale == 0.0:
        raise DegenerateEquationError("a = b = c = 0 has every (u:v) as a root")
    a, b, c = a / scale, b / scale, c / scale
    disc = b * b - 4 * a * c
    is_double = abs(disc) <= double_tol * (abs(b) ** 2 + 4 * abs(a * c))
    sq = np.sqrt(disc)
    if abs(b + sq) < abs(b - sq):
        sq = -sq
    q = -0.5 * (b + sq)
    # u/v = q/a and u/v = c/q
    r1 = np.array([q, a])
    r2 = np.array([c, q])
    if np.linalg.norm(r1) == 0.0:
        r1 = r2
    if np.linalg.norm(r2) == 0.0:
        r2 = r1
    if is_double:
        r2 = r1 if np.linalg.norm(r1) >= np.linalg.norm(r2) else r2
        r1 = r2
    return np.array([_normalize_root(r1), _normalize_root(r2)]), bool(is_double)
