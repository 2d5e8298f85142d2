import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghzdistill.errors import ContractViolationError, DegenerateEquationError
from ghzdistill.smallmat import (
    SIGMA1,
    SIGMA2,
    SIGMA3,
    hermitian_eig2,
    is_hermitian,
    is_symmetric,
    is_unitary,
    quad_roots_homogeneous,
    takagi2,
)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)


def projective_equal(r, s, tol=1e-12):
    # (u:v) ~ (u':v') iff the 2x2 determinant vanishes
    return abs(r[0] * s[1] - r[1] * s[0]) <= tol


def test_pauli_constants():
    assert np.allclose(SIGMA1 @ SIGMA2, 1j * SIGMA3)
    for s in (SIGMA1, SIGMA2, SIGMA3):
        assert is_hermitian(s) and is_unitary(s)
        assert np.allclose(s @ s, np.eye(2))


def test_predicates():
    assert is_symmetric([[1, 2j], [2j, 3]])
    assert not is_symmetric([[1, 2j], [-2j, 3]])
    assert is_hermitian([[1, 2j], [-2j, 3]])
    assert not is_unitary([[1, 0], [0, 2]])


class TestHermitianEig2:
    def test_identity(self):
        evals, evecs = hermitian_eig2(np.eye(2))
        assert np.allclose(evals, [1, 1])
        assert np.allclose(evecs.conj().T @ evecs, np.eye(2))

    def test_diagonal(self):
        evals, evecs = hermitian_eig2(np.diag([3.0, 1.0]))
        assert np.allclose(evals, [3, 1])
        assert np.allclose(np.abs(evecs), np.eye(2))

    def test_diagonal_reversed(self):
        evals, evecs = hermitian_eig2(np.diag([1.0, 3.0]))
        assert np.allclose(evals, [3, 1])
        assert np.allclose(np.abs(evecs), [[0, 1], [1, 0]])

    def test_by_hand(self):
        # det([[2-e, 1], [1, 2-e]]) = (e-3)(e-1)
        evals, evecs = hermitian_eig2([[2, 1], [1, 2]])
        assert np.allclose(evals, [3, 1], atol=1e-15)
        assert abs(abs(np.vdot(evecs[:, 0], [1, 1])) / np.sqrt(2) - 1) < 1e-14
        assert abs(abs(np.vdot(evecs[:, 1], [1, -1])) / np.sqrt(2) - 1) < 1e-14

    def test_rejects_non_hermitian(self):
        with pytest.raises(ContractViolationError):
            hermitian_eig2([[1, 2], [0, 1]])

    def test_random(self, rng):
        for _ in range(2000):
            a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            h = a + a.conj().T
            evals, v = hermitian_eig2(h)
            scale = np.linalg.norm(h, 2)
            assert evals[0] >= evals[1]
            assert np.abs(h @ v - v * evals).max() <= 1e-12 * scale
            assert np.abs(v.conj().T @ v - np.eye(2)).max() <= 1e-13


class TestTakagi2:
    def test_zero(self):
        t = takagi2(np.zeros((2, 2)))
        assert t.pi0 == t.pi1 == 0.0
        assert np.array_equal(t.U, np.eye(2))

    def test_ghz_tau(self):
        s = np.array([[0, -0.5], [-0.5, 0]])
        t = takagi2(s)
        assert t.pi0 == pytest.approx(0.5, abs=1e-15)
        assert t.pi1 == pytest.approx(0.5, abs=1e-15)
        assert np.abs(t.U @ s @ t.U.T - np.diag([0.5, 0.5])).max() < 1e-15
        # S S* = I/4
        assert np.allclose(s @ s.conj(), np.eye(2) / 4)

    def test_phase_absorption(self):
        s = np.diag([2, 1j])
        t = takagi2(s)
        assert (t.pi0, t.pi1) == pytest.approx((2, 1), abs=1e-15)
        assert np.abs(t.U @ s @ t.U.T - np.diag([2, 1])).max() < 1e-15
        assert np.allclose(t.U, np.diag([1, np.exp(-1j * np.pi / 4)]))

    def test_degenerate_is_closest_to_identity(self, rng):
        # every Takagi unitary of a multiple of a symmetric unitary is R @ U with R real orthogonal
        for _ in range(50):
            z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            q = np.linalg.qr(z)[0]
            s = 0.7 * q @ q.T
            t = takagi2(s)
            assert t.pi0 == pytest.approx(0.7, abs=1e-14)
            best = np.linalg.norm(t.U - np.eye(2))
            for ang in np.linspace(0, 2 * np.pi, 181):
                r = np.array([[np.cos(ang), -np.sin(ang)], [np.sin(ang), np.cos(ang)]])
                for refl in (np.eye(2), np.diag([1, -1])):
                    assert np.linalg.norm(refl @ r @ t.U - np.eye(2)) >= best - 1e-9

    def test_rejects_asymmetric(self):
        with pytest.raises(ContractViolationError):
            takagi2([[0, 1], [0, 0]])

    def test_random_reconstruction_and_eigen_oracle(self, rng):
        worst_rec = worst_unit = worst_pi = 0.0
        for k in range(10_000):
            a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            s = a + a.T
            if k % 3 == 0:
                s *= rng.uniform() ** 6
            t = takagi2(s)
            scale = max(1.0, np.abs(s).max())
            worst_rec = max(worst_rec, np.abs(t.U @ s @ t.U.T - np.diag(t.diag)).max() / scale)
            worst_unit = max(worst_unit, np.abs(t.U @ t.U.conj().T - np.eye(2)).max())
            evals, _ = hermitian_eig2(s @ s.conj())
            oracle = np.sqrt(np.clip(evals, 0, None))
            worst_pi = max(worst_pi, np.abs(oracle - t.diag).max() / scale)
            assert t.pi0 >= t.pi1 >= 0
        assert worst_rec <= 1e-10
        assert worst_unit <= 1e-12
        assert worst_pi <= 1e-10

    def test_near_degenerate(self, rng):
        q = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))[0]
        for eps in (0.0, 1e-15, 1e-12, 1e-11, 1e-9, 1e-6):
            s = q @ np.diag([1.0, 1.0 - eps]) @ q.T
            t = takagi2(s)
            err = np.abs(t.U @ s @ t.U.T - np.diag(t.diag)).max()
            # inside the degenerate window the basis choice costs at most the gap itself
            assert err <= 1e-10
            assert err <= max(1e-14, 2e-12 if eps <= 1e-12 else 1e-14)
            assert t.pi0 - t.pi1 == pytest.approx(eps, abs=2e-12)


class TestQuadRoots:
    def test_difference_of_squares(self):
        roots, double = quad_roots_homogeneous(1, 0, -1)
        assert not double
        found = sorted(roots.tolist(), key=lambda r: r[1].real)
        assert projective_equal(found[0], [1, -1]) and projective_equal(found[1], [1, 1])

    def test_uv(self):
        roots, double = quad_roots_homogeneous(0, 1, 0)
        assert not double
        assert any(projective_equal(r, [1, 0]) for r in roots)
        assert any(projective_equal(r, [0, 1]) for r in roots)

    def test_perfect_square(self):
        roots, double = quad_roots_homogeneous(1, -2, 1)
        assert double
        assert all(projective_equal(r, [1, 1]) for r in roots)

    @pytest.mark.parametrize("coeffs, root", [((0, 0, 1), [1, 0]), ((1, 0, 0), [0, 1])])
    def test_degenerate_double(self, coeffs, root):
        roots, double = quad_roots_homogeneous(*coeffs)
        assert double
        assert all(projective_equal(r, root) for r in roots)

    def test_all_zero(self):
        with pytest.raises(DegenerateEquationError):
            quad_roots_homogeneous(0, 0, 0)

    @settings(max_examples=500, deadline=None)
    @given(complexes, complexes, complexes)
    def test_residual(self, a, b, c):
        scale = max(abs(a), abs(b), abs(c))
        if scale < 1e-6:
            return
        roots, _ = quad_roots_homogeneous(a, b, c)
        for u, v in roots:
            assert abs(np.hypot(abs(u), abs(v)) - 1) < 1e-14
            assert abs(a * u * u + b * u * v + c * v * v) <= 1e-12 * scale
