import numpy as np
import pytest

from ghzdistill.qstate import GHZ, W, LocalOp, PureState3, apply_local, basis_state, concurrence2, gghz_state, haar_random, random_invertible, reduced_density
from ghzdistill.wootters import marginal_pair, spin_flip2, tau_matrix, wootters_rep, wootters_reps

SY = np.array([[0, -1j], [1j, 0]])
COMPLEMENT = {"A": "BC", "B": "AC", "C": "AB"}


def ket(label):
    v = np.zeros(4, dtype=complex)
    v[int(label, 2)] = 1
    return v


class TestMarginalPair:
    def test_ghz(self):
        p = marginal_pair(GHZ, "A")
        assert np.allclose(p.phi0, ket("00") / np.sqrt(2))
        assert np.allclose(p.phi1, ket("11") / np.sqrt(2))

    def test_product(self):
        p = marginal_pair(basis_state("000"), "B")
        assert np.allclose(p.phi0, ket("00"))
        assert np.allclose(p.phi1, 0)

    def test_w(self):
        p = marginal_pair(W, "A")
        assert np.allclose(p.phi0, (ket("01") + ket("10")) / np.sqrt(3))
        assert np.allclose(p.phi1, ket("00") / np.sqrt(3))

    def test_reassembly_exact(self):
        for seed in range(300):
            s = haar_random(seed)
            for q in "ABC":
                p = marginal_pair(s, q)
                assert np.abs(p.reassemble().amplitudes - s.amplitudes).max() <= 1e-14
                assert np.linalg.norm(p.phi0) ** 2 + np.linalg.norm(p.phi1) ** 2 == pytest.approx(1, abs=1e-10)


class TestSpinFlip:
    def test_00(self):
        assert np.allclose(spin_flip2(ket("00")), -ket("11"))

    def test_bell(self):
        v = (ket("00") + ket("11")) / np.sqrt(2)
        assert np.allclose(spin_flip2(v), -v)

    def test_01(self):
        assert np.allclose(spin_flip2(ket("01")), ket("10"))

    def test_matches_pauli_kron(self, rng):
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        assert np.allclose(spin_flip2(v), np.kron(SY, SY) @ v.conj())

    def test_involution(self, rng):
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        assert np.allclose(spin_flip2(spin_flip2(v)), v)


class TestTau:
    def test_ghz(self):
        assert np.allclose(tau_matrix(marginal_pair(GHZ, "A")), [[0, -0.5], [-0.5, 0]])

    def test_gghz(self):
        assert np.allclose(tau_matrix(marginal_pair(gghz_state(0.6, 0.8), "A")), [[0, -0.48], [-0.48, 0]])

    def test_w(self):
        assert np.allclose(tau_matrix(marginal_pair(W, "A")), [[2 / 3, 0], [0, 0]])

    def test_entrywise_definition(self):
        p = marginal_pair(haar_random(8), "B")
        phis = [p.phi0, p.phi1]
        expected = [[np.vdot(phis[i], spin_flip2(phis[j])) for j in range(2)] for i in range(2)]
        assert np.allclose(tau_matrix(p), expected)


class TestWoottersRep:
    @pytest.mark.parametrize("q", "ABC")
    def test_ghz(self, q):
        r = wootters_rep(GHZ, q)
        assert (r.pi0, r.pi1) == pytest.approx((0.5, 0.5), abs=1e-15)

    @pytest.mark.parametrize("q", "ABC")
    def test_w(self, q):
        r = wootters_rep(W, q)
        assert r.pi0 == pytest.approx(2 / 3, abs=1e-15)
        assert r.pi1 == 0.0
        assert r.is_w_like

    @pytest.mark.parametrize("q", "ABC")
    def test_gghz(self, q):
        r = wootters_rep(gghz_state(0.6, 0.8), q)
        assert (r.pi0, r.pi1) == pytest.approx((0.48, 0.48), abs=1e-15)

    def test_diagonal_representation(self):
        worst = 0.0
        for seed in range(10_000):
            s = haar_random(seed)
            r = wootters_rep(s, "ABC"[seed % 3])
            x = r.transformed_vectors(s)
            gram = np.array([[np.vdot(x[:, i], spin_flip2(x[:, j])) for j in range(2)] for i in range(2)])
            worst = max(worst, np.abs(gram - np.diag([r.pi0, r.pi1_raw])).max())
        assert worst <= 1e-9

    def test_concurrence_identity(self):
        for seed in range(1000):
            s = haar_random(seed)
            for r in wootters_reps(s):
                c = concurrence2(reduced_density(s, COMPLEMENT[r.qubit]))
                assert r.pi0 - r.pi1_raw == pytest.approx(c, abs=1e-9)

    def test_determinant_equal_across_qubits(self):
        for seed in range(1000):
            dets = [r.pi0 * r.pi1_raw for r in wootters_reps(haar_random(seed))]
            assert max(dets) - min(dets) <= 1e-9

    def test_ratio_invariant_under_bc_invertibles(self, rng):
        for seed in range(500):
            s = haar_random(seed)
            before = wootters_rep(s, "A").ratio
            t = apply_local(apply_local(s, LocalOp(random_invertible(rng), "B")), LocalOp(random_invertible(rng), "C"))
            after = wootters_rep(t.normalized(), "A").ratio
            assert after == pytest.approx(before, abs=1e-8)

    def test_snap_is_relative(self):
        # a tiny but honest pi1 survives when pi0 is comparably tiny
        eps = 1e-6
        amps = np.zeros(8, dtype=complex)
        amps[0], amps[7] = np.sqrt(1 - eps**2), eps
        r = wootters_rep(PureState3(amps), "A")
        assert r.pi1 > 0
