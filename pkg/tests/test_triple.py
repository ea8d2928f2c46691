from math import comb, sqrt

import numpy as np
import pytest

from spinwitness.collective import moments
from spinwitness.qmat import PAULI, hermitian_eig, ket_to_dm, partial_trace, partial_transpose
from spinwitness.states import dicke, ghz, noisy, w_state
from spinwitness.triple import (
    MINKOWSKI, NumericalAssertionError, R_SIGMA_X, dicke_triple_data, ghz_family_vector,
    is_restricted_lorentz, k_operator, k_tensor_for, k_tensor_ghz, k_tensor_w, lorentz_conjugate,
    lorentz_direct, symmetrized_witness, symmetrized_witness_avg, triple_sum_oracle, w_alpha,
    w_family_vector, x_parameter,
)

from conftest import random_sl2, random_state, random_su2, random_symmetric_state


def test_lorentz_maps_are_restricted(rng):
    for _ in range(1000):
        a = random_sl2(rng)
        for lam in (lorentz_conjugate(a), lorentz_direct(a)):
            scale = np.abs(lam).max() ** 2
            assert np.allclose(lam.T @ MINKOWSKI @ lam, MINKOWSKI, atol=1e-9 * scale)
            assert lam[0, 0] >= 1 - 1e-12
            assert np.linalg.det(lam) == pytest.approx(1, rel=1e-6)


def test_lorentz_conjugate_definition(rng):
    a = random_sl2(rng)
    lam = lorentz_conjugate(a)
    for mu in range(4):
        lhs = a.conj() @ PAULI[mu] @ a.T
        assert np.allclose(lhs, np.tensordot(lam[mu], PAULI, axes=1))


def test_lorentz_conjugate_of_identity():
    # the conjugate map is applied to A, not to sigma^mu, so A = 1 gives the identity
    assert np.allclose(lorentz_conjugate(np.eye(2)), np.eye(4))


def test_lorentz_direct_examples():
    assert np.allclose(lorentz_direct(np.eye(2)), np.eye(4))
    isx = 1j * PAULI[1]
    assert np.allclose(lorentz_direct(isx), R_SIGMA_X)
    t = 0.8
    rz = lorentz_direct(np.diag([np.exp(-1j * t / 2), np.exp(1j * t / 2)]))
    assert np.allclose(rz[1:3, 1:3], [[np.cos(t), np.sin(t)], [-np.sin(t), np.cos(t)]])
    assert rz[3, 3] == pytest.approx(1)


def test_lorentz_rejects_wrong_determinant():
    with pytest.raises(ValueError):
        lorentz_conjugate(2 * np.eye(2))
    with pytest.raises(ValueError):
        lorentz_direct(np.zeros((3, 3)))


def test_reference_lorentz_matrices():
    lam7 = dicke_triple_data(7, 1).Lambda_A
    assert lam7[0, 0] == pytest.approx(1.337, abs=1e-3)
    assert lam7[0, 3] == pytest.approx(-0.888, abs=1e-3)
    assert lam7[3, 0] == pytest.approx(0.888, abs=1e-3)
    assert lam7[3, 3] == pytest.approx(-1.337, abs=1e-3)
    assert lam7[1, 1] == -1 and lam7[2, 2] == 1
    lam8 = dicke_triple_data(8, 1).Lambda_A
    assert lam8[0, 0] == pytest.approx(1.529, abs=1e-3)
    assert lam8[0, 3] == pytest.approx(-1.157, abs=1e-3)


def test_closed_form_lorentz_equals_induced_map():
    for n, k in [(7, 1), (8, 1), (6, 2), (7, 3)]:
        d = dicke_triple_data(n, k)
        assert np.allclose(lorentz_conjugate(d.A), d.Lambda_A, atol=1e-12)
        if d.A_prime is not None:
            assert np.allclose(lorentz_conjugate(d.A_prime), d.Lambda_A_prime, atol=1e-12)
            assert is_restricted_lorentz(d.Lambda_A_prime)


def test_k_ghz_at_identity():
    k = k_tensor_ghz(np.eye(4), np.eye(4))
    expected = np.zeros((4, 4, 4))
    for idx in [(0, 0, 0), (0, 3, 3), (3, 0, 3), (3, 3, 0), (1, 1, 1), (2, 1, 2), (2, 2, 1)]:
        expected[idx] = 1
    expected[1, 2, 2] = -1
    assert np.array_equal(k, expected)
    w, _ = hermitian_eig(k_operator(k))
    assert w[0] == pytest.approx(-0.5)


def test_k_w_at_identity_reconstructs():
    k = k_tensor_w(np.eye(4), np.eye(4))
    assert k[0, 0, 0] == pytest.approx(1)
    target = partial_transpose(ket_to_dm(w_state(3)), [0], 3)
    assert np.abs(k_operator(k) - target).max() < 1e-12


def test_k_w_rejects_non_rotation():
    with pytest.raises(ValueError):
        k_tensor_w(np.eye(4), np.diag([1.0, -1, 1, 1]))
    with pytest.raises(ValueError):
        k_tensor_w(np.eye(4), lorentz_direct(np.diag([2.0, 0.5])))


@pytest.mark.parametrize("family", ["ghz", "w"])
def test_k_reconstruction_random(family, rng):
    for _ in range(100):
        a = random_sl2(rng)
        b = random_sl2(rng) if family == "ghz" else random_su2(rng)
        psi = ghz_family_vector(a, b) if family == "ghz" else w_family_vector(a, b)
        target = partial_transpose(ket_to_dm(psi), [0], 3)
        k = k_tensor_for(family, a, b)
        assert np.abs(k_operator(k) - target).max() < 1e-10 * max(1, np.abs(target).max())


@pytest.mark.parametrize("n,expected", [(7, -44.04), (8, -59.88)])
def test_reference_x_values(n, expected):
    d = dicke_triple_data(n, 1)
    (label, k, psi, _, _), = d.witnesses()
    rho = ket_to_dm(w_state(n))
    x = x_parameter(moments(rho), k)
    assert x == pytest.approx(expected, abs=0.01)
    assert x == pytest.approx(12 * triple_sum_oracle(rho, psi), abs=1e-9)


def test_x_of_maximally_mixed_state():
    (_, k, psi, _, _), = dicke_triple_data(7, 1).witnesses()
    x = x_parameter(moments(np.eye(128) / 128), k)
    assert x == pytest.approx(85.73, abs=0.01)
    assert x == pytest.approx(12 * comb(7, 3) * np.linalg.norm(psi) ** 2 / 8)


def test_triple_sum_closed_form_for_w7():
    d = dicke_triple_data(7, 1)
    psi = d.eigenvector()
    norm2 = (2 * d.alpha**2 + 1) / (3 * d.alpha)
    assert np.linalg.norm(d.witnesses()[0][2]) ** 2 == pytest.approx(norm2)
    val = triple_sum_oracle(ket_to_dm(w_state(7)), d.witnesses()[0][2])
    assert val == pytest.approx(comb(7, 3) * d.mu_minus * norm2)
    assert val == pytest.approx(-3.670, abs=1e-3)
    v = psi / np.linalg.norm(psi)
    r3 = partial_transpose(partial_trace(ket_to_dm(w_state(7)), [0, 1, 2]), [0])
    assert np.vdot(v, r3 @ v).real == pytest.approx(d.mu_minus)


def test_x_for_w7_eigen_data():
    d = dicke_triple_data(7, 1)
    assert (d.kappa0, d.omega, d.kappa1, d.omega_prime) == (4, 1, 0, 0)
    assert d.alpha == pytest.approx(2.224745, abs=1e-6)
    assert d.alpha == pytest.approx(w_alpha(7))
    assert d.mu_minus == pytest.approx((4 - sqrt(24)) / 14)
    assert d.alpha_prime is None and d.A_prime is None


def test_dicke_6_2_has_two_witnesses():
    d = dicke_triple_data(6, 2)
    assert (d.kappa0, d.kappa1, d.omega, d.omega_prime) == (3, 0, 3, 1)
    assert d.mu_minus < 0 and d.mu_minus_prime < 0
    assert [w[0] for w in d.witnesses()] == ["psi", "psi'"]


@pytest.mark.parametrize("n", range(3, 9))
def test_dicke_triple_data_matches_brute_force(n):
    for k in range(0, n // 2 + 1):
        d = dicke_triple_data(n, k)
        rho = ket_to_dm(dicke(n, k))
        pt = partial_transpose(partial_trace(rho, [0, 1, 2]), [0])
        w = np.linalg.eigvalsh(pt)
        negative = sorted(x for x in (d.mu_minus, d.mu_minus_prime) if x < -1e-12)
        assert np.allclose(sorted(w[w < -1e-12]), negative, atol=1e-10)
        for label, kt, psi, _, _ in d.witnesses():
            # eigenvector check by residual, robust to degenerate pairs
            mu = d.mu_minus if label == "psi" else d.mu_minus_prime
            assert np.linalg.norm(pt @ psi - mu * psi) < 1e-10
            x = x_parameter(moments(rho), kt)
            assert x == pytest.approx(12 * triple_sum_oracle(rho, psi), abs=1e-8 * (1 + abs(x)))


def test_factor_twelve_bridge_random_symmetric(rng):
    for n in (3, 4, 5):
        for _ in range(5):
            rho = random_symmetric_state(n, rng)
            mom = moments(rho)
            for family in ("ghz", "w"):
                a = random_sl2(rng)
                b = random_sl2(rng) if family == "ghz" else random_su2(rng)
                psi = ghz_family_vector(a, b) if family == "ghz" else w_family_vector(a, b)
                x = x_parameter(mom, k_tensor_for(family, a, b))
                assert x == pytest.approx(12 * triple_sum_oracle(rho, psi), abs=1e-8 * (1 + abs(x)))


def test_symmetrized_average_on_non_symmetric_states(rng):
    rho = random_state(4, rng)
    for family in ("ghz", "w"):
        a = random_sl2(rng)
        b = random_sl2(rng) if family == "ghz" else random_su2(rng)
        x = x_parameter(moments(rho), k_tensor_for(family, a, b))
        assert x == pytest.approx(12 * symmetrized_witness_avg(rho, family, a, b), abs=1e-9 * (1 + abs(x)))


def test_symmetrized_average_equals_oracle_on_symmetric(rng):
    rho = random_symmetric_state(4, rng)
    a, b = random_sl2(rng), random_sl2(rng)
    assert symmetrized_witness_avg(rho, "ghz", a, b) == pytest.approx(
        triple_sum_oracle(rho, ghz_family_vector(a, b)), abs=1e-12)


def test_symmetrized_witness_is_permutation_invariant(rng):
    a, u = random_sl2(rng), random_su2(rng)
    wit = symmetrized_witness("w", a, u)
    swap = np.eye(8)[[0, 2, 1, 3, 4, 6, 5, 7]]  # exchange qubits 1 and 2
    assert np.allclose(swap @ wit @ swap, wit)


def test_oracle_non_negative_on_product_states(rng):
    for _ in range(100):
        kets = [rng.normal(size=2) + 1j * rng.normal(size=2) for _ in range(4)]
        psi = kets[0]
        for k in kets[1:]:
            psi = np.kron(psi, k)
        rho = ket_to_dm(psi / np.linalg.norm(psi))
        a = random_sl2(rng)
        vec = ghz_family_vector(a, random_sl2(rng)) if rng.random() < 0.5 else w_family_vector(a, random_su2(rng))
        assert triple_sum_oracle(rho, vec) >= -1e-12


def test_noise_linearity():
    (_, k, _, _, _), = dicke_triple_data(7, 1).witnesses()
    x_w = x_parameter(moments(ket_to_dm(w_state(7))), k)
    x_mix = x_parameter(moments(np.eye(128) / 128), k)
    for p in (0.0, 0.3, 0.77, 1.0):
        x = x_parameter(moments(noisy(w_state(7), p)), k)
        assert x == pytest.approx(p * x_w + (1 - p) * x_mix, abs=1e-9)


def test_x_rejects_imaginary_residue():
    mom = moments(ket_to_dm(w_state(3)))
    bad = type(mom)(mom.nqubits, mom.m1, mom.m2, mom.m3 + 1j)
    with pytest.raises(NumericalAssertionError):
        x_parameter(bad, k_tensor_w(np.eye(4), np.eye(4)))


def test_ghz3_detected_by_flipped_witness():
    # negative eigenvector of GHZ_3^T1 is (i sigma^y (x) 1 (x) 1)|GHZ_3>, eigenvalue -1/2
    rho = ket_to_dm(ghz(3))
    a = 1j * PAULI[2]
    k = k_tensor_for("ghz", a, np.eye(2))
    assert x_parameter(moments(rho), k) == pytest.approx(-6)
    # the unflipped witness gives tr(rho rho^T1) = 1/2 instead
    assert x_parameter(moments(rho), k_tensor_ghz(np.eye(4), np.eye(4))) == pytest.approx(6)
