import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinwitness.collective import (
    XYZ, Frame, SpinMoments, f_tensor, moments, rotate_spin, spin_ops, xi_squared,
)
from spinwitness.qmat import PAULI, ket_to_dm
from spinwitness.states import dicke, ghz, w_state

from conftest import random_state


def test_spin_commutators():
    j = spin_ops(3)
    assert np.allclose(j[1] @ j[2] - j[2] @ j[1], 1j * j[3])
    assert np.allclose(j[0], 1.5 * np.eye(8))
    casimir = sum(j[i] @ j[i] for i in (1, 2, 3))
    p = ket_to_dm(w_state(3))
    assert np.trace(p @ casimir).real == pytest.approx(1.5 * 2.5)


def test_spin_ops_read_only():
    with pytest.raises(ValueError):
        spin_ops(2)[1, 0, 0] = 1


def test_f_tensor_reproduces_pauli_products():
    f = f_tensor()
    for a in range(4):
        for b in range(4):
            assert np.allclose(PAULI[a] @ PAULI[b], np.tensordot(f[a, b], PAULI, axes=1))


def test_moments_match_direct_traces(rng):
    rho = random_state(3, rng)
    mom = moments(rho)
    j = spin_ops(3)
    for a in range(4):
        assert mom.m1[a] == pytest.approx(np.trace(rho @ j[a]))
        for b in range(4):
            assert mom.m2[a, b] == pytest.approx(np.trace(rho @ j[a] @ j[b]))
    assert mom.m3[1, 2, 3] == pytest.approx(np.trace(rho @ j[1] @ j[2] @ j[3]))
    assert mom.m3[2, 1, 2] == pytest.approx(np.trace(rho @ j[2] @ j[1] @ j[2]))


def test_w3_moments():
    mom = moments(ket_to_dm(w_state(3)))
    assert np.allclose(mom.m1, [1.5, 0, 0, 0.5])
    assert mom.m2[3, 3].real == pytest.approx(0.25)
    assert (mom.m2[1, 1] + mom.m2[2, 2]).real == pytest.approx(3.5)


def test_frame_validation():
    with pytest.raises(ValueError):
        Frame((1, 0, 0), (1, 0, 0), (0, 0, 1))
    with pytest.raises(ValueError):
        Frame((0, 1, 0), (1, 0, 0), (0, 0, 1))
    f = Frame.from_angles(0.0, 0.0)
    assert np.allclose(f.matrix(), np.eye(3))


@settings(max_examples=25, deadline=None)
@given(st.floats(0, np.pi), st.floats(-np.pi, np.pi))
def test_from_angles_is_rotation(theta, phi):
    r = Frame.from_angles(theta, phi).matrix()
    assert np.allclose(r @ r.T, np.eye(3), atol=1e-12)
    assert np.linalg.det(r) == pytest.approx(1)


def test_rotated_moments_match_rotated_operators(rng):
    rho = random_state(3, rng)
    frame = Frame.from_angles(0.7, -1.2)
    jk, jl, jn = rotate_spin(spin_ops(3), frame)
    rot = moments(rho).rotated(frame)
    assert rot.m1[3] == pytest.approx(np.trace(rho @ jn))
    assert rot.m2[1, 2] == pytest.approx(np.trace(rho @ jk @ jl))
    assert rot.m3[2, 1, 2] == pytest.approx(np.trace(rho @ jl @ jk @ jl))


def test_combine_is_linear(rng):
    a, b = random_state(3, rng), random_state(3, rng)
    mix = moments(a).combine(moments(b), 0.3)
    direct = moments(0.3 * a + 0.7 * b)
    for x, y in [(mix.m1, direct.m1), (mix.m2, direct.m2), (mix.m3, direct.m3)]:
        assert np.allclose(x, y)


def test_xi_squared_values():
    # Dicke states are J_z eigenstates: no fluctuation along z
    assert xi_squared(ket_to_dm(w_state(7)), [0, 0, 1]) == pytest.approx(0, abs=1e-12)
    # coherent spin state along z: variance N/4 along x gives xi^2 = 1
    up = ket_to_dm(dicke(6, 0))
    assert xi_squared(up, [1, 0, 0]) == pytest.approx(1)
    # GHZ_N along z: variance N^2/4
    assert xi_squared(ket_to_dm(ghz(4)), [0, 0, 1]) == pytest.approx(2 * 4 / 2)
    with pytest.raises(ValueError):
        xi_squared(up, [1, 1, 0])


def test_xi_squared_accepts_moments():
    mom = moments(ket_to_dm(dicke(4, 2)))
    assert isinstance(mom, SpinMoments)
    assert xi_squared(mom, [1, 0, 0]) == pytest.approx(xi_squared(ket_to_dm(dicke(4, 2)), [1, 0, 0]))


def test_xyz_constant():
    assert XYZ.matrix().tolist() == np.eye(3).tolist()
