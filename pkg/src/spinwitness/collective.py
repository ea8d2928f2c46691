"""Collective spin operators and their low-order moments.

Index 0 of every spin tensor is the artificial time component
J^0 = (N/2) 1, indices 1..3 are J^x, J^y, J^z.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .qmat import PAULI, embed, nqubits

FRAME_TOL = 1e-12


@dataclass(frozen=True)
class Frame:
    """Orthonormal right-handed triad k, l, n (rows of a rotation matrix)."""

    k: tuple
    l: tuple  # noqa: E741
    n: tuple

    def __post_init__(self):
        r = self.matrix()
        if np.max(np.abs(r @ r.T - np.eye(3))) > FRAME_TOL * 1e3:
            raise ValueError("frame axes are not orthonormal")
        if np.linalg.det(r) < 0:
            raise ValueError("frame is left-handed")

    @classmethod
    def from_matrix(cls, r):
        r = np.asarray(r, dtype=float)
        return cls(tuple(r[0]), tuple(r[1]), tuple(r[2]))

    @classmethod
    def from_angles(cls, theta, phi):
        """Spherical frame: n at polar angle theta, azimuth phi; k, l = e_theta, e_phi."""
        st, ct, sp, cp = np.sin(theta), np.cos(theta), np.sin(phi), np.cos(phi)
        return cls((ct * cp, ct * sp, -st), (-sp, cp, 0.0), (st * cp, st * sp, ct))

    def matrix(self):
        return np.array([self.k, self.l, self.n], dtype=float)

    def lorentz(self):
        """4x4 embedding 1 (+) R acting on spin-tensor indices."""
        m = np.eye(4)
        m[1:, 1:] = self.matrix()
        return m


XYZ = Frame((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))


@lru_cache(maxsize=16)
def _spin_ops_cached(n):
    ops = np.zeros((4, 2**n, 2**n), dtype=complex)
    ops[0] = np.eye(2**n) * n / 2
    for i in range(1, 4):
        for a in range(n):
            ops[i] += embed(PAULI[i], [a], n) / 2
    ops.setflags(write=False)
    return ops


def spin_ops(n):
    """Array of shape (4, 2^n, 2^n): J^0 = (n/2) 1 and J^i = sum_a sigma^i_a / 2."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return _spin_ops_cached(n)


def rotate_spin(ops, frame):
    """J_k, J_l, J_n for the axes of ``frame``."""
    r = frame.matrix()
    return tuple(np.tensordot(r[i], ops[1:], axes=1) for i in range(3))


@lru_cache(maxsize=1)
def f_tensor():
    """Structure constants with sigma^mu sigma^nu = sum_g f[mu, nu, g] sigma^g."""
    f = np.zeros((4, 4, 4), dtype=complex)
    for a in range(4):
        f[0, a, a] = 1
        f[a, 0, a] = 1
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1
    for i in range(3):
        for j in range(3):
            f[i + 1, j + 1, 1:] = 1j * eps[i, j]
            f[i + 1, j + 1, 0] = 1.0 if i == j else 0.0
    f.setflags(write=False)
    return f


@dataclass(frozen=True)
class SpinMoments:
    """Raw moments <J^a>, <J^a J^b>, <J^a J^b J^c> in written operator order."""

    nqubits: int
    m1: np.ndarray
    m2: np.ndarray
    m3: np.ndarray

    def rotated(self, frame):
        """Moments with indices 1..3 referring to the axes k, l, n of ``frame``."""
        t = frame.lorentz()
        return SpinMoments(
            self.nqubits,
            t @ self.m1,
            np.einsum("ai,bj,ij->ab", t, t, self.m2),
            np.einsum("ai,bj,ck,ijk->abc", t, t, t, self.m3),
        )

    def mean(self, v):
        """<J_v> for a 3-vector v."""
        return float(np.real(np.dot(v, self.m1[1:])))

    def second(self, v, w=None):
        """Real part of <J_v J_w> (symmetric, so <J_v^2> when w is omitted)."""
        w = v if w is None else w
        return float(np.real(np.asarray(v) @ self.m2[1:, 1:] @ np.asarray(w)))

    def combine(self, other, p):
        """Moments of the mixture p * self + (1 - p) * other."""
        return SpinMoments(
            self.nqubits,
            p * self.m1 + (1 - p) * other.m1,
            p * self.m2 + (1 - p) * other.m2,
            p * self.m3 + (1 - p) * other.m3,
        )


def moments(rho):
    """First, second and third moments of the collective spin in state ``rho``."""
    rho = np.asarray(rho, dtype=complex)
    n = nqubits(rho.shape[0])
    ops = spin_ops(n)
    # tr(X B) = sum_ij X_ij B_ji
    ops_t = ops.transpose(0, 2, 1).reshape(4, -1)
    rho_a = rho @ ops
    m1 = np.trace(rho_a, axis1=1, axis2=2)
    m2 = rho_a.reshape(4, -1) @ ops_t.T
    rho_ab = rho_a[:, None] @ ops[None, :]
    m3 = (rho_ab.reshape(16, -1) @ ops_t.T).reshape(4, 4, 4)
    return SpinMoments(n, m1, m2, m3)


def xi_squared(rho, n_dir):
    """Squeezing parameter 2 <Delta J_n^2> / J with J = N/2."""
    n_dir = np.asarray(n_dir, dtype=float)
    if abs(np.linalg.norm(n_dir) - 1) > 1e-9:
        raise ValueError("direction must be a unit vector")
    mom = rho if isinstance(rho, SpinMoments) else moments(rho)
    var = mom.second(n_dir) - mom.mean(n_dir) ** 2
    return 2 * var / (mom.nqubits / 2)
