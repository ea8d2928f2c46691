"""Two-qubit entanglement from second moments of the collective spin.

For a frame k, l, n the bipartite test reads

    <J_n^2> + N(N-2)/4  <  sqrt([<J_k^2> + <J_l^2> - N/2]^2 + (N-1)^2 <J_n>^2)

and is what remains of the summed pair witness after minimising over the
Schmidt angle phi. For permutation-symmetric states it holds for some frame
exactly when the two-qubit reductions have a non-positive partial transpose.
"""

from dataclasses import dataclass, field
from math import comb, sqrt
from typing import Optional

import numpy as np

from .collective import XYZ, Frame
from .qmat import PAULI, hermitian_eig, partial_transpose
from .states import binom


class NotSymmetricReducibleError(ValueError):
    """The negative-eigenvalue vector of rho^T1 has a non-Hermitian coefficient matrix."""


@dataclass
class CriterionReport:
    criterion_id: str
    lhs: float
    rhs: float
    params: dict = field(default_factory=dict)
    error_bar: Optional[float] = None

    @property
    def margin(self):
        return self.rhs - self.lhs

    @property
    def violated(self):
        """True when lhs < rhs, i.e. the inequality signals entanglement."""
        return self.lhs < self.rhs

    def as_dict(self):
        out = {
            "criterion": self.criterion_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "violated": self.violated,
            "params": self.params,
        }
        if self.error_bar is not None:
            out["error_bar"] = self.error_bar
        return out


def su2_to_so3(u):
    """Rotation R with U sigma^i U^dag = sum_j R[i, j] sigma^j."""
    u = np.asarray(u, dtype=complex)
    r = np.empty((3, 3))
    for i in range(3):
        rotated = u @ PAULI[i + 1] @ u.conj().T
        for j in range(3):
            r[i, j] = np.real(np.trace(rotated @ PAULI[j + 1])) / 2
    return r


@dataclass(frozen=True)
class PairWitness:
    """Parametrisation psi = U* (x) U (sin(phi/2)|00> + cos(phi/2)|11>)."""

    frame: Frame
    phi: float
    unitary: np.ndarray
    eigenvalue: float

    def vector(self):
        psi0 = np.zeros(4, dtype=complex)
        psi0[0] = np.sin(self.phi / 2)
        psi0[3] = np.cos(self.phi / 2)
        return np.kron(self.unitary.conj(), self.unitary) @ psi0


def extract_pair_witness(rho_ab, tol=1e-8):
    """Frame and Schmidt angle of the witness built from the negative eigenvector of rho_ab^T1.

    Returns ``None`` when the partial transpose has no negative eigenvalue.
    """
    w, v = hermitian_eig(partial_transpose(rho_ab, [0], 2))
    if w[0] >= 0:
        return None
    coef = v[:, 0].reshape(2, 2)
    # fix the global phase that makes [psi] Hermitian: e^{2i t} M = M^dag
    herm = coef.conj().T
    overlap = np.vdot(coef, herm)
    phase = np.sqrt(overlap / abs(overlap)) if abs(overlap) > 0 else 1.0
    h = phase * coef
    if np.max(np.abs(h - h.conj().T)) > tol:
        raise NotSymmetricReducibleError("witness coefficient matrix is not Hermitian")
    h = (h + h.conj().T) / 2
    d, vecs = np.linalg.eigh(h)
    # keep the eigenbasis close to the computational one so that an already
    # Schmidt-diagonal witness yields the x, y, z frame
    if abs(vecs[0, 1]) ** 2 + abs(vecs[1, 0]) ** 2 > abs(vecs[0, 0]) ** 2 + abs(vecs[1, 1]) ** 2:
        d, vecs = d[::-1], vecs[:, ::-1]
    for j in range(2):
        i = int(np.argmax(np.abs(vecs[:, j])))
        vecs[:, j] *= abs(vecs[i, j]) / vecs[i, j]
    u_tilde = vecs.conj().T
    if d[1] < 0:
        d = -d
    u = u_tilde.T
    u = u / np.sqrt(np.linalg.det(u))
    phi = 2 * np.arctan2(d[0], d[1])
    return PairWitness(Frame.from_matrix(su2_to_so3(u)), float(phi), u, float(w[0]))


def _pair_terms(mom, frame):
    r = frame.matrix()
    k, l, n = r
    big_n = mom.nqubits
    jn = mom.mean(n)
    jn2 = mom.second(n)
    s = mom.second(k) + mom.second(l) - big_n / 2
    return big_n, jn, jn2, s


def pair_witness_value(mom, frame, phi):
    """Left side of the summed pair inequality before minimising over phi."""
    big_n, jn, jn2, s = _pair_terms(mom, frame)
    return np.sin(phi) * s - (big_n - 1) * np.cos(phi) * jn + jn2 + big_n * (big_n - 2) / 4


def criterion2(mom, frame=XYZ):
    """Bipartite criterion at a fixed frame; the Schmidt angle is minimised analytically."""
    big_n, jn, jn2, s = _pair_terms(mom, frame)
    lhs = jn2 + big_n * (big_n - 2) / 4
    rhs = sqrt(s**2 + (big_n - 1) ** 2 * jn**2)
    phi0 = float(np.arctan2(-s, (big_n - 1) * jn)) if rhs > 0 else 0.0
    return CriterionReport(
        "pair", lhs, rhs,
        params={"frame": [list(frame.k), list(frame.l), list(frame.n)], "phi0": phi0},
    )


def criterion2_symmetric(mom, n_dir=(0.0, 0.0, 1.0)):
    """Simplified form valid for symmetric states: 4 Var(J_n)/N < 1 - 4 <J_n>^2 / N^2."""
    n_dir = np.asarray(n_dir, dtype=float)
    big_n = mom.nqubits
    jn = mom.mean(n_dir)
    var = mom.second(n_dir) - jn**2
    return CriterionReport(
        "pair-sym", 4 * var / big_n, 1 - 4 * jn**2 / big_n**2,
        params={"n": list(n_dir)},
    )


def _margin_on_sphere(mom, theta, phi):
    # criterion2 depends on the frame only through n
    m2 = np.real(mom.m2[1:, 1:])
    m2 = (m2 + m2.T) / 2
    m1 = np.real(mom.m1[1:])
    big_n = mom.nqubits
    st, ct = np.sin(theta), np.cos(theta)
    n = np.stack([st * np.cos(phi), st * np.sin(phi), ct * np.ones_like(phi)], axis=-1)
    jn = n @ m1
    jn2 = np.einsum("...i,ij,...j->...", n, m2, n)
    s = np.trace(m2) - jn2 - big_n / 2
    return np.sqrt(s**2 + (big_n - 1) ** 2 * jn**2) - jn2 - big_n * (big_n - 2) / 4


def best_frame(mom, grid=64, sweeps=60):
    """Frame maximising the bipartite margin: 64x64 angle grid, then coordinate descent."""
    thetas = np.linspace(0, np.pi, grid)
    phis = np.linspace(-np.pi, np.pi, grid, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    vals = _margin_on_sphere(mom, tt, pp)
    i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    x = [thetas[i], phis[j]]
    best = vals[i, j]
    step = [np.pi / grid, 2 * np.pi / grid]
    for _ in range(sweeps):
        improved = False
        for c in range(2):
            for sgn in (1, -1):
                y = list(x)
                y[c] += sgn * step[c]
                val = _margin_on_sphere(mom, np.array(y[0]), np.array(y[1]))
                if val > best:
                    x, best, improved = y, float(val), True
                    break
        if not improved:
            step = [s / 2 for s in step]
    return Frame.from_angles(x[0], x[1])


@dataclass(frozen=True)
class DickePairData:
    c0: int
    c1: int
    cplus: int
    lambda_minus: float
    t: Optional[float]
    lhs: float
    rhs: float


def dicke_pair_data(n, k):
    """Closed-form pair-reduction data and bipartite inequality sides for Dicke states."""
    if n < 2 or not 0 <= k <= n:
        raise ValueError(f"need n >= 2 and 0 <= k <= n, got n={n}, k={k}")
    c0, c1, cp = binom(n - 2, k), binom(n - 2, k - 2), binom(n - 2, k - 1)
    norm = comb(n, k)
    lam = (c0 + c1 - sqrt((c0 - c1) ** 2 + 4 * cp**2)) / (2 * norm)
    t = None
    if cp != 0:
        x = (c0 - c1) / (2 * cp)
        t = x + sqrt(x**2 + 1)
    lhs = n * (n - 1) / 2 - n * k + k**2
    rhs = sqrt((n * k - k**2) ** 2 + (n - 1) ** 2 * (n - 2 * k) ** 2 / 4)
    return DickePairData(c0, c1, cp, lam, t, lhs, rhs)
