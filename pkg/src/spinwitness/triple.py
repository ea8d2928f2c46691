"""Three-qubit entanglement from third moments of the collective spin.

A partially transposed witness |psi><psi|^T1 with psi = A (x) B (x) B |GHZ_3>
or psi = A (x) U (x) U |W_3> is expanded as (1/8) K_abc sigma^a sigma^b sigma^c.
The Pauli coefficients K follow from two restricted Lorentz transformations
induced by the SL(2, C) factors. Summed over all qubit triples and contracted
with the collective-spin moments this gives the X parameter; X < 0 signals
three-qubit entanglement. X equals twelve times the summed witness value.
"""

from dataclasses import dataclass
from math import comb, sqrt
from typing import Optional

import numpy as np

from .collective import f_tensor
from .qmat import PAULI, ket_to_dm, nqubits, partial_trace, partial_transpose, qubit_subsets
from .states import binom, ghz, w_state

MINKOWSKI = np.diag([1.0, -1.0, -1.0, -1.0])
R_SIGMA_X = np.diag([1.0, 1.0, -1.0, -1.0])

#: tolerated imaginary residue of X before inputs are declared inconsistent
X_IMAG_TOL = 1e-6


class NumericalAssertionError(ArithmeticError):
    """An internal consistency check on computed quantities failed."""


def _check_sl2(m):
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got {m.shape}")
    if abs(np.linalg.det(m) - 1) > 1e-10 * max(1.0, np.abs(m).max() ** 2):
        raise ValueError("matrix does not have unit determinant")
    return m


def _induced(m, left, right):
    out = np.empty((4, 4))
    for mu in range(4):
        img = left @ PAULI[mu] @ right
        for nu in range(4):
            out[mu, nu] = np.real(np.trace(img @ PAULI[nu])) / 2
    return out


def lorentz_conjugate(a):
    """Lambda with A* sigma^mu A^T = sum_nu Lambda[mu, nu] sigma^nu (first qubit, transposed)."""
    a = _check_sl2(a)
    return _induced(a, a.conj(), a.T)


def lorentz_direct(b):
    """L with B sigma^mu B^dag = sum_nu L[mu, nu] sigma^nu."""
    b = _check_sl2(b)
    return _induced(b, b, b.conj().T)


def is_restricted_lorentz(lam, tol=1e-9):
    lam = np.asarray(lam)
    scale = max(1.0, float(np.abs(lam).max()) ** 2)
    return bool(
        np.max(np.abs(lam.T @ MINKOWSKI @ lam - MINKOWSKI)) <= tol * scale
        and lam[0, 0] >= 1 - tol
        and abs(np.linalg.det(lam) - 1) <= tol * scale**2
    )


def _outer(lam, a, left, b, right, g, sym):
    t = np.einsum("i,j,k->ijk", lam[a], left[b], right[g])
    if sym:
        t = (t + t.transpose(0, 2, 1)) / 2
    return t


def k_tensor_ghz(lam, l):  # noqa: E741
    """Pauli coefficients of (A (x) B (x) B |GHZ_3><GHZ_3| ...)^T1 times 8."""
    terms = [
        (1, 0, 0, 0, False),
        (1, 0, 3, 3, False),
        (1, 1, 1, 1, False),
        (2, 3, 0, 3, True),
        (-1, 1, 2, 2, False),
        (2, 2, 1, 2, True),
    ]
    return sum(c * _outer(lam, a, l, b, l, g, s) for c, a, b, g, s in terms)


def k_tensor_w(lam, r):
    """Pauli coefficients of (A (x) U (x) U |W_3><W_3| ...)^T1 times 8; ``r`` = 1 (+) R(U)."""
    r = np.asarray(r, dtype=float)
    if abs(r[0, 0] - 1) > 1e-9 or np.abs(r[0, 1:]).max() > 1e-9 or np.abs(r[1:, 0]).max() > 1e-9:
        raise ValueError("R must embed a pure rotation")
    rot = r[1:, 1:]
    if np.max(np.abs(rot @ rot.T - np.eye(3))) > 1e-9 or np.linalg.det(rot) < 0:
        raise ValueError("R must embed a proper rotation")
    terms = [
        (3, 0, 0, 0, False),
        (-3, 3, 3, 3, False),
        (2, 0, 0, 3, True),
        (1, 3, 0, 0, False),
        (-1, 0, 3, 3, False),
        (-2, 3, 0, 3, True),
        (4, 1, 0, 1, True),
        (4, 1, 1, 3, True),
        (-4, 2, 0, 2, True),
        (-4, 2, 2, 3, True),
        (2, 0, 1, 1, False),
        (2, 3, 1, 1, False),
        (2, 3, 2, 2, False),
        (2, 0, 2, 2, False),
    ]
    return sum(c * _outer(lam, a, r, b, r, g, s) for c, a, b, g, s in terms) / 3


def symmetrize3(t):
    """Average of a rank-3 tensor over all six index permutations."""
    perms = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    return sum(t.transpose(p) for p in perms) / 6


def k_operator(k):
    """(1/8) sum K_abc sigma^a (x) sigma^b (x) sigma^c as an 8x8 matrix."""
    basis = np.einsum("aij,bkl,cmn->abcikmjln", PAULI, PAULI, PAULI).reshape(4, 4, 4, 8, 8)
    return np.tensordot(k, basis, axes=3) / 8


def x_parameter(mom, k, return_complex=False):
    """Contract a witness tensor with the spin moments.

    X = K_(abc) { 2<J^a J^b J^c> - 3 f^{ab}_m <J^(c J^m)> + f^{ab}_m f^{(cm)}_n <J^n>
                  - 1/2 f^{ab}_m f^{[cm]}_n <J^n> }
    """
    f = f_tensor()
    ks = symmetrize3(np.asarray(k, dtype=float))
    m2s = (mom.m2 + mom.m2.T) / 2
    f_sym = (f + f.transpose(1, 0, 2)) / 2
    f_anti = (f - f.transpose(1, 0, 2)) / 2
    inner = (
        2 * mom.m3
        - 3 * np.einsum("abm,cm->abc", f, m2s)
        + np.einsum("abm,cmn,n->abc", f, f_sym, mom.m1)
        - 0.5 * np.einsum("abm,cmn,n->abc", f, f_anti, mom.m1)
    )
    x = np.sum(ks * inner)
    if return_complex:
        return x
    if abs(x.imag) > X_IMAG_TOL * (1 + abs(x.real)):
        raise NumericalAssertionError(f"X has imaginary residue {x.imag:.3g}")
    return float(x.real)


# --------------------------------------------------------------------------- #
# Witness vectors and brute-force sums                                        #
# --------------------------------------------------------------------------- #


def ghz_family_vector(a, b):
    return np.kron(np.kron(a, b), b) @ ghz(3)


def w_family_vector(a, u):
    return np.kron(np.kron(a, u), u) @ w_state(3)


def triple_sum_oracle(rho, psi):
    """sum over qubit triples a<b<c of tr(rho_abc |psi><psi|^T1)."""
    rho = np.asarray(rho)
    n = nqubits(rho.shape[0])
    if n < 3:
        raise ValueError("need at least three qubits")
    wit = partial_transpose(ket_to_dm(psi), [0], 3)
    return sum(float(np.real(np.trace(partial_trace(rho, t) @ wit))) for t in qubit_subsets(n, 3))


def _swap_to(op, pos):
    # move the first tensor factor of a 3-qubit operator to position ``pos``
    order = {0: (0, 1, 2), 1: (1, 0, 2), 2: (1, 2, 0)}[pos]
    t = op.reshape((2,) * 6)
    return t.transpose(order + tuple(3 + o for o in order)).reshape(8, 8)


def symmetrized_witness(family, a, b):
    """Three-qubit witness with the A factor cycled over every qubit.

    The term with A on qubit j is partially transposed on qubit j, and the
    three terms are averaged. ``family`` is "ghz" (b = B in SL(2, C)) or
    "w" (b = U in SU(2)).
    """
    vec = ghz_family_vector(a, b) if family == "ghz" else w_family_vector(a, b)
    base = ket_to_dm(vec)
    terms = [partial_transpose(_swap_to(base, j), [j], 3) for j in range(3)]
    return sum(terms) / 3


def symmetrized_witness_avg(rho, family, a, b):
    rho = np.asarray(rho)
    n = nqubits(rho.shape[0])
    wit = symmetrized_witness(family, a, b)
    return sum(float(np.real(np.trace(partial_trace(rho, t) @ wit))) for t in qubit_subsets(n, 3))


def k_tensor_for(family, a, b):
    """K for the witness generated by (A, B) or (A, U)."""
    lam = lorentz_conjugate(a)
    if family == "ghz":
        return k_tensor_ghz(lam, lorentz_direct(b))
    return k_tensor_w(lam, lorentz_direct(b))


# --------------------------------------------------------------------------- #
# Dicke-state closed forms                                                    #
# --------------------------------------------------------------------------- #


def lorentz_boost_z(alpha, rotate_y=True):
    """Boost along z with rapidity set by alpha, preceded by a pi rotation.

    ``rotate_y`` selects the pi rotation about y (first negative eigenvector)
    instead of about z (second one).
    """
    beta = (alpha**2 - 1) / (alpha**2 + 1)
    gamma = 1 / sqrt(1 - beta**2)
    if rotate_y:
        return np.array([
            [gamma, 0, 0, -gamma * beta],
            [0, -1, 0, 0],
            [0, 0, 1, 0],
            [gamma * beta, 0, 0, -gamma],
        ])
    return np.array([
        [gamma, 0, 0, gamma * beta],
        [0, -1, 0, 0],
        [0, 0, -1, 0],
        [gamma * beta, 0, 0, gamma],
    ])


@dataclass(frozen=True)
class DickeTripleData:
    """Closed-form data for the three-qubit reductions of a Dicke state.

    Primed fields belong to the second negative eigenvalue and are ``None``
    when it does not exist (k = 1, or any vanishing binomial).
    """

    n: int
    k: int
    kappa0: int
    kappa1: int
    omega: int
    omega_prime: int
    mu_minus: float
    mu_minus_prime: float
    alpha: Optional[float]
    alpha_prime: Optional[float]
    A: Optional[np.ndarray]
    A_prime: Optional[np.ndarray]
    Lambda_A: Optional[np.ndarray]
    Lambda_A_prime: Optional[np.ndarray]
    R_trivial: np.ndarray
    R_sigma_x: np.ndarray

    def eigenvector(self):
        """Unnormalised |000> - alpha |1>(|01> + |10>)."""
        v = np.zeros(8, dtype=complex)
        v[0] = 1
        v[0b101] = v[0b110] = -self.alpha
        return v

    def eigenvector_prime(self):
        """Unnormalised |111> - alpha' |0>(|01> + |10>)."""
        v = np.zeros(8, dtype=complex)
        v[7] = 1
        v[0b001] = v[0b010] = -self.alpha_prime
        return v

    def witnesses(self):
        """List of (label, K tensor, witness vector, A, U) for each negative eigenvalue."""
        out = []
        if self.alpha is not None and self.mu_minus < 0:
            k = k_tensor_w(self.Lambda_A, self.R_trivial)
            out.append(("psi", k, w_family_vector(self.A, np.eye(2)), self.A, np.eye(2)))
        if self.alpha_prime is not None and self.mu_minus_prime < 0:
            k = k_tensor_w(self.Lambda_A_prime, self.R_sigma_x)
            u = np.array([[0, 1j], [1j, 0]])  # i sigma^x, same rotation as sigma^x
            out.append(("psi'", k, w_family_vector(self.A_prime, u), self.A_prime, u))
        return out


def dicke_triple_data(n, k):
    if n < 3 or not 0 <= k <= n:
        raise ValueError(f"need n >= 3 and 0 <= k <= n, got n={n}, k={k}")
    k0, k1 = binom(n - 3, k), binom(n - 3, k - 3)
    w, wp = binom(n - 3, k - 1), binom(n - 3, k - 2)
    norm = comb(n, k)
    mu = (k0 + 2 * wp - sqrt((k0 - 2 * wp) ** 2 + 8 * w**2)) / (2 * norm)
    mup = (k1 + 2 * w - sqrt((k1 - 2 * w) ** 2 + 8 * wp**2)) / (2 * norm)
    alpha = alpha_p = a = ap = lam = lamp = None
    if w != 0:
        x = (k0 - 2 * wp) / (4 * w)
        alpha = x + sqrt(x**2 + 0.5)
        a = np.array([[0, 1 / sqrt(alpha)], [-sqrt(alpha), 0]], dtype=complex)
        lam = lorentz_boost_z(alpha, rotate_y=True)
    if wp != 0:
        x = (k1 - 2 * w) / (4 * wp)
        alpha_p = x + sqrt(x**2 + 0.5)
        ap = np.array([[1j * sqrt(alpha_p), 0], [0, -1j / sqrt(alpha_p)]])
        lamp = lorentz_boost_z(alpha_p, rotate_y=False)
    return DickeTripleData(
        n, k, k0, k1, w, wp, mu, mup, alpha, alpha_p, a, ap, lam, lamp,
        np.eye(4), R_SIGMA_X.copy(),
    )


def w_alpha(n):
    """alpha for |W_N>: (N-3)/4 + sqrt(((N-3)/4)^2 + 1/2)."""
    x = (n - 3) / 4
    return x + sqrt(x**2 + 0.5)
