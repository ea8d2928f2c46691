"""Dense linear algebra on qubit registers.

Qubits are numbered from 0 and qubit 0 is the leftmost tensor factor, i.e. the
most significant bit of a computational-basis index. Density matrices and
pure states are plain :class:`numpy.ndarray` objects.
"""

from functools import reduce
from itertools import combinations
from math import comb

import numpy as np

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)

#: sigma^0 .. sigma^3 with sigma^0 the identity
PAULI = np.array([I2, SX, SY, SZ])

STATE_TOL = 1e-9


class DimensionError(ValueError):
    """Raised when matrix or vector dimensions do not fit a qubit register."""


def nqubits(dim):
    """Number of qubits for a Hilbert-space dimension, ``dim`` must be 2**n."""
    n = int(dim).bit_length() - 1
    if n < 0 or 2**n != dim:
        raise DimensionError(f"dimension {dim} is not a power of two")
    return n


def kron(*ops):
    """Tensor product of any number of matrices or vectors, left to right."""
    return reduce(np.kron, ops)


def ket_to_dm(psi):
    psi = np.asarray(psi, dtype=complex).ravel()
    return np.outer(psi, psi.conj())


def validate_density(rho, tol=STATE_TOL):
    """Check that ``rho`` is a qubit density matrix and return it as complex array.

    Raises ``ValueError`` when Hermiticity, unit trace or positivity fail by
    more than ``tol``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {rho.shape}")
    nqubits(rho.shape[0])
    if not np.all(np.isfinite(rho)):
        raise ValueError("density matrix has non-finite entries")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise ValueError(f"density matrix trace {np.trace(rho).real:.12g} differs from 1")
    if np.linalg.eigvalsh(rho)[0] < -tol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def _check_qubits(qubits, n):
    qubits = list(qubits)
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"repeated qubit index in {qubits}")
    for q in qubits:
        if not 0 <= q < n:
            raise IndexError(f"qubit index {q} out of range for {n} qubits")
    return qubits


def partial_trace(rho, keep):
    """Reduce ``rho`` to the qubits in ``keep``.

    The output tensor factors follow the order given in ``keep``, so
    ``partial_trace(rho, [2, 0])`` returns the state of qubits 2 and 0 with
    qubit 2 leftmost.
    """
    rho = np.asarray(rho)
    n = nqubits(rho.shape[0])
    keep = _check_qubits(keep, n)
    if not keep:
        raise ValueError("keep must name at least one qubit")
    traced = [q for q in range(n) if q not in keep]
    t = rho.reshape((2,) * (2 * n))
    # bra axis of qubit q sits at n + q
    row_axes = keep + traced
    col_axes = [n + q for q in keep] + [n + q for q in traced]
    t = t.transpose(row_axes + col_axes)
    k = len(keep)
    t = t.reshape(2**k, 2 ** (n - k), 2**k, 2 ** (n - k))
    return np.einsum("ajbj->ab", t)


def partial_transpose(rho, subsys, n=None):
    """Transpose the tensor factors listed in ``subsys`` in the computational basis."""
    rho = np.asarray(rho)
    if n is None:
        n = nqubits(rho.shape[0])
    if rho.shape != (2**n, 2**n):
        raise DimensionError(f"matrix of shape {rho.shape} does not act on {n} qubits")
    subsys = _check_qubits([subsys] if np.isscalar(subsys) else subsys, n)
    perm = list(range(2 * n))
    for q in subsys:
        perm[q], perm[n + q] = perm[n + q], perm[q]
    return rho.reshape((2,) * (2 * n)).transpose(perm).reshape(2**n, 2**n)


def _canonical_phase(vecs):
    # make the first component of largest modulus real and positive
    out = vecs.copy()
    for j in range(out.shape[1]):
        v = out[:, j]
        mag = np.abs(v)
        i = int(np.argmax(mag >= mag.max() * (1 - 1e-9)))
        out[:, j] = v * (np.abs(v[i]) / v[i])
    return out


def hermitian_eig(m, tol=1e-9, degeneracy_tol=1e-10):
    """Eigen-decomposition of a Hermitian matrix with reproducible eigenvectors.

    Returns ascending eigenvalues and eigenvectors as columns. Within a
    degenerate cluster the basis is obtained by Gram-Schmidt on the projected
    standard basis vectors e_0, e_1, ...; afterwards each column is rotated so
    that its first component of largest modulus is real positive.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    if np.max(np.abs(m - m.conj().T), initial=0.0) > tol * scale:
        raise ValueError("matrix is not Hermitian")
    m = (m + m.conj().T) / 2
    w, v = np.linalg.eigh(m)
    dim = len(w)
    start = 0
    while start < dim:
        stop = start + 1
        while stop < dim and w[stop] - w[start] <= degeneracy_tol * scale:
            stop += 1
        if stop - start > 1:
            block = v[:, start:stop]
            proj = block @ block.conj().T
            basis = []
            for e in range(dim):
                cand = proj[:, e].copy()
                for b in basis:
                    cand -= (b.conj() @ cand) * b
                norm = np.linalg.norm(cand)
                if norm > 1e-6:
                    basis.append(cand / norm)
                if len(basis) == stop - start:
                    break
            v[:, start:stop] = np.array(basis).T
            w[start:stop] = np.mean(w[start:stop])
        start = stop
    return w, _canonical_phase(v)


def min_eigenvalue(m):
    return float(np.linalg.eigvalsh((m + np.conj(m).T) / 2)[0])


def fidelity(rho, psi):
    """Overlap <psi|rho|psi> of a density matrix with a pure state."""
    rho = np.asarray(rho)
    psi = np.asarray(psi, dtype=complex).ravel()
    if rho.shape != (len(psi), len(psi)):
        raise DimensionError(f"state of dim {len(psi)} does not match matrix {rho.shape}")
    return float(np.real(psi.conj() @ rho @ psi))


def purity(rho):
    return float(np.real(np.trace(rho @ rho)))


def dicke_basis(n):
    """Columns are the normalised Dicke vectors with k = 0..n excitations."""
    idx = np.arange(2**n)
    weight = np.array([bin(i).count("1") for i in idx])
    basis = np.zeros((2**n, n + 1), dtype=complex)
    for k in range(n + 1):
        basis[weight == k, k] = 1 / np.sqrt(comb(n, k))
    return basis


def symmetric_projector(n):
    """Projector onto the permutation-symmetric subspace of ``n`` qubits (rank n+1)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    d = dicke_basis(n)
    return d @ d.conj().T


def is_symmetric(rho, tol=1e-9):
    """True iff P rho P equals rho entrywise within ``tol``."""
    rho = np.asarray(rho)
    p = symmetric_projector(nqubits(rho.shape[0]))
    return bool(np.max(np.abs(p @ rho @ p - rho)) <= tol)


def qubit_subsets(n, size):
    """All ordered index tuples a < b < ... of the given size."""
    return list(combinations(range(n), size))


def embed(op, qubits, n):
    """Extend an operator on ``qubits`` (in that order) to ``n`` qubits with identities."""
    k = len(qubits)
    qubits = _check_qubits(qubits, n)
    rest = [q for q in range(n) if q not in qubits]
    full = np.kron(np.asarray(op, dtype=complex), np.eye(2 ** (n - k)))
    order = qubits + rest
    # full acts on factors ordered as `order`; permute back to 0..n-1
    inv = np.argsort(order)
    t = full.reshape((2,) * (2 * n)).transpose(list(inv) + [n + i for i in inv])
    return t.reshape(2**n, 2**n)


def pauli_string(indices):
    """sigma^{i_0} (x) sigma^{i_1} (x) ... for Pauli indices in 0..3."""
    return kron(*(PAULI[i] for i in indices))


def pauli_coefficients(op):
    """Coefficients c with op = sum c[i0,...,i_{n-1}] sigma^{i0} (x) ... ."""
    op = np.asarray(op, dtype=complex)
    n = nqubits(op.shape[0])
    # c_idx = tr(op P_idx) / 2^n, computed factor by factor
    t = op.reshape((2,) * (2 * n))
    for q in range(n):
        # contract row axis q and col axis (shifted) with PAULI^T
        t = np.tensordot(t, PAULI, axes=([0, n - q], [2, 1]))
    return t / 2**n


def from_pauli_coefficients(coef):
    coef = np.asarray(coef)
    n = coef.ndim
    out = np.zeros((2**n, 2**n), dtype=complex)
    for idx in np.ndindex(*coef.shape):
        c = coef[idx]
        if c != 0:
            out += c * pauli_string(idx)
    return out


def transform_pauli_indices(op, mats):
    """Replace sigma^mu on qubit q by sum_nu mats[q][mu, nu] sigma^nu.

    With mats[q] = 1 (+) R for a rotation R whose rows are the frame axes,
    this rewrites an operator given in the x, y, z frame in the rotated one.
    """
    coef = pauli_coefficients(op)
    n = coef.ndim
    for q in range(n):
        coef = np.moveaxis(np.tensordot(coef, mats[q], axes=([q], [0])), -1, q)
    return from_pauli_coefficients(coef)
