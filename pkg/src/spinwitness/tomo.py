"""Simulated Pauli-basis tomography.

Every qubit is measured in X, Y or Z, giving 3^N settings. Outcome bit 0 of a
qubit is the +1 eigenvector of its Pauli operator. Counts are sampled per
setting from independent random streams spawned from one master seed.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .qmat import I2, from_pauli_coefficients, kron, nqubits, validate_density

MAX_ITER = 5000
MLE_TOL = 1e-10

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
# rotation applied before a Z measurement; rows are the measured eigenvectors
BASIS_CHANGE = {
    "Z": I2,
    "X": _H,
    "Y": _H @ np.diag([1, -1j]),
}
_PAULI_INDEX = {"X": 1, "Y": 2, "Z": 3}


class LikelihoodError(ArithmeticError):
    """The MLE iteration decreased the likelihood beyond round-off."""


def settings(n):
    """All 3^n settings as strings like "XZY", qubit 0 first, in lexicographic order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return ["".join(s) for s in product("XYZ", repeat=n)]


def _check_setting(s, n):
    if len(s) != n or any(c not in _PAULI_INDEX for c in s):
        raise ValueError(f"invalid setting {s!r} for {n} qubits")


def setting_unitary(setting):
    return kron(*(BASIS_CHANGE[c] for c in setting))


def outcome_labels(n):
    return [format(b, f"0{n}b") for b in range(2**n)]


def probabilities(rho, setting_list):
    """Array (len(settings), 2^N) of outcome probabilities."""
    rho = np.asarray(rho, dtype=complex)
    n = nqubits(rho.shape[0])
    for s in setting_list:
        _check_setting(s, n)
    v = np.array([setting_unitary(s) for s in setting_list])
    p = np.real(np.einsum("sij,jk,sik->si", v, rho, v.conj()))
    return np.clip(p, 0.0, None)


@dataclass
class CountTable:
    """Outcome counts per setting; row i of ``counts`` belongs to ``settings[i]``.

    Counts may be non-integer (expected counts).
    """

    nqubits: int
    settings: list
    counts: np.ndarray
    shots: int

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=float)
        if self.counts.shape != (len(self.settings), 2**self.nqubits):
            raise ValueError(f"counts shape {self.counts.shape} does not match settings")
        for s in self.settings:
            _check_setting(s, self.nqubits)
        if np.any(self.counts < 0):
            raise ValueError("negative counts")

    def frequencies(self):
        tot = self.counts.sum(axis=1, keepdims=True)
        return np.divide(self.counts, tot, out=np.zeros_like(self.counts), where=tot > 0)

    def as_dict(self):
        labels = outcome_labels(self.nqubits)
        table = {}
        for s, row in zip(self.settings, self.counts):
            table[s] = {lab: (int(c) if float(c).is_integer() else float(c))
                        for lab, c in zip(labels, row) if c}
        return {"nqubits": self.nqubits, "shots": self.shots, "counts": table}

    @classmethod
    def from_dict(cls, d):
        n = int(d["nqubits"])
        sets = list(d["counts"])
        counts = np.zeros((len(sets), 2**n))
        for i, s in enumerate(sets):
            for lab, c in d["counts"][s].items():
                counts[i, int(lab, 2)] = c
        return cls(n, sets, counts, int(d["shots"]))


def simulate_counts(rho, setting_list=None, shots=100, seed=0):
    """Multinomial counts; setting i draws from the i-th child of ``seed``."""
    rho = validate_density(rho)
    n = nqubits(rho.shape[0])
    setting_list = settings(n) if setting_list is None else list(setting_list)
    if shots < 1:
        raise ValueError("shots must be positive")
    probs = probabilities(rho, setting_list)
    probs /= probs.sum(axis=1, keepdims=True)
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    counts = np.array([
        np.random.default_rng(child).multinomial(shots, p)
        for child, p in zip(ss.spawn(len(setting_list)), probs)
    ])
    return CountTable(n, setting_list, counts, shots)


def expected_counts(rho, shots=100, setting_list=None):
    """Noise-free (fractional) counts shots * p."""
    rho = validate_density(rho)
    n = nqubits(rho.shape[0])
    setting_list = settings(n) if setting_list is None else list(setting_list)
    return CountTable(n, setting_list, shots * probabilities(rho, setting_list), shots)


def _parity_matrix(n):
    # entry [mask, b] = (-1)^popcount(mask & b)
    return np.real(kron(*([np.array([[1, 1], [1, -1]])] * n)))


def linear_inversion(data):
    """Least-squares style inversion from a complete set of settings.

    ``data`` is a :class:`CountTable` or a tuple ``(nqubits, settings, probs)``.
    Each Pauli-string expectation is averaged over all settings that measure it.
    """
    if isinstance(data, CountTable):
        n, sets, probs = data.nqubits, data.settings, data.frequencies()
    else:
        n, sets, probs = data
        probs = np.asarray(probs, dtype=float)
    if set(sets) != set(settings(n)):
        raise ValueError("linear inversion needs all 3^N settings")
    parity = _parity_matrix(n)
    total = np.zeros((4,) * n)
    seen = np.zeros((4,) * n)
    for s, p in zip(sets, probs):
        expect = parity @ p
        for mask in range(2**n):
            idx = tuple(_PAULI_INDEX[c] if (mask >> (n - 1 - q)) & 1 else 0
                        for q, c in enumerate(s))
            total[idx] += expect[mask]
            seen[idx] += 1
    return from_pauli_coefficients(total / seen) / 2**n


@dataclass
class MLEResult:
    rho: np.ndarray
    iterations: int
    converged: bool
    log_likelihood: list = field(default_factory=list)


def _log_likelihood(counts, probs):
    mask = counts > 0
    return float(np.sum(counts[mask] * np.log(np.maximum(probs[mask], 1e-300))))


def mle_fit(table, max_iter=MAX_ITER, tol=MLE_TOL):
    """Iterative R rho R maximum-likelihood reconstruction.

    A step that would lower the likelihood is replaced by the diluted operator
    (1 + eps R) / (1 + eps), halving eps from 0.5 until the likelihood does not
    drop.
    """
    counts = table.counts
    if counts.sum() <= 0:
        raise ValueError("count table is empty")
    n = table.nqubits
    dim = 2**n
    v = np.array([setting_unitary(s) for s in table.settings])
    vh = v.conj().transpose(0, 2, 1)
    freqs = table.frequencies()
    weight = (counts.sum(axis=1) > 0).sum()

    def probs_of(r):
        return np.clip(np.real(np.einsum("sij,jk,sik->si", v, r, v.conj())), 0.0, None)

    def r_op(p):
        ratio = np.divide(freqs, p, out=np.zeros_like(freqs), where=p > 0)
        return np.einsum("sij,sj,sjk->ik", vh, ratio, v) / weight

    def step(r, op):
        new = op @ r @ op.conj().T
        new = (new + new.conj().T) / 2
        return new / np.real(np.trace(new))

    rho = np.eye(dim, dtype=complex) / dim
    p = probs_of(rho)
    history = [_log_likelihood(counts, p)]
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        op = r_op(p)
        new = step(rho, op)
        new_p = probs_of(new)
        ll = _log_likelihood(counts, new_p)
        eps = 0.5
        while ll < history[-1] and eps > 1e-12:
            diluted = (np.eye(dim) + eps * op) / (1 + eps)
            new = step(rho, diluted)
            new_p = probs_of(new)
            ll = _log_likelihood(counts, new_p)
            eps /= 2
        if ll < history[-1] - 1e-9 * max(1.0, abs(history[-1])):
            raise LikelihoodError(f"likelihood decreased at iteration {it}")
        change = float(np.max(np.abs(new - rho)))
        rho, p = new, new_p
        history.append(max(ll, history[-1]))
        if change < tol:
            converged = True
            break
    return MLEResult(rho, it, converged, history)


def mle_reconstruct(table, max_iter=MAX_ITER, tol=MLE_TOL):
    return mle_fit(table, max_iter, tol).rho


def _threads():
    try:
        return max(1, int(os.environ.get("SPINWITNESS_THREADS", "1")))
    except ValueError:
        return 1


def mc_error(rho, functional, samples=100, shots=100, seed=0, method="mle", max_iter=MAX_ITER):
    """Mean and sample standard deviation of ``functional`` over simulated reconstructions.

    Sample i uses the i-th child stream of ``seed``; the result does not depend
    on the evaluation order or on ``SPINWITNESS_THREADS``.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    rho = validate_density(rho)
    n = nqubits(rho.shape[0])
    sets = settings(n)
    children = np.random.SeedSequence(seed).spawn(samples)

    def one(child):
        table = simulate_counts(rho, sets, shots, child)
        est = mle_reconstruct(table, max_iter) if method == "mle" else linear_inversion(table)
        return float(functional(est))

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        values = np.array(list(pool.map(one, children)))
    return float(values.mean()), float(values.std(ddof=1))

