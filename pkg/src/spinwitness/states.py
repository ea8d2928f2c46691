"""State families: Dicke, W and GHZ states, white-noise mixtures, and the
ion-trap pulse sequence that prepares a W state through a shared motional mode.
"""

from dataclasses import dataclass
from math import acos, asin, comb, sqrt

import numpy as np

from .qmat import dicke_basis, ket_to_dm


def dicke(n, k):
    """Symmetric superposition of all n-qubit basis states with k ones."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    return dicke_basis(n)[:, k].copy()


def w_state(n):
    if n < 2:
        raise ValueError("W state needs at least 2 qubits")
    return dicke(n, 1)


def ghz(n):
    if n < 2:
        raise ValueError("GHZ state needs at least 2 qubits")
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = psi[-1] = 1 / sqrt(2)
    return psi


def noisy(psi, p):
    """p |psi><psi| + (1 - p) 1 / 2^N."""
    if not 0 <= p <= 1:
        raise ValueError(f"mixing weight p={p} outside [0, 1]")
    rho = ket_to_dm(psi)
    return p * rho + (1 - p) * np.eye(len(rho)) / len(rho)


def binom(m, j):
    """Binomial coefficient that vanishes outside 0 <= j <= m."""
    return comb(m, j) if 0 <= j <= m else 0


# --------------------------------------------------------------------------- #
# Pulse-sequence simulation                                                   #
# --------------------------------------------------------------------------- #


@dataclass
class MotionalRegister:
    """Ions plus a truncated centre-of-mass mode.

    ``amplitudes`` has shape ``(levels, 2, ..., 2)``; axis 0 is the phonon
    number and axis ``j`` (j = 1..N) holds ion ``N - j + 1``, i.e. the ket
    reads |n>_m |x_N ... x_1> with ion 1 rightmost.
    """

    nqubits: int
    levels: int
    amplitudes: np.ndarray

    @classmethod
    def basis(cls, phonons, ions_excited, n, levels=2):
        """|phonons>_m with ions in ``ions_excited`` (1-based) set to |1>."""
        amp = np.zeros((levels,) + (2,) * n, dtype=complex)
        idx = [phonons] + [1 if (n - j + 1) in ions_excited else 0 for j in range(1, n + 1)]
        amp[tuple(idx)] = 1
        return cls(n, levels, amp)

    def axis(self, ion):
        return self.nqubits - ion + 1

    def amplitude(self, phonons, ions_excited):
        idx = [phonons] + [1 if (self.nqubits - j + 1) in ions_excited else 0
                           for j in range(1, self.nqubits + 1)]
        return complex(self.amplitudes[tuple(idx)])

    def vector(self):
        return self.amplitudes.reshape(-1)

    def qubit_state(self, phonons=0):
        """Ion amplitudes for a given phonon number, ion 1 leftmost.

        This undoes the reversed ion ordering of the |x_N ... x_1> ket so the
        result can be compared with the library's qubit-0-leftmost convention.
        """
        sub = self.amplitudes[phonons]
        return sub.transpose(tuple(range(self.nqubits - 1, -1, -1))).reshape(-1)

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))


def _apply(reg, ion, pairs, theta, phase):
    # (a, b) -> (cos a - e^{-i phase} sin b, cos b + e^{i phase} sin a)
    amp = reg.amplitudes.copy()
    ax = reg.axis(ion)
    e = np.exp(1j * phase)
    src = np.moveaxis(reg.amplitudes, ax, 1)
    dst = np.moveaxis(amp, ax, 1)
    for (na, qa), (nb, qb), g in pairs:
        cg, sg = np.cos(g * theta / 2), np.sin(g * theta / 2)
        a = src[na, qa]
        b = src[nb, qb]
        dst[na, qa] = cg * a - np.conj(e) * sg * b
        dst[nb, qb] = cg * b + e * sg * a
    return MotionalRegister(reg.nqubits, reg.levels, amp)


def carrier(reg, ion, theta, phase=0.0):
    """Carrier pulse on ``ion``: |n>|1> <-> |n>|0> for every phonon number.

    With phase 0, |1> -> cos(theta/2)|1> + sin(theta/2)|0>.
    """
    pairs = [((n, 1), (n, 0), 1.0) for n in range(reg.levels)]
    return _apply(reg, ion, pairs, theta, phase)


def blue_sideband(reg, ion, theta, phase=0.0):
    """Blue-sideband pulse on ``ion``: |n>|1> <-> |n+1>|0>.

    The coupling of the n-th pair scales as sqrt(n+1); ``theta`` is the pulse
    area on the |0>_m|1> <-> |1>_m|0> transition. |0>_m|0> has no partner and
    is left untouched. With phase 0, |0>_m|1> -> cos|0>_m|1> + sin|1>_m|0>.
    """
    pairs = [((n, 1), (n + 1, 0), sqrt(n + 1)) for n in range(reg.levels - 1)]
    return _apply(reg, ion, pairs, theta, phase)


def w_pulse_program(n):
    """Pulse list (kind, ion, area, phase) of the entangling part of the sequence.

    Phases are chosen so every intermediate amplitude is real and positive:
    the carrier pulse and the sideband pulses that move population out of the
    phonon use laser phase pi, the first sideband pulse phase 0.
    """
    prog = [("carrier", n, np.pi, np.pi), ("blue", n, 2 * acos(1 / sqrt(n)), 0.0)]
    for i in range(2, n + 1):
        ion = n - i + 1
        prog.append(("blue", ion, 2 * asin(1 / sqrt(n - i + 1)), np.pi))
    return prog


def pulse_sequence_w(n, steps=None, levels=2):
    """Simulate the W-state preparation on ``n`` ions.

    Starts from |0>_m|11...1>, applies the initialisation pulses (carrier pi on
    every ion, then a blue pi pulse on ion 1 that must leave the ground state
    unchanged), the carrier pi pulse on ion N, and the N sideband pulses of the
    entangling stage. ``steps`` limits how many sideband pulses are applied.
    Returns the final :class:`MotionalRegister`, equal to |0>_m|W_n>.
    """
    if n < 2:
        raise ValueError("need at least 2 ions")
    if levels < 2:
        raise ValueError("need at least 2 motional levels")
    reg = MotionalRegister.basis(0, set(range(1, n + 1)), n, levels)
    for ion in range(n, 0, -1):
        reg = carrier(reg, ion, np.pi)
    ground = MotionalRegister.basis(0, set(), n, levels)
    assert np.allclose(reg.amplitudes, ground.amplitudes, atol=1e-12), "initialisation failed"
    reg = blue_sideband(reg, 1, np.pi)
    assert np.allclose(reg.amplitudes, ground.amplitudes, atol=1e-12), "motional check failed"

    prog = w_pulse_program(n)
    if steps is not None:
        prog = prog[: 1 + steps]
    for kind, ion, area, phase in prog:
        pulse = carrier if kind == "carrier" else blue_sideband
        reg = pulse(reg, ion, area, phase)
    return reg
