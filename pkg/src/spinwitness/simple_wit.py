"""Fixed three-qubit witnesses and the collective-spin criteria they induce.

W_GHZ = 3/4 1 - |GHZ><GHZ|, W_W1 = 2/3 1 - |W><W|, W_W2 = 1/2 1 - |GHZ><GHZ|,
with GHZ and W written in a frame k, l, n shared by all qubits. The projected
variants replace 1 by the projector P_3 onto the symmetric subspace and 2/3
by 4/9. Summing any of them over all qubit triples gives a polynomial in
moments of J_k, J_l, J_n.
"""

import numpy as np

from .collective import XYZ
from .pairwise import CriterionReport
from .qmat import ket_to_dm, nqubits, partial_trace, qubit_subsets, symmetric_projector
from .qmat import transform_pauli_indices
from .states import ghz, w_state

# criterion id -> (witness kind, projected)
CRITERIA = {
    "SS1": ("GHZ", False),
    "SS2": ("W1", False),
    "SS3": ("W2", False),
    "SS1P": ("GHZ", True),
    "SS2P": ("W1", True),
    "SS3P": ("W2", True),
}

# the printed polynomials are these multiples of the summed witness
POLY_SCALE = {"GHZ": 2.0, "W1": 6.0, "W2": 2.0}

_SHIFT = {("GHZ", False): 3 / 4, ("W1", False): 2 / 3, ("W2", False): 1 / 2,
          ("GHZ", True): 3 / 4, ("W1", True): 4 / 9, ("W2", True): 1 / 2}


def witness_matrix(kind, projected=False, frame=XYZ):
    """8x8 witness; the GHZ/W vector and P_3 are expressed in ``frame``."""
    if kind not in POLY_SCALE:
        raise ValueError(f"unknown witness kind {kind!r}")
    target = ket_to_dm(w_state(3) if kind == "W1" else ghz(3))
    base = symmetric_projector(3) if projected else np.eye(8)
    wit = _SHIFT[kind, projected] * base - target
    if frame != XYZ:
        wit = transform_pauli_indices(wit, [frame.lorentz()] * 3)
    return wit


def witness_sum_oracle(rho, wit):
    """sum over qubit triples a<b<c of tr(rho_abc W)."""
    rho = np.asarray(rho)
    n = nqubits(rho.shape[0])
    if n < 3:
        raise ValueError("need at least three qubits")
    return sum(float(np.real(np.trace(partial_trace(rho, t) @ wit))) for t in qubit_subsets(n, 3))


def spin_polynomial(mom, which):
    """The collective-spin polynomial of criterion ``which`` in the xyz axes of ``mom``.

    Indices 1, 2, 3 of ``mom`` are read as k, l, n.
    """
    n = mom.nqubits
    m1 = np.real(mom.m1)
    m2 = np.real(np.diag(mom.m2))
    m3 = np.real(mom.m3)
    jk, jn = m1[1], m1[3]
    kk, ll, nn = m2[1], m2[2], m2[3]
    ghz_cubic = -m3[1, 1, 1] / 3 + m3[2, 1, 2]
    w_cubic = m3[3, 3, 3] - 2 * m3[2, 3, 2] - 2 * m3[1, 3, 1]
    lin_w = -(n * n - 4 * n + 8) / 4 * jn
    if which == "SS1":
        return ghz_cubic - (n - 2) / 2 * nn + jk / 3 + n * (n - 2) * (5 * n - 2) / 24
    if which == "SS2":
        return w_cubic - (n - 2) / 2 * (2 * kk + 2 * ll - nn) + lin_w + n * (n - 2) * (13 * n - 4) / 24
    if which == "SS3":
        return ghz_cubic - (n - 2) / 2 * nn + jk / 3 + n * n * (n - 2) / 8
    if which == "SS1P":
        return ghz_cubic + (n - 2) / 2 * (kk + ll) + jk / 3 + n * (n - 2) * (n - 4) / 12
    if which == "SS2P":
        return (w_cubic + (n - 2) / 9 * (12.5 * nn - ll - kk) + lin_w
                + 7 * n * (n - 2) * (n - 4) / 72)
    if which == "SS3P":
        # coefficients 1/6 and 1/24 follow from SS1P minus the summed P_3 term
        return ghz_cubic + (n - 2) / 6 * (2 * (kk + ll) - nn) + jk / 3 + n * (n - 2) * (n - 4) / 24
    raise ValueError(f"unknown criterion {which!r}")


def criterion_simple(mom, which, frame=XYZ):
    """Simplified three-qubit criterion; ``lhs`` is the summed witness value, violated iff < 0."""
    if which not in CRITERIA:
        raise ValueError(f"unknown criterion {which!r}, expected one of {sorted(CRITERIA)}")
    if mom.nqubits < 3:
        raise ValueError("need at least three qubits")
    kind, projected = CRITERIA[which]
    poly = spin_polynomial(mom.rotated(frame), which)
    params = {
        "frame": [list(frame.k), list(frame.l), list(frame.n)],
        "witness": kind,
        "projected": projected,
        "polynomial": poly,
        "scale": POLY_SCALE[kind],
    }
    if projected:
        params["detects"] = "genuine (symmetric-vicinity)"
    return CriterionReport(which, poly / POLY_SCALE[kind], 0.0, params=params)
