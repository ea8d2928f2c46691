"""
Pair and triple criteria for W states
=====================================

Both criteria only need collective-spin moments. We compute them for the
ideal |W_7> and |W_8> states and cross-check against brute-force sums over
reduced density matrices.
"""

import numpy as np

from spinwitness.collective import moments
from spinwitness.pairwise import criterion2, dicke_pair_data
from spinwitness.qmat import ket_to_dm
from spinwitness.states import w_state
from spinwitness.triple import dicke_triple_data, triple_sum_oracle, x_parameter

np.set_printoptions(precision=3, suppress=True)

# %% two-qubit test: lhs < rhs means entangled pairs
for n in (7, 8):
    rho = ket_to_dm(w_state(n))
    rep = criterion2(moments(rho))
    closed = dicke_pair_data(n, 1)
    print(f"W_{n}: lhs = {rep.lhs:.3f}  rhs = {rep.rhs:.3f}  (closed form {closed.lhs:.0f}, {closed.rhs:.3f})")

# %% three-qubit test: witness built from the ideal state's Lorentz data
for n in (7, 8):
    data = dicke_triple_data(n, 1)
    (label, k, psi, a, u), = data.witnesses()
    print(f"\nW_{n}: alpha = {data.alpha:.6f}, mu_- = {data.mu_minus:.6f}")
    print("Lambda(A) =")
    print(data.Lambda_A)
    rho = ket_to_dm(w_state(n))
    x = x_parameter(moments(rho), k)
    print(f"X = {x:.2f}   12 x triple sum = {12 * triple_sum_oracle(rho, psi):.2f}")
