"""
How much white noise can the triple criterion tolerate?
=======================================================

X is linear in the state, so along p |Psi> <Psi| + (1-p) 1/2^N it is a
straight line between X(Psi) and X(1/2^N). Its root is the smallest
fidelity weight p at which the witness still fires.
"""

import numpy as np

from spinwitness.collective import moments
from spinwitness.qmat import ket_to_dm
from spinwitness.states import dicke, noisy
from spinwitness.triple import dicke_triple_data, x_parameter

print(f"{'state':>10} {'witness':>8} {'X(pure)':>10} {'X(mixed)':>10} {'p*':>7}")
for n, k in [(4, 1), (6, 1), (6, 2), (6, 3), (7, 1), (8, 1), (8, 2)]:
    psi = dicke(n, k)
    for label, kt, *_ in dicke_triple_data(n, k).witnesses():
        x1 = x_parameter(moments(ket_to_dm(psi)), kt)
        x0 = x_parameter(moments(np.eye(2**n) / 2**n), kt)
        print(f"{f'D({n},{k})':>10} {label:>8} {x1:10.3f} {x0:10.3f} {x0 / (x0 - x1):7.4f}")

# %% a coarse data table for |W_7>, the same line sampled explicitly
(_, kt, *_), = dicke_triple_data(7, 1).witnesses()
psi = dicke(7, 1)
for p in np.linspace(0, 1, 11):
    print(f"p = {p:4.1f}   X = {x_parameter(moments(noisy(psi, p)), kt):9.3f}")
