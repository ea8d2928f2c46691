"""
Error bars from simulated tomography
====================================

Measure every qubit in X, Y or Z, reconstruct by maximum likelihood, and
repeat. The spread of a criterion over the repetitions is its error bar.
"""

import numpy as np

from spinwitness.collective import moments
from spinwitness.pairwise import criterion2
from spinwitness.qmat import fidelity, purity
from spinwitness.states import noisy, w_state
from spinwitness.tomo import mc_error, mle_fit, simulate_counts
from spinwitness.triple import dicke_triple_data, x_parameter

psi = w_state(3)
rho = noisy(psi, 0.9)

fit = mle_fit(simulate_counts(rho, shots=100, seed=1))
print(f"one reconstruction: {fit.iterations} iterations, converged = {fit.converged}")
print(f"  fidelity {fidelity(fit.rho, psi):.4f}   purity {purity(fit.rho):.4f} (true {purity(rho):.4f})")

(_, k, *_), = dicke_triple_data(3, 1).witnesses()
functionals = {
    "pair margin": lambda r: criterion2(moments(r)).margin,
    "X": lambda r: x_parameter(moments(r), k),
}
for name, f in functionals.items():
    for shots in (100, 400):
        mean, std = mc_error(rho, f, samples=20, shots=shots, seed=shots)
        print(f"{name:>12} @ {shots:3d} shots: {mean:8.4f} +- {std:.4f}   (exact {f(rho):.4f})")
