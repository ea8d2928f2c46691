"""
Preparing |W_N> with a shared phonon
====================================

A carrier pi pulse excites ion N, then blue-sideband pulses hand the
excitation back and forth through the centre-of-mass mode. After every
entangling step one more ion carries amplitude 1/sqrt(N) and the phonon keeps
the rest.
"""

import numpy as np

from spinwitness.states import pulse_sequence_w, w_pulse_program, w_state

n = 6
for kind, ion, area, phase in w_pulse_program(n):
    print(f"{kind:>8} on ion {ion}: area {area:.4f}, phase {phase:.4f}")

print()
for step in range(0, n + 1):
    reg = pulse_sequence_w(n, steps=step)
    ions = [reg.amplitude(0, {i}).real for i in range(n, 0, -1)]
    phonon = reg.amplitude(1, set()).real
    print(f"after step {step}: ions N..1 = {np.round(ions, 4)}  phonon = {phonon:.4f}")

overlap = np.vdot(w_state(n), pulse_sequence_w(n).qubit_state(0))
print(f"\nfidelity with |W_{n}>: {abs(overlap) ** 2:.15f}")
