"""
Fixed witnesses versus system size
==================================

The witnesses 2/3 1 - |W><W| and 4/9 P_3 - |W><W| are summed over all triples
of |W_N>. The plain one stops detecting at N = 5, the projected one at N = 7.
"""

from spinwitness.collective import moments
from spinwitness.qmat import ket_to_dm
from spinwitness.simple_wit import criterion_simple, witness_matrix, witness_sum_oracle
from spinwitness.states import w_state

print(f"{'N':>3} {'sum W_W1':>10} {'sum ~W_W1':>10} {'SS2':>6} {'SS2P':>6}")
for n in range(3, 9):
    rho = ket_to_dm(w_state(n))
    mom = moments(rho)
    plain = witness_sum_oracle(rho, witness_matrix("W1"))
    proj = witness_sum_oracle(rho, witness_matrix("W1", projected=True))
    print(f"{n:>3} {plain:10.4f} {proj:10.4f} "
          f"{str(criterion_simple(mom, 'SS2').violated):>6} {str(criterion_simple(mom, 'SS2P').violated):>6}")
