"""
Free energy bound
=================

For a Hamiltonian ``-(L + sum H_i* B_i H_i)`` the inequality bounds the
partition function from above, so ``-log(Z) / beta`` is bounded below.
The gap closes linearly as ``beta -> 0`` and widens at low temperature.
"""

from gtlab.cli import sweep_instance, sweep_table

l_term, ct, b_list = sweep_instance(seed=7)
betas = [1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0]

print(f"{'beta':>8} {'free energy':>14} {'bound':>14} {'gap':>12} {'gap/beta':>10}")
for beta, free, bound, gap in sweep_table(l_term, ct, b_list, betas):
    print(f"{beta:8.0e} {free:14.6f} {bound:14.6f} {gap:12.3e} {gap / beta:10.4f}")
