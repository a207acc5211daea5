"""
Concavity of A -> Tr exp(H* log(A) H)
=====================================

For a contraction ``H`` the map is concave on positive definite
matrices.  We probe it along random segments and compare against a
convex function to see that the probes can tell the difference.
"""

import numpy as np

from gtlab import concavity_midpoint_probe, concavity_second_derivative_probe, single_evaluator
from gtlab.randgen import rand_contraction_tuple, rand_hermitian, rand_pd, stream

rs = stream(2, 0, "demo")
h = rand_contraction_tuple(1, 3, 2, True, rs).h_list[0]
phi = single_evaluator(h)

print(f"{'trial':>5} {'midpoint margin':>16} {'second difference':>18}")
for i in range(8):
    a0, a1 = rand_pd(3, 1e3, rs), rand_pd(3, 1e3, rs)
    mid = concavity_midpoint_probe(phi, [a0], [a1])
    lam = np.linalg.eigvalsh(a0)[0]
    d = rand_hermitian(3, 0.5 * lam, rs)
    d2 = concavity_second_derivative_probe(phi, [a0], [d])
    print(f"{i:5d} {mid.slack:16.3e} {d2.lhs:18.3e}")


# Tr A^2 is convex, so its midpoint margin is negative
def square(point):
    return float(np.trace(point[0] @ point[0]).real)


print("Tr A^2 midpoint margin:", concavity_midpoint_probe(square, [np.eye(2)], [np.diag([3.0, 1.0])]).slack)
