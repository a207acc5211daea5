"""
Multivariate Golden-Thompson inequality
=======================================

``Tr exp(L + sum H_i* B_i H_i) <= Tr exp(L) sum H_i* exp(B_i) H_i``
whenever ``sum H_i* H_i = I``.  With one block and ``H = I`` it is the
classical inequality.
"""

from gtlab import check_classical_gt, check_gt_multi, check_interpolation
from gtlab.harness import run_suite
from gtlab.randgen import rand_contraction_tuple, rand_hermitian, stream

rs = stream(3, 0, "demo")
ct = rand_contraction_tuple(3, 2, 3, True, rs)
l_term = rand_hermitian(3, 2.0, rs)
b_list = [rand_hermitian(2, 2.0, rs) for _ in range(3)]

rep = check_gt_multi(l_term, ct, b_list)
print(f"k=3 blocks: lhs {rep.lhs:.6f} rhs {rep.rhs:.6f} slack {rep.slack:.3e}")

b = rand_hermitian(3, 2.0, rs)
rep = check_classical_gt(l_term, b)
print(f"classical : lhs {rep.lhs:.6f} rhs {rep.rhs:.6f} route deviation {rep.extras['route_deviation']:.1e}")

rep = check_interpolation(l_term, b, rand_hermitian(3, 2.0, rs))
print(f"averaged  : lhs {rep.lhs:.6f} rhs {rep.rhs:.6f}")

# a small seeded suite, as run by `gtlab verify --suite gt-multi`
suite = run_suite("gt-multi", 200, seed=3)
print(f"{suite.passed}/{len(suite.trials)} trials passed, worst slack {suite.worst_slack:.3e}")
