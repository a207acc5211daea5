"""
The quadratic trace form Q
==========================

``Q(x, h) = Tr h* d log(x) h`` is positively homogeneous of degree one
and jointly convex.  We evaluate it through divided differences and
through the integral representation of ``d log``.
"""

import numpy as np

from gtlab import check_dq_inequality, q_form, q_form_oracle
from gtlab.randgen import rand_hermitian, rand_pd, stream

rs = stream(1, 0, "demo")
x = rand_pd(4, 1e3, rs)
h = rs.complex_gaussian(4, 4)

# two independent routes to the same number
print("divided differences:", q_form(x, h))
print("64-node quadrature :", q_form_oracle(x, h))

# degree-one homogeneity
for s in (0.1, 1.0, 10.0):
    print(f"s = {s:5.1f}   Q(sx, sh) / (s Q(x, h)) = {q_form(s * x, s * h) / (s * q_form(x, h)):.15f}")

# the difference quotient (Q(x + ty, h + tk) - Q(x, h)) / t stays below Q(y, k)
y = rand_pd(4, 1e3, rs)
k = rand_hermitian(4, 1.0, rs)
rep = check_dq_inequality(x, h, y, k)
print(f"worst quotient {rep.lhs:.6f} <= Q(y, k) = {rep.rhs:.6f} at t = {rep.extras['t']}")

# Q at the identity is the squared Frobenius norm
print(q_form(np.eye(4), h), np.linalg.norm(h) ** 2)
