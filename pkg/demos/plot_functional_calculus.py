"""
Matrix exponential and logarithm
================================

Functions of a Hermitian matrix act on its eigenvalues.  This script
checks a few consequences numerically.
"""

import numpy as np
import scipy.linalg

from gtlab import matrix_exp, matrix_log, operator_norm, trace_real
from gtlab.randgen import rand_hermitian, stream

rs = stream(0, 0, "demo")

# exp followed by log gives the matrix back; the error grows like
# eps * exp(2 ||M||) because exp(M) is stored as a dense matrix
print(f"{'norm':>6} {'round trip error':>18}")
for scale in (1.0, 4.0, 8.0):
    m = rand_hermitian(4, 1.0, rs)
    m *= scale / operator_norm(m)
    err = np.linalg.norm(matrix_log(matrix_exp(m)) - m) / np.linalg.norm(m)
    print(f"{operator_norm(m):6.2f} {err:18.2e}")

# agreement with scipy's Pade-based expm
m = rand_hermitian(5, 3.0, rs)
print("max |exp - scipy expm| =", np.abs(matrix_exp(m) - scipy.linalg.expm(m)).max())

# the trace of exp of a sum is bounded by the trace of the product
sx = np.array([[0.0, 1.0], [1.0, 0.0]])
sz = np.diag([1.0, -1.0])
print("Tr exp(X + Z)    =", trace_real(matrix_exp(sx + sz)))
print("Tr exp(X) exp(Z) =", trace_real(matrix_exp(sx) @ matrix_exp(sz)))
