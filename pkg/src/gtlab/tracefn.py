"""
Trace functions ``Tr exp(L + sum H_i* (log A_i) H_i)`` and probes of their
concavity and homogeneity.

Dimension convention: every block ``H_i`` is ``n x m``; the ``A_i`` are
``n x n`` and the exponent (and ``L``) is ``m x m``.  The resolution
identity reads ``sum H_i* H_i = I_m``.
"""

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.linalg

from . import calculus, reports
from .errors import ContractionError, DimensionError, NotPositiveDefiniteError
from .matcore import (
    _eigh,
    as_hermitian,
    as_matrix,
    as_positive_definite,
    expm_h,
    logm_pd,
    operator_norm,
    trace_real,
)

CONTRACTION_TOL = 1e-10
AUGMENT_MIN_EIG = 1e-8
FD2_REL = 1e-6
FD2_STEP = 1e-3


@dataclass(frozen=True, init=False)
class ContractionTuple:
    """Blocks ``(H_1, ..., H_k)`` with ``sum H_i* H_i = I_m`` (exact) or ``<= I_m`` (sub)."""

    h_list: tuple
    exact: bool

    def __init__(self, h_list: Sequence, exact: bool = True, validate: bool = True):
        blocks = tuple(as_matrix(h) for h in h_list)
        if not blocks:
            raise DimensionError("a contraction tuple needs at least one block")
        object.__setattr__(self, "h_list", blocks)
        object.__setattr__(self, "exact", bool(exact))
        if validate:
            self.validate()

    @property
    def k(self) -> int:
        return len(self.h_list)

    @property
    def n(self) -> int:
        return self.h_list[0].shape[0]

    @property
    def m(self) -> int:
        return self.h_list[0].shape[1]

    @property
    def resolution(self) -> str:
        return "exact" if self.exact else "sub"

    def gram(self) -> np.ndarray:
        """``sum H_i* H_i``."""
        return sum(h.conj().T @ h for h in self.h_list)

    def residual(self) -> float:
        """Frobenius distance of the Gram sum from ``I_m``."""
        return float(np.linalg.norm(self.gram() - np.eye(self.m)))

    def validate(self, tol: float = CONTRACTION_TOL) -> None:
        shape = self.h_list[0].shape
        for i, h in enumerate(self.h_list):
            if h.shape != shape:
                raise DimensionError(f"block {i} has shape {h.shape}, expected {shape}")
        if self.exact:
            res = self.residual()
            if res > tol * np.sqrt(self.m):
                raise ContractionError(
                    f"sum H_i* H_i differs from the identity: residual {res:.3e}"
                )
        else:
            top = float(np.linalg.eigvalsh(0.5 * (self.gram() + self.gram().conj().T))[-1])
            if top > 1.0 + tol:
                raise ContractionError(
                    f"sum H_i* H_i exceeds the identity: largest eigenvalue {top:.12g}"
                )


@dataclass(frozen=True)
class PhiSpec:
    """Contraction tuple plus an optional Hermitian ``m x m`` matrix ``L``."""

    contraction: ContractionTuple
    l_term: np.ndarray | None = None

    def __post_init__(self):
        if self.l_term is not None:
            l_term = as_hermitian(self.l_term)
            if l_term.shape[0] != self.contraction.m:
                raise DimensionError(
                    f"L is {l_term.shape[0]}x{l_term.shape[0]}, blocks have m = {self.contraction.m}"
                )
            object.__setattr__(self, "l_term", l_term)

    def l_or_zero(self) -> np.ndarray:
        m = self.contraction.m
        return np.zeros((m, m), dtype=complex) if self.l_term is None else self.l_term


def congruence_sum(h_list: Sequence[np.ndarray], x_list: Sequence[np.ndarray]) -> np.ndarray:
    """``sum H_i* X_i H_i``; blocks may have different row counts."""
    return sum(h.conj().T @ x @ h for h, x in zip(h_list, x_list))


def _check_pd_list(a_list, k: int, n: int) -> list[np.ndarray]:
    if len(a_list) != k:
        raise DimensionError(f"expected {k} matrices, got {len(a_list)}")
    out = [as_positive_definite(a) for a in a_list]
    for i, a in enumerate(out):
        if a.shape[0] != n:
            raise DimensionError(f"matrix {i} is {a.shape[0]}x{a.shape[0]}, expected {n}x{n}")
    return out


def phi_single(h, a) -> float:
    """``Tr exp(H* (log A) H)`` for a contraction ``H`` (``n x m``) and PD ``A`` (``n x n``)."""
    h = as_matrix(h)
    a = as_positive_definite(a)
    if a.shape[0] != h.shape[0]:
        raise DimensionError(f"A is {a.shape[0]}x{a.shape[0]} but H has {h.shape[0]} rows")
    norm = operator_norm(h)
    if norm > 1.0 + CONTRACTION_TOL:
        raise ContractionError(f"H is not a contraction: operator norm {norm:.12g}")
    return trace_real(expm_h(h.conj().T @ logm_pd(a) @ h))


def phi_multi(spec: PhiSpec, a_list) -> float:
    """``Tr exp(L + sum H_i* (log A_i) H_i)``; without ``L`` this is the plain k-tuple function."""
    ct = spec.contraction
    a_list = _check_pd_list(a_list, ct.k, ct.n)
    expo = spec.l_or_zero() + congruence_sum(ct.h_list, [logm_pd(a) for a in a_list])
    return trace_real(expm_h(expo))


def block_embed(h_tuple: ContractionTuple, a_list):
    """Assemble the single contraction and block-diagonal matrix of the k-tuple reduction.

    ``A_big = blockdiag(A_1, ..., A_k)`` is ``kn x kn``; ``H_big`` is
    ``kn x km`` with ``H_1, ..., H_k`` stacked in its first column block
    and zeros elsewhere.
    """
    k, n, m = h_tuple.k, h_tuple.n, h_tuple.m
    a_list = _check_pd_list(a_list, k, n)
    h_big = np.zeros((k * n, k * m), dtype=complex)
    h_big[:, :m] = np.vstack(h_tuple.h_list)
    a_big = scipy.linalg.block_diag(*a_list).astype(complex)
    return h_big, a_big


def check_block_identity(h_tuple: ContractionTuple, a_list, tol: float = 1e-9) -> reports.TrialReport:
    """``phi_single(H_big, A_big) - phi_multi(a_list) == (k - 1) m`` to `tol` absolute."""
    if not h_tuple.exact:
        raise ContractionError("the block identity needs an exact-resolution tuple")
    h_big, a_big = block_embed(h_tuple, a_list)
    big = phi_single(h_big, a_big)
    small = phi_multi(PhiSpec(h_tuple), a_list)
    k, m = h_tuple.k, h_tuple.m
    return reports.identity(
        "block-identity", big - small, (k - 1) * m, (h_tuple.n, m, k), rel=0.0, abs_tol=tol
    )


# Evaluators: a point is a list of PD matrices (length 1 for phi_single).

def single_evaluator(h) -> Callable[[list], float]:
    h = as_matrix(h)
    return lambda point: phi_single(h, point[0])


def multi_evaluator(spec: PhiSpec) -> Callable[[list], float]:
    return lambda point: phi_multi(spec, point)


def concavity_midpoint_probe(evaluator, point0, point1, rel: float = reports.SLACK_REL):
    """Midpoint concavity ``f((p0 + p1)/2) >= (f(p0) + f(p1))/2``."""
    point0 = [np.asarray(a) for a in point0]
    point1 = [np.asarray(a) for a in point1]
    if len(point0) != len(point1) or any(a.shape != b.shape for a, b in zip(point0, point1)):
        raise DimensionError("midpoint probe endpoints have different shapes")
    mid = [0.5 * (a + b) for a, b in zip(point0, point1)]
    avg = 0.5 * (evaluator(point0) + evaluator(point1))
    at_mid = evaluator(mid)
    # lhs <= rhs form: average of endpoint values <= value at midpoint
    return reports.inequality("concavity-midpoint", avg, at_mid, _dims(point0), rel=rel)


def concavity_second_derivative_probe(evaluator, point, direction, step: float = FD2_STEP,
                                      rel: float = FD2_REL) -> reports.TrialReport:
    """Central second difference of ``t -> f(point + t direction)`` at 0.

    Must be ``<= rel * (1 + |f(point)|)``.  Raises if the segment
    ``point ± step * direction`` leaves the positive definite cone.
    """
    point = [np.asarray(a, dtype=complex) for a in point]
    direction = [as_hermitian(d) for d in direction]
    if len(direction) != len(point):
        raise DimensionError("direction and point have different lengths")
    plus = [a + step * d for a, d in zip(point, direction)]
    minus = [a - step * d for a, d in zip(point, direction)]
    for a in plus + minus:
        if np.linalg.eigvalsh(a)[0] <= 0:
            raise NotPositiveDefiniteError(
                f"segment leaves the PD cone at step {step:g}; shrink the step"
            )
    f0 = evaluator(point)
    d2 = (evaluator(plus) - 2.0 * f0 + evaluator(minus)) / step**2
    return reports.bounded("concavity-second-difference", d2, rel * (1.0 + abs(f0)), _dims(point), f0=f0)


def check_homogeneity(spec: PhiSpec, a_list, s: float, rel: float = 1e-10) -> reports.TrialReport:
    """``phi_multi(s A) == s phi_multi(A)``; only valid for exact resolution."""
    if not spec.contraction.exact:
        raise ContractionError("homogeneity holds only for an exact-resolution tuple")
    if s <= 0:
        raise ValueError("s must be positive")
    lhs = phi_multi(spec, [s * np.asarray(a) for a in a_list])
    rhs = s * phi_multi(spec, a_list)
    ct = spec.contraction
    return reports.identity("homogeneity", lhs, rhs, (ct.n, ct.m, ct.k), rel=rel)


def augment(h_tuple: ContractionTuple):
    """Complete a sub-resolution tuple with ``H_{k+1} = (I - sum H_i* H_i)^{1/2}``.

    Returns the ``m x m`` positive definite completion.  Rejected when its
    smallest eigenvalue is below 1e-8, since the reduction divides by it.
    """
    m = h_tuple.m
    sd = _eigh(0.5 * (np.eye(m) - h_tuple.gram() + (np.eye(m) - h_tuple.gram()).conj().T))
    if sd.eigenvalues[0] < AUGMENT_MIN_EIG**2:
        raise ContractionError(
            f"I - sum H_i* H_i is too close to singular (smallest eigenvalue {sd.eigenvalues[0]:.3e})"
        )
    return sd.apply(np.sqrt)


def phi_augmented(spec: PhiSpec, a_list) -> float:
    """Evaluate ``phi_multi`` with ``L`` through the augmented tuple without ``L``.

    Uses ``A_{k+1} = exp(H_{k+1}^-1 L H_{k+1}^-1)``, which turns the extra
    congruence term into ``L`` itself.  The round trip through ``exp`` and
    ``log`` loses about ``eps * exp(2 ||H_{k+1}^-1 L H_{k+1}^-1||)`` relative
    accuracy, so keep that norm moderate.
    """
    ct = spec.contraction
    a_list = _check_pd_list(a_list, ct.k, ct.n)
    h_extra = augment(ct)
    h_inv = np.linalg.inv(h_extra)
    a_extra = expm_h(h_inv @ spec.l_or_zero() @ h_inv)
    blocks = list(ct.h_list) + [h_extra]
    logs = [logm_pd(a) for a in a_list] + [logm_pd(a_extra)]
    return trace_real(expm_h(congruence_sum(blocks, logs)))


def phi_scalar_weights(l_term, weights: Sequence[float], a_list) -> float:
    """``Tr exp(L + sum p_i log A_i)`` computed directly."""
    l_term = as_hermitian(l_term)
    expo = l_term + sum(p * logm_pd(as_positive_definite(a)) for p, a in zip(weights, a_list))
    return trace_real(expm_h(expo))


def _phi_multi_form(point, spec: PhiSpec) -> float:
    return phi_multi(spec, point)


def _add_tuple(p, d, t):
    return [a + t * b for a, b in zip(p, d)]


def _dims(point) -> tuple:
    n = np.asarray(point[0]).shape[0]
    return (n, n, len(point))


calculus.register_form("phi_multi", _phi_multi_form, _add_tuple, "concave")
