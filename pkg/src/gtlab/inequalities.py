"""
Both sides of every trace inequality, packaged as :class:`TrialReport` verdicts.

Each checker evaluates the left- and right-hand side literally from its
formula; reductions between inequalities are tested by comparing reports,
never by routing one checker through another (except where the caller
asks for both routes, as in :func:`check_classical_gt`).
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import reports
from .calculus import _pd_decomp, frechet_log_sd, q_form
from .errors import ContractionError, DimensionError, SingularMatrixError
from .matcore import (
    as_hermitian,
    as_matrix,
    as_positive_definite,
    expm_h,
    logm_pd,
    operator_norm,
    trace_real,
)
from .reports import TrialReport
from .tracefn import CONTRACTION_TOL, ContractionTuple, congruence_sum

__all__ = [
    "TrialReport",
    "DiscreteDistribution",
    "check_q_contraction",
    "check_lemma_main",
    "check_gt_multi",
    "check_classical_gt",
    "check_interpolation",
    "check_gt_logdiff",
    "check_gt_extended",
    "check_expectation",
    "helmholtz_bound",
]

SINGULAR_COND = 1e12


@dataclass(frozen=True, init=False)
class DiscreteDistribution:
    """Finitely supported law on k-tuples of Hermitian matrices."""

    weights: tuple
    atoms: tuple

    def __init__(self, atoms: Sequence):
        if not atoms:
            raise ValueError("a distribution needs at least one atom")
        ws, tuples = [], []
        for w, a_tuple in atoms:
            if not w > 0:
                raise ValueError(f"atom weights must be positive, got {w}")
            ws.append(float(w))
            tuples.append(tuple(as_hermitian(a) for a in a_tuple))
        if abs(sum(ws) - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {sum(ws)!r}, not 1")
        shapes = [tuple(a.shape for a in t) for t in tuples]
        if any(s != shapes[0] for s in shapes):
            raise DimensionError("all atoms must share the same tuple shape")
        object.__setattr__(self, "weights", tuple(ws))
        object.__setattr__(self, "atoms", tuple(tuples))

    def mean_exp(self) -> list[np.ndarray]:
        """Slotwise ``E exp(A_i)``."""
        k = len(self.atoms[0])
        return [sum(w * expm_h(t[i]) for w, t in zip(self.weights, self.atoms)) for i in range(k)]


def _require_exact(h_tuple: ContractionTuple) -> None:
    if not h_tuple.exact:
        raise ContractionError("this inequality requires sum H_i* H_i = I")


def _dims(h_tuple: ContractionTuple) -> tuple:
    return (h_tuple.n, h_tuple.m, h_tuple.k)


def _hermitian_list(b_list, h_tuple: ContractionTuple) -> list[np.ndarray]:
    if len(b_list) != h_tuple.k:
        raise DimensionError(f"expected {h_tuple.k} matrices, got {len(b_list)}")
    out = [as_hermitian(b) for b in b_list]
    for i, b in enumerate(out):
        if b.shape[0] != h_tuple.n:
            raise DimensionError(f"matrix {i} is {b.shape[0]}x{b.shape[0]}, expected n = {h_tuple.n}")
    return out


def _pd_list(a_list, h_tuple: ContractionTuple) -> list[np.ndarray]:
    return [as_positive_definite(a) for a in _hermitian_list(a_list, h_tuple)]


def _l_matrix(l_term, m: int) -> np.ndarray:
    if l_term is None:
        return np.zeros((m, m), dtype=complex)
    l_term = as_hermitian(l_term)
    if l_term.shape[0] != m:
        raise DimensionError(f"L is {l_term.shape[0]}x{l_term.shape[0]}, expected m = {m}")
    return l_term


def _dlog_sum(h_tuple, a_list, b_list) -> tuple[np.ndarray, list[np.ndarray]]:
    """``sum H_i* (d log(A_i) B_i) H_i`` and the list of ``log A_i``."""
    logs, terms = [], []
    for a, b in zip(a_list, b_list):
        _, sd = _pd_decomp(a)
        logs.append(sd.apply(np.log))
        terms.append(frechet_log_sd(sd, b))
    return congruence_sum(h_tuple.h_list, terms), logs


def check_q_contraction(x, a, b) -> TrialReport:
    """``Q(X A X*, B) <= Q(A, X^-1 B X*^-1)`` for an invertible contraction ``X``."""
    x = as_matrix(x)
    a = as_positive_definite(a)
    b = as_matrix(b)
    n = a.shape[0]
    if x.shape != (n, n) or b.shape != (n, n):
        raise DimensionError(f"X and B must be {n}x{n}")
    norm = operator_norm(x)
    if norm > 1.0 + CONTRACTION_TOL:
        raise ContractionError(f"X is not a contraction: operator norm {norm:.12g}")
    cond = np.linalg.cond(x)
    if not np.isfinite(cond) or cond > SINGULAR_COND:
        raise SingularMatrixError(f"X is numerically singular (condition {cond:.3e})")
    x_inv = np.linalg.inv(x)
    lhs = q_form(x @ a @ x.conj().T, b)
    rhs = q_form(a, x_inv @ b @ x_inv.conj().T)
    return reports.inequality("q-contraction", lhs, rhs, (n, n, 1))


def check_lemma_main(l_term, h_tuple: ContractionTuple, a_list, b_list) -> TrialReport:
    """``Tr exp(L + sum H* log(B) H) <= Tr exp(L + sum H* log(A) H) sum H* (d log(A) B) H``."""
    _require_exact(h_tuple)
    l_term = _l_matrix(l_term, h_tuple.m)
    a_list = _pd_list(a_list, h_tuple)
    b_list = _pd_list(b_list, h_tuple)
    lhs = trace_real(expm_h(l_term + congruence_sum(h_tuple.h_list, [logm_pd(b) for b in b_list])))
    dsum, logs = _dlog_sum(h_tuple, a_list, b_list)
    rhs = trace_real(expm_h(l_term + congruence_sum(h_tuple.h_list, logs)) @ dsum)
    return reports.inequality("lemma", lhs, rhs, _dims(h_tuple))


def check_gt_multi(l_term, h_tuple: ContractionTuple, b_list) -> TrialReport:
    """``Tr exp(L + sum H* B H) <= Tr exp(L) sum H* exp(B) H`` for Hermitian ``L, B_i``."""
    _require_exact(h_tuple)
    l_term = _l_matrix(l_term, h_tuple.m)
    b_list = _hermitian_list(b_list, h_tuple)
    lhs = trace_real(expm_h(l_term + congruence_sum(h_tuple.h_list, b_list)))
    rhs = trace_real(expm_h(l_term) @ congruence_sum(h_tuple.h_list, [expm_h(b) for b in b_list]))
    return reports.inequality("gt-multi", lhs, rhs, _dims(h_tuple))


ROUTE_REL = 1e-12


def _route_report(suite, via, direct_lhs, direct_rhs, dims) -> TrialReport:
    """Report from `via` whose pass also requires agreement with the direct route."""
    dev = max(
        abs(via.lhs - direct_lhs) / max(abs(direct_lhs), 1e-300),
        abs(via.rhs - direct_rhs) / max(abs(direct_rhs), 1e-300),
    )
    agree = dev <= ROUTE_REL
    return TrialReport(
        suite, via.lhs, via.rhs, via.slack, via.tol, via.passed and agree, dims,
        extras={"route_deviation": dev, "route_tol": ROUTE_REL,
                "direct_lhs": direct_lhs, "direct_rhs": direct_rhs},
    )


def check_classical_gt(l_term, b) -> TrialReport:
    """``Tr e^{L+B} <= Tr e^L e^B``, via the k = 1, H = I case and directly."""
    l_term = as_hermitian(l_term)
    b = as_hermitian(b)
    n = l_term.shape[0]
    if b.shape[0] != n:
        raise DimensionError("L and B must have the same size")
    via = check_gt_multi(l_term, ContractionTuple([np.eye(n)]), [b])
    direct_lhs = trace_real(expm_h(l_term + b))
    direct_rhs = trace_real(expm_h(l_term) @ expm_h(b))
    return _route_report("classical-gt", via, direct_lhs, direct_rhs, (n, n, 1))


def check_interpolation(l_term, a, b) -> TrialReport:
    """``Tr exp(L + A/2 + B/2) <= Tr exp(L) (exp(A)/2 + exp(B)/2)``."""
    l_term = as_hermitian(l_term)
    a = as_hermitian(a)
    b = as_hermitian(b)
    n = l_term.shape[0]
    if a.shape[0] != n or b.shape[0] != n:
        raise DimensionError("L, A and B must have the same size")
    half = np.eye(n) / np.sqrt(2.0)
    via = check_gt_multi(l_term, ContractionTuple([half, half]), [a, b])
    direct_lhs = trace_real(expm_h(l_term + 0.5 * a + 0.5 * b))
    direct_rhs = trace_real(expm_h(l_term) @ (0.5 * expm_h(a) + 0.5 * expm_h(b)))
    return _route_report("interpolation", via, direct_lhs, direct_rhs, (n, n, 2))


def check_gt_logdiff(h_tuple: ContractionTuple, a_list, b_list) -> TrialReport:
    """``Tr exp(sum H* (log B - log A) H) <= sum Tr H* (d log(A) B) H``."""
    _require_exact(h_tuple)
    a_list = _pd_list(a_list, h_tuple)
    b_list = _pd_list(b_list, h_tuple)
    dsum, logs_a = _dlog_sum(h_tuple, a_list, b_list)
    diffs = [logm_pd(b) - la for b, la in zip(b_list, logs_a)]
    lhs = trace_real(expm_h(congruence_sum(h_tuple.h_list, diffs)))
    return reports.inequality("gt-logdiff", lhs, trace_real(dsum), _dims(h_tuple))


def commuting_logdiff_rhs(h_tuple: ContractionTuple, a_list, b_list) -> float:
    """``sum Tr H* B A^-1 H``: the logdiff right side when each ``A_i, B_i`` commute."""
    return sum(
        trace_real(h.conj().T @ np.asarray(b) @ np.linalg.inv(a) @ h)
        for h, a, b in zip(h_tuple.h_list, a_list, b_list)
    )


def check_gt_extended(h_tuple: ContractionTuple, a_list, b_list, c_list) -> TrialReport:
    """``Tr exp(sum H* (log B + log C - log A) H) <= Tr exp(sum H* log(C) H) sum H* (d log(A) B) H``."""
    _require_exact(h_tuple)
    a_list = _pd_list(a_list, h_tuple)
    b_list = _pd_list(b_list, h_tuple)
    c_list = _pd_list(c_list, h_tuple)
    dsum, logs_a = _dlog_sum(h_tuple, a_list, b_list)
    logs_c = [logm_pd(c) for c in c_list]
    mixed = [logm_pd(b) + lc - la for b, lc, la in zip(b_list, logs_c, logs_a)]
    lhs = trace_real(expm_h(congruence_sum(h_tuple.h_list, mixed)))
    rhs = trace_real(expm_h(congruence_sum(h_tuple.h_list, logs_c)) @ dsum)
    return reports.inequality("gt-extended", lhs, rhs, _dims(h_tuple))


def check_expectation(l_term, h_tuple: ContractionTuple, dist: DiscreteDistribution) -> TrialReport:
    """``E Tr exp(L + sum H* A H) <= Tr exp(L + sum H* log(E e^A) H)`` for a discrete law."""
    l_term = _l_matrix(l_term, h_tuple.m)
    if len(dist.atoms[0]) != h_tuple.k:
        raise DimensionError(f"atoms hold {len(dist.atoms[0])} matrices, tuple has k = {h_tuple.k}")
    if dist.atoms[0][0].shape[0] != h_tuple.n:
        raise DimensionError("atom matrices must be n x n")
    lhs = sum(
        w * trace_real(expm_h(l_term + congruence_sum(h_tuple.h_list, t)))
        for w, t in zip(dist.weights, dist.atoms)
    )
    logs = [logm_pd(e) for e in dist.mean_exp()]
    rhs = trace_real(expm_h(l_term + congruence_sum(h_tuple.h_list, logs)))
    return reports.inequality("expectation", lhs, rhs, _dims(h_tuple), atoms=len(dist.atoms))


def helmholtz_bound(l_term, h_tuple: ContractionTuple, b_list, beta: float) -> tuple[float, float]:
    """Free energy and its lower bound at inverse temperature `beta`.

    With the partition function ``Z = Tr exp(beta (L + sum H* B H))``
    returns ``(-log(Z) / beta, -log(Z_bound) / beta)`` where
    ``Z_bound = Tr exp(beta L) sum H* exp(beta B) H >= Z``; hence the first
    value is never smaller than the second.
    """
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    rep = check_gt_multi(
        beta * _l_matrix(l_term, h_tuple.m), h_tuple, [beta * b for b in _hermitian_list(b_list, h_tuple)]
    )
    if not (rep.lhs > 0 and rep.rhs > 0):
        raise ArithmeticError(f"non-positive partition function (lhs={rep.lhs}, rhs={rep.rhs})")
    return float(-np.log(rep.lhs) / beta), float(-np.log(rep.rhs) / beta)
