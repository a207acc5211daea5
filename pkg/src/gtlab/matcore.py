"""
Dense complex matrices and the Hermitian functional calculus.

Matrices are plain ``complex128`` numpy arrays.  The validators
:func:`as_hermitian` and :func:`as_positive_definite` play the role of
typed constructors: they check the input, symmetrize it and hand back a
fresh array that downstream code may treat as exactly Hermitian.
"""

import logging
from typing import NamedTuple

import numpy as np

from .errors import (
    DimensionError,
    EigenError,
    ExpOverflowError,
    MatrixFormatError,
    NotHermitianError,
    NotPositiveDefiniteError,
)

log = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-10
ORTHO_TOL = 1e-9
RECON_TOL = 1e-9
PD_FLOOR = 1e-12
OVERFLOW_GUARD = 700.0
TRACE_IMAG_TOL = 1e-9


class SpectralDecomposition(NamedTuple):
    """Eigenvalues (ascending) and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    unitary: np.ndarray

    def apply(self, f) -> np.ndarray:
        """Return ``U diag(f(λ)) U*``."""
        u = self.unitary
        return _herm((u * f(self.eigenvalues)) @ u.conj().T)


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-D complex array."""
    a = np.array(m, dtype=np.complex128, copy=True)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise MatrixFormatError("matrix contains NaN or Inf entries")
    return a


def _herm(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def _require_square(a: np.ndarray, what: str = "matrix") -> None:
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"{what} must be square, got shape {a.shape}")


def as_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate that `m` is Hermitian and return its exact symmetrization.

    Parameters
    ----------
    m : array_like
        Square matrix.
    tol : float, optional
        Allowed entrywise deviation ``|M - M*|`` relative to
        ``max(1, ||M||_F)``.

    Returns
    -------
    numpy.ndarray
        ``(M + M*) / 2``.
    """
    a = as_matrix(m)
    _require_square(a, "Hermitian matrix")
    dev = np.max(np.abs(a - a.conj().T))
    if dev > tol * max(1.0, np.linalg.norm(a)):
        raise NotHermitianError(f"matrix is not Hermitian: max |M - M*| = {dev:.3e}")
    return _herm(a)


def pd_floor(a: np.ndarray) -> float:
    return PD_FLOOR * max(1.0, float(np.linalg.norm(a)))


def as_positive_definite(m) -> np.ndarray:
    """Validate a positive definite matrix; no regularization is applied."""
    a = as_hermitian(m)
    lam_min = float(np.linalg.eigvalsh(a)[0])
    if lam_min <= pd_floor(a):
        raise NotPositiveDefiniteError(
            f"matrix is not positive definite: smallest eigenvalue {lam_min:.6e}"
        )
    return a


def min_eigenvalue(a) -> float:
    return float(np.linalg.eigvalsh(as_hermitian(a))[0])


def hermitian_eig(m) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix with ascending eigenvalues."""
    a = as_hermitian(m)
    return _eigh(a)


def _eigh(a: np.ndarray) -> SpectralDecomposition:
    try:
        w, u = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        try:
            cond = float(np.linalg.cond(a))
        except np.linalg.LinAlgError:
            cond = float("inf")
        raise EigenError(
            f"eigendecomposition failed for a {a.shape[0]}x{a.shape[0]} matrix "
            f"(condition estimate {cond:.3e})"
        ) from exc
    return SpectralDecomposition(w, u)


def _exp_guard(w: np.ndarray) -> None:
    if w[-1] > OVERFLOW_GUARD:
        raise ExpOverflowError(
            f"largest eigenvalue {w[-1]:.4g} exceeds {OVERFLOW_GUARD}; "
            "rescale the input before exponentiating"
        )


def expm_h(m: np.ndarray) -> np.ndarray:
    """Exponential of a matrix known to be Hermitian up to round-off.

    Skips the tolerance check of :func:`matrix_exp`; used on exponents
    assembled internally from sums like ``L + sum H* X H``.
    """
    sd = _eigh(_herm(np.asarray(m, dtype=np.complex128)))
    _exp_guard(sd.eigenvalues)
    return sd.apply(np.exp)


def logm_pd(a: np.ndarray) -> np.ndarray:
    """Logarithm of a matrix already validated as positive definite."""
    sd = _eigh(_herm(np.asarray(a, dtype=np.complex128)))
    if sd.eigenvalues[0] <= 0:
        raise NotPositiveDefiniteError(
            f"matrix is not positive definite: smallest eigenvalue {sd.eigenvalues[0]:.6e}"
        )
    return sd.apply(np.log)


def matrix_exp(m) -> np.ndarray:
    """Matrix exponential ``U diag(exp λ) U*`` of a Hermitian matrix."""
    return expm_h(as_hermitian(m))


def matrix_log(a) -> np.ndarray:
    """Principal logarithm of a positive definite matrix.

    Raises
    ------
    NotPositiveDefiniteError
        If the smallest eigenvalue is below ``1e-12 * max(1, ||A||_F)``.
    """
    h = as_hermitian(a)
    sd = _eigh(h)
    if sd.eigenvalues[0] <= pd_floor(h):
        raise NotPositiveDefiniteError(
            f"matrix is not positive definite: smallest eigenvalue {sd.eigenvalues[0]:.6e}"
        )
    return sd.apply(np.log)


def operator_norm(m) -> float:
    """Largest singular value, as ``sqrt(max eig(M* M))``."""
    a = as_matrix(m)
    g = a.conj().T @ a
    lam = np.linalg.eigvalsh(_herm(g))[-1]
    return float(np.sqrt(max(lam, 0.0)))


def trace_real(m) -> float:
    """Real part of the trace; the imaginary residue goes to the debug log."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got {a.ndim} dimensions")
    _require_square(a)
    tr = np.trace(a)
    if log.isEnabledFor(logging.DEBUG):
        scale = max(1.0, float(np.linalg.norm(a)))
        if abs(tr.imag) > TRACE_IMAG_TOL * scale:
            log.debug("trace has imaginary part %.3e (||M||_F = %.3e)", tr.imag, scale)
    return float(tr.real)


def adjoint(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T


def unitarity_defect(u: np.ndarray) -> float:
    """Frobenius distance of ``U* U`` from the identity."""
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[1])))


# JSON matrix encoding: {"rows": n, "cols": m, "data": [[re, im], ...]} row-major.

def encode_matrix(m) -> dict:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got {a.ndim} dimensions")
    flat = a.reshape(-1)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def decode_matrix(obj) -> np.ndarray:
    """Parse the JSON matrix encoding, rejecting malformed payloads."""
    if not isinstance(obj, dict):
        raise MatrixFormatError(f"matrix must be a JSON object, got {type(obj).__name__}")
    try:
        rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    except KeyError as exc:
        raise MatrixFormatError(f"matrix object missing key {exc.args[0]!r}") from None
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise MatrixFormatError(f"rows/cols must be positive integers, got {rows!r}, {cols!r}")
    if not isinstance(data, list) or len(data) != rows * cols:
        n = len(data) if isinstance(data, list) else "non-list"
        raise MatrixFormatError(f"data must hold rows*cols = {rows * cols} entries, got {n}")
    out = np.empty(rows * cols, dtype=np.complex128)
    for i, pair in enumerate(data):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        ):
            raise MatrixFormatError(f"entry {i} must be a [re, im] pair of numbers")
        out[i] = complex(pair[0], pair[1])
    if not np.all(np.isfinite(out)):
        raise MatrixFormatError("matrix contains NaN or Inf entries")
    return out.reshape(rows, cols)
