"""
Deterministic random test objects.

Bit source: Philox4x64-10 (numpy's ``Philox``), keyed by ``(seed, index)``
with the suite tag in the top counter word, so every trial owns an
independent stream that depends only on ``(seed, suite, index)``.

Transforms, applied in draw order:

* uniform: ``(x >> 11) * 2**-53`` in ``[0, 1)``;
* Gaussian: Box-Muller on consecutive uniform pairs ``(u1, u2)``,
  ``r = sqrt(-2 log(1 - u1))``, emitting ``r cos(2 pi u2)`` then
  ``r sin(2 pi u2)``;
* standard complex Gaussian entry: ``(g_re + i g_im) / sqrt(2)``, real part
  drawn first; matrices are filled row-major.

QR factorizations are LAPACK Householder with the phases normalized so
that ``R`` has a non-negative real diagonal.
"""

import zlib
from dataclasses import dataclass

import numpy as np

from .errors import ContractionError
from .matcore import operator_norm
from .tracefn import ContractionTuple

_MASK64 = (1 << 64) - 1


class Stream:
    """Value-semantic random stream for one ``(seed, suite, index)`` triple."""

    def __init__(self, seed: int, index: int = 0, tag: str = ""):
        self.seed = int(seed) & _MASK64
        self.index = int(index) & _MASK64
        self.tag = tag
        word = zlib.crc32(tag.encode("utf-8"))
        self._bits = np.random.Philox(key=[self.seed, self.index], counter=[0, 0, 0, word])
        self._spare = None

    def raw(self, size: int) -> np.ndarray:
        return self._bits.random_raw(size)

    def uniform(self, size: int | None = None, low: float = 0.0, high: float = 1.0):
        count = 1 if size is None else size
        u = (self.raw(count) >> np.uint64(11)).astype(np.float64) * 2.0**-53
        u = low + (high - low) * u
        return float(u[0]) if size is None else u

    def integers(self, low: int, high: int) -> int:
        """Uniform integer in the inclusive range ``[low, high]``."""
        span = high - low + 1
        return low + min(int(self.uniform() * span), span - 1)

    def normal(self, size: int) -> np.ndarray:
        out = np.empty(size)
        i = 0
        if self._spare is not None and size > 0:
            out[0] = self._spare
            self._spare = None
            i = 1
        pairs = (size - i + 1) // 2
        if pairs:
            u = self.uniform(2 * pairs)
            r = np.sqrt(-2.0 * np.log1p(-u[0::2]))
            theta = 2.0 * np.pi * u[1::2]
            g = np.empty(2 * pairs)
            g[0::2] = r * np.cos(theta)
            g[1::2] = r * np.sin(theta)
            out[i:] = g[: size - i]
            if size - i < 2 * pairs:
                self._spare = g[-1]
        return out

    def complex_gaussian(self, rows: int, cols: int) -> np.ndarray:
        g = self.normal(2 * rows * cols)
        return ((g[0::2] + 1j * g[1::2]) / np.sqrt(2.0)).reshape(rows, cols)


def stream(seed: int, index: int = 0, tag: str = "") -> Stream:
    return Stream(seed, index, tag)


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    n_range: tuple = (1, 5)
    m_range: tuple = (1, 5)
    k_range: tuple = (1, 4)
    scale: float = 4.0
    min_singular: float = 0.2
    cond_cap: float = 1e3

    def __post_init__(self):
        for name in ("n_range", "m_range", "k_range"):
            lo, hi = getattr(self, name)
            if lo < 1 or hi < lo:
                raise ValueError(f"{name} must be a non-empty range of positive integers, got {(lo, hi)}")
        if not 0.0 < self.min_singular <= 1.0:
            raise ValueError(f"min_singular must lie in (0, 1], got {self.min_singular}")
        if self.scale < 0:
            raise ValueError("scale must be non-negative")
        if self.cond_cap < 1:
            raise ValueError("cond_cap must be >= 1")


def qr_positive(g: np.ndarray) -> np.ndarray:
    """Orthonormal factor of a reduced QR with ``diag(R) >= 0``."""
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    mag = np.abs(d)
    phase = np.where(mag > 0, d / np.where(mag > 0, mag, 1.0), 1.0)
    # Q R = (Q D)(D* R) with D = diag(phase); D* R has a non-negative diagonal
    return q * phase[None, :]


def rand_unitary(n: int, rs: Stream) -> np.ndarray:
    """Haar-distributed unitary."""
    return qr_positive(rs.complex_gaussian(n, n))


def rand_hermitian(n: int, scale: float, rs: Stream) -> np.ndarray:
    """Hermitian ``(G + G*)/2`` rescaled to operator norm ``scale * u``, ``u`` uniform in ``(0, 1]``."""
    if n < 1:
        raise ValueError("n must be positive")
    g = rs.complex_gaussian(n, n)
    h = 0.5 * (g + g.conj().T)
    u = 1.0 - rs.uniform()
    norm = operator_norm(h)
    if scale == 0 or norm == 0:
        return np.zeros((n, n), dtype=complex)
    return h * (scale * u / norm)


def rand_pd(n: int, cond_cap: float, rs: Stream) -> np.ndarray:
    """``exp`` of a random Hermitian whose spectrum lies in ``±log(cond_cap)/2``."""
    if cond_cap < 1:
        raise ValueError("cond_cap must be >= 1")
    half = 0.5 * np.log(cond_cap)
    w, u = np.linalg.eigh(rand_hermitian(n, half, rs))
    w = np.clip(w, -half, half)
    a = (u * np.exp(w)) @ u.conj().T
    return 0.5 * (a + a.conj().T)


def rand_contraction_tuple(k: int, n: int, m: int, exact: bool, rs: Stream) -> ContractionTuple:
    """Random ``n x m`` blocks resolving (or sub-resolving) the identity.

    The exact case orthonormalizes a ``(k n) x m`` Gaussian and splits it
    into ``k`` row blocks, so it needs ``k n >= m``.  The sub case scales
    the same construction by a factor uniform in ``(0.3, 1)``; when
    ``k n < m`` it scales a Gaussian stack to unit operator norm instead.
    """
    if min(k, n, m) < 1:
        raise ValueError("k, n and m must be positive")
    if k * n < m and exact:
        raise ContractionError(
            f"no exact resolution exists: k*n = {k * n} < m = {m} "
            "(orthonormal columns of a (k n) x m stack are impossible)"
        )
    g = rs.complex_gaussian(k * n, m)
    if k * n >= m:
        stack = qr_positive(g)
    else:
        stack = g / operator_norm(g)
    if not exact:
        stack = stack * rs.uniform(low=0.3, high=1.0)
    return ContractionTuple([stack[i * n:(i + 1) * n] for i in range(k)], exact=exact)


def rand_invertible_contraction(n: int, min_singular: float, rs: Stream) -> np.ndarray:
    """``U diag(s) V*`` with singular values uniform in ``[min_singular, 1]``."""
    if not 0.0 < min_singular <= 1.0:
        raise ValueError(f"min_singular must lie in (0, 1], got {min_singular}")
    u = rand_unitary(n, rs)
    v = rand_unitary(n, rs)
    s = rs.uniform(n, low=min_singular, high=1.0)
    return (u * s) @ v.conj().T


def rand_commuting_pair(n: int, scale: float, rs: Stream):
    """Two PD matrices sharing a random eigenbasis, spectra ``exp(uniform(-scale, scale))``."""
    u = rand_unitary(n, rs)
    out = []
    for _ in range(2):
        lam = np.exp(rs.uniform(n, low=-scale, high=scale))
        a = (u * lam) @ u.conj().T
        out.append(0.5 * (a + a.conj().T))
    return tuple(out)
