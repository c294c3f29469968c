"""Dense matrix substrate: spectra, partial transpose, PSD tests, SVD, Haar unitaries.

Block convention: an ``nm x nm`` matrix is an ``m x m`` grid of ``n x n``
blocks. Global index ``j*n + i`` addresses entry ``i`` of block ``j``. The
partial transpose swaps blocks ``(k, l)`` and ``(l, k)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MatrixError, SpectrumError

TOL_NONNEG = 1e-9
TOL_HERM = 1e-9
TOL_PSD = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending, together with the factor dimensions."""

    values: tuple[float, ...]
    n: int
    m: int

    @property
    def p(self) -> int:
        return min(self.n, self.m)

    @property
    def dim(self) -> int:
        return self.n * self.m

    def lam(self, k: int) -> float:
        """1-based access: ``lam(1)`` is the largest eigenvalue."""
        return self.values[k - 1]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


def validate_spectrum(raw, n: int, m: int, tol: float = TOL_NONNEG) -> Spectrum:
    n, m = int(n), int(m)
    if n < 1 or m < 1:
        raise SpectrumError(f"dimensions must be positive, got {n}x{m}", "BAD_DIMS")
    vals = np.asarray(list(raw), dtype=float)
    if vals.ndim != 1 or vals.size != n * m:
        raise SpectrumError(
            f"expected {n * m} eigenvalues for {n}x{m}, got {vals.size}", "WRONG_LENGTH"
        )
    if not np.all(np.isfinite(vals)):
        raise SpectrumError("eigenvalues must be finite", "NOT_FINITE")
    scale = max(1.0, float(np.max(np.abs(vals))))
    if np.any(vals < -tol * scale):
        raise SpectrumError(
            f"negative eigenvalue {vals.min():.3g} below tolerance", "NEGATIVE_EIGENVALUE"
        )
    vals = np.sort(np.clip(vals, 0.0, None))[::-1]
    return Spectrum(tuple(float(v) for v in vals), n, m)


def _check_square(M) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise MatrixError(f"expected a square matrix, got shape {M.shape}", "DIM_MISMATCH")
    return M


def check_hermitian(M, tol: float = TOL_HERM) -> np.ndarray:
    M = _check_square(M)
    scale = max(1.0, float(np.max(np.abs(M)))) if M.size else 1.0
    if M.size and np.max(np.abs(M - M.conj().T)) > tol * scale:
        raise MatrixError("matrix is not hermitian", "NOT_HERMITIAN")
    return M


def partial_transpose(M, n: int, m: int) -> np.ndarray:
    """Swap blocks ``(k, l)`` and ``(l, k)`` of the ``m x m`` block grid.

    Entries are only moved, so applying this twice returns ``M`` exactly.
    """
    M = _check_square(M)
    if M.shape[0] != n * m:
        raise MatrixError(
            f"matrix of size {M.shape[0]} does not split as {n}x{m}", "DIM_MISMATCH"
        )
    # axes: (block row, row in block, block col, col in block)
    T = M.reshape(m, n, m, n).transpose(2, 1, 0, 3)
    return T.reshape(n * m, n * m).copy()


def sym_eigenvalues(M) -> np.ndarray:
    """All eigenvalues of a hermitian matrix, descending."""
    M = check_hermitian(M)
    return np.linalg.eigvalsh(M)[::-1]


def is_psd(M, tol: float = TOL_PSD) -> tuple[bool, float]:
    """Return ``(psd, min_eigenvalue)``.

    The test is relative: ``min_eig >= -tol * max(1, max|entry|)``.
    """
    M = check_hermitian(M)
    if M.size == 0:
        return True, 0.0
    lo = float(np.linalg.eigvalsh(M)[0])
    scale = max(1.0, float(np.max(np.abs(M))))
    return lo >= -tol * scale, lo


def singular_values(B) -> np.ndarray:
    B = np.atleast_2d(np.asarray(B))
    return np.linalg.svd(B, compute_uv=False)


def reshape_vector(b, n: int, m: int) -> np.ndarray:
    """Arrange the ``m`` subvectors of length ``n`` of ``b`` as columns of an n x m matrix."""
    b = np.asarray(b)
    if b.size != n * m:
        raise MatrixError(f"vector of length {b.size} does not split as {n}x{m}", "DIM_MISMATCH")
    return b.reshape(m, n).T


def haar_unitary(dim: int, seed=None) -> np.ndarray:
    """Haar-distributed unitary from the QR decomposition of a complex Ginibre matrix.

    ``seed`` may be an int or a ``numpy.random.Generator``.
    """
    rng = np.random.default_rng(seed)
    return haar_unitaries(1, dim, rng)[0]


def haar_unitaries(count: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    """Stack of ``count`` independent Haar unitaries, shape ``(count, dim, dim)``."""
    z = rng.standard_normal((count, dim, dim)) + 1j * rng.standard_normal((count, dim, dim))
    q, r = np.linalg.qr(z / np.sqrt(2.0))
    d = np.diagonal(r, axis1=1, axis2=2)
    phases = d / np.abs(d)
    # column j of q gets multiplied by the phase of r[j, j]
    return q * phases[:, None, :]
