"""Signed-eigenvalue matrices and the spectral certificate for absolute PPT.

For an ordering pair the ``p x p`` matrix ``L`` carries the ``p(p+1)/2``
smallest eigenvalues on and above the diagonal and the negated
``p(p-1)/2`` largest below it. A spectrum is PPT under every
``n x m`` decomposition iff ``L + L.T`` is PSD for every realizable pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import Spectrum
from .errors import OrderingError
from .orderings import OrderingPair, enumerate_sigma

ABS_PPT = "ABS_PPT"
NOT_ABS_PPT = "NOT_ABS_PPT"

TOL_DEFAULT = 1e-9


def lambda_matrix(s: Spectrum, pair: OrderingPair) -> np.ndarray:
    if pair.p != s.p:
        raise OrderingError(f"pair is for p={pair.p}, spectrum has p={s.p}", "P_MISMATCH")
    N = s.dim
    L = np.zeros((s.p, s.p))
    for (k, l), r in pair.sigma_plus.items():
        L[k - 1, l - 1] = s.lam(N + 1 - r)
    for (k, l), r in pair.sigma_minus.items():
        L[l - 1, k - 1] = -s.lam(r)
    return L


def quadratic_form(L, x) -> float:
    x = np.asarray(x, dtype=float)
    return float(x @ np.asarray(L) @ x)


def symmetrized(L) -> np.ndarray:
    L = np.asarray(L)
    return L + L.T


def _threshold(s: Spectrum, tol: float) -> float:
    # relative to the largest eigenvalue; the zero spectrum gets an exact test
    return tol * s.values[0] if s.values else 0.0


@dataclass
class Verdict:
    status: str
    margin: float
    tol: float
    threshold: float
    failing_pair: OrderingPair | None = None
    witness_x: np.ndarray | None = None
    boundary: bool = False
    pair_margins: list[float] = field(default_factory=list)

    @property
    def abs_ppt(self) -> bool:
        return self.status == ABS_PPT


def pair_margin(s: Spectrum, pair: OrderingPair) -> tuple[float, np.ndarray]:
    """Smallest eigenvalue of ``L + L.T`` and its unit eigenvector."""
    w, v = np.linalg.eigh(symmetrized(lambda_matrix(s, pair)))
    return float(w[0]), v[:, 0]


def certify_abs_ppt(s: Spectrum, tol: float = TOL_DEFAULT, pmax: int | None = None) -> Verdict:
    sigma = enumerate_sigma(s.p, pmax)
    thr = _threshold(s, tol)
    margins, vecs = [], []
    for pair in sigma.pairs:
        lo, vec = pair_margin(s, pair)
        margins.append(lo)
        vecs.append(vec)
    # first index wins ties: canonical enumeration order
    worst = int(np.argmin(margins))
    margin = margins[worst]
    if margin < -thr:
        x = vecs[worst]
        # sign convention: largest-magnitude entry positive
        if x[np.argmax(np.abs(x))] < 0:
            x = -x
        return Verdict(NOT_ABS_PPT, margin, tol, thr, sigma.pairs[worst], x, False, margins)
    return Verdict(ABS_PPT, margin, tol, thr, boundary=margin < 0, pair_margins=margins)


def closed_form_p2(s: Spectrum, tol: float = TOL_DEFAULT) -> bool:
    """``lam_1 <= lam_{N-1} + 2 sqrt(lam_N lam_{N-2})`` for ``p == 2``.

    With threshold ``t`` the comparison is against ``sqrt((2 lam_N + t)(2 lam_{N-2} + t))``,
    which is the exact condition for the 2x2 matrix to have smallest
    eigenvalue at least ``-t``; at ``t = 0`` it is the plain inequality.
    """
    if s.p != 2:
        raise OrderingError(f"closed form needs p=2, got p={s.p}", "P_MISMATCH")
    N = s.dim
    t = _threshold(s, tol)
    return s.lam(1) <= s.lam(N - 1) + np.sqrt((2 * s.lam(N) + t) * (2 * s.lam(N - 2) + t))


def closed_form_p2_value(s: Spectrum) -> float:
    """Slack ``lam_{N-1} + 2 sqrt(lam_N lam_{N-2}) - lam_1``; non-negative iff the inequality holds."""
    if s.p != 2:
        raise OrderingError(f"closed form needs p=2, got p={s.p}", "P_MISMATCH")
    N = s.dim
    return s.lam(N - 1) + 2 * np.sqrt(s.lam(N) * s.lam(N - 2)) - s.lam(1)


def lmi_p3(s: Spectrum) -> tuple[np.ndarray, np.ndarray]:
    """The two 3x3 matrices that must be PSD when ``p == 3``.

    The first has ``(2,2)`` ranked before ``(1,3)``, the second the reverse.
    """
    if s.p != 3:
        raise OrderingError(f"needs p=3, got p={s.p}", "P_MISMATCH")
    N = s.dim
    lam = s.lam

    def build(d2, off13):
        return np.array([
            [2 * lam(N), lam(N - 1) - lam(1), off13 - lam(2)],
            [lam(N - 1) - lam(1), 2 * d2, lam(N - 4) - lam(3)],
            [off13 - lam(2), lam(N - 4) - lam(3), 2 * lam(N - 5)],
        ])

    return build(lam(N - 2), lam(N - 3)), build(lam(N - 3), lam(N - 2))
