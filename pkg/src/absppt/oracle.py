"""Independent checks: rank-one partial-transpose spectra, the rearrangement
minimum, explicit counterexample matrices, and Haar-random falsification.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import (
    Spectrum,
    haar_unitaries,
    partial_transpose,
    reshape_vector,
    sym_eigenvalues,
)
from .errors import AbsPPTError, NotAViolation, OrderingError
from .lmi import lambda_matrix, quadratic_form
from .orderings import OrderingPair


def e_set(x) -> list[float]:
    """``{x_k^2} + {+x_k x_l, -x_k x_l : k < l}`` as a list (multiset)."""
    x = [float(v) for v in x]
    out = [v * v for v in x]
    for a, b in combinations(x, 2):
        out += [a * b, -a * b]
    return out


def rank1_pt_spectrum(b, n: int, m: int) -> np.ndarray:
    b = np.asarray(b, dtype=complex)
    return sym_eigenvalues(partial_transpose(np.outer(b, b.conj()), n, m))


def predicted_rank1_spectrum(b, n: int, m: int) -> np.ndarray:
    """E(singular values of the reshaped vector) padded with zeros, descending."""
    sv = np.linalg.svd(reshape_vector(b, n, m), compute_uv=False)
    vals = e_set(sv) + [0.0] * (min(n, m) * abs(n - m))
    return np.sort(vals)[::-1]


def _diag_index(k: int, l: int, n: int) -> int:
    """0-based global index of entry l of block k (both 1-based)."""
    return (k - 1) * n + (l - 1)


def vector_from_x(x, n: int, m: int) -> np.ndarray:
    p = min(n, m)
    x = np.asarray(x, dtype=float)
    if x.size != p:
        raise OrderingError(f"need {p} entries for {n}x{m}, got {x.size}", "P_MISMATCH")
    b = np.zeros(n * m)
    for k in range(1, p + 1):
        b[_diag_index(k, k, n)] = x[k - 1]
    return b


def rearrangement_min(a, b):
    """Pair the descending ``a`` against the ascending ``b`` and sum.

    Works on any numeric type that sorts (ints and Fractions stay exact).
    """
    a, b = list(a), list(b)
    if len(a) != len(b):
        raise AbsPPTError(f"lengths differ: {len(a)} vs {len(b)}", "LENGTH_MISMATCH")
    a = sorted(a, reverse=True)
    b = sorted(b, reverse=True)
    return sum(ai * bi for ai, bi in zip(reversed(a), b))


@dataclass
class CounterexampleWitness:
    M: np.ndarray
    b: np.ndarray
    value: float
    pair: OrderingPair
    x: np.ndarray


def build_counterexample(s: Spectrum, pair: OrderingPair, x) -> CounterexampleWitness:
    """Assemble a matrix with spectrum ``s`` whose partial transpose has ``b* PT(M) b < 0``.

    ``M`` is built directly in the eigenbasis of ``PT(b b*)`` for
    ``b = vector_from_x(x)``: the small eigenvalues go on the vectors with
    eigenvalue ``x_k x_l``, the large ones on those with ``-x_k x_l``.
    """
    x = np.asarray(x, dtype=float)
    L = lambda_matrix(s, pair)
    q = quadratic_form(L, x)
    if not q < 0:
        raise NotAViolation(f"x^T L x = {q:.3g} is not negative")
    n, m, N = s.n, s.m, s.dim
    lam = s.as_array()
    M = np.zeros((N, N))
    used = set()
    r2 = 1 / np.sqrt(2.0)

    def put(vec, value):
        nonlocal M
        M += value * np.outer(vec, vec)

    for (k, l), r in pair.sigma_plus.items():
        value = lam[N - r]  # lam_{N + 1 - r}, 1-based
        if k == l:
            i = _diag_index(k, k, n)
            v = np.zeros(N)
            v[i] = 1.0
            used.add(i)
        else:
            u, w = _diag_index(k, l, n), _diag_index(l, k, n)
            v = np.zeros(N)
            v[u], v[w] = r2, r2
            used.update((u, w))
        put(v, value)
    for (k, l), r in pair.sigma_minus.items():
        u, w = _diag_index(k, l, n), _diag_index(l, k, n)
        v = np.zeros(N)
        v[u], v[w] = r2, -r2
        put(v, lam[r - 1])

    p_plus, p_minus = len(pair.plus_order), len(pair.minus_order)
    leftover_vals = lam[p_minus : N - p_plus]
    leftover_idx = [i for i in range(N) if i not in used]
    for i, value in zip(leftover_idx, leftover_vals):
        M[i, i] += value

    b = vector_from_x(x, n, m)
    value = float(b @ partial_transpose(M, n, m) @ b)
    return CounterexampleWitness(M, b, value, pair, x)


@dataclass
class Falsification:
    U: np.ndarray
    min_eigenvalue: float
    trial: int


def random_falsify(s: Spectrum, trials: int, seed: int, tol: float = 1e-9, batch: int = 256):
    """Search Haar-random bases for a non-PPT ``U diag(lam) U*``.

    Returns the first violating trial (lowest index) or ``None``. The
    threshold is ``tol`` relative to the largest eigenvalue.
    """
    n, m, N = s.n, s.m, s.dim
    lam = s.as_array()
    thr = tol * max(lam[0], 0.0) if N else 0.0
    rng = np.random.default_rng(seed)
    done = 0
    while done < trials:
        count = min(batch, trials - done)
        U = haar_unitaries(count, N, rng)
        A = (U * lam[None, None, :]) @ U.conj().transpose(0, 2, 1)
        T = A.reshape(count, m, n, m, n).transpose(0, 3, 2, 1, 4).reshape(count, N, N)
        lows = np.linalg.eigvalsh(T)[:, 0]
        bad = np.nonzero(lows < -thr)[0]
        if bad.size:
            i = int(bad[0])
            return Falsification(U[i], float(lows[i]), done + i)
        done += count
    return None
