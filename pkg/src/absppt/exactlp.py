"""Exact phase-one simplex over the rationals.

Only feasibility is needed, so the objective is the sum of artificial
variables. Bland's rule guarantees termination. Arithmetic uses
``gmpy2.mpq`` when available and ``fractions.Fraction`` otherwise; both
are exact.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction


def feasible_point(A, b):
    """Find ``e >= 0`` with ``A @ e >= b`` exactly, or return ``None``.

    ``A`` is a list of integer/rational rows. The returned point is a list
    of ``fractions.Fraction``.
    """
    rows = len(A)
    nvar = len(A[0]) if rows else 0
    if rows == 0:
        return [Fraction(0)] * nvar

    # columns: e (nvar) | surplus (rows) | rhs. Artificial columns are not
    # stored; an artificial that leaves the basis never re-enters.
    ncol = nvar + rows
    zero, one = Q(0), Q(1)
    T, basis, art_rows = [], [], []
    for i, (row, rhs) in enumerate(zip(A, b)):
        r = [Q(v) for v in row] + [zero] * rows + [Q(rhs)]
        r[nvar + i] = -one
        if r[-1] < 0:
            r = [-v for v in r]
            basis.append(nvar + i)
        else:
            basis.append(-1)  # artificial
            art_rows.append(i)
        T.append(r)

    cost = [zero] * (ncol + 1)
    for i in art_rows:
        row = T[i]
        cost = [c - v for c, v in zip(cost, row)]

    while True:
        enter = next((j for j in range(ncol) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(rows):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and _bland_key(basis[i], i) < _bland_key(basis[leave], leave))
                ):
                    best, leave = ratio, i
        if leave is None:
            break
        cost = _pivot(T, cost, leave, enter)
        basis[leave] = enter

    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * nvar
    for i, bv in enumerate(basis):
        if 0 <= bv < nvar:
            v = T[i][-1]
            x[bv] = Fraction(int(v.numerator), int(v.denominator))
    return x


def _bland_key(bv, i):
    # fixed variable order for Bland's rule, artificials first
    return bv if bv >= 0 else i - 10**9


def _pivot(T, cost, i, j):
    piv = T[i][j]
    row = [v / piv for v in T[i]]
    T[i] = row
    for k, other in enumerate(T):
        f = other[j]
        if k != i and f != 0:
            T[k] = [a - f * c for a, c in zip(other, row)]
    f = cost[j]
    if f != 0:
        cost = [a - f * c for a, c in zip(cost, row)]
    return cost
