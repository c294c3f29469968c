"""Compatible orderings of index pairs and the realizable set of ordering pairs.

Index pairs are 1-based tuples ``(k, l)`` with ``k <= l``. An ordering of
``S+(p)`` is stored as the tuple of pairs from rank 1 downwards; the rank
maps ``sigma_plus`` / ``sigma_minus`` are derived from it.

Realizability works in log space: with ``y = log x`` the products
``x_k x_l`` order exactly like the sums ``y_k + y_l``. A candidate order is
realizable when the strict system "consecutive sums decrease, y decreases"
is feasible. By homogeneity the strict inequalities are replaced with
slack >= 1 and the closed system is decided in rational arithmetic.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import OrderingError
from .exactlp import feasible_point

P_MAX_DEFAULT = 6

IndexPair = tuple[int, int]


def p_max() -> int:
    env = os.environ.get("ABS_PPT_PMAX")
    return int(env) if env else P_MAX_DEFAULT


def s_plus(p: int) -> list[IndexPair]:
    return [(k, l) for k in range(1, p + 1) for l in range(k, p + 1)]


def s_minus(p: int) -> list[IndexPair]:
    return [(k, l) for k in range(1, p + 1) for l in range(k + 1, p + 1)]


@dataclass(frozen=True)
class OrderingPair:
    p: int
    plus_order: tuple[IndexPair, ...]
    minus_order: tuple[IndexPair, ...]

    @property
    def sigma_plus(self) -> dict[IndexPair, int]:
        return {a: r for r, a in enumerate(self.plus_order, start=1)}

    @property
    def sigma_minus(self) -> dict[IndexPair, int]:
        return {a: r for r, a in enumerate(self.minus_order, start=1)}

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "sigma_plus": [[k, l, r] for (k, l), r in self.sigma_plus.items()],
            "sigma_minus": [[k, l, r] for (k, l), r in self.sigma_minus.items()],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OrderingPair":
        plus = sorted(d["sigma_plus"], key=lambda t: t[2])
        minus = sorted(d["sigma_minus"], key=lambda t: t[2])
        return cls(
            int(d["p"]),
            tuple((int(k), int(l)) for k, l, _ in plus),
            tuple((int(k), int(l)) for k, l, _ in minus),
        )


@dataclass(frozen=True)
class SigmaSet:
    p: int
    pairs: tuple[OrderingPair, ...]
    witnesses: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.pairs)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "count": len(self.pairs),
            "pairs": [
                dict(pair.to_dict(), witness_log_x=list(w))
                for pair, w in zip(self.pairs, self.witnesses)
            ],
        }


def dominance_relations(p: int) -> set[tuple[IndexPair, IndexPair]]:
    """Forced precedences ``(a, b)``: ``a`` outranks ``b`` for every decreasing positive x."""
    pairs = s_plus(p)
    return {
        (a, b)
        for a in pairs
        for b in pairs
        if a != b and a[0] <= b[0] and a[1] <= b[1]
    }


def _as_order(candidate, p=None) -> tuple[IndexPair, ...]:
    """Accept a sequence of pairs (rank order) or a dict pair -> rank."""
    if isinstance(candidate, dict):
        ranks = sorted(candidate.values())
        if ranks != list(range(1, len(candidate) + 1)):
            raise OrderingError("ranks are not 1..N", "NOT_A_BIJECTION")
        order = tuple(sorted(candidate, key=candidate.get))
    else:
        order = tuple(tuple(a) for a in candidate)
    if p is None:
        p = (math.isqrt(8 * len(order) + 1) - 1) // 2
    if sorted(order) != s_plus(p):
        raise OrderingError(f"candidate is not a bijection onto S+({p})", "NOT_A_BIJECTION")
    return order


def _diff_row(p, a, b):
    """Coefficients over y of ``s(a) - s(b)``."""
    row = [0] * p
    row[a[0] - 1] += 1
    row[a[1] - 1] += 1
    row[b[0] - 1] -= 1
    row[b[1] - 1] -= 1
    return row


def _solve(p, rows):
    """Exact witness for ``row . y >= 1`` over all rows plus ``y_k - y_{k+1} >= 1``.

    Returns an integer tuple ``y`` with ``y_p = 1`` or ``None``.
    """
    if p == 1:
        return (1,)
    # y_k = 1 + sum_{j >= k} d_j with d_j = 1 + e_j, e_j >= 0
    A, b = [], []
    for row in rows:
        cum = [sum(row[: j + 1]) for j in range(p - 1)]
        A.append(cum)
        b.append(1 - sum(cum))
    e = feasible_point(A, b) if A else [Fraction(0)] * (p - 1)
    if e is None:
        return None
    d = [1 + v for v in e]
    lcd = math.lcm(*(v.denominator for v in d))
    d = [int(v * lcd) for v in d]
    y = [1] * p
    for k in range(p - 2, -1, -1):
        y[k] = y[k + 1] + d[k]
    return tuple(y)


def _satisfies(y, rows) -> bool:
    return all(sum(c * v for c, v in zip(row, y)) >= 1 for row in rows)


def realizable(candidate, p=None):
    """Decide exactly whether a total order on ``S+(p)`` is realized by some strictly decreasing x.

    Returns ``(True, y)`` with an integer log-witness ``y`` (``x = exp(y)``)
    or ``(False, None)``.
    """
    order = _as_order(candidate, p)
    p = order[-1][1] if p is None else p
    rows = [_diff_row(p, a, b) for a, b in zip(order, order[1:])]
    y = _solve(p, rows)
    return (y is not None), y


def induced_sigma_minus(plus_order) -> tuple[IndexPair, ...]:
    """Rank S-(p) in the order the plus ordering ranks it."""
    if isinstance(plus_order, dict):
        plus_order = tuple(sorted(plus_order, key=plus_order.get))
    return tuple(a for a in plus_order if a[0] < a[1])


def make_pair(plus_order, p=None) -> OrderingPair:
    order = _as_order(plus_order, p)
    p = order[-1][1]
    return OrderingPair(p, order, induced_sigma_minus(order))


_cache: dict[int, SigmaSet] = {}
_cache_lock = threading.Lock()


def enumerate_sigma(p: int, pmax: int | None = None) -> SigmaSet:
    """All realizable ordering pairs at level ``p``, in canonical (lexicographic DFS) order.

    Memoized; concurrent callers populate each key at most once.
    """
    limit = p_max() if pmax is None else pmax
    if p < 1 or p > limit:
        raise OrderingError(f"p={p} outside 1..{limit}", "P_TOO_LARGE")
    with _cache_lock:
        if p not in _cache:
            _cache[p] = _enumerate(p)
        return _cache[p]


def _enumerate(p: int) -> SigmaSet:
    elems = s_plus(p)
    dominators = {b: {a for a, bb in dominance_relations(p) if bb == b} for b in elems}
    pairs, witnesses = [], []

    def extend(prefix, placed, rows, y):
        remaining = [a for a in elems if a not in placed]
        if not remaining:
            pairs.append(OrderingPair(p, tuple(prefix), induced_sigma_minus(prefix)))
            witnesses.append(y)
            return
        for r in remaining:
            if not dominators[r] <= placed:
                continue
            # r must beat everything still unplaced; the chain constraints plus
            # these fix the prefix structure exactly
            new_rows = rows + ([_diff_row(p, prefix[-1], r)] if prefix else [])
            check = new_rows + [_diff_row(p, r, t) for t in remaining if t != r]
            if y is not None and _satisfies(y, check):
                ny = y
            else:
                ny = _solve(p, check)
                if ny is None:
                    continue
            prefix.append(r)
            placed.add(r)
            extend(prefix, placed, new_rows, ny)
            prefix.pop()
            placed.discard(r)

    extend([], set(), [], None)
    return SigmaSet(p, tuple(pairs), tuple(witnesses))


def is_compatible(pair: OrderingPair, x) -> bool:
    """Ranks follow non-increasing products of x, and sigma_minus follows sigma_plus on S-."""
    x = [float(v) for v in x]
    prods = [x[k - 1] * x[l - 1] for k, l in pair.plus_order]
    if any(a < b for a, b in zip(prods, prods[1:])):
        return False
    return pair.minus_order == induced_sigma_minus(pair.plus_order)


def extend_ordering(pair: OrderingPair, p: int, witness=None, pmax: int | None = None) -> OrderingPair:
    """Lift a realizable pair at level q to a realizable pair at level p >= q.

    The first q coordinates keep the (log) witness; the new coordinates sit
    strictly below ``2 y_q - y_1``, i.e. below ``x_q^2 / x_1`` in product
    form, so every new index pair ranks after all of ``S+(q)``. The rest
    of the order is then read off from the extended vector.
    """
    limit = p_max() if pmax is None else pmax
    q = pair.p
    if p > limit:
        raise OrderingError(f"p={p} exceeds p_max={limit}", "P_TOO_LARGE")
    if p < q:
        raise OrderingError(f"cannot extend from {q} down to {p}", "P_MISMATCH")
    if p == q:
        return pair
    if witness is None:
        ok, witness = realizable(pair.plus_order, q)
        if not ok:
            raise OrderingError("input pair is not realizable", "NOT_REALIZABLE")
    y = [Fraction(v) for v in witness]
    top = 2 * y[-1] - y[0]
    # offsets 1/3^j keep every new sum's fractional part distinct, so no ties
    y_new = list(y) + [top - j - Fraction(1, 3**j) for j in range(1, p - q + 1)]
    new_pairs = [a for a in s_plus(p) if a[1] > q]
    tail = sorted(new_pairs, key=lambda a: (-(y_new[a[0] - 1] + y_new[a[1] - 1]), a))
    plus = tuple(pair.plus_order) + tuple(tail)
    return OrderingPair(p, plus, induced_sigma_minus(plus))
