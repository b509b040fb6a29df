"""Statistics and derived sequences read off a complexity table."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bounds import SpfSieve
from .errors import DomainError, RangeError
from .expressions import Expression, X, add, ones, prod

__all__ = [
    "BadFactorization",
    "GreatComplexityEntry",
    "RatioRecord",
    "SequenceTruncated",
    "bad_factorizations",
    "great_complexity_sequence",
    "coincidence_stats",
    "selfridge_check",
    "mersenne_check",
    "two_pow_27_identity",
    "ratio_extremes",
    "midline_fraction",
    "figure_data",
    "FIGURE_COLUMNS",
]


class SequenceTruncated(UserWarning):
    pass


@dataclass(frozen=True, order=True)
class BadFactorization:
    m: int
    n: int
    deficit: int


@dataclass(frozen=True)
class GreatComplexityEntry:
    k: int
    n_k: int


@dataclass(frozen=True)
class RatioRecord:
    n: int
    ratio: float


def _require(table, upto: int, lo: int = 1) -> None:
    if not lo <= upto <= table.max_n:
        raise RangeError(f"{upto} outside table range {lo}..{table.max_n}")


def bad_factorizations(table, max_factor: int) -> list[BadFactorization]:
    """Pairs ``(m, n)`` with ``m, n <= max_factor`` and ``||mn|| < ||m|| + ||n||``."""
    if max_factor < 1:
        raise DomainError(f"max_factor must be positive, got {max_factor}")
    _require(table, max_factor * max_factor)
    v = table.values.astype(np.int16)
    idx = np.arange(1, max_factor + 1)
    # row m, column n
    sums = v[idx][:, None] + v[idx][None, :]
    prods = v[np.outer(idx, idx)]
    deficit = sums - prods
    ms, ns = np.nonzero(deficit > 0)
    return [
        BadFactorization(int(m) + 1, int(n) + 1, int(deficit[m, n]))
        for m, n in zip(ms, ns)
    ]


def great_complexity_sequence(table, k_max: int) -> list[GreatComplexityEntry]:
    """Least ``n`` with ``||n|| = k`` for ``k = 1..k_max``.

    Stops early, with a :class:`SequenceTruncated` warning, at the first class
    that has no member inside the table.
    """
    v = table.values
    out = []
    for k in range(1, k_max + 1):
        hits = np.flatnonzero(v == k)
        if len(hits) == 0:
            warnings.warn(
                f"no n <= {table.max_n} has complexity {k}; sequence stops at k={k - 1}",
                SequenceTruncated,
                stacklevel=2,
            )
            break
        out.append(GreatComplexityEntry(k, int(hits[0])))
    return out


def coincidence_stats(table, upto: int, sieve: Optional[SpfSieve] = None):
    """How often the additive bound ``L`` is exact on ``1..upto``.

    Returns ``(equal_count, exceptions)`` where each exception is
    ``(n, ||n||, L(n))``.
    """
    _require(table, upto)
    if sieve is None or sieve.limit < upto:
        sieve = SpfSieve(upto)
    c = table.values[1 : upto + 1].astype(np.int16)
    lv = sieve.l_values[1 : upto + 1]
    diff = np.flatnonzero(c != lv)
    exceptions = [(int(i) + 1, int(c[i]), int(lv[i])) for i in diff]
    return upto - len(exceptions), exceptions


def selfridge_check(table) -> list[tuple[int, int, int, bool]]:
    """Rows ``(e, ||2^e||, 2e, ok)`` for every ``e >= 1`` with ``2^e`` in the table."""
    rows = []
    e = 1
    while 2**e <= table.max_n:
        c = int(table.values[2**e])
        rows.append((e, c, 2 * e, c == 2 * e))
        e += 1
    return rows


def mersenne_check(table) -> list[tuple[int, int, int, bool]]:
    """Rows ``(e, ||2^e - 1||, 2e - 1, ok)`` for ``e >= 2``; ``ok`` is False only on a strict drop."""
    rows = []
    e = 2
    while 2**e - 1 <= table.max_n:
        c = int(table.values[2**e - 1])
        rows.append((e, c, 2 * e - 1, not c < 2 * e - 1))
        e += 1
    return rows


def _pow(base: Expression, e: int) -> Expression:
    return prod(*([base] * e))


def two_pow_27_identity() -> tuple[Expression, Expression]:
    """Expressions for ``2^27`` (weight 57) and ``2^27 - 1`` (weight 56).

    ``2^27 - 1 = (1 + 2*3)(1 + 2^3 3^2)(1 + 2^9 3^3 (1 + 2 3^2))`` written
    with ``2 = 1+1`` and ``3 = 1+1+1``; adding a single 1 gives ``2^27``.
    """
    two, three = ones(2), ones(3)
    minus_one = prod(
        add(X, prod(two, three)),
        add(X, prod(_pow(two, 3), _pow(three, 2))),
        add(X, prod(_pow(two, 9), _pow(three, 3), add(X, prod(two, _pow(three, 2))))),
    )
    return add(X, minus_one), minus_one


def ratio_extremes(table, start: int, stop: int) -> RatioRecord:
    """Largest ``||n|| / ln n`` over ``start <= n <= stop``."""
    if not 2 <= start <= stop:
        raise RangeError(f"need 2 <= start <= stop, got {start}..{stop}")
    _require(table, stop)
    ns = np.arange(start, stop + 1)
    ratios = table.values[start : stop + 1] / np.log(ns)
    i = int(np.argmax(ratios))
    return RatioRecord(int(ns[i]), float(ratios[i]))


def midline_fraction(table, start: int = 2) -> float:
    """Fraction of ``start..max_n`` below ``(5/2) log2 n + sqrt(log2 n * ln log2 n)``.

    The bound holds for almost all n asymptotically; this is only the
    observed share at the table's size.
    """
    _require(table, start, lo=2)
    ns = np.arange(start, table.max_n + 1, dtype=np.float64)
    k = np.log2(ns)
    with np.errstate(invalid="ignore", divide="ignore"):
        slack = np.sqrt(np.where(k > 1, k * np.log(k), 0.0))
    below = table.values[start:] <= 2.5 * k + slack
    return float(below.mean())


FIGURE_COLUMNS = {
    1: ("m", "n", "deficit"),
    2: ("n", "complexity", "lower", "midline", "upper"),
}


def figure_data(table, which: int, limit: int) -> list[tuple]:
    """Rows behind the two plots.

    Figure 1: every bad factorization with both factors ``<= limit``.
    Figure 2: ``(n, ||n||, 3 ln n/ln 3, 5 ln n/(2 ln 2), 3 ln n/ln 2)``.
    """
    if which == 1:
        return [(b.m, b.n, b.deficit) for b in bad_factorizations(table, limit)]
    if which != 2:
        raise DomainError(f"figure must be 1 or 2, got {which}")
    _require(table, limit)
    rows = []
    for n in range(1, limit + 1):
        ln = math.log(n)
        rows.append(
            (n, int(table.values[n]), 3 * ln / math.log(3), 5 * ln / (2 * math.log(2)), 3 * ln / math.log(2))
        )
    return rows
