"""Exact complexity table ``||1..N||``.

Every ``n > 1`` is either a product ``d * (n/d)`` or a sum ``j + (n-j)`` of
two optimally written parts, so ``||n||`` is the minimum over divisor
splits ``2 <= d <= sqrt(n)`` and sum splits ``1 <= j <= n/2``.  The table is
filled bottom-up.

Two modes are provided.  ``NAIVE`` scans both families in full.  ``PRUNED``
starts from the best divisor split and the two upper bounds ``L`` and
``L2``, then scans sum splits in increasing ``j`` and stops as soon as
``g(j) + g(ceil(n/2))`` reaches the current best: ``g`` is a nondecreasing
lower bound and ``n - j >= ceil(n/2)``, so no later ``j`` can win.
"""

from __future__ import annotations

import enum
import logging
import math
import warnings
from bisect import bisect_left
from dataclasses import dataclass, field

import numpy as np

from .bounds import SpfSieve, g_values, l2_values
from .errors import CapacityError, EmptyRangeError, RangeError

__all__ = [
    "ComputeMode",
    "ComplexityTable",
    "TableUnchanged",
    "compute_table",
    "complexity",
    "extend_table",
]

log = logging.getLogger(__name__)

# below this many candidate j the Python loop beats a numpy slice
_VECTOR_MIN = 24


class ComputeMode(enum.Enum):
    NAIVE = "naive"
    PRUNED = "pruned"


class TableUnchanged(UserWarning):
    """Emitted by :func:`extend_table` when nothing needs computing."""


@dataclass(frozen=True, eq=False)
class ComplexityTable:
    """Dense read-only table with ``values[n] == ||n||`` for ``1 <= n <= max_n``.

    ``values`` is a uint8 array of length ``max_n + 1``; slot 0 holds 0.
    """

    max_n: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.values.dtype != np.uint8 or len(self.values) != self.max_n + 1:
            raise ValueError("values must be a uint8 array of length max_n + 1")
        self.values.flags.writeable = False

    def __getitem__(self, n: int) -> int:
        return complexity(self, n)

    def __len__(self) -> int:
        return self.max_n

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexityTable):
            return NotImplemented
        return self.max_n == other.max_n and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.max_n, self.values.tobytes()))

    def members(self, k: int) -> np.ndarray:
        """All ``n`` in range with ``||n|| == k``, ascending."""
        return np.flatnonzero(self.values == k)


def complexity(table: ComplexityTable, n: int) -> int:
    if not 1 <= n <= table.max_n:
        raise RangeError(f"{n} outside table range 1..{table.max_n}")
    return int(table.values[n])


def _to_table(work: np.ndarray, max_n: int) -> ComplexityTable:
    if max_n >= 1 and int(work[1 : max_n + 1].max()) > 255:
        raise CapacityError("a complexity value does not fit in one byte")
    return ComplexityTable(max_n, work[: max_n + 1].astype(np.uint8))


def _fill_naive(work: np.ndarray, start: int, stop: int) -> None:
    for n in range(start, stop + 1):
        half = n // 2
        best = int((work[1 : half + 1] + work[n - half : n][::-1]).min())
        root = math.isqrt(n)
        if root >= 2:
            ds = np.arange(2, root + 1)
            ds = ds[n % ds == 0]
            if len(ds):
                best = min(best, int((work[ds] + work[n // ds]).min()))
        work[n] = best


def _fill_pruned(work: np.ndarray, start: int, stop: int) -> None:
    sieve = SpfSieve(stop)
    lv = sieve.l_values.tolist()
    l2v = l2_values(stop).tolist()
    gv = g_values(stop).tolist()
    gtail = gv[1:]  # gtail[j - 1] == g(j), nondecreasing
    w = work.tolist()
    small_divisors = sieve.small_divisors
    for n in range(start, stop + 1):
        best = lv[n] if lv[n] < l2v[n] else l2v[n]
        if sieve.spf[n] != n:
            for d in small_divisors(n):
                c = w[d] + w[n // d]
                if c < best:
                    best = c
        # j is admissible only while g(j) < best - g(ceil(n/2))
        jmax = bisect_left(gtail, best - gv[n - n // 2])
        if jmax > n // 2:
            jmax = n // 2
        if jmax >= _VECTOR_MIN:
            c = int((work[1 : jmax + 1] + work[n - jmax : n][::-1]).min())
            if c < best:
                best = c
        else:
            for j in range(1, jmax + 1):
                c = w[j] + w[n - j]
                if c < best:
                    best = c
        w[n] = best
        work[n] = best


def _fill(work: np.ndarray, start: int, stop: int, mode: ComputeMode) -> None:
    start = max(start, 2)
    if start > stop:
        return
    if mode is ComputeMode.NAIVE:
        _fill_naive(work, start, stop)
    else:
        _fill_pruned(work, start, stop)


def compute_table(max_n: int, mode: ComputeMode = ComputeMode.PRUNED) -> ComplexityTable:
    """Compute ``||n||`` for ``1 <= n <= max_n``.

    >>> compute_table(12).values[11:].tolist()
    [8, 7]
    """
    if max_n < 1:
        raise EmptyRangeError(f"max_n must be at least 1, got {max_n}")
    mode = ComputeMode(mode)
    work = np.zeros(max_n + 1, dtype=np.int16)
    work[1] = 1
    _fill(work, 2, max_n, mode)
    log.debug("computed table to %d (%s)", max_n, mode.value)
    return _to_table(work, max_n)


def extend_table(
    table: ComplexityTable, new_max: int, mode: ComputeMode = ComputeMode.PRUNED
) -> ComplexityTable:
    """Continue ``table`` up to ``new_max`` without recomputing existing entries.

    If ``new_max`` does not exceed ``table.max_n`` the input table is
    returned as is and a :class:`TableUnchanged` warning is issued.
    """
    if new_max <= table.max_n:
        warnings.warn(
            f"table already covers 1..{table.max_n}; nothing to extend to {new_max}",
            TableUnchanged,
            stacklevel=2,
        )
        return table
    work = np.zeros(new_max + 1, dtype=np.int16)
    work[: table.max_n + 1] = table.values
    _fill(work, table.max_n + 1, new_max, ComputeMode(mode))
    return _to_table(work, new_max)
