"""Upper and lower bounding functions for integer complexity.

Three cheap functions sandwich the complexity ``||n||``:

* ``L(n)``: completely additive, ``L(p) = 1 + L(p - 1)`` on primes.
* ``L2(n)``: the cost of writing ``n`` by Horner's rule in base 2.
* ``g(n)``: a step function read off the largest values reachable
  with a fixed number of ones.

so that ``g(n) <= ||n|| <= min(L(n), L2(n))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import DomainError, RangeError

__all__ = [
    "SpfSieve",
    "BoundsReport",
    "L",
    "L2",
    "g",
    "l2_values",
    "g_values",
    "bounds_report",
    "chernoff_tail_count",
    "max_l_ratio",
    "sandwich_violations",
]


class SpfSieve:
    """Smallest-prime-factor table for ``1..limit``.

    ``spf[1] == 1`` and ``spf[p] == p`` exactly for primes.  The sieve also
    carries the memo for ``L``, filled bottom-up on first use.
    """

    def __init__(self, limit: int):
        if limit < 1:
            raise DomainError(f"sieve limit must be positive, got {limit}")
        self.limit = limit
        spf = np.arange(limit + 1, dtype=np.int64)
        for p in range(2, math.isqrt(limit) + 1):
            if spf[p] != p:
                continue
            block = spf[p * p :: p]
            untouched = block == np.arange(p * p, limit + 1, p)
            block[untouched] = p
        spf.flags.writeable = False
        self.spf = spf

    def __repr__(self) -> str:
        return f"SpfSieve(limit={self.limit})"

    def _check(self, n: int) -> None:
        if not 1 <= n <= self.limit:
            raise RangeError(f"{n} outside sieve range 1..{self.limit}")

    def is_prime(self, n: int) -> bool:
        self._check(n)
        return n >= 2 and int(self.spf[n]) == n

    def factorize(self, n: int) -> list[tuple[int, int]]:
        """Prime factorization of ``n`` as ``[(p, e), ...]`` with p ascending."""
        self._check(n)
        spf = self._spf_list
        out: list[tuple[int, int]] = []
        while n > 1:
            p = spf[n]
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out

    def small_divisors(self, n: int) -> list[int]:
        """Divisors ``d`` of ``n`` with ``2 <= d <= sqrt(n)``, ascending."""
        root = math.isqrt(n)
        divs = [1]
        for p, e in self.factorize(n):
            step = []
            pk = 1
            for _ in range(e):
                pk *= p
                step.extend(d * pk for d in divs if d * pk <= root)
            divs.extend(step)
        divs.remove(1)
        divs.sort()
        return divs

    @cached_property
    def _spf_list(self) -> list[int]:
        return self.spf.tolist()

    @cached_property
    def l_values(self) -> np.ndarray:
        """``L(n)`` for every ``0 <= n <= limit`` (index 0 unused)."""
        spf = self._spf_list
        out = [0] * (self.limit + 1)
        out[1] = 1
        for n in range(2, self.limit + 1):
            p = spf[n]
            if p == n:
                out[n] = 1 + out[n - 1]
            else:
                out[n] = out[p] + out[n // p]
        arr = np.asarray(out, dtype=np.int16)
        arr.flags.writeable = False
        return arr


def L(n: int, sieve: SpfSieve) -> int:
    """The completely additive upper bound ``L(n)``."""
    if not 1 <= n <= sieve.limit:
        raise RangeError(f"{n} outside sieve range 1..{sieve.limit}")
    return int(sieve.l_values[n])


def L2(n: int) -> int:
    """Binary upper bound: ``2k`` plus the set bits below the leading one.

    ``L2(1)`` is fixed at 1 so the bound chain holds from the start.
    """
    if n < 1:
        raise DomainError(f"L2 is defined for n >= 1, got {n}")
    if n == 1:
        return 1
    k = n.bit_length() - 1
    return 2 * k + n.bit_count() - 1


def g(n: int) -> int:
    """Step lower bound: 3a, 3a+1 or 3a+2 according to where n sits in [3^a, 3^(a+1))."""
    if n < 1:
        raise DomainError(f"g is defined for n >= 1, got {n}")
    if n == 1:
        return 1
    a = 0
    p = 1
    while p * 3 <= n:
        p *= 3
        a += 1
    # p = 3^a <= n < 3^(a+1)
    if n >= 2 * p:
        return 3 * a + 2
    if 3 * n >= 4 * p:  # n >= 3^a + 3^(a-1)
        return 3 * a + 1
    return 3 * a


def l2_values(limit: int) -> np.ndarray:
    """``L2(n)`` for ``0 <= n <= limit`` as an int16 array (index 0 is 0)."""
    out = np.zeros(limit + 1, dtype=np.int16)
    if limit >= 1:
        out[1:] = [L2(n) for n in range(1, limit + 1)]
    return out


def g_values(limit: int) -> np.ndarray:
    """``g(n)`` for ``0 <= n <= limit``; nondecreasing from index 1."""
    out = np.zeros(limit + 1, dtype=np.int16)
    if limit >= 1:
        out[1] = 1
    if limit >= 2:
        out[2] = 2
    a, p = 1, 3
    while p <= limit:
        nxt = 3 * p
        quarter = p + p // 3
        out[p : min(quarter, limit + 1)] = 3 * a
        out[quarter : min(2 * p, limit + 1)] = 3 * a + 1
        out[2 * p : min(nxt, limit + 1)] = 3 * a + 2
        a, p = a + 1, nxt
    return out


@dataclass(frozen=True)
class BoundsReport:
    n: int
    g_val: int
    L_val: int
    L2_val: int
    complexity_val: Optional[int] = None

    @property
    def verified(self) -> bool:
        """True iff every bound relation known for ``n`` holds exactly.

        Logarithmic comparisons are done in integers: ``c >= log2(1+n)`` is
        ``2**c >= n + 1`` and ``L <= 3 ln n / ln 2`` is ``2**L <= n**3``.
        """
        n, c = self.n, self.complexity_val
        ok = True
        if n >= 2:
            ok = 2**self.L_val <= n**3
        if c is None:
            return ok and self.g_val <= self.L_val
        return ok and self.g_val <= c <= self.L_val and 2**c >= n + 1

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "g": self.g_val,
            "complexity": self.complexity_val,
            "L": self.L_val,
            "L2": self.L2_val,
            "verified": self.verified,
        }


def bounds_report(table, n: int, sieve: Optional[SpfSieve] = None) -> BoundsReport:
    if not 1 <= n <= table.max_n:
        raise RangeError(f"{n} outside table range 1..{table.max_n}")
    if sieve is None or sieve.limit < n:
        sieve = SpfSieve(n)
    return BoundsReport(
        n=n,
        g_val=g(n),
        L_val=L(n, sieve),
        L2_val=L2(n),
        complexity_val=int(table.values[n]),
    )


def chernoff_tail_count(k: int) -> tuple[int, float]:
    """Count n in [2^k, 2^(k+1)) whose binary bound exceeds 5k/2 + sqrt(k ln k).

    Returns ``(count, 2 * 2**k / k**2)``.  The count is taken over ``L2``,
    which dominates the complexity, so it overcounts the numbers with large
    complexity in that octave.
    """
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    if k + 1 > 63:
        raise RangeError(f"2^{k + 1} exceeds the signed 64-bit range")
    threshold = 2.5 * k + math.sqrt(k * math.log(k))
    # L2(n) = 2k + popcount(n) - 1 on the octave; count by popcount classes
    count = sum(
        math.comb(k, ones) for ones in range(k + 1) if 2 * k + ones > threshold
    )
    return count, 2.0 * 2**k / k**2


def max_l_ratio(sieve: SpfSieve, upto: Optional[int] = None) -> tuple[float, int]:
    """Largest ``L(n)/ln n`` for ``2 <= n <= upto`` and the n attaining it."""
    upto = sieve.limit if upto is None else upto
    if not 2 <= upto <= sieve.limit:
        raise RangeError(f"{upto} outside 2..{sieve.limit}")
    ns = np.arange(2, upto + 1)
    ratios = sieve.l_values[2 : upto + 1] / np.log(ns)
    i = int(np.argmax(ratios))
    return float(ratios[i]), i + 2


def sandwich_violations(table, sieve: Optional[SpfSieve] = None) -> list[int]:
    """Every ``n`` in the table breaking one of the bound relations.

    Checked for ``n >= 2``, in exact integer arithmetic::

        3 ln n / ln 3 <= ||n||      i.e.  3**c >= n**3
        log2(1 + n)   <= ||n||      i.e.  2**c >= n + 1
        g(n) <= ||n|| <= L(n), ||n|| <= L2(n)
        L(n) <= 3 ln n / ln 2       i.e.  2**L <= n**3

    and ``||1|| = 1`` for ``n = 1``.
    """
    max_n = table.max_n
    if sieve is None or sieve.limit < max_n:
        sieve = SpfSieve(max_n)
    cs = table.values.tolist()
    ls = sieve.l_values[: max_n + 1].tolist()
    l2s = l2_values(max_n).tolist()
    gs = g_values(max_n).tolist()
    top = max(max(cs), max(ls)) + 1
    pow2 = [2**e for e in range(top)]
    pow3 = [3**e for e in range(top)]
    bad = [] if cs[1] == 1 else [1]
    for n in range(2, max_n + 1):
        c, l = cs[n], ls[n]
        cube = n * n * n
        if not (
            pow3[c] >= cube
            and pow2[c] >= n + 1
            and gs[n] <= c <= l
            and c <= l2s[n]
            and pow2[l] <= cube
        ):
            bad.append(n)
    return bad
