"""Complexity of boolean functions over GF(2).

A function of ``n`` variables is stored as its truth table, an integer of
``2**n`` bits where bit ``i`` is the value at the input whose binary
encoding is ``i`` (variable ``j`` is bit ``j-1`` of ``i``).  Constants cost
0, each projection costs 1, and ``+`` (xor) and ``*`` (and) add costs.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError, DomainError

__all__ = [
    "BooleanFunction",
    "Census",
    "count_recurrence",
    "closed_form",
    "generating_function_coefficients",
    "exhaustive_complexity",
    "count_vs_bound",
    "counting_argument",
    "MAX_VARS",
]

MAX_VARS = 3


@dataclass(frozen=True, order=True)
class BooleanFunction:
    n_vars: int
    truth_table: int

    def __post_init__(self):
        if not 1 <= self.n_vars <= MAX_VARS:
            raise CapacityError(f"n_vars must be in 1..{MAX_VARS}, got {self.n_vars}")
        if not 0 <= self.truth_table < 1 << (1 << self.n_vars):
            raise DomainError(f"truth table {self.truth_table} too wide for {self.n_vars} variables")

    @classmethod
    def constant(cls, n_vars: int, bit: int) -> "BooleanFunction":
        return cls(n_vars, _full(n_vars) if bit else 0)

    @classmethod
    def projection(cls, n_vars: int, j: int) -> "BooleanFunction":
        if not 1 <= j <= n_vars:
            raise DomainError(f"projection index {j} outside 1..{n_vars}")
        return cls(n_vars, _projection(n_vars, j))

    def __call__(self, *bits: int) -> int:
        i = sum(b << k for k, b in enumerate(bits))
        return (self.truth_table >> i) & 1

    def __add__(self, other: "BooleanFunction") -> "BooleanFunction":
        return BooleanFunction(self.n_vars, self.truth_table ^ other.truth_table)

    def __mul__(self, other: "BooleanFunction") -> "BooleanFunction":
        return BooleanFunction(self.n_vars, self.truth_table & other.truth_table)


def _full(n_vars: int) -> int:
    return (1 << (1 << n_vars)) - 1


def _projection(n_vars: int, j: int) -> int:
    return sum(1 << i for i in range(1 << n_vars) if (i >> (j - 1)) & 1)


def count_recurrence(n: int, kmax: int) -> list[int]:
    """``A_0..A_kmax`` with ``A_0 = 2``, ``A_1 = 2n``, ``A_k = 4 sum A_j A_(k-j)``."""
    if n < 1 or kmax < 0:
        raise DomainError("need n >= 1 and kmax >= 0")
    terms = [2, 2 * n]
    for k in range(2, kmax + 1):
        terms.append(4 * sum(terms[j] * terms[k - j] for j in range(1, k)))
    return terms[: kmax + 1]


def closed_form(n: int, k: int) -> Fraction:
    """``C(2k-2, k) (8n)^k / (2(2k-2))`` in exact arithmetic; undefined below k = 2."""
    if k < 2:
        raise DomainError(f"the closed form divides by 2(2k-2); k must be >= 2, got {k}")
    return Fraction(math.comb(2 * k - 2, k) * (8 * n) ** k, 2 * (2 * k - 2))


def generating_function_coefficients(n: int, kmax: int) -> list[Fraction]:
    """Taylor coefficients of ``(17 - sqrt(1 - 32 n x)) / 8`` up to ``x**kmax``."""
    # sqrt(1 - u) = sum binom(1/2, k) (-u)^k
    coeffs = []
    binom = Fraction(1)
    for k in range(kmax + 1):
        if k:
            binom = binom * (Fraction(1, 2) - (k - 1)) / k
        sqrt_coeff = binom * (-32 * n) ** k
        coeffs.append(((17 if k == 0 else 0) - sqrt_coeff) / 8)
    return coeffs


@dataclass
class Census:
    """Exact complexities of all functions of ``n_vars`` variables."""

    n_vars: int
    complexity: dict[int, int]
    parent: dict[int, tuple]

    def __getitem__(self, f: BooleanFunction) -> int:
        return self.complexity[f.truth_table]

    def by_function(self) -> dict[BooleanFunction, int]:
        return {BooleanFunction(self.n_vars, t): c for t, c in self.complexity.items()}

    def counts(self) -> dict[int, int]:
        """``a_k``: how many functions have complexity exactly ``k``."""
        return dict(sorted(Counter(self.complexity.values()).items()))

    def formula(self, truth_table: int) -> str:
        """A minimum-cost formula for the function, rebuilt from BFS parents."""
        step = self.parent[truth_table]
        op = step[0]
        if op == "const":
            return str(step[1])
        if op == "proj":
            return f"x{step[1]}"
        if op == "not":
            return f"(1+{self.formula(step[1])})"
        sym = "+" if op == "+" else "·"
        return f"({self.formula(step[1])}{sym}{self.formula(step[2])})"

    def formula_cost(self, truth_table: int) -> int:
        step = self.parent[truth_table]
        if step[0] == "const":
            return 0
        if step[0] == "proj":
            return 1
        if step[0] == "not":
            return self.formula_cost(step[1])
        return self.formula_cost(step[1]) + self.formula_cost(step[2])


def exhaustive_complexity(n_vars: int) -> Census:
    """Shortest-weight closure of {0, 1, x_1..x_n} under xor and and.

    Level ``w`` holds the functions of complexity exactly ``w``; it is built
    from pairs of lower levels whose costs sum to ``w``, then closed under
    adding the free constant 1.
    """
    if n_vars < 1:
        raise DomainError(f"n_vars must be positive, got {n_vars}")
    if n_vars > MAX_VARS:
        raise CapacityError(f"exhaustive census is capped at {MAX_VARS} variables")
    full = _full(n_vars)
    total = 1 << (1 << n_vars)
    cost = {0: 0, full: 0}
    parent: dict[int, tuple] = {0: ("const", 0), full: ("const", 1)}
    levels = [[0, full]]
    w = 0
    while len(cost) < total:
        w += 1
        level = []

        def admit(f, how):
            if f not in cost:
                cost[f] = w
                parent[f] = how
                level.append(f)

        if w == 1:
            for j in range(1, n_vars + 1):
                admit(_projection(n_vars, j), ("proj", j))
        for i in range(1, w // 2 + 1):
            for f in levels[i]:
                for h in levels[w - i]:
                    admit(f ^ h, ("+", f, h))
                    admit(f & h, ("*", f, h))
        for f in list(level):
            admit(f ^ full, ("not", f))
        if not level:
            raise AssertionError("closure stalled before covering every function")
        levels.append(level)
    return Census(n_vars, cost, parent)


def count_vs_bound(n_vars: int) -> list[tuple[int, int, int]]:
    """Rows ``(k, a_k, A_k)`` for every complexity attained by some function."""
    counts = exhaustive_complexity(n_vars).counts()
    kmax = max(counts)
    bound = count_recurrence(n_vars, kmax)
    return [(k, counts.get(k, 0), bound[k]) for k in range(kmax + 1)]


def counting_argument(n: int, theta: float = 0.5) -> tuple[int, float, int]:
    """Compare ``log2(sum_{k<=x} A_k)`` with ``log2 |F_n| = 2^n`` at ``x = floor(2^(theta n))``.

    Returns ``(x, log2 of the cumulative bound, 2**n)``.  When the middle
    entry is far below the last, most functions need more than ``x`` leaves.
    """
    if n < 1 or not 0 < theta < 1:
        raise DomainError("need n >= 1 and 0 < theta < 1")
    x = int(2 ** (theta * n))
    total = 2 + (2 * n if x >= 1 else 0)
    for k in range(2, x + 1):
        total += int(closed_form(n, k))
    return x, math.log2(total), 2**n
