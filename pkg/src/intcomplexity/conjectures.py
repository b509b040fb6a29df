"""Finite-horizon checks of the regularities seen in complexity tables.

Everything here is read from a finite table, so every statement carries a
horizon: the largest power of 3 (or ``j``) for which it was actually
tested.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, RangeError

__all__ = [
    "Rational3",
    "Status",
    "HorizonVerdict",
    "SequenceTerm",
    "FamilyMatch",
    "SearchBounds",
    "stabilization_exponent",
    "a_set_members",
    "a_set_horizons",
    "verify_conj2",
    "class_members",
    "class_members_base3",
    "to_base3",
    "sequence_prefix",
    "family_match",
    "check_decreasing_and_pow3",
    "limit_gaps",
]

_KIND_RESIDUE = {"a": 0, "b": 1, "c": 2}


@total_ordering
@dataclass(frozen=True, eq=False)
class Rational3:
    """``numerator / 3**exp3``, compared and hashed by rational value.

    The numerator is kept as given (typically the witness ``n`` itself);
    :meth:`normalize` strips common factors of 3.
    """

    numerator: int
    exp3: int
    witness: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        if self.numerator < 1 or self.exp3 < 0:
            raise DomainError(f"invalid Rational3 {self.numerator}/3^{self.exp3}")

    @classmethod
    def from_fraction(cls, value) -> "Rational3":
        f = Fraction(value)
        den, e = f.denominator, 0
        while den % 3 == 0:
            den //= 3
            e += 1
        if den != 1:
            raise DomainError(f"{f} does not have a power-of-3 denominator")
        return cls(f.numerator, e)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, 3**self.exp3)

    def normalize(self) -> "Rational3":
        num, e = self.numerator, self.exp3
        while e and num % 3 == 0:
            num //= 3
            e -= 1
        return Rational3(num, e, self.witness)

    def __eq__(self, other):
        if isinstance(other, Rational3):
            return self.fraction == other.fraction
        if isinstance(other, (int, Fraction)):
            return self.fraction == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, Rational3):
            return self.fraction < other.fraction
        if isinstance(other, (int, Fraction)):
            return self.fraction < other
        return NotImplemented

    def __hash__(self):
        return hash(self.fraction)

    def __str__(self) -> str:
        return f"{self.numerator}/3^{self.exp3}"

    def as_dict(self) -> dict:
        return {"numerator": self.numerator, "exp3": self.exp3, "witness": self.witness}


class Status(enum.Enum):
    CONSISTENT = "consistent"
    REFUTED = "refuted"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class HorizonVerdict:
    """Outcome of a finite check.

    ``CONSISTENT`` holds through ``horizon``; ``REFUTED`` carries the first
    failing index in ``witness``; ``EXHAUSTED`` means the range ran out
    before the statement could be tested.
    """

    status: Status
    horizon: Optional[int] = None
    witness: Optional[int] = None

    @classmethod
    def consistent(cls, horizon: int, witness: Optional[int] = None) -> "HorizonVerdict":
        return cls(Status.CONSISTENT, horizon, witness)

    @classmethod
    def refuted(cls, at: int) -> "HorizonVerdict":
        return cls(Status.REFUTED, None, at)

    @classmethod
    def exhausted(cls, horizon: Optional[int] = None) -> "HorizonVerdict":
        return cls(Status.EXHAUSTED, horizon, None)

    def __bool__(self) -> bool:
        return self.status is Status.CONSISTENT


def _check_range(table, top: int) -> None:
    if top > table.max_n:
        raise RangeError(f"needs the table up to {top}, have {table.max_n}")


def stabilization_exponent(table, n: int, horizon: int) -> tuple[int, HorizonVerdict]:
    """Least ``a`` with ``||3^j n|| = 3(j - a) + ||3^a n||`` for ``a <= j <= horizon``.

    The verdict is consistent when that law was tested on at least one
    step (``a < horizon``) and exhausted otherwise.
    """
    if n < 1 or horizon < 0:
        raise DomainError("need n >= 1 and horizon >= 0")
    _check_range(table, 3**horizon * n)
    c = [int(table.values[3**j * n]) for j in range(horizon + 1)]
    a = horizon
    while a > 0 and c[a] - c[a - 1] == 3:
        a -= 1
    if a == horizon:
        return a, HorizonVerdict.exhausted(horizon)
    return a, HorizonVerdict.consistent(horizon, a)


def a_set_horizons(table) -> tuple[np.ndarray, np.ndarray]:
    """Per-``n`` membership in the set A, tested as far as the table allows.

    Returns ``(member, horizon)`` arrays indexed by ``n``: ``horizon[n]`` is
    the largest ``j`` with ``3^j n <= max_n`` and ``member[n]`` says whether
    ``||3^j n|| = 3j + ||n||`` for every ``j`` up to it.
    """
    max_n = table.max_n
    v = table.values.astype(np.int16)
    member = np.ones(max_n + 1, dtype=bool)
    member[0] = False
    horizon = np.zeros(max_n + 1, dtype=np.int16)
    j, p = 1, 3
    while p <= max_n:
        lim = max_n // p
        ns = np.arange(1, lim + 1)
        member[1 : lim + 1] &= v[ns * p] == v[ns] + 3 * j
        horizon[1 : lim + 1] = j
        j, p = j + 1, p * 3
    return member, horizon


def a_set_members(table, max_base: int, horizon: int) -> list[int]:
    """All ``n <= max_base`` with ``||3^j n|| = 3j + ||n||`` for ``j <= horizon``.

    Note 1 is never a member: ``||3|| = 3``, not 4.
    """
    if max_base < 1 or horizon < 0:
        raise DomainError("need max_base >= 1 and horizon >= 0")
    _check_range(table, 3**horizon * max_base)
    v = table.values.astype(np.int16)
    ns = np.arange(1, max_base + 1)
    ok = np.ones(max_base, dtype=bool)
    for j in range(1, horizon + 1):
        ok &= v[ns * 3**j] == v[ns] + 3 * j
    return [int(n) for n in ns[ok]]


def verify_conj2(table, p: int, q: int, horizon: int) -> HorizonVerdict:
    """Look for the threshold after which ``||p(q 3^j + 1)|| = 3j + 1 + ||p|| + ||q||``.

    Consistent (with the least threshold as witness) if the equality holds
    at ``j = horizon`` and every ``j`` from the threshold on; exhausted if it
    fails at the horizon itself, since only eventual equality is claimed.
    """
    if p < 1 or q < 1 or horizon < 0:
        raise DomainError("need p, q >= 1 and horizon >= 0")
    _check_range(table, p * (q * 3**horizon + 1))
    v = table.values
    base = int(v[p]) + int(v[q]) + 1
    holds = [int(v[p * (q * 3**j + 1)]) == 3 * j + base for j in range(horizon + 1)]
    if not holds[-1]:
        return HorizonVerdict.exhausted(horizon)
    a = horizon
    while a > 0 and holds[a - 1]:
        a -= 1
    return HorizonVerdict.consistent(horizon, a)


def to_base3(n: int) -> str:
    return np.base_repr(n, 3)


def class_members(table, k: int) -> list[int]:
    """Every ``n`` in the table with ``||n|| = k``, largest first."""
    return [int(n) for n in table.members(k)[::-1]]


def class_members_base3(table, k: int) -> list[str]:
    return [to_base3(n) for n in class_members(table, k)]


@dataclass(frozen=True)
class SequenceTerm:
    position: int
    value: Rational3
    witness_complexity: int
    stable: bool

    @property
    def witness(self) -> int:
        return self.value.witness

    def as_row(self) -> tuple:
        v = self.value
        return (self.position, v.numerator, v.exp3, v.witness, self.witness_complexity, self.stable)


SEQUENCE_COLUMNS = ("position", "numerator", "exp3", "witness_n", "witness_complexity", "stable")


def sequence_prefix(table, kind: str, count: int, min_horizon: int = 2) -> list[SequenceTerm]:
    """First ``count`` terms of the decreasing sequence of ``n / 3^((||n|| - r)/3)``.

    ``n`` ranges over members of A with ``||n|| = r (mod 3)``, where ``r`` is
    0, 1, 2 for kinds a, b, c.  Each distinct value is reported once, with
    its smallest witness.  A term is stable when its witness passed the A
    test for at least ``min_horizon`` powers of 3 and every earlier term is
    stable; the unstable tail could be reordered by a larger table.
    """
    if kind not in _KIND_RESIDUE:
        raise DomainError(f"kind must be one of a, b, c, got {kind!r}")
    r = _KIND_RESIDUE[kind]
    member, horizon = a_set_horizons(table)
    v = table.values
    ns = np.flatnonzero(member & (v % 3 == r))
    best: dict[Fraction, int] = {}
    for n in ns.tolist():
        e = (int(v[n]) - r) // 3
        key = Fraction(n, 3**e)
        if key not in best:
            best[key] = n
    out = []
    stable = True
    for pos, key in enumerate(sorted(best, reverse=True)[:count]):
        n = best[key]
        c = int(v[n])
        stable = stable and int(horizon[n]) >= min_horizon
        out.append(SequenceTerm(pos, Rational3(n, (c - r) // 3, witness=n), c, stable))
    return out


def check_decreasing_and_pow3(seq: Sequence) -> HorizonVerdict:
    """Strictly decreasing with power-of-3 denominators, or the first index that breaks it."""
    prev = None
    for i, item in enumerate(seq):
        if isinstance(item, SequenceTerm):
            item = item.value
        if not isinstance(item, Rational3):
            try:
                item = Rational3.from_fraction(item)
            except DomainError:
                return HorizonVerdict.refuted(i)
        if prev is not None and not item < prev:
            return HorizonVerdict.refuted(i)
        prev = item
    return HorizonVerdict.consistent(len(seq))


@dataclass(frozen=True)
class SearchBounds:
    max_j: int = 6
    max_a: int = 12


@dataclass(frozen=True)
class FamilyMatch:
    """One way of writing a term inside a conjectured family.

    ``family`` is ``"pq"`` for ``p(q 3^j + 1)/3^(a+j)`` or ``"sporadic"`` for
    the pure powers ``2^x / 3^y``; ``kind`` names the sequence (a, b or c)
    the family feeds.
    """

    kind: str
    family: str
    j: int
    p: Optional[int] = None
    q: Optional[int] = None
    a: Optional[int] = None


# sporadic powers of two feeding each sequence: (2-exponent, 3-exponent) at j
_SPORADIC = {
    "a": lambda j: (3 * j, 2 * j),
    "b": lambda j: (3 * j + 2, 2 * j + 1),
    "c": lambda j: (3 * j + 1, 2 * j),
}

# ||pq|| - 3a  ->  (sequence kind, offset so that ||p(q3^j+1)|| = 3a + 3j + offset)
_PQ_FAMILY = {0: ("b", 1), 1: ("c", 2), -1: ("a", 0)}


def _divisors(m: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(m) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


def family_match(term, table, search_bounds: SearchBounds = SearchBounds()) -> list[FamilyMatch]:
    """All decompositions of ``term`` in the conjectured families.

    For ``p(q 3^j + 1)/3^(a+j)`` the complexity side conditions are read
    from ``table``; decompositions whose numbers fall outside the table
    cannot be checked and are skipped.
    """
    t = term.fraction if isinstance(term, Rational3) else Fraction(term)
    found = []
    for kind, exps in _SPORADIC.items():
        for j in range(search_bounds.max_j + 1):
            x, y = exps(j)
            if Fraction(2**x, 3**y) == t:
                found.append(FamilyMatch(kind, "sporadic", j))
    v = table.values
    for a in range(search_bounds.max_a + 1):
        for j in range(search_bounds.max_j + 1):
            scaled = t * 3 ** (a + j)
            if scaled.denominator != 1:
                continue
            m = scaled.numerator
            if m > table.max_n:
                continue
            for p in _divisors(m):
                rest = m // p - 1
                if rest < 1 or rest % 3**j:
                    continue
                q = rest // 3**j
                if p * q > table.max_n:
                    continue
                fam = _PQ_FAMILY.get(int(v[p * q]) - 3 * a)
                if fam is None:
                    continue
                kind, offset = fam
                if int(v[m]) == 3 * a + 3 * j + offset:
                    found.append(FamilyMatch(kind, "pq", j, p, q, a))
    return found


def limit_gaps(terms: Sequence, limit) -> list[float]:
    """Distances from each term to a conjectured limit point, as floats."""
    lim = Fraction(limit)
    out = []
    for t in terms:
        if isinstance(t, SequenceTerm):
            t = t.value
        f = t.fraction if isinstance(t, Rational3) else Fraction(t)
        out.append(float(f - lim))
    return out
