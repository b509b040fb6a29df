"""Expressions over ``x``, ``+`` and parentheses.

Grammar (whitespace allowed between tokens)::

    E ::= "x" | "(" E "+" E ")" | "(" E E ")"

An expression's *value* substitutes 1 for every ``x``; its *weight* is the
number of ``x`` it contains.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterator, Union

from .errors import DomainError, ParseError, RangeError

__all__ = [
    "Leaf",
    "Sum",
    "Product",
    "Expression",
    "ExtremalForm",
    "parse",
    "value",
    "weight",
    "render",
    "ones",
    "add",
    "prod",
    "reconstruct_optimal",
    "extremal",
    "extremal_form",
    "max_value",
    "enumerate_expressions",
    "reachable_values",
]


@dataclass(frozen=True, slots=True)
class Leaf:
    pass


@dataclass(frozen=True, slots=True)
class Sum:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True, slots=True)
class Product:
    left: "Expression"
    right: "Expression"


Expression = Union[Leaf, Sum, Product]

X = Leaf()

_SPACE = frozenset(" \t\r\n\f\v")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str, pos=None):
        pos = self.pos if pos is None else pos
        raise ParseError(message, len(self.text[:pos].encode("utf-8")))

    def peek(self) -> str:
        text, pos = self.text, self.pos
        while pos < len(text) and text[pos] in _SPACE:
            pos += 1
        self.pos = pos
        return text[pos] if pos < len(text) else ""

    def expect(self, char: str) -> None:
        found = self.peek()
        if found != char:
            what = repr(found) if found else "end of input"
            self.fail(f"expected {char!r}, found {what}")
        self.pos += 1

    def expr(self) -> Expression:
        c = self.peek()
        if c == "x":
            self.pos += 1
            return X
        if c != "(":
            self.fail(f"unexpected {c!r}" if c else "unexpected end of input")
        self.pos += 1
        left = self.expr()
        if self.peek() == "+":
            self.pos += 1
            node = Sum(left, self.expr())
        else:
            node = Product(left, self.expr())
        self.expect(")")
        return node


def parse(text: str) -> Expression:
    """Parse the canonical textual form.

    >>> parse("(x+(xx))")
    Sum(left=Leaf(), right=Product(left=Leaf(), right=Leaf()))
    """
    p = _Parser(text)
    try:
        e = p.expr()
    except RecursionError:
        p.fail("expression nested too deeply")
    if p.peek():
        p.fail(f"trailing input {p.text[p.pos]!r}")
    return e


def value(e: Expression) -> int:
    if isinstance(e, Leaf):
        return 1
    if isinstance(e, Sum):
        return value(e.left) + value(e.right)
    return value(e.left) * value(e.right)


def weight(e: Expression) -> int:
    if isinstance(e, Leaf):
        return 1
    return weight(e.left) + weight(e.right)


def render(e: Expression, style: str = "canonical") -> str:
    """Print ``e`` in the grammar (``canonical``) or with 1, + and · (``ones``).

    Parentheses are never dropped, so both styles are unambiguous.
    """
    if style == "canonical":
        leaf, plus, times = "x", "+", ""
    elif style == "ones":
        leaf, plus, times = "1", "+", "·"
    else:
        raise ValueError(f"unknown render style {style!r}")
    parts: list[str] = []

    def walk(node):
        if isinstance(node, Leaf):
            parts.append(leaf)
            return
        parts.append("(")
        walk(node.left)
        parts.append(plus if isinstance(node, Sum) else times)
        walk(node.right)
        parts.append(")")

    walk(e)
    return "".join(parts)


def ones(k: int) -> Expression:
    """``1 + (1 + (... + 1))`` with k ones."""
    if k < 1:
        raise DomainError(f"need at least one 1, got {k}")
    e: Expression = X
    for _ in range(k - 1):
        e = Sum(X, e)
    return e


def add(*terms: Expression) -> Expression:
    return reduce(Sum, terms)


def prod(*factors: Expression) -> Expression:
    return reduce(Product, factors)


def reconstruct_optimal(table, n: int) -> Expression:
    """An expression of value ``n`` and weight ``||n||`` read back from ``table``.

    Ties go to the product split with the smallest divisor, then to the sum
    split with the smallest left summand, so the result is deterministic.
    """
    if not 1 <= n <= table.max_n:
        raise RangeError(f"{n} outside table range 1..{table.max_n}")
    v = table.values
    memo: dict[int, Expression] = {1: X}

    def build(m: int) -> Expression:
        if m in memo:
            return memo[m]
        target = int(v[m])
        node = None
        d = 2
        while d * d <= m:
            if m % d == 0 and int(v[d]) + int(v[m // d]) == target:
                node = Product(build(d), build(m // d))
                break
            d += 1
        if node is None:
            for j in range(1, m // 2 + 1):
                if int(v[j]) + int(v[m - j]) == target:
                    node = Sum(build(j), build(m - j))
                    break
        if node is None:
            raise AssertionError(f"no split of {m} attains table value {target}")
        memo[m] = node
        return node

    return build(n)


M2 = Sum(X, X)
M3 = Sum(X, M2)
M4 = Product(M2, M2)


@dataclass(frozen=True)
class ExtremalForm:
    """The shape of the largest-value expression with a given weight.

    ``residue`` is the weight mod 3 and ``k`` its quotient; the expression is
    ``M3**k`` (residue 0), ``M3**(k-1) * M4`` (residue 1) or ``M3**k * M2``
    (residue 2), with the product grouped from the left.
    """

    residue: int
    k: int

    @property
    def weight(self) -> int:
        return 3 * self.k + self.residue

    @property
    def value(self) -> int:
        if self.residue == 0:
            return 3**self.k
        if self.residue == 1:
            return 4 * 3 ** (self.k - 1)
        return 2 * 3**self.k

    def factors(self) -> list[Expression]:
        if self.residue == 0:
            return [M3] * self.k
        if self.residue == 1:
            return [M3] * (self.k - 1) + [M4]
        return [M3] * self.k + [M2]

    def expression(self) -> Expression:
        return prod(*self.factors())


def extremal_form(m: int) -> ExtremalForm:
    if m < 2:
        raise DomainError(f"extremal forms start at weight 2, got {m}")
    return ExtremalForm(m % 3, m // 3)


def extremal(m: int) -> Expression:
    """A weight-``m`` expression of the largest possible value.

    Weight 1 is the lone ``x``.
    """
    if m == 1:
        return X
    return extremal_form(m).expression()


def max_value(m: int) -> int:
    """Largest value of any weight-``m`` expression: ``2**a * 3**b`` with ``m = 2a + 3b``, a <= 2."""
    if m < 1:
        raise DomainError(f"weight must be positive, got {m}")
    if m == 1:
        return 1
    a = {0: 0, 1: 2, 2: 1}[m % 3]
    return 2**a * 3 ** ((m - 2 * a) // 3)


def enumerate_expressions(m: int) -> Iterator[Expression]:
    """Every expression of weight exactly ``m``.  Grows like 2^m * Catalan(m-1)."""
    if m < 1:
        return
    if m == 1:
        yield X
        return
    for i in range(1, m):
        lefts = list(enumerate_expressions(i))
        rights = list(enumerate_expressions(m - i))
        for a in lefts:
            for b in rights:
                yield Sum(a, b)
                yield Product(a, b)


def reachable_values(max_weight: int, bound=None) -> list[set[int]]:
    """``out[m]`` is the set of values of weight-``m`` expressions.

    Values above ``bound`` are dropped; since + and x never decrease a value
    this loses nothing below the bound.
    """
    out: list[set[int]] = [set(), {1}]
    for m in range(2, max_weight + 1):
        vals: set[int] = set()
        for i in range(1, m // 2 + 1):
            for a in out[i]:
                for b in out[m - i]:
                    vals.add(a + b)
                    vals.add(a * b)
        if bound is not None:
            vals = {x for x in vals if x <= bound}
        out.append(vals)
    return out
