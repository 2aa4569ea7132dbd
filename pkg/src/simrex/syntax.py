"""Regular-expression syntax: AST nodes, parser, printer, normalization
used for state identity, and seeded random generation.

Nodes are immutable, hash structurally with a cached hash, and compare
structurally with an identity fast path, so they work well as set
elements and dictionary keys during state-space exploration.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable


class Regex:
    """Base class for regular expressions over 0, 1, letters, +, product, star."""

    __slots__ = ("_hash", "size")
    _fields: tuple[str, ...] = ()

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("regex nodes are immutable")

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(self) is not type(other):
            return NotImplemented if not isinstance(other, Regex) else False
        if self._hash != other._hash or self.size != other.size:
            return False
        return all(getattr(self, f) == getattr(other, f) for f in self._fields)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return render(self)


def _init(node: Regex, size: int, h: int, **fields: object) -> None:
    for name, value in fields.items():
        object.__setattr__(node, name, value)
    object.__setattr__(node, "size", size)
    object.__setattr__(node, "_hash", h)


class Zero(Regex):
    """The empty language: never accepting, no transitions."""

    __slots__ = ()

    def __init__(self) -> None:
        _init(self, 1, hash("regex:0"))


class One(Regex):
    """The empty word: accepting, no transitions."""

    __slots__ = ()

    def __init__(self) -> None:
        _init(self, 1, hash("regex:1"))


class Letter(Regex):
    """A single alphabet letter (lowercase ASCII)."""

    __slots__ = ("symbol",)
    _fields = ("symbol",)
    __match_args__ = ("symbol",)

    def __init__(self, symbol: str) -> None:
        if len(symbol) != 1 or symbol not in string.ascii_lowercase:
            raise ValueError(f"letters are single lowercase ASCII characters, got {symbol!r}")
        _init(self, 1, hash(("regex:letter", symbol)), symbol=symbol)


def _check(x: object) -> Regex:
    if not isinstance(x, Regex):
        raise TypeError(f"expected a Regex, got {type(x).__name__}")
    return x


class Sum(Regex):
    """Alternative of two expressions."""

    __slots__ = ("left", "right")
    _fields = ("left", "right")
    __match_args__ = ("left", "right")

    def __init__(self, left: Regex, right: Regex) -> None:
        _check(left), _check(right)
        _init(self, 1 + left.size + right.size, hash(("regex:+", left, right)),
              left=left, right=right)


class Product(Regex):
    """Sequential composition of two expressions."""

    __slots__ = ("left", "right")
    _fields = ("left", "right")
    __match_args__ = ("left", "right")

    def __init__(self, left: Regex, right: Regex) -> None:
        _check(left), _check(right)
        _init(self, 1 + left.size + right.size, hash(("regex:.", left, right)),
              left=left, right=right)


class Star(Regex):
    """Iteration of an expression."""

    __slots__ = ("body",)
    _fields = ("body",)
    __match_args__ = ("body",)

    def __init__(self, body: Regex) -> None:
        _check(body)
        _init(self, 1 + body.size, hash(("regex:*", body)), body=body)


ZERO = Zero()
ONE = One()


@lru_cache(maxsize=1 << 15)
def letters(x: Regex) -> frozenset[str]:
    """The set of alphabet letters occurring in x."""
    match x:
        case Letter(s):
            return frozenset((s,))
        case Sum(l, r) | Product(l, r):
            return letters(l) | letters(r)
        case Star(b):
            return letters(b)
        case _:
            return frozenset()


@lru_cache(maxsize=1 << 15)
def letter_count(x: Regex) -> int:
    """Number of letter occurrences in x."""
    match x:
        case Letter(_):
            return 1
        case Sum(l, r) | Product(l, r):
            return letter_count(l) + letter_count(r)
        case Star(b):
            return letter_count(b)
        case _:
            return 0


# --- printing ---------------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def render(x: Regex) -> str:
    """Concrete syntax for x, with parentheses only where the grammar needs
    them; parse(render(x)) is structurally x."""
    match x:
        case Zero():
            return "0"
        case One():
            return "1"
        case Letter(s):
            return s
        case Sum(l, r):
            ls = render(l)
            if isinstance(l, Sum):
                ls = f"({ls})"
            return f"{ls} + {render(r)}"
        case Product(l, r):
            ls, rs = render(l), render(r)
            if isinstance(l, (Sum, Product)):
                ls = f"({ls})"
            if isinstance(r, Sum):
                rs = f"({rs})"
            return f"{ls}{rs}"
        case Star(b):
            bs = render(b)
            if isinstance(b, (Sum, Product)):
                bs = f"({bs})"
            return f"{bs}*"
    raise TypeError(f"not a regex: {x!r}")


# --- parsing ----------------------------------------------------------------


class ParseError(ValueError):
    """Malformed concrete syntax; carries the byte offset of the failure and
    the set of tokens that would have been accepted there."""

    def __init__(self, text: str, offset: int, expected: Iterable[str]) -> None:
        self.text = text
        self.offset = offset
        self.expected = frozenset(expected)
        shown = ", ".join(sorted(self.expected))
        super().__init__(f"syntax error at offset {offset}: expected {shown}")


_ATOM_START = frozenset("01(") | frozenset(string.ascii_lowercase)


class _Parser:
    # Grammar: expr := term ('+' term)*
    #          term := factor (('.'? factor)*      (juxtaposition is product)
    #          factor := atom '*'*
    #          atom := '0' | '1' | letter | '(' expr ')'
    # '+' and products fold to the right; whitespace is insignificant.

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, expected: Iterable[str]) -> ParseError:
        return ParseError(self.text, self.pos, expected)

    def expr(self) -> Regex:
        terms = [self.term()]
        while self.peek() == "+":
            self.pos += 1
            terms.append(self.term())
        out = terms[-1]
        for t in reversed(terms[:-1]):
            out = Sum(t, out)
        return out

    def term(self) -> Regex:
        factors = [self.factor()]
        while True:
            c = self.peek()
            if c == ".":
                self.pos += 1
                factors.append(self.factor())
            elif c in _ATOM_START:
                factors.append(self.factor())
            else:
                break
        out = factors[-1]
        for f in reversed(factors[:-1]):
            out = Product(f, out)
        return out

    def factor(self) -> Regex:
        x = self.atom()
        while self.peek() == "*":
            self.pos += 1
            x = Star(x)
        return x

    def atom(self) -> Regex:
        c = self.peek()
        if c == "0":
            self.pos += 1
            return ZERO
        if c == "1":
            self.pos += 1
            return ONE
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                raise self.fail({")", "+", "*", "letter"})
            self.pos += 1
            return inner
        if c and c in string.ascii_lowercase:
            self.pos += 1
            return Letter(c)
        raise self.fail({"0", "1", "letter", "("})


def parse(text: str) -> Regex:
    """Parse concrete syntax into an AST.

    Product binds tighter than sum, star is postfix and binds tightest;
    juxtaposition and '.' both denote product. Raises ParseError with the
    byte offset and expected-token set on malformed input.
    """
    p = _Parser(text)
    out = p.expr()
    if p.peek():
        raise p.fail({"end of input", "+", "letter"})
    return out


# --- normalization ----------------------------------------------------------


def seq(x: Regex, y: Regex) -> Regex:
    """Product of two normalized regexes, itself normalized: unit factors
    dropped, product spine nested to the right."""
    if isinstance(x, One):
        return y
    if isinstance(y, One):
        return x
    if isinstance(x, Product):
        return Product(x.left, seq(x.right, y))
    return Product(x, y)


@lru_cache(maxsize=1 << 16)
def normalize(x: Regex) -> Regex:
    """Canonical representative of x modulo 1·y = y, y·1 = y and product
    associativity (right-nested spine, no unit factors). Idempotent, and
    preserves the accepting predicate and the transition function.

    Sums are left untouched: their laws are theorems under test, not
    baked-in identifications.
    """
    match x:
        case Sum(l, r):
            return Sum(normalize(l), normalize(r))
        case Product(l, r):
            return seq(normalize(l), normalize(r))
        case Star(b):
            return Star(normalize(b))
        case _:
            return x


# --- random generation ------------------------------------------------------


@dataclass(frozen=True)
class GenConfig:
    """Reproducible random-regex generation parameters."""

    max_size: int = 12
    alphabet: tuple[str, ...] = ("a", "b", "c")
    star_probability: float = 0.25
    seed: int = 0

    def __post_init__(self) -> None:
        ordered: list[str] = []
        for s in self.alphabet:
            if len(s) != 1 or s not in string.ascii_lowercase:
                raise ValueError(f"alphabet entries are single lowercase letters, got {s!r}")
            if s not in ordered:
                ordered.append(s)
        object.__setattr__(self, "alphabet", tuple(ordered))
        if self.max_size < 1:
            raise ValueError("max_size must be positive")
        if not 0.0 <= self.star_probability <= 1.0:
            raise ValueError("star_probability must be in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


def draw(rng: random.Random, config: GenConfig, budget: int | None = None) -> Regex:
    """One random regex of size <= budget (default config.max_size)."""
    if budget is None:
        budget = config.max_size
    if budget >= 2 and rng.random() < config.star_probability:
        return Star(draw(rng, config, budget - 1))
    if budget >= 3 and rng.random() < 0.75:
        left = rng.randint(1, budget - 2)
        l = draw(rng, config, left)
        r = draw(rng, config, budget - 1 - left)
        return Sum(l, r) if rng.random() < 0.5 else Product(l, r)
    roll = rng.random()
    if roll < 0.6 and config.alphabet:
        return Letter(rng.choice(config.alphabet))
    return ONE if roll < 0.8 else ZERO


def generate(config: GenConfig) -> Regex:
    """A random regex of size <= config.max_size, deterministic in the seed."""
    return draw(random.Random(config.seed), config)


def sample(config: GenConfig, count: int) -> list[Regex]:
    """A reproducible sequence of `count` random regexes from one seed."""
    rng = random.Random(config.seed)
    return [draw(rng, config) for _ in range(count)]
