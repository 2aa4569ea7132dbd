"""Shared test helpers: independent oracles and generators.

The oracles here deliberately avoid the code paths they are used to
check: word languages are computed denotationally (not via the transition
function), and accepted-word enumeration walks check/trans directly (not
via the determinized comparison).
"""

from __future__ import annotations

import random

from simrex.semantics import Lts, check, trans
from simrex.syntax import (
    GenConfig,
    Letter,
    One,
    Product,
    Regex,
    Star,
    Sum,
    Zero,
    draw,
    letters,
    normalize,
)


def denoted_words(x: Regex, max_len: int) -> frozenset[str]:
    """The classical word language of x, truncated to words of length
    <= max_len, computed denotationally (no transition function)."""

    def go(e: Regex) -> frozenset[str]:
        match e:
            case Zero():
                return frozenset()
            case One():
                return frozenset({""})
            case Letter(s):
                return frozenset({s}) if max_len >= 1 else frozenset()
            case Sum(l, r):
                return go(l) | go(r)
            case Product(l, r):
                lw, rw = go(l), go(r)
                return frozenset(
                    u + v for u in lw for v in rw if len(u) + len(v) <= max_len
                )
            case Star(b):
                base = go(b)
                out = {""}
                frontier = {""}
                while frontier:
                    nxt = {
                        u + v
                        for u in frontier
                        for v in base
                        if v and len(u) + len(v) <= max_len
                    } - out
                    out |= nxt
                    frontier = nxt
                return frozenset(out)
        raise TypeError(e)

    return go(x)


def accepted_words(x: Regex, max_len: int) -> frozenset[str]:
    """Words of length <= max_len accepted by the process semantics of x,
    enumerated directly over check/trans (layer i holds words of length i)."""
    out: set[str] = set()
    alpha = sorted(letters(x))
    layer: dict[Regex, set[str]] = {normalize(x): {""}}
    for depth in range(max_len + 1):
        for state, words in layer.items():
            if check(state):
                out |= words
        if depth == max_len:
            break
        nxt: dict[Regex, set[str]] = {}
        for state, words in layer.items():
            for a in alpha:
                for succ in trans(state, a):
                    nxt.setdefault(succ, set()).update(w + a for w in words)
        layer = nxt
        if not layer:
            break
    return frozenset(out)


def random_lts(rng: random.Random, max_states: int = 20, max_labels: int = 3) -> Lts:
    """A structurally random LTS with two roots; not derived from a regex."""
    n = rng.randint(1, max_states)
    m = rng.randint(0, max_labels)
    alphabet = tuple("abcdef"[:m])
    accepting = tuple(rng.random() < 0.4 for _ in range(n))
    succ = tuple(
        tuple(
            tuple(sorted(rng.sample(range(n), rng.randint(0, min(n, 3)))))
            for _ in range(m)
        )
        for _ in range(n)
    )
    roots = (0, rng.randrange(n)) if n > 1 else (0,)
    return Lts(alphabet, accepting, succ, roots)


def random_regex(rng: random.Random, max_size: int = 12, alphabet: str = "abc",
                 star_probability: float = 0.25) -> Regex:
    config = GenConfig(max_size=max_size, alphabet=tuple(alphabet),
                       star_probability=star_probability, seed=0)
    return draw(rng, config)
