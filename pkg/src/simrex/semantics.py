"""Process semantics of regular expressions: the accepting predicate, the
labeled transition function, and breadth-first exploration into a finite
labeled transition system with DOT and JSON export.

The transition rules:

    0  -a->  nothing                 1  -a->  nothing
    b  -a->  1            when a = b, else nothing
    x+y  -a->  successors of x and of y
    x·y  -a->  x'·y for x -a-> x', plus successors of y when x accepts
    x*   -a->  x'·x* for x -a-> x'

Successor terms are normalized (units dropped, products right-nested), so
the reachable state space is finite and small.
"""

from __future__ import annotations

import json
from collections import deque
from functools import lru_cache
from typing import Iterator

from .syntax import (
    Letter,
    One,
    ONE,
    Product,
    Regex,
    Star,
    Sum,
    Zero,
    letters,
    normalize,
    render,
    seq,
)


class StateSpaceExceeded(RuntimeError):
    """Exploration discovered more reachable states than the configured cap."""

    def __init__(self, count: int, cap: int) -> None:
        self.count = count
        self.cap = cap
        super().__init__(f"state space exceeded: {count} states discovered, cap is {cap}")


@lru_cache(maxsize=1 << 16)
def check(x: Regex) -> bool:
    """True iff x is in an accepting state."""
    match x:
        case Zero() | Letter(_):
            return False
        case One() | Star(_):
            return True
        case Sum(l, r):
            return check(l) or check(r)
        case Product(l, r):
            return check(l) and check(r)
    raise TypeError(f"not a regex: {x!r}")


@lru_cache(maxsize=1 << 17)
def trans(x: Regex, a: str) -> frozenset[Regex]:
    """The set of a-successors of x, each normalized. Always finite."""
    match x:
        case Zero() | One():
            return frozenset()
        case Letter(s):
            return frozenset((ONE,)) if s == a else frozenset()
        case Sum(l, r):
            return trans(l, a) | trans(r, a)
        case Product(l, r):
            tail = normalize(r)
            out = frozenset(seq(s, tail) for s in trans(l, a))
            if check(l):
                out |= trans(r, a)
            return out
        case Star(b):
            loop = normalize(x)
            return frozenset(seq(s, loop) for s in trans(b, a))
    raise TypeError(f"not a regex: {x!r}")


def _state_key(x: Regex) -> tuple[int, str]:
    return (x.size, render(x))


class Lts:
    """A finite labeled transition system over discovery-ordered states.

    succ[i][k] is a sorted tuple of successor indices of state i on
    alphabet[k]; every listed successor is itself a state (closure).
    Immutable after construction.
    """

    __slots__ = ("alphabet", "accepting", "succ", "roots", "names", "states")

    def __init__(
        self,
        alphabet: tuple[str, ...],
        accepting: tuple[bool, ...],
        succ: tuple[tuple[tuple[int, ...], ...], ...],
        roots: tuple[int, ...],
        names: tuple[str, ...] | None = None,
        states: tuple[Regex, ...] | None = None,
    ) -> None:
        n = len(accepting)
        m = len(alphabet)
        self.alphabet = tuple(alphabet)
        self.accepting = tuple(bool(b) for b in accepting)
        self.succ = tuple(
            tuple(tuple(sorted(targets)) for targets in row) for row in succ
        )
        self.roots = tuple(roots)
        self.names = tuple(names) if names is not None else tuple(f"s{i}" for i in range(n))
        self.states = tuple(states) if states is not None else None
        if len(self.succ) != n or any(len(row) != m for row in self.succ):
            raise ValueError("successor table shape does not match states and alphabet")
        if any(t < 0 or t >= n for row in self.succ for targets in row for t in targets):
            raise ValueError("successor index out of range: states are not closed")
        if not 1 <= len(self.roots) <= 2 or any(r < 0 or r >= n for r in self.roots):
            raise ValueError("roots must be one or two valid state indices")
        if len(self.names) != n:
            raise ValueError("one name per state required")

    def __len__(self) -> int:
        return len(self.accepting)

    def label_index(self, label: str) -> int:
        return self.alphabet.index(label)

    def successors(self, state: int, label: str) -> tuple[int, ...]:
        return self.succ[state][self.label_index(label)]

    def edges(self) -> Iterator[tuple[int, str, int]]:
        for i, row in enumerate(self.succ):
            for k, targets in enumerate(row):
                for t in targets:
                    yield i, self.alphabet[k], t

    def to_dot(self) -> str:
        """Graphviz rendering; accepting states are double-circled."""
        lines = ["digraph lts {", "  rankdir=LR;"]
        for r, root in enumerate(self.roots):
            lines.append(f'  __root{r} [shape=none, label=""];')
            lines.append(f"  __root{r} -> n{root};")
        for i, name in enumerate(self.names):
            shape = "doublecircle" if self.accepting[i] else "circle"
            label = name.replace("\\", "\\\\").replace('"', '\\"')
            lines.append(f'  n{i} [shape={shape}, label="{label}"];')
        for i, label, t in self.edges():
            lines.append(f'  n{i} -> n{t} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet),
            "roots": list(self.roots),
            "states": [
                {
                    "index": i,
                    "expr": self.names[i],
                    "accepting": self.accepting[i],
                    "transitions": {
                        self.alphabet[k]: list(self.succ[i][k])
                        for k in range(len(self.alphabet))
                        if self.succ[i][k]
                    },
                }
                for i in range(len(self))
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def explore(*roots: Regex, cap: int = 10000) -> Lts:
    """Breadth-first closure of one or two root expressions under the
    transition function, over the letters occurring in the roots.

    States are normalized terms in discovery order; identical normalized
    states from different roots are shared. Raises StateSpaceExceeded when
    more than `cap` states are discovered.
    """
    if not 1 <= len(roots) <= 2:
        raise ValueError("explore takes one or two root expressions")
    if cap < 1:
        raise ValueError("cap must be at least 1")
    alphabet = tuple(sorted(frozenset().union(*(letters(r) for r in roots))))

    index: dict[Regex, int] = {}
    order: list[Regex] = []
    queue: deque[Regex] = deque()

    def intern(state: Regex) -> int:
        i = index.get(state)
        if i is None:
            i = len(order)
            if i >= cap:
                raise StateSpaceExceeded(i + 1, cap)
            index[state] = i
            order.append(state)
            queue.append(state)
        return i

    root_ids = tuple(intern(normalize(r)) for r in roots)
    succ: list[tuple[tuple[int, ...], ...]] = []
    while queue:
        state = queue.popleft()
        row = []
        for a in alphabet:
            targets = sorted(trans(state, a), key=_state_key)
            row.append(tuple(intern(t) for t in targets))
        succ.append(tuple(row))
    return Lts(
        alphabet=alphabet,
        accepting=tuple(check(s) for s in order),
        succ=tuple(succ),
        roots=root_ids,
        names=tuple(render(s) for s in order),
        states=tuple(order),
    )
