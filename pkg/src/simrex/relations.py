"""Deciders for simulation preorder, simulation equivalence, bisimulation
equivalence and trace equivalence, with replayable counterexample evidence
and a brute-force oracle for the fixpoint kernel.

All verdicts come from the greatest fixpoint of a refinement operator over
the joint state space of both operands; the hot deletion loop runs in the
selected kernel backend (see _kernel).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from ._kernel import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from ._kernel import simulation_fixpoint
from .semantics import Lts, check, explore, trans
from .syntax import Regex, normalize, parse, render

RELATIONS = ("sim", "simeq", "bisim", "trace")


# --- relations as pair sets ---------------------------------------------------


@dataclass(frozen=True)
class SimRelation:
    """A set of ordered state-index pairs over an Lts."""

    lts: Lts
    pairs: frozenset[tuple[int, int]]

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)


def _pair_ok(lts: Lts, u: int, v: int, pairs: Iterable[tuple[int, int]]) -> bool:
    if lts.accepting[u] and not lts.accepting[v]:
        return False
    for k in range(len(lts.alphabet)):
        sv = lts.succ[v][k]
        for u2 in lts.succ[u][k]:
            if not any((u2, v2) in pairs for v2 in sv):
                return False
    return True


def is_simulation(lts: Lts, pairs: frozenset[tuple[int, int]]) -> bool:
    """Check the simulation conditions pair by pair."""
    return all(_pair_ok(lts, u, v, pairs) for (u, v) in pairs)


def is_maximal_simulation(lts: Lts, pairs: frozenset[tuple[int, int]]) -> bool:
    """is_simulation, plus: adding any excluded pair breaks the conditions."""
    if not is_simulation(lts, pairs):
        return False
    n = len(lts)
    for u in range(n):
        for v in range(n):
            if (u, v) in pairs:
                continue
            if _pair_ok(lts, u, v, pairs | {(u, v)}):
                return False
    return True


def _csr(lts: Lts) -> tuple[list[int], list[int]]:
    offsets = [0]
    targets: list[int] = []
    for row in lts.succ:
        for cell in row:
            targets.extend(cell)
            offsets.append(len(targets))
    return offsets, targets


def _fixpoint(lts: Lts, symmetric: bool) -> bytearray:
    offsets, targets = _csr(lts)
    acc = [1 if b else 0 for b in lts.accepting]
    return simulation_fixpoint(len(lts), len(lts.alphabet), acc, offsets, targets, symmetric)


def _pairs_of(lts: Lts, matrix: bytearray) -> frozenset[tuple[int, int]]:
    n = len(lts)
    return frozenset((u, v) for u in range(n) for v in range(n) if matrix[u * n + v])


def max_simulation(lts: Lts) -> SimRelation:
    """The maximal simulation over lts, by greatest-fixpoint refinement."""
    return SimRelation(lts, _pairs_of(lts, _fixpoint(lts, False)))


def max_bisimulation(lts: Lts) -> SimRelation:
    """The maximal bisimulation over lts (symmetric-fixpoint deletion)."""
    return SimRelation(lts, _pairs_of(lts, _fixpoint(lts, True)))


def brute_force_sim(lts: Lts) -> SimRelation:
    """Oracle: the maximal simulation by naive full rescans, no indexing.

    Kept deliberately independent of the kernel; rejects more than 64
    states.
    """
    n = len(lts)
    if n > 64:
        raise ValueError(f"brute_force_sim is an oracle for at most 64 states, got {n}")
    labels = range(len(lts.alphabet))
    pairs = {
        (u, v)
        for u in range(n)
        for v in range(n)
        if not lts.accepting[u] or lts.accepting[v]
    }
    changed = True
    while changed:
        changed = False
        for u, v in sorted(pairs):
            ok = True
            for k in labels:
                for u2 in lts.succ[u][k]:
                    if not any((u2, v2) in pairs for v2 in lts.succ[v][k]):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                pairs.discard((u, v))
                changed = True
    return SimRelation(lts, frozenset(pairs))


# --- witnesses ----------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """Replayable evidence that one state fails to (bi)simulate another.

    Step i moves both sides along trace[i], from the pair
    (left_states[i], right_states[i]) to (left_states[i+1],
    right_states[i+1]); challengers[i] records which side picked the move.
    The final pair exhibits the failure directly: an acceptance mismatch,
    or a label on which failure_side can move while the other side cannot.
    """

    trace: tuple[str, ...]
    left_states: tuple[str, ...]
    right_states: tuple[str, ...]
    challengers: tuple[str, ...]
    failure: str  # "acceptance" | "stuck"
    failure_side: str  # "left" | "right"
    stuck_label: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "kind": "game",
            "trace": list(self.trace),
            "left_states": list(self.left_states),
            "right_states": list(self.right_states),
            "challengers": list(self.challengers),
            "failure": self.failure,
            "failure_side": self.failure_side,
            "stuck_label": self.stuck_label,
        }

    def describe(self) -> str:
        path = " ".join(self.trace) if self.trace else "(empty trace)"
        where = f"'{self.left_states[-1]}' vs '{self.right_states[-1]}'"
        if self.failure == "acceptance":
            accepts = self.left_states[-1] if self.failure_side == "left" else self.right_states[-1]
            return f"after trace [{path}], at {where}: only '{accepts}' is accepting"
        mover = self.left_states[-1] if self.failure_side == "left" else self.right_states[-1]
        return (
            f"after trace [{path}], at {where}: "
            f"'{mover}' can take '{self.stuck_label}', the other side cannot"
        )


@dataclass(frozen=True)
class TraceWitness:
    """A word accepted by exactly one side."""

    word: tuple[str, ...]
    accepted_by: str  # "left" | "right"

    def to_json_dict(self) -> dict:
        return {"kind": "word", "word": list(self.word), "accepted_by": self.accepted_by}

    def describe(self) -> str:
        shown = " ".join(self.word) if self.word else "(empty word)"
        return f"word [{shown}] is accepted only by the {self.accepted_by} side"


def replay_witness(w: Witness, x: Regex, y: Regex) -> bool:
    """Re-derive every step and the final obligation of w from the raw
    transition function of (x, y); True iff the witness is faithful."""
    lstate, rstate = normalize(x), normalize(y)
    if render(lstate) != w.left_states[0] or render(rstate) != w.right_states[0]:
        return False
    for i, a in enumerate(w.trace):
        lnext = normalize(parse(w.left_states[i + 1]))
        rnext = normalize(parse(w.right_states[i + 1]))
        if lnext not in trans(lstate, a) or rnext not in trans(rstate, a):
            return False
        lstate, rstate = lnext, rnext
    if w.failure == "acceptance":
        if w.failure_side == "left":
            return check(lstate) and not check(rstate)
        return check(rstate) and not check(lstate)
    if w.stuck_label is None:
        return False
    if w.failure_side == "left":
        return bool(trans(lstate, w.stuck_label)) and not trans(rstate, w.stuck_label)
    return bool(trans(rstate, w.stuck_label)) and not trans(lstate, w.stuck_label)


def replay_trace_witness(w: TraceWitness, x: Regex, y: Regex) -> bool:
    """True iff w.word is accepted by exactly the side it claims."""
    lx, ly = _accepts(x, w.word), _accepts(y, w.word)
    if w.accepted_by == "left":
        return lx and not ly
    return ly and not lx


def _accepts(x: Regex, word: Iterable[str]) -> bool:
    states = {normalize(x)}
    for a in word:
        states = set().union(*(trans(s, a) for s in states)) if states else set()
    return any(check(s) for s in states)


def _extract_witness(lts: Lts, R: bytearray, ru: int, rv: int, symmetric: bool) -> Witness:
    n = len(lts)
    m = len(lts.alphabet)

    def visible(u: int, v: int) -> tuple[str, str, str | None] | None:
        if symmetric:
            if lts.accepting[u] != lts.accepting[v]:
                return ("acceptance", "left" if lts.accepting[u] else "right", None)
        elif lts.accepting[u] and not lts.accepting[v]:
            return ("acceptance", "left", None)
        for k in range(m):
            su, sv = lts.succ[u][k], lts.succ[v][k]
            if su and not sv:
                return ("stuck", "left", lts.alphabet[k])
            if symmetric and sv and not su:
                return ("stuck", "right", lts.alphabet[k])
        return None

    def moves(u: int, v: int) -> list[tuple[str, int, int]]:
        # challenger moves whose every reply is itself a refuted pair
        out = []
        for k in range(m):
            su, sv = lts.succ[u][k], lts.succ[v][k]
            if sv:
                for u2 in su:
                    if all(not R[u2 * n + v2] for v2 in sv):
                        out.append(("left", k, u2))
            if symmetric and su:
                for v2 in sv:
                    if all(not R[u2 * n + v2] for u2 in su):
                        out.append(("right", k, v2))
        return out

    def children(side: str, k: int, mover: int, u: int, v: int) -> list[tuple[int, int]]:
        if side == "left":
            return [(mover, v2) for v2 in lts.succ[v][k]]
        return [(u2, mover) for u2 in lts.succ[u][k]]

    # distance of every refuted pair to a directly visible failure
    layer: dict[tuple[int, int], int] = {}
    bad = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if not R[u * n + v]
    ]
    for u, v in bad:
        if visible(u, v):
            layer[(u, v)] = 0
    depth = 0
    pending = [p for p in bad if p not in layer]
    while pending:
        depth += 1
        newly = []
        for u, v in pending:
            for side, k, mover in moves(u, v):
                if any(c in layer for c in children(side, k, mover, u, v)):
                    newly.append((u, v))
                    break
        if not newly:
            break
        for p in newly:
            layer[p] = depth
        pending = [p for p in pending if p not in layer]

    if (ru, rv) not in layer:
        raise AssertionError("refuted root pair has no witness; fixpoint inconsistent")

    trace: list[str] = []
    challengers: list[str] = []
    lpath, rpath = [ru], [rv]
    u, v = ru, rv
    while layer[(u, v)] > 0:
        here = layer[(u, v)]
        step = None
        for side, k, mover in moves(u, v):
            for child in children(side, k, mover, u, v):
                if layer.get(child, here) < here:
                    step = (side, k, child)
                    break
            if step:
                break
        assert step is not None
        side, k, (u, v) = step
        trace.append(lts.alphabet[k])
        challengers.append(side)
        lpath.append(u)
        rpath.append(v)
    failure, failure_side, stuck_label = visible(u, v)  # type: ignore[misc]
    return Witness(
        trace=tuple(trace),
        left_states=tuple(lts.names[s] for s in lpath),
        right_states=tuple(lts.names[s] for s in rpath),
        challengers=tuple(challengers),
        failure=failure,
        failure_side=failure_side,
        stuck_label=stuck_label,
    )


# --- reports and deciders ------------------------------------------------------


@dataclass(frozen=True)
class DistinguishingReport:
    """Outcome of a relation query, with evidence when it fails."""

    relation: str
    left: str
    right: str
    verdict: bool
    relation_size: int
    state_counts: tuple[int, int]
    witness: Witness | TraceWitness | None = None
    detail: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "relation": self.relation,
            "left": self.left,
            "right": self.right,
            "verdict": self.verdict,
            "relation_size": self.relation_size,
            "state_counts": list(self.state_counts),
            "witness": self.witness.to_json_dict() if self.witness else None,
            "detail": self.detail,
            "kernel": KERNEL_IMPLEMENTATION,
        }


def _reachable(lts: Lts, root: int) -> int:
    seen = {root}
    queue = deque([root])
    while queue:
        s = queue.popleft()
        for row in lts.succ[s]:
            for t in row:
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
    return len(seen)


def _joint(x: Regex, y: Regex, cap: int) -> tuple[Lts, int, int]:
    lts = explore(x, y, cap=cap)
    return lts, lts.roots[0], lts.roots[-1]


def sim_leq(x: Regex, y: Regex, *, cap: int = 10000, witness: bool = True) -> DistinguishingReport:
    """Does y simulate x? Verdict with a replayable witness when it fails.

    Pass witness=False to skip counterexample extraction (cheaper when only
    the verdict matters, e.g. inside rejection sampling).
    """
    lts, ru, rv = _joint(x, y, cap)
    R = _fixpoint(lts, False)
    n = len(lts)
    verdict = bool(R[ru * n + rv])
    evidence = None if verdict or not witness else _extract_witness(lts, R, ru, rv, False)
    return DistinguishingReport(
        relation="sim",
        left=render(x),
        right=render(y),
        verdict=verdict,
        relation_size=sum(R),
        state_counts=(_reachable(lts, ru), _reachable(lts, rv)),
        witness=evidence,
        detail=None if verdict else "left is not simulated by right",
    )


def sim_equiv(x: Regex, y: Regex, *, cap: int = 10000) -> bool:
    """Simulation equivalence: each side simulates the other."""
    lts, ru, rv = _joint(x, y, cap)
    R = _fixpoint(lts, False)
    n = len(lts)
    return bool(R[ru * n + rv] and R[rv * n + ru])


def bisim_equiv(x: Regex, y: Regex, *, cap: int = 10000) -> bool:
    """Bisimulation equivalence: one relation that simulates both ways."""
    lts, ru, rv = _joint(x, y, cap)
    R = _fixpoint(lts, True)
    return bool(R[ru * len(lts) + rv])


def trace_equiv(x: Regex, y: Regex, *, cap: int = 10000) -> bool:
    """Trace equivalence: both sides accept the same words."""
    lts, ru, rv = _joint(x, y, cap)
    verdict, _ = _trace_compare(lts, ru, rv)
    return verdict


def _det_step(lts: Lts, part: frozenset[int], k: int) -> frozenset[int]:
    return frozenset(t for s in part for t in lts.succ[s][k])


def _det_acc(lts: Lts, part: frozenset[int]) -> bool:
    return any(lts.accepting[s] for s in part)


def _trace_compare(lts: Lts, ru: int, rv: int) -> tuple[bool, TraceWitness | None]:
    verdict, witness, _ = _trace_compare_counting(lts, ru, rv)
    return verdict, witness


def _trace_compare_counting(
    lts: Lts, ru: int, rv: int
) -> tuple[bool, TraceWitness | None, int]:
    # subset construction on both sides at once, BFS over determinized pairs
    m = len(lts.alphabet)
    start = (frozenset((ru,)), frozenset((rv,)))
    parent: dict[tuple[frozenset[int], frozenset[int]], tuple | None] = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        left, right = pair
        la, ra = _det_acc(lts, left), _det_acc(lts, right)
        if la != ra:
            word: list[str] = []
            node = pair
            while parent[node] is not None:
                node, a = parent[node]
                word.append(a)
            word.reverse()
            return False, TraceWitness(tuple(word), "left" if la else "right"), len(parent)
        for k in range(m):
            nxt = (_det_step(lts, left, k), _det_step(lts, right, k))
            if nxt not in parent:
                parent[nxt] = (pair, lts.alphabet[k])
                queue.append(nxt)
    return True, None, len(parent)


def compare(x: Regex, y: Regex, relation: str, *, cap: int = 10000) -> DistinguishingReport:
    """Decide one of sim | simeq | bisim | trace, with failure evidence."""
    if relation == "sim":
        return sim_leq(x, y, cap=cap)
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}; expected one of {RELATIONS}")
    lts, ru, rv = _joint(x, y, cap)
    n = len(lts)
    counts = (_reachable(lts, ru), _reachable(lts, rv))
    witness: Witness | TraceWitness | None = None
    detail = None
    if relation == "simeq":
        R = _fixpoint(lts, False)
        size = sum(R)
        verdict = bool(R[ru * n + rv] and R[rv * n + ru])
        if not verdict:
            if not R[ru * n + rv]:
                witness = _extract_witness(lts, R, ru, rv, False)
                detail = "left is not simulated by right"
            else:
                witness = _extract_witness(lts, R, rv, ru, False)
                detail = "right is not simulated by left (witness sides swapped)"
    elif relation == "bisim":
        R = _fixpoint(lts, True)
        size = sum(R)
        verdict = bool(R[ru * n + rv])
        if not verdict:
            witness = _extract_witness(lts, R, ru, rv, True)
            detail = "no bisimulation relates the two roots"
    else:  # trace
        verdict, tw, size = _trace_compare_counting(lts, ru, rv)
        if not verdict:
            witness = tw
            detail = "accepted languages differ"
    return DistinguishingReport(
        relation=relation,
        left=render(x),
        right=render(y),
        verdict=verdict,
        relation_size=size,
        state_counts=counts,
        witness=witness,
        detail=detail,
    )
