"""Pure-Python fixpoint kernel; behavioral twin of the compiled extension.

Computes the greatest fixpoint of the (bi)simulation refinement operator by
worklist deletion: start from all acceptance-consistent pairs, delete pairs
whose successor obligation fails, and recheck only the predecessor pairs a
deletion can have invalidated.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

IMPLEMENTATION = "python"


def simulation_fixpoint(
    n: int,
    m: int,
    accepting: Sequence[int],
    succ_offsets: Sequence[int],
    succ_targets: Sequence[int],
    symmetric: bool,
) -> bytearray:
    """Maximal simulation (or bisimulation, when symmetric) over an LTS.

    States are 0..n-1 and labels 0..m-1; the successors of state s on
    label a are succ_targets[succ_offsets[s*m+a]:succ_offsets[s*m+a+1]].
    Returns a row-major n*n byte matrix R with R[u*n+v] == 1 iff v
    simulates u (symmetric=False) or u and v are bisimilar (True).
    """
    succ = [
        tuple(succ_targets[succ_offsets[i]:succ_offsets[i + 1]])
        for i in range(n * m)
    ]
    pred: list[list[int]] = [[] for _ in range(n * m)]
    for i in range(n * m):
        s, a = divmod(i, m)
        for t in succ[i]:
            pred[t * m + a].append(s)

    R = bytearray(n * n)
    for u in range(n):
        au = accepting[u]
        base = u * n
        for v in range(n):
            if (au == accepting[v]) if symmetric else (not au or accepting[v]):
                R[base + v] = 1

    def violates(u: int, v: int) -> bool:
        for a in range(m):
            su = succ[u * m + a]
            sv = succ[v * m + a]
            for u2 in su:
                base = u2 * n
                if not any(R[base + v2] for v2 in sv):
                    return True
            if symmetric:
                for v2 in sv:
                    if not any(R[u2 * n + v2] for u2 in su):
                        return True
        return False

    queue: deque[int] = deque(p for p in range(n * n) if R[p])
    queued = bytearray(n * n)
    for p in queue:
        queued[p] = 1
    while queue:
        p = queue.popleft()
        queued[p] = 0
        if not R[p]:
            continue
        u, v = divmod(p, n)
        if violates(u, v):
            R[p] = 0
            for a in range(m):
                for pu in pred[u * m + a]:
                    base = pu * n
                    for pv in pred[v * m + a]:
                        q = base + pv
                        if R[q] and not queued[q]:
                            queued[q] = 1
                            queue.append(q)
    return R
