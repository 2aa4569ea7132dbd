# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled fixpoint kernel for simulation and bisimulation refinement.

Same contract as simrex._simcore_py.simulation_fixpoint; the worklist
deletion loop runs over flat C arrays.
"""

from libc.stdlib cimport free, malloc

IMPLEMENTATION = "cython"


cdef inline void* _alloc(size_t count, size_t width) except NULL:
    cdef void* p = malloc(count * width if count > 0 else width)
    if p == NULL:
        raise MemoryError()
    return p


def simulation_fixpoint(int n, int m, accepting, succ_offsets, succ_targets,
                        bint symmetric):
    """Maximal simulation (or bisimulation, when symmetric) over an LTS.

    See the pure-Python twin for the full contract. Returns a row-major
    n*n bytearray.
    """
    cdef int nm = n * m
    cdef long long nn = <long long> n * n
    cdef int i, s, a, t, u, v, u2, v2, pu, pv
    cdef long long p, q, head, tail, count
    cdef int ntargets = len(succ_targets)
    cdef bint ok, found, deleted

    res = bytearray(nn)
    cdef unsigned char[::1] R = res

    cdef int* offs = NULL
    cdef int* targs = NULL
    cdef int* poffs = NULL
    cdef int* ptargs = NULL
    cdef int* pfill = NULL
    cdef unsigned char* acc = NULL
    cdef long long* ring = NULL
    cdef unsigned char* queued = NULL
    try:
        offs = <int*> _alloc(nm + 1, sizeof(int))
        targs = <int*> _alloc(ntargets, sizeof(int))
        for i in range(nm + 1):
            offs[i] = succ_offsets[i]
        for i in range(ntargets):
            targs[i] = succ_targets[i]
        acc = <unsigned char*> _alloc(n, sizeof(unsigned char))
        for i in range(n):
            acc[i] = 1 if accepting[i] else 0

        # reverse adjacency (predecessors per state and label), CSR form
        poffs = <int*> _alloc(nm + 1, sizeof(int))
        pfill = <int*> _alloc(nm, sizeof(int))
        for i in range(nm + 1):
            poffs[i] = 0
        for i in range(nm):
            a = i % m
            for t in range(offs[i], offs[i + 1]):
                poffs[targs[t] * m + a + 1] += 1
        for i in range(nm):
            poffs[i + 1] += poffs[i]
        ptargs = <int*> _alloc(ntargets, sizeof(int))
        for i in range(nm):
            pfill[i] = poffs[i]
        for i in range(nm):
            s = i // m
            a = i % m
            for t in range(offs[i], offs[i + 1]):
                ptargs[pfill[targs[t] * m + a]] = s
                pfill[targs[t] * m + a] += 1

        for u in range(n):
            for v in range(n):
                if symmetric:
                    ok = acc[u] == acc[v]
                else:
                    ok = acc[u] == 0 or acc[v] == 1
                R[u * n + v] = 1 if ok else 0

        ring = <long long*> _alloc(nn if nn > 0 else 1, sizeof(long long))
        queued = <unsigned char*> _alloc(nn if nn > 0 else 1, sizeof(unsigned char))
        head = 0
        tail = 0
        count = 0
        for p in range(nn):
            queued[p] = 0
        for p in range(nn):
            if R[p]:
                ring[tail] = p
                tail = tail + 1 if tail + 1 < nn else 0
                count += 1
                queued[p] = 1

        while count > 0:
            p = ring[head]
            head = head + 1 if head + 1 < nn else 0
            count -= 1
            queued[p] = 0
            if not R[p]:
                continue
            u = <int> (p // n)
            v = <int> (p % n)

            deleted = False
            for a in range(m):
                if deleted:
                    break
                for t in range(offs[u * m + a], offs[u * m + a + 1]):
                    u2 = targs[t]
                    found = False
                    for i in range(offs[v * m + a], offs[v * m + a + 1]):
                        if R[<long long> u2 * n + targs[i]]:
                            found = True
                            break
                    if not found:
                        deleted = True
                        break
                if symmetric and not deleted:
                    for t in range(offs[v * m + a], offs[v * m + a + 1]):
                        v2 = targs[t]
                        found = False
                        for i in range(offs[u * m + a], offs[u * m + a + 1]):
                            if R[<long long> targs[i] * n + v2]:
                                found = True
                                break
                        if not found:
                            deleted = True
                            break

            if deleted:
                R[p] = 0
                for a in range(m):
                    for t in range(poffs[u * m + a], poffs[u * m + a + 1]):
                        pu = ptargs[t]
                        for i in range(poffs[v * m + a], poffs[v * m + a + 1]):
                            pv = ptargs[i]
                            q = <long long> pu * n + pv
                            if R[q] and not queued[q]:
                                queued[q] = 1
                                ring[tail] = q
                                tail = tail + 1 if tail + 1 < nn else 0
                                count += 1
    finally:
        free(offs)
        free(targs)
        free(acc)
        free(poffs)
        free(ptargs)
        free(pfill)
        free(ring)
        free(queued)
    return res
