"""Pure-Python exact search, used when the compiled extension is unavailable.

Arguments (shared with the compiled kernel):

* ``order`` lists vertices in branching order.
* ``nptr``/``nidx`` are CSR adjacency.
* ``tptr``/``tidx`` list, per position ``p`` of ``order``, the vertices whose
  neighborhood is complete once ``order[p]`` is placed; those get checked there.
* ``k`` colors ``1..k``; ``partial`` adds ``0`` meaning unassigned.
* ``limit`` caps the number of search nodes (``-1`` for no cap).

Returns ``(colors or None, nodes, aborted)``.
"""

from __future__ import annotations


def search(n, order, nptr, nidx, tptr, tidx, k, closed, partial, limit=-1):
    stride = k + 1
    cnt = [0] * (max(n, 1) * stride)
    col = [-1] * n
    nbrs = [list(nidx[nptr[v]:nptr[v + 1]]) for v in range(n)]
    if closed:
        nbrs = [lst + [v] for v, lst in enumerate(nbrs)]
    trig = [list(tidx[tptr[p]:tptr[p + 1]]) for p in range(n)]
    nodes = 0
    aborted = False

    def satisfied(v):
        base = v * stride
        for c in range(1, k + 1):
            if cnt[base + c] == 1:
                return True
        return False

    def dfs(p, maxused):
        nonlocal nodes, aborted
        if p == n:
            return True
        if 0 <= limit <= nodes:
            aborted = True
            return False
        v = order[p]
        choices = list(range(1, min(maxused + 1, k) + 1))
        if partial:
            choices.append(0)
        for c in choices:
            nodes += 1
            col[v] = c
            for w in nbrs[v]:
                cnt[w * stride + c] += 1
            if all(satisfied(t) for t in trig[p]):
                if dfs(p + 1, max(maxused, c)):
                    return True
            for w in nbrs[v]:
                cnt[w * stride + c] -= 1
            col[v] = -1
            if aborted:
                return False
        return False

    found = dfs(0, 0)
    if aborted:
        return None, nodes, True
    return (list(col) if found else None), nodes, False
