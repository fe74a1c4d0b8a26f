"""Pure-Python permutation kernels.

Fallback implementation of the hot loops; charkit._speedups provides the same
functions compiled with Cython. Both operate on permutations represented as
tuples of 0-based images and must return identical results.
"""

from __future__ import annotations

BACKEND = "pure"


def closure(gens, cap=None):
    """Elements of the subgroup generated by `gens`, sorted.

    Raises ValueError when `cap` is given and the closure exceeds it.
    """
    d = len(gens[0])
    ident = tuple(range(d))
    seen = {ident}
    frontier = [ident]
    rng = range(d)
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = tuple(v[g[i]] for i in rng)
                if w not in seen:
                    if cap is not None and len(seen) >= cap:
                        raise ValueError("order cap exceeded")
                    seen.add(w)
                    new.append(w)
        frontier = new
    return sorted(seen)


def conjugacy_partition(elements, gens):
    """Partition a closed, sorted element list into conjugacy classes.

    Returns a list of sorted index lists, one per class, in order of the
    smallest element index they contain.
    """
    n = len(elements)
    d = len(elements[0])
    rng = range(d)
    index = {p: i for i, p in enumerate(elements)}
    pairs = []
    for g in gens:
        ginv = [0] * d
        for i, gi in enumerate(g):
            ginv[gi] = i
        pairs.append((g, ginv))
    visited = [False] * n
    classes = []
    for start in range(n):
        if visited[start]:
            continue
        visited[start] = True
        orbit = [start]
        stack = [elements[start]]
        while stack:
            x = stack.pop()
            for g, ginv in pairs:
                y = tuple(g[x[ginv[i]]] for i in rng)
                j = index[y]
                if not visited[j]:
                    visited[j] = True
                    orbit.append(j)
                    stack.append(y)
        classes.append(sorted(orbit))
    return classes
