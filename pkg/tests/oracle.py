"""Brute-force reference computations over F_2.

Everything here enumerates explicitly (all matrices, all vectors, all
subspace tuples) and only uses plain integer arithmetic, so it shares no
code path with the package's elimination routines.
"""

import itertools

import numpy as np

P = 2


def vectors(n):
    return [np.array(v, dtype=np.int64) for v in itertools.product(range(P), repeat=n)]


def all_matrices(rows, cols):
    for entries in itertools.product(range(P), repeat=rows * cols):
        yield np.array(entries, dtype=np.int64).reshape(rows, cols)


def rank(a):
    a = np.asarray(a, dtype=np.int64)
    rows, cols = a.shape
    images = {tuple(a @ v % P) for v in vectors(cols)} if cols else {tuple([0] * rows)}
    return int(round(np.log2(len(images))))


def kernel_size(a):
    a = np.asarray(a, dtype=np.int64)
    return sum(1 for v in vectors(a.shape[1]) if not (a @ v % P).any())


def _arr(m):
    return np.array(m.tolist(), dtype=np.int64).reshape(m.rows, m.cols)


def hom_count(m, n):
    """Number of morphisms m -> n found by trying every tuple of vertex matrices."""
    verts = m.algebra.vertices
    shapes = [(n.dims[v], m.dims[v]) for v in verts]
    arrows = m.algebra.arrows
    mm = {a.name: _arr(m.maps[a.name]) for a in arrows}
    nm = {a.name: _arr(n.maps[a.name]) for a in arrows}
    count = 0
    for choice in itertools.product(*(list(all_matrices(r, c)) for r, c in shapes)):
        h = dict(zip(verts, choice))
        if all(not ((nm[a.name] @ h[a.source] - h[a.target] @ mm[a.name]) % P).any() for a in arrows):
            count += 1
    return count


def hom_dim(m, n):
    return int(round(np.log2(hom_count(m, n))))


def subspaces(n):
    """All subspaces of F_2^n as frozensets of vector tuples."""
    out = set()
    vs = [tuple(v) for v in vectors(n)]
    for k in range(n + 1):
        for gens in itertools.combinations(vs, k):
            span = set()
            for coeffs in itertools.product(range(P), repeat=k):
                vec = sum(c * np.array(g) for c, g in zip(coeffs, gens)) % P if k else np.zeros(n, dtype=np.int64)
                span.add(tuple(int(x) for x in vec))
            out.add(frozenset(span))
    return list(out)


def subrepresentations(m):
    """All tuples of vertex subspaces stable under every arrow map."""
    verts = m.algebra.vertices
    per_vertex = [subspaces(m.dims[v]) for v in verts]
    maps = {a.name: _arr(m.maps[a.name]) for a in m.algebra.arrows}
    out = []
    for choice in itertools.product(*per_vertex):
        sub = dict(zip(verts, choice))
        stable = True
        for a in m.algebra.arrows:
            if not m.dims[a.source]:
                continue
            for v in sub[a.source]:
                w = tuple(int(x) for x in maps[a.name] @ np.array(v, dtype=np.int64) % P)
                if w not in sub[a.target]:
                    stable = False
        if stable:
            out.append(sub)
    return out
