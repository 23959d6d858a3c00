"""Brute-force reference computations used by the tests.

Nothing here calls the package's enumeration, Hilbert basis or surface
builder code; only the triangulation parser and the row layout of the
matching system are shared.
"""

from __future__ import annotations

import itertools
from collections import defaultdict

import numpy as np

from normsurf.triangulation import EDGES

QUAD_OF_PAIR = {
    frozenset((0, 1)): 0, frozenset((2, 3)): 0,
    frozenset((0, 2)): 1, frozenset((1, 3)): 1,
    frozenset((0, 3)): 2, frozenset((1, 2)): 2,
}


def arc_equations(tri):
    """Matching equations as ``(lhs, rhs)`` pairs of ``(tet, slot)`` terms."""
    eqs = []
    for i in range(tri.tet_count):
        for k in range(4):
            j, k2, p = tri.gluings[i][k]
            if (j, k2) < (i, k):
                continue
            for v in range(4):
                if v == k:
                    continue
                lhs = ((i, v), (i, 4 + QUAD_OF_PAIR[frozenset((v, k))]))
                rhs = ((j, p[v]), (j, 4 + QUAD_OF_PAIR[frozenset((p[v], k2))]))
                eqs.append((lhs, rhs))
    return eqs


def local_configs(bound):
    """Admissible 7-tuples for one tetrahedron with entries in ``[0, bound]``."""
    quads = [(0, 0, 0)]
    for q in range(3):
        for n in range(1, bound + 1):
            quads.append(tuple(n if x == q else 0 for x in range(3)))
    for tris in itertools.product(range(bound + 1), repeat=4):
        for quad in quads:
            yield tris + quad


def box_solutions(tri, bound=4):
    """Every nonzero admissible solution with all entries ``<= bound``.

    Each tetrahedron is enumerated on its own; tetrahedra are then joined
    on their contribution to every matching row.  Only ``t <= 2``.
    """
    t = tri.tet_count
    if t > 2:
        raise ValueError("box oracle only supports t <= 2")
    eqs = arc_equations(tri)

    def signature(tet, config):
        sig = []
        for lhs, rhs in eqs:
            s = sum(config[slot] for (i, slot) in lhs if i == tet)
            s -= sum(config[slot] for (i, slot) in rhs if i == tet)
            sig.append(s)
        return tuple(sig)

    zero = (0,) * len(eqs)
    if t == 1:
        sols = [c for c in local_configs(bound) if signature(0, c) == zero]
    else:
        by_sig = defaultdict(list)
        for c in local_configs(bound):
            by_sig[signature(1, c)].append(c)
        sols = []
        for c in local_configs(bound):
            want = tuple(-s for s in signature(0, c))
            for d in by_sig.get(want, ()):
                sols.append(c + d)
    return sorted(s for s in sols if any(s))


def indecomposable(solutions):
    """Members not expressible as ``u + (v - u)`` with ``u`` another nonzero member."""
    arr = np.array(solutions, dtype=np.int64)
    out = []
    for n, v in enumerate(arr):
        below = np.all(arr <= v, axis=1)
        below[n] = False
        if not below.any():
            out.append(tuple(int(x) for x in v))
    return sorted(out)


def euler_from_counts(tri, coords):
    """``V - E + F`` from disc, arc and edge-point counts of the whole surface."""
    f = sum(coords)
    arcs = 0
    for i in range(tri.tet_count):
        for k in range(4):
            for v in range(4):
                if v != k:
                    arcs += coords[7 * i + v] + coords[7 * i + 4 + QUAD_OF_PAIR[frozenset((v, k))]]
    # Each arc lies on a face shared by two tetrahedra.
    e = arcs // 2
    vertices = 0
    seen = set()
    for i in range(tri.tet_count):
        for n, (a, b) in enumerate(EDGES):
            if (i, n) in seen:
                continue
            seen.update(_edge_class(tri, i, n))
            crossing = [q for q in range(3) if q != QUAD_OF_PAIR[frozenset((a, b))]]
            vertices += coords[7 * i + a] + coords[7 * i + b] + sum(coords[7 * i + 4 + q] for q in crossing)
    return vertices - e + f


def _edge_class(tri, i, n):
    out = {(i, n)}
    stack = [(i, n)]
    while stack:
        i, n = stack.pop()
        a, b = EDGES[n]
        for k in range(4):
            if k in (a, b):
                continue
            j, _, p = tri.gluings[i][k]
            key = (j, EDGES.index(tuple(sorted((p[a], p[b])))))
            if key not in out:
                out.add(key)
                stack.append(key)
    return out


def orientable_by_assignment(tri):
    """Try all ``2^t`` orientation choices."""
    def parity(p):
        return sum(1 for a, b in itertools.combinations(range(4), 2) if p[a] > p[b]) % 2

    for signs in itertools.product((1, -1), repeat=tri.tet_count):
        ok = True
        for i in range(tri.tet_count):
            for j, _, p in tri.gluings[i]:
                sign_p = -1 if parity(p) else 1
                if signs[i] * signs[j] * sign_p != -1:
                    ok = False
        if ok:
            return True
    return False


def decompositions(target, pieces):
    """All coefficient tuples ``c`` with ``sum(c_i * pieces[i]) == target``."""
    target = tuple(target)
    pieces = [tuple(p) for p in pieces]

    def rec(k, rest):
        if k == len(pieces):
            if not any(rest):
                yield ()
            return
        p = pieces[k]
        c = 0
        while all(r >= 0 for r in rest):
            for tail in rec(k + 1, rest):
                yield (c,) + tail
            rest = tuple(r - x for r, x in zip(rest, p))
            c += 1
            if not any(p):
                break

    yield from rec(0, target)
