"""Rebuild the normal surface described by a coordinate vector.

Every unit of a coordinate becomes one disc.  Discs of one type are
stacked in parallel: triangle ``idx`` of type ``v`` is the ``idx``-th
nearest to vertex ``v``, and quad ``idx`` of type ``{p0}|{p1}`` is the
``idx``-th nearest to the edge ``p0`` (the pair containing vertex 0).
A surface vertex is a point on a tetrahedron edge, recorded as
``(tet, edge_index, position)`` with positions counted from the
lower-numbered endpoint of the edge.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantViolation
from .normal_coords import (
    QUAD_PAIRS,
    NormalVector,
    edge_weight_at,
    is_admissible,
    matching_system,
    satisfies_matching,
)
from .triangulation import EDGES, Triangulation, compute_skeleton, edge_index


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


@dataclass(frozen=True)
class Disc:
    """A normal disc: ``kind`` is ``"T"`` or ``"Q"``, ``shape`` the vertex or quad type."""

    kind: str
    tet: int
    shape: int
    index: int
    corners: tuple  # surface points, in cyclic order


@dataclass(frozen=True)
class SurfaceComplex:
    tet_count: int
    vector: NormalVector
    discs: tuple
    # arc_gluings[(d, m)] = (d2, m2, same_direction): side m of disc d (from
    # corner m to corner m+1) is glued to side m2 of disc d2.
    arc_gluings: dict
    vertex_class: dict  # surface point -> representative point
    component_of: tuple  # per disc

    @property
    def component_count(self):
        return len(set(self.component_of))


@dataclass(frozen=True)
class ComponentInvariants:
    vector: NormalVector
    euler_characteristic: int
    orientable: bool
    weight: int
    disc_count: int

    @property
    def genus(self):
        """Orientable genus, or None for a one-sided component."""
        return (2 - self.euler_characteristic) // 2 if self.orientable else None

    @property
    def crosscaps(self):
        return None if self.orientable else 2 - self.euler_characteristic

    @property
    def two_sided(self):
        # In an orientable ambient manifold two-sided is equivalent to orientable.
        return self.orientable


@dataclass(frozen=True)
class SurfaceInvariants:
    components: tuple

    @property
    def component_count(self):
        return len(self.components)

    @property
    def euler_characteristic(self):
        return sum(c.euler_characteristic for c in self.components)

    @property
    def weight(self):
        return sum(c.weight for c in self.components)

    @property
    def orientable(self):
        return all(c.orientable for c in self.components)


def _edge_counts(v, tet):
    return [edge_weight_at(v, tet, n) for n in range(6)]


def _triangle_corners(v, tet, vert, idx, counts):
    corners = []
    for x in range(4):
        if x == vert:
            continue
        n = edge_index(vert, x)
        pos = idx if vert < x else counts[n] - 1 - idx
        corners.append((tet, n, pos))
    return tuple(corners)


def _quad_corners(v, tet, q, idx):
    (a, b), (c, d) = QUAD_PAIRS[q]
    total = v.quad(tet, q)
    corners = []
    # Cyclic order ac, ad, bd, bc; consecutive edges share a vertex.
    for x, y in ((a, c), (a, d), (b, d), (b, c)):
        n = edge_index(x, y)
        lo = min(x, y)
        # x lies in the pair containing vertex 0, which index 0 sits next to.
        offset = idx if lo == x else total - 1 - idx
        corners.append((tet, n, v.tri(tet, lo) + offset))
    return tuple(corners)


def _face_of(p, q):
    """Face (opposite vertex) holding the arc between points on two tet edges."""
    verts = set(EDGES[p[1]]) | set(EDGES[q[1]])
    (w,) = set(range(4)) - verts
    return w


def build_surface(tri: Triangulation, v: NormalVector) -> SurfaceComplex:
    """Assemble the disc complex for an admissible solution ``v``."""
    if len(v) != 7 * tri.tet_count:
        raise ValueError("dimension mismatch")
    if not is_admissible(v):
        raise InvariantViolation("vector is not admissible")
    if not satisfies_matching(matching_system(tri), v):
        raise InvariantViolation("vector does not satisfy the matching equations")

    t = tri.tet_count
    counts = [_edge_counts(v, i) for i in range(t)]
    discs = []
    for i in range(t):
        for vert in range(4):
            for idx in range(v.tri(i, vert)):
                discs.append(Disc("T", i, vert, idx, _triangle_corners(v, i, vert, idx, counts[i])))
        for q in range(3):
            for idx in range(v.quad(i, q)):
                discs.append(Disc("Q", i, q, idx, _quad_corners(v, i, q, idx)))

    # Arc lookup: (tet, frozenset of endpoints) -> (disc, side, start point).
    arcs = {}
    for d, disc in enumerate(discs):
        m = len(disc.corners)
        for s in range(m):
            p, q = disc.corners[s], disc.corners[(s + 1) % m]
            key = (disc.tet, frozenset((p, q)))
            if key in arcs:
                raise InvariantViolation(f"two discs share an arc in tetrahedron {disc.tet}")
            arcs[key] = (d, s, p)

    def carry(point, perm, j):
        tet, n, pos = point
        a, b = EDGES[n]
        pa, pb = perm[a], perm[b]
        n2 = edge_index(pa, pb)
        if pa > pb:
            pos = counts[j][n2] - 1 - pos
        return (j, n2, pos)

    points = _UnionFind()
    comps = _UnionFind()
    gluings = {}
    for d, disc in enumerate(discs):
        comps.add(d)
        for p in disc.corners:
            points.add(p)
    for d, disc in enumerate(discs):
        m = len(disc.corners)
        for s in range(m):
            p, q = disc.corners[s], disc.corners[(s + 1) % m]
            k = _face_of(p, q)
            j, _, perm = tri.gluings[disc.tet][k]
            p2, q2 = carry(p, perm, j), carry(q, perm, j)
            target = arcs.get((j, frozenset((p2, q2))))
            if target is None:
                raise InvariantViolation(f"unglued arc on face {k} of tetrahedron {disc.tet}")
            d2, s2, start = target
            gluings[(d, s)] = (d2, s2, start == p2)
            points.union(p, p2)
            points.union(q, q2)
            comps.union(d, d2)

    for (d, s), (d2, s2, same) in gluings.items():
        if gluings.get((d2, s2)) != (d, s, same) or (d, s) == (d2, s2):
            raise InvariantViolation("arc gluing is not a pairing")

    roots = sorted({comps.find(d) for d in range(len(discs))})
    label = {r: n for n, r in enumerate(roots)}
    component_of = tuple(label[comps.find(d)] for d in range(len(discs)))
    vertex_class = {p: points.find(p) for p in points.parent}
    sc = SurfaceComplex(t, v, tuple(discs), gluings, vertex_class, component_of)
    _check_vertex_links(sc, compute_skeleton(tri))
    return sc


def _check_vertex_links(sc: SurfaceComplex, skeleton) -> None:
    # The link of a surface vertex is a circle winding once around its edge
    # of the triangulation: one corner at every tetrahedron-edge of the orbit.
    around = {}
    for p, root in sc.vertex_class.items():
        around.setdefault(root, []).append((p[0], p[1]))
    for root, reps in around.items():
        orbit = skeleton.edge_orbits[skeleton.edge_of[reps[0]]]
        if len(reps) != len(set(reps)) or sorted(reps) != list(orbit):
            raise InvariantViolation(f"link of surface vertex {root} is not a circle")


def _orientable(sc: SurfaceComplex, members) -> bool:
    sign = {}
    for root in members:
        if root in sign:
            continue
        sign[root] = 1
        stack = [root]
        while stack:
            d = stack.pop()
            for s in range(len(sc.discs[d].corners)):
                d2, _, same = sc.arc_gluings[(d, s)]
                # Coherent orientations traverse a shared side in opposite directions.
                want = -sign[d] if same else sign[d]
                if d2 not in sign:
                    sign[d2] = want
                    stack.append(d2)
                elif sign[d2] != want:
                    return False
    return True


def surface_invariants(sc: SurfaceComplex) -> SurfaceInvariants:
    n_comp = sc.component_count
    members = [[] for _ in range(n_comp)]
    for d, c in enumerate(sc.component_of):
        members[c].append(d)

    out = []
    for c in range(n_comp):
        ds = members[c]
        faces = len(ds)
        sides = sum(len(sc.discs[d].corners) for d in ds)
        verts = {sc.vertex_class[p] for d in ds for p in sc.discs[d].corners}
        coords = [0] * (7 * sc.tet_count)
        for d in ds:
            disc = sc.discs[d]
            offset = 4 + disc.shape if disc.kind == "Q" else disc.shape
            coords[7 * disc.tet + offset] += 1
        out.append(ComponentInvariants(
            vector=NormalVector(tuple(coords)),
            euler_characteristic=len(verts) - sides // 2 + faces,
            orientable=_orientable(sc, ds),
            weight=len(verts),
            disc_count=faces,
        ))
    out.sort(key=lambda c: c.vector.coords)
    return SurfaceInvariants(tuple(out))


def split_components(tri: Triangulation, v: NormalVector) -> list:
    """Coordinate vectors of the connected components of ``v``, sorted."""
    return [c.vector for c in surface_invariants(build_surface(tri, v)).components]


def invariants(tri: Triangulation, v: NormalVector) -> SurfaceInvariants:
    return surface_invariants(build_surface(tri, v))


def euler_characteristic(tri: Triangulation, v: NormalVector) -> int:
    return invariants(tri, v).euler_characteristic
