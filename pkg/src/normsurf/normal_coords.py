"""Standard normal coordinates, matching equations, admissibility and weight.

Each tetrahedron contributes seven coordinates, in the order
``[tri0, tri1, tri2, tri3, quad0, quad1, quad2]``.  ``tri_v`` counts the
normal triangles cutting off vertex ``v``.  ``quad_q`` counts the normal
quadrilaterals of type ``q``, where the quad type is named by the vertex
pairs it separates::

    quad0: 01|23    quad1: 02|13    quad2: 03|12
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import IncompatibleVectors, InvariantViolation
from .triangulation import EDGES, Skeleton, Triangulation, compute_skeleton

QUAD_PAIRS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def quad_separating(a, b):
    """The quad type whose two vertex pairs include ``{a, b}``."""
    for q, (p0, p1) in enumerate(QUAD_PAIRS):
        if {a, b} == set(p0) or {a, b} == set(p1):
            return q
    raise ValueError(f"not an edge: {a}, {b}")


def quads_meeting(a, b):
    """The two quad types that cross edge ``ab``."""
    q = quad_separating(a, b)
    return tuple(x for x in range(3) if x != q)


def tri_index(tet, v):
    return 7 * tet + v


def quad_index(tet, q):
    return 7 * tet + 4 + q


@dataclass(frozen=True)
class NormalVector:
    coords: tuple

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if len(coords) % 7:
            raise ValueError(f"length {len(coords)} is not a multiple of 7")
        if any(c < 0 for c in coords):
            raise ValueError("normal coordinates must be nonnegative")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, tet_count):
        return cls((0,) * (7 * tet_count))

    @classmethod
    def vertex_triangles(cls, tet_count, value=1):
        """All triangle coordinates ``value``, all quads zero."""
        return cls(((value,) * 4 + (0,) * 3) * tet_count)

    @property
    def tet_count(self):
        return len(self.coords) // 7

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, n):
        return self.coords[n]

    def __add__(self, other):
        if len(self) != len(other):
            raise ValueError("dimension mismatch")
        return NormalVector(tuple(a + b for a, b in zip(self, other)))

    def __mul__(self, k):
        return NormalVector(tuple(k * a for a in self))

    __rmul__ = __mul__

    def tri(self, tet, v):
        return self.coords[7 * tet + v]

    def quad(self, tet, q):
        return self.coords[7 * tet + 4 + q]

    def quad_types(self, tet):
        """Quad types with a nonzero count in ``tet``."""
        return tuple(q for q in range(3) if self.quad(tet, q))

    def is_zero(self):
        return not any(self.coords)

    def __le__(self, other):
        return all(a <= b for a, b in zip(self, other))

    def __str__(self):
        return format_vector(self)


_VECTOR = re.compile(r"v \[([0-9]+(?: [0-9]+)*)?\]")


def parse_vector(text: str) -> NormalVector:
    """Parse ``"v [n0 n1 ...]"``."""
    m = _VECTOR.fullmatch(text.strip())
    if not m:
        raise ValueError(f"malformed normal vector: {text.strip()!r}")
    body = m.group(1)
    return NormalVector(tuple(int(x) for x in body.split(" ")) if body else ())


def format_vector(v: NormalVector) -> str:
    return "v [" + " ".join(str(c) for c in v) + "]"


@dataclass(frozen=True)
class MatchingRow:
    """``x[plus[0]] + x[plus[1]] == x[minus[0]] + x[minus[1]]``.

    ``face`` records the gluing ``(tet, face)`` and ``corner`` the vertex
    of that face the arc type cuts off.  When a face is glued to another
    face of the same tetrahedron a term may appear on both sides; the
    dense form in :attr:`MatchingSystem.matrix` then cancels it.
    """

    plus: tuple
    minus: tuple
    face: tuple
    corner: int

    def evaluate(self, x):
        return x[self.plus[0]] + x[self.plus[1]] - x[self.minus[0]] - x[self.minus[1]]


@dataclass(frozen=True)
class MatchingSystem:
    tet_count: int
    rows: tuple

    @property
    def dimension(self):
        return 7 * self.tet_count

    @property
    def matrix(self):
        """Dense integer coefficient rows."""
        out = []
        for row in self.rows:
            coeffs = [0] * self.dimension
            for n in row.plus:
                coeffs[n] += 1
            for n in row.minus:
                coeffs[n] -= 1
            out.append(tuple(coeffs))
        return tuple(out)


def matching_system(tri: Triangulation) -> MatchingSystem:
    """One equation per face gluing and normal arc type on that face."""
    rows = []
    for i, k, j, k2, p in tri.face_pairs():
        for v in range(4):
            if v == k:
                continue
            # Arc cutting off corner v of face k: triangle v and the quad pairing v with k.
            plus = (tri_index(i, v), quad_index(i, quad_separating(v, k)))
            minus = (tri_index(j, p[v]), quad_index(j, quad_separating(p[v], k2)))
            rows.append(MatchingRow(plus, minus, (i, k), v))
    return MatchingSystem(tri.tet_count, tuple(rows))


def satisfies_matching(system: MatchingSystem, v) -> bool:
    if len(v) != system.dimension:
        raise ValueError(f"dimension mismatch: vector has {len(v)} entries, system {system.dimension}")
    return all(row.evaluate(v) == 0 for row in system.rows)


def is_admissible(v: NormalVector) -> bool:
    return all(len(v.quad_types(i)) <= 1 for i in range(v.tet_count))


def _require_admissible(v, name):
    if not is_admissible(v):
        raise InvariantViolation(f"{name} is not admissible")


def first_conflict(v: NormalVector, w: NormalVector):
    """First tetrahedron where ``v`` and ``w`` use different quad types, else None."""
    for i in range(v.tet_count):
        qv, qw = v.quad_types(i), w.quad_types(i)
        if qv and qw and qv != qw:
            return i
    return None


def compatible(v: NormalVector, w: NormalVector) -> bool:
    if len(v) != len(w):
        raise ValueError("dimension mismatch")
    _require_admissible(v, "first vector")
    _require_admissible(w, "second vector")
    return first_conflict(v, w) is None


def haken_sum(v: NormalVector, w: NormalVector) -> NormalVector:
    """Coordinate-level Haken sum; raises :class:`IncompatibleVectors`."""
    if not compatible(v, w):
        i = first_conflict(v, w)
        raise IncompatibleVectors(i, v.quad_types(i), w.quad_types(i))
    return v + w


def _edge_weight_at(v, tet, a, b):
    qa, qb = quads_meeting(a, b)
    return v.tri(tet, a) + v.tri(tet, b) + v.quad(tet, qa) + v.quad(tet, qb)


def _require_solution(tri, v):
    if not satisfies_matching(matching_system(tri), v):
        raise InvariantViolation("vector does not satisfy the matching equations")


def edge_weight(tri: Triangulation, v: NormalVector, edge: int,
                skeleton: Skeleton | None = None) -> int:
    """Number of points where ``v`` meets edge orbit ``edge``."""
    _require_solution(tri, v)
    sk = skeleton or compute_skeleton(tri)
    tet, n = sk.edge_orbits[edge][0]
    return _edge_weight_at(v, tet, *EDGES[n])


def edge_weight_at(v: NormalVector, tet: int, n: int) -> int:
    """Intersection count with tetrahedron edge ``n`` of ``tet``; no checks."""
    return _edge_weight_at(v, tet, *EDGES[n])


def weight(tri: Triangulation, v: NormalVector, skeleton: Skeleton | None = None) -> int:
    _require_solution(tri, v)
    sk = skeleton or compute_skeleton(tri)
    return sum(_edge_weight_at(v, orbit[0][0], *EDGES[orbit[0][1]]) for orbit in sk.edge_orbits)
