"""Closed triangulations given by tetrahedron gluing tables.

A triangulation with ``t`` tetrahedra is stored as a table
``gluings[i][k] = (j, k2, perm)``: face ``k`` of tetrahedron ``i`` (the
face opposite vertex ``k``) is glued to face ``k2`` of tetrahedron ``j``,
and ``perm`` is the vertex correspondence, a tuple of length four with
``perm[v]`` the vertex of ``j`` that vertex ``v`` of ``i`` is sent to.

Text format::

    # comment
    tets 2
    0: 1(0132) 1(1023) ...
    1: ...

Tetrahedron edges are indexed 0..5 in the order of :data:`EDGES`.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .errors import InvariantViolation, TriangulationSyntaxError

EDGES = tuple(combinations(range(4), 2))  # (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)
EDGE_INDEX = {e: n for n, e in enumerate(EDGES)}
IDENTITY = (0, 1, 2, 3)


def perm_inverse(p):
    inv = [0] * 4
    for a, b in enumerate(p):
        inv[b] = a
    return tuple(inv)


def perm_sign(p):
    sign = 1
    for a, b in combinations(range(4), 2):
        if p[a] > p[b]:
            sign = -sign
    return sign


def edge_index(a, b):
    return EDGE_INDEX[(a, b) if a < b else (b, a)]


@dataclass(frozen=True)
class Triangulation:
    tet_count: int
    gluings: tuple

    def glued(self, tet, face):
        """Return ``(tet2, face2, perm)`` for the face glued to ``(tet, face)``."""
        return self.gluings[tet][face]

    def face_pairs(self) -> Iterator[tuple]:
        """Yield each of the ``2t`` face gluings once, as ``(i, k, j, k2, perm)``.

        The representative is the side with the smaller ``(tet, face)``.
        """
        for i in range(self.tet_count):
            for k in range(4):
                j, k2, p = self.gluings[i][k]
                if (i, k) <= (j, k2):
                    yield i, k, j, k2, p

    def serialize(self) -> str:
        return format_triangulation(self)

    def digest(self) -> str:
        """SHA-256 of the canonical text form."""
        return hashlib.sha256(self.serialize().encode("utf-8")).hexdigest()


_HEADER = re.compile(r"tets ([1-9][0-9]*)")
_ENTRY = re.compile(r"([0-9]+)\(([0-3]{4})\)|-")
_LABEL = re.compile(r"([0-9]+):")


def parse_triangulation(text: str) -> Triangulation:
    """Parse and validate the gluing-table text format.

    Raises :class:`TriangulationSyntaxError` for malformed lines and
    :class:`InvariantViolation` for a well formed table that is not a
    closed triangulation.
    """
    t = None
    rows = {}
    for lineno, line in enumerate(text.split("\n"), start=1):
        if line.startswith("#") or line == "":
            continue
        if line != line.rstrip():
            raise TriangulationSyntaxError("trailing whitespace", lineno, len(line.rstrip()) + 1)
        if t is None:
            m = _HEADER.fullmatch(line)
            if not m:
                raise TriangulationSyntaxError("expected header 'tets <t>'", lineno)
            t = int(m.group(1))
            continue
        i, payload = _parse_row(line, lineno)
        if i in rows:
            raise TriangulationSyntaxError(f"duplicate tetrahedron {i}", lineno)
        rows[i] = payload
    if t is None:
        raise TriangulationSyntaxError("missing header 'tets <t>'", 1)

    for i, (lineno, _) in rows.items():
        if i >= t:
            raise InvariantViolation(f"line {lineno}: tetrahedron index {i} out of range (tets {t})")
    gluings = []
    for i in range(t):
        if i not in rows:
            raise InvariantViolation(f"unglued face: tetrahedron {i} has no gluing line")
        lineno, entries = rows[i]
        row = []
        for k, entry in enumerate(entries):
            if entry is None:
                raise InvariantViolation(f"unglued face: face {k} of tetrahedron {i}")
            j, p = entry
            if j >= t:
                raise InvariantViolation(
                    f"line {lineno}: tetrahedron index {j} out of range (tets {t})"
                )
            row.append((j, p[k], p))
        gluings.append(tuple(row))
    tri = Triangulation(t, tuple(gluings))
    validate(tri)
    return tri


def _parse_row(line, lineno):
    m = _LABEL.match(line)
    if not m:
        raise TriangulationSyntaxError("expected '<i>:'", lineno)
    i = int(m.group(1))
    pos = m.end()
    entries = []
    for _ in range(4):
        if line[pos:pos + 1] != " ":
            raise TriangulationSyntaxError("expected a single space", lineno, pos + 1)
        pos += 1
        em = _ENTRY.match(line, pos)
        if not em:
            raise TriangulationSyntaxError("expected '<j>(<perm>)' or '-'", lineno, pos + 1)
        if em.group(0) == "-":
            entries.append(None)
        else:
            perm = tuple(int(c) for c in em.group(2))
            if sorted(perm) != [0, 1, 2, 3]:
                raise TriangulationSyntaxError(
                    f"'{em.group(2)}' is not a permutation of 0123", lineno, em.start(2) + 1
                )
            entries.append((int(em.group(1)), perm))
        pos = em.end()
    if pos != len(line):
        raise TriangulationSyntaxError("unexpected trailing text", lineno, pos + 1)
    return i, (lineno, entries)


def validate(tri: Triangulation) -> None:
    """Check the gluing-table invariants, raising :class:`InvariantViolation`."""
    t = tri.tet_count
    if t < 1 or len(tri.gluings) != t:
        raise InvariantViolation("tetrahedron count does not match gluing table")
    for i in range(t):
        if len(tri.gluings[i]) != 4:
            raise InvariantViolation(f"tetrahedron {i} does not have four faces")
        for k in range(4):
            glue = tri.gluings[i][k]
            if glue is None:
                raise InvariantViolation(f"unglued face: face {k} of tetrahedron {i}")
            j, k2, p = glue
            if not 0 <= j < t:
                raise InvariantViolation(f"tetrahedron index {j} out of range (tets {t})")
            if sorted(p) != [0, 1, 2, 3]:
                raise InvariantViolation(f"gluing of face {k} of tetrahedron {i} is not a permutation")
            if p[k] != k2:
                raise InvariantViolation(
                    f"gluing of face {k} of tetrahedron {i} does not map it onto face {k2}"
                )
            if (j, k2) == (i, k) and p == IDENTITY:
                raise InvariantViolation(
                    f"face {k} of tetrahedron {i} is glued to itself by the identity"
                )
            back = tri.gluings[j][k2]
            if back is None or back[0] != i or back[1] != k or back[2] != perm_inverse(p):
                raise InvariantViolation(
                    f"non-involutive gluing: face {k} of tetrahedron {i} -> "
                    f"face {k2} of tetrahedron {j} is not reciprocated"
                )


def format_triangulation(tri: Triangulation) -> str:
    lines = [f"tets {tri.tet_count}"]
    for i, row in enumerate(tri.gluings):
        parts = [f"{j}({''.join(map(str, p))})" for j, _, p in row]
        lines.append(f"{i}: " + " ".join(parts))
    return "\n".join(lines) + "\n"


def from_gluings(gluings) -> Triangulation:
    """Build and validate a triangulation from ``[[(j, perm), ...], ...]``."""
    rows = tuple(tuple((j, tuple(p)[k], tuple(p)) for k, (j, p) in enumerate(row)) for row in gluings)
    tri = Triangulation(len(rows), rows)
    validate(tri)
    return tri


@dataclass(frozen=True)
class Skeleton:
    """Vertex and edge classes of a triangulation.

    ``edge_orbits[n]`` lists the ``(tet, edge_index)`` pairs identified to
    edge ``n``, sorted, and orbits are ordered by their smallest member.
    ``reversed_edges`` holds the orbits containing an edge identified with
    itself in reverse.
    """

    tet_count: int
    edge_orbits: tuple
    vertex_orbits: tuple
    edge_of: dict
    vertex_of: dict
    reversed_edges: frozenset

    @property
    def face_count(self):
        return 2 * self.tet_count

    @property
    def euler_characteristic(self):
        return len(self.vertex_orbits) - len(self.edge_orbits) + self.face_count - self.tet_count


def compute_skeleton(tri: Triangulation) -> Skeleton:
    t = tri.tet_count

    # Edges: flood fill with a direction flag relative to the orbit root.
    direction = {}
    edge_orbits = []
    reversed_orbits = set()
    for root in ((i, n) for i in range(t) for n in range(6)):
        if root in direction:
            continue
        direction[root] = EDGES[root[1]]
        orbit = [root]
        stack = [root]
        bad = False
        while stack:
            i, n = stack.pop()
            a, b = direction[(i, n)]
            for k in range(4):
                if k in (a, b):
                    continue
                j, _, p = tri.gluings[i][k]
                pa, pb = p[a], p[b]
                key = (j, edge_index(pa, pb))
                if key in direction:
                    if direction[key] != (pa, pb):
                        bad = True
                    continue
                direction[key] = (pa, pb)
                orbit.append(key)
                stack.append(key)
        orbit.sort()
        if bad:
            reversed_orbits.add(len(edge_orbits))
        edge_orbits.append(tuple(orbit))

    vertex_orbits = []
    seen = set()
    for root in ((i, v) for i in range(t) for v in range(4)):
        if root in seen:
            continue
        seen.add(root)
        orbit = [root]
        stack = [root]
        while stack:
            i, v = stack.pop()
            for k in range(4):
                if k == v:
                    continue
                j, _, p = tri.gluings[i][k]
                key = (j, p[v])
                if key not in seen:
                    seen.add(key)
                    orbit.append(key)
                    stack.append(key)
        vertex_orbits.append(tuple(sorted(orbit)))

    edge_of = {member: n for n, orbit in enumerate(edge_orbits) for member in orbit}
    vertex_of = {member: n for n, orbit in enumerate(vertex_orbits) for member in orbit}
    return Skeleton(t, tuple(edge_orbits), tuple(vertex_orbits), edge_of, vertex_of,
                    frozenset(reversed_orbits))


def orientation(tri: Triangulation):
    """Return a tuple of signs making every gluing orientation reversing, or None."""
    signs = [0] * tri.tet_count
    for root in range(tri.tet_count):
        if signs[root]:
            continue
        signs[root] = 1
        stack = [root]
        while stack:
            i = stack.pop()
            for j, _, p in tri.gluings[i]:
                # Gluing reverses orientation iff s_i * s_j * sign(p) == -1.
                want = -signs[i] * perm_sign(p)
                if signs[j] == 0:
                    signs[j] = want
                    stack.append(j)
                elif signs[j] != want:
                    return None
    return tuple(signs)


def is_orientable(tri: Triangulation) -> bool:
    return orientation(tri) is not None


def is_connected(tri: Triangulation) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j, _, _ in tri.gluings[i]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == tri.tet_count


def check_closed_manifold(tri: Triangulation, skeleton: Skeleton | None = None) -> Skeleton:
    """Raise :class:`InvariantViolation` unless ``tri`` triangulates a closed 3-manifold.

    Valid edges plus Euler characteristic zero force every vertex link
    to be a sphere.
    """
    sk = skeleton or compute_skeleton(tri)
    if sk.reversed_edges:
        n = min(sk.reversed_edges)
        raise InvariantViolation(f"edge {n} is identified with itself in reverse")
    if sk.euler_characteristic != 0:
        raise InvariantViolation(
            f"V - E + F - T = {sk.euler_characteristic}; some vertex link is not a sphere"
        )
    return sk
