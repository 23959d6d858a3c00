import pytest

from conftest import MANIFOLDS, load
from oracles import orientable_by_assignment
from normsurf.errors import InvariantViolation, TriangulationSyntaxError
from normsurf.triangulation import (
    check_closed_manifold,
    compute_skeleton,
    format_triangulation,
    is_orientable,
    parse_triangulation,
    perm_inverse,
)

ONE_TET = "tets 1\n0: 0(1023) 0(1023) 0(1230) 0(3012)\n"


def test_parse_one_tet():
    tri = parse_triangulation(ONE_TET)
    assert tri.tet_count == 1
    # Faces 0/1 and 2/3 are paired; each pairing is reciprocated by the inverse.
    assert tri.glued(0, 0) == (0, 1, (1, 0, 2, 3))
    assert tri.glued(0, 1) == (0, 0, (1, 0, 2, 3))
    assert tri.glued(0, 2) == (0, 3, (1, 2, 3, 0))
    assert tri.glued(0, 3) == (0, 2, (3, 0, 1, 2))
    assert perm_inverse((1, 2, 3, 0)) == (3, 0, 1, 2)


def test_comments_and_blank_lines_ignored():
    tri = parse_triangulation("# hello\n\n" + ONE_TET)
    assert tri == parse_triangulation(ONE_TET)


def test_unglued_face():
    with pytest.raises(InvariantViolation, match="unglued face"):
        parse_triangulation("tets 1\n0: 0(1023) 0(1023) 0(1230) -\n")


def test_missing_tetrahedron_line_is_unglued():
    with pytest.raises(InvariantViolation, match="unglued face"):
        parse_triangulation("tets 2\n0: 0(1023) 0(1023) 0(1230) 0(3012)\n")


def test_self_gluing_by_identity():
    with pytest.raises(InvariantViolation, match="itself by the identity"):
        parse_triangulation("tets 1\n0: 0(0123) 0(1023) 0(1230) 0(3012)\n")


def test_non_involutive():
    # Face 0 -> face 1 by 1023, but face 1 -> face 0 by a different map.
    with pytest.raises(InvariantViolation, match="non-involutive"):
        parse_triangulation("tets 1\n0: 0(1023) 0(1032) 0(1230) 0(3012)\n")


def test_out_of_range_target():
    with pytest.raises(InvariantViolation, match="out of range"):
        parse_triangulation("tets 1\n0: 3(1023) 0(1023) 0(1230) 0(3012)\n")


def test_out_of_range_label():
    with pytest.raises(InvariantViolation, match="out of range"):
        parse_triangulation(ONE_TET + "4: 0(1023) 0(1023) 0(1230) 0(3012)\n")


@pytest.mark.parametrize("text, line, column", [
    ("tet 1\n", 1, 1),
    ("tets 1\n0: 0(1023)  0(1023) 0(1230) 0(3012)\n", 2, 12),
    ("tets 1\n0: 0(1023) 0(1023) 0(1230) 0(3012) \n", 2, 35),
    ("tets 1\n0: 0(1123) 0(1023) 0(1230) 0(3012)\n", 2, 6),
    ("tets 1\n0: 0(1023) 0(1023) 0(1230)\n", 2, 27),
    ("tets 1\n0 0(1023) 0(1023) 0(1230) 0(3012)\n", 2, 1),
])
def test_syntax_errors_report_position(text, line, column):
    with pytest.raises(TriangulationSyntaxError) as info:
        parse_triangulation(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_duplicate_line():
    with pytest.raises(TriangulationSyntaxError, match="duplicate"):
        parse_triangulation(ONE_TET + "0: 0(1023) 0(1023) 0(1230) 0(3012)\n")


@pytest.mark.parametrize("name", MANIFOLDS + ["nonorientable_one_tet"])
def test_round_trip(name):
    tri = load(name)
    again = parse_triangulation(format_triangulation(tri))
    assert again == tri
    assert format_triangulation(again) == format_triangulation(tri)


def test_skeleton_euler_identity(manifold):
    _, tri = manifold
    sk = compute_skeleton(tri)
    assert len(sk.vertex_orbits) - len(sk.edge_orbits) + 2 * tri.tet_count - tri.tet_count == 0
    assert sum(len(o) for o in sk.edge_orbits) == 6 * tri.tet_count
    assert sum(len(o) for o in sk.vertex_orbits) == 4 * tri.tet_count
    check_closed_manifold(tri, sk)


def test_skeleton_doubled_tetrahedron_by_hand():
    # Identity gluings pair each simplex of tet 0 with the same simplex of tet 1.
    sk = compute_skeleton(load("doubled_tet"))
    assert sk.edge_orbits == tuple(((0, n), (1, n)) for n in range(6))
    assert sk.vertex_orbits == tuple(((0, v), (1, v)) for v in range(4))


def test_skeleton_two_vertex_one_tet_by_hand():
    # Faces 0,1 glued by swapping vertices 0,1; faces 2,3 by swapping 2,3.
    # Edge 01 is alone; 02~12 via face 3, 02~03 via face 1, and so on.
    sk = compute_skeleton(load("one_tet_two_vertex"))
    assert sk.vertex_orbits == (((0, 0), (0, 1)), ((0, 2), (0, 3)))
    assert sk.edge_orbits == (((0, 0),), ((0, 1), (0, 2), (0, 3), (0, 4)), ((0, 5),))


@pytest.mark.parametrize("name", [m for m in MANIFOLDS if m.startswith("one_tet")])
def test_one_tet_orbit_bounds(name):
    sk = compute_skeleton(load(name))
    assert len(sk.edge_orbits) <= 6 and len(sk.vertex_orbits) <= 4


def test_skeleton_deterministic(manifold):
    name, tri = manifold
    assert compute_skeleton(tri) == compute_skeleton(load(name))
    for orbit in compute_skeleton(tri).edge_orbits:
        assert list(orbit) == sorted(orbit)


def test_orientable_doubled_tetrahedron():
    assert is_orientable(load("doubled_tet"))


def test_even_gluing_is_not_orientable():
    tri = load("nonorientable_one_tet")
    assert not is_orientable(tri)
    assert not orientable_by_assignment(tri)
    with pytest.raises(InvariantViolation):
        check_closed_manifold(tri)


@pytest.mark.parametrize("name", MANIFOLDS + ["nonorientable_one_tet"])
def test_orientability_matches_brute_force(name):
    tri = load(name)
    assert is_orientable(tri) == orientable_by_assignment(tri)
