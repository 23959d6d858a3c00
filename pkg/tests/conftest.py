import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from normsurf.triangulation import parse_triangulation  # noqa: E402

FIXTURE_DIR = Path(__file__).parent / "fixtures"

MANIFOLDS = sorted(p.stem for p in FIXTURE_DIR.glob("*.tri") if not p.stem.startswith("nonorientable"))
SMALL = [name for name in MANIFOLDS if name.startswith(("one_tet", "two_tet", "doubled"))]
NEGATIVE = ["two_tet_genus2", "two_tet_crosscap", "two_tet_genus2_wide",
            "three_tet_genus2", "three_tet_genus2_wide"]


def fixture_path(name):
    return FIXTURE_DIR / f"{name}.tri"


def load(name):
    return parse_triangulation(fixture_path(name).read_text(encoding="utf-8"))


@pytest.fixture(params=MANIFOLDS)
def manifold(request):
    return request.param, load(request.param)


@pytest.fixture(params=SMALL)
def small_manifold(request):
    return request.param, load(request.param)


def random_cone_vector(rng, fundamentals, selection, max_coeff=3):
    """Random nonnegative combination of the fundamentals whose quads follow ``selection``."""
    from normsurf.normal_coords import NormalVector

    pool = [f for f in fundamentals
            if all(f.quad(i, q) == 0 for i in range(f.tet_count) for q in range(3)
                   if q != selection[i])]
    v = NormalVector.zero(fundamentals[0].tet_count)
    while v.is_zero():
        for f in pool:
            v = v + rng.randint(0, max_coeff) * f
    return v


def random_compatible_pair(rng, fundamentals, max_coeff=3):
    t = fundamentals[0].tet_count
    selection = [rng.randrange(3) for _ in range(t)]
    return (random_cone_vector(rng, fundamentals, selection, max_coeff),
            random_cone_vector(rng, fundamentals, selection, max_coeff))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
