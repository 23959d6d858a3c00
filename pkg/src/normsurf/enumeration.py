"""Fundamental normal surfaces and the weak-reducibility constant.

The admissible solutions form the union of ``3^t`` cones, one per
choice of allowed quad type in each tetrahedron.  A summand of an
admissible vector is entrywise smaller, so it lies in the same cone;
hence the fundamental surfaces are exactly the union of the Hilbert
bases of those cones.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .errors import IncompleteEnumeration, InvariantViolation
from .hilbert import hilbert_basis
from .normal_coords import (
    MatchingSystem,
    NormalVector,
    is_admissible,
    matching_system,
    quad_index,
    satisfies_matching,
    tri_index,
)
from .surface_builder import ComponentInvariants, invariants
from .triangulation import Triangulation, check_closed_manifold, is_orientable

DEFAULT_CAP = 10_000


def _cone_basis(args):
    matrix, columns, dim, cap = args
    sub = [[row[c] for c in columns] for row in matrix]
    out = []
    for x in hilbert_basis(sub, n_vars=len(columns), cap=cap):
        full = [0] * dim
        for c, value in zip(columns, x):
            full[c] = value
        out.append(tuple(full))
    return out


def _selection_columns(t, selection):
    cols = [tri_index(i, v) for i in range(t) for v in range(4)]
    cols += [quad_index(i, q) for i, q in enumerate(selection)]
    return sorted(cols)


def candidate_fundamentals(tri: Triangulation, cap: int = DEFAULT_CAP, workers: int = 1):
    """Union of the per-cone Hilbert bases, deduplicated and sorted."""
    system = matching_system(tri)
    matrix = system.matrix
    dim = system.dimension
    jobs = [(matrix, _selection_columns(tri.tet_count, sel), dim, cap)
            for sel in itertools.product(range(3), repeat=tri.tet_count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_cone_basis, jobs))
    else:
        results = [_cone_basis(job) for job in jobs]
    return sorted({v for batch in results for v in batch})


def _rows_on(system: MatchingSystem, support):
    # Coordinates off the support are zero, so their terms drop out.
    rows = []
    for dense in system.matrix:
        row = {n: dense[c] for n, c in enumerate(support) if dense[c]}
        if row:
            rows.append(row)
    return rows


def proper_subsolution(system: MatchingSystem, v):
    """A solution ``u`` with ``0 < u < v`` entrywise-bounded, or None.

    Exhaustive depth-first search over the box ``[0, v]`` with interval
    propagation on the matching rows.  Coordinates outside the support
    of ``v`` are fixed at zero.
    """
    support = [c for c, x in enumerate(v) if x]
    if not support:
        return None
    upper = [v[c] for c in support]
    rows = _rows_on(system, support)
    n = len(support)
    touching = [[r for r, row in enumerate(rows) if k in row] for k in range(n)]

    order = []
    remaining = set(range(n))
    while remaining:
        # Prefer variables that close off rows soonest.
        assigned = set(order)
        best = max(remaining, key=lambda k: (
            sum(1 for r in touching[k] if len(set(rows[r]) - assigned) == 1), -k))
        order.append(best)
        remaining.discard(best)

    # Slack bookkeeping: for each row, the value range still reachable.
    partial = [0] * len(rows)
    lo = [sum(c * upper[k] for k, c in row.items() if c < 0) for row in rows]
    hi = [sum(c * upper[k] for k, c in row.items() if c > 0) for row in rows]
    x = [0] * n

    def feasible(k):
        for r in touching[k]:
            if not lo[r] + partial[r] <= 0 <= hi[r] + partial[r]:
                return False
        return True

    def search(depth, nonzero, full):
        if depth == n:
            if nonzero and not full:
                return list(x)
            return None
        k = order[depth]
        ub = upper[k]
        for r in touching[k]:
            c = rows[r][k]
            if c > 0:
                hi[r] -= c * ub
            else:
                lo[r] -= c * ub
        found = None
        for value in range(ub + 1):
            x[k] = value
            for r in touching[k]:
                partial[r] += rows[r][k] * value
            if feasible(k):
                found = search(depth + 1, nonzero or value > 0, full and value == ub)
            for r in touching[k]:
                partial[r] -= rows[r][k] * value
            if found is not None:
                break
        x[k] = 0
        for r in touching[k]:
            c = rows[r][k]
            if c > 0:
                hi[r] += c * ub
            else:
                lo[r] += c * ub
        return found

    found = search(0, False, True)
    if found is None:
        return None
    u = [0] * len(v)
    for k, c in enumerate(support):
        u[c] = found[k]
    return NormalVector(tuple(u))


def _require_admissible_solution(system, v):
    if not is_admissible(v):
        raise InvariantViolation("vector is not admissible")
    if not satisfies_matching(system, v):
        raise InvariantViolation("vector does not satisfy the matching equations")


def is_fundamental(tri: Triangulation, v: NormalVector) -> bool:
    """True iff ``v`` is nonzero and not a sum of two nonzero admissible solutions."""
    system = matching_system(tri)
    _require_admissible_solution(system, v)
    if v.is_zero():
        return False
    return proper_subsolution(system, v) is None


@dataclass(frozen=True)
class Fundamental:
    vector: NormalVector
    surface: ComponentInvariants

    @property
    def euler_characteristic(self):
        return self.surface.euler_characteristic

    @property
    def sign_class(self):
        chi = self.euler_characteristic
        return "negative" if chi < 0 else "zero" if chi == 0 else "positive"


@dataclass(frozen=True)
class FundamentalSet:
    digest: str
    members: tuple

    @property
    def vectors(self):
        return [f.vector for f in self.members]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def _prepare(tri):
    check_closed_manifold(tri)
    if not is_orientable(tri):
        raise InvariantViolation("triangulation is not orientable; enumeration requires an orientable manifold")


def enumerate_fundamentals(tri: Triangulation, cap: int = DEFAULT_CAP,
                           workers: int = 1) -> FundamentalSet:
    """All fundamental normal surfaces of a closed orientable triangulation."""
    _prepare(tri)
    system = matching_system(tri)
    members = []
    for coords in candidate_fundamentals(tri, cap=cap, workers=workers):
        v = NormalVector(coords)
        if proper_subsolution(system, v) is not None:
            continue
        inv = invariants(tri, v)
        if inv.component_count != 1:
            continue
        members.append(Fundamental(v, inv.components[0]))
    return FundamentalSet(tri.digest(), tuple(members))


@dataclass(frozen=True)
class FundamentalReport:
    fundamentals: FundamentalSet

    @property
    def negative_chi(self):
        return [f for f in self.fundamentals if f.euler_characteristic < 0]

    @property
    def zero_chi(self):
        return [f for f in self.fundamentals if f.euler_characteristic == 0]

    @property
    def positive_chi(self):
        return [f for f in self.fundamentals if f.euler_characteristic > 0]

    @property
    def K(self):
        return len(self.negative_chi)

    @property
    def P(self):
        neg = self.negative_chi
        return max(-f.euler_characteristic for f in neg) if neg else None

    @property
    def vacuous(self):
        """No negative-characteristic fundamentals, so the constant is undefined."""
        return self.K == 0

    @property
    def c(self):
        if self.vacuous:
            return None
        return Fraction(1, 3 * self.K * self.P)

    def scaled_bound(self, genus):
        """``c * (2g - 2)`` as an exact rational, or None when vacuous."""
        if genus < 2:
            raise ValueError("genus must be at least 2")
        return None if self.vacuous else self.c * (2 * genus - 2)

    def bound(self, genus):
        """Largest ``i`` with ``h^i`` forced weakly reducible (0 when none)."""
        b = self.scaled_bound(genus)
        return 0 if b is None else floor(b)

    def bound_vacuous(self, genus):
        b = self.scaled_bound(genus)
        return b is None or b < 1


def fundamental_report(tri: Triangulation, cap: int = DEFAULT_CAP, workers: int = 1,
                       fundamentals: FundamentalSet | None = None) -> FundamentalReport:
    """Split the fundamentals by sign of Euler characteristic.

    Raises :class:`IncompleteEnumeration` if the enumeration hit ``cap``.
    """
    if fundamentals is None:
        fundamentals = enumerate_fundamentals(tri, cap=cap, workers=workers)
    return FundamentalReport(fundamentals)


@dataclass(frozen=True)
class CoefficientEstimate:
    euler_characteristic: int  # of the sum F
    leading_coefficient: int  # n_1
    leading_two_sided: bool
    n: int
    threshold: Fraction  # -chi(F) / (3KP)
    holds: bool


def coefficient_estimate(tri: Triangulation, decomposition, report: FundamentalReport) -> CoefficientEstimate:
    """Evaluate ``n >= -chi(F) / (3KP)`` for ``F = sum c_i v_i``.

    ``n`` is the largest coefficient of a negative-characteristic summand,
    halved (rounding down) when that summand is one-sided.  Ties prefer
    a two-sided summand.  When ``n == 0`` the inequality cannot hold and
    the check is ``-chi(F) <= KP`` instead, which makes the bound trivial.
    """
    by_vector = {f.vector: f for f in report.fundamentals}
    merged = {}
    for coeff, v in decomposition:
        if not isinstance(coeff, int) or coeff < 0:
            raise InvariantViolation(f"coefficient {coeff!r} is not a nonnegative integer")
        if v not in by_vector:
            raise InvariantViolation(f"{v} is not a fundamental surface of this triangulation")
        if coeff:
            merged[v] = merged.get(v, 0) + coeff
    if not merged:
        raise InvariantViolation("decomposition is empty")

    total = NormalVector.zero(tri.tet_count)
    for v, coeff in merged.items():
        total = total + coeff * v
    if not is_admissible(total):
        raise InvariantViolation("weighted sum is not admissible")
    inv = invariants(tri, total)
    if inv.component_count != 1:
        raise InvariantViolation("weighted sum is not connected")
    chi = inv.euler_characteristic
    if chi >= 0:
        raise InvariantViolation(f"weighted sum has Euler characteristic {chi} >= 0")
    if report.vacuous:
        raise InvariantViolation("no negative-characteristic fundamentals; constant undefined")

    negative = [(coeff, by_vector[v].surface.two_sided) for v, coeff in merged.items()
                if by_vector[v].euler_characteristic < 0]
    n1, two_sided = max(negative)
    n = n1 if two_sided else n1 // 2
    kp = report.K * report.P
    threshold = Fraction(-chi, 3 * kp)
    holds = n >= threshold if n else -chi <= kp
    return CoefficientEstimate(chi, n1, two_sided, n, threshold, holds)


def check_coefficient_bound(tri: Triangulation, decomposition, report: FundamentalReport | None = None) -> bool:
    if report is None:
        report = fundamental_report(tri)
    return coefficient_estimate(tri, decomposition, report).holds


__all__ = [
    "DEFAULT_CAP",
    "CoefficientEstimate",
    "Fundamental",
    "FundamentalReport",
    "FundamentalSet",
    "IncompleteEnumeration",
    "candidate_fundamentals",
    "check_coefficient_bound",
    "coefficient_estimate",
    "enumerate_fundamentals",
    "fundamental_report",
    "is_fundamental",
    "proper_subsolution",
]
