"""Hilbert basis of ``{x in N^n : A x = 0}`` by completion.

This is the Contejean-Devie procedure: grow candidate vectors one unit
at a time, only in directions that move ``A x`` back towards the
origin, and prune any candidate lying above an already found minimal
solution.  Every candidate of coordinate sum ``s`` is produced at
step ``s``, so solutions are found in order of increasing size.
"""

from __future__ import annotations

from .errors import IncompleteEnumeration


def _dominates(x, m):
    for a, b in zip(x, m):
        if a < b:
            return False
    return True


def _reduce(rows, n_vars):
    """Eliminate variables forced to zero or forced equal by the rows.

    Returns ``(groups, reduced_rows)`` where ``groups[g]`` lists the
    original variables that all equal reduced variable ``g``.  Variables
    forced to zero are in no group.
    """
    parent = list(range(n_vars))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def collapse(row, zero):
        acc = {}
        for j, c in enumerate(row):
            if c:
                r = find(j)
                if r not in zero:
                    acc[r] = acc.get(r, 0) + c
        return {r: c for r, c in acc.items() if c}

    zero = set()  # class roots known to vanish
    changed = True
    while changed:
        changed = False
        for row in rows:
            terms = collapse(row, zero)
            if not terms:
                continue
            if len({c > 0 for c in terms.values()}) == 1:
                # Nonnegative terms of one sign summing to zero all vanish.
                zero.update(terms)
                changed = True
            elif len(terms) == 2 and sum(terms.values()) == 0:
                a, b = sorted(terms)
                parent[b] = a
                changed = True

    roots = sorted({find(j) for j in range(n_vars)} - zero)
    index = {r: g for g, r in enumerate(roots)}
    groups = [[] for _ in roots]
    for j in range(n_vars):
        if find(j) in index:
            groups[index[find(j)]].append(j)
    reduced = set()
    for row in rows:
        terms = collapse(row, zero)
        if terms:
            acc = [0] * len(roots)
            for r, c in terms.items():
                acc[index[r]] = c
            reduced.add(tuple(acc))
    return groups, sorted(reduced)


def hilbert_basis(matrix, n_vars=None, cap=10_000):
    """Minimal nonzero nonnegative integer solutions of ``matrix @ x == 0``.

    ``matrix`` is a sequence of integer rows.  Returns a sorted list of
    tuples.  Raises :class:`IncompleteEnumeration` when candidates would
    exceed coordinate sum ``cap``.
    """
    if n_vars is None:
        if not matrix:
            raise ValueError("n_vars is required for an empty system")
        n_vars = len(matrix[0])
    groups, rows = _reduce([tuple(r) for r in matrix], n_vars)
    out = []
    for y in _completion(rows, len(groups), cap):
        x = [0] * n_vars
        for g, value in zip(groups, y):
            for j in g:
                x[j] = value
        out.append(tuple(x))
    return sorted(out)


def _completion(matrix, n_vars, cap):
    rows = [tuple(r) for r in matrix if any(r)]
    columns = [tuple(r[j] for r in rows) for j in range(n_vars)]

    basis = []
    frontier = {}
    for j in range(n_vars):
        x = tuple(1 if i == j else 0 for i in range(n_vars))
        frontier[x] = columns[j]

    size = 1
    while frontier:
        if size > cap:
            raise IncompleteEnumeration(
                f"Hilbert basis search passed coordinate sum {cap} with "
                f"{len(frontier)} open candidates"
            )
        found = [x for x, ax in frontier.items() if not any(ax)]
        basis.extend(found)
        nxt = {}
        for x, ax in frontier.items():
            if not any(ax):
                continue
            for j in range(n_vars):
                col = columns[j]
                # Only steps that decrease |Ax| along the current residual.
                if sum(a * c for a, c in zip(ax, col)) >= 0:
                    continue
                y = x[:j] + (x[j] + 1,) + x[j + 1:]
                if y in nxt:
                    continue
                if any(_dominates(y, m) for m in basis):
                    continue
                nxt[y] = tuple(a + c for a, c in zip(ax, col))
        frontier = nxt
        size += 1
    return sorted(basis)
