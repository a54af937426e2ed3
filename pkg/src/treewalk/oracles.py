"""Independent computation routes used to cross-check the main statistics.

Each oracle recomputes a quantity from a different principle than the
walkstats implementations: exact Gaussian elimination on the first-step
system, per-edge component counting for the edge-decomposition route, and
plain distance sums for the barycenter. They are deliberately slow and
share no code with the fast paths.
"""

from __future__ import annotations

from fractions import Fraction

from .trees import Tree, bfs_distances, path_between


def hitting_row_by_linear_solve(t: Tree, w: int) -> list[Fraction]:
    """Solve the first-step equations h_u = 1 + mean of h over neighbors,
    h_w = 0, by exact Gaussian elimination; returns H(u, w) for all u."""
    n = t.n
    unknowns = [u for u in range(n) if u != w]
    index = {u: i for i, u in enumerate(unknowns)}
    m = n - 1
    # rows: deg(u) h_u - sum_{v in N(u), v != w} h_v = deg(u)
    a = [[Fraction(0)] * (m + 1) for _ in range(m)]
    for u in unknowns:
        i = index[u]
        a[i][i] = Fraction(t.degree(u))
        a[i][m] = Fraction(t.degree(u))
        for v in t.adjacency[u]:
            if v != w:
                a[i][index[v]] -= 1
    for col in range(m):
        piv = next(r for r in range(col, m) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for r in range(m):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = [Fraction(0)] * n
    for u in unknowns:
        out[u] = a[index[u]][m]
    return out


def hitting_matrix_by_linear_solve(t: Tree) -> list[list[Fraction]]:
    cols = [hitting_row_by_linear_solve(t, w) for w in range(t.n)]
    return [[cols[w][u] for w in range(t.n)] for u in range(t.n)]


def _edges_on_side(t: Tree, a: int, b: int) -> int:
    """Edge count of the component of t - (a,b) that contains a; the
    component is itself a tree, so edges = vertices - 1."""
    seen = {a}
    stack = [a]
    while stack:
        u = stack.pop()
        for v in t.adjacency[u]:
            if u == a and v == b:
                continue
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) - 1


def hitting_time_by_edge_decomposition(t: Tree, u: int, w: int) -> int:
    """Sum per-edge costs 2*m_a + 1 along the u..w path, where m_a counts
    the edges on a's side of the edge being crossed."""
    total = 0
    path = path_between(t, u, w)
    for a, b in zip(path, path[1:]):
        total += 2 * _edges_on_side(t, a, b) + 1
    return total


def joining_time_by_definition(t: Tree, w: int) -> int:
    """J(w) as literally sum deg(u) * H(u,w) over the edge-decomposition
    hitting times."""
    return sum(
        t.degree(u) * hitting_time_by_edge_decomposition(t, u, w)
        for u in range(t.n)
        if u != w
    )


def joining_time_by_linear_solve(t: Tree, w: int) -> Fraction:
    row = hitting_row_by_linear_solve(t, w)
    return sum((t.degree(u) * row[u] for u in range(t.n)), Fraction(0))


def distance_argmin(t: Tree) -> list[int]:
    """Vertices minimizing the total distance to all others."""
    sums = [sum(bfs_distances(t, v)) for v in range(t.n)]
    best = min(sums)
    return [v for v in range(t.n) if sums[v] == best]
