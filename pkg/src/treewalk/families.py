"""Named tree families and their closed-form value ledger.

Generators produce the canonical labeled realization: geodesic vertices
v0..vd take ids 0..d and every extra leaf takes the next free id, grouped
by attachment point. The ledger evaluates each printed closed form
verbatim; forms known to be misprinted keep a `_printed` variant alongside
a corrected one so audits can separate what the source states from what
the mathematics gives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InvalidFamilyParameters, OutOfStatedRange, ParityMismatch
from .trees import Tree, bfs_distances, build_tree

FAMILY_NAMES = ("path", "star", "lever", "broom", "double_broom")


@dataclass(frozen=True)
class FamilySpec:
    """Parameters naming one instance of a tree family."""

    family: str
    n: int
    d: int
    k: Optional[int] = None  # lever fulcrum index
    left_leaves: Optional[int] = None  # double_broom cluster at v1 (v0 included)
    right_leaves: Optional[int] = None  # double_broom cluster at v_{d-1} (v_d included)

    def validate(self) -> None:
        f, n, d = self.family, self.n, self.d
        if f not in FAMILY_NAMES:
            raise InvalidFamilyParameters(f"unknown family {f!r}")
        if f == "path":
            if n < 2 or d != n - 1:
                raise InvalidFamilyParameters(f"path needs d = n-1, got n={n}, d={d}")
        elif f == "star":
            if n < 3 or d != 2:
                raise InvalidFamilyParameters(f"star needs n >= 3 and d = 2, got n={n}, d={d}")
        elif f == "lever":
            if not 2 <= d <= n - 1:
                raise InvalidFamilyParameters(f"lever needs 2 <= d <= n-1, got n={n}, d={d}")
            if self.k is None or not 1 <= self.k <= d - 1:
                raise InvalidFamilyParameters(
                    f"lever fulcrum k={self.k} outside 1..d-1 = 1..{d - 1}"
                )
        elif f == "broom":
            if not 3 <= d < n:
                raise InvalidFamilyParameters(f"broom needs 3 <= d < n, got n={n}, d={d}")
        elif f == "double_broom":
            if not 2 <= d <= n - 1:
                raise InvalidFamilyParameters(
                    f"double broom needs 2 <= d <= n-1, got n={n}, d={d}"
                )
            lo, hi = self.left_leaves, self.right_leaves
            if lo is None or hi is None or lo < 1 or hi < 1 or lo + hi != n - d + 1:
                raise InvalidFamilyParameters(
                    f"double broom clusters ({lo}, {hi}) must be >= 1 and sum to n-d+1 = {n - d + 1}"
                )


def path_tree(n: int) -> Tree:
    if n < 1:
        raise InvalidFamilyParameters(f"path needs n >= 1, got {n}")
    return build_tree([(i, i + 1) for i in range(n - 1)], n)


def star_tree(n: int) -> Tree:
    """Star on n >= 3 vertices, hub at id 1 (geodesic 0-1-2)."""
    if n < 3:
        raise InvalidFamilyParameters(f"star needs n >= 3, got {n}")
    edges = [(0, 1), (1, 2)] + [(1, x) for x in range(3, n)]
    return build_tree(edges, n)


def lever_tree(n: int, d: int, k: int) -> Tree:
    """Diameter-d path with the n-d-1 extra vertices pendant at v_k."""
    if not 2 <= d <= n - 1:
        raise InvalidFamilyParameters(f"lever needs 2 <= d <= n-1, got n={n}, d={d}")
    if not 1 <= k <= d - 1:
        raise InvalidFamilyParameters(f"lever fulcrum k={k} outside 1..{d - 1}")
    edges = [(i, i + 1) for i in range(d)]
    edges += [(k, x) for x in range(d + 1, n)]
    return build_tree(edges, n)


def balanced_lever(n: int, d: int) -> Tree:
    """Lever with the fulcrum at the geodesic midpoint floor(d/2)."""
    if d == n - 1:
        return path_tree(n)
    return lever_tree(n, d, d // 2)


def broom_tree(n: int, d: int) -> Tree:
    """Handle path v1..vd with all n-d extra vertices pendant at v1.

    v0 is one of the bristles, so ids 0..d span a geodesic. d=1 gives the
    degenerate handle-less star used by split decompositions.
    """
    if not 1 <= d <= n - 1:
        raise InvalidFamilyParameters(f"broom needs 1 <= d <= n-1, got n={n}, d={d}")
    edges = [(i, i + 1) for i in range(d)]
    edges += [(1, x) for x in range(d + 1, n)]
    return build_tree(edges, n)


def double_broom_tree(n: int, d: int, left_leaves: int, right_leaves: int) -> Tree:
    """Central path v1..v_{d-1} with leaf clusters at both ends.

    Cluster counts include the geodesic endpoints v0 and v_d, so
    left + right = n - d + 1.
    """
    spec = FamilySpec("double_broom", n, d, left_leaves=left_leaves, right_leaves=right_leaves)
    spec.validate()
    edges = [(i, i + 1) for i in range(d)]
    nxt = d + 1
    for _ in range(left_leaves - 1):
        edges.append((1, nxt))
        nxt += 1
    for _ in range(right_leaves - 1):
        edges.append((d - 1, nxt))
        nxt += 1
    return build_tree(edges, n)


def balanced_double_broom(n: int, d: int) -> Tree:
    """Double broom whose end clusters differ in size by at most one."""
    if not 2 <= d <= n - 1:
        raise InvalidFamilyParameters(
            f"double broom needs 2 <= d <= n-1, got n={n}, d={d}"
        )
    extra = n - d - 1
    return double_broom_tree(n, d, extra // 2 + 1, (extra + 1) // 2 + 1)


def generate(spec: FamilySpec) -> Tree:
    """Build the canonical labeled tree for a validated FamilySpec."""
    spec.validate()
    f = spec.family
    if f == "path":
        return path_tree(spec.n)
    if f == "star":
        return star_tree(spec.n)
    if f == "lever":
        return lever_tree(spec.n, spec.d, spec.k)  # type: ignore[arg-type]
    if f == "broom":
        return broom_tree(spec.n, spec.d)
    return double_broom_tree(spec.n, spec.d, spec.left_leaves, spec.right_leaves)  # type: ignore[arg-type]


def is_double_broom(t: Tree) -> bool:
    """True when every vertex lies on a central path whose two end vertices
    carry all the leaves (paths, stars and brooms all qualify)."""
    n = t.n
    if n <= 3:
        return True
    internal = [v for v in range(n) if t.degree(v) >= 2]
    ends = [v for v in internal if sum(1 for w in t.adjacency[v] if t.degree(w) >= 2) <= 1]
    if len(internal) == 1:
        spine_ends = (internal[0], internal[0])
    else:
        # internal vertices must form a path: all of them of internal-degree
        # <= 2 and exactly two of internal-degree <= 1
        if len(ends) != 2:
            return False
        for v in internal:
            if sum(1 for w in t.adjacency[v] if t.degree(w) >= 2) > 2:
                return False
        # connectivity of the internal set follows from t being a tree when
        # leaves only hang off the two spine ends, checked below
        spine_ends = (ends[0], ends[1])
    for v in range(n):
        if t.degree(v) == 1:
            attach = t.adjacency[v][0]
            if attach not in spine_ends:
                return False
    return True


def rooted_broom_depth(t: Tree, root: int) -> Optional[int]:
    """Depth r when (t, root) is a broom with the root at the far handle
    end: one vertex per depth 1..r-1 and all depth-r vertices leaves on the
    depth-(r-1) vertex (depth-1 stars and plain paths included)."""
    dist = bfs_distances(t, root)
    r = max(dist)
    if t.n == 1:
        return 0
    by_depth: dict[int, list[int]] = {}
    for v, dv in enumerate(dist):
        by_depth.setdefault(dv, []).append(v)
    for depth in range(1, r):
        if len(by_depth.get(depth, [])) != 1:
            return None
    holder = by_depth[r - 1][0] if r >= 1 else root
    for v in by_depth.get(r, []):
        if t.degree(v) != 1 or t.adjacency[v][0] != holder:
            return None
    return r


# ---------------------------------------------------------------------------
# Closed-form ledger
# ---------------------------------------------------------------------------


def _requires(cond: bool, what: str) -> None:
    if not cond:
        raise OutOfStatedRange(what)


def _parity(cond: bool, what: str) -> None:
    if not cond:
        raise ParityMismatch(what)


def _jmax_path(n: int) -> Fraction:
    _requires(n >= 2, f"path maximum joining time needs n >= 2, got {n}")
    return Fraction(4 * (n - 1) ** 3 - (n - 1), 3)


def _jmax_path_expanded_printed(n: int) -> Fraction:
    _requires(n >= 2, f"path maximum joining time needs n >= 2, got {n}")
    return Fraction(4 * n**3 - 4 * n**2 + 11 * n, 3) - 1


def _tmeet_path(n: int) -> Fraction:
    _requires(n >= 2, f"path meeting time needs n >= 2, got {n}")
    return Fraction(4 * n * n - 8 * n + 3, 6)


def _tmeet_star(n: int) -> Fraction:
    _requires(n >= 2, f"star meeting time needs n >= 2, got {n}")
    return Fraction(4 * n - 7, 2)


def _jmax_star_printed(n: int) -> Fraction:
    _requires(n >= 2, f"star maximum joining time needs n >= 2, got {n}")
    return 2 * n * n - Fraction(11 * n, 2) + Fraction(7, 2)


def _jmax_star_corrected(n: int) -> Fraction:
    _requires(n >= 2, f"star maximum joining time needs n >= 2, got {n}")
    return Fraction(4 * n * n - 11 * n + 7)


def _jmin_path_odd(n: int) -> Fraction:
    _requires(n >= 2, f"path minimum joining time needs n >= 2, got {n}")
    _parity(n % 2 == 1, f"odd-order path form evaluated at n={n}")
    return Fraction(n**3 - 3 * n**2 + 2 * n, 3)


def _jmin_path_even(n: int) -> Fraction:
    _requires(n >= 2, f"path minimum joining time needs n >= 2, got {n}")
    _parity(n % 2 == 0, f"even-order path form evaluated at n={n}")
    return Fraction(n**3 - 3 * n**2 + 5 * n, 3) - 1


def _jmin_lever_odd(n: int, d: int) -> Fraction:
    _requires(2 <= d <= n - 1, f"lever form needs 2 <= d <= n-1, got n={n}, d={d}")
    _parity(d % 2 == 1, f"odd-diameter lever form evaluated at d={d}")
    return n - 1 + Fraction(d**3 - d, 3)


def _jmin_lever_even(n: int, d: int) -> Fraction:
    _requires(2 <= d <= n - 1, f"lever form needs 2 <= d <= n-1, got n={n}, d={d}")
    _parity(d % 2 == 0, f"even-diameter lever form evaluated at d={d}")
    return n - 1 + Fraction(d**3 - 4 * d, 3)


def _bestmeet_lever(n: int, d: int) -> Fraction:
    _requires(2 <= d <= n - 1, f"lever form needs 2 <= d <= n-1, got n={n}, d={d}")
    num = d**3 - d if d % 2 == 1 else d**3 - 4 * d
    return Fraction(num, 6 * (n - 1)) + Fraction(1, 2)


def _jmax_broom(n: int, d: int) -> Fraction:
    _requires(1 <= d <= n - 1, f"broom form needs 1 <= d <= n-1, got n={n}, d={d}")
    return Fraction(
        3 * (4 * (d - 1) * n * n + (5 - 4 * d * d) * n) + 4 * d**3 - 4 * d - 3, 3
    )


def _dbroom_guard(n: int, d: int, n_odd: bool, d_odd: bool) -> None:
    _requires(2 <= d <= n - 1, f"double-broom form needs 2 <= d <= n-1, got n={n}, d={d}")
    _parity(n % 2 == (1 if n_odd else 0), f"form wants n {'odd' if n_odd else 'even'}, got {n}")
    _parity(d % 2 == (1 if d_odd else 0), f"form wants d {'odd' if d_odd else 'even'}, got {d}")


def _jmin_dbroom_oo(n: int, d: int) -> Fraction:
    _dbroom_guard(n, d, True, True)
    return Fraction((d - 2) * n * n - (d * d - 2 * d) * n) + Fraction(d**3 - 3 * d * d + 2 * d, 3)


def _jmin_dbroom_oe(n: int, d: int) -> Fraction:
    _dbroom_guard(n, d, True, False)
    return (
        Fraction((d - 2) * n * n - (d * d - 2 * d - 1) * n)
        + Fraction(d**3 - 3 * d * d - d, 3)
        + 1
    )


def _jmin_dbroom_eo(n: int, d: int) -> Fraction:
    _dbroom_guard(n, d, False, True)
    return Fraction((d - 2) * n * n - (d * d - 2 * d - 2) * n) + Fraction(d**3 - 3 * d * d - d, 3)


def _jmin_dbroom_ee(n: int, d: int) -> Fraction:
    _dbroom_guard(n, d, False, False)
    return (
        Fraction((d - 2) * n * n - (d * d - 2 * d - 1) * n)
        + Fraction(d**3 - 3 * d * d + 2 * d, 3)
        - 1
    )


def _bestmeet_dbroom_oo(n: int, d: int) -> Fraction:
    _dbroom_guard(n, d, True, True)
    return Fraction((d - 2) * n - d * d + 3 * d - 2, 2) + Fraction(
        d**3 - 6 * d * d + 11 * d - 6, 6 * (n - 1)
    )


def _bestmeet_dbroom_oe(n: int, d: int) -> Fraction:
    # corrected second-term denominator 6(n-1); the printed 2(n-1) variant
    # is kept separately for the audit
    _dbroom_guard(n, d, True, False)
    return Fraction((d - 2) * n - d * d + 3 * d - 1, 2) + Fraction(
        d**3 - 6 * d * d + 8 * d, 6 * (n - 1)
    )


def _bestmeet_dbroom_oe_printed(n: int, d: int) -> Fraction:
    _dbroom_guard(n, d, True, False)
    return Fraction((d - 2) * n - d * d + 3 * d - 1, 2) + Fraction(
        d**3 - 6 * d * d + 8 * d, 2 * (n - 1)
    )


def _bestmeet_dbroom_eo(n: int, d: int) -> Fraction:
    _dbroom_guard(n, d, False, True)
    return Fraction((d - 2) * n - d * d + 3 * d, 2) + Fraction(
        d**3 - 6 * d * d + 8 * d, 6 * (n - 1)
    )


def _bestmeet_dbroom_ee(n: int, d: int) -> Fraction:
    _dbroom_guard(n, d, False, False)
    return Fraction((d - 2) * n - d * d + 3 * d - 1, 2) + Fraction(
        d**3 - 6 * d * d + 11 * d - 6, 6 * (n - 1)
    )


def _jmin_dnd_max(n: int) -> Fraction:
    """Printed maximum of the balanced double brooms' minimum joining time
    over all diameters (the odd n >= 9 branch is contested; audited)."""
    _requires(n >= 3, f"needs n >= 3, got {n}")
    if n % 2 == 0:
        return Fraction(n**3 - 3 * n * n + 5 * n - 3, 3)
    if n <= 7:
        return Fraction(n**3 - 3 * n * n + 2 * n, 3)
    return Fraction(n**3 - 3 * n * n + 5 * n - 24, 3)


def _bestmeet_pn(n: int) -> Fraction:
    _requires(n >= 2, f"needs n >= 2, got {n}")
    if n % 2 == 0:
        return Fraction(n * n - 2 * n + 3, 6)
    return Fraction(n * n - 2 * n, 6)


def _bestmeet_bn_printed(n: int) -> Fraction:
    _requires(n >= 5, f"short-diameter broom form needs n >= 5, got {n}")
    _parity(n % 2 == 1, f"form wants odd n, got {n}")
    return Fraction(n * n - 2 * n + 3, 6) - Fraction(4, n - 1)


def _bestmeet_bn_corrected(n: int) -> Fraction:
    _requires(n >= 5, f"short-diameter broom form needs n >= 5, got {n}")
    _parity(n % 2 == 1, f"form wants odd n, got {n}")
    return Fraction(n * n - 2 * n, 6) - Fraction(4, n - 1)


def _big_delta_plus(n: int, d: int) -> Fraction:
    _requires(1 <= d <= n - 1, f"broom form needs 1 <= d <= n-1, got n={n}, d={d}")
    return Fraction(4 * n * n - 4 * n + 1)


def _delta_plus(n: int, d: int) -> Fraction:
    _requires(1 <= d <= n - 1, f"broom form needs 1 <= d <= n-1, got n={n}, d={d}")
    return Fraction(4 * (d - 1) * (2 * n - d) + 1)


def _delta_minus_broom(n: int, d: int) -> Fraction:
    _requires(2 <= d <= n - 2, f"bristle-removal form needs 2 <= d <= n-2, got n={n}, d={d}")
    return Fraction(-4 * (d - 1) * (2 * (n - 1) - d) - 1)


def _delta_minus_path(n: int) -> Fraction:
    _requires(n >= 2, f"path-shrink form needs n >= 2, got {n}")
    return Fraction(-((2 * n - 3) ** 2))


_N_ONLY = {
    "jmax_path": _jmax_path,
    "jmax_path_expanded_printed": _jmax_path_expanded_printed,
    "tmeet_path": _tmeet_path,
    "tmeet_star": _tmeet_star,
    "jmax_star_printed": _jmax_star_printed,
    "jmax_star_corrected": _jmax_star_corrected,
    "jmin_path_odd": _jmin_path_odd,
    "jmin_path_even": _jmin_path_even,
    "jmin_dnd_max": _jmin_dnd_max,
    "bestmeet_pn": _bestmeet_pn,
    "bestmeet_bn_printed": _bestmeet_bn_printed,
    "bestmeet_bn_corrected": _bestmeet_bn_corrected,
    "delta_minus_path": _delta_minus_path,
}

_N_AND_D = {
    "jmin_lever_odd": _jmin_lever_odd,
    "jmin_lever_even": _jmin_lever_even,
    "bestmeet_lever": _bestmeet_lever,
    "jmax_broom": _jmax_broom,
    "jmin_dbroom_oo": _jmin_dbroom_oo,
    "jmin_dbroom_oe": _jmin_dbroom_oe,
    "jmin_dbroom_eo": _jmin_dbroom_eo,
    "jmin_dbroom_ee": _jmin_dbroom_ee,
    "bestmeet_dbroom_oo": _bestmeet_dbroom_oo,
    "bestmeet_dbroom_oe": _bestmeet_dbroom_oe,
    "bestmeet_dbroom_oe_printed": _bestmeet_dbroom_oe_printed,
    "bestmeet_dbroom_eo": _bestmeet_dbroom_eo,
    "bestmeet_dbroom_ee": _bestmeet_dbroom_ee,
    "big_delta_plus": _big_delta_plus,
    "delta_plus": _delta_plus,
    "delta_minus_broom": _delta_minus_broom,
}

FORMULA_IDS = tuple(sorted(_N_ONLY) + sorted(_N_AND_D))


def formula_needs_d(fid: str) -> bool:
    if fid in _N_AND_D:
        return True
    if fid in _N_ONLY:
        return False
    raise OutOfStatedRange(f"unknown formula id {fid!r}")


def closed_form(fid: str, n: int, d: Optional[int] = None) -> Fraction:
    """Evaluate one ledger formula exactly at (n, d)."""
    if fid in _N_ONLY:
        return _N_ONLY[fid](n)
    if fid in _N_AND_D:
        if d is None:
            raise OutOfStatedRange(f"formula {fid!r} needs a diameter argument")
        return _N_AND_D[fid](n, d)
    raise OutOfStatedRange(f"unknown formula id {fid!r}")


def jmin_dbroom_case(n: int, d: int) -> str:
    return "jmin_dbroom_" + ("o" if n % 2 else "e") + ("o" if d % 2 else "e")


def bestmeet_dbroom_case(n: int, d: int) -> str:
    return "bestmeet_dbroom_" + ("o" if n % 2 else "e") + ("o" if d % 2 else "e")


def jmin_lever_case(d: int) -> str:
    return "jmin_lever_odd" if d % 2 else "jmin_lever_even"


def delta_inequalities_hold(n: int, d: int) -> bool:
    """Check the three bristle/handle difference inequalities at (n, d):
    adding a bristle helps more on bigger brooms, shrinking the handle of a
    path costs less than extending it pays, and handle extension dominates
    bristle addition dominates leaf removal."""
    _requires(3 <= d <= n - 1 and n >= 4, f"broom range needed, got n={n}, d={d}")
    dp = _delta_plus
    ineq1 = dp(n + 1, d) > dp(n, d)
    ineq2 = dp(n, n - 1) > dp(n - 1, n - 2)
    if d <= n - 2:
        minus = _delta_minus_broom(n, d)
    else:
        minus = _delta_minus_path(n)
    ineq3 = _big_delta_plus(n, d) > dp(n, d) > -minus
    return bool(ineq1 and ineq2 and ineq3)
