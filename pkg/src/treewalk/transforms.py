"""Executable graph rewrites that drive the extremal arguments.

Single leaf relocation, broomification of a rooted tree, and the two
three-phase pipelines that push any tree of fixed order and diameter to
the balanced lever (minimizing the smallest scaled meeting time) or to a
double broom (maximizing it). Every pipeline emits a TransformTrace whose
tracked quantity is the minimum joining time of the current tree, checked
monotone step by step.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    DiameterOutOfRange,
    NotALeaf,
    SelfAttach,
    TreewalkError,
    WrongNeighbor,
)
from .families import is_double_broom, rooted_broom_depth
from .trees import (
    Tree,
    bfs_distances,
    build_tree,
    canonical_form,
    diameter_and_geodesic,
    path_between,
)
from .walkstats import barycenter, hitting_profile, joining_all, joining_time

DEFAULT_SNAPSHOT_DEPTH = 8


@dataclass(frozen=True)
class TraceStep:
    description: str
    canonical: bytes
    value: int
    allow_equal: bool = False
    snapshot: Optional[Tree] = None


@dataclass
class TransformTrace:
    """Ordered record of rewrites with the tracked quantity after each one.

    direction is "decreasing" or "increasing"; append() enforces strict
    monotonicity except on steps explicitly flagged allow_equal (used where
    the underlying argument only guarantees a non-strict change).
    """

    direction: str
    initial_value: int
    initial_canonical: bytes
    snapshot_depth: int = DEFAULT_SNAPSHOT_DEPTH
    steps: list[TraceStep] = field(default_factory=list)

    @property
    def last_value(self) -> int:
        return self.steps[-1].value if self.steps else self.initial_value

    def append(self, description: str, tree: Tree, value: int, allow_equal: bool = False) -> None:
        prev = self.last_value
        if self.direction == "decreasing":
            ok = value <= prev if allow_equal else value < prev
        else:
            ok = value >= prev if allow_equal else value > prev
        if not ok:
            raise TreewalkError(
                f"trace not {self.direction} at step {len(self.steps)}: "
                f"{prev} -> {value} ({description})"
            )
        snap = tree if len(self.steps) < self.snapshot_depth else None
        self.steps.append(
            TraceStep(
                description=description,
                canonical=canonical_form(tree),
                value=value,
                allow_equal=allow_equal,
                snapshot=snap,
            )
        )

    def to_json_lines(self) -> str:
        lines = []
        for i, s in enumerate(self.steps):
            lines.append(
                json.dumps(
                    {
                        "step": i,
                        "description": s.description,
                        "value": s.value,
                        "canonical": s.canonical.decode("ascii"),
                        "allow_equal": s.allow_equal,
                    },
                    sort_keys=True,
                )
            )
        return "\n".join(lines)


def _jmin(t: Tree) -> int:
    return min(joining_all(t))


def move_leaf(t: Tree, z: int, y: int, x: int, check: bool = False) -> Tree:
    """Replace edge (y,z) by (x,z) for a leaf z with neighbor y.

    With check=True, verifies exactly that no hitting time into x grew and
    that the joining time to x strictly dropped (x == y returns the tree
    unchanged and waives the strict part).
    """
    if t.degree(z) != 1:
        raise NotALeaf(f"vertex {z} has degree {t.degree(z)}")
    if t.adjacency[z][0] != y:
        raise WrongNeighbor(f"leaf {z} is adjacent to {t.adjacency[z][0]}, not {y}")
    if x == z:
        raise SelfAttach(f"cannot attach leaf {z} to itself")
    if x == y:
        return t
    edges = [(u, v) for u, v in t.edges() if (u, v) != (min(y, z), max(y, z))]
    edges.append((min(x, z), max(x, z)))
    out = build_tree(edges, t.n)
    if check:
        before = hitting_profile(t).matrix
        after = hitting_profile(out).matrix
        for v in range(t.n):
            if after[v][x] > before[v][x]:
                raise TreewalkError(
                    f"hitting time into {x} grew at {v}: {before[v][x]} -> {after[v][x]}"
                )
        if joining_time(out, x) >= joining_time(t, x):
            raise TreewalkError(
                f"joining time to {x} did not drop: "
                f"{joining_time(t, x)} -> {joining_time(out, x)}"
            )
    return out


def broomify(t: Tree, z: int) -> Tree:
    """The unique maximizer of the joining time to z among trees of the same
    order and the same eccentricity of z: a broom with z at the far end of
    the handle. Returns t itself when it already has that shape."""
    r = max(bfs_distances(t, z))
    if rooted_broom_depth(t, z) == r:
        return t
    others = sorted(v for v in range(t.n) if v != z)
    handle = others[: r - 1]
    bristles = others[r - 1 :]
    chain = [z] + handle
    edges = list(zip(chain, chain[1:]))
    edges += [(chain[-1], b) for b in bristles]
    return build_tree(edges, t.n)


def _moveable_leaf(t: Tree, c: int, banned: tuple[int, int]) -> Optional[int]:
    for v in range(t.n):
        if t.degree(v) == 1 and v not in banned and v != c and t.adjacency[v][0] != c:
            return v
    return None


def minimize_pipeline(
    t: Tree, snapshot_depth: int = DEFAULT_SNAPSHOT_DEPTH
) -> tuple[Tree, TransformTrace]:
    """Three-phase rewrite to the balanced lever of the same order and
    diameter; the minimum joining time strictly drops at every step.

    Phase one relocates every leaf off the geodesic to sit beside the
    barycenter. Phase two (only when the barycenter is off the geodesic)
    turns all non-geodesic vertices into leaves at the unique degree-3
    geodesic vertex. Phase three recenters the fulcrum to the middle of
    the geodesic.
    """
    n = t.n
    d, geo = diameter_and_geodesic(t)
    if not 3 <= d <= n - 2:
        raise DiameterOutOfRange(f"pipeline needs 3 <= d <= n-2, got n={n}, d={d}")
    trace = TransformTrace(
        direction="decreasing",
        initial_value=_jmin(t),
        initial_canonical=canonical_form(t),
        snapshot_depth=snapshot_depth,
    )
    cur = t
    ends = (geo[0], geo[-1])
    geo_set = set(geo)

    # phase one: every leaf beside the barycenter
    guard = 0
    while True:
        c = min(barycenter(cur).centers)
        z = _moveable_leaf(cur, c, ends)
        if z is None:
            break
        y = cur.adjacency[z][0]
        cur = move_leaf(cur, z, y, c)
        trace.append(f"move leaf {z} from {y} beside barycenter {c}", cur, _jmin(cur))
        guard += 1
        if guard > 4 * n:
            raise TreewalkError("leaf relocation failed to converge")

    c = min(barycenter(cur).centers)
    if c not in geo_set:
        # phase two: collapse the off-geodesic branch onto its attachment
        attach = next(v for v in path_between(cur, c, ends[0]) if v in geo_set)
        edges = list(zip(geo, geo[1:]))
        edges += [(attach, v) for v in range(n) if v not in geo_set]
        cur = build_tree(edges, n)
        trace.append(
            f"collapse off-geodesic branch into leaves at vertex {attach}", cur, _jmin(cur)
        )
        c = attach

    # phase three: recenter the fulcrum
    k = geo.index(c)
    central = {d // 2} if d % 2 == 0 else {(d - 1) // 2, (d + 1) // 2}
    if n > d + 1 and k not in central:
        target = geo[d // 2]
        edges = list(zip(geo, geo[1:]))
        edges += [(target, v) for v in range(n) if v not in geo_set]
        cur = build_tree(edges, n)
        trace.append(f"recenter fulcrum from {c} to {target}", cur, _jmin(cur))

    return cur, trace


@dataclass
class _Part:
    """One branch of the split at the barycenter, tracked as the vertex set
    of its component (the split vertex itself excluded)."""

    index: int
    vertices: set[int]

    def size_with_center(self) -> int:
        return len(self.vertices) + 1


def _part_geometry(t: Tree, c: int, part: set[int]) -> tuple[int, int, int, int]:
    """(depth r, deepest leaf, holder of the deepest leaves, bristle count)
    for a broom-shaped branch hanging off c."""
    dist = {c: 0}
    frontier = [c]
    parent = {c: c}
    while frontier:
        nxt = []
        for u in frontier:
            for w in t.adjacency[u]:
                if w in part and w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    nxt.append(w)
        frontier = nxt
    r = max(dist[v] for v in part)
    deepest = sorted(v for v in part if dist[v] == r)
    holder = parent[deepest[0]]
    return r, deepest[0], holder, len(deepest)


def _delta_plus_part(t: Tree, c: int, part: set[int]) -> int:
    r, _, _, _ = _part_geometry(t, c, part)
    m = len(part) + 1
    return 4 * (r - 1) * (2 * m - r) + 1


def maximize_pipeline(
    t: Tree, snapshot_depth: int = DEFAULT_SNAPSHOT_DEPTH
) -> tuple[Tree, TransformTrace]:
    """Three-phase rewrite of a non-double-broom into a double broom whose
    minimum joining time is strictly larger; diameter never ends up above
    the input's.

    Phase one replaces every branch at the barycenter by the broom that
    maximizes the joining time into the barycenter. Phase two grows the
    handles of the two best branches until they span the diameter; phase
    three empties the remaining branches into their bristle clusters.
    Individual phase two/three moves are only guaranteed non-decreasing,
    and the barycenter certificate is re-checked after every move.
    """
    n = t.n
    d, _ = diameter_and_geodesic(t)
    trace = TransformTrace(
        direction="increasing",
        initial_value=_jmin(t),
        initial_canonical=canonical_form(t),
        snapshot_depth=snapshot_depth,
    )
    if is_double_broom(t):
        return t, trace
    cur = t
    c = min(barycenter(cur).centers)

    # phase one: broomify every branch at c, keeping vertex sets in place
    comps: list[set[int]] = []
    for w in cur.adjacency[c]:
        comp = {w}
        stack = [w]
        while stack:
            u = stack.pop()
            for v in cur.adjacency[u]:
                if v != c and v not in comp:
                    comp.add(v)
                    stack.append(v)
        comps.append(comp)
    for comp in comps:
        sub_vertices = sorted(comp | {c})
        index = {p: i for i, p in enumerate(sub_vertices)}
        sub_edges = [
            (index[u], index[v])
            for u, v in cur.edges()
            if u in index and v in index
        ]
        sub = build_tree(sub_edges, len(sub_vertices))
        r = rooted_broom_depth(sub, index[c])
        if r is not None:
            continue
        depth = max(
            bfs_distances(cur, c)[v] for v in comp
        )
        others = sorted(comp)
        handle = others[: depth - 1]
        bristles = others[depth - 1 :]
        chain = [c] + handle
        keep = [
            (u, v)
            for u, v in cur.edges()
            if u not in comp and v not in comp
        ]
        rebuilt = keep + list(zip(chain, chain[1:])) + [(chain[-1], b) for b in bristles]
        cur = build_tree(rebuilt, n)
        trace.append(
            f"reshape branch at {c} through {sorted(comp)[0]} into a broom",
            cur,
            _jmin(cur),
        )
        _assert_barycenter(cur, c)

    parts = [
        _Part(index=i, vertices=_component(cur, c, w))
        for i, w in enumerate(cur.adjacency[c])
    ]
    if len(parts) <= 2:
        return _finish(cur, d, trace)

    ranked = sorted(
        parts, key=lambda p: (-_delta_plus_part(cur, c, p.vertices), p.index)
    )
    g1, g2 = ranked[0], ranked[1]
    donors = sorted(ranked[2:], key=lambda p: p.index)

    def acceptor() -> _Part:
        for cand in (g1, g2):
            if 2 * (len(cand.vertices) + 1) <= n:
                return cand
        raise TreewalkError("no branch can accept a leaf without unseating the barycenter")

    # phase two: extend handles until the two main branches span the diameter
    while donors:
        r1 = _part_geometry(cur, c, g1.vertices)[0]
        r2 = _part_geometry(cur, c, g2.vertices)[0]
        if r1 + r2 >= d:
            break
        target = acceptor()
        donor = donors[0]
        _, w, holder, _ = _part_geometry(cur, c, donor.vertices)
        _, deep, _, _ = _part_geometry(cur, c, target.vertices)
        cur = _swap_edge(cur, w, holder, deep)
        donor.vertices.discard(w)
        target.vertices.add(w)
        if not donor.vertices:
            donors.pop(0)
        trace.append(
            f"extend handle of branch {target.index} with leaf {w}",
            cur,
            _jmin(cur),
            allow_equal=True,
        )
        _assert_barycenter(cur, c)

    # phase three: drain remaining branches into the bristle clusters
    while donors:
        target = acceptor()
        donor = donors[0]
        _, w, holder, _ = _part_geometry(cur, c, donor.vertices)
        rt, _, t_holder, _ = _part_geometry(cur, c, target.vertices)
        attach = t_holder if rt > 1 else c
        cur = _swap_edge(cur, w, holder, attach)
        donor.vertices.discard(w)
        target.vertices.add(w)
        if not donor.vertices:
            donors.pop(0)
        trace.append(
            f"add leaf {w} to the cluster of branch {target.index}",
            cur,
            _jmin(cur),
            allow_equal=True,
        )
        _assert_barycenter(cur, c)

    return _finish(cur, d, trace)


def _component(t: Tree, c: int, w: int) -> set[int]:
    comp = {w}
    stack = [w]
    while stack:
        u = stack.pop()
        for v in t.adjacency[u]:
            if v != c and v not in comp:
                comp.add(v)
                stack.append(v)
    return comp


def _swap_edge(t: Tree, w: int, old: int, new: int) -> Tree:
    edges = [(u, v) for u, v in t.edges() if (u, v) != (min(w, old), max(w, old))]
    edges.append((min(w, new), max(w, new)))
    return build_tree(edges, t.n)


def _assert_barycenter(t: Tree, c: int) -> None:
    if c not in barycenter(t).centers:
        raise TreewalkError(f"vertex {c} stopped being a barycenter mid-pipeline")


def _finish(cur: Tree, d: int, trace: TransformTrace) -> tuple[Tree, TransformTrace]:
    if not is_double_broom(cur):
        raise TreewalkError("pipeline did not end on a double broom")
    d_out, _ = diameter_and_geodesic(cur)
    if d_out > d:
        raise TreewalkError(f"diameter grew from {d} to {d_out}")
    if trace.steps and trace.last_value <= trace.initial_value:
        raise TreewalkError("minimum joining time did not strictly increase")
    return cur, trace
