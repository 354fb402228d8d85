"""Automorphism groups of digraphs and the transitivity predicates.

The automorphism search backtracks over vertex images, refined by in/out
degrees and distance profiles; it is meant for desk-scale digraphs and is
guarded by a node budget.  The transitivity testers reduce every claim to
orbit counts on explicit tuple families.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field

from .digraph import DIRECTED, Digraph, Walk
from .errors import (
    BadParameter,
    NotAutomorphismGroup,
    NotStronglyConnected,
    SearchBudgetExceeded,
    SetNotInvariant,
)
from .groups import PermGroup
from .perm import Permutation

DEFAULT_NODE_BUDGET = 2_000_000
_BUDGET_ENV = "DIGSYM_SEARCH_BUDGET"


def default_node_budget() -> int:
    value = os.environ.get(_BUDGET_ENV)
    if value:
        try:
            return int(value)
        except ValueError:
            raise BadParameter(f"{_BUDGET_ENV} must be an integer, got {value!r}") from None
    return DEFAULT_NODE_BUDGET


def _distance_profiles(g: Digraph):
    """Initial vertex colors from degrees and sorted distance rows/columns."""
    rows = g._distance_matrix
    inf = g.n  # larger than any finite distance
    profiles = []
    for v in range(g.n):
        row = tuple(sorted(inf if d is None else d for d in rows[v]))
        col = tuple(sorted(inf if rows[u][v] is None else rows[u][v] for u in range(g.n)))
        profiles.append((len(g._out[v]), len(g._in[v]), row, col))
    return profiles


def _refine_colors(g: Digraph) -> list[int]:
    """Iterated neighborhood color refinement; returns a color per vertex."""
    profiles = _distance_profiles(g)
    palette = {p: i for i, p in enumerate(sorted(set(profiles)))}
    colors = [palette[p] for p in profiles]
    while True:
        keys = []
        for v in range(g.n):
            out_key = tuple(sorted(colors[w] for w in g._out[v]))
            in_key = tuple(sorted(colors[w] for w in g._in[v]))
            keys.append((colors[v], out_key, in_key))
        palette = {k: i for i, k in enumerate(sorted(set(keys)))}
        new_colors = [palette[k] for k in keys]
        if new_colors == colors:
            return colors
        colors = new_colors


def automorphism_group(
    g: Digraph, node_budget: int | None = None, known=()
) -> PermGroup:
    """The full group of arc-preserving vertex bijections of g.

    Vertices are processed in a fixed order; for each level the search hunts
    one automorphism per point outside the current orbit of the level's
    pointwise stabilizer, so generators are found without enumerating the
    whole group.  ``known`` may seed automorphisms discovered elsewhere
    (e.g. translations of a Cayley digraph) to prune the search.
    """
    budget = default_node_budget() if node_budget is None else node_budget
    n = g.n
    if n == 0:
        return PermGroup((), 0)
    colors = _refine_colors(g)
    arcs = g.arcs
    candidates = [
        frozenset(w for w in range(n) if colors[w] == colors[v]) for v in range(n)
    ]
    # Fixed assignment order: most constrained color classes first.
    order = sorted(range(n), key=lambda v: (len(candidates[v]), v))
    position = {v: i for i, v in enumerate(order)}

    nodes = 0

    def complete(start_map: dict[int, int]) -> Permutation | None:
        """Extend a consistent partial map to a full automorphism, if any."""
        nonlocal nodes
        remaining: dict[int, frozenset[int]] = {}
        used = set(start_map.values())
        for v in range(n):
            if v in start_map:
                continue
            cand = candidates[v]
            for u, w in start_map.items():
                v_from_u = (u, v) in arcs
                v_to_u = (v, u) in arcs
                cand = frozenset(
                    x
                    for x in cand
                    if x not in used
                    and ((w, x) in arcs) == v_from_u
                    and ((x, w) in arcs) == v_to_u
                )
                if not cand:
                    return None
            remaining[v] = cand

        def search(assigned, remaining):
            nonlocal nodes
            if not remaining:
                return dict(assigned)
            v = min(remaining, key=lambda u: (len(remaining[u]), position[u]))
            for w in sorted(remaining[v]):
                nodes += 1
                if nodes > budget:
                    raise SearchBudgetExceeded(
                        f"automorphism search exceeded {budget} nodes"
                    )
                new_remaining = {}
                feasible = True
                for u, cand in remaining.items():
                    if u == v:
                        continue
                    v_to_u = (v, u) in arcs
                    u_to_v = (u, v) in arcs
                    filtered = frozenset(
                        x
                        for x in cand
                        if x != w
                        and ((w, x) in arcs) == v_to_u
                        and ((x, w) in arcs) == u_to_v
                    )
                    if not filtered:
                        feasible = False
                        break
                    new_remaining[u] = filtered
                if feasible:
                    assigned[v] = w
                    result = search(assigned, new_remaining)
                    if result is not None:
                        return result
                    del assigned[v]
            return None

        full = search(dict(start_map), remaining)
        if full is None:
            return None
        return Permutation(tuple(full[v] for v in range(n)))

    gens: list[Permutation] = []
    for p in known:
        if p.degree != n or any((p(u), p(v)) not in arcs for u, v in arcs):
            raise NotAutomorphismGroup(f"known permutation {p} is not an automorphism")
        gens.append(p)

    for i in range(n):
        v = order[i]
        fixed = {order[j]: order[j] for j in range(i)}
        level_gens = [p for p in gens if all(p(order[j]) == order[j] for j in range(i))]
        orbit = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for p in level_gens:
                y = p(x)
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        # Feasible images of v under maps fixing the processed prefix.
        feasible = candidates[v]
        for u in fixed:
            u_to_v = (u, v) in arcs
            v_to_u = (v, u) in arcs
            feasible = frozenset(
                x
                for x in feasible
                if x not in fixed
                and ((u, x) in arcs) == u_to_v
                and ((x, u) in arcs) == v_to_u
            )
        for w in sorted(feasible):
            if w in orbit:
                continue
            perm = complete({**fixed, v: w})
            if perm is not None:
                gens.append(perm)
                level_gens.append(perm)
                queue = deque(orbit)
                while queue:
                    x = queue.popleft()
                    for p in level_gens:
                        y = p(x)
                        if y not in orbit:
                            orbit.add(y)
                            queue.append(y)
    return PermGroup(gens, n)


def exhaustive_automorphisms(g: Digraph) -> list[Permutation]:
    """All automorphisms by scanning every permutation; oracle for tiny n."""
    from itertools import permutations as iter_perms

    result = []
    for images in iter_perms(range(g.n)):
        if all((images[u], images[v]) in g.arcs for u, v in g.arcs):
            result.append(Permutation(images))
    return result


def check_is_automorphism_group(g: Digraph, group: PermGroup) -> None:
    """Raise NotAutomorphismGroup unless every generator preserves the arcs."""
    if group.degree != g.n:
        raise NotAutomorphismGroup(f"group degree {group.degree} != {g.n} vertices")
    for perm in group.generators:
        for u, v in g.arcs:
            if (perm(u), perm(v)) not in g.arcs:
                raise NotAutomorphismGroup(f"{perm} maps arc ({u},{v}) off the arc set")


def _as_tuple(t) -> tuple[int, ...]:
    return t.vertices if isinstance(t, Walk) else tuple(t)


def orbits_on_tuples(group: PermGroup, tuples) -> list[list[tuple[int, ...]]]:
    """Orbit partition of a G-invariant tuple family under the diagonal action."""
    family = [_as_tuple(t) for t in tuples]
    index = {t: i for i, t in enumerate(family)}
    if len(index) != len(family):
        raise ValueError("tuple family contains duplicates")
    for t in family:
        for perm in group.generators:
            image = tuple(perm(v) for v in t)
            if image not in index:
                raise SetNotInvariant(f"{t} maps to {image} outside the family")
    seen = set()
    orbits = []
    for t in family:
        if t in seen:
            continue
        orbit = [t]
        seen.add(t)
        queue = deque([t])
        while queue:
            current = queue.popleft()
            for perm in group.generators:
                image = tuple(perm(v) for v in current)
                if image not in seen:
                    seen.add(image)
                    orbit.append(image)
                    queue.append(image)
        orbits.append(sorted(orbit))
    return orbits


def _single_orbit(group: PermGroup, family: list[tuple[int, ...]]) -> bool:
    index = set(family)
    for t in family:
        for perm in group.generators:
            image = tuple(perm(v) for v in t)
            if image not in index:
                raise SetNotInvariant(f"{t} maps to {image} outside the family")
    if not family:
        return True
    start = family[0]
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for perm in group.generators:
            image = tuple(perm(v) for v in current)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return len(seen) == len(index)


def _require_tester_input(g: Digraph, group: PermGroup, s: int) -> None:
    if g.symmetry_class != DIRECTED:
        raise BadParameter("transitivity testers require the directed class")
    if s < 1:
        raise BadParameter("s must be at least 1")
    check_is_automorphism_group(g, group)


def is_s_arc_transitive(g: Digraph, group: PermGroup, s: int) -> bool:
    """Single orbit on the s-arcs; vacuously true when no s-arc exists."""
    _require_tester_input(g, group, s)
    family = [w.vertices for w in g.s_arcs(s)]
    return _single_orbit(group, family)


def is_s_geodesic_transitive(g: Digraph, group: PermGroup, s: int) -> bool:
    """Single orbit on the i-geodesics for every i <= min(s, max distance)."""
    _require_tester_input(g, group, s)
    cap = min(s, g.max_geodesic_length())
    if cap == 0:
        return False  # no arcs at all
    for i in range(1, cap + 1):
        family = [w.vertices for w in g.s_geodesics(i)]
        if not _single_orbit(group, family):
            return False
    return True


def is_vertex_transitive(g: Digraph, group: PermGroup) -> bool:
    check_is_automorphism_group(g, group)
    return group.is_transitive()


def is_distance_transitive(g: Digraph, group: PermGroup) -> bool:
    """Single orbit on ordered pairs at distance i, for every i <= diameter."""
    if not g.is_strongly_connected():
        raise NotStronglyConnected("distance-transitivity needs strong connectivity")
    check_is_automorphism_group(g, group)
    pairs_at = {}
    for u in range(g.n):
        for v in range(g.n):
            pairs_at.setdefault(g.distance(u, v), []).append((u, v))
    return all(_single_orbit(group, family) for family in pairs_at.values())


@dataclass(frozen=True)
class TransitivityReport:
    """Per-digraph transitivity summary with witnessing orbit counts."""

    digraph: str
    group_order: int
    vertex_transitive: bool
    max_arc_s: int
    max_geodesic_s: int
    distance_transitive: bool
    orbit_counts: dict[str, int] = field(compare=False)

    def to_dict(self) -> dict:
        return {
            "digraph": self.digraph,
            "group_order": self.group_order,
            "vertex_transitive": self.vertex_transitive,
            "max_arc_s": self.max_arc_s,
            "max_geodesic_s": self.max_geodesic_s,
            "distance_transitive": self.distance_transitive,
            "orbit_counts": dict(sorted(self.orbit_counts.items())),
        }

    def to_text(self) -> str:
        lines = [
            f"digraph={self.digraph}",
            f"group_order={self.group_order}",
            f"vertex_transitive={str(self.vertex_transitive).lower()}",
            f"max_arc_s={self.max_arc_s}",
            f"max_geodesic_s={self.max_geodesic_s}",
            f"distance_transitive={str(self.distance_transitive).lower()}",
        ]
        for key in sorted(self.orbit_counts):
            lines.append(f"orbits[{key}]={self.orbit_counts[key]}")
        return "\n".join(lines) + "\n"


def transitivity_report(
    g: Digraph, group: PermGroup | None = None, name: str = ""
) -> TransitivityReport:
    """Compute the transitivity summary, using Aut(g) when no group is given.

    max_arc_s and max_geodesic_s are computed incrementally from s = 1 and
    capped at the diameter.
    """
    if g.symmetry_class != DIRECTED:
        raise BadParameter("transitivity reports require the directed class")
    if not g.is_strongly_connected():
        raise NotStronglyConnected("transitivity reports need strong connectivity")
    if group is None:
        group = automorphism_group(g)
    else:
        check_is_automorphism_group(g, group)
    diam = g.diameter()
    counts: dict[str, int] = {}
    vertex_orbits = len(orbits_on_tuples(group, [(v,) for v in range(g.n)]))
    counts["vertices"] = vertex_orbits

    max_arc_s = 0
    for s in range(1, diam + 1):
        family = [w.vertices for w in g.s_arcs(s)]
        orbits = len(orbits_on_tuples(group, family)) if family else 0
        counts[f"{s}-arcs"] = orbits
        if family and orbits == 1 and max_arc_s == s - 1:
            max_arc_s = s

    max_geodesic_s = 0
    for s in range(1, diam + 1):
        family = [w.vertices for w in g.s_geodesics(s)]
        orbits = len(orbits_on_tuples(group, family)) if family else 0
        counts[f"{s}-geodesics"] = orbits
        if family and orbits == 1 and max_geodesic_s == s - 1:
            max_geodesic_s = s

    return TransitivityReport(
        digraph=name or repr(g),
        group_order=group.order(),
        vertex_transitive=vertex_orbits == 1,
        max_arc_s=max_arc_s,
        max_geodesic_s=max_geodesic_s,
        distance_transitive=is_distance_transitive(g, group),
        orbit_counts=counts,
    )
