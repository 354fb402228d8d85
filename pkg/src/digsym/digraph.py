"""Finite digraphs and their purely combinatorial primitives.

Vertices are 0..n-1 and arcs are ordered pairs of distinct vertices.  A
digraph whose arc relation is antisymmetric is classed ``directed``; a
symmetric relation is ``undirected``; anything else is ``mixed``.  Distance
is directed (breadth-first over out-arcs) and unreachable pairs yield
``None`` rather than an error.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .errors import LoopArc, NotStronglyConnected, ParseError, VertexOutOfRange

DIRECTED = "directed"
UNDIRECTED = "undirected"
MIXED = "mixed"

S_ARC = "s_arc"
S_GEODESIC = "s_geodesic"
CIRCUIT = "circuit"


@dataclass(frozen=True)
class Walk:
    """A vertex sequence whose consecutive pairs are arcs."""

    vertices: tuple[int, ...]
    kind: str = S_ARC

    def __len__(self) -> int:
        return len(self.vertices) - 1

    def check(self, g: "Digraph") -> None:
        """Raise ValueError if the walk violates its kind's invariants in g."""
        vs = self.vertices
        for a, b in zip(vs, vs[1:]):
            if (a, b) not in g.arcs:
                raise ValueError(f"({a},{b}) is not an arc")
        if self.kind == S_GEODESIC and g.distance(vs[0], vs[-1]) != len(self):
            raise ValueError("endpoints are closer than the walk length")
        if self.kind == CIRCUIT:
            if len(self) < 3 or vs[0] != vs[-1] or len(set(vs[:-1])) != len(vs) - 1:
                raise ValueError("not a circuit")


@dataclass(frozen=True)
class Digraph:
    """Immutable digraph; all operations are pure reads."""

    n: int
    arcs: frozenset[tuple[int, int]]
    symmetry_class: str = field(compare=False)

    @cached_property
    def _out(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].append(v)
        return tuple(tuple(sorted(vs)) for vs in out)

    @cached_property
    def _in(self) -> tuple[tuple[int, ...], ...]:
        inn = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            inn[v].append(u)
        return tuple(tuple(sorted(us)) for us in inn)

    def out_neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return frozenset(self._out[v])

    def in_neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return frozenset(self._in[v])

    def valency(self) -> int | None:
        """The common in/out degree when the digraph is regular, else None."""
        if self.n == 0:
            return None
        sizes = {len(self._out[v]) for v in range(self.n)}
        sizes |= {len(self._in[v]) for v in range(self.n)}
        return sizes.pop() if len(sizes) == 1 else None

    def is_regular(self) -> bool:
        return self.valency() is not None

    @cached_property
    def _distance_matrix(self) -> tuple[tuple[int | None, ...], ...]:
        return tuple(self._bfs_row(u) for u in range(self.n))

    def _bfs_row(self, source: int) -> tuple[int | None, ...]:
        dist: list[int | None] = [None] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self._out[u]:
                if dist[w] is None:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return tuple(dist)

    def distance(self, u: int, v: int) -> int | None:
        """Directed distance from u to v; None when v is unreachable."""
        self._check_vertex(u)
        self._check_vertex(v)
        return self._distance_matrix[u][v]

    def is_strongly_connected(self) -> bool:
        return all(d is not None for row in self._distance_matrix for d in row)

    def diameter(self) -> int:
        if not self.is_strongly_connected():
            raise NotStronglyConnected("diameter requires a strongly connected digraph")
        return max(d for row in self._distance_matrix for d in row) if self.n else 0

    def max_geodesic_length(self) -> int:
        """Largest finite directed distance between any ordered pair."""
        finite = [d for row in self._distance_matrix for d in row if d is not None]
        return max(finite) if finite else 0

    def s_arcs(self, s: int) -> list[Walk]:
        """All s-arcs in lexicographic order; vertices may repeat."""
        if s < 0:
            raise ValueError("s must be nonnegative")
        walks: list[Walk] = []
        stack: list[int] = []

        def extend(v: int) -> None:
            stack.append(v)
            if len(stack) == s + 1:
                walks.append(Walk(tuple(stack), S_ARC))
            else:
                for w in self._out[v]:
                    extend(w)
            stack.pop()

        for v in range(self.n):
            extend(v)
        return walks

    def s_geodesics(self, s: int) -> list[Walk]:
        """All s-arcs whose endpoints are at directed distance exactly s."""
        if s < 0:
            raise ValueError("s must be nonnegative")
        walks: list[Walk] = []
        stack: list[int] = []

        def extend(v: int) -> None:
            # Every prefix of a geodesic is a geodesic, so prune early.
            if self._distance_matrix[stack[0]][v] != len(stack):
                return
            stack.append(v)
            if len(stack) == s + 1:
                walks.append(Walk(tuple(stack), S_GEODESIC))
            else:
                for w in self._out[v]:
                    extend(w)
            stack.pop()

        for v in range(self.n):
            stack.append(v)
            if s == 0:
                walks.append(Walk((v,), S_GEODESIC))
            else:
                for w in self._out[v]:
                    extend(w)
            stack.pop()
        return walks

    def girth(self) -> int | None:
        """Length of a minimal circuit (closed path on >= 3 distinct vertices).

        Returns None when the digraph has no circuit.  Two-vertex digons never
        count, in any symmetry class.
        """
        walk = self.minimal_circuit()
        return len(walk) if walk is not None else None

    def minimal_circuit(self) -> Walk | None:
        """A shortest circuit as a witness walk, or None."""
        best: tuple[int, tuple[int, ...]] | None = None
        for x, y in sorted(self.arcs):
            # Shortest y->x path avoiding the single arc (y,x) closes a
            # circuit of length >= 3 through (x,y).
            path = self._shortest_path(y, x, banned=(y, x))
            if path is None:
                continue
            cand = (len(path), tuple(path) + (y,))
            if best is None or cand < best:
                best = cand
        if best is None:
            return None
        return Walk(best[1], CIRCUIT)

    def _shortest_path(self, source: int, target: int, banned) -> list[int] | None:
        prev: dict[int, int] = {source: source}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            if u == target:
                path = [u]
                while path[-1] != source:
                    path.append(prev[path[-1]])
                return path[::-1]
            for w in self._out[u]:
                if (u, w) == banned or w in prev:
                    continue
                prev[w] = u
                queue.append(w)
        return None

    def induced(self, vertices) -> tuple["Digraph", dict[int, int]]:
        """Induced subdigraph on a vertex set plus the old->new relabel map."""
        ordered = sorted(set(vertices))
        for v in ordered:
            self._check_vertex(v)
        relabel = {v: i for i, v in enumerate(ordered)}
        arcs = [
            (relabel[u], relabel[v])
            for u, v in self.arcs
            if u in relabel and v in relabel
        ]
        return build(len(ordered), arcs), relabel

    def underlying_undirected(self) -> "Digraph":
        """Symmetric closure: {u,v} joined whenever either direction is an arc."""
        closure = set(self.arcs)
        closure.update((v, u) for u, v in self.arcs)
        return build(self.n, closure)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexOutOfRange(f"vertex {v} not in 0..{self.n - 1}")

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={len(self.arcs)}, {self.symmetry_class})"


def classify_arcs(arcs) -> str:
    """directed if no arc has its reverse, undirected if all do, else mixed."""
    arcset = set(arcs)
    mutual = sum(1 for a in arcset if (a[1], a[0]) in arcset)
    if mutual == 0:
        return DIRECTED
    if mutual == len(arcset):
        return UNDIRECTED
    return MIXED


def build(n: int, arcs) -> Digraph:
    """Validate, deduplicate and classify an arc list into a Digraph."""
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    arcset = set()
    for u, v in arcs:
        if u == v:
            raise LoopArc(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"arc ({u},{v}) not within 0..{n - 1}")
        arcset.add((u, v))
    return Digraph(n, frozenset(arcset), classify_arcs(arcset))


def from_text(text: str) -> Digraph:
    """Parse the digraph text format: ``n <count>`` then one ``u v`` per line."""
    n = None
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ParseError("expected header 'n <count>'", line=lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(f"bad vertex count {parts[1]!r}", line=lineno) from None
            if n < 0:
                raise ParseError("vertex count must be nonnegative", line=lineno)
            continue
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer arc {line!r}", line=lineno) from None
        try:
            if u == v:
                raise LoopArc(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"arc ({u},{v}) not within 0..{n - 1}")
        except (LoopArc, VertexOutOfRange) as exc:
            raise ParseError(str(exc), line=lineno) from exc
        arcs.append((u, v))
    if n is None:
        raise ParseError("missing 'n <count>' header")
    return build(n, arcs)


def to_text(g: Digraph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.arcs))
    return "\n".join(lines) + "\n"
