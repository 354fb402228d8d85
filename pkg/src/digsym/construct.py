"""Builders: standard digraph families, Cayley digraphs, quotient digraphs.

Cayley digraphs follow the right-coset picture: the vertex set is the group
H, with an arc (h, x*h) for every h in H and every x in the connection set
S.  The group acts on itself by right translation, which preserves arcs and
is regular on vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .digraph import Digraph, build
from .errors import (
    BadParameter,
    BoundExceeded,
    IdentityInConnectionSet,
    NotAntisymmetric,
    NotNormal,
    ParseError,
    PartitionInvalid,
    TranslationNotInG,
)
from .groups import GroupTable, PermGroup, table_from_text
from .perm import Permutation

AUT_TABLE_BOUND = 64


def circuit(n: int) -> Digraph:
    """The directed cycle 0 -> 1 -> ... -> n-1 -> 0."""
    if n < 3:
        raise BadParameter("a circuit needs at least 3 vertices")
    return build(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Digraph:
    """The undirected complete graph: all ordered pairs of distinct vertices."""
    if n < 1:
        raise BadParameter("complete graph needs at least 1 vertex")
    return build(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def paley_tournament(q: int) -> Digraph:
    """Tournament on Z_q with x -> y iff y - x is a nonzero square mod q.

    Requires q prime with q = 3 (mod 4) so that the relation is antisymmetric.
    """
    if not _is_prime(q) or q % 4 != 3:
        raise BadParameter(f"need a prime q = 3 (mod 4), got {q}")
    residues = {(x * x) % q for x in range(1, q)}
    return build(q, [(u, (u + d) % q) for u in range(q) for d in residues])


# ----------------------------------------------------------------------
# group tables for the families the corpus uses


def cyclic_table(n: int) -> GroupTable:
    if n < 1:
        raise BadParameter("cyclic group order must be positive")
    return GroupTable([[(i + j) % n for j in range(n)] for i in range(n)])


def abelian_table(factors) -> GroupTable:
    """Direct product of cyclic groups; elements are mixed-radix tuples."""
    factors = tuple(factors)
    if not factors or any(f < 1 for f in factors):
        raise BadParameter("invariant factors must be positive")
    tuples = list(product(*(range(f) for f in factors)))
    index = {t: i for i, t in enumerate(tuples)}
    rows = []
    for a in tuples:
        rows.append(
            [index[tuple((x + y) % f for x, y, f in zip(a, b, factors))] for b in tuples]
        )
    return GroupTable(rows)


def dihedral_table(n: int) -> GroupTable:
    """Dihedral group of order 2n: indices i are rotations, n+i reflections."""
    if n < 1:
        raise BadParameter("dihedral parameter must be positive")
    m = 2 * n

    def mul(a: int, b: int) -> int:
        ra, fa = a % n, a >= n
        rb, fb = b % n, b >= n
        # (r^ra s^fa)(r^rb s^fb) with s r = r^-1 s.
        rot = (ra - rb) % n if fa else (ra + rb) % n
        return rot + n * (fa ^ fb)

    return GroupTable([[mul(a, b) for b in range(m)] for a in range(m)])


def parse_group_spec(spec: str, read_file=None) -> GroupTable:
    """Parse ``cyclic:7``, ``abelian:2x4``, ``dihedral:4`` or ``table:<path>``."""
    kind, _, arg = spec.partition(":")
    if not arg:
        raise BadParameter(f"malformed group spec {spec!r}")
    if kind == "cyclic":
        return cyclic_table(int(arg))
    if kind == "abelian":
        try:
            factors = [int(p) for p in arg.split("x")]
        except ValueError:
            raise BadParameter(f"malformed abelian factors {arg!r}") from None
        return abelian_table(factors)
    if kind == "dihedral":
        return dihedral_table(int(arg))
    if kind == "table":
        if read_file is None:
            with open(arg, "r", encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = read_file(arg)
        return table_from_text(text)
    raise BadParameter(f"unknown group kind {kind!r}")


# ----------------------------------------------------------------------
# Cayley digraphs


@dataclass(frozen=True)
class CayleySpec:
    """A group table plus a connection set defining a Cayley digraph."""

    table: GroupTable
    conn: frozenset[int]
    generates: bool

    @property
    def valency(self) -> int:
        return len(self.conn)


def cayley_spec(table: GroupTable, conn) -> CayleySpec:
    conn = frozenset(conn)
    for x in conn:
        if not 0 <= x < table.order:
            raise BadParameter(f"connection element {x} out of range")
    if table.identity in conn:
        raise IdentityInConnectionSet("identity cannot be a connection element")
    inverses = {table.inverse(x) for x in conn}
    if conn & inverses:
        raise NotAntisymmetric(f"connection set meets its inverses: {sorted(conn & inverses)}")
    generates = table.generated_subset(conn) == frozenset(range(table.order))
    return CayleySpec(table, conn, generates)


def cayley_digraph(spec: CayleySpec) -> Digraph:
    """Digraph on the group elements with arcs (h, x*h) for x in the connection set."""
    table = spec.table
    arcs = [(h, table.mul(x, h)) for h in range(table.order) for x in spec.conn]
    return build(table.order, arcs)


def right_translations(table: GroupTable) -> PermGroup:
    """The right regular representation h -> h*g as a permutation group."""
    gens = [
        Permutation([table.mul(h, g) for h in range(table.order)])
        for g in table.generating_set()
    ]
    return PermGroup(gens, table.order)


def table_automorphisms(table: GroupTable, bound: int = AUT_TABLE_BOUND) -> list[Permutation]:
    """All automorphisms of the abstract group, by generator-image backtracking."""
    if table.order > bound:
        raise BoundExceeded(f"group order {table.order} exceeds automorphism bound {bound}")
    m = table.order
    gens = table.generating_set()
    if not gens:
        return [Permutation.identity(1)] if m == 1 else []
    orders = [table.order_of(x) for x in range(m)]

    found = []

    def close(images: dict[int, int]) -> dict[int, int] | None:
        # Extend a partial map on a generating set by products; None on clash.
        mapping = dict(images)
        mapping[table.identity] = table.identity
        frontier = list(mapping)
        while frontier:
            a = frontier.pop()
            for g, ig in images.items():
                x = table.mul(a, g)
                fx = table.mul(mapping[a], ig)
                known = mapping.get(x)
                if known is None:
                    mapping[x] = fx
                    frontier.append(x)
                elif known != fx:
                    return None
        if len(mapping) != m or len(set(mapping.values())) != m:
            return None
        for a in range(m):
            for b in range(m):
                if mapping[table.mul(a, b)] != table.mul(mapping[a], mapping[b]):
                    return None
        return mapping

    def assign(idx: int, images: dict[int, int]) -> None:
        if idx == len(gens):
            mapping = close(images)
            if mapping is not None:
                found.append(Permutation([mapping[x] for x in range(m)]))
            return
        g = gens[idx]
        for target in range(m):
            if orders[target] != orders[g]:
                continue
            images[g] = target
            assign(idx + 1, images)
            del images[g]

    assign(0, {})
    return found


def aut_preserving_conn(spec: CayleySpec, bound: int = AUT_TABLE_BOUND) -> list[Permutation]:
    """Automorphisms of the group that fix the connection set setwise."""
    return [
        alpha
        for alpha in table_automorphisms(spec.table, bound)
        if {alpha(x) for x in spec.conn} == set(spec.conn)
    ]


def cayley_holomorph_action(spec: CayleySpec, bound: int = AUT_TABLE_BOUND) -> PermGroup:
    """The group generated by right translations and connection-preserving
    group automorphisms, acting on the Cayley digraph's vertices."""
    translations = right_translations(spec.table)
    auts = aut_preserving_conn(spec, bound)
    return PermGroup(list(translations.generators) + auts, spec.table.order)


def is_normal_cayley(spec: CayleySpec, group: PermGroup) -> bool:
    """Whether the right-translation copy of the group is normal in ``group``."""
    translations = right_translations(spec.table)
    for g in translations.generators:
        if not group.contains(g):
            raise TranslationNotInG("right translations are not inside the given group")
    return group.is_normal(translations)


# ----------------------------------------------------------------------
# quotient digraphs


@dataclass(frozen=True)
class QuotientResult:
    """Quotient digraph on block indices plus the acting groups."""

    quotient: Digraph
    block_map: tuple[int, ...]
    image_group: PermGroup | None
    kernel: PermGroup | None
    internal_arcs: bool

    @property
    def num_blocks(self) -> int:
        return self.quotient.n


def _validate_partition(n: int, partition) -> list[tuple[int, ...]]:
    blocks = [tuple(sorted(b)) for b in partition]
    if any(not b for b in blocks):
        raise PartitionInvalid("empty block")
    blocks.sort(key=lambda b: b[0])
    covered = sorted(v for b in blocks for v in b)
    if covered != list(range(n)):
        raise PartitionInvalid("blocks must partition the vertex set")
    return blocks


def quotient_digraph(
    g: Digraph,
    partition=None,
    group: PermGroup | None = None,
    normal: PermGroup | None = None,
) -> QuotientResult:
    """Quotient of g by an invariant partition, or by the orbits of a normal
    subgroup when ``group`` and ``normal`` are given.

    Arcs inside a block are dropped and flagged via ``internal_arcs``; the
    quotient may land in any symmetry class.
    """
    if normal is not None:
        if group is None:
            raise BadParameter("a normal subgroup needs the ambient group")
        from .symmetry import check_is_automorphism_group

        check_is_automorphism_group(g, group)
        if not group.is_normal(normal):
            raise NotNormal("subgroup is not normal in the given group")
        if partition is not None:
            raise BadParameter("give either a partition or a normal subgroup")
        partition = normal.orbit_partition()
    if partition is None:
        raise BadParameter("a partition or normal subgroup is required")
    blocks = _validate_partition(g.n, partition)
    block_of = {}
    for i, b in enumerate(blocks):
        for v in b:
            block_of[v] = i
    internal = False
    arcs = set()
    for u, v in g.arcs:
        if block_of[u] == block_of[v]:
            internal = True
        else:
            arcs.add((block_of[u], block_of[v]))
    quotient = build(len(blocks), arcs)
    image = kernel = None
    if group is not None:
        image, kernel = group.induced_block_action(blocks)
    return QuotientResult(quotient, tuple(block_of[v] for v in range(g.n)), image, kernel, internal)


# ----------------------------------------------------------------------
# CayleySpec text format


def cayley_spec_from_text(text: str, read_file=None) -> CayleySpec:
    """Parse lines ``group <spec>`` and ``conn <i,j,...>``."""
    table = None
    conn = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "group":
            try:
                table = parse_group_spec(rest, read_file=read_file)
            except (BadParameter, ValueError) as exc:
                raise ParseError(str(exc), line=lineno) from exc
        elif key == "conn":
            try:
                conn = [int(p) for p in rest.replace(",", " ").split()]
            except ValueError:
                raise ParseError(f"bad connection set {rest!r}", line=lineno) from None
        else:
            raise ParseError(f"unknown key {key!r}", line=lineno)
    if table is None or conn is None:
        raise ParseError("spec needs both 'group' and 'conn' lines")
    return cayley_spec(table, conn)


def cayley_spec_to_text(spec: CayleySpec, group_spec: str) -> str:
    conn = ",".join(map(str, sorted(spec.conn)))
    return f"group {group_spec}\nconn {conn}\n"
