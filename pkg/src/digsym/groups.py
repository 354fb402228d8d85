"""Finitely generated permutation groups and multiplication-table groups.

PermGroup carries a deterministic Schreier-Sims stabilizer chain built
lazily on first use (order, membership, stabilizers).  The chain is the
engine behind normal closures, block actions and the transitivity-style
predicates quantified over in the verification checks.
"""

from __future__ import annotations

import threading
from collections import deque
from typing import Iterable, NamedTuple

from .errors import (
    BudgetExceeded,
    DegreeMismatch,
    NotSubgroupElement,
    NotTransitive,
    ParseError,
    PartitionInvalid,
    PartitionNotInvariant,
)
from .perm import Permutation

# Groups larger than this are never enumerated element by element; the
# bounded heuristics fall back to generator-derived seeds instead.
ELEMENT_ENUMERATION_CAP = 200_000


def _largest_cycle_point(perm: Permutation) -> int:
    cycles = perm.cycles()
    best = max(len(c) for c in cycles)
    return min(min(c) for c in cycles if len(c) == best)


class _Level:
    """One stabilizer-chain level: a base point, the strong generators fixing
    the earlier base points, a transversal of the fundamental orbit, and the
    set of Schreier pairs already verified."""

    __slots__ = ("point", "gens", "transversal", "orbit_order", "checked")

    def __init__(self, point: int, degree: int):
        self.point = point
        self.gens: list[Permutation] = []
        self.transversal: dict[int, Permutation] = {point: Permutation.identity(degree)}
        self.orbit_order: list[int] = [point]
        self.checked: set[tuple[int, int]] = set()


class _Chain:
    """Mutable stabilizer chain built by deterministic Schreier-Sims.

    Transversals only ever grow and existing representatives never change,
    so each Schreier pair needs checking exactly once: membership of a once
    verified product is preserved as the chain grows.
    """

    def __init__(self, generators: list[Permutation], degree: int, base_prefix=()):
        self.degree = degree
        self.levels: list[_Level] = []
        seen = set()
        for p in base_prefix:
            if p not in seen:
                seen.add(p)
                self.levels.append(_Level(p, degree))
        gens = []
        for g in generators:
            if not g.is_identity() and g not in gens:
                gens.append(g)
        if gens and not self.levels:
            # First base point: smallest vertex of a largest orbit.
            orbits = _orbits_of(gens, degree)
            largest = max(len(o) for o in orbits)
            self.levels.append(
                _Level(min(min(o) for o in orbits if len(o) == largest), degree)
            )
        for g in gens:
            self._distribute(g)
        self._run(len(self.levels) - 1)

    def _distribute(self, g: Permutation) -> int:
        """Record g as a strong generator; returns the deepest level it joins."""
        j = len(self.levels)
        for i, level in enumerate(self.levels):
            if g(level.point) != level.point:
                j = i
                break
        if j == len(self.levels):
            self.levels.append(_Level(_largest_cycle_point(g), self.degree))
        for k in range(j + 1):
            self.levels[k].gens.append(g)
        return j

    def sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Strip g through the chain; returns (residue, stop level)."""
        for i in range(start, len(self.levels)):
            level = self.levels[i]
            rep = level.transversal.get(g(level.point))
            if rep is None:
                return g, i
            g = g * rep.inverse()
        return g, len(self.levels)

    def _verify_level(self, i: int) -> int | None:
        """Process unchecked Schreier pairs; returns deepest changed level."""
        level = self.levels[i]
        idx = 0
        while idx < len(level.orbit_order):
            p = level.orbit_order[idx]
            rep = level.transversal[p]
            for gi in range(len(level.gens)):
                if (p, gi) in level.checked:
                    continue
                level.checked.add((p, gi))
                g = level.gens[gi]
                q = g(p)
                known = level.transversal.get(q)
                if known is None:
                    # Tree edge: the representative makes this pair trivial.
                    level.transversal[q] = rep * g
                    level.orbit_order.append(q)
                    continue
                schreier = rep * g * known.inverse()
                if schreier.is_identity():
                    continue
                residue, j = self.sift(schreier, i + 1)
                if residue.is_identity():
                    continue
                # The pair stays checked: its product is a member once the
                # residue joins the deeper chain.
                return self._distribute(residue)
            idx += 1
        return None

    def _run(self, start: int) -> None:
        i = start
        while i >= 0:
            changed = self._verify_level(i)
            i = changed if changed is not None else i - 1

    def extend_with(self, g: Permutation) -> bool:
        """Add one generator; returns False when g was already a member."""
        residue, _ = self.sift(g)
        if residue.is_identity():
            return False
        j = self._distribute(residue)
        self._run(j)
        return True

    def order(self) -> int:
        total = 1
        for level in self.levels:
            total *= len(level.transversal)
        return total

    def contains(self, g: Permutation) -> bool:
        residue, _ = self.sift(g)
        return residue.is_identity()

    def stabilizer_generators(self, depth: int) -> list[Permutation]:
        """Generators of the pointwise stabilizer of base[:depth]."""
        if depth < len(self.levels):
            return list(self.levels[depth].gens)
        return []

    @property
    def gens_at(self) -> list[list[Permutation]]:
        return [level.gens for level in self.levels]

    def elements(self) -> list[Permutation]:
        result = [Permutation.identity(self.degree)]
        for level in reversed(self.levels):
            reps = [level.transversal[p] for p in sorted(level.transversal)]
            result = [w * u for u in reps for w in result]
        return result


def _orbits_of(gens: list[Permutation], degree: int) -> list[list[int]]:
    seen = [False] * degree
    orbits = []
    for start in range(degree):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for g in gens:
                q = g(p)
                if not seen[q]:
                    seen[q] = True
                    orbit.append(q)
                    queue.append(q)
        orbits.append(sorted(orbit))
    return orbits


class CandidateNormals(NamedTuple):
    groups: list["PermGroup"]
    complete: bool


class PermGroup:
    """A permutation group given by generators on {0..degree-1}."""

    def __init__(self, generators: Iterable[Permutation] = (), degree: int | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree is required for a generator-free group")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(f"generator degree {g.degree} != {degree}")
        deduped: list[Permutation] = []
        for g in gens:
            if not g.is_identity() and g not in deduped:
                deduped.append(g)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(deduped)
        self._chain: _Chain | None = None
        self._chain_lock = threading.Lock()
        self._class_reps: list[Permutation] | None = None
        self._closure_counts: list[int] | None = None
        self._candidates: dict[int, CandidateNormals] = {}

    @property
    def chain(self) -> _Chain:
        # Single-writer discipline: concurrent first use is serialized here.
        if self._chain is None:
            with self._chain_lock:
                if self._chain is None:
                    self._chain = _Chain(list(self.generators), self.degree)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def is_trivial(self) -> bool:
        return not self.generators

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise DegreeMismatch(f"element degree {g.degree} != {self.degree}")
        if g.is_identity():
            return True
        return self.chain.contains(g)

    def __contains__(self, g: Permutation) -> bool:
        return self.contains(g)

    def elements(self, limit: int | None = ELEMENT_ENUMERATION_CAP) -> list[Permutation]:
        """All group elements, deterministically ordered by the chain."""
        if limit is not None and self.order() > limit:
            raise BudgetExceeded(f"order {self.order()} exceeds element limit {limit}")
        return self.chain.elements()

    # ------------------------------------------------------------------
    # orbits and stabilizers

    def orbit(self, point: int) -> frozenset[int]:
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range")
        orbit = {point}
        queue = deque([point])
        while queue:
            p = queue.popleft()
            for g in self.generators:
                q = g(p)
                if q not in orbit:
                    orbit.add(q)
                    queue.append(q)
        return frozenset(orbit)

    def orbit_partition(self) -> list[tuple[int, ...]]:
        """Orbits as sorted tuples, ordered by their minimum element."""
        return [tuple(o) for o in _orbits_of(list(self.generators), self.degree)]

    def orbits_count(self) -> int:
        return len(self.orbit_partition())

    def tuple_stabilizer(self, points) -> "PermGroup":
        """Pointwise stabilizer of a tuple of points."""
        points = tuple(points)
        for p in points:
            if not 0 <= p < self.degree:
                raise ValueError(f"point {p} out of range")
        deduped: list[int] = []
        for p in points:
            if p not in deduped:
                deduped.append(p)
        chain = _Chain(list(self.generators), self.degree, base_prefix=deduped)
        return PermGroup(chain.stabilizer_generators(len(deduped)), self.degree)

    # ------------------------------------------------------------------
    # predicates

    def is_transitive(self) -> bool:
        return self.degree > 0 and len(self.orbit(0)) == self.degree

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order() == self.degree

    def is_semiregular(self) -> bool:
        order = self.order()
        return all(len(o) == order for o in self.orbit_partition())

    def is_normal(self, sub: "PermGroup") -> bool:
        """Whether sub (with generators inside self) is normal in self."""
        if sub.degree != self.degree:
            raise DegreeMismatch(f"degree {sub.degree} != {self.degree}")
        for x in sub.generators:
            if not self.contains(x):
                raise NotSubgroupElement(f"{x} is not in the group")
        for x in sub.generators:
            for g in self.generators:
                if not sub.contains(g.inverse() * x * g):
                    return False
        return True

    def normal_closure(self, elements: Iterable[Permutation]) -> "PermGroup":
        """Smallest normal subgroup of self containing the given elements."""
        elements = list(elements)
        for e in elements:
            if not self.contains(e):
                raise NotSubgroupElement(f"{e} is not in the group")
        chain = _Chain([], self.degree)
        working: list[Permutation] = []
        for e in elements:
            # Keep only seeds that enlarge the subgroup, so generator lists
            # stay logarithmic in the closure's order.
            if chain.extend_with(e):
                working.append(e)
        if not working:
            return PermGroup((), self.degree)
        queue = deque(working)
        while queue:
            x = queue.popleft()
            for g in self.generators:
                conjugate = g.inverse() * x * g
                if chain.extend_with(conjugate):
                    working.append(conjugate)
                    queue.append(conjugate)
        group = PermGroup(working, self.degree)
        group._chain = chain
        return group

    def _normal_closure_orbit_count(self, element: Permutation) -> int:
        """Orbit count of the normal closure of one element.

        Exits early once the partial closure is already transitive: growing
        the subgroup can only merge orbits further.
        """
        gens = [element]
        chain = _Chain([element], self.degree)
        queue = deque([element])
        while queue:
            if len(_orbits_of(gens, self.degree)) == 1:
                return 1
            x = queue.popleft()
            for g in self.generators:
                conjugate = g.inverse() * x * g
                if chain.extend_with(conjugate):
                    gens.append(conjugate)
                    queue.append(conjugate)
        return len(_orbits_of(gens, self.degree))

    def join(self, other: "PermGroup") -> "PermGroup":
        """Subgroup generated by both groups' generators."""
        if other.degree != self.degree:
            raise DegreeMismatch(f"degree {other.degree} != {self.degree}")
        return PermGroup(self.generators + other.generators, self.degree)

    def same_group_as(self, other: "PermGroup") -> bool:
        if self.degree != other.degree or self.order() != other.order():
            return False
        return all(other.contains(g) for g in self.generators)

    def derived_subgroup(self) -> "PermGroup":
        commutators = []
        for a in self.generators:
            for b in self.generators:
                c = a.inverse() * b.inverse() * a * b
                if not c.is_identity():
                    commutators.append(c)
        return self.normal_closure(commutators)

    def is_soluble(self) -> bool:
        """Whether the derived series reaches the trivial group."""
        current = self
        order = current.order()
        while order > 1:
            derived = current.derived_subgroup()
            next_order = derived.order()
            if next_order == order:
                return False
            current, order = derived, next_order
        return True

    def conjugacy_class_representatives(
        self, limit: int | None = ELEMENT_ENUMERATION_CAP
    ) -> list[Permutation]:
        """One representative per conjugacy class, identity excluded."""
        if self._class_reps is not None:
            return list(self._class_reps)
        elements = self.elements(limit=limit)
        pending = {g.images for g in elements if not g.is_identity()}
        reps = []
        while pending:
            start = min(pending)
            reps.append(Permutation(start))
            queue = deque([start])
            pending.discard(start)
            while queue:
                x = Permutation._unchecked(queue.popleft())
                for g in self.generators:
                    c = (g.inverse() * x * g).images
                    if c in pending:
                        pending.discard(c)
                        queue.append(c)
        self._class_reps = reps
        return list(reps)

    def _closure_orbit_counts(self) -> list[int]:
        if self._closure_counts is None:
            self._closure_counts = [
                self._normal_closure_orbit_count(rep)
                for rep in self.conjugacy_class_representatives()
            ]
        return self._closure_counts

    def is_quasiprimitive(self) -> bool:
        """Every nontrivial normal subgroup is transitive.

        Decided through normal closures of single elements: any nontrivial
        normal subgroup contains the closure of each of its nontrivial
        elements, and subgroup orbits refine overgroup orbits.
        """
        if not self.is_transitive():
            raise NotTransitive("quasiprimitivity is defined for transitive groups")
        return all(count == 1 for count in self._closure_orbit_counts())

    def is_biquasiprimitive(self) -> bool:
        """Every nontrivial normal subgroup has <= 2 orbits, some exactly 2."""
        if not self.is_transitive():
            raise NotTransitive("bi-quasiprimitivity is defined for transitive groups")
        some_two = False
        for count in self._closure_orbit_counts():
            if count > 2:
                return False
            if count == 2:
                some_two = True
        return some_two

    # ------------------------------------------------------------------
    # block actions and normal-subgroup candidates

    def induced_block_action(self, partition) -> tuple["PermGroup", "PermGroup"]:
        """Action on the blocks of an invariant partition plus its kernel."""
        blocks = [tuple(sorted(b)) for b in partition]
        if any(not b for b in blocks):
            raise PartitionInvalid("empty block")
        blocks.sort(key=lambda b: b[0])
        covered = [v for b in blocks for v in b]
        if sorted(covered) != list(range(self.degree)) or len(covered) != self.degree:
            raise PartitionInvalid("blocks must partition the point set")
        block_of = {}
        for i, b in enumerate(blocks):
            for v in b:
                block_of[v] = i
        block_sets = [frozenset(b) for b in blocks]
        image_gens = []
        for g in self.generators:
            images = []
            for i, b in enumerate(blocks):
                target = block_of[g(b[0])]
                if frozenset(g(v) for v in b) != block_sets[target]:
                    raise PartitionNotInvariant(f"generator {g} breaks block {b}")
                images.append(target)
            image_gens.append(Permutation(images))
        image = PermGroup(image_gens, len(blocks))
        # The kernel is the stabilizer of every block point in the combined
        # action on points plus blocks.
        m = len(blocks)
        combined = []
        for g, img in zip(self.generators, image_gens):
            combined.append(
                Permutation(tuple(g.images) + tuple(self.degree + i for i in img.images))
            )
        combined_group = PermGroup(combined, self.degree + m)
        stab = combined_group.tuple_stabilizer(range(self.degree, self.degree + m))
        kernel_gens = [Permutation(g.images[: self.degree]) for g in stab.generators]
        return image, PermGroup(kernel_gens, self.degree)

    def candidate_normal_subgroups(self, budget: int = 512) -> CandidateNormals:
        """Bounded heuristic list of normal subgroups.

        Normal closures of single elements (one per conjugacy class) plus
        pairwise joins, deduplicated, with the trivial group filtered out.
        ``complete`` is True only when every element class was covered and no
        computation was cut off by the budget.
        """
        if budget in self._candidates:
            return self._candidates[budget]
        complete = True
        try:
            seeds = self.conjugacy_class_representatives()
        except BudgetExceeded:
            complete = False
            seeds = []
            for g in self.generators:
                seeds.append(g)
                for h in self.generators:
                    product = g * h
                    if not product.is_identity():
                        seeds.append(product)
        found: list[PermGroup] = []

        def add(group: PermGroup) -> None:
            if group.order() == 1:
                return
            if not any(group.same_group_as(existing) for existing in found):
                found.append(group)

        spent = 0
        for x in seeds:
            if spent >= budget:
                complete = False
                break
            spent += 1
            add(self.normal_closure([x]))
        singles = list(found)
        for i in range(len(singles)):
            for j in range(i + 1, len(singles)):
                if spent >= budget:
                    complete = False
                    break
                spent += 1
                # Joins of normal subgroups are normal; no conjugation needed.
                add(singles[i].join(singles[j]))
            if spent >= budget:
                break
        found.sort(key=lambda g: (g.order(), [p.images for p in g.generators]))
        result = CandidateNormals(found, complete)
        self._candidates[budget] = result
        return result

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"


# ----------------------------------------------------------------------
# abstract groups as multiplication tables


class GroupTable:
    """A finite group given by its multiplication table over 0..m-1."""

    ASSOCIATIVITY_FULL_CHECK_LIMIT = 256

    def __init__(self, rows, full_check_limit: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        m = len(rows)
        for r in rows:
            if len(r) != m or any(not 0 <= x < m for x in r):
                raise ValueError("multiplication table must be square over 0..m-1")
        self.mul_table = rows
        self.order = m
        self.identity = self._find_identity()
        self.inverse_table = self._find_inverses()
        limit = self.ASSOCIATIVITY_FULL_CHECK_LIMIT if full_check_limit is None else full_check_limit
        self._check_associativity(limit)

    def _find_identity(self) -> int:
        for e in range(self.order):
            if all(self.mul_table[e][x] == x and self.mul_table[x][e] == x for x in range(self.order)):
                return e
        raise ValueError("table has no identity element")

    def _find_inverses(self) -> tuple[int, ...]:
        inv = []
        for x in range(self.order):
            for y in range(self.order):
                if self.mul_table[x][y] == self.identity and self.mul_table[y][x] == self.identity:
                    inv.append(y)
                    break
            else:
                raise ValueError(f"element {x} has no inverse")
        return tuple(inv)

    def _check_associativity(self, full_limit: int) -> None:
        m = self.order
        mul = self.mul_table
        if m <= full_limit:
            triples = (
                (a, b, c) for a in range(m) for b in range(m) for c in range(m)
            )
        else:
            # Deterministic spot check beyond the full-check bound.
            state = 1
            sampled = []
            for _ in range(4096):
                state = (state * 1103515245 + 12345) % (2**31)
                a = state % m
                state = (state * 1103515245 + 12345) % (2**31)
                b = state % m
                state = (state * 1103515245 + 12345) % (2**31)
                sampled.append((a, b, state % m))
            triples = sampled
        for a, b, c in triples:
            if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                raise ValueError(f"table is not associative at ({a},{b},{c})")

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inverse(self, x: int) -> int:
        return self.inverse_table[x]

    def order_of(self, x: int) -> int:
        """Least r >= 1 with x^r equal to the identity."""
        if not 0 <= x < self.order:
            raise ValueError(f"element {x} out of range")
        power = x
        r = 1
        while power != self.identity:
            power = self.mul_table[power][x]
            r += 1
        return r

    def generated_subset(self, seeds) -> frozenset[int]:
        """Closure of a subset under multiplication (subgroup generated)."""
        closure = {self.identity}
        queue = deque()
        for s in seeds:
            if s not in closure:
                closure.add(s)
                queue.append(s)
        while queue:
            x = queue.popleft()
            for s in list(closure):
                for product in (self.mul_table[x][s], self.mul_table[s][x]):
                    if product not in closure:
                        closure.add(product)
                        queue.append(product)
        return frozenset(closure)

    def generating_set(self) -> list[int]:
        """A small generating set found greedily in element order."""
        gens: list[int] = []
        closure = self.generated_subset(())
        for x in range(self.order):
            if x not in closure:
                gens.append(x)
                closure = self.generated_subset(gens)
                if len(closure) == self.order:
                    break
        return gens

    def is_abelian(self) -> bool:
        return all(
            self.mul_table[a][b] == self.mul_table[b][a]
            for a in range(self.order)
            for b in range(self.order)
        )

    def __repr__(self) -> str:
        return f"GroupTable(order={self.order})"


def table_from_text(text: str) -> GroupTable:
    """Parse the table format: ``order m`` then m rows of m indices."""
    order = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if order is None:
            if len(parts) != 2 or parts[0] != "order":
                raise ParseError("expected header 'order <m>'", line=lineno)
            try:
                order = int(parts[1])
            except ValueError:
                raise ParseError(f"bad order {parts[1]!r}", line=lineno) from None
            if order < 1:
                raise ParseError("order must be positive", line=lineno)
            continue
        try:
            rows.append([int(p) for p in parts])
        except ValueError:
            raise ParseError(f"non-integer entry in {line!r}", line=lineno) from None
        if len(rows[-1]) != order:
            raise ParseError(f"expected {order} entries per row", line=lineno)
    if order is None:
        raise ParseError("missing 'order <m>' header")
    if len(rows) != order:
        raise ParseError(f"expected {order} rows, got {len(rows)}")
    try:
        return GroupTable(rows)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def table_to_text(table: GroupTable) -> str:
    lines = [f"order {table.order}"]
    lines.extend(" ".join(map(str, row)) for row in table.mul_table)
    return "\n".join(lines) + "\n"
