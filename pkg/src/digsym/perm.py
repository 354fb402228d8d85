"""Permutations of {0..n-1} with disjoint-cycle text notation."""

from __future__ import annotations

import re

from .errors import DegreeMismatch, ParseError

_CYCLE_RE = re.compile(r"\(([\d\s,]*)\)")


class Permutation:
    """An immutable bijection of {0..n-1}, stored as a tuple of images.

    Composition is left-to-right: ``(a * b)(x) == b(a(x))``, so ``x ** g``
    style right actions read in application order.
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def _unchecked(cls, images: tuple) -> "Permutation":
        # Fast path for products of known bijections; skips validation.
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._unchecked(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> "Permutation":
        """Build a permutation from an iterable of cycles (tuples of points)."""
        images = list(range(degree))
        for cycle in cycles:
            for point in cycle:
                if not 0 <= point < degree:
                    raise ValueError(f"point {point} out of range for degree {degree}")
            if len(set(cycle)) != len(cycle):
                raise ValueError(f"repeated point in cycle {cycle!r}")
            for i, point in enumerate(cycle):
                if images[point] != point:
                    raise ValueError(f"point {point} in two cycles")
                images[point] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")
        o = other.images
        return Permutation._unchecked(tuple(o[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._unchecked(tuple(inv))

    __invert__ = inverse

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def moved_points(self):
        return [i for i, j in enumerate(self.images) if i != j]

    def cycles(self):
        """Nontrivial cycles, each starting at its minimum point."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cycle = [i]
            j = self.images[i]
            while j != i:
                seen.add(j)
                cycle.append(j)
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        return format_cycles(self)


def format_cycles(perm: Permutation) -> str:
    """Render a permutation in disjoint-cycle notation; identity is ``()``."""
    cycles = perm.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation like ``(0 1 2)(3 4)`` into a permutation."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty permutation text")
    consumed = _CYCLE_RE.sub("", stripped).strip()
    if consumed:
        raise ParseError(f"unexpected text in permutation: {consumed!r}")
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        points = [p for p in re.split(r"[,\s]+", body.strip()) if p]
        if not points:
            continue
        cycles.append(tuple(int(p) for p in points))
    try:
        return Permutation.from_cycles(cycles, degree)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def read_permutations(text: str):
    """Parse the permutation file format: ``deg <n>`` then one cycle line each.

    Returns (degree, list of Permutation). ``#`` starts a comment.
    """
    degree = None
    perms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "deg":
                raise ParseError("expected header 'deg <n>'", line=lineno)
            try:
                degree = int(parts[1])
            except ValueError:
                raise ParseError(f"bad degree {parts[1]!r}", line=lineno) from None
            if degree < 1:
                raise ParseError("degree must be positive", line=lineno)
            continue
        try:
            perms.append(parse_cycles(line, degree))
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno) from exc
    if degree is None:
        raise ParseError("missing 'deg <n>' header")
    return degree, perms


def write_permutations(degree: int, perms) -> str:
    lines = [f"deg {degree}"]
    lines.extend(format_cycles(p) for p in perms)
    return "\n".join(lines) + "\n"
