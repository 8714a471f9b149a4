"""Finite permutations of ``{0, ..., N-1}`` and the reduction of horizontal
class-transposition products to them."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence

from .errors import DegreeMismatch, InvalidArgument, NotHorizontal, ParseError
from .residue import ClassTransposition, RcwaMapping


@dataclass(frozen=True)
class FinitePermutation:
    """A bijection of ``{0, ..., N-1}`` stored as its image table.

    Multiplication is left to right: ``(p * q)(i) == q(p(i))``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if not images or sorted(images) != list(range(len(images))):
            raise InvalidArgument(f"not a permutation of 0..{len(images) - 1}: {images}")

    @classmethod
    def identity(cls, degree: int) -> FinitePermutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> FinitePermutation:
        images = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if not 0 <= x < degree:
                    raise InvalidArgument(f"point {x} outside 0..{degree - 1}")
                if x in seen:
                    raise InvalidArgument(f"point {x} appears in two cycles")
                seen.add(x)
            for x, y in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                images[x] = y
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int) -> FinitePermutation:
        return cls.from_cycles(parse_cycle_text(text), degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: FinitePermutation) -> FinitePermutation:
        if other.degree != self.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree} differ")
        img = other.images
        return FinitePermutation(tuple(img[i] for i in self.images))

    def inverse(self) -> FinitePermutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return FinitePermutation(tuple(inv))

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> CycleStructure:
        return cycle_decomposition(self)

    def order(self) -> int:
        return perm_order(self)

    def __str__(self) -> str:
        cs = self.cycles().cycles
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cs) or "()"


@dataclass(frozen=True)
class CycleStructure:
    """Disjoint cycles (minimal element first, sorted by it) plus fixed points."""

    degree: int
    cycles: tuple[tuple[int, ...], ...]
    fixed: tuple[int, ...]

    @property
    def lengths(self) -> list[int]:
        return [len(c) for c in self.cycles]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "cycles": [list(c) for c in self.cycles],
            "fixed": list(self.fixed),
            "order": str(lcm(1, *self.lengths)),
        }


def cycle_decomposition(p: FinitePermutation) -> CycleStructure:
    images = p.images
    seen = [False] * len(images)
    cycles, fixed = [], []
    for start in range(len(images)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = images[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = images[x]
        if len(cyc) == 1:
            fixed.append(start)
        else:
            cycles.append(tuple(cyc))
    # scanning starts in increasing order, so each cycle already begins at its minimum
    return CycleStructure(len(images), tuple(cycles), tuple(fixed))


def perm_order(p: FinitePermutation) -> int:
    return lcm(1, *cycle_decomposition(p).lengths)


def transposition_perm(t: ClassTransposition, degree: int) -> FinitePermutation:
    """Image of a horizontal transposition in ``S_degree`` (modulus must divide degree)."""
    if not t.is_horizontal:
        raise NotHorizontal(f"{t} is oblique")
    n = t.cell_a.modulus
    if degree % n:
        raise InvalidArgument(f"modulus {n} does not divide degree {degree}")
    ra, rb = t.cell_a.residue, t.cell_b.residue
    images = list(range(degree))
    for base in range(0, degree, n):
        images[base + ra], images[base + rb] = base + rb, base + ra
    return FinitePermutation(tuple(images))


def horizontal_product_perm(ts: Sequence[ClassTransposition]) -> FinitePermutation:
    """Reduce a product of horizontal transpositions to ``S_N``, N = lcm of moduli.

    For every integer x, applying ``ts`` in sequence moves x by exactly as much
    as the returned permutation moves ``x mod N``.
    """
    if not ts:
        raise InvalidArgument("need at least one transposition")
    for t in ts:
        if not t.is_horizontal:
            raise NotHorizontal(f"{t} is oblique")
    degree = lcm(*(t.cell_a.modulus for t in ts))
    result = transposition_perm(ts[0], degree)
    for t in ts[1:]:
        result = result * transposition_perm(t, degree)
    return result


def lift_cycles(p: FinitePermutation, N: int | None = None) -> str:
    """Render the Z-periodic cycle family of ``p``, e.g. ``(6s)(1+6s)(2+6s,4+6s)``.

    Cycles and fixed points are listed in order of their smallest element.
    """
    if N is None:
        N = p.degree
    if N != p.degree:
        raise DegreeMismatch(f"permutation has degree {p.degree}, not {N}")
    cs = cycle_decomposition(p)
    groups = sorted([c for c in cs.cycles] + [(f,) for f in cs.fixed])
    return "".join("(" + ",".join(_shifted(x, N) for x in g) + ")" for g in groups)


def _shifted(x: int, N: int) -> str:
    return f"{N}s" if x == 0 else f"{x}+{N}s"


_FAMILY_TERM = re.compile(r"^(?:(\d+)\+)?(\d+)s$")


def parse_cycle_family(text: str, N: int) -> CycleStructure:
    """Inverse of :func:`lift_cycles` evaluated at ``s = 0``."""
    cycles = []
    fixed = []
    for group in parse_cycle_text(text, term=lambda tok: _family_point(tok, N)):
        if len(group) == 1:
            fixed.append(group[0])
        else:
            i = group.index(min(group))
            cycles.append(tuple(group[i:] + group[:i]))
    return CycleStructure(N, tuple(sorted(cycles)), tuple(sorted(fixed)))


def _family_point(token: str, N: int) -> int:
    m = _FAMILY_TERM.match(token)
    if m is None or int(m.group(2)) != N:
        raise ParseError(f"bad cycle-family term {token!r} for period {N}")
    return int(m.group(1) or 0)


def parse_cycle_text(text: str, term=int) -> list[list[int]]:
    """Parse cycle notation such as ``"(0,1)(2,3,4)"``; ``"()"`` is the identity."""
    body = "".join(text.split())
    if not re.fullmatch(r"(\([^()]*\))*", body) or not body:
        raise ParseError(f"bad cycle notation {text!r}")
    groups = []
    for inner in re.findall(r"\(([^()]*)\)", body):
        if not inner:
            continue
        try:
            groups.append([term(tok) for tok in inner.split(",")])
        except ValueError as exc:
            raise ParseError(f"bad cycle notation {text!r}") from exc
    return groups


def embed_phi(m: int, sigma: FinitePermutation) -> RcwaMapping:
    """Embedding ``S_m -> CT(Z)``: ``n -> n - (n mod m) + sigma(n mod m)``."""
    if m < 1:
        raise InvalidArgument("m must be >= 1")
    if sigma.degree != m:
        raise DegreeMismatch(f"sigma has degree {sigma.degree}, expected {m}")
    return RcwaMapping(m, tuple((1, sigma(r) - r, 1) for r in range(m)))
