"""Permutation groups on ``{0, ..., N-1}`` via a deterministic Schreier-Sims
stabilizer chain, plus the generating sets of the horizontal groups CT_k.

Internally permutations are plain tuples of images, multiplied left to right
like :class:`~classtrans.perm.FinitePermutation`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import factorial, lcm
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DegreeMismatch, InvalidArgument, ResourceLimit
from .perm import FinitePermutation, cycle_decomposition

Perm = tuple[int, ...]


def _mul(p: Perm, q: Perm) -> Perm:
    return tuple([q[i] for i in p])


def _inv(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


@dataclass(frozen=True)
class GeneratorSet:
    degree: int
    generators: tuple[FinitePermutation, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.degree != self.degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a set of degree {self.degree}")
        labels = tuple(self.labels) or tuple(f"g{i}" for i in range(len(gens)))
        if len(labels) != len(gens):
            raise InvalidArgument("one label per generator")
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.generators)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "generators": [
                {"cycles": [list(c) for c in cycle_decomposition(g).cycles], "label": lab}
                for g, lab in zip(self.generators, self.labels)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> GeneratorSet:
        try:
            degree = int(data["degree"])
            gens, labels = [], []
            for i, entry in enumerate(data["generators"]):
                gens.append(FinitePermutation.from_cycles(entry["cycles"], degree))
                labels.append(str(entry.get("label", f"g{i}")))
        except (KeyError, TypeError) as exc:
            raise InvalidArgument(f"malformed generators document: {exc}") from exc
        return cls(degree, tuple(gens), tuple(labels))


def load_generators(path: str | Path) -> GeneratorSet:
    with open(path) as fh:
        return GeneratorSet.from_json(json.load(fh))


def ctk_generators(ks: Iterable[int], N: int, full: bool = False) -> GeneratorSet:
    """Images in ``S_N`` of generators of ``<CT_k : k in ks>``.

    By default each CT_k contributes its adjacent transpositions
    ``(i(k), i+1(k))``; ``full=True`` uses every pair ``(i(k), j(k))`` instead.
    """
    gens, labels = [], []
    for k in ks:
        if k < 2 or N % k:
            raise InvalidArgument(f"k={k} must be >= 2 and divide N={N}")
        pairs = (
            [(i, j) for i in range(k) for j in range(i + 1, k)]
            if full
            else [(i, i + 1) for i in range(k - 1)]
        )
        for i, j in pairs:
            images = list(range(N))
            for base in range(0, N, k):
                images[base + i], images[base + j] = base + j, base + i
            gens.append(FinitePermutation(tuple(images)))
            labels.append(f"CT_{k}: {i}({k}),{j}({k}) mod {N}")
    return GeneratorSet(N, tuple(gens), tuple(labels))


def fixed_points(g: GeneratorSet) -> set[int]:
    return {x for x in range(g.degree) if all(p(x) == x for p in g.generators)}


@dataclass
class _Level:
    point: int
    gens: list[Perm] = field(default_factory=list)
    # orbit point -> (coset representative u with u[point] == orbit point, its inverse)
    transversal: dict[int, tuple[Perm, Perm]] = field(default_factory=dict)


class StabilizerChain:
    """Base and strong generating set of a permutation group.

    Level ``i`` stores the basic orbit of ``base[i]`` under the pointwise
    stabilizer of ``base[:i]`` together with a coset representative for every
    orbit point.
    """

    def __init__(self, degree: int, levels: list[_Level]):
        self.degree = degree
        self._levels = levels

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self._levels]

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(lv.transversal) for lv in self._levels]

    @property
    def strong_generators(self) -> list[FinitePermutation]:
        seen: dict[Perm, None] = {}
        for lv in self._levels:
            for g in lv.gens:
                seen.setdefault(g)
        return [FinitePermutation(g) for g in seen]

    def order(self) -> int:
        result = 1
        for size in self.orbit_sizes:
            result *= size
        return result

    def _sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        """Strip ``g`` through levels ``start..``; return residue and the level
        where it dropped out (``len(levels)`` if it passed every level)."""
        for i in range(start, len(self._levels)):
            lv = self._levels[i]
            b = g[lv.point]
            rep = lv.transversal.get(b)
            if rep is None:
                return g, i
            g = _mul(g, rep[1])
        return g, len(self._levels)

    def contains(self, p: FinitePermutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatch(f"permutation degree {p.degree} != group degree {self.degree}")
        residue, level = self._sift(p.images)
        return level == len(self._levels) and residue == tuple(range(self.degree))

    __contains__ = contains


def _orbit(level: _Level, degree: int) -> None:
    ident = tuple(range(degree))
    trans = {level.point: (ident, ident)}
    queue = [level.point]
    for x in queue:
        u = trans[x][0]
        for g in level.gens:
            y = g[x]
            if y not in trans:
                w = _mul(u, g)
                trans[y] = (w, _inv(w))
                queue.append(y)
    level.transversal = trans


def bsgs_build(g: GeneratorSet) -> StabilizerChain:
    """Deterministic Schreier-Sims.

    Base points are chosen as the smallest point moved by the element that
    forces a new level.  Works top-down: once levels ``i+1..`` form a complete
    chain for their group, every Schreier generator of level ``i`` is sifted
    through them and any non-trivial residue is added as a strong generator.
    """
    degree = g.degree
    ident = tuple(range(degree))
    gens = [p.images for p in g.generators if p.images != ident]
    levels: list[_Level] = []

    def new_level(h: Perm) -> None:
        point = next(x for x in range(degree) if h[x] != x)
        levels.append(_Level(point))

    for h in gens:
        if all(h[lv.point] == lv.point for lv in levels):
            new_level(h)
    for i, lv in enumerate(levels):
        lv.gens = [h for h in gens if all(h[levels[j].point] == levels[j].point for j in range(i))]
        _orbit(lv, degree)

    chain = StabilizerChain(degree, levels)
    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        restart = None
        for x, (u, _) in list(lv.transversal.items()):
            for s in lv.gens:
                us = _mul(u, s)
                v_inv = lv.transversal[s[x]][1]
                schreier = _mul(us, v_inv)
                if schreier == ident:
                    continue
                residue, j = chain._sift(schreier, i + 1)
                if residue == ident:
                    continue
                if j == len(levels):
                    new_level(residue)
                for lvl in levels[i + 1 : j + 1]:
                    lvl.gens.append(residue)
                    _orbit(lvl, degree)
                restart = j
                break
            if restart is not None:
                break
        if restart is None:
            i -= 1
        else:
            i = restart
    return chain


def group_order(chain: StabilizerChain) -> int:
    return chain.order()


def contains(chain: StabilizerChain, p: FinitePermutation) -> bool:
    return chain.contains(p)


@dataclass(frozen=True)
class ConjectureReport:
    k: int
    N: int
    order: int

    @property
    def n_factorial(self) -> int:
        return factorial(self.N)

    @property
    def equal(self) -> bool:
        return self.order == self.n_factorial

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "N": self.N,
            "order": str(self.order),
            "n_factorial": str(self.n_factorial),
            "equal": self.equal,
        }


DEFAULT_MAX_DEGREE = 60


def conjecture_check(k: int, max_degree: int = DEFAULT_MAX_DEGREE) -> ConjectureReport:
    """Order of ``<CT_2, ..., CT_k>`` inside ``S_N``, N = lcm(2..k), compared with N!."""
    if k < 2:
        raise InvalidArgument("k must be >= 2")
    N = lcm(*range(2, k + 1))
    if N > max_degree:
        raise ResourceLimit(f"degree {N} exceeds the configured limit {max_degree}")
    chain = bsgs_build(ctk_generators(range(2, k + 1), N))
    return ConjectureReport(k, N, chain.order())


# Orders of <CT_k : k in ks> reported for the listed subgroups.
TABLE: Sequence[tuple[tuple[int, ...], int, int]] = (
    ((2, 3), 6, factorial(5)),
    ((2, 3, 4), 12, factorial(12)),
    ((3, 4), 12, factorial(12)),
    ((2, 5), 10, factorial(10)),
    ((3, 5), 15, factorial(15)),
    ((2, 3, 5), 30, factorial(30)),
)
