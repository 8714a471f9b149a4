"""The graph of a pair of class transpositions and its connected components.

For ``t1 = (r1(m1), r2(m2))`` and ``t2 = (r3(m3), r4(m4))`` the vertices are
``a_k, b_k`` (side 1) and ``c_l, d_l`` (side 2), labelled by the integers
``r1 + m1*k``, ``r2 + m2*k``, ``r3 + m3*l``, ``r4 + m4*l``.  Same-side edges
join the two points swapped by a transposition ("type 2"); cross-side edges
join equal labels ("type 1").  Every vertex has one type-2 edge and at most
one type-1 edge, so components are cycles or paths, and each component
carries one or two cycles of the product ``t1 * t2``.

The graph is never materialised: neighbours come from modular arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm
from typing import NamedTuple

from .errors import NotClassified, NotHorizontal, ShapeViolation
from .residue import ClassTransposition

DEFAULT_BUDGET = 10_000

_PARTNER = {"a": "b", "b": "a", "c": "d", "d": "c"}


class _Infinite:
    def __repr__(self) -> str:
        return "Infinite"

    __str__ = __repr__


INFINITE = _Infinite()


class Vertex(NamedTuple):
    side: int
    letter: str
    index: int

    def __str__(self) -> str:
        return f"{self.letter}{self.index}"


class ComponentKind(enum.Enum):
    CYCLE = "cycle"
    PATH = "path"
    BI_INFINITE = "bi-infinite"
    ONE_SIDED_INFINITE = "one-sided-infinite"
    TRUNCATED = "truncated"


@dataclass(frozen=True)
class GraphComponent:
    kind: ComponentKind
    vertices: tuple[Vertex, ...]
    mu: tuple[int, ...]
    type1_edge_count: int

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def mu_min(self) -> int:
        return min(self.mu)

    @property
    def key(self) -> tuple[int, int, str]:
        """Deduplication key: smallest label together with its vertex side/letter."""
        return min((m, v.side, v.letter) for m, v in zip(self.mu, self.vertices))

    @property
    def cycle_lengths(self) -> list:
        return component_cycle_lengths(self)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.mu)

    def describe(self) -> str:
        return " ".join(f"{v}[{m}]" for v, m in zip(self.vertices, self.mu))


def component_cycle_lengths(c: GraphComponent) -> list:
    """Lengths of the product cycles carried by a classified component.

    A closed component with 4l vertices carries two l-cycles.  A path with n
    vertices and t type-1 edges carries one cycle on its n - t distinct labels.
    """
    if c.kind is ComponentKind.CYCLE:
        return [c.size // 4, c.size // 4]
    if c.kind is ComponentKind.PATH:
        return [c.size - c.type1_edge_count]
    if c.kind is ComponentKind.BI_INFINITE:
        return [INFINITE, INFINITE]
    if c.kind is ComponentKind.ONE_SIDED_INFINITE:
        return [INFINITE]
    raise NotClassified(
        f"component starting at {c.vertices[0]} was truncated after {c.size} vertices"
    )


class ShapeMatch(NamedTuple):
    shape: int
    reflected: bool
    exact_geometry: bool = True


# Drawn form of each path shape as (side, role) along the path; role "L" is the
# smaller label of a transposed pair.  Shape 4 is the closed square.
_SHAPES: dict[int, tuple[tuple[int, str], ...]] = {
    1: ((1, "L"), (1, "R")),
    2: ((1, "R"), (1, "L"), (2, "L"), (2, "R")),
    3: ((1, "R"), (1, "L"), (2, "R"), (2, "L")),
    5: ((1, "R"), (1, "L"), (2, "L"), (2, "R"), (1, "L"), (1, "R")),
    6: ((1, "R"), (1, "L"), (2, "L"), (2, "R"), (1, "R"), (1, "L")),
    7: (
        (1, "R"), (1, "L"), (2, "L"), (2, "R"), (1, "L"),
        (1, "R"), (2, "L"), (2, "R"), (1, "R"), (1, "L"),
    ),
}

# Shapes grouped by path length; within a group they differ only in where the
# type-1 edges attach, not in the sequence of sides.
_BY_SIZE = {2: (1,), 4: (2, 3), 6: (5, 6), 10: (7,)}


def _role(v: Vertex) -> str:
    return "L" if v.letter in "ac" else "R"


def _transforms(seq):
    """Yield (reflected, image) for the four reflections of a (side, role) sequence."""
    flip_side = {1: 2, 2: 1}
    flip_role = {"L": "R", "R": "L"}
    for swap_side in (False, True):
        for swap_role in (False, True):
            yield swap_side or swap_role, tuple(
                (flip_side[s] if swap_side else s, flip_role[r] if swap_role else r)
                for s, r in seq
            )


def _alternating_sides(vertices: tuple[Vertex, ...]) -> bool:
    """Type-2 edges of a catalogue path alternate between the two sides."""
    sides = [u.side for u, v in zip(vertices, vertices[1:]) if u.side == v.side]
    return all(x != y for x, y in zip(sides, sides[1:]))


def shape_match_horizontal(c: GraphComponent) -> ShapeMatch:
    """Identify which of the seven horizontal-pair shapes ``c`` is.

    The side pattern of the path fixes the candidates; the left/right
    attachment of the type-1 edges then picks the drawing, up to reflection
    in a horizontal line (swap sides) or a vertical line (swap roles within
    every transposed pair).  The six-vertex monotone staircase has the side
    pattern of shapes 5/6 but neither drawing; it is reported as shape 5 with
    ``exact_geometry=False``.  Anything else raises :class:`ShapeViolation`.
    """
    if c.kind is ComponentKind.CYCLE:
        if c.size == 4 and all(
            _role(u) == _role(v) for u, v in _edges(c) if u.side != v.side
        ):
            return ShapeMatch(4, False)
    elif c.kind is ComponentKind.PATH and c.size in _BY_SIZE and _alternating_sides(c.vertices):
        match = _match_path(tuple((v.side, _role(v)) for v in c.vertices))
        if match is not None:
            return match
    raise ShapeViolation(
        f"{c.kind.value} component with {c.size} vertices and "
        f"{c.type1_edge_count} type-1 edges matches no catalogue shape: {c.describe()}"
    )


@lru_cache(maxsize=None)
def _match_path(seq: tuple[tuple[int, str], ...]) -> ShapeMatch | None:
    best = None
    for oriented in (seq, seq[::-1]):
        for reflected, image in _transforms(oriented):
            for shape in _BY_SIZE[len(seq)]:
                if image == _SHAPES[shape] and (best is None or (best[1] and not reflected)):
                    best = (shape, reflected)
    if best is not None:
        return ShapeMatch(*best)
    if len(seq) == 6:
        return ShapeMatch(5, False, exact_geometry=False)
    return None


def _edges(c: GraphComponent):
    vs = c.vertices
    pairs = list(zip(vs, vs[1:]))
    if c.kind is ComponentKind.CYCLE:
        pairs.append((vs[-1], vs[0]))
    return pairs


def has_staircase_chain(c: GraphComponent) -> bool:
    """True if ``c`` contains three consecutive type-1 edges each joining a
    right-hand vertex to a left-hand one (the monotone a-b-c-d-a-b-c-d chain)."""
    flags = []
    for u, v in _edges(c):
        if u.side != v.side:
            flags.append(_role(u) != _role(v))
    if c.kind is ComponentKind.CYCLE:
        flags = flags + flags[:2]
    return any(flags[i] and flags[i + 1] and flags[i + 2] for i in range(len(flags) - 2))


@dataclass
class OrderReport:
    t1: ClassTransposition
    t2: ClassTransposition
    status: str
    order: int | None
    cycle_lengths: list
    components: list[GraphComponent]
    budget: int
    window: int | None
    method: str = "graph"
    partial_lcm: int | None = None
    shapes: list[int | None] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        shapes = self.shapes or [None] * len(self.components)
        out = {
            "t1": str(self.t1),
            "t2": str(self.t2),
            "status": self.status,
            "order": None if self.order is None else str(self.order),
            "cycle_lengths": [
                x if isinstance(x, int) else str(x) for x in self.cycle_lengths
            ],
            "components": [
                {
                    "kind": c.kind.value,
                    "shape": s,
                    "vertices": c.size,
                    "type1_edges": c.type1_edge_count,
                    "mu_min": c.mu_min,
                }
                for c, s in zip(self.components, shapes)
            ],
            "budget": self.budget,
            "window": self.window,
            "method": self.method,
        }
        if self.partial_lcm is not None:
            out["partial_lcm"] = str(self.partial_lcm)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


class ProductGraph:
    """Lazy view of the graph of ``(t1, t2)``."""

    def __init__(self, t1: ClassTransposition, t2: ClassTransposition):
        self.t1 = t1
        self.t2 = t2
        self.cells = {"a": t1.cell_a, "b": t1.cell_b, "c": t2.cell_a, "d": t2.cell_b}

    def mu(self, v: Vertex) -> int:
        return self.cells[v.letter].element(v.index)

    def neighbors(self, v: Vertex) -> list[Vertex]:
        """Type-2 partner first, then the type-1 partner if the label is moved
        by the other transposition."""
        out = [Vertex(v.side, _PARTNER[v.letter], v.index)]
        x = self.mu(v)
        other_side, letters = (2, "cd") if v.side == 1 else (1, "ab")
        for letter in letters:
            cell = self.cells[letter]
            k, rem = divmod(x - cell.residue, cell.modulus)
            if not rem:
                out.append(Vertex(other_side, letter, k))
                break
        return out

    def _walk(self, start: Vertex, first: Vertex, budget: int):
        """Follow the unique continuation from ``start`` through ``first``.

        Returns (vertices after start, how) with how in {"closed", "end", "budget"}.
        """
        seq = []
        prev, cur = start, first
        while True:
            if cur == start:
                return seq, "closed"
            seq.append(cur)
            if len(seq) >= budget:
                return seq, "budget"
            nxt = [w for w in self.neighbors(cur) if w != prev]
            if not nxt:
                return seq, "end"
            prev, cur = cur, nxt[0]

    def explore_component(self, start: Vertex, budget: int = DEFAULT_BUDGET) -> GraphComponent:
        if budget < 1:
            raise ValueError("budget must be >= 1")
        nbrs = self.neighbors(start)
        forward, how = self._walk(start, nbrs[0], budget)
        if how == "closed":
            vertices = [start] + forward
            kind = ComponentKind.CYCLE
        else:
            backward, how_back = [], "end"
            if len(nbrs) > 1:
                backward, how_back = self._walk(start, nbrs[1], budget)
            vertices = backward[::-1] + [start] + forward
            if "budget" in (how, how_back):
                kind = ComponentKind.TRUNCATED
            else:
                kind = ComponentKind.PATH
        mu = [self.mu(v) for v in vertices]
        if kind is ComponentKind.PATH and mu[0] > mu[-1]:
            vertices.reverse()
            mu.reverse()
        t1_edges = sum(u.side != v.side for u, v in zip(vertices, vertices[1:]))
        if kind is ComponentKind.CYCLE:
            t1_edges += vertices[-1].side != vertices[0].side
        return GraphComponent(kind, tuple(vertices), tuple(mu), t1_edges)

    @property
    def is_horizontal(self) -> bool:
        return self.t1.is_horizontal and self.t2.is_horizontal

    @property
    def period(self) -> int:
        """Translation period of a horizontal pair: lcm of the two moduli."""
        if not self.is_horizontal:
            raise NotHorizontal("only horizontal pairs are periodic")
        return lcm(self.t1.cell_a.modulus, self.t2.cell_a.modulus)

    def translate(self, c: GraphComponent, periods: int) -> GraphComponent:
        """Shift a horizontal component by ``periods * N`` on the integer line."""
        N = self.period
        step = {1: N // self.t1.cell_a.modulus, 2: N // self.t2.cell_a.modulus}
        vs = tuple(Vertex(v.side, v.letter, v.index + periods * step[v.side]) for v in c.vertices)
        return GraphComponent(c.kind, vs, tuple(m + periods * N for m in c.mu), c.type1_edge_count)

    def enumerate_components_horizontal(self, budget: int = DEFAULT_BUDGET) -> list[GraphComponent]:
        """One representative per translation class of components.

        Representatives are shifted so their smallest label lies in ``[0, N)``
        and returned sorted by that label.
        """
        N = self.period
        steps = {1: N // self.t1.cell_a.modulus, 2: N // self.t2.cell_a.modulus}
        seeds = [Vertex(1, x, k) for k in range(steps[1]) for x in "ab"]
        seeds += [Vertex(2, x, k) for k in range(steps[2]) for x in "cd"]
        seen: set[tuple[int, str, int]] = set()
        reps = []
        for s in seeds:
            if (s.side, s.letter, s.index % steps[s.side]) in seen:
                continue
            comp = self.explore_component(s, budget)
            if comp.kind is not ComponentKind.PATH and comp.kind is not ComponentKind.CYCLE:
                raise ShapeViolation(
                    f"horizontal pair {self.t1} / {self.t2} produced a "
                    f"{comp.kind.value} component from {s}: {comp.describe()}"
                )
            for v in comp.vertices:
                seen.add((v.side, v.letter, v.index % steps[v.side]))
            reps.append(self.translate(comp, -(comp.mu_min // N)))
        reps.sort(key=lambda c: c.key)
        return reps

    def window_seeds(self, window: int) -> list[Vertex]:
        """All vertices whose label lies in ``[-window, window]``."""
        seeds = []
        for side, letters in ((1, "ab"), (2, "cd")):
            for letter in letters:
                cell = self.cells[letter]
                lo = -((window + cell.residue) // cell.modulus)
                hi = (window - cell.residue) // cell.modulus
                seeds.extend(Vertex(side, letter, k) for k in range(lo, hi + 1))
        return sorted(seeds, key=self.mu)

    def product_order(self, budget: int = DEFAULT_BUDGET, window: int | None = None) -> OrderReport:
        """Order of ``t1 * t2`` read off component data.

        Horizontal pairs are periodic, so one representative per period gives
        the exact order.  Otherwise components are seeded from labels in
        ``[-window, window]``; the result is "window-exact" when all of them
        close within the budget and "unknown" otherwise.  Infinite order is
        never certified.
        """
        if self.is_horizontal:
            comps = self.enumerate_components_horizontal(budget)
            lengths = [x for c in comps for x in c.cycle_lengths]
            shapes = [shape_match_horizontal(c).shape for c in comps]
            return OrderReport(
                self.t1, self.t2, "exact", lcm(1, *lengths), lengths, comps,
                budget, None, shapes=shapes,
            )
        if window is None:
            window = max(1, budget // 10)
        seen: set[Vertex] = set()
        comps = []
        for s in self.window_seeds(window):
            if s in seen:
                continue
            comp = self.explore_component(s, budget)
            seen.update(comp.vertices)
            comps.append(comp)
        comps.sort(key=lambda c: c.key)
        finite = [c for c in comps if c.kind is not ComponentKind.TRUNCATED]
        lengths = [x for c in finite for x in c.cycle_lengths]
        partial = lcm(1, *lengths)
        if len(finite) < len(comps):
            return OrderReport(
                self.t1, self.t2, "unknown", None, lengths, comps, budget, window,
                partial_lcm=partial,
            )
        status = "exact" if self.t1 == self.t2 else "window-exact"
        return OrderReport(self.t1, self.t2, status, partial, lengths, comps, budget, window)


def neighbors(t1, t2, v: Vertex) -> list[Vertex]:
    return ProductGraph(t1, t2).neighbors(v)


def explore_component(t1, t2, start: Vertex, budget: int = DEFAULT_BUDGET) -> GraphComponent:
    return ProductGraph(t1, t2).explore_component(start, budget)


def enumerate_components_horizontal(t1, t2, budget: int = DEFAULT_BUDGET) -> list[GraphComponent]:
    return ProductGraph(t1, t2).enumerate_components_horizontal(budget)


def product_order_graph(t1, t2, budget: int = DEFAULT_BUDGET, window: int | None = None) -> OrderReport:
    return ProductGraph(t1, t2).product_order(budget, window)
