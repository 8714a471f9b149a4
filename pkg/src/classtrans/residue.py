"""Residue classes, class transpositions and residue-class-wise affine maps.

Everything here is an immutable value built on exact Python integers.
Products of maps are read left to right throughout the package: in
``t1 * t2`` the factor ``t1`` is applied first.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterator, Sequence

from .errors import InvalidArgument, NotDisjoint, ParseError, RangeError

_CLASS_RE = re.compile(r"\s*([+-]?\d+)\s*\(\s*([+-]?\d+)\s*\)\s*")
_CT_RE = re.compile(r"\s*([^,]+\))\s*,\s*([^,]+\))\s*")


@dataclass(frozen=True, order=True)
class ResidueClass:
    """The class ``r(m) = {r + k*m : k in Z}`` with ``0 <= r < m``."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise RangeError(f"modulus must be >= 1, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise RangeError(
                f"residue must satisfy 0 <= r < {self.modulus}, got {self.residue}"
            )

    def __contains__(self, n: int) -> bool:
        return (n - self.residue) % self.modulus == 0

    def __str__(self) -> str:
        return f"{self.residue}({self.modulus})"

    def element(self, k: int) -> int:
        """Return ``r + m*k``."""
        return self.residue + self.modulus * k

    def index_of(self, n: int) -> int:
        """Return the ``k`` with ``n == r + m*k``; ``n`` must lie in the class."""
        k, rem = divmod(n - self.residue, self.modulus)
        if rem:
            raise InvalidArgument(f"{n} is not in {self}")
        return k


def parse_class(text: str) -> ResidueClass:
    """Parse ``"r(m)"``, e.g. ``"1(2)"``."""
    match = _CLASS_RE.fullmatch(text)
    if match is None:
        raise ParseError(f"expected a residue class like '1(2)', got {text!r}")
    return ResidueClass(int(match.group(1)), int(match.group(2)))


def classes_disjoint(c1: ResidueClass, c2: ResidueClass) -> bool:
    """Two classes are disjoint iff gcd of the moduli does not divide r1 - r2."""
    return (c1.residue - c2.residue) % gcd(c1.modulus, c2.modulus) != 0


class Kind(enum.Enum):
    HORIZONTAL = "horizontal"
    OBLIQUE = "oblique"


@dataclass(frozen=True)
class ClassTransposition:
    """The involution of Z swapping ``r1 + m1*k`` with ``r2 + m2*k`` for all k.

    Cells are stored in canonical order (lexicographic by residue, then
    modulus), so two equal transpositions compare and hash equal no matter
    which order the cells were given in.
    """

    cell_a: ResidueClass
    cell_b: ResidueClass

    def __post_init__(self):
        if not classes_disjoint(self.cell_a, self.cell_b):
            raise NotDisjoint(
                self.cell_a, self.cell_b, gcd(self.cell_a.modulus, self.cell_b.modulus)
            )
        if self.cell_b < self.cell_a:
            a, b = self.cell_b, self.cell_a
            object.__setattr__(self, "cell_a", a)
            object.__setattr__(self, "cell_b", b)

    @classmethod
    def parse(cls, text: str) -> ClassTransposition:
        return parse_transposition(text)

    def __str__(self) -> str:
        return f"{self.cell_a},{self.cell_b}"

    def __repr__(self) -> str:
        return f"CT({self})"

    @property
    def moduli(self) -> tuple[int, int]:
        return self.cell_a.modulus, self.cell_b.modulus

    @property
    def kind(self) -> Kind:
        # Equal residues would make the cells intersect, so "vertical" never occurs.
        if self.cell_a.modulus == self.cell_b.modulus:
            return Kind.HORIZONTAL
        return Kind.OBLIQUE

    @property
    def is_horizontal(self) -> bool:
        return self.kind is Kind.HORIZONTAL

    def moves(self, n: int) -> bool:
        """True iff ``n`` lies in the support."""
        return n in self.cell_a or n in self.cell_b

    def __call__(self, n: int) -> int:
        a, b = self.cell_a, self.cell_b
        k, rem = divmod(n - a.residue, a.modulus)
        if not rem:
            return b.residue + b.modulus * k
        k, rem = divmod(n - b.residue, b.modulus)
        if not rem:
            return a.residue + a.modulus * k
        return n

    apply = __call__

    def refine(self, n: int) -> list[ClassTransposition]:
        """Split into ``n`` transpositions with pairwise disjoint supports.

        The k-th factor swaps ``k*m1 + r1 (n*m1)`` with ``k*m2 + r2 (n*m2)``;
        their product (in any order) is ``self``.
        """
        if n < 1:
            raise InvalidArgument(f"refinement factor must be >= 1, got {n}")
        (r1, m1), (r2, m2) = (self.cell_a.residue, self.cell_a.modulus), (
            self.cell_b.residue,
            self.cell_b.modulus,
        )
        return [
            ClassTransposition(
                ResidueClass(k * m1 + r1, n * m1), ResidueClass(k * m2 + r2, n * m2)
            )
            for k in range(n)
        ]

    def to_rcwa(self) -> RcwaMapping:
        r1, m1 = self.cell_a.residue, self.cell_a.modulus
        r2, m2 = self.cell_b.residue, self.cell_b.modulus
        modulus = lcm(m1, m2)
        # n = r1 + m1*k  ->  r2 + m2*k = (m2*n + r2*m1 - r1*m2) / m1, and back.
        on_a = _normalize(m2, r2 * m1 - r1 * m2, m1)
        on_b = _normalize(m1, r1 * m2 - r2 * m1, m2)
        pieces = []
        for r in range(modulus):
            if r % m1 == r1:
                pieces.append(on_a)
            elif r % m2 == r2:
                pieces.append(on_b)
            else:
                pieces.append((1, 0, 1))
        return RcwaMapping(modulus, tuple(pieces))

    def is_integral(self) -> bool:
        """Divisor of the affine form is 1; equivalent to being horizontal."""
        by_divisor = self.to_rcwa().divisor == 1
        if by_divisor != self.is_horizontal:
            raise AssertionError(
                f"integrality and horizontality disagree for {self}: "
                f"divisor route {by_divisor}, kind {self.kind.value}"
            )
        return by_divisor


def make_transposition(c1: ResidueClass, c2: ResidueClass) -> ClassTransposition:
    return ClassTransposition(c1, c2)


def parse_transposition(text: str) -> ClassTransposition:
    """Parse ``"r1(m1),r2(m2)"``; whitespace is ignored."""
    match = _CT_RE.fullmatch(text)
    if match is None:
        raise ParseError(
            f"expected a class transposition like '0(2),1(2)', got {text!r}"
        )
    return ClassTransposition(parse_class(match.group(1)), parse_class(match.group(2)))


def classify(t: ClassTransposition) -> Kind:
    return t.kind


def apply_sequence(ts: Sequence[ClassTransposition], n: int) -> int:
    """Apply ``ts`` left to right to ``n``."""
    for t in ts:
        n = t(n)
    return n


def _normalize(a: int, b: int, c: int) -> tuple[int, int, int]:
    if c == 0:
        raise InvalidArgument("affine piece has zero denominator")
    g = gcd(gcd(a, b), c)
    if c < 0:
        g = -g
    return a // g, b // g, c // g


@dataclass(frozen=True)
class RcwaMapping:
    """A residue-class-wise affine map ``n -> (a*n + b) / c`` on each ``r(M)``.

    ``pieces[r]`` is the triple ``(a, b, c)`` used on ``r(modulus)``; triples
    are kept with ``gcd(a, b, c) == 1`` and ``c > 0``.
    """

    modulus: int
    pieces: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.modulus < 1 or len(self.pieces) != self.modulus:
            raise InvalidArgument("need exactly one affine piece per residue class")
        pieces = tuple(_normalize(*p) for p in self.pieces)
        object.__setattr__(self, "pieces", pieces)
        for r, (a, b, c) in enumerate(pieces):
            # well defined on all of r(M) iff c | a*r + b and c | a*M
            if (a * r + b) % c or (a * self.modulus) % c:
                raise InvalidArgument(
                    f"piece {(a, b, c)} on {r}({self.modulus}) is not integer valued"
                )

    @classmethod
    def identity(cls, modulus: int = 1) -> RcwaMapping:
        return cls(modulus, ((1, 0, 1),) * modulus)

    def __call__(self, n: int) -> int:
        a, b, c = self.pieces[n % self.modulus]
        q, rem = divmod(a * n + b, c)
        if rem:
            raise ArithmeticError(f"non-integral image at {n}")
        return q

    @property
    def multiplier(self) -> int:
        return lcm(*(a for a, _, _ in self.pieces))

    @property
    def divisor(self) -> int:
        return lcm(*(c for _, _, c in self.pieces))

    @property
    def is_integral(self) -> bool:
        return self.divisor == 1

    def describe(self) -> Iterator[str]:
        """Yield one human-readable line per residue class."""
        for r, (a, b, c) in enumerate(self.pieces):
            yield f"{r}({self.modulus}): n -> {_affine_text(a, b, c)}"


def _affine_text(a: int, b: int, c: int) -> str:
    lin = "n" if a == 1 else "-n" if a == -1 else f"{a}n"
    if b:
        lin += f" + {b}" if b > 0 else f" - {-b}"
    if c != 1:
        lin = f"({lin})/{c}"
    return lin
