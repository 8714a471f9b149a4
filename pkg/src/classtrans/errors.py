"""Exception hierarchy shared by every module of the package."""


class ClassTransError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ClassTransError, ValueError):
    """Text does not match the residue-class / transposition grammar."""


class RangeError(ClassTransError, ValueError):
    """A residue or modulus is outside its allowed range."""


class InvalidArgument(ClassTransError, ValueError):
    pass


class NotDisjoint(ClassTransError, ValueError):
    """The two residue classes of a would-be transposition intersect.

    ``gcd`` is the witness: it divides the difference of the residues.
    """

    def __init__(self, first, second, gcd: int):
        self.first = first
        self.second = second
        self.gcd = gcd
        super().__init__(
            f"{first} and {second} intersect: gcd of moduli {gcd} divides "
            f"{first.residue - second.residue}"
        )


class NotHorizontal(ClassTransError, ValueError):
    """An operation that needs equal moduli was handed an oblique transposition."""


class NotClassified(ClassTransError, ValueError):
    """A truncated component has no certified cycle structure."""


class ShapeViolation(ClassTransError):
    """A finite component of a horizontal pair matched no catalogue shape.

    This means either a bug or a counterexample to the shape catalogue, so it
    is never caught internally.
    """


class DegreeMismatch(ClassTransError, ValueError):
    pass


class ResourceLimit(ClassTransError):
    """The requested computation exceeds the configured size budget."""
