"""Exception hierarchy shared by the package."""


class NormsurfError(Exception):
    """Base class for all errors raised by normsurf."""


class TriangulationSyntaxError(NormsurfError, ValueError):
    """Malformed triangulation text; carries the 1-based line and column."""

    def __init__(self, message, line, column=1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class InvariantViolation(NormsurfError, ValueError):
    """Input is well formed but breaks a structural invariant."""


class IncompatibleVectors(NormsurfError, ValueError):
    """Two normal vectors carry different quad types in some tetrahedron."""

    def __init__(self, tet, quads_a, quads_b):
        self.tet = tet
        super().__init__(
            f"incompatible quad types in tetrahedron {tet}: {quads_a} vs {quads_b}"
        )


class IncompleteEnumeration(NormsurfError, RuntimeError):
    """The coordinate-sum cap was hit before the enumeration finished."""
