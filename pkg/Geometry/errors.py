class GeometryError(Exception):
    """
    Base class for every domain error raised by the Geometry and Complex packages.
    The command line maps these to exit code 1 and prints the class name.
    """


class DimensionMismatch(GeometryError):
    pass


class DependentVertices(GeometryError):
    """
    Raised when a vertex list that must span a simplex or plane is not
    geometrically independent. Carries the rank witness.
    """

    def __init__(self, rank, matrix, message=None):
        self.rank = rank
        self.matrix = matrix
        super().__init__(message or f"vertices are not geometrically independent (rank {rank})")


class NotInSimplex(GeometryError):
    pass


class OriginNotInterior(GeometryError):
    pass


class DegenerateSimplex(GeometryError):
    pass


class ComplexError(GeometryError):
    pass


class UnknownVertex(ComplexError):
    pass


class EmptyComplex(ComplexError):
    pass


class NotInRealization(ComplexError):
    pass


class MissingVertexValue(ComplexError):
    pass


class ParseError(Exception):
    """
    Malformed input text (rational literals, .scx documents, point files).
    `position` is a (line, column) pair for syntax errors or a dotted path
    such as "vertices.a1[0]" for structural ones.
    """

    def __init__(self, position, message):
        self.position = position
        self.message = message
        super().__init__(f"{format_position(position)}: {message}")


def format_position(position):
    if position is None:
        return "input"
    if isinstance(position, tuple):
        line, column = position
        return f"line {line}, column {column}"
    return str(position)
