"""Exception types shared across the package."""


class SympGraphError(Exception):
    """Base class for all errors raised by sympgraph."""


class NonPrime(SympGraphError, ValueError):
    pass


class SizeExceeded(SympGraphError, ValueError):
    pass


class DimensionMismatch(SympGraphError, ValueError):
    pass


class GramMismatch(SympGraphError, ValueError):
    pass


class NotSRG(SympGraphError):
    def __init__(self, u, v, expected, found):
        super().__init__(
            f"vertices {u},{v}: {found} common neighbours, expected {expected}"
        )
        self.pair = (u, v)
        self.expected = expected
        self.found = found


class FormatUnsupported(SympGraphError, ValueError):
    pass


class TowerMismatch(SympGraphError, ValueError):
    pass


class ImproperColoring(SympGraphError):
    def __init__(self, u, v):
        super().__init__(f"edge ({u}, {v}) joins two vertices of the same class")
        self.edge = (u, v)


class CountMismatch(SympGraphError):
    def __init__(self, vertex, cls, found, expected):
        super().__init__(
            f"vertex {vertex} has {found} neighbours in class {cls}, expected {expected}"
        )
        self.vertex = vertex
        self.cls = cls


class NotGSp(SympGraphError, ValueError):
    pass


class NotAnEdge(SympGraphError, ValueError):
    pass


class NotAutomorphism(SympGraphError, ValueError):
    pass


class ExtractionMismatch(SympGraphError):
    pass


class IdentityViolated(SympGraphError):
    def __init__(self, identity, i, a, b=None):
        super().__init__(f"{identity} fails for pi_{i} at a={a}, b={b}")
        self.identity = identity
        self.index = i
        self.a = a
        self.b = b


class AdditivityFail(SympGraphError):
    pass
