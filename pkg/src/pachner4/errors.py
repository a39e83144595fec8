"""Exception hierarchy shared by all modules."""


class TriangulationError(ValueError):
    """Base class for domain errors (CLI exit code 1)."""


class InconsistentGluing(TriangulationError):
    pass


class IndexOutOfRange(TriangulationError):
    pass


class SelfIdentification(TriangulationError):
    """A loop of gluings maps a face onto itself by a non-identity map."""

    def __init__(self, faces, message=None):
        self.faces = list(faces)
        if message is None:
            message = "face(s) identified with themselves: " + ", ".join(
                f"dim {d} #{i}" for d, i in self.faces)
        super().__init__(message)


class NotInternal(TriangulationError):
    pass


class NotBoundary(TriangulationError):
    pass


class InvalidSite(TriangulationError):
    pass


class WouldCreateSelfIdentification(InvalidSite):
    pass


class SameEndpoints(InvalidSite):
    pass


class InvalidCollapse(InvalidSite):
    pass


class NotAChainGluing(TriangulationError):
    pass


class BoundarySite(TriangulationError):
    pass


class ParseError(TriangulationError):
    pass


class IsomorphicInputs(TriangulationError):
    pass


class SequenceError(TriangulationError):
    """A move sequence failed to replay; ``step`` is the failing index."""

    def __init__(self, step, message):
        self.step = step
        super().__init__(f"step {step}: {message}")
