"""Exception types shared by the cubebilliard modules."""


class TieAtEdge(ValueError):
    """Two integer hyperplanes are crossed at the same instant.

    The unfolded ray meets a face of dimension <= d-2 there, where the
    billiard map is undefined.
    """

    def __init__(self, time, axes):
        self.time = time
        self.axes = tuple(sorted(axes))
        super().__init__(f"tie at t={time} on axes {self.axes}")


class ZeroComponent(ValueError):
    """A direction has a zero coordinate; project it first."""


class InsufficientDepth(ValueError):
    pass


class UnstableEnumeration(RuntimeError):
    """The refinement schedule ran out before the counts stabilised.

    The partial result is attached as ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NonPositiveValue(ValueError):
    pass


class NotComparable(ValueError):
    pass


class DegenerateDiagonal(ValueError):
    pass


class DuplicateLine(ValueError):
    pass


class EmptyProjection(UserWarning):
    """Projection erased every letter of a word."""
