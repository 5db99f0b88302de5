"""Exceptions shared across the package."""


class ArrangementError(Exception):
    """Base class for all package-specific errors."""


class ZeroNormal(ArrangementError):
    """A hyperplane was given the zero vector as its normal."""


class DuplicateHyperplane(ArrangementError):
    """Two normals define the same (unoriented) central hyperplane."""


class NotAFlat(ArrangementError):
    """The given flat does not belong to the arrangement."""


class LengthMismatch(ArrangementError):
    """Sign vectors or point coordinates of incompatible lengths."""


class EndpointMismatch(ArrangementError):
    """Two galleries do not share both endpoints."""


class NotAPermutation(ArrangementError):
    """A crossing order is not a permutation of the hyperplane indices."""


class NotAdmissible(ArrangementError):
    """A crossing order violates some rank-2 localization."""


class NotModular(ArrangementError):
    """The given flat is not a modular line of the arrangement."""


class NotIncident(ArrangementError):
    """The base chamber is not incident to the given flat."""


class InvalidChamberWord(ArrangementError):
    """A sign word does not describe a nonempty open chamber."""


class UnknownSelector(ArrangementError):
    """Unrecognized check selector."""


class BoundExceeded(ArrangementError):
    """An enumeration outgrew its configured guard."""

    def __init__(self, what: str, bound: int):
        super().__init__(f"{what} exceeds bound {bound}")
        self.what = what
        self.bound = bound
