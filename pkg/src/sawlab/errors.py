"""Exception hierarchy shared by all sawlab modules."""


class SawLabError(Exception):
    """Base class for all sawlab errors."""

    code = "SawLabError"


class InvalidVertex(SawLabError):
    """A vertex key is malformed or does not belong to the graph."""

    code = "InvalidVertex"


class RadiusTooSmall(SawLabError):
    """A requested radius does not cover the vertex set it must contain."""

    code = "RadiusTooSmall"


class UnsupportedParameter(SawLabError):
    """A builder parameter is outside the supported range."""

    code = "UnsupportedParameter"


class InvalidLetter(SawLabError):
    """A word letter does not belong to the declared factor or alphabet."""

    code = "InvalidLetter"


class PresentationMismatch(SawLabError):
    """Two group elements come from different presentations."""

    code = "PresentationMismatch"


class InvalidGeneratorSet(SawLabError):
    """A Cayley generator set is not symmetric, or contains the identity."""

    code = "InvalidGeneratorSet"


class InvalidPresentation(SawLabError):
    """Presentation data fails a structural check (tables, subgroups, maps)."""

    code = "InvalidPresentation"


class InvalidEndpoint(SawLabError):
    """A separation-test endpoint lies inside the cut set."""

    code = "InvalidEndpoint"


class InvalidParameter(SawLabError):
    """A numeric or enum parameter is out of range."""

    code = "InvalidParameter"


class EmptyInput(SawLabError):
    """An operation received an empty table or sequence."""

    code = "EmptyInput"


class InvalidWalk(SawLabError):
    """A vertex sequence is not a self-avoiding walk on the graph."""

    code = "InvalidWalk"


class SurgeryConflict(SawLabError):
    """A surgery produced a self-intersecting or disconnected walk."""

    code = "SurgeryConflict"

    def __init__(self, message, index=None, vertex=None):
        super().__init__(message)
        self.index = index
        self.vertex = vertex


class InvalidAutomorphism(SawLabError):
    """A surgery automorphism does not move the suffix to a new component."""

    code = "InvalidAutomorphism"


class SpecNotFound(SawLabError):
    """A configuration file path does not exist."""

    code = "SpecNotFound"


class SpecInvalid(SawLabError):
    """A configuration file exists but fails schema validation."""

    code = "SpecInvalid"
