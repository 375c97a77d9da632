"""Exception hierarchy shared by every module of the package.

All errors derive from :class:`CoherentLabellingError` so callers (and the
CLI) can catch one type.  Subclasses also derive from :class:`ValueError`
where the failure is caused by bad input.
"""


class CoherentLabellingError(Exception):
    """Base class for all package errors."""


# -- surface -----------------------------------------------------------------

class PolyhedronError(CoherentLabellingError, ValueError):
    """Face data does not describe a valid oriented sphere."""


class DegenerateFaceError(PolyhedronError):
    pass


class NonManifoldError(PolyhedronError):
    pass


class NotSphereError(PolyhedronError):
    pass


class LowDegreeVertexError(PolyhedronError):
    pass


class UnknownVertexError(PolyhedronError, KeyError):
    pass


class UnknownFaceError(PolyhedronError, KeyError):
    pass


class UnknownEdgeError(PolyhedronError, KeyError):
    pass


# -- labelling ---------------------------------------------------------------

class LabellingError(CoherentLabellingError, ValueError):
    pass


class DuplicateLabelError(LabellingError):
    pass


class MissingLabelError(LabellingError):
    pass


class NotCanonicalError(LabellingError):
    pass


class NotCoherentError(LabellingError):
    pass


class NotVertexCoherentError(LabellingError):
    pass


class LabelGapError(LabellingError):
    """Consecutive label values are closer than 1 apart."""


# -- solver ------------------------------------------------------------------

class SolverError(CoherentLabellingError):
    pass


class TooLargeError(SolverError, ValueError):
    pass


class CyclicInputError(SolverError, ValueError):
    pass


# -- constructions -----------------------------------------------------------

class InvalidNError(CoherentLabellingError, ValueError):
    pass


# -- attachments -------------------------------------------------------------

class AttachmentError(CoherentLabellingError, ValueError):
    pass


class NotTriangleError(AttachmentError):
    pass


class PreconditionZBYError(AttachmentError):
    pass


class VertexDegreeNot3Error(AttachmentError):
    pass


class VertexNotOnFaceError(AttachmentError):
    pass


class NeighborTooSmallError(AttachmentError):
    pass


class FacesDontShareEdgeError(AttachmentError):
    pass


class EdgeExistsError(AttachmentError):
    pass


class NoFeasibleGapError(AttachmentError):
    pass


class FlipDegreeError(AttachmentError):
    """An edge flip would leave an endpoint of the removed edge with degree 2."""


class NotExpressibleError(AttachmentError):
    """The described tetrahedron attachment matches none of the five rules."""


# -- documents ---------------------------------------------------------------

class DocumentError(CoherentLabellingError, ValueError):
    pass


class DocumentSyntaxError(DocumentError):
    pass


class SchemaError(DocumentError):
    pass
