"""Exception types shared across the package."""


class PlanarSeqError(Exception):
    """Base class for all package errors."""


class FormatError(PlanarSeqError):
    """Malformed input file (graph or sequence text)."""


class NonPlanarError(PlanarSeqError):
    """Input graph is not planar.

    ``witness`` holds the edge set of a Kuratowski subgraph when one was
    cheaply available, else None.
    """

    def __init__(self, message="graph is not planar", witness=None):
        super().__init__(message)
        self.witness = witness


class ParityError(PlanarSeqError):
    """Input violates a bipartiteness/parity requirement."""


class InvalidStepError(PlanarSeqError):
    """A contraction step is not applicable (dead or equal vertex id)."""

    def __init__(self, message, step_index=None, vertex=None):
        super().__init__(message)
        self.step_index = step_index
        self.vertex = vertex


class UnreachableVertexError(PlanarSeqError):
    """BFS root does not reach every vertex."""

    def __init__(self, vertex):
        super().__init__(f"vertex {vertex} unreachable from root")
        self.vertex = vertex


class EmbeddingIntegrityError(PlanarSeqError):
    """Rotation system is internally inconsistent."""


class RegionInvariantError(PlanarSeqError):
    """A sequencer region violated an invariant.

    Indicates an implementation bug (or an input outside the planner's
    contract), never a user error.
    """


class MergePreconditionError(PlanarSeqError):
    """A region merge was attempted with violated hypotheses."""


class SizeLimitError(PlanarSeqError):
    """Instance too large for the exact solver."""


class AncestorRelationError(PlanarSeqError):
    """left-of query on a pair where one vertex is an ancestor of the other."""
