"""Exception types shared across the package."""


class BandVortexError(Exception):
    """Base class for all package-specific errors."""


class NotNormalized(BandVortexError):
    """A vector expected to have unit norm deviates too much from it."""


class OriginAtZeroMu(BandVortexError):
    """Evaluation requested at the crossing point with mu = 0, where
    eigenvectors and projectors are undefined."""


class DegenerateLattice(BandVortexError):
    """Lattice basis vectors are (numerically) linearly dependent."""


class SingularOnMesh(BandVortexError):
    """A projector field hit its singular point on a mesh vertex."""

    def __init__(self, vertex, message=None):
        self.vertex = tuple(vertex)
        super().__init__(message or f"field singular at mesh vertex {self.vertex}")


class AmbiguousFlux(BandVortexError):
    """A single face flux came too close to the +/- pi branch cut; the mesh
    is too coarse for the winding being measured."""

    def __init__(self, face_index, flux, message=None):
        self.face_index = face_index
        self.flux = flux
        super().__init__(
            message or f"face {face_index} flux {flux:.4f} within guard band of pi"
        )


class DeformationTooFar(BandVortexError):
    """Two projectors are at operator distance >= 1, outside the range of
    the intertwining-unitary construction."""


class PreconditionViolated(BandVortexError):
    """A pairwise field comparison found projectors at distance >= 1."""

    def __init__(self, vertex, distance, message=None):
        self.vertex = tuple(vertex)
        self.distance = distance
        super().__init__(
            message
            or f"projector distance {distance:.6f} >= 1 at vertex {self.vertex}"
        )


class QuadratureNotConverged(BandVortexError):
    """An adaptive quadrature failed to reach its error target."""


class AssumptionViolated(BandVortexError):
    """A loop sample has a vanishing component, so the winding of the
    component ratio is undefined."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"component magnitude below tolerance at sample {index}")


class NonIntegerWinding(BandVortexError):
    """Accumulated phase increments did not land near an integer multiple
    of 2*pi even after refinement."""


class ZeroOverlap(BandVortexError):
    """Consecutive loop samples are (numerically) orthogonal."""


class DegenerateCloud(BandVortexError):
    """Sphere points span fewer than two dimensions; no unique plane fit."""


class IllConditioned(BandVortexError):
    """A linear solve produced coefficients that fail their defining
    conditions beyond tolerance."""


class OrderTooLarge(BandVortexError):
    """Bessel order outside the supported range."""


class SignChangeInWindow(BandVortexError):
    """A profile oscillates through zero inside the fit window; fit the
    envelope of |value| at oscillation peaks instead."""


class NotConverging(BandVortexError):
    """A limit sequence failed to approach its target monotonically."""


class ConfigError(BandVortexError):
    """Invalid or unknown run configuration."""
