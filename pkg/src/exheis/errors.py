"""Exception types for certificate and precondition failures.

All mathematically meaningful failures raise a subclass of
:class:`CalculusError` carrying enough context to name the violated
invariant.  Plain usage errors (wrong argument shapes, mismatched fiber
dimensions) raise :class:`ValueError` as usual.
"""


class CalculusError(Exception):
    """Base class for certificate and invariant failures."""


class DegenerateBoundary(CalculusError):
    """Top-degree part of a symbol vanishes somewhere on the sample grid."""


class NotSymplectic(CalculusError):
    """A linear fiber map fails to preserve the symplectic form."""


class NotInvertible(CalculusError):
    """An extended symbol (or one of its components) is not invertible.

    The failing component is named in ``component``.
    """

    def __init__(self, component: str, detail: str = ""):
        self.component = component
        msg = f"not invertible: {component}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class UnstableCertificate(CalculusError):
    """Two truncation orders disagree about an invertibility verdict."""


class PathDegenerate(CalculusError):
    """A homotopy sample fails its invertibility certificate."""


class LowerHalfNotInvertible(CalculusError):
    """Symmetrization requires an invertible lower half."""


class CornerNotNullhomotopic(CalculusError):
    """The corner-to-identity arc of a reduced symbol leaves the invertibles."""


class CornerMismatch(CalculusError):
    """Hemisphere boundary values disagree with the classical arc corners."""


class NonInvertibleParameter(CalculusError):
    """A model parameter sits on (or too near) the non-invertible locus."""


class NotStabilized(CalculusError):
    """Kernel/cokernel counts did not agree over the last three orders."""


class RankAmbiguous(CalculusError):
    """A singular value fell inside the rank-decision dead band."""


class ZeroOnCircle(CalculusError):
    """A circle function vanishes (or nearly so) on the sample grid."""


class NonIntegralWinding(CalculusError):
    """Summed phase increments are too far from an integer."""


class TruncationCapExceeded(CalculusError):
    """No truncation order up to the cap yields a stable invertible family."""


class NotInvertibleOnGrid(CalculusError):
    """A matrix family on a grid manifold has a nearly singular fiber."""


class NonIntegral(CalculusError):
    """A topological integral missed integrality by more than the allowance."""


class ConfigError(CalculusError):
    """Malformed run configuration or input file."""
