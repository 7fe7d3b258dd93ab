"""Exception hierarchy shared by every folcas module.

Each error carries a stable ``code`` (used in JSON error payloads) and the
process exit code the CLI maps it to.
"""

from __future__ import annotations


class FolcasError(Exception):
    """Base class for all folcas errors."""

    code = "internal"
    exit_code = 5

    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload


class InvalidInput(FolcasError):
    code = "invalid-input"
    exit_code = 2


class UnsupportedDegree(FolcasError):
    """Form degree outside the supported 0..3 range for the operation."""

    code = "unsupported-degree"
    exit_code = 2


class PullbackUndefined(FolcasError):
    """A substituted denominator vanished identically."""

    code = "pullback-undefined"
    exit_code = 2


class MixedDegrees(FolcasError):
    code = "mixed-degrees"
    exit_code = 2


class EulerContractionNonzero(FolcasError):
    code = "euler-contraction-nonzero"
    exit_code = 2


class NotIntegrable(FolcasError):
    code = "not-integrable"
    exit_code = 2


class MapImageInSingularLocus(FolcasError):
    """Pullback of a foliation vanished identically."""

    code = "map-image-in-singular-locus"
    exit_code = 2


class AllLinesDegenerate(FolcasError):
    """Every sampled line was invariant or fully tangent."""

    code = "all-lines-degenerate"
    exit_code = 2


class NonReducedPencil(FolcasError):
    """Chart coefficients share a factor; defensive, excluded by invariants."""

    code = "non-reduced-pencil"
    exit_code = 2


class ZeroForm(FolcasError):
    code = "zero-form"
    exit_code = 2


class ClosednessViolated(FolcasError):
    code = "closedness-violated"
    exit_code = 2


class ParamDomain(FolcasError):
    """Catalog family parameters outside their admissible domain."""

    code = "param-domain"
    exit_code = 2


class NotSingularHere(FolcasError):
    code = "not-singular-here"
    exit_code = 3


class DegenerateLinearPart(FolcasError):
    """Linear part outside the hyperbolic-index domain (det 0 or radial)."""

    code = "degenerate-linear-part"
    exit_code = 3


class DegenerateSingularLocus(FolcasError):
    """Shape-position / subresultant-chain degeneracy in elimination."""

    code = "degenerate-singular-locus"
    exit_code = 3


class MultiplePoint(FolcasError):
    """A singular point with local intersection multiplicity > 1."""

    code = "multiple-point"
    exit_code = 3


class NeedsFieldExtension(FolcasError):
    """Reduction blocked by an irrational singular direction.

    ``payload`` holds the minimal polynomials of the missing directions.
    """

    code = "needs-field-extension"
    exit_code = 4


class MaxDepthExceeded(FolcasError):
    """Reduction guard tripped; indicates a bug or an adversarial germ."""

    code = "max-depth-exceeded"
    exit_code = 5
