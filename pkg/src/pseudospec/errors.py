"""Exception hierarchy shared by all modules."""


class PseudospecError(Exception):
    """Base class for all library errors."""


class NonConvergence(PseudospecError):
    """An iterative kernel (eigensolver, SVD) failed or missed its residual target."""


class DefectiveInput(PseudospecError):
    """Eigenvalues too close to treat as simple (min gap below threshold)."""


class DimensionMismatch(PseudospecError):
    """Matrix dimension incompatible with the requested structure or operation."""


class ZeroOffdiagonal(PseudospecError):
    """Tridiagonal Toeplitz reference requires nonzero off-diagonal entries."""


class ZeroProjection(PseudospecError):
    """Projection onto the structure subspace is numerically zero."""


class VanishingOverlap(PseudospecError):
    """y^H x is numerically zero; the eigenvalue is defective to working precision."""


class DegenerateSpectrum(PseudospecError):
    """Fewer than two eigenvalues available for pair minimization."""


class OutOfBounds(PseudospecError):
    """Query point lies outside the grid window."""


class EmptyLevelSet(PseudospecError):
    """No grid cell lies in the requested level set; widen the window."""


class UnknownFamily(PseudospecError):
    """Matrix generator family name not recognized."""


class BadParams(PseudospecError):
    """Generator or CLI parameters outside their schema."""
