"""Exception hierarchy. Everything derives from ``ValueError`` so callers
catching bad input generically keep working."""


class GTLabError(ValueError):
    pass


class DimensionError(GTLabError):
    pass


class MatrixFormatError(GTLabError):
    pass


class NotHermitianError(GTLabError):
    pass


class NotPositiveDefiniteError(GTLabError):
    pass


class EigenError(GTLabError):
    pass


class ExpOverflowError(GTLabError):
    pass


class ContractionError(GTLabError):
    """A block tuple violates its resolution-of-identity constraint."""


class SingularMatrixError(GTLabError):
    pass


class UnknownFormError(GTLabError):
    pass
