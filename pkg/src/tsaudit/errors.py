"""Exception types shared across the package."""


class TsAuditError(Exception):
    """Base class for all tsaudit errors."""


class DataError(TsAuditError):
    """Invalid or insufficient input data (bad file, missing values, short sample)."""


class EstimationError(TsAuditError):
    """Numerical estimation failure (rank deficiency, singular matrix, non-convergence)."""
