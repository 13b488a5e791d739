"""Exception and warning types shared across the package."""


class KoopidError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(KoopidError):
    """An argument has an invalid value (non-finite entries, bad order, ...)."""


class ShapeError(KoopidError):
    """Array dimensions are inconsistent with the operation."""


class DomainError(KoopidError):
    """A spatial-domain requirement is violated (e.g. graphon terms need [0, 1])."""


class NumericError(KoopidError):
    """A numerical routine failed to converge or produced unusable output."""


class BranchCutError(NumericError):
    """The principal matrix logarithm is undefined: an eigenvalue lies on the
    closed negative real axis (or is numerically zero)."""


class BlowUpError(KoopidError):
    """Time integration produced a non-finite state.

    Attributes carry the failure time and, when applicable, the trajectory
    index within a dataset-generation run.
    """

    def __init__(self, message, time=None, trajectory=None):
        super().__init__(message)
        self.time = time
        self.trajectory = trajectory


class InsufficientDataError(KoopidError):
    """Fewer snapshot pairs than basis functionals (m < n)."""


class PreconditionError(KoopidError):
    """A documented precondition of an operation is not met."""


class RankDeficiencyError(KoopidError):
    """The lifted data matrix has linearly dependent columns.

    ``columns`` lists the indices of the dependent columns (0-based, in the
    lifted-basis ordering).
    """

    def __init__(self, message, columns=()):
        super().__init__(message)
        self.columns = tuple(columns)


class IllConditionedWarning(UserWarning):
    """Eigenvector matrix is badly conditioned; results may lose accuracy."""


class RankDeficiencyWarning(UserWarning):
    """Least-squares fit retained fewer singular values than columns."""
