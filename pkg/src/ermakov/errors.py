"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the command line
front end can report failures in a stable form.
"""


class ErmakovError(Exception):
    """Base class for all numerical errors raised by the package."""

    code = "error"


class SingularGenerator(ErmakovError):
    """The generating function ``f`` came too close to zero on the grid."""

    code = "singular_generator"


class IntegratorFailure(ErmakovError):
    code = "integrator_failure"


class BlowUp(IntegratorFailure):
    """The EMP amplitude collapsed towards zero during integration."""

    code = "blow_up"


class DegeneratePair(ErmakovError):
    code = "degenerate_pair"


class ZeroModeEnergy(ErmakovError):
    """The energy sits on a zero mode where the normalized map is undefined."""

    code = "zero_mode_energy"


class NormalizationFailure(ErmakovError):
    code = "normalization_failure"


class ConstraintViolation(ErmakovError):
    """Coefficients do not satisfy ``AB - C**2 == 1 / wronskian**2``."""

    code = "constraint_violation"


class NonPositiveRho(ErmakovError):
    code = "non_positive_rho"


class InputNotSolution(ErmakovError):
    code = "input_not_solution"


class MismatchedInputs(ErmakovError):
    code = "mismatched_inputs"


class NonIntegerShift(ErmakovError):
    code = "non_integer_shift"


class RootNotBracketed(ErmakovError):
    code = "root_not_bracketed"


class NonMonotoneScan(ErmakovError):
    code = "non_monotone_scan"


class InvalidK(ErmakovError, ValueError):
    code = "invalid_k"


class ConfigError(ErmakovError, ValueError):
    code = "config_error"


class InputNotSolutionWarning(UserWarning):
    """Issued instead of :class:`InputNotSolution` outside strict mode."""
