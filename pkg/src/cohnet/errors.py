"""Exception types shared across the package."""


class CohnetError(Exception):
    """Base class for all domain errors raised by cohnet."""


class ShapeError(CohnetError):
    """Mode counts or mode indices of the operands do not line up."""


class SectorMismatch(CohnetError):
    """Occupation tuple does not belong to the requested photon-number sector."""


class InvalidBipartition(CohnetError):
    """Partial trace asked to keep an empty set or every mode."""


class NumericalError(CohnetError):
    """Input violates a numerical precondition (e.g. not Hermitian within tolerance)."""


class NotPSD(NumericalError):
    """Matrix has an eigenvalue below the allowed negative slack."""


class SingularAngle(CohnetError):
    """Beam-splitter angle with zero transmission; the label map is undefined there."""


class SpecError(CohnetError):
    """Malformed network, Kerr, or superposition specification."""


class DegenerateSuperposition(SpecError):
    """Balanced superposition whose normalization vanishes (null state)."""


class DegenerateLogicalBasis(CohnetError):
    """Branch overlap product equals one; the logical-qubit basis cannot be built.

    Callers treating entanglement should report concurrence 0: the state is
    separable across that cut.
    """
