"""Exception types raised by validators, channels, quantifiers and scenarios."""


class QRealityError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitian(QRealityError):
    def __init__(self, deviation: float):
        self.deviation = float(deviation)
        super().__init__(f"matrix is not Hermitian: max |m - m^dag| = {deviation:.3e}")


class TraceNotOne(QRealityError):
    def __init__(self, deviation: float):
        self.deviation = float(deviation)
        super().__init__(f"trace differs from 1 by {deviation:.3e}")


class NotPositive(QRealityError):
    def __init__(self, deviation: float):
        self.deviation = float(deviation)
        super().__init__(f"matrix is not positive semidefinite: min eigenvalue = {-deviation:.3e}")


class DimensionOverflow(QRealityError):
    """Composite dimension exceeds the configured maximum."""


class InvalidSubsystemIndex(QRealityError):
    """Subsystem index set is empty, repeated, or out of range."""


class NotADistribution(QRealityError):
    """Probability vector has negative entries or does not sum to one."""


class DimensionMismatch(QRealityError):
    """Operands act on incompatible Hilbert spaces."""


class InvalidRank(QRealityError):
    """Requested mixed-state rank is out of range."""


class ZeroProbabilityOutcome(QRealityError):
    """Conditioning on an outcome whose probability is numerically zero."""


class InvalidBipartition(QRealityError):
    """Index blocks do not partition the subsystem list."""


class NotARealityState(QRealityError):
    """Input state is not invariant under the reference dephasing."""


class NotUnbiased(QRealityError):
    """Observable pair is not mutually unbiased."""


class DegenerateGram(QRealityError):
    """Branch overlap is too close to one to define a label observable."""


class PacketTooWide(QRealityError):
    """Wave-packet tail mass on the grid exceeds the truncation threshold."""


class UnknownScenario(QRealityError):
    """Requested scenario or suite name is not registered."""


class ConfigParseError(QRealityError):
    """Run configuration is malformed."""
