"""Exception hierarchy shared by every module."""


class PPTMomentsError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitian(PPTMomentsError, ValueError):
    pass


class ConvergenceError(PPTMomentsError, RuntimeError):
    pass


class NotUnit(PPTMomentsError, ValueError):
    pass


class InvalidTriad(PPTMomentsError, ValueError):
    pass


class TooManyQubits(PPTMomentsError, ValueError):
    pass


class BadBipartition(PPTMomentsError, ValueError):
    pass


class DimensionMismatch(PPTMomentsError, ValueError):
    pass


class WrongArity(PPTMomentsError, ValueError):
    """Operation needs a different number of qubits than the state has."""


class NotPositive(PPTMomentsError, ValueError):
    """Parameters describe an unphysical (non-PSD) operator."""


class NotNormalized(PPTMomentsError, ValueError):
    pass


class RangeError(PPTMomentsError, ValueError):
    pass


class BadShape(PPTMomentsError, ValueError):
    pass


class NotBracketed(PPTMomentsError, ValueError):
    """Detector verdict does not change inside the requested interval."""
