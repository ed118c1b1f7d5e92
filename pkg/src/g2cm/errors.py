"""Exception hierarchy shared by every g2cm module."""


class G2CMError(Exception):
    """Base class for all library errors."""


# finite fields
class EvenCharacteristic(G2CMError, ValueError):
    pass


class CompositeModulus(G2CMError, ValueError):
    pass


class DegreeCapExceeded(G2CMError, ValueError):
    pass


class DivisionByZero(G2CMError, ZeroDivisionError):
    pass


class NotCoprime(G2CMError, ValueError):
    pass


class IncompatibleTower(G2CMError, ValueError):
    pass


# curves and divisors
class NonSquarefree(G2CMError, ValueError):
    pass


class BadDegree(G2CMError, ValueError):
    pass


class FieldMismatch(G2CMError, ValueError):
    pass


class InvalidDivisor(G2CMError, ValueError):
    pass


class SamplingBudgetExceeded(G2CMError, RuntimeError):
    pass


class EnumerationBoundExceeded(G2CMError, ValueError):
    pass


# zeta
class InconsistentCounts(G2CMError, ArithmeticError):
    pass


class BadPrime(G2CMError, ValueError):
    pass


# torsion
class CapExceeded(G2CMError, RuntimeError):
    pass


class RamifiedCase(G2CMError, ValueError):
    pass


class NoCandidateWorked(G2CMError, RuntimeError):
    pass


class NotInSpan(G2CMError, ArithmeticError):
    pass


class DlogFailure(G2CMError, ArithmeticError):
    pass


class CharpolyMismatch(G2CMError, ArithmeticError):
    pass


# pairings
class SupportCollision(G2CMError, ArithmeticError):
    pass


class NotTorsion(G2CMError, ValueError):
    pass


class RootsOfUnityMissing(G2CMError, ValueError):
    pass


class SupportExhausted(G2CMError, RuntimeError):
    pass


class DegenerateWeilRatio(G2CMError, ValueError):
    """ell^2 divides |F^x|, so the ratio of reduced Tate pairings is identically 1."""


class PairingFailure(G2CMError, RuntimeError):
    pass


# cm fields
class NotAQuarticCMField(G2CMError, ValueError):
    def __init__(self, cause):
        super().__init__(f"not a primitive quartic CM field: {cause}")
        self.cause = cause
