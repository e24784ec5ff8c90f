"""Exception types raised by the engine."""


class CobstabError(Exception):
    """Base class for every error raised by this package."""


class ZeroCharge(CobstabError):
    pass


class Misaligned(CobstabError):
    pass


class BadPosition(CobstabError):
    pass


class TagNotZero(CobstabError):
    pass


class ObjectMismatch(CobstabError):
    pass


class EmptyObject(CobstabError):
    pass


class NotUnimodular(CobstabError):
    pass


class ParallelDirections(CobstabError):
    pass


class BadKappa(CobstabError):
    pass


class NotSemistable(CobstabError):
    pass


class MalformedSpec(CobstabError):
    pass


class UnresolvedTag(CobstabError):
    pass


class Inconsistent(CobstabError):
    pass


class Mismatch(CobstabError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class BadModulus(CobstabError):
    pass


class GeneratorMismatch(CobstabError):
    pass


class DSLSyntaxError(CobstabError):
    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = f"{message} (line {line}, col {col})"
        super().__init__(message)
        self.line = line
        self.col = col


class UndefinedName(DSLSyntaxError):
    pass


class BadWindow(CobstabError):
    pass
