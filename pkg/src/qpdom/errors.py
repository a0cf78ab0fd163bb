"""Exception hierarchy shared by every module."""


class QPDomError(Exception):
    """Base class for all errors raised by qpdom."""


class InvalidTree(QPDomError, ValueError):
    pass


class DisconnectedInput(InvalidTree):
    pass


class CycleDetected(InvalidTree):
    pass


class SelfLoop(InvalidTree):
    pass


class DuplicateEdge(InvalidTree):
    pass


class BadVertexId(QPDomError, ValueError):
    pass


class BadK(QPDomError, ValueError):
    pass


class BadParam(QPDomError, ValueError):
    pass


class TooSmall(QPDomError, ValueError):
    pass


class TooLarge(QPDomError, ValueError):
    pass


class NotDominating(QPDomError, ValueError):
    pass


class NotGammaCode(QPDomError, ValueError):
    pass


class NotExtremal(QPDomError, ValueError):
    pass


class ConstructionUnverified(QPDomError, RuntimeError):
    """A derived construction failed to reproduce its claimed QP-chain."""


class NotFound(QPDomError, LookupError):
    """Search budget exhausted. Not a refutation."""


class ParseError(QPDomError, ValueError):
    pass
