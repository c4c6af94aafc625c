"""Exception types shared by the geometry layers and the CLI."""
from typing import Optional

class TukeyError(Exception):
    """Base class for every error raised by pytukey."""

class DegenerateInput(TukeyError, ValueError):
    """Input violates general position; `report` names the first offending tuple."""
    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report=report

class VerticalCarrier(TukeyError, ValueError):
    pass

class SlabElementary(TukeyError, ValueError):
    pass

class NoIntersection(TukeyError, ValueError):
    pass

class ParseError(TukeyError, ValueError):
    def __init__(self, message: str, source: Optional[str]=None):
        super().__init__(f"{source}: {message}" if source else message)
        self.source=source

class InvariantViolation(TukeyError, RuntimeError):
    """A property the algorithms certify at run time did not hold."""

class RegionMismatch(TukeyError):
    """The algorithm and the oracle disagree; `detail` names the first difference."""
    def __init__(self, message: str, detail: str=""):
        super().__init__(message)
        self.detail=detail
