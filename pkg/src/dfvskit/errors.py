"""Exception types shared across the package."""


class CapExceeded(RuntimeError):
    """An exact or exponential procedure would exceed its configured cap."""


class PromiseViolation(ValueError):
    """The input has an induced cycle longer than the promised bound."""


class NicenessError(RuntimeError):
    """A separator larger than the budget was found; the flower rule was not exhausted."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
