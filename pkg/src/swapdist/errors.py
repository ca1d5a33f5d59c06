"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class SwapDistError(Exception):
    exit_code = 1


class InputError(SwapDistError, ValueError):
    """Invalid arguments to a library call (usage-level problem)."""

    exit_code = 2


class AlphabetMismatchError(InputError):
    pass


class UnsupportedArityError(InputError):
    pass


class DataValidationError(SwapDistError, ValueError):
    exit_code = 3


class ParseError(DataValidationError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SizeGuardError(SwapDistError, ValueError):
    """Enumeration would exceed the factorial size guard."""

    exit_code = 4
