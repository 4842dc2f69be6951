"""Exception types shared across the package.

Each class carries the process exit code the command-line driver reports
for it, so callers outside the CLI can map failures the same way.
"""


class ThomasError(Exception):
    exit_code = 2


class ContractError(ThomasError):
    """An operation was called outside its documented domain."""

    exit_code = 2


class ParseError(ThomasError):
    exit_code = 1

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column}: {message}"
        super().__init__(message)


class TerminationCapError(ThomasError):
    """The decomposition exceeded its configured iteration budget."""

    exit_code = 3
