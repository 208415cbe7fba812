"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class QpcError(Exception):
    exit_code = 5


class PresentationSyntaxError(QpcError):
    exit_code = 2

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class InconsistentPresentation(QpcError):
    exit_code = 3

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnsupportedInstance(QpcError):
    exit_code = 4


class VerificationError(QpcError):
    """An internal invariant check failed."""
    exit_code = 5


class CollectionBudgetExceeded(VerificationError):
    pass


class NotAMember(QpcError):
    exit_code = 5


class PreconditionError(QpcError):
    exit_code = 5
