"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
1 for malformed input, 2 for well-formed input the algorithms cannot handle.
"""


class NestsumError(Exception):
    exit_code = 1


class InputError(NestsumError, ValueError):
    """Malformed or inconsistent input (syntax, arity, unbound symbols)."""

    exit_code = 1


class ParseError(InputError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnsynchronizedError(InputError):
    pass


class UnboundSymbolError(InputError):
    pass


class UnsupportedShapeError(NestsumError):
    """Input is valid but outside the class the algorithms can reduce."""

    exit_code = 2


class DivergenceError(NestsumError, ArithmeticError):
    exit_code = 2


class SingularRecursionError(NestsumError, ArithmeticError):
    exit_code = 2
