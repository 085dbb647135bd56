"""Library errors with machine-readable codes (surfaced by the CLI)."""

from __future__ import annotations


class UltraballError(Exception):
    code = "error"


class ParseError(UltraballError):
    """Syntax error with 1-based line/column position."""

    code = "syntax"

    def __init__(self, message: str, line: int = 1, col: int = 1) -> None:
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.reason = message


class SemanticError(UltraballError):
    """Well-formed input violating a constraint (e.g. center not in K_R)."""

    code = "semantic"


class FactorizationRequired(UltraballError):
    code = "factorization-required"


class NotAFilter(UltraballError):
    code = "not-a-filter"


class OracleInconsistent(UltraballError):
    code = "oracle-not-a-seminorm"
