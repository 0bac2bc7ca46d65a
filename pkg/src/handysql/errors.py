"""ORA error registry and the sqlplus-style error block renderer.

Every failure the engine can produce maps to one registered code.  Message
texts follow Oracle's public error catalog but drop the schema-qualified
name suffixes Oracle appends; only 936, 923 and 1430 are transcript-pinned,
the rest are engine-defined renderings.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .constraints import Violation

_MESSAGES = {
    1: "unique constraint violated",
    900: "invalid SQL statement",
    904: "invalid identifier",
    913: "too many values",
    918: "column ambiguously defined",
    923: "FROM keyword not found where expected",
    932: "inconsistent datatypes",
    934: "group function is not allowed here",
    936: "missing expression",
    937: "not a single-group group function",
    942: "table or view does not exist",
    947: "not enough values",
    955: "name is already used by an existing object",
    957: "duplicate column name",
    1400: "cannot insert NULL into",
    1430: "column being added already exists in table",
    1438: "value larger than specified precision",
    1439: "column to be modified must be empty to change datatype",
    1722: "invalid number",
    1727: "numeric precision specifier is out of range (1 to 38)",
    1756: "quoted string not properly terminated",
    1858: "a non-numeric character was found where a numeric was expected",
    2260: "table can have only one primary key",
    2264: "name already used by an existing constraint",
    2290: "check constraint violated",
    2296: "cannot enable - null values found",
    4043: "object {name} does not exist",
    12899: "value too large for column",
}


def registered_codes() -> tuple[int, ...]:
    return tuple(sorted(_MESSAGES))


def lookup(code: int, **params: str) -> str:
    """Message text for a code; 4043 takes a name= parameter."""
    template = _MESSAGES[code]
    return template.format(**params) if params else template


class OraError(Exception):
    """A positioned ORA-xxxxx failure raised anywhere in the engine.

    line/column are 1-based and point into the statement text that was
    parsed; runtime failures with no useful token default to (1, 1).
    """

    def __init__(self, code: int, line: int = 1, column: int = 1, **params: str):
        self.code = code
        self.line = line
        self.column = column
        self.message = lookup(code, **params)
        # Attached by the shell before rendering so the offending line
        # can be echoed back.
        self.statement_text: str | None = None
        super().__init__(f"ORA-{code:05d}: {self.message}")


def render_error(err: OraError) -> list[str]:
    """Render the four-line sqlplus block for an error.

    Offending physical line, a '*' marker at the error column, the
    "ERROR at line N:" header and the ORA line itself.
    """
    lines = (err.statement_text or "").split("\n")
    offending = lines[err.line - 1] if 0 < err.line <= len(lines) else ""
    return [
        offending,
        " " * (err.column - 1) + "*",
        f"ERROR at line {err.line}:",
        f"ORA-{err.code:05d}: {err.message}",
    ]


# Keyed by the checker's reason strings: a NULL in any NOT NULL column
# is 1400 even when the nullability came from a primary key.
_REASON_CODES = {
    "null column": 1400,
    "duplicate key values": 1,
    "failed predicate": 2290,
}


def violation_error(violation: Violation) -> OraError:
    """Map a constraint violation to its ORA code.

    The mapping lives here, not in the checker, so the checker stays a
    pure predicate usable by tests without touching error codes.
    """
    return OraError(_REASON_CODES[violation.reason])
