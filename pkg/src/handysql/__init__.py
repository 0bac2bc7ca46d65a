"""A small Oracle-flavored SQL engine with a sqlplus-style shell."""

from .errors import OraError, render_error
from .executor import Database, Feedback, Listing, ResultSet, execute
from .parser import parse_text
from .shell import Session, execute_statement

__version__ = "0.1.0"

__all__ = [
    "Database",
    "Feedback",
    "Listing",
    "OraError",
    "ResultSet",
    "Session",
    "execute",
    "execute_statement",
    "parse_text",
    "render_error",
    "__version__",
]
