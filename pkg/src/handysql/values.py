"""Scalar types, runtime values, three-valued logic and date handling.

Numbers are exact decimals (never binary floats), strings compare
case-sensitively, dates are calendar dates, and NULL is Python None.
NULL never equals anything, including itself; comparisons involving it
yield UNKNOWN.
"""

from __future__ import annotations

import datetime
import re
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext
from enum import Enum
from fractions import Fraction

from .errors import OraError

SqlValue = Decimal | str | datetime.date | None

MAX_PRECISION = 38

# Plenty for exact sums of 38-significant-digit values at any scale the
# grammar can declare.
_EXACT_PRECISION = 240


class Tristate(Enum):
    TRUE = "TRUE"
    FALSE = "FALSE"
    UNKNOWN = "UNKNOWN"


def from_bool(flag: bool) -> Tristate:
    return Tristate.TRUE if flag else Tristate.FALSE


def and3(a: Tristate, b: Tristate) -> Tristate:
    if a is Tristate.FALSE or b is Tristate.FALSE:
        return Tristate.FALSE
    if a is Tristate.UNKNOWN or b is Tristate.UNKNOWN:
        return Tristate.UNKNOWN
    return Tristate.TRUE


def or3(a: Tristate, b: Tristate) -> Tristate:
    if a is Tristate.TRUE or b is Tristate.TRUE:
        return Tristate.TRUE
    if a is Tristate.UNKNOWN or b is Tristate.UNKNOWN:
        return Tristate.UNKNOWN
    return Tristate.FALSE


def not3(a: Tristate) -> Tristate:
    if a is Tristate.TRUE:
        return Tristate.FALSE
    if a is Tristate.FALSE:
        return Tristate.TRUE
    return Tristate.UNKNOWN


@dataclass(frozen=True)
class NumberType:
    precision: int = MAX_PRECISION
    scale: int = 0
    # Written as plain NUMBER with no precision: stored as (38, 0) but
    # displayed without parentheses.
    bare: bool = False


@dataclass(frozen=True)
class Varchar2Type:
    max_len: int


@dataclass(frozen=True)
class DateType:
    pass


SqlType = NumberType | Varchar2Type | DateType


def type_display(t: SqlType) -> str:
    """Catalog display form: NUMBER(p), NUMBER(p,s), VARCHAR2(n), DATE."""
    if isinstance(t, NumberType):
        if t.bare:
            return "NUMBER"
        if t.scale:
            return f"NUMBER({t.precision},{t.scale})"
        return f"NUMBER({t.precision})"
    if isinstance(t, Varchar2Type):
        return f"VARCHAR2({t.max_len})"
    return "DATE"


def normalize_type(keyword: str, args: tuple[int, ...],
                   line: int = 1, column: int = 1) -> SqlType:
    """Fold a written type into its stored form.

    VARCHAR becomes VARCHAR2, INTEGER becomes NUMBER(38), bare NUMBER
    keeps a flag so it displays without parentheses.  Idempotent: the
    written form of a normalized type normalizes to itself.
    """
    if keyword == "NUMBER":
        if not args:
            return NumberType(bare=True)
        precision = args[0]
        scale = args[1] if len(args) > 1 else 0
        if not 1 <= precision <= MAX_PRECISION:
            raise OraError(1727, line, column)
        return NumberType(precision, scale)
    if keyword in ("VARCHAR", "VARCHAR2"):
        if args[0] < 1:
            raise OraError(900, line, column)
        return Varchar2Type(args[0])
    if keyword == "INTEGER":
        return NumberType(MAX_PRECISION, 0)
    if keyword == "DATE":
        return DateType()
    raise AssertionError(f"unknown type keyword {keyword!r}")


_DISPLAY_RE = re.compile(
    r"NUMBER(?:\((\d+)(?:,(\d+))?\))?|VARCHAR2\((\d+)\)|DATE")


def parse_type_display(text: str) -> SqlType:
    """Inverse of type_display, used by the snapshot loader."""
    m = _DISPLAY_RE.fullmatch(text)
    if not m:
        raise ValueError(f"bad type display {text!r}")
    if text == "DATE":
        return DateType()
    if text.startswith("VARCHAR2"):
        return Varchar2Type(int(m.group(3)))
    if m.group(1) is None:
        return NumberType(bare=True)
    return NumberType(int(m.group(1)), int(m.group(2) or 0))


_MONTHS = ("JAN", "FEB", "MAR", "APR", "MAY", "JUN",
           "JUL", "AUG", "SEP", "OCT", "NOV", "DEC")
_MONTH_NUMBERS = {name: i + 1 for i, name in enumerate(_MONTHS)}
_DATE_RE = re.compile(r"(\d{1,2})-([A-Za-z]{3})-(\d{2}|\d{4})")


def parse_date_text(text: str) -> datetime.date:
    """Parse DD-MON-YY or DD-MON-YYYY.

    Two-digit years use a fixed window: 50-99 is 19xx, 00-49 is 20xx.
    Anything else, including impossible calendar dates, raises 1858.
    """
    m = _DATE_RE.fullmatch(text.strip())
    if not m:
        raise OraError(1858)
    month = _MONTH_NUMBERS.get(m.group(2).upper())
    if month is None:
        raise OraError(1858)
    year = int(m.group(3))
    if len(m.group(3)) == 2:
        year += 1900 if year >= 50 else 2000
    try:
        return datetime.date(year, month, int(m.group(1)))
    except ValueError:
        raise OraError(1858) from None


def format_date(d: datetime.date) -> str:
    """DD-MON-YY with an uppercase month, the fixed output form."""
    return f"{d.day:02d}-{_MONTHS[d.month - 1]}-{d.year % 100:02d}"


def format_number(value: Decimal) -> str:
    """Plain decimal text, never scientific notation."""
    return format(value, "f")


def coerce_value(value: SqlValue, target: SqlType) -> SqlValue:
    """Fit a literal value into a column type, or raise.

    Numbers round fractional digits beyond the scale half-up and must
    fit the precision afterwards (1438).  Strings must fit the declared
    length (12899) and parse as dates for DATE columns (1858).  Text is
    never implicitly accepted as a number (1722); other cross-kind
    moves are 932.
    """
    if value is None:
        return None
    if isinstance(target, NumberType):
        if isinstance(value, Decimal):
            with localcontext() as ctx:
                ctx.prec = _EXACT_PRECISION
                rounded = value.quantize(
                    Decimal(1).scaleb(-target.scale), rounding=ROUND_HALF_UP)
                if abs(rounded) >= Decimal(1).scaleb(
                        target.precision - target.scale):
                    raise OraError(1438)
            return rounded
        if isinstance(value, str):
            raise OraError(1722)
        raise OraError(932)
    if isinstance(target, Varchar2Type):
        if isinstance(value, str):
            if len(value) > target.max_len:
                raise OraError(12899)
            return value
        raise OraError(932)
    if isinstance(value, datetime.date):
        return value
    if isinstance(value, str):
        return parse_date_text(value)
    raise OraError(932)


_COMPARE_OPS = {
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def compare_values(a: SqlValue, b: SqlValue, op: str) -> Tristate:
    """Three-valued comparison of two runtime values.

    Either side NULL is UNKNOWN.  Mixed text/number is 1722, any other
    kind mismatch is 932.  Decimal comparison is exact regardless of
    context precision.
    """
    if a is None or b is None:
        return Tristate.UNKNOWN
    same_kind = (
        (isinstance(a, Decimal) and isinstance(b, Decimal))
        or (isinstance(a, str) and isinstance(b, str))
        or (isinstance(a, datetime.date) and isinstance(b, datetime.date))
    )
    if not same_kind:
        kinds = {type(a), type(b)}
        if str in kinds and Decimal in kinds:
            raise OraError(1722)
        raise OraError(932)
    return from_bool(_COMPARE_OPS[op](a, b))


def round_significant(value: Fraction, digits: int = MAX_PRECISION) -> Decimal:
    """Round an exact rational half-up to a number of significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_UP
        return Decimal(value.numerator) / Decimal(value.denominator)


def exact_sum(values: list[Decimal]) -> Decimal:
    """Sum decimals with enough working precision to stay exact."""
    with localcontext() as ctx:
        ctx.prec = _EXACT_PRECISION
        total = Decimal(0)
        for v in values:
            total += v
    return total
