"""Typed statement tree produced by the parser.

Source positions ride along in compare-excluded fields, so two trees
compare equal when they mean the same statement regardless of layout.
Written type spellings (VARCHAR vs VARCHAR2) are preserved here;
normalization happens later in the data model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal

from .lexer import Token


@dataclass(frozen=True)
class TypeSpec:
    keyword: str
    args: tuple[int, ...] = ()
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)


@dataclass(frozen=True)
class ColumnRef:
    name: str
    qualifier: str | None = None
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)


@dataclass(frozen=True)
class Literal:
    value: Decimal | str | None
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)


@dataclass(frozen=True)
class AggregateCall:
    func: str
    arg: ColumnRef | None = None  # None is the COUNT(*) star form
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)


Expr = ColumnRef | Literal | AggregateCall


@dataclass(frozen=True)
class Comparison:
    op: str  # canonical: = != < <= > >=
    left: Expr
    right: Expr
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)


@dataclass(frozen=True)
class IsNull:
    operand: Expr
    negated: bool = False
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)


@dataclass(frozen=True)
class Not:
    operand: "Predicate"


@dataclass(frozen=True)
class BoolOp:
    op: str  # AND | OR
    left: "Predicate"
    right: "Predicate"


Predicate = Comparison | IsNull | Not | BoolOp


@dataclass(frozen=True)
class ColumnClause:
    name: str
    type_spec: TypeSpec
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)


@dataclass(frozen=True)
class CreateTable:
    table: str
    columns: tuple[ColumnClause, ...]
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)


@dataclass(frozen=True)
class Describe:
    table: str
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)


@dataclass(frozen=True)
class Insert:
    table: str
    columns: tuple[str, ...] | None
    values: tuple[Literal, ...]
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)
    column_positions: tuple[tuple[int, int], ...] = field(
        default=(), compare=False)
    values_end: tuple[int, int] = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class SelectItem:
    expr: Expr
    alias: str | None = None
    alias_quoted: bool = False


@dataclass(frozen=True)
class TableRef:
    table: str
    alias: str | None = None
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)


@dataclass(frozen=True)
class Select:
    items: tuple[SelectItem, ...] | None  # None is the '*' form
    tables: tuple[TableRef, ...]
    join_on: Predicate | None = None  # set only for INNER JOIN ... ON
    where: Predicate | None = None


@dataclass(frozen=True)
class PrimaryKeyBody:
    columns: tuple[str, ...]


@dataclass(frozen=True)
class UniqueBody:
    columns: tuple[str, ...]


@dataclass(frozen=True)
class CheckBody:
    predicate: Predicate


@dataclass(frozen=True)
class FallbackBody:
    """Clause tail after a constraint name that is not PK/UNIQUE/CHECK.

    Kept as raw tokens; the catalog decides whether it names an existing
    column (the add-column re-interpretation) when executed.
    """

    tokens: tuple[Token, ...]


ConstraintBody = PrimaryKeyBody | UniqueBody | CheckBody | FallbackBody


@dataclass(frozen=True)
class AlterAddConstraint:
    table: str
    name: str
    body: ConstraintBody
    # Position of the constraint-name token, where the fallback error
    # marker lands.
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)
    table_pos: tuple[int, int] = field(default=(1, 1), compare=False)


@dataclass(frozen=True)
class AlterModify:
    table: str
    change: ColumnClause
    nullability: str | None = None  # "NOT NULL" | "NULL" | None
    line: int = field(default=1, compare=False)
    column: int = field(default=1, compare=False)
    table_pos: tuple[int, int] = field(default=(1, 1), compare=False)


Statement = (CreateTable | Describe | Insert | Select
             | AlterAddConstraint | AlterModify)
