"""Schemas, constraints and the system catalog.

The catalog stores table schemas in creation order, a flat constraint
list (also creation order, which is what USER_CONSTRAINTS reports), and
the counter behind generated SYS_C names.  DUAL and USER_CONSTRAINTS are
built-in read-only relations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import constraints as checks
from .errors import OraError, violation_error
from .evaluate import predicate_aggregates, predicate_columns
from .lexer import TokenKind
from .nodes import (
    AlterAddConstraint, AlterModify, CheckBody, CreateTable, FallbackBody,
    Predicate, PrimaryKeyBody, UniqueBody,
)
from .values import (
    DateType, NumberType, SqlType, SqlValue, Varchar2Type, normalize_type,
    type_display,
)

SYS_NAME_SEED = 5545

_DESC_NAME_WIDTH = 30
_DESC_NULL_WIDTH = 8
_DESC_TYPE_WIDTH = 20


@dataclass
class ColumnSchema:
    name: str
    type: SqlType
    not_null: bool = False


@dataclass
class TableSchema:
    name: str
    columns: list[ColumnSchema]

    def column_names(self) -> list[str]:
        return [c.name for c in self.columns]

    def find(self, name: str) -> ColumnSchema | None:
        for col in self.columns:
            if col.name == name:
                return col
        return None

    def index_of(self, name: str) -> int:
        for i, col in enumerate(self.columns):
            if col.name == name:
                return i
        raise KeyError(name)


@dataclass
class ConstraintDef:
    name: str
    table: str
    kind: str  # PK | UNIQUE | CHECK | NOTNULL
    columns: tuple[str, ...] = ()
    predicate: Predicate | None = None
    column: str | None = None  # NOTNULL target


@dataclass
class Catalog:
    tables: dict[str, TableSchema] = field(default_factory=dict)
    constraints: list[ConstraintDef] = field(default_factory=list)
    sys_name_counter: int = SYS_NAME_SEED


def dual_schema() -> TableSchema:
    return TableSchema("DUAL", [ColumnSchema("DUMMY", Varchar2Type(1))])


def user_constraints_schema() -> TableSchema:
    return TableSchema("USER_CONSTRAINTS", [
        ColumnSchema("CONSTRAINT_NAME", Varchar2Type(30)),
        ColumnSchema("TABLE_NAME", Varchar2Type(30)),
        ColumnSchema("CONSTRAINT_TYPE", Varchar2Type(1)),
    ])

VIRTUAL_TABLES = ("DUAL", "USER_CONSTRAINTS")


def resolve_schema(cat: Catalog, name: str) -> TableSchema | None:
    """Stored table or built-in relation schema, None if unknown."""
    if name in cat.tables:
        return cat.tables[name]
    if name == "DUAL":
        return dual_schema()
    if name == "USER_CONSTRAINTS":
        return user_constraints_schema()
    return None


_TYPE_CODES = {"PK": "P", "UNIQUE": "U", "CHECK": "C", "NOTNULL": "C"}


def user_constraints_rows(cat: Catalog) -> list[list[SqlValue]]:
    """USER_CONSTRAINTS contents, one row per constraint in creation order.

    NOTNULL constraints report type 'C', same as CHECK, matching what
    Oracle shows for its generated not-null checks.
    """
    return [[c.name, c.table, _TYPE_CODES[c.kind]] for c in cat.constraints]


def create_table(cat: Catalog, stmt: CreateTable) -> str:
    if stmt.table in cat.tables or stmt.table in VIRTUAL_TABLES:
        raise OraError(955, stmt.line, stmt.column)
    seen: set[str] = set()
    columns: list[ColumnSchema] = []
    for clause in stmt.columns:
        if clause.name in seen:
            raise OraError(957, clause.line, clause.column)
        seen.add(clause.name)
        spec = clause.type_spec
        sql_type = normalize_type(spec.keyword, spec.args,
                                  spec.line, spec.column)
        columns.append(ColumnSchema(clause.name, sql_type))
    cat.tables[stmt.table] = TableSchema(stmt.table, columns)
    return "Table created."


def describe(cat: Catalog, name: str,
             line: int = 1, column: int = 1) -> list[str]:
    """The fixed-width DESC listing: Name, Null?, Type."""
    schema = resolve_schema(cat, name)
    if schema is None:
        raise OraError(4043, line, column, name=name)
    header = (f"{'Name':<{_DESC_NAME_WIDTH}} "
              f"{'Null?':<{_DESC_NULL_WIDTH}} Type")
    rule = " ".join("-" * w for w in
                    (_DESC_NAME_WIDTH, _DESC_NULL_WIDTH, _DESC_TYPE_WIDTH))
    lines = [header.rstrip(), rule]
    for col in schema.columns:
        null_mark = "NOT NULL" if col.not_null else ""
        lines.append((f"{col.name:<{_DESC_NAME_WIDTH}} "
                      f"{null_mark:<{_DESC_NULL_WIDTH}} "
                      f"{type_display(col.type)}").rstrip())
    return lines


def next_sys_name(cat: Catalog) -> str:
    """Next SYS_Cnnnnnn name, skipping any the user already claimed."""
    taken = {c.name for c in cat.constraints}
    while True:
        name = f"SYS_C{cat.sys_name_counter:06d}"
        cat.sys_name_counter += 1
        if name not in taken:
            return name


def _stored_table(cat: Catalog, stmt) -> TableSchema:
    schema = cat.tables.get(stmt.table)
    if schema is None:
        raise OraError(942, *stmt.table_pos)
    return schema


def add_constraint(cat: Catalog, stmt: AlterAddConstraint,
                   rows: list[list[SqlValue]]) -> str:
    """ALTER TABLE ... ADD CONSTRAINT against live rows.

    A clause that is not PRIMARY KEY/UNIQUE/CHECK is re-read as an
    attempt to add a column; if it names an existing column the result
    is 1430, marked at the start of the clause.
    """
    schema = _stored_table(cat, stmt)
    if isinstance(stmt.body, FallbackBody):
        names = {t.lexeme for t in stmt.body.tokens
                 if t.kind in (TokenKind.IDENT, TokenKind.KEYWORD)}
        if names & set(schema.column_names()):
            raise OraError(1430, stmt.line, stmt.column)
        raise OraError(900, stmt.line, stmt.column)
    if any(c.name == stmt.name for c in cat.constraints):
        raise OraError(2264, stmt.line, stmt.column)

    if isinstance(stmt.body, (PrimaryKeyBody, UniqueBody)):
        kind = "PK" if isinstance(stmt.body, PrimaryKeyBody) else "UNIQUE"
        if kind == "PK" and any(c.kind == "PK" and c.table == stmt.table
                                for c in cat.constraints):
            raise OraError(2260, stmt.line, stmt.column)
        for col in stmt.body.columns:
            if schema.find(col) is None:
                raise OraError(904, stmt.line, stmt.column)
        definition = ConstraintDef(stmt.name, stmt.table, kind,
                                   columns=stmt.body.columns)
    else:
        assert isinstance(stmt.body, CheckBody)
        _validate_check_predicate(schema, stmt)
        definition = ConstraintDef(stmt.name, stmt.table, "CHECK",
                                   predicate=stmt.body.predicate)

    violation = checks.validate_existing(cat, stmt.table, definition, rows)
    if violation is not None:
        raise violation_error(violation)
    cat.constraints.append(definition)
    if definition.kind == "PK":
        for col in definition.columns:
            schema.find(col).not_null = True
    return "Table altered."


def _validate_check_predicate(schema: TableSchema,
                              stmt: AlterAddConstraint) -> None:
    body = stmt.body
    assert isinstance(body, CheckBody)
    aggs = predicate_aggregates(body.predicate)
    if aggs:
        raise OraError(934, aggs[0].line, aggs[0].column)
    for ref in predicate_columns(body.predicate):
        if ref.qualifier is not None and ref.qualifier != schema.name:
            raise OraError(904, ref.line, ref.column)
        if schema.find(ref.name) is None:
            raise OraError(904, ref.line, ref.column)


def _narrowing(old: SqlType, new: SqlType) -> bool:
    if isinstance(old, NumberType) and isinstance(new, NumberType):
        return (new.precision - new.scale < old.precision - old.scale
                or new.scale < old.scale)
    if isinstance(old, Varchar2Type) and isinstance(new, Varchar2Type):
        return new.max_len < old.max_len
    if isinstance(old, DateType) and isinstance(new, DateType):
        return False
    return True  # kind change


def modify_column(cat: Catalog, stmt: AlterModify,
                  rows: list[list[SqlValue]]) -> str:
    """ALTER TABLE ... MODIFY: widen a type and/or flip nullability.

    Only same-kind, non-narrowing type changes are allowed (1439).
    Setting NOT NULL scans live rows first (2296) and registers a
    generated SYS_C constraint; dropping it removes that constraint but
    never unsets a flag a primary key put there.
    """
    schema = _stored_table(cat, stmt)
    col = schema.find(stmt.change.name)
    if col is None:
        raise OraError(904, stmt.line, stmt.column)
    spec = stmt.change.type_spec
    new_type = normalize_type(spec.keyword, spec.args, spec.line, spec.column)
    if _narrowing(col.type, new_type):
        raise OraError(1439, spec.line, spec.column)
    col.type = new_type

    idx = schema.index_of(col.name)
    if stmt.nullability == "NOT NULL":
        if not col.not_null:
            if any(row[idx] is None for row in rows):
                raise OraError(2296)
            cat.constraints.append(ConstraintDef(
                next_sys_name(cat), stmt.table, "NOTNULL", column=col.name))
            col.not_null = True
    elif stmt.nullability == "NULL":
        cat.constraints = [c for c in cat.constraints
                           if not (c.kind == "NOTNULL"
                                   and c.table == stmt.table
                                   and c.column == col.name)]
        pk_covers = any(c.kind == "PK" and c.table == stmt.table
                        and col.name in c.columns
                        for c in cat.constraints)
        if not pk_covers:
            col.not_null = False
    return "Table altered."
