"""Statement execution over in-memory tables.

Scans are plain nested loops, so result rows come out in insertion
order and a comma join with a WHERE filter is the same computation as
INNER JOIN ... ON.  Join output is all left-table columns then all
right-table columns, in schema order, names un-renamed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

from . import catalog as cat_mod
from .catalog import Catalog, TableSchema
from .constraints import check_row
from .errors import OraError, violation_error
from .evaluate import eval_predicate, predicate_aggregates
from .nodes import (
    AggregateCall, AlterAddConstraint, AlterModify, ColumnRef, CreateTable,
    Describe, Insert, Literal, Predicate, Select, Statement,
)
from .render import render_expr
from .values import (
    SqlValue, Tristate, coerce_value, exact_sum, round_significant,
)


@dataclass
class StoredTable:
    schema: TableSchema
    rows: list[list[SqlValue]] = field(default_factory=list)


@dataclass
class Database:
    catalog: Catalog = field(default_factory=Catalog)
    tables: dict[str, StoredTable] = field(default_factory=dict)


@dataclass
class Feedback:
    message: str


@dataclass
class ResultSet:
    headers: list[str]
    rows: list[list[SqlValue]]


@dataclass
class Listing:
    lines: list[str]


Outcome = Feedback | ResultSet | Listing


def execute(db: Database, stmt: Statement) -> Outcome:
    if isinstance(stmt, CreateTable):
        message = cat_mod.create_table(db.catalog, stmt)
        db.tables[stmt.table] = StoredTable(db.catalog.tables[stmt.table])
        return Feedback(message)
    if isinstance(stmt, Describe):
        return Listing(cat_mod.describe(db.catalog, stmt.table,
                                        stmt.line, stmt.column))
    if isinstance(stmt, Insert):
        return execute_insert(db, stmt)
    if isinstance(stmt, Select):
        return execute_select(db, stmt)
    if isinstance(stmt, AlterAddConstraint):
        rows = _stored_rows(db, stmt)
        return Feedback(cat_mod.add_constraint(db.catalog, stmt, rows))
    if isinstance(stmt, AlterModify):
        rows = _stored_rows(db, stmt)
        return Feedback(cat_mod.modify_column(db.catalog, stmt, rows))
    raise AssertionError(f"unknown statement {stmt!r}")


def _stored_rows(db: Database, stmt) -> list[list[SqlValue]]:
    stored = db.tables.get(stmt.table)
    if stored is None:
        raise OraError(942, *stmt.table_pos)
    return stored.rows


def execute_insert(db: Database, stmt: Insert) -> Feedback:
    stored = db.tables.get(stmt.table)
    if stored is None:
        raise OraError(942, stmt.line, stmt.column)
    schema = stored.schema

    if stmt.columns is not None:
        targets: list[int] = []
        for name, pos in zip(stmt.columns, stmt.column_positions):
            if schema.find(name) is None:
                raise OraError(904, *pos)
            idx = schema.index_of(name)
            if idx in targets:
                raise OraError(957, *pos)
            targets.append(idx)
    else:
        targets = list(range(len(schema.columns)))

    if len(stmt.values) > len(targets):
        extra = stmt.values[len(targets)]
        raise OraError(913, extra.line, extra.column)
    if len(stmt.values) < len(targets):
        raise OraError(947, *stmt.values_end)

    row: list[SqlValue] = [None] * len(schema.columns)
    for idx, literal in zip(targets, stmt.values):
        try:
            row[idx] = coerce_value(literal.value, schema.columns[idx].type)
        except OraError as err:
            raise OraError(err.code, literal.line, literal.column) from None

    violation = check_row(db.catalog, stmt.table, row, stored.rows)
    if violation is not None:
        raise violation_error(violation)
    stored.rows.append(row)
    return Feedback("1 row created.")


@dataclass
class _ScopeEntry:
    keys: set[str]  # alias and/or table name
    schema: TableSchema
    offset: int


class _Scope:
    """Column resolution over the FROM list of one select."""

    def __init__(self, entries: list[_ScopeEntry]):
        self.entries = entries

    def resolve(self, ref: ColumnRef) -> int:
        """Flat index of a column reference in the combined row."""
        matches: list[int] = []
        for entry in self.entries:
            if ref.qualifier is not None and ref.qualifier not in entry.keys:
                continue
            col = entry.schema.find(ref.name)
            if col is not None:
                matches.append(entry.offset + entry.schema.index_of(ref.name))
        if not matches:
            raise OraError(904, ref.line, ref.column)
        if len(matches) > 1:
            raise OraError(918, ref.line, ref.column)
        return matches[0]


def _table_rows(db: Database, name: str) -> list[list[SqlValue]] | None:
    if name in db.tables:
        return db.tables[name].rows
    if name == "DUAL":
        return [["X"]]
    if name == "USER_CONSTRAINTS":
        return cat_mod.user_constraints_rows(db.catalog)
    return None


def execute_select(db: Database, stmt: Select) -> ResultSet:
    entries: list[_ScopeEntry] = []
    sources: list[list[list[SqlValue]]] = []
    offset = 0
    for tref in stmt.tables:
        schema = cat_mod.resolve_schema(db.catalog, tref.table)
        rows = _table_rows(db, tref.table)
        if schema is None or rows is None:
            raise OraError(942, tref.line, tref.column)
        keys = {tref.table}
        if tref.alias:
            keys.add(tref.alias)
        entries.append(_ScopeEntry(keys, schema, offset))
        sources.append(rows)
        offset += len(schema.columns)
    scope = _Scope(entries)

    combined = _cross_product(sources)
    if stmt.join_on is not None:
        combined = _filter(combined, stmt.join_on, scope)
    if stmt.where is not None:
        _reject_aggregates(stmt.where)
        combined = _filter(combined, stmt.where, scope)

    if stmt.items is None:
        headers = [c.name for e in scope.entries for c in e.schema.columns]
        return ResultSet(headers, combined)

    aggregated = any(isinstance(item.expr, AggregateCall)
                     for item in stmt.items)
    headers = [_item_header(item) for item in stmt.items]
    if aggregated:
        row = [_eval_aggregate_item(item, combined, scope)
               for item in stmt.items]
        return ResultSet(headers, [row])

    slots = _resolve_items(stmt, scope)
    out_rows = []
    for row in combined:
        out_rows.append([row[slot] if slot is not None else const
                         for slot, const in slots])
    return ResultSet(headers, out_rows)


def _cross_product(
        sources: list[list[list[SqlValue]]]) -> list[list[SqlValue]]:
    rows: list[list[SqlValue]] = [[]]
    for source in sources:
        rows = [left + right for left in rows for right in source]
    return rows


def _filter(rows: list[list[SqlValue]], pred: Predicate,
            scope: _Scope) -> list[list[SqlValue]]:
    # Pre-resolve against the schema so unknown columns surface even
    # when there are no rows to scan.
    for ref in _predicate_refs(pred):
        scope.resolve(ref)
    kept = []
    for row in rows:
        state = eval_predicate(pred, lambda ref: row[scope.resolve(ref)])
        if state is Tristate.TRUE:
            kept.append(row)
    return kept


def _predicate_refs(pred: Predicate) -> list[ColumnRef]:
    from .evaluate import predicate_columns
    return predicate_columns(pred)


def _reject_aggregates(pred: Predicate) -> None:
    aggs = predicate_aggregates(pred)
    if aggs:
        raise OraError(934, aggs[0].line, aggs[0].column)


def _item_header(item) -> str:
    if item.alias is not None:
        return item.alias
    if isinstance(item.expr, ColumnRef):
        return item.expr.name
    return render_expr(item.expr)


def _resolve_items(stmt: Select, scope: _Scope):
    """(slot, constant) per item: slot indexes the combined row."""
    slots: list[tuple[int | None, SqlValue]] = []
    for item in stmt.items:
        expr = item.expr
        if isinstance(expr, ColumnRef):
            slots.append((scope.resolve(expr), None))
        elif isinstance(expr, Literal):
            slots.append((None, expr.value))
        else:
            raise OraError(937, expr.line, expr.column)
    return slots


def _eval_aggregate_item(item, rows: list[list[SqlValue]],
                         scope: _Scope) -> SqlValue:
    expr = item.expr
    if isinstance(expr, Literal):
        return expr.value
    if isinstance(expr, ColumnRef):
        raise OraError(937, expr.line, expr.column)
    assert isinstance(expr, AggregateCall)
    if expr.arg is None:
        return eval_aggregate("COUNT", [None] * len(rows), star=True)
    slot = scope.resolve(expr.arg)
    return eval_aggregate(expr.func, [row[slot] for row in rows])


def eval_aggregate(func: str, values: list[SqlValue],
                   star: bool = False) -> SqlValue:
    """Fold one column of values.

    NULLs are skipped everywhere except COUNT(*), which counts rows.
    Aggregates over no non-null input are NULL, except COUNT which is 0.
    AVG uses an exact rational intermediate, then rounds half-up to 38
    significant digits.
    """
    if star:
        return Decimal(len(values))
    present = [v for v in values if v is not None]
    if func == "COUNT":
        return Decimal(len(present))
    if not present:
        return None
    if func in ("MIN", "MAX"):
        kinds = {type(v) for v in present}
        if len(kinds) > 1:
            raise OraError(932)
        return min(present) if func == "MIN" else max(present)
    if not all(isinstance(v, Decimal) for v in present):
        raise OraError(1722)
    if func == "SUM":
        return exact_sum(present)
    assert func == "AVG"
    total = sum(Fraction(v) for v in present)
    return round_significant(total / len(present))
