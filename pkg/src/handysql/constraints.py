"""Row constraint checking, kept free of error codes.

check_row guards a candidate insert, validate_existing guards new
constraints and reloaded snapshots.  Both return the first Violation
found or None; mapping violations to ORA codes happens elsewhere.

Evaluation order: not-null flags first (in column order), then the
registered constraints in creation order.  Uniqueness never fires on
key tuples containing NULL.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .evaluate import eval_predicate
from .nodes import ColumnRef
from .values import SqlValue, Tristate

if TYPE_CHECKING:
    from .catalog import Catalog, ConstraintDef, TableSchema

NULL_COLUMN = "null column"
DUPLICATE_KEY = "duplicate key values"
FAILED_PREDICATE = "failed predicate"


@dataclass
class Violation:
    constraint: ConstraintDef
    reason: str
    row_ordinal: int


def _row_resolver(schema: TableSchema, row: list[SqlValue]):
    def resolve(ref: ColumnRef) -> SqlValue:
        # CHECK predicates are validated against the schema when added,
        # so lookups here cannot miss.
        return row[schema.index_of(ref.name)]
    return resolve


def _check_passes(schema: TableSchema, predicate, row: list[SqlValue]) -> bool:
    # CHECK accepts TRUE and UNKNOWN; only a definite FALSE violates.
    return eval_predicate(predicate, _row_resolver(schema, row)) is not Tristate.FALSE


def _key_tuple(schema: TableSchema, columns: tuple[str, ...],
               row: list[SqlValue]) -> tuple[SqlValue, ...] | None:
    values = tuple(row[schema.index_of(c)] for c in columns)
    if any(v is None for v in values):
        return None
    return values


def _not_null_source(cat: Catalog, table: str, column: str) -> ConstraintDef:
    """The constraint that put a not-null flag on a column."""
    for c in cat.constraints:
        if c.table != table:
            continue
        if c.kind == "NOTNULL" and c.column == column:
            return c
        if c.kind == "PK" and column in c.columns:
            return c
    raise AssertionError(f"no constraint behind NOT NULL on {column}")


def check_row(cat: Catalog, table: str, row: list[SqlValue],
              existing: list[list[SqlValue]]) -> Violation | None:
    """First violation a candidate row would cause, or None."""
    schema = cat.tables[table]
    for idx, col in enumerate(schema.columns):
        if col.not_null and row[idx] is None:
            return Violation(_not_null_source(cat, table, col.name),
                             NULL_COLUMN, len(existing))
    for c in cat.constraints:
        if c.table != table:
            continue
        if c.kind in ("PK", "UNIQUE"):
            key = _key_tuple(schema, c.columns, row)
            if key is None:
                continue
            for ordinal, other in enumerate(existing):
                if _key_tuple(schema, c.columns, other) == key:
                    return Violation(c, DUPLICATE_KEY, ordinal)
        elif c.kind == "CHECK":
            if not _check_passes(schema, c.predicate, row):
                return Violation(c, FAILED_PREDICATE, len(existing))
    return None


def validate_existing(cat: Catalog, table: str, candidate: ConstraintDef,
                      rows: list[list[SqlValue]]) -> Violation | None:
    """First violation of a prospective constraint over stored rows."""
    schema = cat.tables[table]
    if candidate.kind == "NOTNULL":
        idx = schema.index_of(candidate.column)
        for ordinal, row in enumerate(rows):
            if row[idx] is None:
                return Violation(candidate, NULL_COLUMN, ordinal)
        return None
    if candidate.kind == "CHECK":
        for ordinal, row in enumerate(rows):
            if not _check_passes(schema, candidate.predicate, row):
                return Violation(candidate, FAILED_PREDICATE, ordinal)
        return None
    if candidate.kind == "PK":
        for ordinal, row in enumerate(rows):
            for col in candidate.columns:
                if row[schema.index_of(col)] is None:
                    return Violation(candidate, NULL_COLUMN, ordinal)
    seen: list[tuple[SqlValue, ...] | None] = [
        _key_tuple(schema, candidate.columns, row) for row in rows]
    for i, key in enumerate(seen):
        if key is None:
            continue
        for j in range(i):
            if seen[j] == key:
                return Violation(candidate, DUPLICATE_KEY, i)
    return None
