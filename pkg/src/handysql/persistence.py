"""Plain-text snapshots of a database.

Format, line oriented:

    HANDYDB 1
    TABLE STUDENTS
    COL S_ROLL NUMBER(2) NULL
    ...
    CONSTRAINT PK_S STUDENTS PK S_ROLL
    COUNTER 5546
    ROWS STUDENTS
    1<TAB>ROHI<TAB>...

Row cells are tab separated; NULL is \\N; backslash, tab and newline
are escaped.  Dates are stored ISO (YYYY-MM-DD), numbers in plain
positional notation.  Loading rebuilds the catalog and re-validates
every row against its column types and all constraints, so a snapshot
edited into an inconsistent state is rejected rather than trusted.
"""

from __future__ import annotations

import datetime
from decimal import Decimal

from .catalog import ColumnSchema, ConstraintDef, TableSchema
from .constraints import validate_existing
from .errors import OraError
from .executor import Database, StoredTable
from .parser import parse_standalone_predicate
from .render import render_predicate
from .values import (
    SqlValue, Varchar2Type, DateType, coerce_value, format_number,
    parse_type_display, type_display,
)

_MAGIC = "HANDYDB 1"


class SnapshotError(Exception):
    pass


def _escape_cell(value: SqlValue) -> str:
    if value is None:
        return "\\N"
    if isinstance(value, Decimal):
        text = format_number(value)
    elif isinstance(value, datetime.date):
        text = value.isoformat()
    else:
        text = value
    return (text.replace("\\", "\\\\")
                .replace("\t", "\\t")
                .replace("\n", "\\n"))


def _unescape_cell(text: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            nxt = text[i + 1]
            if nxt == "\\":
                out.append("\\")
            elif nxt == "t":
                out.append("\t")
            elif nxt == "n":
                out.append("\n")
            else:
                raise SnapshotError(f"bad escape \\{nxt}")
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def saves(db: Database) -> str:
    lines = [_MAGIC]
    for name, stored in db.tables.items():
        lines.append(f"TABLE {name}")
        for col in stored.schema.columns:
            null = "NOTNULL" if col.not_null else "NULL"
            lines.append(f"COL {col.name} {type_display(col.type)} {null}")
    for con in db.catalog.constraints:
        if con.kind == "CHECK":
            detail = render_predicate(con.predicate)
        elif con.kind == "NOTNULL":
            detail = con.column
        else:
            detail = ",".join(con.columns)
        lines.append(f"CONSTRAINT {con.name} {con.table} {con.kind} {detail}")
    lines.append(f"COUNTER {db.catalog.sys_name_counter}")
    for name, stored in db.tables.items():
        lines.append(f"ROWS {name}")
        for row in stored.rows:
            lines.append("\t".join(_escape_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def save(db: Database, path: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(saves(db))


def _parse_row(schema: TableSchema, line: str) -> list[SqlValue]:
    cells = line.split("\t")
    if len(cells) != len(schema.columns):
        raise SnapshotError(
            f"row width {len(cells)} != {len(schema.columns)} columns")
    row: list[SqlValue] = []
    for cell, col in zip(cells, schema.columns):
        if cell == "\\N":
            row.append(None)
            continue
        text = _unescape_cell(cell)
        ctype = col.type
        try:
            if isinstance(ctype, Varchar2Type):
                value = coerce_value(text, ctype)
            elif isinstance(ctype, DateType):
                value = datetime.date.fromisoformat(text)
            else:
                value = coerce_value(Decimal(text), ctype)
        except (OraError, ValueError, ArithmeticError) as err:
            raise SnapshotError(
                f"bad value {text!r} for column {col.name}: {err}") from None
        row.append(value)
    return row


def loads(text: str) -> Database:
    lines = text.splitlines()
    if not lines or lines[0] != _MAGIC:
        raise SnapshotError("not a database snapshot")
    db = Database()
    current: TableSchema | None = None
    rows_for: StoredTable | None = None
    pending_checks: list[tuple[ConstraintDef, str]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        if line.startswith("TABLE "):
            rows_for = None
            name = line[6:]
            if name in db.tables:
                raise SnapshotError(f"duplicate table {name}")
            current = TableSchema(name, [])
            db.catalog.tables[name] = current
            db.tables[name] = StoredTable(current)
        elif line.startswith("COL "):
            if current is None:
                raise SnapshotError(f"line {lineno}: COL outside TABLE")
            parts = line.split(" ")
            if len(parts) != 4 or parts[3] not in ("NOTNULL", "NULL"):
                raise SnapshotError(f"line {lineno}: bad COL line")
            _, cname, tdisplay, null = parts
            try:
                ctype = parse_type_display(tdisplay)
            except ValueError:
                raise SnapshotError(
                    f"line {lineno}: bad type {tdisplay}") from None
            current.columns.append(
                ColumnSchema(cname, ctype, null == "NOTNULL"))
        elif line.startswith("CONSTRAINT "):
            parts = line.split(" ", 4)
            if len(parts) != 5:
                raise SnapshotError(f"line {lineno}: bad CONSTRAINT line")
            _, cname, table, kind, detail = parts
            if table not in db.catalog.tables:
                raise SnapshotError(
                    f"line {lineno}: constraint on unknown table {table}")
            if kind in ("PK", "UNIQUE"):
                con = ConstraintDef(cname, table, kind,
                                    columns=tuple(detail.split(",")))
            elif kind == "CHECK":
                con = ConstraintDef(cname, table, "CHECK")
                pending_checks.append((con, detail))
            elif kind == "NOTNULL":
                con = ConstraintDef(cname, table, "NOTNULL", column=detail)
            else:
                raise SnapshotError(f"line {lineno}: bad kind {kind}")
            db.catalog.constraints.append(con)
        elif line.startswith("COUNTER "):
            try:
                db.catalog.sys_name_counter = int(line[8:])
            except ValueError:
                raise SnapshotError(f"line {lineno}: bad counter") from None
        elif line.startswith("ROWS "):
            name = line[5:]
            if name not in db.tables:
                raise SnapshotError(f"line {lineno}: rows for unknown {name}")
            rows_for = db.tables[name]
            current = None
        elif rows_for is not None:
            rows_for.rows.append(_parse_row(rows_for.schema, line))
        else:
            raise SnapshotError(f"line {lineno}: unexpected line {line!r}")

    for i, (con, detail) in enumerate(pending_checks):
        try:
            pred = parse_standalone_predicate(detail)
        except OraError as err:
            raise SnapshotError(
                f"bad check predicate {detail!r}: {err}") from None
        idx = db.catalog.constraints.index(con)
        db.catalog.constraints[idx] = ConstraintDef(
            con.name, con.table, "CHECK", predicate=pred)

    _validate(db)
    return db


def load(path: str) -> Database:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as err:
        raise SnapshotError(str(err)) from None
    return loads(text)


def _validate(db: Database) -> None:
    seen: set[str] = set()
    for con in db.catalog.constraints:
        if con.name in seen:
            raise SnapshotError(f"duplicate constraint name {con.name}")
        seen.add(con.name)
        schema = db.catalog.tables[con.table]
        named = con.columns if con.kind in ("PK", "UNIQUE") else (
            (con.column,) if con.kind == "NOTNULL" else ())
        for cname in named:
            if schema.find(cname) is None:
                raise SnapshotError(
                    f"constraint {con.name} names unknown column {cname}")
        violation = validate_existing(
            db.catalog, con.table, con, db.tables[con.table].rows)
        if violation is not None:
            raise SnapshotError(
                f"rows violate constraint {con.name} ({violation.reason})")
    # A NOT NULL column flag must be backed by some constraint and
    # vice versa, so flags and constraint list cannot drift apart.
    for name, schema in db.catalog.tables.items():
        enforced = {
            c for con in db.catalog.constraints if con.table == name
            for c in (con.columns if con.kind == "PK"
                      else (con.column,) if con.kind == "NOTNULL" else ())}
        flagged = {c.name for c in schema.columns if c.not_null}
        if enforced != flagged:
            raise SnapshotError(
                f"table {name}: NOT NULL flags {sorted(flagged)} do not "
                f"match constraints {sorted(enforced)}")
        for stored_row in db.tables[name].rows:
            for col, value in zip(schema.columns, stored_row):
                if col.not_null and value is None:
                    raise SnapshotError(
                        f"table {name}: NULL in NOT NULL column {col.name}")
