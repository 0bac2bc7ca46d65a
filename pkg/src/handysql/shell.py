"""Interactive sqlplus-style shell and script runner.

The prompt is "SQL> "; continuation lines are numbered "  2  ", "  3  "
and numbering restarts for every statement.  A statement ends with a
line whose last character is ";" or with a lone "/" line.  When input
is not a terminal every consumed line is echoed after its prompt, so a
piped session writes the exact transcript a script run would.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from dataclasses import dataclass, field
from decimal import Decimal
from typing import TextIO

from . import persistence
from .errors import OraError, render_error
from .executor import Database, Feedback, Listing, ResultSet, execute
from .parser import parse_text
from .values import format_date, format_number

PROMPT = "SQL> "

_SUBST = re.compile(r"&([A-Za-z][A-Za-z0-9_$#]*)")


def continuation_prompt(n: int) -> str:
    return f"{n:3d}  "


class ShellEOF(Exception):
    """Input ended while a substitution prompt was waiting."""


class SubstitutionError(Exception):
    """Script mode referenced a variable with no binding left."""

    def __init__(self, name: str, lines: list[str]):
        super().__init__(name)
        self.name = name
        self.lines = lines


@dataclass
class Session:
    db: Database
    out: TextIO = field(default_factory=lambda: sys.stdout)
    instream: TextIO = field(default_factory=lambda: sys.stdin)
    echo_input: bool = False
    quiet: bool = False
    subst_cache: dict[str, str] = field(default_factory=dict)
    error_count: int = 0


def _read_line(session: Session, prompt: str) -> str | None:
    if not session.quiet:
        session.out.write(prompt)
        session.out.flush()
    line = session.instream.readline()
    if line == "":
        if not session.quiet:
            session.out.write("\n")
        return None
    line = line.rstrip("\r\n")
    if session.echo_input and not session.quiet:
        session.out.write(line + "\n")
    return line


def strip_terminator(line: str) -> str:
    content = line.rstrip()
    assert content.endswith(";")
    return content[:-1].rstrip()


def read_statement(session: Session) -> str | None:
    """Next statement text, or None when the session should end."""
    buffered: list[str] = []
    while True:
        prompt = PROMPT if not buffered else continuation_prompt(
            len(buffered) + 1)
        line = _read_line(session, prompt)
        if line is None:
            return None
        stripped = line.strip()
        if not buffered:
            if not stripped:
                continue
            if stripped.rstrip(";").strip().lower() in ("exit", "quit"):
                return None
        if stripped == "/":
            if buffered:
                return "\n".join(buffered)
            continue
        if line.rstrip().endswith(";"):
            buffered.append(strip_terminator(line))
            return "\n".join(buffered)
        buffered.append(line)


def substitute_variables(
        session: Session, text: str,
        bindings: list[tuple[str, str]] | None = None,
) -> tuple[str, list[str]]:
    """Resolve &NAME markers left to right.

    Interactive mode (bindings None) prompts on the session streams as
    it goes and returns no lines; script mode consumes the first
    unused binding with a matching name and returns the prompt lines
    it would have shown, so both modes emit identical transcripts.
    Every occurrence is resolved afresh; the cache only records the
    last value per name.
    """
    lines: list[str] = []
    remaining = list(bindings) if bindings is not None else None

    def fill(match: re.Match[str]) -> str:
        name = match.group(1)
        display = name.lower()
        if remaining is None:
            value = _read_line(session, f"Enter value for {display}: ")
            if value is None:
                raise ShellEOF()
        else:
            for i, (bname, bvalue) in enumerate(remaining):
                if bname.upper() == name.upper():
                    del remaining[i]
                    value = bvalue
                    break
            else:
                raise SubstitutionError(name, lines)
            lines.append(f"Enter value for {display}: {value}")
        session.subst_cache[name.upper()] = value
        return value

    return _SUBST.sub(fill, text), lines


def render_result_set(rs: ResultSet) -> list[str]:
    if not rs.rows:
        return ["no rows selected"]
    widths = []
    for i, header in enumerate(rs.headers):
        width = len(header)
        for row in rs.rows:
            width = max(width, len(_cell_text(row[i])))
        widths.append(width)
    lines = [" ".join(h.ljust(w)
                      for h, w in zip(rs.headers, widths)).rstrip()]
    lines.append(" ".join("-" * w for w in widths))
    for row in rs.rows:
        cells = []
        for value, width in zip(row, widths):
            text = _cell_text(value)
            if isinstance(value, Decimal):
                cells.append(text.rjust(width))
            else:
                cells.append(text.ljust(width))
        lines.append(" ".join(cells).rstrip())
    lines.append("")
    return lines


def _cell_text(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Decimal):
        return format_number(value)
    if isinstance(value, str):
        return value
    return format_date(value)


def _outcome_lines(outcome) -> list[str]:
    if isinstance(outcome, Feedback):
        return ["", outcome.message, ""]
    if isinstance(outcome, Listing):
        return [*outcome.lines, ""]
    assert isinstance(outcome, ResultSet)
    return ["", *render_result_set(outcome)]


def execute_statement(session: Session, text: str,
                      bindings: list[tuple[str, str]] | None = None,
                      ) -> list[str]:
    """Run one statement; the returned lines are its output block."""
    try:
        resolved, subst_lines = substitute_variables(session, text, bindings)
    except SubstitutionError as err:
        session.error_count += 1
        return [*err.lines,
                f'no binding for substitution variable "{err.name}"', ""]
    try:
        stmt = parse_text(resolved)
        outcome = execute(session.db, stmt)
    except OraError as err:
        err.statement_text = resolved
        session.error_count += 1
        return [*subst_lines, *render_error(err), ""]
    return [*subst_lines, *_outcome_lines(outcome)]


def _emit(session: Session, lines: list[str]) -> None:
    for line in lines:
        session.out.write(line + "\n")


def repl(session: Session) -> None:
    while True:
        text = read_statement(session)
        if text is None:
            return
        try:
            block = execute_statement(session, text)
        except ShellEOF:
            return
        _emit(session, block)


def run_script(session: Session, path: str) -> None:
    """Execute a statement file, writing the full transcript.

    Lines starting with "--" are not echoed; "-- bind name=value"
    lines supply substitution values for the next statement.  The
    transcript matches what a piped interactive session typing the
    same lines would produce.
    """
    with open(path) as fh:
        lines = fh.read().splitlines()
    i = 0
    binds: list[tuple[str, str]] = []
    while i < len(lines):
        stripped = lines[i].strip()
        if not stripped:
            i += 1
            continue
        if stripped.startswith("--"):
            body = stripped[2:].strip()
            if body.startswith("bind "):
                name, eq, value = body[4:].strip().partition("=")
                if eq:
                    binds.append((name.strip(), value))
            i += 1
            continue
        stmt_lines: list[str] = []
        terminated = False
        while i < len(lines):
            line = lines[i]
            if not session.quiet:
                prefix = (PROMPT if not stmt_lines
                          else continuation_prompt(len(stmt_lines) + 1))
                session.out.write(prefix + line + "\n")
            i += 1
            if line.strip() == "/" and stmt_lines:
                terminated = True
                break
            if line.rstrip().endswith(";"):
                stmt_lines.append(strip_terminator(line))
                terminated = True
                break
            stmt_lines.append(line)
        if not terminated:
            break
        block = execute_statement(session, "\n".join(stmt_lines), binds)
        binds = []
        _emit(session, block)
    if not session.quiet:
        session.out.write(PROMPT + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="handy-sql",
        description="Interactive shell for a small Oracle-flavored "
                    "SQL engine.")
    parser.add_argument("--db", metavar="FILE",
                        help="load this snapshot on start and save it "
                             "back on exit")
    parser.add_argument("--script", metavar="FILE",
                        help="run statements from FILE instead of the REPL")
    parser.add_argument("--strict", action="store_true",
                        help="exit 1 if any statement errored")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress prompts and input echo")
    args = parser.parse_args(argv)

    if args.db and os.path.exists(args.db):
        try:
            db = persistence.load(args.db)
        except persistence.SnapshotError as err:
            print(f"handy-sql: {args.db}: {err}", file=sys.stderr)
            return 2
    else:
        db = Database()

    session = Session(db, out=sys.stdout, instream=sys.stdin,
                      echo_input=not sys.stdin.isatty(), quiet=args.quiet)
    if args.script:
        try:
            run_script(session, args.script)
        except OSError as err:
            print(f"handy-sql: {err}", file=sys.stderr)
            return 2
    else:
        repl(session)

    if args.db:
        try:
            persistence.save(db, args.db)
        except OSError as err:
            print(f"handy-sql: {err}", file=sys.stderr)
            return 2
    if args.strict and session.error_count:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
