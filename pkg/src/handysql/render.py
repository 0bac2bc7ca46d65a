"""Canonical SQL text for parsed statements.

render then parse is the identity on statement trees (positions aside),
which is what the round-trip tests lean on.  Written type spellings are
emitted exactly as parsed; normalization is not this module's job.
"""

from __future__ import annotations

from decimal import Decimal

from .lexer import Token, TokenKind
from .nodes import (
    AggregateCall, AlterAddConstraint, AlterModify, BoolOp, CheckBody,
    ColumnRef, Comparison, CreateTable, Describe, Expr, FallbackBody,
    Insert, IsNull, Literal, Not, Predicate, PrimaryKeyBody, Select,
    Statement, TypeSpec, UniqueBody,
)
from .values import format_number

_PREC_OR = 1
_PREC_AND = 2
_PREC_NOT = 3
_PREC_ATOM = 4


def render_statement(stmt: Statement) -> str:
    if isinstance(stmt, CreateTable):
        cols = ", ".join(
            f"{c.name} {render_type(c.type_spec)}" for c in stmt.columns)
        return f"CREATE TABLE {stmt.table} ({cols})"
    if isinstance(stmt, Describe):
        return f"DESC {stmt.table}"
    if isinstance(stmt, Insert):
        cols = f" ({', '.join(stmt.columns)})" if stmt.columns else ""
        vals = ", ".join(_literal_text(v) for v in stmt.values)
        return f"INSERT INTO {stmt.table}{cols} VALUES ({vals})"
    if isinstance(stmt, Select):
        return _render_select(stmt)
    if isinstance(stmt, AlterAddConstraint):
        return (f"ALTER TABLE {stmt.table} ADD CONSTRAINT {stmt.name} "
                + _render_body(stmt.body))
    if isinstance(stmt, AlterModify):
        tail = f" {stmt.nullability}" if stmt.nullability else ""
        return (f"ALTER TABLE {stmt.table} MODIFY {stmt.change.name} "
                f"{render_type(stmt.change.type_spec)}{tail}")
    raise AssertionError(f"unknown statement {stmt!r}")


def render_type(spec: TypeSpec) -> str:
    if spec.args:
        return f"{spec.keyword}({','.join(str(a) for a in spec.args)})"
    return spec.keyword


def render_expr(expr: Expr) -> str:
    if isinstance(expr, ColumnRef):
        if expr.qualifier:
            return f"{expr.qualifier}.{expr.name}"
        return expr.name
    if isinstance(expr, Literal):
        return _literal_text(expr)
    if isinstance(expr, AggregateCall):
        inner = render_expr(expr.arg) if expr.arg is not None else "*"
        return f"{expr.func}({inner})"
    raise AssertionError(f"unknown expression {expr!r}")


def render_predicate(pred: Predicate) -> str:
    return _render_pred(pred, 0)


def _render_pred(pred: Predicate, parent_prec: int) -> str:
    if isinstance(pred, Comparison):
        text = (f"{render_expr(pred.left)} {pred.op} "
                f"{render_expr(pred.right)}")
        prec = _PREC_ATOM
    elif isinstance(pred, IsNull):
        verb = "IS NOT NULL" if pred.negated else "IS NULL"
        text = f"{render_expr(pred.operand)} {verb}"
        prec = _PREC_ATOM
    elif isinstance(pred, Not):
        text = "NOT " + _render_pred(pred.operand, _PREC_NOT)
        prec = _PREC_NOT
    elif isinstance(pred, BoolOp):
        prec = _PREC_AND if pred.op == "AND" else _PREC_OR
        # Left-associative: an equal-precedence right child needs parens
        # to keep its shape through a reparse.
        left = _render_pred(pred.left, prec)
        right = _render_pred(pred.right, prec + 1)
        text = f"{left} {pred.op} {right}"
    else:
        raise AssertionError(f"unknown predicate {pred!r}")
    if prec < parent_prec:
        return f"({text})"
    return text


def _render_select(stmt: Select) -> str:
    if stmt.items is None:
        items = "*"
    else:
        parts = []
        for item in stmt.items:
            text = render_expr(item.expr)
            if item.alias is not None:
                alias = (f'"{item.alias}"' if item.alias_quoted
                         else item.alias)
                text = f"{text} {alias}"
            parts.append(text)
        items = ", ".join(parts)
    refs = [t.table + (f" {t.alias}" if t.alias else "") for t in stmt.tables]
    if stmt.join_on is not None:
        source = (f"{refs[0]} INNER JOIN {refs[1]} "
                  f"ON {render_predicate(stmt.join_on)}")
    else:
        source = ", ".join(refs)
    text = f"SELECT {items} FROM {source}"
    if stmt.where is not None:
        text += f" WHERE {render_predicate(stmt.where)}"
    return text


def _render_body(body) -> str:
    if isinstance(body, PrimaryKeyBody):
        return f"PRIMARY KEY ({', '.join(body.columns)})"
    if isinstance(body, UniqueBody):
        return f"UNIQUE ({', '.join(body.columns)})"
    if isinstance(body, CheckBody):
        return f"CHECK ({render_predicate(body.predicate)})"
    if isinstance(body, FallbackBody):
        return " ".join(_token_text(t) for t in body.tokens)
    raise AssertionError(f"unknown constraint body {body!r}")


def _token_text(tok: Token) -> str:
    if tok.kind is TokenKind.STRING:
        return "'" + tok.lexeme.replace("'", "''") + "'"
    if tok.kind is TokenKind.QUOTED_IDENT:
        return f'"{tok.lexeme}"'
    return tok.lexeme


def _literal_text(lit: Literal) -> str:
    if lit.value is None:
        return "NULL"
    if isinstance(lit.value, Decimal):
        return format_number(lit.value)
    return "'" + lit.value.replace("'", "''") + "'"
