"""Row-level predicate evaluation shared by WHERE, ON and CHECK.

The caller supplies a resolver mapping column references to runtime
values; this module only knows Kleene logic and value comparison.
Aggregate calls are illegal inside predicates (934).
"""

from __future__ import annotations

from typing import Callable

from .errors import OraError
from .nodes import (
    AggregateCall, BoolOp, ColumnRef, Comparison, Expr, IsNull, Literal,
    Not, Predicate,
)
from .values import SqlValue, Tristate, and3, compare_values, from_bool, not3, or3

Resolver = Callable[[ColumnRef], SqlValue]


def eval_expr(expr: Expr, resolve: Resolver) -> SqlValue:
    if isinstance(expr, Literal):
        return expr.value
    if isinstance(expr, ColumnRef):
        return resolve(expr)
    if isinstance(expr, AggregateCall):
        raise OraError(934, expr.line, expr.column)
    raise AssertionError(f"unknown expression {expr!r}")


def eval_predicate(pred: Predicate, resolve: Resolver) -> Tristate:
    if isinstance(pred, Comparison):
        left = eval_expr(pred.left, resolve)
        right = eval_expr(pred.right, resolve)
        try:
            return compare_values(left, right, pred.op)
        except OraError as err:
            raise OraError(err.code, pred.line, pred.column) from None
    if isinstance(pred, IsNull):
        is_null = eval_expr(pred.operand, resolve) is None
        return from_bool(is_null != pred.negated)
    if isinstance(pred, Not):
        return not3(eval_predicate(pred.operand, resolve))
    if isinstance(pred, BoolOp):
        left = eval_predicate(pred.left, resolve)
        right = eval_predicate(pred.right, resolve)
        return and3(left, right) if pred.op == "AND" else or3(left, right)
    raise AssertionError(f"unknown predicate {pred!r}")


def predicate_columns(pred: Predicate) -> list[ColumnRef]:
    """Every column reference inside a predicate, in syntax order."""
    found: list[ColumnRef] = []

    def walk_expr(expr: Expr) -> None:
        if isinstance(expr, ColumnRef):
            found.append(expr)
        elif isinstance(expr, AggregateCall) and expr.arg is not None:
            found.append(expr.arg)

    def walk(p: Predicate) -> None:
        if isinstance(p, Comparison):
            walk_expr(p.left)
            walk_expr(p.right)
        elif isinstance(p, IsNull):
            walk_expr(p.operand)
        elif isinstance(p, Not):
            walk(p.operand)
        elif isinstance(p, BoolOp):
            walk(p.left)
            walk(p.right)

    walk(pred)
    return found


def predicate_aggregates(pred: Predicate) -> list[AggregateCall]:
    found: list[AggregateCall] = []

    def walk_expr(expr: Expr) -> None:
        if isinstance(expr, AggregateCall):
            found.append(expr)

    def walk(p: Predicate) -> None:
        if isinstance(p, Comparison):
            walk_expr(p.left)
            walk_expr(p.right)
        elif isinstance(p, IsNull):
            walk_expr(p.operand)
        elif isinstance(p, Not):
            walk(p.operand)
        elif isinstance(p, BoolOp):
            walk(p.left)
            walk(p.right)

    walk(pred)
    return found
