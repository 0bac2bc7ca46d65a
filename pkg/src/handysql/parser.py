"""Recursive-descent parser with one-token lookahead.

Grammar violations raise positioned OraErrors: an absent expression is
936, junk where an alias or FROM belongs is 923, and anything outside
the documented failure shapes falls back to 900.  A constraint clause
that is neither PRIMARY KEY, UNIQUE nor CHECK parses into a fallback
body so the catalog can produce the add-column diagnostic.
"""

from __future__ import annotations

from decimal import Decimal

from .errors import OraError
from .lexer import AGGREGATE_FUNCS, Token, TokenKind, tokenize
from .nodes import (
    AggregateCall, AlterAddConstraint, AlterModify, BoolOp, CheckBody,
    ColumnClause, ColumnRef, Comparison, CreateTable, Describe, Expr,
    FallbackBody, Insert, IsNull, Literal, Not, Predicate, PrimaryKeyBody,
    Select, SelectItem, Statement, TableRef, TypeSpec, UniqueBody,
)

_COMPARE_PUNCT = {"=", "!=", "<>", "<", "<=", ">", ">="}
# Tokens that legitimately follow an expression slot; hitting one where
# an expression should start means the expression is missing (936).
_EXPR_TERMINATORS = {",", ")"}


class _Parser:
    def __init__(self, tokens: list[Token]):
        assert tokens, "parser requires a non-empty token stream"
        self.tokens = tokens
        self.pos = 0

    # -- stream helpers ------------------------------------------------

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def error_anchor(self) -> Token:
        """Token to blame when the stream ends too early."""
        return self.tokens[min(self.pos, len(self.tokens) - 1)]

    def fail(self, code: int, tok: Token | None = None) -> OraError:
        anchor = tok if tok is not None else self.error_anchor()
        return OraError(code, anchor.line, anchor.column)

    def expect_kw(self, word: str) -> Token:
        tok = self.peek()
        if tok is None or not tok.is_kw(word):
            raise self.fail(900)
        return self.advance()

    def expect_punct(self, mark: str) -> Token:
        tok = self.peek()
        if tok is None or not tok.is_punct(mark):
            raise self.fail(900)
        return self.advance()

    def expect_ident(self) -> Token:
        tok = self.peek()
        if tok is None or tok.kind is not TokenKind.IDENT:
            raise self.fail(900)
        return self.advance()

    def expect_end(self) -> None:
        if not self.at_end():
            raise self.fail(900, self.peek())

    # -- statements ----------------------------------------------------

    def statement(self) -> Statement:
        tok = self.peek()
        if tok is None or tok.kind is not TokenKind.KEYWORD:
            raise self.fail(900, tok)
        if tok.lexeme == "CREATE":
            return self.create_table()
        if tok.lexeme in ("DESC", "DESCRIBE"):
            return self.describe()
        if tok.lexeme == "INSERT":
            return self.insert()
        if tok.lexeme == "SELECT":
            return self.select()
        if tok.lexeme == "ALTER":
            return self.alter()
        raise self.fail(900, tok)

    def create_table(self) -> CreateTable:
        self.expect_kw("CREATE")
        self.expect_kw("TABLE")
        name = self.expect_ident()
        self.expect_punct("(")
        columns = [self.column_def()]
        while self.peek() is not None and self.peek().is_punct(","):
            self.advance()
            columns.append(self.column_def())
        self.expect_punct(")")
        self.expect_end()
        return CreateTable(name.lexeme, tuple(columns),
                           line=name.line, column=name.column)

    def column_def(self) -> ColumnClause:
        name = self.expect_ident()
        spec = self.type_spec()
        return ColumnClause(name.lexeme, spec,
                            line=name.line, column=name.column)

    def type_spec(self) -> TypeSpec:
        tok = self.peek()
        if tok is None or tok.kind is not TokenKind.KEYWORD:
            raise self.fail(900, tok)
        if tok.lexeme == "NUMBER":
            self.advance()
            args: tuple[int, ...] = ()
            if self.peek() is not None and self.peek().is_punct("("):
                self.advance()
                first = self.unsigned_int()
                if self.peek() is not None and self.peek().is_punct(","):
                    self.advance()
                    args = (first, self.unsigned_int())
                else:
                    args = (first,)
                self.expect_punct(")")
            return TypeSpec("NUMBER", args, line=tok.line, column=tok.column)
        if tok.lexeme in ("VARCHAR", "VARCHAR2"):
            self.advance()
            self.expect_punct("(")
            length = self.unsigned_int()
            self.expect_punct(")")
            return TypeSpec(tok.lexeme, (length,),
                            line=tok.line, column=tok.column)
        if tok.lexeme in ("INTEGER", "DATE"):
            self.advance()
            return TypeSpec(tok.lexeme, (), line=tok.line, column=tok.column)
        raise self.fail(900, tok)

    def unsigned_int(self) -> int:
        tok = self.peek()
        if (tok is None or tok.kind is not TokenKind.NUMBER
                or not tok.lexeme.isdigit()):
            raise self.fail(900)
        self.advance()
        return int(tok.lexeme)

    def describe(self) -> Describe:
        self.advance()
        name = self.expect_ident()
        self.expect_end()
        return Describe(name.lexeme, line=name.line, column=name.column)

    def insert(self) -> Insert:
        self.expect_kw("INSERT")
        self.expect_kw("INTO")
        name = self.expect_ident()
        columns: tuple[str, ...] | None = None
        column_positions: tuple[tuple[int, int], ...] = ()
        if self.peek() is not None and self.peek().is_punct("("):
            self.advance()
            cols = [self.expect_ident()]
            while self.peek() is not None and self.peek().is_punct(","):
                self.advance()
                cols.append(self.expect_ident())
            self.expect_punct(")")
            columns = tuple(t.lexeme for t in cols)
            column_positions = tuple((t.line, t.column) for t in cols)
        self.expect_kw("VALUES")
        self.expect_punct("(")
        values = [self.value_literal()]
        while self.peek() is not None and self.peek().is_punct(","):
            self.advance()
            values.append(self.value_literal())
        rparen = self.expect_punct(")")
        self.expect_end()
        return Insert(name.lexeme, columns, tuple(values),
                      line=name.line, column=name.column,
                      column_positions=column_positions,
                      values_end=(rparen.line, rparen.column))

    def value_literal(self) -> Literal:
        tok = self.peek()
        if tok is None:
            raise self.fail(936)
        if tok.kind is TokenKind.NUMBER:
            self.advance()
            return Literal(Decimal(tok.lexeme),
                           line=tok.line, column=tok.column)
        if tok.kind is TokenKind.STRING:
            self.advance()
            return Literal(tok.lexeme, line=tok.line, column=tok.column)
        if tok.is_kw("NULL"):
            self.advance()
            return Literal(None, line=tok.line, column=tok.column)
        if tok.is_punct(*_EXPR_TERMINATORS):
            raise self.fail(936, tok)
        raise self.fail(900, tok)

    def select(self) -> Select:
        self.expect_kw("SELECT")
        items: tuple[SelectItem, ...] | None
        if self.peek() is not None and self.peek().is_punct("*"):
            self.advance()
            items = None
        else:
            parsed = [self.select_item()]
            while self.peek() is not None and self.peek().is_punct(","):
                self.advance()
                parsed.append(self.select_item())
            items = tuple(parsed)
        tok = self.peek()
        if tok is None or not tok.is_kw("FROM"):
            raise self.fail(923, tok)
        self.advance()
        tables, join_on = self.table_refs()
        where = None
        if self.peek() is not None and self.peek().is_kw("WHERE"):
            self.advance()
            where = self.predicate()
        self.expect_end()
        return Select(items, tables, join_on=join_on, where=where)

    def select_item(self) -> SelectItem:
        expr = self.expression()
        tok = self.peek()
        if tok is None:
            return SelectItem(expr)
        if tok.is_kw("AS"):
            self.advance()
            alias = self.peek()
            if alias is None:
                raise self.fail(900)
            if alias.kind is TokenKind.STRING:
                raise self.fail(923, alias)
            if alias.kind is TokenKind.IDENT:
                self.advance()
                return SelectItem(expr, alias.lexeme)
            if alias.kind is TokenKind.QUOTED_IDENT:
                self.advance()
                return SelectItem(expr, alias.lexeme, alias_quoted=True)
            raise self.fail(900, alias)
        if tok.kind is TokenKind.STRING:
            raise self.fail(923, tok)
        if tok.kind is TokenKind.IDENT:
            self.advance()
            return SelectItem(expr, tok.lexeme)
        if tok.kind is TokenKind.QUOTED_IDENT:
            self.advance()
            return SelectItem(expr, tok.lexeme, alias_quoted=True)
        return SelectItem(expr)

    def expression(self) -> Expr:
        tok = self.peek()
        if tok is None:
            raise self.fail(936)
        if tok.kind is TokenKind.KEYWORD and tok.lexeme in AGGREGATE_FUNCS:
            self.advance()
            self.expect_punct("(")
            arg: ColumnRef | None
            star = self.peek()
            if star is not None and star.is_punct("*"):
                if tok.lexeme != "COUNT":
                    raise self.fail(900, star)
                self.advance()
                arg = None
            else:
                arg = self.column_ref()
            self.expect_punct(")")
            return AggregateCall(tok.lexeme, arg,
                                 line=tok.line, column=tok.column)
        if tok.kind is TokenKind.IDENT:
            return self.column_ref()
        if tok.kind is TokenKind.NUMBER:
            self.advance()
            return Literal(Decimal(tok.lexeme),
                           line=tok.line, column=tok.column)
        if tok.kind is TokenKind.STRING:
            self.advance()
            return Literal(tok.lexeme, line=tok.line, column=tok.column)
        if tok.is_kw("NULL"):
            self.advance()
            return Literal(None, line=tok.line, column=tok.column)
        if tok.is_punct(*_EXPR_TERMINATORS) or tok.is_kw("FROM", "WHERE"):
            raise self.fail(936, tok)
        raise self.fail(900, tok)

    def column_ref(self) -> ColumnRef:
        first = self.expect_ident()
        if self.peek() is not None and self.peek().is_punct("."):
            self.advance()
            name = self.expect_ident()
            return ColumnRef(name.lexeme, qualifier=first.lexeme,
                             line=first.line, column=first.column)
        return ColumnRef(first.lexeme, line=first.line, column=first.column)

    def table_refs(self) -> tuple[tuple[TableRef, ...], Predicate | None]:
        first = self.table_ref()
        tok = self.peek()
        if tok is not None and tok.is_kw("INNER"):
            self.advance()
            self.expect_kw("JOIN")
            second = self.table_ref()
            self.expect_kw("ON")
            return (first, second), self.predicate()
        tables = [first]
        while self.peek() is not None and self.peek().is_punct(","):
            self.advance()
            tables.append(self.table_ref())
        if self.peek() is not None and self.peek().is_kw("INNER"):
            raise self.fail(900, self.peek())
        return tuple(tables), None

    def table_ref(self) -> TableRef:
        name = self.expect_ident()
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.IDENT:
            self.advance()
            return TableRef(name.lexeme, tok.lexeme,
                            line=name.line, column=name.column)
        return TableRef(name.lexeme, line=name.line, column=name.column)

    # -- predicates ----------------------------------------------------

    def predicate(self) -> Predicate:
        left = self.pred_and()
        while self.peek() is not None and self.peek().is_kw("OR"):
            self.advance()
            left = BoolOp("OR", left, self.pred_and())
        return left

    def pred_and(self) -> Predicate:
        left = self.pred_not()
        while self.peek() is not None and self.peek().is_kw("AND"):
            self.advance()
            left = BoolOp("AND", left, self.pred_not())
        return left

    def pred_not(self) -> Predicate:
        tok = self.peek()
        if tok is not None and tok.is_kw("NOT"):
            self.advance()
            return Not(self.pred_not())
        return self.pred_primary()

    def pred_primary(self) -> Predicate:
        tok = self.peek()
        if tok is not None and tok.is_punct("("):
            self.advance()
            inner = self.predicate()
            self.expect_punct(")")
            return inner
        return self.comparison()

    def comparison(self) -> Predicate:
        left = self.expression()
        tok = self.peek()
        if tok is not None and tok.is_kw("IS"):
            self.advance()
            negated = False
            if self.peek() is not None and self.peek().is_kw("NOT"):
                self.advance()
                negated = True
            null_tok = self.peek()
            if null_tok is None or not null_tok.is_kw("NULL"):
                raise self.fail(900)
            self.advance()
            return IsNull(left, negated, line=tok.line, column=tok.column)
        if tok is None or not tok.is_punct(*_COMPARE_PUNCT):
            raise self.fail(900, tok)
        self.advance()
        op = "!=" if tok.lexeme == "<>" else tok.lexeme
        right = self.expression()
        return Comparison(op, left, right, line=tok.line, column=tok.column)

    # -- alter ---------------------------------------------------------

    def alter(self) -> Statement:
        self.expect_kw("ALTER")
        self.expect_kw("TABLE")
        table = self.expect_ident()
        tok = self.peek()
        if tok is not None and tok.is_kw("ADD"):
            self.advance()
            return self.alter_add(table)
        if tok is not None and tok.is_kw("MODIFY"):
            self.advance()
            return self.alter_modify(table)
        raise self.fail(900, tok)

    def alter_add(self, table: Token) -> AlterAddConstraint:
        self.expect_kw("CONSTRAINT")
        name = self.expect_ident()
        tok = self.peek()
        if tok is not None and tok.is_kw("PRIMARY"):
            self.advance()
            self.expect_kw("KEY")
            cols = self.paren_ident_list()
            self.expect_end()
            body: CheckBody | PrimaryKeyBody | UniqueBody | FallbackBody
            body = PrimaryKeyBody(cols)
        elif tok is not None and tok.is_kw("UNIQUE"):
            self.advance()
            cols = self.paren_ident_list()
            self.expect_end()
            body = UniqueBody(cols)
        elif tok is not None and tok.is_kw("CHECK"):
            self.advance()
            self.expect_punct("(")
            pred = self.predicate()
            self.expect_punct(")")
            self.expect_end()
            body = CheckBody(pred)
        else:
            # Not a recognized constraint clause: keep the tail verbatim
            # and let the catalog decide what it was trying to be.
            tail = tuple(self.tokens[self.pos:])
            self.pos = len(self.tokens)
            body = FallbackBody(tail)
        return AlterAddConstraint(table.lexeme, name.lexeme, body,
                                  line=name.line, column=name.column,
                                  table_pos=(table.line, table.column))

    def paren_ident_list(self) -> tuple[str, ...]:
        self.expect_punct("(")
        cols = [self.expect_ident()]
        while self.peek() is not None and self.peek().is_punct(","):
            self.advance()
            cols.append(self.expect_ident())
        self.expect_punct(")")
        return tuple(t.lexeme for t in cols)

    def alter_modify(self, table: Token) -> AlterModify:
        col = self.expect_ident()
        spec = self.type_spec()
        nullability = None
        tok = self.peek()
        if tok is not None and tok.is_kw("NOT"):
            self.advance()
            self.expect_kw("NULL")
            nullability = "NOT NULL"
        elif tok is not None and tok.is_kw("NULL"):
            self.advance()
            nullability = "NULL"
        self.expect_end()
        change = ColumnClause(col.lexeme, spec, line=col.line,
                              column=col.column)
        return AlterModify(table.lexeme, change, nullability,
                           line=col.line, column=col.column,
                           table_pos=(table.line, table.column))


def parse(tokens: list[Token]) -> Statement:
    """Parse one statement from a non-empty token stream."""
    return _Parser(tokens).statement()


def parse_text(text: str) -> Statement:
    return parse(tokenize(text))


def parse_standalone_predicate(text: str) -> Predicate:
    """Parse a bare predicate, used when reloading stored CHECK bodies."""
    parser = _Parser(tokenize(text))
    pred = parser.predicate()
    parser.expect_end()
    return pred
