"""Shared detection context and AST convenience helpers for rule checkers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ..java_syntax import nodes as n
from ..java_syntax.lexer import SourceFile, Span, Token
from .model import SmellRule, Violation


@dataclass
class RuleContext:
    source: SourceFile
    unit: n.CompilationUnit
    tokens: list[Token]  # lossless stream
    sig: list[Token]  # significant tokens only

    def snippet(self, span: Span) -> str:
        return self.source.line_text(span.start_line)

    def violation(self, rule: SmellRule, span: Span, message: str) -> Violation:
        return Violation(
            rule_id=rule.rule_id,
            file=self.source.path,
            span=span,
            message=message,
            snippet=self.snippet(span),
        )

    def offset_of(self, line: int, col: int) -> int:
        return self.source.line_index[line - 1] + col - 1

    def first_on_line(self, span: Span) -> bool:
        """True when nothing but whitespace precedes the span on its line."""
        text = self.source.line_text(span.start_line)
        return text[: span.start_col - 1].strip() == ""


def bodies(unit: n.CompilationUnit) -> Iterator[tuple[n.TypeDecl, n.MethodDecl | n.Initializer, n.Block]]:
    """Every executable body in the unit: (owner type, declaration, block)."""
    for decl in unit.all_types():
        for member in decl.members:
            if isinstance(member, n.MethodDecl) and member.body is not None:
                yield decl, member, member.body
            elif isinstance(member, n.Initializer):
                yield decl, member, member.body


def blocks_in(body: n.Block) -> Iterator[n.Block]:
    for node in n.walk(body):
        if isinstance(node, n.Block):
            yield node


def local_decls(body: n.Block) -> Iterator[tuple[n.LocalVarDecl, n.VarDeclarator, str]]:
    """All local declarations with their origin: plain, for-init, or resource."""
    for node in n.walk(body):
        if isinstance(node, n.ForStmt):
            for stmt in node.init:
                if isinstance(stmt, n.LocalVarDecl):
                    for d in stmt.declarators:
                        yield stmt, d, "for"
        elif isinstance(node, n.TryStmt):
            for res in node.resources:
                for d in res.declarators:
                    yield res, d, "resource"
        elif isinstance(node, n.LocalVarDecl):
            if _is_for_init_or_resource(node, body):
                continue
            for d in node.declarators:
                yield node, d, "plain"


def _is_for_init_or_resource(decl: n.LocalVarDecl, body: n.Block) -> bool:
    for node in n.walk(body):
        if isinstance(node, n.ForStmt) and decl in node.init:
            return True
        if isinstance(node, n.TryStmt) and decl in node.resources:
            return True
    return False


def names_used(node: n.Node) -> set[str]:
    """Identifiers read via simple names or member access anywhere below node."""
    out: set[str] = set()
    for sub in n.walk(node):
        if isinstance(sub, n.Name):
            out.add(sub.identifier)
        elif isinstance(sub, n.FieldAccess):
            out.add(sub.name)
    return out


def simple_names(node: n.Node) -> set[str]:
    """Identifiers used as simple names below node."""
    return {sub.identifier for sub in n.walk(node) if isinstance(sub, n.Name)}


def call_names(node: n.Node) -> set[str]:
    out: set[str] = set()
    for sub in n.walk(node):
        if isinstance(sub, n.MethodCall):
            out.add(sub.name)
        elif isinstance(sub, n.MethodRef):
            out.add(sub.name)
    return out


def strip_parens(expr: n.Expr) -> n.Expr:
    while isinstance(expr, n.Paren):
        expr = expr.expr
    return expr


def is_bool_literal(expr: n.Expr) -> bool:
    from ..java_syntax.lexer import TokenKind

    e = strip_parens(expr)
    return isinstance(e, n.Literal) and e.kind is TokenKind.BOOL


def expr_source_name(expr: n.Expr) -> str | None:
    """Dotted source text for simple name chains (a, a.b, this.a), else None."""
    e = strip_parens(expr)
    if isinstance(e, n.Name):
        return e.identifier
    if isinstance(e, n.ThisExpr):
        return "this"
    if isinstance(e, n.FieldAccess):
        base = expr_source_name(e.receiver)
        return f"{base}.{e.name}" if base else None
    return None
