"""Checkers for the implementation-smell rules.

Each checker takes the shared RuleContext plus its SmellRule (for thresholds)
and returns the violations it found.  Checkers are pure and deterministic;
ordering is normalized later by the engine.
"""

from __future__ import annotations

import re

from ..java_syntax import nodes as n
from ..java_syntax.lexer import TokenKind
from .context import (
    RuleContext,
    bodies,
    call_names,
    expr_source_name,
    is_bool_literal,
    local_decls,
    simple_names,
    strip_parens,
)
from .model import SmellRule, Violation

_CONSTANT_NAME = re.compile(r"^[A-Z][A-Z0-9]*(_[A-Z0-9]+)*$")


def _declared_names(unit: n.CompilationUnit):
    """(name, span, is_constant) for every declaration the naming rules see."""
    for decl in unit.all_types():
        yield decl.name, decl.name_span, False
        for member in decl.members:
            if isinstance(member, n.FieldDecl):
                constant = member.is_static_final or decl.kind == "interface"
                for d in member.declarators:
                    yield d.name, d.name_span, constant
            elif isinstance(member, n.MethodDecl):
                if not member.is_constructor:
                    yield member.name, member.name_span, False
                for p in member.params:
                    yield p.name, p.name_span, False
    for _, _, body in bodies(unit):
        for _, d, origin in local_decls(body):
            if origin != "resource":
                yield d.name, d.name_span, False
        for node in n.walk(body):
            if isinstance(node, n.ForEachStmt):
                yield node.var_name, node.var_name_span, False


# ---- inconsistent-naming ---------------------------------------------------

def check_local_variable_name(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    pattern = re.compile(rule.threshold("pattern"))
    out = []
    for _, _, body in bodies(ctx.unit):
        for _, d, _ in local_decls(body):
            if not pattern.match(d.name):
                out.append(ctx.violation(rule, d.name_span, f"local variable '{d.name}' is not lowerCamelCase"))
        for node in n.walk(body):
            if isinstance(node, n.ForEachStmt) and not pattern.match(node.var_name):
                out.append(ctx.violation(rule, node.var_name_span, f"loop variable '{node.var_name}' is not lowerCamelCase"))
    return out


def check_parameter_name(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    pattern = re.compile(rule.threshold("pattern"))
    out = []
    for decl in ctx.unit.all_types():
        for member in decl.members:
            if isinstance(member, n.MethodDecl):
                for p in member.params:
                    if not pattern.match(p.name):
                        out.append(ctx.violation(rule, p.name_span, f"parameter '{p.name}' is not lowerCamelCase"))
    return out


def check_method_name(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    pattern = re.compile(rule.threshold("pattern"))
    out = []
    for decl in ctx.unit.all_types():
        for m in decl.methods:
            if not pattern.match(m.name):
                out.append(ctx.violation(rule, m.name_span, f"method '{m.name}' is not lowerCamelCase"))
    return out


def check_class_name(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    pattern = re.compile(rule.threshold("pattern"))
    out = []
    for decl in ctx.unit.all_types():
        if not pattern.match(decl.name):
            out.append(ctx.violation(rule, decl.name_span, f"type '{decl.name}' is not UpperCamelCase"))
    return out


def check_generics_name(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    pattern = re.compile(rule.threshold("pattern"))
    out = []
    for decl in ctx.unit.all_types():
        params = list(decl.type_params)
        for member in decl.members:
            if isinstance(member, n.MethodDecl):
                params.extend(member.type_params)
        for tp in params:
            if not pattern.match(tp.name):
                out.append(ctx.violation(rule, tp.span, f"type parameter '{tp.name}' should be a single capital"))
    return out


def check_abbreviation_as_word_in_name(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    limit = rule.threshold("max_consecutive_capitals")
    run = re.compile(r"[A-Z]{%d,}" % (limit + 1))
    out = []
    for name, span, is_constant in _declared_names(ctx.unit):
        if is_constant:
            continue
        if run.search(name):
            out.append(ctx.violation(rule, span, f"'{name}' embeds an abbreviation of more than {limit} capitals"))
    return out


def check_abstract_class_name(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    pattern = re.compile(rule.threshold("pattern"))
    out = []
    for decl in ctx.unit.all_types():
        if decl.kind == "class" and decl.is_abstract and not pattern.match(decl.name):
            out.append(ctx.violation(rule, decl.name_span, f"abstract class '{decl.name}' should be named Abstract..."))
    return out


def check_catch_parameter_name(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    pattern = re.compile(rule.threshold("pattern"))
    out = []
    for _, _, body in bodies(ctx.unit):
        for node in n.walk(body):
            if isinstance(node, n.CatchClause) and not pattern.match(node.name):
                out.append(ctx.violation(rule, node.name_span, f"catch parameter '{node.name}' breaks the naming convention"))
    return out


def check_constant_name(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    pattern = re.compile(rule.threshold("pattern"))
    out = []
    for decl in ctx.unit.all_types():
        for member in decl.members:
            if isinstance(member, n.FieldDecl) and (member.is_static_final or decl.kind == "interface"):
                for d in member.declarators:
                    if not pattern.match(d.name):
                        out.append(ctx.violation(rule, d.name_span, f"constant '{d.name}' is not UPPER_SNAKE_CASE"))
    return out


_ILLEGAL_WORDS = frozenset({"var", "record", "yield", "permits", "sealed"})


def check_illegal_identifier_name(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for name, span, _ in _declared_names(ctx.unit):
        if name.lower() in _ILLEGAL_WORDS:
            out.append(ctx.violation(rule, span, f"'{name}' is a restricted identifier"))
    return out


# ---- excessive-complexity ------------------------------------------------------

def check_simplify_boolean_expression(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for node in n.walk(ctx.unit):
        if isinstance(node, n.Binary) and node.op in ("==", "!=", "&&", "||"):
            if is_bool_literal(node.left) or is_bool_literal(node.right):
                out.append(ctx.violation(rule, node.span, f"boolean expression with literal can be simplified"))
        elif isinstance(node, n.Unary) and node.op == "!" and is_bool_literal(node.operand):
            out.append(ctx.violation(rule, node.span, "negated boolean literal"))
    return out


def _null_check(expr: n.Expr, op: str) -> str | None:
    e = strip_parens(expr)
    if isinstance(e, n.Binary) and e.op == op:
        left, right = strip_parens(e.left), strip_parens(e.right)
        if isinstance(right, n.Literal) and right.kind is TokenKind.NULL:
            return expr_source_name(left)
        if isinstance(left, n.Literal) and left.kind is TokenKind.NULL:
            return expr_source_name(right)
    return None


def _instanceof_name(expr: n.Expr, negated: bool) -> str | None:
    e = strip_parens(expr)
    if negated:
        if isinstance(e, n.Unary) and e.op == "!":
            e = strip_parens(e.operand)
        else:
            return None
    if isinstance(e, n.InstanceOf):
        return expr_source_name(e.expr)
    return None


def check_simplify_conditional(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for node in n.walk(ctx.unit):
        if not isinstance(node, n.Binary):
            continue
        if node.op == "&&":
            for a, b in ((node.left, node.right), (node.right, node.left)):
                name = _null_check(a, "!=")
                inst = _instanceof_name(b, negated=False)
                if name is not None and name == inst:
                    out.append(ctx.violation(rule, node.span, f"null check on '{name}' is implied by instanceof"))
                    break
        elif node.op == "||":
            for a, b in ((node.left, node.right), (node.right, node.left)):
                name = _null_check(a, "==")
                inst = _instanceof_name(b, negated=True)
                if name is not None and name == inst:
                    out.append(ctx.violation(rule, node.span, f"null check on '{name}' is implied by instanceof"))
                    break
    return out


def _bool_return(stmt: n.Stmt | None) -> bool:
    if stmt is None:
        return False
    if isinstance(stmt, n.Block):
        return len(stmt.statements) == 1 and _bool_return(stmt.statements[0])
    return isinstance(stmt, n.ReturnStmt) and stmt.value is not None and is_bool_literal(stmt.value)


def check_simplify_boolean_return(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for node in n.walk(ctx.unit):
        if not isinstance(node, n.Block):
            continue
        stmts = node.statements
        for i, stmt in enumerate(stmts):
            if not isinstance(stmt, n.IfStmt) or not _bool_return(stmt.then):
                continue
            if _bool_return(stmt.orelse):
                out.append(ctx.violation(rule, stmt.span, "if/else returning boolean literals"))
            elif stmt.orelse is None and i + 1 < len(stmts) and _bool_return(stmts[i + 1]):
                out.append(ctx.violation(rule, stmt.span, "if returning a boolean literal followed by the opposite return"))
    return out


def check_simplified_ternary(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for node in n.walk(ctx.unit):
        if isinstance(node, n.Ternary) and (is_bool_literal(node.if_true) or is_bool_literal(node.if_false)):
            out.append(ctx.violation(rule, node.span, "ternary with a boolean-literal branch"))
    return out


def check_line_length(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    limit = rule.threshold("max_line_length")
    out = []
    for line in range(1, ctx.source.line_count + 1):
        text = ctx.source.line_text(line)
        if len(text) > limit:
            span = n.Span(line, limit + 1, line, len(text) + 1)
            out.append(ctx.violation(rule, span, f"line is {len(text)} characters (max {limit})"))
    return out


def check_method_length(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    limit = rule.threshold("max_method_lines")
    out = []
    for decl in ctx.unit.all_types():
        for member in decl.members:
            if isinstance(member, n.MethodDecl) and member.body is not None:
                lines = member.body.span.end_line - member.span.start_line + 1
                if lines > limit:
                    out.append(ctx.violation(rule, member.name_span, f"method '{member.name}' spans {lines} lines (max {limit})"))
    return out


def check_excessive_parameter_list(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    limit = rule.threshold("max_parameters")
    out = []
    for decl in ctx.unit.all_types():
        for member in decl.members:
            if isinstance(member, n.MethodDecl) and len(member.params) > limit:
                out.append(
                    ctx.violation(rule, member.name_span, f"'{member.name}' takes {len(member.params)} parameters (max {limit})")
                )
    return out


# ---- redundancy ------------------------------------------------------------

def check_redundant_import(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    seen: set[tuple[str, bool, bool]] = set()
    own_package = ctx.unit.package.name if ctx.unit.package else None
    for imp in ctx.unit.imports:
        key = (imp.name, imp.is_static, imp.on_demand)
        if key in seen:
            out.append(ctx.violation(rule, imp.span, f"duplicate import of {imp.name}"))
            continue
        seen.add(key)
        if imp.is_static:
            continue
        if imp.on_demand and imp.name == "java.lang":
            out.append(ctx.violation(rule, imp.span, "java.lang is imported implicitly"))
        elif not imp.on_demand and imp.name.startswith("java.lang.") and imp.name.count(".") == 2:
            out.append(ctx.violation(rule, imp.span, "java.lang types are imported implicitly"))
        elif own_package is not None:
            container = imp.name if imp.on_demand else imp.name.rsplit(".", 1)[0]
            if container == own_package:
                out.append(ctx.violation(rule, imp.span, "import from the file's own package"))
    return out


def check_redundant_modifier(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for decl in ctx.unit.all_types():
        if decl.kind == "interface":
            for member in decl.members:
                if isinstance(member, n.MethodDecl):
                    for mod in ("public", "abstract"):
                        if mod in member.modifiers:
                            out.append(ctx.violation(rule, member.name_span, f"'{mod}' is redundant on an interface method"))
                elif isinstance(member, n.FieldDecl):
                    for mod in ("public", "static", "final"):
                        if mod in member.modifiers:
                            out.append(ctx.violation(rule, member.span, f"'{mod}' is redundant on an interface field"))
                elif isinstance(member, n.TypeDecl):
                    for mod in ("public", "static"):
                        if mod in member.modifiers:
                            out.append(ctx.violation(rule, member.name_span, f"'{mod}' is redundant on a nested interface type"))
        else:
            if "final" in decl.modifiers:
                for m in decl.methods:
                    if "final" in m.modifiers:
                        out.append(ctx.violation(rule, m.name_span, "'final' is redundant in a final class"))
            for member in decl.nested_types:
                if member.kind in ("interface", "enum") and "static" in member.modifiers:
                    out.append(ctx.violation(rule, member.name_span, f"'static' is redundant on a nested {member.kind}"))
    return out


def check_copy_paste(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    window = rule.threshold("min_duplicate_tokens")
    toks = ctx.sig
    lex = [t.lexeme for t in toks]
    total = len(lex)
    if total < 2 * window:
        return []
    out = []
    first_seen: dict[tuple[str, ...], int] = {}
    i = 0
    while i <= total - window:
        key = tuple(lex[i : i + window])
        j = first_seen.get(key)
        if j is not None and j + window <= i:
            length = window
            while i + length < total and j + length < i and lex[j + length] == lex[i + length]:
                length += 1
            span = n.Span(
                toks[i].span.start_line,
                toks[i].span.start_col,
                toks[i + length - 1].span.end_line,
                toks[i + length - 1].span.end_col,
            )
            out.append(
                ctx.violation(rule, span, f"{length} tokens duplicate line {toks[j].span.start_line}")
            )
            i += length
            continue
        if j is None:
            first_seen[key] = i
        i += 1
    return out


# ---- incompleteness ------------------------------------------------------------

def check_missing_switch_default(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for node in n.walk(ctx.unit):
        if isinstance(node, n.SwitchStmt) and not node.has_default:
            out.append(ctx.violation(rule, node.span, "switch without a default arm"))
    return out


_TODO = re.compile(r"\b(TODO|FIXME)\b")


def check_todo_comment(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for c in ctx.unit.comments:
        if _TODO.search(c.text):
            out.append(ctx.violation(rule, c.span, "comment marks unfinished work"))
    return out


def _is_empty_body(stmt: n.Stmt | None) -> bool:
    if isinstance(stmt, n.EmptyStmt):
        return True
    return isinstance(stmt, n.Block) and not stmt.statements


def check_empty_control_statement(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for node in n.walk(ctx.unit):
        if isinstance(node, n.IfStmt):
            if _is_empty_body(node.then):
                out.append(ctx.violation(rule, node.span, "empty if body"))
            if node.orelse is not None and not isinstance(node.orelse, n.IfStmt) and _is_empty_body(node.orelse):
                out.append(ctx.violation(rule, node.orelse.span, "empty else body"))
        elif isinstance(node, (n.WhileStmt, n.DoWhileStmt, n.ForStmt, n.ForEachStmt)):
            if _is_empty_body(node.body):
                out.append(ctx.violation(rule, node.span, "empty loop body"))
        elif isinstance(node, n.SwitchStmt):
            if not node.arms:
                out.append(ctx.violation(rule, node.span, "switch with no arms"))
        elif isinstance(node, n.Block):
            for stmt in node.statements:
                if isinstance(stmt, n.EmptyStmt):
                    out.append(ctx.violation(rule, stmt.span, "stray semicolon"))
    return out


def check_empty_catch_block(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for node in n.walk(ctx.unit):
        if isinstance(node, n.CatchClause) and not node.body.statements:
            out.append(ctx.violation(rule, node.span, f"empty catch block for '{node.name}'"))
    return out


def check_empty_block(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for node in n.walk(ctx.unit):
        if isinstance(node, n.TryStmt):
            if not node.body.statements:
                out.append(ctx.violation(rule, node.body.span, "empty try block"))
            if node.finally_block is not None and not node.finally_block.statements:
                out.append(ctx.violation(rule, node.finally_block.span, "empty finally block"))
        elif isinstance(node, n.SynchronizedStmt) and not node.body.statements:
            out.append(ctx.violation(rule, node.body.span, "empty synchronized block"))
        elif isinstance(node, n.Initializer) and not node.body.statements:
            out.append(ctx.violation(rule, node.span, "empty initializer block"))
    return out


# ---- improper-alignment -------------------------------------------------------

def check_indentation(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    width = rule.threshold("indent_width")
    out: list[Violation] = []

    def check(span: n.Span, depth: int, what: str) -> None:
        if not ctx.first_on_line(span):
            return
        expected = depth * width
        actual = span.start_col - 1
        if actual != expected:
            out.append(ctx.violation(rule, span, f"{what} indented {actual} columns, expected {expected}"))

    def walk_body(stmt: n.Stmt, depth: int) -> None:
        """A control-structure body: block children or single statement nest."""
        if isinstance(stmt, n.Block):
            for s in stmt.statements:
                walk_stmt(s, depth + 1)
        else:
            walk_stmt(stmt, depth + 1)

    def walk_if(stmt: n.IfStmt, depth: int) -> None:
        check(stmt.span, depth, "statement")
        walk_body(stmt.then, depth)
        if isinstance(stmt.orelse, n.IfStmt):
            walk_if(stmt.orelse, depth)
        elif stmt.orelse is not None:
            walk_body(stmt.orelse, depth)

    def walk_stmt(stmt: n.Stmt, depth: int) -> None:
        if isinstance(stmt, n.IfStmt):
            walk_if(stmt, depth)
            return
        if isinstance(stmt, n.Block):
            for s in stmt.statements:
                walk_stmt(s, depth + 1)
            return
        check(stmt.span, depth, "statement")
        if isinstance(stmt, (n.WhileStmt, n.ForStmt, n.ForEachStmt, n.DoWhileStmt)):
            walk_body(stmt.body, depth)
        elif isinstance(stmt, n.SwitchStmt):
            for arm in stmt.arms:
                check(arm.span, depth + 1, "case label")
                for s in arm.statements:
                    walk_stmt(s, depth + 2)
        elif isinstance(stmt, n.TryStmt):
            for s in stmt.body.statements:
                walk_stmt(s, depth + 1)
            for c in stmt.catches:
                for s in c.body.statements:
                    walk_stmt(s, depth + 1)
            if stmt.finally_block is not None:
                for s in stmt.finally_block.statements:
                    walk_stmt(s, depth + 1)
        elif isinstance(stmt, n.SynchronizedStmt):
            for s in stmt.body.statements:
                walk_stmt(s, depth + 1)
        elif isinstance(stmt, n.LabeledStmt):
            walk_stmt(stmt.stmt, depth)
        elif isinstance(stmt, n.LocalTypeDecl):
            walk_type(stmt.decl, depth)

    def walk_type(decl: n.TypeDecl, depth: int) -> None:
        check(decl.span, depth, "type declaration")
        for member in decl.members:
            if isinstance(member, n.TypeDecl):
                walk_type(member, depth + 1)
                continue
            check(member.span, depth + 1, "member declaration")
            if isinstance(member, n.MethodDecl) and member.body is not None:
                for s in member.body.statements:
                    walk_stmt(s, depth + 2)
            elif isinstance(member, n.Initializer):
                for s in member.body.statements:
                    walk_stmt(s, depth + 2)

    for decl in ctx.unit.types:
        walk_type(decl, 0)
    return out


def check_file_tab_character(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for line in range(1, ctx.source.line_count + 1):
        text = ctx.source.line_text(line)
        col = text.find("\t")
        if col >= 0:
            span = n.Span(line, col + 1, line, col + 2)
            out.append(ctx.violation(rule, span, "tab character"))
    return out


def check_need_braces(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for node in n.walk(ctx.unit):
        if isinstance(node, n.IfStmt):
            if not isinstance(node.then, n.Block):
                out.append(ctx.violation(rule, node.span, "if body without braces"))
            if node.orelse is not None and not isinstance(node.orelse, (n.Block, n.IfStmt)):
                out.append(ctx.violation(rule, node.orelse.span, "else body without braces"))
        elif isinstance(node, (n.WhileStmt, n.ForStmt, n.ForEachStmt, n.DoWhileStmt)):
            if not isinstance(node.body, n.Block):
                out.append(ctx.violation(rule, node.span, "loop body without braces"))
    return out


_ATOMS = (n.Literal, n.Name, n.FieldAccess, n.MethodCall, n.Paren, n.ThisExpr, n.SuperExpr, n.ClassLiteral, n.ArrayAccess)


def check_useless_parentheses(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    flagged: dict[int, n.Paren] = {}

    def flag(expr: n.Expr | None) -> None:
        if isinstance(expr, n.Paren):
            flagged[id(expr)] = expr

    for node in n.walk(ctx.unit):
        if isinstance(node, n.Paren) and isinstance(node.expr, _ATOMS):
            flag(node)
        elif isinstance(node, n.ReturnStmt):
            flag(node.value)
        elif isinstance(node, n.ThrowStmt):
            flag(node.expr)
        elif isinstance(node, n.Assign):
            flag(node.value)
        elif isinstance(node, n.VarDeclarator):
            flag(node.init)
        elif isinstance(node, (n.IfStmt, n.WhileStmt, n.DoWhileStmt)):
            flag(node.cond)
        elif isinstance(node, n.SwitchStmt):
            flag(node.selector)
        elif isinstance(node, n.SynchronizedStmt):
            flag(node.lock)
        elif isinstance(node, n.AssertStmt):
            flag(node.cond)
        elif isinstance(node, n.ForEachStmt):
            flag(node.iterable)
        elif isinstance(node, n.MethodCall):
            for arg in node.args:
                flag(arg)
        elif isinstance(node, n.ArrayAccess):
            flag(node.index)

    ordered = sorted(flagged.values(), key=lambda p: (p.span.start_line, p.span.start_col))
    return [ctx.violation(rule, p.span, "parentheses are not needed here") for p in ordered]


def _curly_blocks(unit: n.CompilationUnit):
    """Blocks whose opening brace should close the preceding header line."""
    for decl in unit.all_types():
        yield decl.span, decl
        for member in decl.members:
            if isinstance(member, n.MethodDecl) and member.body is not None:
                yield member.body.span, member
            elif isinstance(member, n.Initializer):
                yield member.body.span, member
    for node in n.walk(unit):
        if isinstance(node, n.IfStmt):
            if isinstance(node.then, n.Block):
                yield node.then.span, node
            if isinstance(node.orelse, n.Block):
                yield node.orelse.span, node
        elif isinstance(node, (n.WhileStmt, n.ForStmt, n.ForEachStmt, n.DoWhileStmt)):
            if isinstance(node.body, n.Block):
                yield node.body.span, node
        elif isinstance(node, n.TryStmt):
            yield node.body.span, node
            for c in node.catches:
                yield c.body.span, c
            if node.finally_block is not None:
                yield node.finally_block.span, node
        elif isinstance(node, n.SynchronizedStmt):
            yield node.body.span, node


def check_left_curly(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    seen: set[tuple[int, int]] = set()
    for span, node in _curly_blocks(ctx.unit):
        if isinstance(node, n.TypeDecl):
            # locate the type body's brace: first '{' token after the name
            brace = _brace_after(ctx, node.name_span)
            if brace is None:
                continue
            span = brace
        key = (span.start_line, span.start_col)
        if key in seen:
            continue
        seen.add(key)
        if ctx.first_on_line(n.Span(span.start_line, span.start_col, span.start_line, span.start_col + 1)):
            brace_span = n.Span(span.start_line, span.start_col, span.start_line, span.start_col + 1)
            out.append(ctx.violation(rule, brace_span, "opening brace should end the previous line"))
    return out


def _brace_after(ctx: RuleContext, span: n.Span) -> n.Span | None:
    for t in ctx.sig:
        if t.lexeme == "{" and (
            t.span.start_line > span.end_line
            or (t.span.start_line == span.end_line and t.span.start_col >= span.end_col)
        ):
            return t.span
    return None


def check_right_curly(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []

    def check_pair(closing: n.Stmt, next_start_line: int, what: str) -> None:
        if isinstance(closing, n.Block) and closing.span.end_line != next_start_line:
            span = n.Span(closing.span.end_line, closing.span.end_col - 1, closing.span.end_line, closing.span.end_col)
            out.append(ctx.violation(rule, span, f"closing brace should share the line with '{what}'"))

    for node in n.walk(ctx.unit):
        if isinstance(node, n.IfStmt) and node.orelse is not None:
            check_pair(node.then, node.orelse.span.start_line, "else")
        elif isinstance(node, n.DoWhileStmt):
            check_pair(node.body, node.cond.span.start_line, "while")
        elif isinstance(node, n.TryStmt):
            parts: list[tuple[n.Stmt, int, str]] = []
            previous: n.Stmt = node.body
            for c in node.catches:
                parts.append((previous, c.span.start_line, "catch"))
                previous = c.body
            if node.finally_block is not None:
                parts.append((previous, node.finally_block.span.start_line, "finally"))
            for part, anchor, what in parts:
                check_pair(part, anchor, what)
    return out


def check_paren_pad(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    toks = ctx.tokens
    for i, t in enumerate(toks):
        if t.lexeme == "(" and t.kind is TokenKind.SEPARATOR:
            if i + 1 < len(toks) and toks[i + 1].kind is TokenKind.WHITESPACE and "\n" not in toks[i + 1].lexeme:
                out.append(ctx.violation(rule, t.span, "space after '('"))
        elif t.lexeme == ")" and t.kind is TokenKind.SEPARATOR:
            if i - 1 >= 0 and toks[i - 1].kind is TokenKind.WHITESPACE and "\n" not in toks[i - 1].lexeme:
                out.append(ctx.violation(rule, t.span, "space before ')'"))
    return out


def check_method_param_pad(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    name_spans: list[tuple[n.Span, str]] = []
    for decl in ctx.unit.all_types():
        for member in decl.members:
            if isinstance(member, n.MethodDecl):
                name_spans.append((member.name_span, member.name))
    for node in n.walk(ctx.unit):
        if isinstance(node, n.MethodCall):
            name_spans.append((node.name_span, node.name))
    for span, name in name_spans:
        offset = ctx.offset_of(span.end_line, span.end_col)
        if offset < len(ctx.source.text) and ctx.source.text[offset] != "(":
            out.append(ctx.violation(rule, span, f"whitespace between '{name}' and '('"))
    return out


def check_variable_declaration_usage_distance(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    limit = rule.threshold("max_distance")
    out = []
    for node in n.walk(ctx.unit):
        if not isinstance(node, n.Block):
            continue
        stmts = node.statements
        for i, stmt in enumerate(stmts):
            if not isinstance(stmt, n.LocalVarDecl):
                continue
            for d in stmt.declarators:
                for j in range(i + 1, len(stmts)):
                    if d.name in simple_names(stmts[j]):
                        distance = j - i - 1
                        if distance > limit:
                            out.append(
                                ctx.violation(
                                    rule, d.name_span,
                                    f"'{d.name}' is first used {distance} statements after its declaration (max {limit})",
                                )
                            )
                        break
    return out


_ORDER = {"static-field": 1, "field": 2, "constructor": 3, "method": 4}


def check_declaration_order(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for decl in ctx.unit.all_types():
        max_seen = 0
        for member in decl.members:
            if isinstance(member, n.FieldDecl):
                cat = "static-field" if "static" in member.modifiers else "field"
                span = member.span
            elif isinstance(member, n.MethodDecl):
                cat = "constructor" if member.is_constructor else "method"
                span = member.name_span
            else:
                continue
            rank = _ORDER[cat]
            if rank < max_seen:
                out.append(ctx.violation(rule, span, f"{cat.replace('-', ' ')} declared after later-ranked members"))
            max_seen = max(max_seen, rank)
    return out


# ---- magic-number ---------------------------------------------------------

def _numeric_value(lit: n.Literal) -> float | int | None:
    text = lit.lexeme.replace("_", "")
    if lit.suffix:
        text = text[: -1]
    try:
        if lit.radix == 16:
            return int(text, 16)
        if lit.radix == 2:
            return int(text, 2)
        if lit.radix == 8 and len(text) > 1:
            return int(text, 8)
        if any(c in text for c in ".eE") and lit.radix == 10:
            return float(text)
        return int(text)
    except ValueError:
        return None


def check_magic_number(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    ignore = set(rule.threshold("ignore_numbers"))
    out: list[Violation] = []

    def visit(node: n.Node, exempt: bool) -> None:
        if isinstance(node, n.FieldDecl):
            field_exempt = node.is_static_final
            for child in n.iter_child_nodes(node):
                visit(child, exempt or field_exempt)
            return
        if isinstance(node, n.Unary) and node.op == "-" and node.prefix and isinstance(node.operand, n.Literal):
            lit = node.operand
            if lit.kind is TokenKind.NUMBER and not exempt:
                value = _numeric_value(lit)
                if value is not None and -value not in ignore:
                    out.append(ctx.violation(rule, lit.span, f"magic number {node.op}{lit.lexeme}"))
            return
        if isinstance(node, n.Literal):
            if node.kind is TokenKind.NUMBER and not exempt:
                value = _numeric_value(node)
                if value is not None and value not in ignore:
                    out.append(ctx.violation(rule, node.span, f"magic number {node.lexeme}"))
            return
        interface_exempt = isinstance(node, n.TypeDecl) and node.kind == "interface"
        for child in n.iter_child_nodes(node):
            if interface_exempt and isinstance(child, n.FieldDecl):
                visit(child, True)
            else:
                visit(child, exempt)

    visit(ctx.unit, False)
    return out


# ---- dead-code -------------------------------------------------------------

def check_unused_formal_parameter(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for decl in ctx.unit.all_types():
        for member in decl.members:
            if not isinstance(member, n.MethodDecl) or member.is_constructor:
                continue
            if "private" not in member.modifiers or member.body is None:
                continue
            used = simple_names(member.body)
            for p in member.params:
                if p.name not in used:
                    out.append(ctx.violation(rule, p.name_span, f"parameter '{p.name}' is never used"))
    return out


def check_unused_local_variable(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for _, _, body in bodies(ctx.unit):
        used = simple_names(body)
        for _, d, origin in local_decls(body):
            if origin == "resource":
                continue
            if d.name not in used:
                out.append(ctx.violation(rule, d.name_span, f"local variable '{d.name}' is never used"))
    return out


def check_unused_private_field(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    used: set[str] = set()
    for node in n.walk(ctx.unit):
        if isinstance(node, n.Name):
            used.add(node.identifier)
        elif isinstance(node, n.FieldAccess):
            used.add(node.name)
    for decl in ctx.unit.all_types():
        for member in decl.members:
            if isinstance(member, n.FieldDecl) and "private" in member.modifiers:
                for d in member.declarators:
                    if d.name == "serialVersionUID":
                        continue
                    if d.name not in used:
                        out.append(ctx.violation(rule, d.name_span, f"private field '{d.name}' is never used"))
    return out


def check_unused_private_method(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    called = call_names(ctx.unit)
    for decl in ctx.unit.all_types():
        for m in decl.methods:
            if "private" in m.modifiers and m.name not in called:
                out.append(ctx.violation(rule, m.name_span, f"private method '{m.name}' is never called"))
    return out


def check_unused_import(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    import_spans = [imp.span for imp in ctx.unit.imports]

    def in_imports(t) -> bool:
        return any(
            s.start_line <= t.span.start_line <= s.end_line for s in import_spans
        )

    body_idents = {
        t.lexeme for t in ctx.sig if t.kind is TokenKind.IDENTIFIER and not in_imports(t)
    }
    for imp in ctx.unit.imports:
        if imp.on_demand:
            continue
        simple = imp.name.rsplit(".", 1)[-1]
        if simple not in body_idents:
            out.append(ctx.violation(rule, imp.span, f"import {imp.name} is never used"))
    return out


# ---- resource-handling ---------------------------------------------------------

_RESOURCE_SUFFIXES = ("Stream", "Reader", "Writer", "Channel")
_RESOURCE_TYPES = frozenset(
    {
        "Connection", "Statement", "PreparedStatement", "CallableStatement",
        "ResultSet", "Scanner", "Socket", "ServerSocket", "RandomAccessFile",
    }
)


def _is_resource_type(name: str) -> bool:
    return name in _RESOURCE_TYPES or any(name.endswith(sfx) for sfx in _RESOURCE_SUFFIXES)


def check_close_resource(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for _, _, body in bodies(ctx.unit):
        closed: set[str] = set()
        for node in n.walk(body):
            if isinstance(node, n.MethodCall) and node.name == "close":
                receiver = expr_source_name(node.receiver) if node.receiver is not None else None
                if receiver:
                    closed.add(receiver.split(".")[-1])
        for _, d, origin in local_decls(body):
            if origin == "resource":
                continue
            init = strip_parens(d.init) if d.init is not None else None
            if isinstance(init, n.NewObject) and _is_resource_type(init.type.simple_name):
                if d.name not in closed:
                    out.append(ctx.violation(rule, d.name_span, f"'{d.name}' ({init.type.simple_name}) is never closed"))
    return out


def check_avoid_instantiating_objects_in_loops(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    seen: set[int] = set()
    out = []
    for node in n.walk(ctx.unit):
        if isinstance(node, (n.WhileStmt, n.DoWhileStmt, n.ForStmt, n.ForEachStmt)):
            for sub in n.walk(node.body):
                if isinstance(sub, (n.NewObject, n.NewArray)) and id(sub) not in seen:
                    seen.add(id(sub))
                    out.append(ctx.violation(rule, sub.span, "object created inside a loop"))
    return out


# ---- documentation -------------------------------------------------------------

def check_comment_required(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for decl in ctx.unit.all_types():
        if decl.kind == "class" and "public" in decl.modifiers and decl.doc is None:
            out.append(ctx.violation(rule, decl.name_span, f"public class '{decl.name}' has no header comment"))
    return out


def check_comment_size(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    limit = rule.threshold("max_comment_lines")
    out = []
    for c in ctx.unit.comments:
        if c.line_span > limit:
            out.append(ctx.violation(rule, c.span, f"comment spans {c.line_span} lines (max {limit})"))
    return out


def check_comment_content(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    words = rule.threshold("disallowed_words")
    pattern = re.compile(r"\b(" + "|".join(re.escape(w) for w in words) + r")\b", re.IGNORECASE)
    out = []
    for c in ctx.unit.comments:
        m = pattern.search(c.text)
        if m:
            out.append(ctx.violation(rule, c.span, f"comment contains disallowed word '{m.group(1)}'"))
    return out


def _has_override(member: n.MethodDecl) -> bool:
    return any(a.name == "Override" for a in member.annotations)


def check_javadoc_method(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for decl in ctx.unit.all_types():
        for member in decl.members:
            if not isinstance(member, n.MethodDecl):
                continue
            visible = member.visibility() in ("public", "protected") or decl.kind == "interface"
            if not visible or _has_override(member):
                continue
            if member.doc is None or not member.doc.is_javadoc:
                kind = "constructor" if member.is_constructor else "method"
                out.append(ctx.violation(rule, member.name_span, f"{kind} '{member.name}' has no Javadoc"))
    return out


def check_javadoc_type(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for decl in ctx.unit.all_types():
        if decl.visibility() in ("public", "protected"):
            if decl.doc is None or not decl.doc.is_javadoc:
                out.append(ctx.violation(rule, decl.name_span, f"type '{decl.name}' has no Javadoc"))
    return out


def check_missing_javadoc_package(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    path = ctx.source.path.replace("\\", "/").rsplit("/", 1)[-1]
    if path != "package-info.java":
        return []
    pkg = ctx.unit.package
    if pkg is None:
        span = n.Span(1, 1, 1, 2)
        return [ctx.violation(rule, span, "package-info.java without a package declaration")]
    for c in ctx.unit.comments:
        if c.is_javadoc and (c.span.end_line < pkg.span.start_line or (
            c.span.end_line == pkg.span.start_line and c.span.end_col <= pkg.span.start_col
        )):
            return []
    return [ctx.violation(rule, pkg.span, "package declaration has no Javadoc")]


def check_javadoc_variable(ctx: RuleContext, rule: SmellRule) -> list[Violation]:
    out = []
    for decl in ctx.unit.all_types():
        for member in decl.members:
            if isinstance(member, n.FieldDecl):
                if member.doc is None or not member.doc.is_javadoc:
                    names = ", ".join(d.name for d in member.declarators)
                    out.append(ctx.violation(rule, member.span, f"field '{names}' has no Javadoc"))
    return out
