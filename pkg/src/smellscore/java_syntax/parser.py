"""Recursive-descent parser for a pragmatic Java subset.

Covers the compilation-unit grammar needed by the rule catalog and metrics:
class/interface/enum declarations, generics and annotations parsed
structurally, lambdas, classic switch statements, and the full statement and
expression grammar listed in nodes.py.  Anything outside the subset stops at
the first error and is reported as a ParseFailure value; there is no error
recovery, so a report is either built from a complete tree or not at all.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexer import (
    COMMENT_KINDS,
    PRIMITIVE_TYPES,
    LexError,
    SourceFile,
    Span,
    Token,
    TokenKind,
    tokenize,
)
from . import nodes as n

MODIFIER_WORDS = frozenset(
    "public protected private static final abstract native synchronized transient volatile strictfp default".split()
)

_ASSIGN_OPS = frozenset(["=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="])

# Binary operator precedence, low to high.
_BINARY_LEVELS = (
    ("||",),
    ("&&",),
    ("|",),
    ("^",),
    ("&",),
    ("==", "!="),
    ("<", ">", "<=", ">=", "instanceof"),
    ("<<", ">>", ">>>"),
    ("+", "-"),
    ("*", "/", "%"),
)

_LITERAL_KINDS = (TokenKind.NUMBER, TokenKind.STRING, TokenKind.CHAR, TokenKind.BOOL, TokenKind.NULL)


@dataclass
class ParseFailure:
    first_error_span: Span
    message: str


@dataclass
class ParseOutcome:
    ast: n.CompilationUnit | None = None
    failure: ParseFailure | None = None

    @property
    def ok(self) -> bool:
        return self.ast is not None


class _ParseError(Exception):
    def __init__(self, message: str, span: Span):
        super().__init__(message)
        self.message = message
        self.span = span


def parse(source: SourceFile) -> ParseOutcome:
    """Parse a source file; failure is a value, never an exception."""
    try:
        tokens = tokenize(source)
    except LexError as e:
        span = Span(e.line, e.col, e.line, e.col + 1)
        return ParseOutcome(failure=ParseFailure(span, e.message))
    try:
        unit = _Parser(tokens).compilation_unit()
        return ParseOutcome(ast=unit)
    except _ParseError as e:
        return ParseOutcome(failure=ParseFailure(e.span, e.message))


def parse_text(path: str, text: str) -> ParseOutcome:
    return parse(SourceFile.from_text(path, text))


class _Parser:
    def __init__(self, all_tokens: list[Token]):
        self.all_tokens = all_tokens
        # Significant tokens plus, for each, the index of the token that
        # precedes it in the full stream (for comment attachment).
        self.toks: list[Token] = []
        self.full_index: list[int] = []
        for i, t in enumerate(all_tokens):
            if not t.is_trivia:
                self.toks.append(t)
                self.full_index.append(i)
        self.i = 0
        self.comments = [
            n.Comment(span=t.span, kind=t.kind, text=t.lexeme) for t in all_tokens if t.kind in COMMENT_KINDS
        ]

    # ---- token plumbing ---------------------------------------------------

    def peek(self, offset: int = 0) -> Token | None:
        j = self.i + offset
        return self.toks[j] if j < len(self.toks) else None

    def at(self, lexeme: str, offset: int = 0) -> bool:
        t = self.peek(offset)
        return t is not None and t.lexeme == lexeme

    def at_kind(self, kind: TokenKind, offset: int = 0) -> bool:
        t = self.peek(offset)
        return t is not None and t.kind is kind

    def next(self) -> Token:
        t = self.peek()
        if t is None:
            last = self.toks[-1].span if self.toks else Span(1, 1, 1, 1)
            raise _ParseError("unexpected end of file", last)
        self.i += 1
        return t

    def expect(self, lexeme: str) -> Token:
        t = self.peek()
        if t is None or t.lexeme != lexeme:
            got = t.lexeme if t else "end of file"
            span = t.span if t else (self.toks[-1].span if self.toks else Span(1, 1, 1, 1))
            raise _ParseError(f"expected {lexeme!r}, found {got!r}", span)
        self.i += 1
        return t

    def expect_ident(self) -> Token:
        t = self.peek()
        if t is None or t.kind is not TokenKind.IDENTIFIER:
            got = t.lexeme if t else "end of file"
            span = t.span if t else Span(1, 1, 1, 1)
            raise _ParseError(f"expected identifier, found {got!r}", span)
        self.i += 1
        return t

    def error(self, message: str) -> _ParseError:
        t = self.peek()
        span = t.span if t else (self.toks[-1].span if self.toks else Span(1, 1, 1, 1))
        return _ParseError(message, span)

    def split_gt(self) -> Token:
        """Consume a single '>' even when lexed as part of a shift operator."""
        t = self.peek()
        if t is None:
            raise self.error("expected '>'")
        if t.lexeme == ">":
            return self.next()
        if t.lexeme.startswith(">") and t.lexeme in (">>", ">>>", ">=", ">>=", ">>>="):
            head = Token(
                TokenKind.OPERATOR,
                ">",
                Span(t.span.start_line, t.span.start_col, t.span.start_line, t.span.start_col + 1),
            )
            rest = Token(
                TokenKind.OPERATOR,
                t.lexeme[1:],
                Span(t.span.start_line, t.span.start_col + 1, t.span.end_line, t.span.end_col),
            )
            self.toks[self.i] = rest
            self.full_index.insert(self.i, self.full_index[self.i])
            return head
        raise self.error("expected '>'")

    def preceding_comment(self, tok_index: int) -> n.Comment | None:
        """The comment directly above a declaration, if any.

        Annotations and whitespace may sit between the comment and the token.
        """
        j = self.full_index[tok_index] - 1 if tok_index < len(self.full_index) else len(self.all_tokens) - 1
        depth = 0
        while j >= 0:
            t = self.all_tokens[j]
            if t.kind is TokenKind.WHITESPACE:
                j -= 1
                continue
            if t.kind in COMMENT_KINDS:
                return n.Comment(span=t.span, kind=t.kind, text=t.lexeme)
            # Skip over a trailing annotation: ... @ Name ( ... )
            if t.lexeme == ")" and depth == 0:
                depth = 1
                j -= 1
                continue
            if depth > 0:
                if t.lexeme == ")":
                    depth += 1
                elif t.lexeme == "(":
                    depth -= 1
                j -= 1
                continue
            if t.kind is TokenKind.IDENTIFIER or t.lexeme == "@" or t.lexeme in MODIFIER_WORDS:
                j -= 1
                continue
            return None
        return None

    def span_between(self, start: Span, end: Span) -> Span:
        return Span(start.start_line, start.start_col, end.end_line, end.end_col)

    # ---- compilation unit ---------------------------------------------------

    def compilation_unit(self) -> n.CompilationUnit:
        start = self.peek().span if self.peek() else Span(1, 1, 1, 1)
        package = None
        imports: list[n.ImportDecl] = []

        self.parse_annotations()
        if self.at("package"):
            pkg_tok = self.next()
            name = self.qualified_name()
            end = self.expect(";")
            package = n.PackageDecl(span=self.span_between(pkg_tok.span, end.span), name=name)

        while self.at("import"):
            imp_tok = self.next()
            is_static = False
            if self.at("static"):
                self.next()
                is_static = True
            name_parts = [self.expect_ident().lexeme]
            on_demand = False
            while self.at("."):
                self.next()
                if self.at("*"):
                    self.next()
                    on_demand = True
                    break
                name_parts.append(self.expect_ident().lexeme)
            end = self.expect(";")
            imports.append(
                n.ImportDecl(
                    span=self.span_between(imp_tok.span, end.span),
                    name=".".join(name_parts),
                    is_static=is_static,
                    on_demand=on_demand,
                )
            )

        types: list[n.TypeDecl] = []
        while self.peek() is not None:
            if self.at(";"):
                self.next()
                continue
            types.append(self.type_declaration())

        end_span = self.toks[-1].span if self.toks else start
        return n.CompilationUnit(
            span=self.span_between(start, end_span),
            package=package,
            imports=imports,
            types=types,
            comments=self.comments,
        )

    def qualified_name(self) -> str:
        parts = [self.expect_ident().lexeme]
        while self.at(".") and self.at_kind(TokenKind.IDENTIFIER, 1):
            self.next()
            parts.append(self.expect_ident().lexeme)
        return ".".join(parts)

    # ---- declarations -------------------------------------------------------

    def parse_annotations(self) -> list[n.Annotation]:
        anns: list[n.Annotation] = []
        while self.at("@") and not self.at("interface", 1):
            at_tok = self.next()
            name = self.qualified_name()
            end_span = self.toks[self.i - 1].span
            if self.at("("):
                depth = 0
                while True:
                    t = self.next()
                    if t.lexeme == "(":
                        depth += 1
                    elif t.lexeme == ")":
                        depth -= 1
                        if depth == 0:
                            end_span = t.span
                            break
            anns.append(n.Annotation(span=self.span_between(at_tok.span, end_span), name=name))
        return anns

    def parse_modifiers(self) -> tuple[list[str], list[n.Annotation], int]:
        """Returns (modifiers, annotations, index of first modifier token)."""
        first = self.i
        mods: list[str] = []
        anns: list[n.Annotation] = []
        while True:
            anns.extend(self.parse_annotations())
            t = self.peek()
            if t is not None and t.lexeme in MODIFIER_WORDS and t.kind is TokenKind.KEYWORD:
                mods.append(self.next().lexeme)
            elif t is not None and t.lexeme == "default" and t.kind is TokenKind.KEYWORD:
                mods.append(self.next().lexeme)
            else:
                break
        return mods, anns, first

    def type_declaration(self) -> n.TypeDecl:
        decl_start = self.i
        mods, anns, _ = self.parse_modifiers()
        t = self.peek()
        if t is None:
            raise self.error("expected type declaration")
        if t.lexeme == "class":
            return self.class_body_decl("class", mods, anns, decl_start)
        if t.lexeme == "interface":
            return self.class_body_decl("interface", mods, anns, decl_start)
        if t.lexeme == "enum":
            return self.class_body_decl("enum", mods, anns, decl_start)
        raise self.error(f"expected class, interface, or enum, found {t.lexeme!r}")

    def class_body_decl(
        self, kind: str, mods: list[str], anns: list[n.Annotation], decl_start: int
    ) -> n.TypeDecl:
        kw = self.next()
        name_tok = self.expect_ident()
        type_params = self.parse_type_params() if self.at("<") else []

        extends: list[n.TypeRef] = []
        implements: list[n.TypeRef] = []
        if self.at("extends"):
            self.next()
            extends.append(self.parse_type())
            while kind == "interface" and self.at(","):
                self.next()
                extends.append(self.parse_type())
        if self.at("implements"):
            self.next()
            implements.append(self.parse_type())
            while self.at(","):
                self.next()
                implements.append(self.parse_type())

        self.expect("{")
        enum_constants: list[n.EnumConstant] = []
        if kind == "enum":
            enum_constants = self.parse_enum_constants()

        members = self.parse_members(name_tok.lexeme)
        close = self.expect("}")

        start_span = self.toks[decl_start].span if decl_start < len(self.toks) else kw.span
        doc = self.preceding_comment(decl_start)
        return n.TypeDecl(
            span=self.span_between(start_span, close.span),
            kind=kind,
            name=name_tok.lexeme,
            name_span=name_tok.span,
            modifiers=mods,
            annotations=anns,
            type_params=type_params,
            extends=extends,
            implements=implements,
            members=members,
            enum_constants=enum_constants,
            doc=doc,
        )

    def parse_enum_constants(self) -> list[n.EnumConstant]:
        constants: list[n.EnumConstant] = []
        while self.at_kind(TokenKind.IDENTIFIER) or self.at("@"):
            self.parse_annotations()
            name_tok = self.expect_ident()
            args: list[n.Expr] = []
            end_span = name_tok.span
            if self.at("("):
                self.next()
                if not self.at(")"):
                    args.append(self.expression())
                    while self.at(","):
                        self.next()
                        args.append(self.expression())
                end_span = self.expect(")").span
            if self.at("{"):  # constant class body, parsed structurally
                self.next()
                self.parse_members("")
                end_span = self.expect("}").span
            constants.append(n.EnumConstant(span=self.span_between(name_tok.span, end_span), name=name_tok.lexeme, args=args))
            if self.at(","):
                self.next()
            else:
                break
        if self.at(";"):
            self.next()
        return constants

    def parse_members(self, enclosing_name: str) -> list:
        members: list = []
        while not self.at("}"):
            if self.peek() is None:
                raise self.error("unterminated type body")
            if self.at(";"):
                self.next()
                continue
            members.append(self.parse_member(enclosing_name))
        return members

    def parse_member(self, enclosing_name: str):
        decl_start = self.i
        mods, anns, _ = self.parse_modifiers()

        if self.at("class") or self.at("interface") or self.at("enum"):
            return self.class_body_decl(self.peek().lexeme, mods, anns, decl_start)

        if self.at("{"):  # initializer block
            body = self.block()
            is_static = "static" in mods
            start_span = self.toks[decl_start].span
            return n.Initializer(span=self.span_between(start_span, body.span), static=is_static, body=body)

        type_params = self.parse_type_params() if self.at("<") else []

        # Constructor: Name '('
        if (
            self.at_kind(TokenKind.IDENTIFIER)
            and self.peek().lexeme == enclosing_name
            and self.at("(", 1)
        ):
            name_tok = self.next()
            return self.finish_method(decl_start, mods, anns, type_params, None, name_tok, is_constructor=True)

        ret_type = self.parse_type(allow_void=True)

        name_tok = self.expect_ident()
        if self.at("("):
            return self.finish_method(decl_start, mods, anns, type_params, ret_type, name_tok, is_constructor=False)

        # Field declaration
        declarators = [self.parse_declarator(name_tok)]
        while self.at(","):
            self.next()
            declarators.append(self.parse_declarator(self.expect_ident()))
        end = self.expect(";")
        start_span = self.toks[decl_start].span
        doc = self.preceding_comment(decl_start)
        return n.FieldDecl(
            span=self.span_between(start_span, end.span),
            modifiers=mods,
            annotations=anns,
            type=ret_type,
            declarators=declarators,
            doc=doc,
        )

    def parse_declarator(self, name_tok: Token) -> n.VarDeclarator:
        extra_dims = 0
        end_span = name_tok.span
        while self.at("["):
            self.next()
            end_span = self.expect("]").span
            extra_dims += 1
        init = None
        if self.at("="):
            self.next()
            init = self.array_initializer() if self.at("{") else self.expression()
            end_span = init.span
        return n.VarDeclarator(
            span=self.span_between(name_tok.span, end_span),
            name=name_tok.lexeme,
            name_span=name_tok.span,
            extra_dims=extra_dims,
            init=init,
        )

    def finish_method(
        self,
        decl_start: int,
        mods: list[str],
        anns: list[n.Annotation],
        type_params: list[n.TypeParam],
        ret_type: n.TypeRef | None,
        name_tok: Token,
        is_constructor: bool,
    ) -> n.MethodDecl:
        self.expect("(")
        params: list[n.Param] = []
        if not self.at(")"):
            params.append(self.parse_param())
            while self.at(","):
                self.next()
                params.append(self.parse_param())
        self.expect(")")

        while self.at("["):  # archaic int m()[] form
            self.next()
            self.expect("]")

        throws: list[n.TypeRef] = []
        if self.at("throws"):
            self.next()
            throws.append(self.parse_type())
            while self.at(","):
                self.next()
                throws.append(self.parse_type())

        body = None
        if self.at("{"):
            body = self.block()
            end_span = body.span
        else:
            end_span = self.expect(";").span

        start_span = self.toks[decl_start].span
        doc = self.preceding_comment(decl_start)
        return n.MethodDecl(
            span=self.span_between(start_span, end_span),
            modifiers=mods,
            annotations=anns,
            type_params=type_params,
            return_type=ret_type,
            name=name_tok.lexeme,
            name_span=name_tok.span,
            params=params,
            throws=throws,
            body=body,
            is_constructor=is_constructor,
            doc=doc,
        )

    def parse_param(self) -> n.Param:
        start = self.peek().span
        anns = self.parse_annotations()
        mods: list[str] = []
        while self.at("final"):
            self.next()
            mods.append("final")
            anns.extend(self.parse_annotations())
        ptype = self.parse_type()
        varargs = False
        if self.at("..."):
            self.next()
            varargs = True
        name_tok = self.expect_ident()
        end_span = name_tok.span
        while self.at("["):
            self.next()
            end_span = self.expect("]").span
            ptype.array_dims += 1
        return n.Param(
            span=self.span_between(start, end_span),
            type=ptype,
            name=name_tok.lexeme,
            name_span=name_tok.span,
            modifiers=mods,
            annotations=anns,
            varargs=varargs,
        )

    # ---- types ----------------------------------------------------------------

    def parse_type_params(self) -> list[n.TypeParam]:
        self.expect("<")
        params: list[n.TypeParam] = []
        while True:
            start = self.peek().span
            self.parse_annotations()
            name_tok = self.expect_ident()
            bounds: list[n.TypeRef] = []
            if self.at("extends"):
                self.next()
                bounds.append(self.parse_type())
                while self.at("&"):
                    self.next()
                    bounds.append(self.parse_type())
            end_span = bounds[-1].span if bounds else name_tok.span
            params.append(n.TypeParam(span=self.span_between(start, end_span), name=name_tok.lexeme, bounds=bounds))
            if self.at(","):
                self.next()
            else:
                break
        self.split_gt()
        return params

    def parse_type(self, allow_void: bool = False) -> n.TypeRef:
        self.parse_annotations()
        t = self.peek()
        if t is None:
            raise self.error("expected type")

        if t.lexeme == "void" and allow_void:
            self.next()
            return n.TypeRef(span=t.span, name="void")
        if t.lexeme in PRIMITIVE_TYPES and t.kind is TokenKind.KEYWORD:
            self.next()
            ref = n.TypeRef(span=t.span, name=t.lexeme)
        elif t.lexeme == "?":
            self.next()
            ref = n.TypeRef(span=t.span, name="?")
            if self.at("extends") or self.at("super"):
                kind = self.next().lexeme
                ref.bound_kind = kind
                ref.bound = self.parse_type()
                ref.span = self.span_between(t.span, ref.bound.span)
            return ref
        elif t.kind is TokenKind.IDENTIFIER:
            start = t.span
            name = self.qualified_name()
            ref = n.TypeRef(span=self.span_between(start, self.toks[self.i - 1].span), name=name)
            if self.at("<"):
                ref.type_args = self.parse_type_args()
                ref.span = self.span_between(start, self.toks[self.i - 1].span)
        else:
            raise self.error(f"expected type, found {t.lexeme!r}")

        while self.at("[") and self.at("]", 1):
            self.next()
            end = self.next()
            ref.array_dims += 1
            ref.span = self.span_between(ref.span, end.span)
        return ref

    def parse_type_args(self) -> list[n.TypeRef]:
        self.expect("<")
        args: list[n.TypeRef] = []
        if self.at(">") or (self.peek() and self.peek().lexeme.startswith(">")):
            self.split_gt()  # diamond <>
            return args
        args.append(self.parse_type())
        while self.at(","):
            self.next()
            args.append(self.parse_type())
        self.split_gt()
        return args

    # ---- statements -------------------------------------------------------------

    def block(self) -> n.Block:
        open_tok = self.expect("{")
        stmts: list[n.Stmt] = []
        while not self.at("}"):
            if self.peek() is None:
                raise self.error("unterminated block")
            stmts.append(self.statement())
        close = self.expect("}")
        return n.Block(span=self.span_between(open_tok.span, close.span), statements=stmts)

    def statement(self) -> n.Stmt:
        t = self.peek()
        if t is None:
            raise self.error("expected statement")
        lex = t.lexeme

        if lex == "{":
            return self.block()
        if lex == ";":
            tok = self.next()
            return n.EmptyStmt(span=tok.span)
        if lex == "if":
            return self.if_statement()
        if lex == "while":
            return self.while_statement()
        if lex == "do":
            return self.do_statement()
        if lex == "for":
            return self.for_statement()
        if lex == "switch":
            return self.switch_statement()
        if lex == "try":
            return self.try_statement()
        if lex == "return":
            tok = self.next()
            value = None if self.at(";") else self.expression()
            end = self.expect(";")
            return n.ReturnStmt(span=self.span_between(tok.span, end.span), value=value)
        if lex == "throw":
            tok = self.next()
            expr = self.expression()
            end = self.expect(";")
            return n.ThrowStmt(span=self.span_between(tok.span, end.span), expr=expr)
        if lex == "break":
            tok = self.next()
            label = self.next().lexeme if self.at_kind(TokenKind.IDENTIFIER) else None
            end = self.expect(";")
            return n.BreakStmt(span=self.span_between(tok.span, end.span), label=label)
        if lex == "continue":
            tok = self.next()
            label = self.next().lexeme if self.at_kind(TokenKind.IDENTIFIER) else None
            end = self.expect(";")
            return n.ContinueStmt(span=self.span_between(tok.span, end.span), label=label)
        if lex == "synchronized":
            tok = self.next()
            self.expect("(")
            lock = self.expression()
            self.expect(")")
            body = self.block()
            return n.SynchronizedStmt(span=self.span_between(tok.span, body.span), lock=lock, body=body)
        if lex == "assert":
            tok = self.next()
            cond = self.expression()
            message = None
            if self.at(":"):
                self.next()
                message = self.expression()
            end = self.expect(";")
            return n.AssertStmt(span=self.span_between(tok.span, end.span), cond=cond, message=message)
        if lex in ("class", "interface", "enum") or (
            lex in ("abstract", "final", "static") and self._peek_type_decl_after_modifiers()
        ):
            decl = self.type_declaration()
            return n.LocalTypeDecl(span=decl.span, decl=decl)
        if t.kind is TokenKind.IDENTIFIER and self.at(":", 1) and not self.at(":", 2):
            label_tok = self.next()
            self.next()  # ':'
            stmt = self.statement()
            return n.LabeledStmt(span=self.span_between(label_tok.span, stmt.span), label=label_tok.lexeme, stmt=stmt)

        if self._looks_like_local_var_decl():
            decl = self.local_var_decl()
            end = self.expect(";")
            decl.span = self.span_between(decl.span, end.span)
            return decl

        expr = self.expression()
        end = self.expect(";")
        return n.ExprStmt(span=self.span_between(expr.span, end.span), expr=expr)

    def _peek_type_decl_after_modifiers(self) -> bool:
        j = 0
        while True:
            t = self.peek(j)
            if t is None:
                return False
            if t.lexeme in MODIFIER_WORDS:
                j += 1
                continue
            return t.lexeme in ("class", "interface", "enum")

    def if_statement(self) -> n.IfStmt:
        tok = self.expect("if")
        self.expect("(")
        cond = self.expression()
        self.expect(")")
        then = self.statement()
        orelse = None
        end_span = then.span
        if self.at("else"):
            self.next()
            orelse = self.statement()
            end_span = orelse.span
        return n.IfStmt(span=self.span_between(tok.span, end_span), cond=cond, then=then, orelse=orelse)

    def while_statement(self) -> n.WhileStmt:
        tok = self.expect("while")
        self.expect("(")
        cond = self.expression()
        self.expect(")")
        body = self.statement()
        return n.WhileStmt(span=self.span_between(tok.span, body.span), cond=cond, body=body)

    def do_statement(self) -> n.DoWhileStmt:
        tok = self.expect("do")
        body = self.statement()
        self.expect("while")
        self.expect("(")
        cond = self.expression()
        self.expect(")")
        end = self.expect(";")
        return n.DoWhileStmt(span=self.span_between(tok.span, end.span), body=body, cond=cond)

    def for_statement(self) -> n.Stmt:
        tok = self.expect("for")
        self.expect("(")

        if self._looks_like_foreach():
            start = self.peek().span
            anns = self.parse_annotations()
            mods = []
            while self.at("final"):
                self.next()
                mods.append("final")
            var_type = self.parse_type()
            name_tok = self.expect_ident()
            self.expect(":")
            iterable = self.expression()
            self.expect(")")
            body = self.statement()
            del anns, start
            return n.ForEachStmt(
                span=self.span_between(tok.span, body.span),
                var_modifiers=mods,
                var_type=var_type,
                var_name=name_tok.lexeme,
                var_name_span=name_tok.span,
                iterable=iterable,
                body=body,
            )

        init: list[n.Stmt] = []
        if not self.at(";"):
            if self._looks_like_local_var_decl():
                init.append(self.local_var_decl())
            else:
                expr = self.expression()
                init.append(n.ExprStmt(span=expr.span, expr=expr))
                while self.at(","):
                    self.next()
                    expr = self.expression()
                    init.append(n.ExprStmt(span=expr.span, expr=expr))
        self.expect(";")

        cond = None
        if not self.at(";"):
            cond = self.expression()
        self.expect(";")

        update: list[n.Expr] = []
        if not self.at(")"):
            update.append(self.expression())
            while self.at(","):
                self.next()
                update.append(self.expression())
        self.expect(")")
        body = self.statement()
        return n.ForStmt(span=self.span_between(tok.span, body.span), init=init, cond=cond, update=update, body=body)

    def _looks_like_foreach(self) -> bool:
        """Scan ahead inside 'for (' for a ':' before ';' at paren depth 0."""
        depth = 0
        angle = 0
        j = 0
        while True:
            t = self.peek(j)
            if t is None:
                return False
            lex = t.lexeme
            if lex in ("(", "["):
                depth += 1
            elif lex in (")", "]"):
                if depth == 0:
                    return False
                depth -= 1
            elif lex == "<":
                angle += 1
            elif lex in (">", ">>", ">>>") and angle > 0:
                angle = max(0, angle - len(lex))
            elif lex == ";" and depth == 0:
                return False
            elif lex == ":" and depth == 0 and angle == 0:
                return True
            elif lex == "?":
                # wildcard inside generics is fine; conditional would confuse
                if angle == 0:
                    return False
            j += 1

    def _looks_like_local_var_decl(self) -> bool:
        """True when the upcoming tokens read as 'Mods? Type Ident'."""
        j = 0
        while True:
            t = self.peek(j)
            if t is None:
                return False
            if t.lexeme == "@":
                # skip annotation: @ Name (.Name)* ( balanced )?
                j += 2
                while self.at(".", j):
                    j += 2
                if self.at("(", j):
                    depth = 0
                    while True:
                        tk = self.peek(j)
                        if tk is None:
                            return False
                        if tk.lexeme == "(":
                            depth += 1
                        elif tk.lexeme == ")":
                            depth -= 1
                            if depth == 0:
                                j += 1
                                break
                        j += 1
                continue
            if t.lexeme == "final":
                j += 1
                continue
            break

        t = self.peek(j)
        if t is None:
            return False
        if t.lexeme in PRIMITIVE_TYPES and t.kind is TokenKind.KEYWORD:
            j += 1
        elif t.kind is TokenKind.IDENTIFIER:
            j += 1
            while self.at(".", j) and self.at_kind(TokenKind.IDENTIFIER, j + 1):
                j += 2
            if self.at("<", j):
                depth = 0
                while True:
                    tk = self.peek(j)
                    if tk is None:
                        return False
                    lex = tk.lexeme
                    if lex == "<":
                        depth += 1
                    elif lex in (">", ">>", ">>>"):
                        depth -= len(lex)
                        if depth <= 0:
                            j += 1
                            break
                    elif lex in (";", "{", ")", "=") or lex in _ASSIGN_OPS:
                        return False
                    j += 1
        else:
            return False

        while self.at("[", j) and self.at("]", j + 1):
            j += 2
        return self.at_kind(TokenKind.IDENTIFIER, j)

    def local_var_decl(self) -> n.LocalVarDecl:
        start = self.peek().span
        anns = self.parse_annotations()
        mods: list[str] = []
        while self.at("final"):
            self.next()
            mods.append("final")
            anns.extend(self.parse_annotations())
        var_type = self.parse_type()
        declarators = [self.parse_declarator(self.expect_ident())]
        while self.at(","):
            self.next()
            declarators.append(self.parse_declarator(self.expect_ident()))
        end_span = declarators[-1].span
        return n.LocalVarDecl(
            span=self.span_between(start, end_span),
            modifiers=mods,
            annotations=anns,
            type=var_type,
            declarators=declarators,
        )

    def switch_statement(self) -> n.SwitchStmt:
        tok = self.expect("switch")
        self.expect("(")
        selector = self.expression()
        self.expect(")")
        self.expect("{")
        arms: list[n.SwitchArm] = []
        while not self.at("}"):
            if self.peek() is None:
                raise self.error("unterminated switch")
            labels: list[n.Expr | None] = []
            label_start = self.peek().span
            while self.at("case") or self.at("default"):
                if self.at("case"):
                    self.next()
                    labels.append(self.expression())
                else:
                    self.next()
                    labels.append(None)
                self.expect(":")
            if not labels:
                raise self.error("expected 'case' or 'default' label")
            stmts: list[n.Stmt] = []
            while not (self.at("case") or self.at("default") or self.at("}")):
                stmts.append(self.statement())
            end_span = stmts[-1].span if stmts else label_start
            arms.append(n.SwitchArm(span=self.span_between(label_start, end_span), labels=labels, statements=stmts))
        close = self.expect("}")
        return n.SwitchStmt(span=self.span_between(tok.span, close.span), selector=selector, arms=arms)

    def try_statement(self) -> n.TryStmt:
        tok = self.expect("try")
        resources: list[n.LocalVarDecl] = []
        if self.at("("):
            self.next()
            while not self.at(")"):
                resources.append(self.local_var_decl())
                if self.at(";"):
                    self.next()
            self.expect(")")
        body = self.block()
        catches: list[n.CatchClause] = []
        end_span = body.span
        while self.at("catch"):
            c_tok = self.next()
            self.expect("(")
            mods: list[str] = []
            self.parse_annotations()
            while self.at("final"):
                self.next()
                mods.append("final")
            types = [self.parse_type()]
            while self.at("|"):
                self.next()
                types.append(self.parse_type())
            name_tok = self.expect_ident()
            self.expect(")")
            c_body = self.block()
            catches.append(
                n.CatchClause(
                    span=self.span_between(c_tok.span, c_body.span),
                    types=types,
                    name=name_tok.lexeme,
                    name_span=name_tok.span,
                    modifiers=mods,
                    body=c_body,
                )
            )
            end_span = c_body.span
        finally_block = None
        if self.at("finally"):
            self.next()
            finally_block = self.block()
            end_span = finally_block.span
        if not catches and finally_block is None and not resources:
            raise self.error("try statement requires catch, finally, or resources")
        return n.TryStmt(
            span=self.span_between(tok.span, end_span),
            resources=resources,
            body=body,
            catches=catches,
            finally_block=finally_block,
        )

    # ---- expressions ---------------------------------------------------------

    def expression(self) -> n.Expr:
        return self.assignment()

    def assignment(self) -> n.Expr:
        left = self.ternary()
        t = self.peek()
        if t is not None and t.lexeme in _ASSIGN_OPS:
            op = self.next().lexeme
            value = self.assignment()
            return n.Assign(span=self.span_between(left.span, value.span), target=left, op=op, value=value)
        return left

    def ternary(self) -> n.Expr:
        cond = self.binary(0)
        if self.at("?"):
            self.next()
            if_true = self.expression()
            self.expect(":")
            if_false = self.assignment()
            return n.Ternary(span=self.span_between(cond.span, if_false.span), cond=cond, if_true=if_true, if_false=if_false)
        return cond

    def binary(self, level: int) -> n.Expr:
        if level >= len(_BINARY_LEVELS):
            return self.unary()
        ops = _BINARY_LEVELS[level]
        left = self.binary(level + 1)
        while True:
            t = self.peek()
            if t is None:
                return left
            lex = t.lexeme
            if lex not in ops:
                return left
            if lex == "instanceof":
                self.next()
                ty = self.parse_type()
                left = n.InstanceOf(span=self.span_between(left.span, ty.span), expr=left, type=ty)
                continue
            # '<' here may open type arguments of a method call like
            # Collections.<String>emptyList(); the subset does not support
            # that form, and plain '<' comparison is far more common.
            self.next()
            right = self.binary(level + 1)
            left = n.Binary(span=self.span_between(left.span, right.span), op=lex, left=left, right=right)

    def unary(self) -> n.Expr:
        t = self.peek()
        if t is None:
            raise self.error("expected expression")
        if t.lexeme in ("+", "-", "!", "~", "++", "--"):
            op_tok = self.next()
            operand = self.unary()
            return n.Unary(span=self.span_between(op_tok.span, operand.span), op=op_tok.lexeme, operand=operand, prefix=True)
        if t.lexeme == "(" and self._looks_like_cast():
            open_tok = self.next()
            ctype = self.parse_type()
            self.expect(")")
            expr = self.unary()
            return n.Cast(span=self.span_between(open_tok.span, expr.span), type=ctype, expr=expr)
        return self.postfix()

    def _looks_like_cast(self) -> bool:
        """Decide '(X) y' cast vs parenthesized expression by scanning to ')'.

        The parenthesized tokens must all be type-ish; primitives, brackets,
        and generics force a cast, otherwise the token after ')' must be able
        to start an operand.
        """
        depth = 0
        j = 0
        seen_type_only_syntax = False
        inner_count = 0
        while True:
            t = self.peek(j)
            if t is None:
                return False
            lex = t.lexeme
            if lex == "(":
                depth += 1
                j += 1
                continue
            if lex == ")":
                depth -= 1
                j += 1
                if depth == 0:
                    break
                continue
            if depth == 1:
                inner_count += 1
                if t.kind in _LITERAL_KINDS:
                    return False
                if t.kind is TokenKind.KEYWORD and lex in PRIMITIVE_TYPES:
                    seen_type_only_syntax = True
                elif lex in ("[", "]", "<", "?"):
                    seen_type_only_syntax = True
                elif lex in (">", ">>", ">>>", ",", ".", "&", "extends", "super", "@"):
                    pass
                elif t.kind is TokenKind.IDENTIFIER:
                    pass
                else:
                    return False
            else:
                return False  # nested parens never appear inside a cast type
            j += 1
        if inner_count == 0:
            return False
        after = self.peek(j)
        if after is None:
            return False
        if seen_type_only_syntax:
            return after.lexeme not in (")", "]", ";", ",", ".")
        return (
            after.kind in (TokenKind.IDENTIFIER, *(_LITERAL_KINDS))
            or after.lexeme in ("(", "!", "~", "new", "this", "super")
        )

    def postfix(self) -> n.Expr:
        expr = self.primary()
        while True:
            t = self.peek()
            if t is None:
                return expr
            if t.lexeme == ".":
                nxt = self.peek(1)
                if nxt is not None and nxt.lexeme == "class":
                    self.next()
                    end = self.next()
                    ref = self._expr_as_typeref(expr)
                    expr = n.ClassLiteral(span=self.span_between(expr.span, end.span), type=ref)
                    continue
                if nxt is not None and nxt.lexeme == "new":
                    self.next()
                    self.next()
                    expr = self._object_creation(expr.span, outer=expr)
                    continue
                if nxt is not None and nxt.lexeme in ("this", "super"):
                    self.next()
                    end = self.next()
                    expr = n.FieldAccess(span=self.span_between(expr.span, end.span), receiver=expr, name=end.lexeme)
                    continue
                self.next()
                name_tok = self.expect_ident()
                if self.at("("):
                    args, end_span = self._call_args()
                    expr = n.MethodCall(
                        span=self.span_between(expr.span, end_span),
                        receiver=expr,
                        name=name_tok.lexeme,
                        name_span=name_tok.span,
                        args=args,
                    )
                else:
                    expr = n.FieldAccess(span=self.span_between(expr.span, name_tok.span), receiver=expr, name=name_tok.lexeme)
                continue
            if t.lexeme == "[":
                self.next()
                index = self.expression()
                end = self.expect("]")
                expr = n.ArrayAccess(span=self.span_between(expr.span, end.span), array=expr, index=index)
                continue
            if t.lexeme == "::":
                self.next()
                if self.at("new"):
                    end = self.next()
                    expr = n.MethodRef(span=self.span_between(expr.span, end.span), receiver=expr, name="new")
                else:
                    name_tok = self.expect_ident()
                    expr = n.MethodRef(span=self.span_between(expr.span, name_tok.span), receiver=expr, name=name_tok.lexeme)
                continue
            if t.lexeme in ("++", "--"):
                op_tok = self.next()
                expr = n.Unary(span=self.span_between(expr.span, op_tok.span), op=op_tok.lexeme, operand=expr, prefix=False)
                continue
            return expr

    def _expr_as_typeref(self, expr: n.Expr) -> n.TypeRef:
        parts: list[str] = []
        node = expr
        while isinstance(node, n.FieldAccess):
            parts.append(node.name)
            node = node.receiver
        if isinstance(node, n.Name):
            parts.append(node.identifier)
        return n.TypeRef(span=expr.span, name=".".join(reversed(parts)) or "?")

    def _call_args(self) -> tuple[list[n.Expr], Span]:
        self.expect("(")
        args: list[n.Expr] = []
        if not self.at(")"):
            args.append(self.expression())
            while self.at(","):
                self.next()
                args.append(self.expression())
        end = self.expect(")")
        return args, end.span

    def primary(self) -> n.Expr:
        t = self.peek()
        if t is None:
            raise self.error("expected expression")
        lex = t.lexeme

        # Lambda forms: Ident -> ...   and   ( params ) -> ...
        if t.kind is TokenKind.IDENTIFIER and self.at("->", 1):
            name_tok = self.next()
            self.next()
            return self._finish_lambda(
                name_tok.span,
                [
                    n.Param(
                        span=name_tok.span,
                        type=n.TypeRef(span=name_tok.span, name=""),
                        name=name_tok.lexeme,
                        name_span=name_tok.span,
                    )
                ],
            )
        if lex == "(" and self._lambda_ahead():
            open_tok = self.next()
            params: list[n.Param] = []
            if not self.at(")"):
                params.append(self._lambda_param())
                while self.at(","):
                    self.next()
                    params.append(self._lambda_param())
            self.expect(")")
            self.expect("->")
            return self._finish_lambda(open_tok.span, params)

        if lex == "(":
            open_tok = self.next()
            inner = self.expression()
            close = self.expect(")")
            return n.Paren(span=self.span_between(open_tok.span, close.span), expr=inner)

        if t.kind in _LITERAL_KINDS:
            self.next()
            return n.Literal(span=t.span, kind=t.kind, lexeme=t.lexeme, radix=t.radix, suffix=t.suffix)

        if lex == "this":
            self.next()
            if self.at("("):
                args, end_span = self._call_args()
                return n.MethodCall(span=self.span_between(t.span, end_span), receiver=None, name="this", name_span=t.span, args=args)
            return n.ThisExpr(span=t.span)

        if lex == "super":
            self.next()
            if self.at("("):
                args, end_span = self._call_args()
                return n.MethodCall(span=self.span_between(t.span, end_span), receiver=None, name="super", name_span=t.span, args=args)
            return n.SuperExpr(span=t.span)

        if lex == "new":
            new_tok = self.next()
            return self._object_creation(new_tok.span)

        if t.kind is TokenKind.KEYWORD and lex in PRIMITIVE_TYPES or lex == "void":
            # primitive class literal (int.class) or primitive method ref base
            self.next()
            ref = n.TypeRef(span=t.span, name=lex)
            while self.at("[") and self.at("]", 1):
                self.next()
                end = self.next()
                ref.array_dims += 1
                ref.span = self.span_between(ref.span, end.span)
            if self.at(".") and self.at("class", 1):
                self.next()
                end = self.next()
                return n.ClassLiteral(span=self.span_between(t.span, end.span), type=ref)
            raise self.error(f"unexpected type keyword {lex!r} in expression")

        if t.kind is TokenKind.IDENTIFIER:
            name_tok = self.next()
            if self.at("("):
                args, end_span = self._call_args()
                return n.MethodCall(
                    span=self.span_between(name_tok.span, end_span),
                    receiver=None,
                    name=name_tok.lexeme,
                    name_span=name_tok.span,
                    args=args,
                )
            # Array-typed method references and class literals: Foo[]::new
            if self.at("[") and self.at("]", 1):
                j = 0
                dims = 0
                while self.at("[", j) and self.at("]", j + 1):
                    j += 2
                    dims += 1
                after = self.peek(j)
                if after is not None and after.lexeme in ("::", ".") and (
                    after.lexeme == "::" or self.at("class", j + 1)
                ):
                    ref = n.TypeRef(span=name_tok.span, name=name_tok.lexeme, array_dims=dims)
                    for _ in range(dims):
                        self.next()
                        end = self.next()
                        ref.span = self.span_between(ref.span, end.span)
                    if self.at("::"):
                        self.next()
                        end_tok = self.next()  # identifier or 'new'
                        return n.MethodRef(span=self.span_between(name_tok.span, end_tok.span), receiver=ref, name=end_tok.lexeme)
                    self.next()
                    end = self.next()
                    return n.ClassLiteral(span=self.span_between(name_tok.span, end.span), type=ref)
            return n.Name(span=name_tok.span, identifier=name_tok.lexeme)

        raise self.error(f"unexpected token {lex!r} in expression")

    def _lambda_param(self) -> n.Param:
        start = self.peek().span
        self.parse_annotations()
        mods: list[str] = []
        while self.at("final"):
            self.next()
            mods.append("final")
        # Typed param when two name-ish tokens in a row, else inferred.
        if (self.at_kind(TokenKind.IDENTIFIER) or (self.peek() and self.peek().lexeme in PRIMITIVE_TYPES)) and not (
            self.at(",", 1) or self.at(")", 1)
        ):
            ptype = self.parse_type()
            name_tok = self.expect_ident()
            return n.Param(span=self.span_between(start, name_tok.span), type=ptype, name=name_tok.lexeme, name_span=name_tok.span, modifiers=mods)
        name_tok = self.expect_ident()
        return n.Param(
            span=name_tok.span,
            type=n.TypeRef(span=name_tok.span, name=""),
            name=name_tok.lexeme,
            name_span=name_tok.span,
            modifiers=mods,
        )

    def _finish_lambda(self, start: Span, params: list[n.Param]) -> n.Lambda:
        if self.at("{"):
            body: n.Expr | n.Block = self.block()
        else:
            body = self.expression()
        return n.Lambda(span=self.span_between(start, body.span), params=params, body=body)

    def _lambda_ahead(self) -> bool:
        """At '(': true when the matching ')' is directly followed by '->'."""
        depth = 0
        j = 0
        while True:
            t = self.peek(j)
            if t is None:
                return False
            if t.lexeme == "(":
                depth += 1
            elif t.lexeme == ")":
                depth -= 1
                if depth == 0:
                    after = self.peek(j + 1)
                    return after is not None and after.lexeme == "->"
            j += 1

    def _object_creation(self, start: Span, outer: n.Expr | None = None) -> n.Expr:
        del outer  # qualified creation keeps only the inner type
        ctype = self.parse_type()
        if ctype.array_dims or self.at("["):
            # parse_type consumes empty bracket pairs, so new int[]{...}
            # arrives here with its dims already on the type
            dim_exprs: list[n.Expr] = []
            extra_dims = ctype.array_dims
            end_span = ctype.span
            while self.at("["):
                self.next()
                if self.at("]"):
                    end = self.next()
                    extra_dims += 1
                    end_span = end.span
                else:
                    dim_exprs.append(self.expression())
                    end = self.expect("]")
                    end_span = end.span
            initializer = None
            if self.at("{"):
                initializer = self.array_initializer()
                end_span = initializer.span
            return n.NewArray(
                span=self.span_between(start, end_span),
                type=ctype,
                dim_exprs=dim_exprs,
                extra_dims=extra_dims,
                initializer=initializer,
            )
        args, end_span = self._call_args()
        anon_body = None
        if self.at("{"):
            self.next()
            anon_body = self.parse_members("")
            end = self.expect("}")
            end_span = end.span
        return n.NewObject(span=self.span_between(start, end_span), type=ctype, args=args, anon_body=anon_body)

    def array_initializer(self) -> n.ArrayInitializer:
        open_tok = self.expect("{")
        values: list[n.Expr] = []
        while not self.at("}"):
            if self.at("{"):
                values.append(self.array_initializer())
            else:
                values.append(self.expression())
            if self.at(","):
                self.next()
        close = self.expect("}")
        return n.ArrayInitializer(span=self.span_between(open_tok.span, close.span), values=values)
