"""AST node types for the supported Java subset.

Every node carries a Span.  Member lists on type declarations preserve source
order; convenience accessors partition them by kind.  Comments are kept on the
compilation unit and attached to declarations they immediately precede.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from .lexer import Span, TokenKind


@dataclass
class Node:
    span: Span


@dataclass
class Comment(Node):
    kind: TokenKind  # LINE_COMMENT, BLOCK_COMMENT, or JAVADOC
    text: str

    @property
    def is_javadoc(self) -> bool:
        return self.kind is TokenKind.JAVADOC

    @property
    def line_span(self) -> int:
        return self.span.end_line - self.span.start_line + 1


# --------------------------------------------------------------------------
# Types and declarations
# --------------------------------------------------------------------------

@dataclass
class TypeRef(Node):
    """A textual type reference: dotted name, type arguments, array dims."""

    name: str  # dotted source name, e.g. "java.util.List" or "int"
    type_args: list["TypeRef"] = field(default_factory=list)
    array_dims: int = 0
    bound_kind: str | None = None  # "extends"/"super" for wildcard bounds
    bound: Optional["TypeRef"] = None

    @property
    def simple_name(self) -> str:
        return self.name.rsplit(".", 1)[-1]

    def referenced_names(self) -> Iterator[str]:
        """Yield every simple type name this reference mentions."""
        if self.name not in ("?",):
            yield self.simple_name
        for arg in self.type_args:
            yield from arg.referenced_names()
        if self.bound is not None:
            yield from self.bound.referenced_names()


@dataclass
class Annotation(Node):
    name: str


@dataclass
class TypeParam(Node):
    name: str
    bounds: list[TypeRef] = field(default_factory=list)


@dataclass
class PackageDecl(Node):
    name: str


@dataclass
class ImportDecl(Node):
    name: str  # dotted name without the trailing ".*"
    is_static: bool = False
    on_demand: bool = False


@dataclass
class Param(Node):
    type: TypeRef
    name: str
    name_span: Span
    modifiers: list[str] = field(default_factory=list)
    annotations: list[Annotation] = field(default_factory=list)
    varargs: bool = False

    @property
    def is_final(self) -> bool:
        return "final" in self.modifiers


@dataclass
class VarDeclarator(Node):
    name: str
    name_span: Span
    extra_dims: int = 0
    init: Optional["Expr"] = None


@dataclass
class FieldDecl(Node):
    modifiers: list[str]
    annotations: list[Annotation]
    type: TypeRef
    declarators: list[VarDeclarator]
    doc: Comment | None = None

    @property
    def is_static_final(self) -> bool:
        return "static" in self.modifiers and "final" in self.modifiers


@dataclass
class MethodDecl(Node):
    modifiers: list[str]
    annotations: list[Annotation]
    type_params: list[TypeParam]
    return_type: TypeRef | None  # None for constructors
    name: str
    name_span: Span
    params: list[Param]
    throws: list[TypeRef]
    body: Optional["Block"]
    is_constructor: bool = False
    doc: Comment | None = None

    @property
    def is_static(self) -> bool:
        return "static" in self.modifiers

    @property
    def is_abstract(self) -> bool:
        return "abstract" in self.modifiers or self.body is None

    def visibility(self) -> str:
        for m in ("public", "protected", "private"):
            if m in self.modifiers:
                return m
        return "package"


@dataclass
class Initializer(Node):
    static: bool
    body: "Block"


@dataclass
class EnumConstant(Node):
    name: str
    args: list["Expr"] = field(default_factory=list)


@dataclass
class TypeDecl(Node):
    kind: str  # "class" | "interface" | "enum"
    name: str
    name_span: Span
    modifiers: list[str]
    annotations: list[Annotation]
    type_params: list[TypeParam]
    extends: list[TypeRef]  # classes: 0..1 entry; interfaces: any
    implements: list[TypeRef]
    members: list[Union[FieldDecl, MethodDecl, Initializer, "TypeDecl"]]
    enum_constants: list[EnumConstant] = field(default_factory=list)
    doc: Comment | None = None

    @property
    def fields(self) -> list[FieldDecl]:
        return [m for m in self.members if isinstance(m, FieldDecl)]

    @property
    def methods(self) -> list[MethodDecl]:
        return [m for m in self.members if isinstance(m, MethodDecl) and not m.is_constructor]

    @property
    def constructors(self) -> list[MethodDecl]:
        return [m for m in self.members if isinstance(m, MethodDecl) and m.is_constructor]

    @property
    def initializers(self) -> list[Initializer]:
        return [m for m in self.members if isinstance(m, Initializer)]

    @property
    def nested_types(self) -> list["TypeDecl"]:
        return [m for m in self.members if isinstance(m, TypeDecl)]

    @property
    def is_abstract(self) -> bool:
        return "abstract" in self.modifiers

    def visibility(self) -> str:
        for m in ("public", "protected", "private"):
            if m in self.modifiers:
                return m
        return "package"

    def field_names(self) -> list[str]:
        return [d.name for f in self.fields for d in f.declarators]


@dataclass
class CompilationUnit(Node):
    package: PackageDecl | None
    imports: list[ImportDecl]
    types: list[TypeDecl]
    comments: list[Comment] = field(default_factory=list)

    def all_types(self) -> Iterator[TypeDecl]:
        """Top-level and nested type declarations, outer first."""
        stack = list(self.types)
        while stack:
            t = stack.pop(0)
            yield t
            stack = t.nested_types + stack


# --------------------------------------------------------------------------
# Statements
# --------------------------------------------------------------------------

@dataclass
class Stmt(Node):
    pass


@dataclass
class Expr(Node):
    pass


@dataclass
class Block(Stmt):
    statements: list[Stmt]


@dataclass
class LocalVarDecl(Stmt):
    modifiers: list[str]
    annotations: list[Annotation]
    type: TypeRef
    declarators: list[VarDeclarator]


@dataclass
class ExprStmt(Stmt):
    expr: Expr


@dataclass
class IfStmt(Stmt):
    cond: Expr
    then: Stmt
    orelse: Stmt | None = None


@dataclass
class WhileStmt(Stmt):
    cond: Expr
    body: Stmt


@dataclass
class DoWhileStmt(Stmt):
    body: Stmt
    cond: Expr


@dataclass
class ForStmt(Stmt):
    init: list[Stmt]  # LocalVarDecl or ExprStmt entries
    cond: Expr | None
    update: list[Expr]
    body: Stmt


@dataclass
class ForEachStmt(Stmt):
    var_modifiers: list[str]
    var_type: TypeRef
    var_name: str
    var_name_span: Span
    iterable: Expr
    body: Stmt


@dataclass
class SwitchArm(Node):
    labels: list[Expr | None]  # None marks the default label
    statements: list[Stmt]

    @property
    def is_default(self) -> bool:
        return any(lbl is None for lbl in self.labels)


@dataclass
class SwitchStmt(Stmt):
    selector: Expr
    arms: list[SwitchArm]

    @property
    def has_default(self) -> bool:
        return any(arm.is_default for arm in self.arms)

    def case_label_count(self) -> int:
        return sum(1 for arm in self.arms for lbl in arm.labels if lbl is not None)


@dataclass
class CatchClause(Node):
    types: list[TypeRef]  # multi-catch alternatives
    name: str
    name_span: Span
    modifiers: list[str]
    body: Block


@dataclass
class TryStmt(Stmt):
    resources: list[LocalVarDecl]
    body: Block
    catches: list[CatchClause]
    finally_block: Block | None = None


@dataclass
class ReturnStmt(Stmt):
    value: Expr | None = None


@dataclass
class ThrowStmt(Stmt):
    expr: Expr = None  # type: ignore[assignment]


@dataclass
class BreakStmt(Stmt):
    label: str | None = None


@dataclass
class ContinueStmt(Stmt):
    label: str | None = None


@dataclass
class EmptyStmt(Stmt):
    pass


@dataclass
class SynchronizedStmt(Stmt):
    lock: Expr
    body: Block


@dataclass
class LabeledStmt(Stmt):
    label: str
    stmt: Stmt


@dataclass
class AssertStmt(Stmt):
    cond: Expr
    message: Expr | None = None


@dataclass
class LocalTypeDecl(Stmt):
    decl: TypeDecl


# --------------------------------------------------------------------------
# Expressions
# --------------------------------------------------------------------------

@dataclass
class Assign(Expr):
    target: Expr
    op: str  # "=", "+=", ...
    value: Expr


@dataclass
class Ternary(Expr):
    cond: Expr
    if_true: Expr
    if_false: Expr


@dataclass
class Binary(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass
class Unary(Expr):
    op: str
    operand: Expr
    prefix: bool = True


@dataclass
class Cast(Expr):
    type: TypeRef
    expr: Expr


@dataclass
class InstanceOf(Expr):
    expr: Expr
    type: TypeRef


@dataclass
class MethodCall(Expr):
    receiver: Expr | None
    name: str
    name_span: Span
    args: list[Expr]


@dataclass
class FieldAccess(Expr):
    receiver: Expr
    name: str


@dataclass
class Name(Expr):
    identifier: str


@dataclass
class ThisExpr(Expr):
    pass


@dataclass
class SuperExpr(Expr):
    pass


@dataclass
class Literal(Expr):
    kind: TokenKind
    lexeme: str
    radix: int | None = None
    suffix: str | None = None


@dataclass
class Paren(Expr):
    expr: Expr


@dataclass
class NewObject(Expr):
    type: TypeRef
    args: list[Expr]
    anon_body: list[Union[FieldDecl, MethodDecl, Initializer, TypeDecl]] | None = None


@dataclass
class NewArray(Expr):
    type: TypeRef
    dim_exprs: list[Expr]
    extra_dims: int = 0
    initializer: Optional["ArrayInitializer"] = None


@dataclass
class ArrayInitializer(Expr):
    values: list[Expr]


@dataclass
class ArrayAccess(Expr):
    array: Expr
    index: Expr


@dataclass
class Lambda(Expr):
    params: list[Param]  # inferred-type params carry a name-only TypeRef ""
    body: Union[Expr, Block]


@dataclass
class MethodRef(Expr):
    receiver: Expr | TypeRef
    name: str  # method name or "new"


@dataclass
class ClassLiteral(Expr):
    type: TypeRef


# --------------------------------------------------------------------------
# Generic traversal
# --------------------------------------------------------------------------

def iter_child_nodes(node: Node) -> Iterator[Node]:
    """Yield the direct Node children of a node, in field order."""
    for f in dataclasses.fields(node):
        if f.name == "span":
            continue
        value = getattr(node, f.name)
        if isinstance(value, Node):
            yield value
        elif isinstance(value, list):
            for item in value:
                if isinstance(item, Node):
                    yield item


def walk(node: Node) -> Iterator[Node]:
    """Yield node and all descendants, depth-first, in source order."""
    yield node
    for child in iter_child_nodes(node):
        yield from walk(child)
