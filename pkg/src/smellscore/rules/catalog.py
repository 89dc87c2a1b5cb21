"""The canonical rule catalog.

Each conceptual detection rule appears exactly once.  When the same rule is
implemented by more than one upstream detector it carries several origin
tags, and its violations are counted once regardless of how many detectors
know it.  Every numeric default is declared here, next to its rule, and can
be overridden per run.
"""

from __future__ import annotations

from .model import DESIGN, IMPLEMENTATION, SmellRule

PMD = "pmd"
CHECKSTYLE = "checkstyle"
DESIGNITE = "designite"


def _rule(
    rule_id: str,
    smell_type: str,
    category: str,
    origins: tuple[str, ...],
    description: str,
    **thresholds,
) -> SmellRule:
    return SmellRule(
        rule_id=rule_id,
        smell_type=smell_type,
        category=category,
        origin_tags=frozenset(origins),
        description=description,
        thresholds=thresholds,
    )


_RULES: tuple[SmellRule, ...] = (
    # ---- inconsistent-naming -------------------------------------------------
    _rule(
        "local-variable-name", "inconsistent-naming", IMPLEMENTATION, (PMD, CHECKSTYLE),
        "Local variable names must be lowerCamelCase.",
        pattern=r"^[a-z][a-zA-Z0-9]*$",
    ),
    _rule(
        "parameter-name", "inconsistent-naming", IMPLEMENTATION, (PMD,),
        "Formal parameter names must be lowerCamelCase.",
        pattern=r"^[a-z][a-zA-Z0-9]*$",
    ),
    _rule(
        "method-name", "inconsistent-naming", IMPLEMENTATION, (PMD, CHECKSTYLE),
        "Method names must be lowerCamelCase.",
        pattern=r"^[a-z][a-zA-Z0-9]*$",
    ),
    _rule(
        "class-name", "inconsistent-naming", IMPLEMENTATION, (PMD,),
        "Class, interface, and enum names must be UpperCamelCase.",
        pattern=r"^[A-Z][a-zA-Z0-9]*$",
    ),
    _rule(
        "generics-name", "inconsistent-naming", IMPLEMENTATION, (PMD,),
        "Type parameter names must be a single capital letter, optionally followed by one digit.",
        pattern=r"^[A-Z][0-9]?$",
    ),
    _rule(
        "abbreviation-as-word-in-name", "inconsistent-naming", IMPLEMENTATION, (CHECKSTYLE,),
        "Declared names must not embed runs of three or more consecutive capitals; "
        "constant (static final) field names are exempt.",
        max_consecutive_capitals=2,
    ),
    _rule(
        "abstract-class-name", "inconsistent-naming", IMPLEMENTATION, (CHECKSTYLE,),
        "Abstract class names must start with 'Abstract'.",
        pattern=r"^Abstract.+$",
    ),
    _rule(
        "catch-parameter-name", "inconsistent-naming", IMPLEMENTATION, (CHECKSTYLE,),
        "Catch parameter names must be 'e', 't', 'ex', or a lowerCamelCase word of 3+ characters.",
        pattern=r"^(e|t|ex|[a-z][a-z][a-zA-Z]+)$",
    ),
    _rule(
        "constant-name", "inconsistent-naming", IMPLEMENTATION, (CHECKSTYLE,),
        "static final fields (and interface fields) must be UPPER_SNAKE_CASE.",
        pattern=r"^[A-Z][A-Z0-9]*(_[A-Z0-9]+)*$",
    ),
    _rule(
        "illegal-identifier-name", "inconsistent-naming", IMPLEMENTATION, (CHECKSTYLE,),
        "Declared names must not be the restricted words var, record, yield, permits, sealed "
        "(case-insensitive).",
    ),
    # ---- excessive-complexity ---------------------------------------------------
    _rule(
        "simplify-boolean-expression", "excessive-complexity", IMPLEMENTATION, (CHECKSTYLE,),
        "Boolean expressions must not compare with or combine boolean literals "
        "(x == true, x || false, !true).",
    ),
    _rule(
        "simplify-conditional", "excessive-complexity", IMPLEMENTATION, (PMD,),
        "A null check is redundant next to instanceof on the same value.",
    ),
    _rule(
        "simplify-boolean-return", "excessive-complexity", IMPLEMENTATION, (PMD, CHECKSTYLE),
        "if/else that returns boolean literals on both paths should return the condition.",
    ),
    _rule(
        "simplified-ternary", "excessive-complexity", IMPLEMENTATION, (PMD,),
        "Ternaries with a boolean-literal branch should be boolean operators.",
    ),
    _rule(
        "line-length", "excessive-complexity", IMPLEMENTATION, (CHECKSTYLE,),
        "Lines must not exceed the column limit.",
        max_line_length=100,
    ),
    _rule(
        "method-length", "excessive-complexity", IMPLEMENTATION, (CHECKSTYLE, DESIGNITE),
        "Methods must not span more physical lines than the limit (signature through closing brace).",
        max_method_lines=150,
    ),
    _rule(
        "excessive-parameter-list", "excessive-complexity", IMPLEMENTATION, (PMD, DESIGNITE),
        "Methods must not declare more parameters than the limit.",
        max_parameters=7,
    ),
    # ---- redundancy ----------------------------------------------------------
    _rule(
        "redundant-import", "redundancy", IMPLEMENTATION, (CHECKSTYLE,),
        "Duplicate imports, imports from java.lang, and imports from the file's own package.",
    ),
    _rule(
        "redundant-modifier", "redundancy", IMPLEMENTATION, (CHECKSTYLE,),
        "Modifiers implied by context: public/abstract on interface methods, "
        "public/static/final on interface fields, final methods in final classes, "
        "static on nested interfaces and enums.",
    ),
    _rule(
        "copy-paste", "redundancy", IMPLEMENTATION, (PMD,),
        "Duplicated token runs within the file; each repeat after the first is a violation. "
        "The minimum is scaled down from whole-project defaults because corpus programs are small.",
        min_duplicate_tokens=30,
    ),
    # ---- incompleteness ----------------------------------------------------------
    _rule(
        "missing-switch-default", "incompleteness", IMPLEMENTATION, (CHECKSTYLE,),
        "switch statements must carry a default arm.",
    ),
    _rule(
        "todo-comment", "incompleteness", IMPLEMENTATION, (CHECKSTYLE,),
        "Comments containing TODO or FIXME mark unfinished code.",
    ),
    _rule(
        "empty-control-statement", "incompleteness", IMPLEMENTATION, (PMD,),
        "Empty bodies of if/else/for/while/do, empty switches, and stray semicolon statements. "
        "try/catch/finally and initializer blocks are covered by empty-block and empty-catch-block.",
    ),
    _rule(
        "empty-catch-block", "incompleteness", IMPLEMENTATION, (PMD, CHECKSTYLE),
        "catch blocks with no statements swallow exceptions (comments do not excuse them).",
    ),
    _rule(
        "empty-block", "incompleteness", IMPLEMENTATION, (CHECKSTYLE,),
        "Empty try, finally, synchronized, and initializer blocks.",
    ),
    # ---- improper-alignment ---------------------------------------------------
    _rule(
        "indentation", "improper-alignment", IMPLEMENTATION, (CHECKSTYLE,),
        "Statements and declarations that start a line must be indented 4 columns per nesting "
        "level; continuation lines are not checked.",
        indent_width=4,
    ),
    _rule(
        "file-tab-character", "improper-alignment", IMPLEMENTATION, (CHECKSTYLE,),
        "Tab characters are not allowed; one violation per line containing a tab.",
    ),
    _rule(
        "need-braces", "improper-alignment", IMPLEMENTATION, (CHECKSTYLE,),
        "if/else/for/while/do bodies must be brace-delimited blocks (else-if chains allowed).",
    ),
    _rule(
        "useless-parentheses", "improper-alignment", IMPLEMENTATION, (PMD,),
        "Parentheses around atoms, and around whole expressions in positions that never "
        "need grouping (return values, initializers, assignment right sides, conditions, "
        "call arguments).",
    ),
    _rule(
        "left-curly", "improper-alignment", IMPLEMENTATION, (CHECKSTYLE,),
        "Opening braces of declarations and control-flow bodies belong at the end of the "
        "preceding line, never alone on their own line.",
    ),
    _rule(
        "right-curly", "improper-alignment", IMPLEMENTATION, (CHECKSTYLE,),
        "The closing brace before else/catch/finally/while-of-do must share its line with "
        "that keyword.",
    ),
    _rule(
        "paren-pad", "improper-alignment", IMPLEMENTATION, (CHECKSTYLE,),
        "No space directly inside parentheses (after '(' or before ')') on the same line.",
    ),
    _rule(
        "method-param-pad", "improper-alignment", IMPLEMENTATION, (CHECKSTYLE,),
        "No whitespace between a method name and its parameter list, in declarations and calls.",
    ),
    _rule(
        "variable-declaration-usage-distance", "improper-alignment", IMPLEMENTATION, (CHECKSTYLE,),
        "A local variable must be declared close to its first use.",
        max_distance=3,
    ),
    _rule(
        "declaration-order", "improper-alignment", IMPLEMENTATION, (CHECKSTYLE,),
        "Class members must appear as static fields, then instance fields, then constructors, "
        "then methods.",
    ),
    # ---- magic-number ----------------------------------------------------------
    _rule(
        "magic-number", "magic-number", IMPLEMENTATION, (CHECKSTYLE,),
        "Numeric literals outside the ignore set must be named constants; "
        "static final initializers are exempt.",
        ignore_numbers=(-1, 0, 1, 2),
    ),
    # ---- dead-code ------------------------------------------------------------
    _rule(
        "unused-formal-parameter", "dead-code", IMPLEMENTATION, (PMD,),
        "Parameters of private methods that the body never references (name-based).",
    ),
    _rule(
        "unused-local-variable", "dead-code", IMPLEMENTATION, (PMD, CHECKSTYLE),
        "Local variables whose name never appears again in the enclosing body (name-based).",
    ),
    _rule(
        "unused-private-field", "dead-code", IMPLEMENTATION, (PMD,),
        "Private fields never referenced elsewhere in the file (name-based; "
        "serialVersionUID exempt).",
    ),
    _rule(
        "unused-private-method", "dead-code", IMPLEMENTATION, (PMD,),
        "Private methods whose name is never referenced elsewhere in the file (name-based).",
    ),
    _rule(
        "unused-import", "dead-code", IMPLEMENTATION, (CHECKSTYLE,),
        "Single-type imports whose simple name never occurs in the file body.",
    ),
    # ---- resource-handling -------------------------------------------------------
    _rule(
        "close-resource", "resource-handling", IMPLEMENTATION, (PMD,),
        "Locals initialized with a closeable-looking type (streams, readers, writers, "
        "channels, JDBC handles, sockets, scanners) must be closed in the method or "
        "declared as try resources.",
    ),
    _rule(
        "avoid-instantiating-objects-in-loops", "resource-handling", IMPLEMENTATION, (PMD,),
        "Object or array creation inside a loop body.",
    ),
    # ---- documentation ----------------------------------------------------------
    _rule(
        "comment-required", "documentation", IMPLEMENTATION, (PMD,),
        "public classes need a header comment of any kind.",
    ),
    _rule(
        "comment-size", "documentation", IMPLEMENTATION, (PMD,),
        "Comments must not span more lines than the limit.",
        max_comment_lines=10,
    ),
    _rule(
        "comment-content", "documentation", IMPLEMENTATION, (PMD,),
        "Comments must not contain disallowed words.",
        disallowed_words=("hack", "wtf", "xxx"),
    ),
    _rule(
        "javadoc-method", "documentation", IMPLEMENTATION, (CHECKSTYLE,),
        "public/protected methods and constructors need a Javadoc comment "
        "(@Override implementations exempt; interface methods count as public).",
    ),
    _rule(
        "javadoc-type", "documentation", IMPLEMENTATION, (CHECKSTYLE,),
        "public/protected type declarations need a Javadoc comment.",
    ),
    _rule(
        "missing-javadoc-package", "documentation", IMPLEMENTATION, (CHECKSTYLE,),
        "package-info.java must document its package with a Javadoc comment.",
    ),
    _rule(
        "javadoc-variable", "documentation", IMPLEMENTATION, (CHECKSTYLE,),
        "Field declarations need a Javadoc comment (all visibilities).",
    ),
    # ---- modularity (design) ------------------------------------------------
    _rule(
        "god-class", "modularity", DESIGN, (PMD,),
        "Classes that are both oversized (NOM+NOA beyond the limit) and reach into many "
        "foreign objects (distinct non-this receivers beyond the limit).",
        max_members=40,
        max_foreign_accesses=5,
    ),
    _rule(
        "data-class", "modularity", DESIGN, (PMD,),
        "Classes holding fields whose methods are all one-statement accessors (get/set/is).",
        min_accessors=2,
    ),
    _rule(
        "too-many-methods", "modularity", DESIGN, (PMD,),
        "Classes declaring more methods than the limit.",
        max_methods=10,
    ),
    _rule(
        "too-many-fields", "modularity", DESIGN, (PMD,),
        "Classes declaring more fields than the limit.",
        max_fields=15,
    ),
    _rule(
        "use-utility-class", "modularity", DESIGN, (PMD,),
        "Instantiable classes whose methods are all static should be utility classes "
        "(final with a private constructor).",
    ),
    _rule(
        "hide-utility-class-constructor", "modularity", DESIGN, (CHECKSTYLE,),
        "Classes with only static members must hide their constructor.",
    ),
    _rule(
        "broken-modularization", "modularity", DESIGN, (DESIGNITE,),
        "Data-only classes: instance fields but no methods or constructors.",
    ),
    _rule(
        "cyclically-dependent-modularization", "modularity", DESIGN, (DESIGNITE,),
        "Types in the file that reference each other in a cycle; every member of a cycle "
        "is flagged.",
    ),
    _rule(
        "hub-like-modularization", "modularity", DESIGN, (DESIGNITE,),
        "Types both referenced by and referencing many other types in the file. "
        "Thresholds are scaled to single-unit analysis.",
        min_fan_in=3,
        min_fan_out=3,
    ),
    _rule(
        "insufficient-modularization", "modularity", DESIGN, (DESIGNITE,),
        "Classes that are too large or too complex to be one module: public method count, "
        "total method count, or any method's cyclomatic complexity beyond its limit.",
        max_public_methods=20,
        max_total_methods=30,
        max_method_cyclomatic=10,
    ),
    _rule(
        "law-of-demeter", "modularity", DESIGN, (PMD,),
        "Method-call chains of the configured length or more on non-builder receivers.",
        max_chain=3,
    ),
    _rule(
        "coupling-between-objects", "modularity", DESIGN, (PMD,),
        "Classes referencing more distinct type names than the limit.",
        max_coupling=20,
    ),
    _rule(
        "class-fan-out", "modularity", DESIGN, (CHECKSTYLE,),
        "Classes depending on more distinct type names than the limit.",
        max_fan_out=20,
    ),
    # ---- encapsulation ----------------------------------------------------------
    _rule(
        "visibility-modifier", "encapsulation", DESIGN, (CHECKSTYLE,),
        "Fields must be private unless static final (interface constants exempt).",
    ),
    _rule(
        "excessive-public-count", "encapsulation", DESIGN, (PMD,),
        "Classes exposing more public methods and fields than the limit.",
        max_public=45,
    ),
    _rule(
        "deficient-encapsulation", "encapsulation", DESIGN, (DESIGNITE,),
        "Classes exposing non-constant public fields.",
    ),
    _rule(
        "final-parameters", "encapsulation", DESIGN, (CHECKSTYLE,),
        "Method and constructor parameters should be declared final.",
    ),
    _rule(
        "final-class", "encapsulation", DESIGN, (CHECKSTYLE,),
        "Classes with only private constructors should be final.",
    ),
    _rule(
        "hidden-field", "encapsulation", DESIGN, (CHECKSTYLE,),
        "Parameters and locals must not shadow fields of the enclosing class.",
    ),
    _rule(
        "unexploited-encapsulation", "encapsulation", DESIGN, (DESIGNITE,),
        "Methods running chained instanceof type checks on one value instead of relying "
        "on polymorphism.",
        min_type_checks=2,
    ),
    # ---- hierarchy --------------------------------------------------------------
    # All hierarchy rules are evaluated only when the unit declares more than
    # one type or uses extends/implements; they cannot apply to a lone class.
    _rule(
        "broken-hierarchy", "hierarchy", DESIGN, (DESIGNITE,),
        "Subclasses overriding an in-file parent method with an empty body, silently "
        "dropping inherited behavior.",
    ),
    _rule(
        "cyclic-hierarchy", "hierarchy", DESIGN, (DESIGNITE,),
        "Supertypes that reference one of their own subtypes.",
    ),
    _rule(
        "deep-hierarchy", "hierarchy", DESIGN, (DESIGNITE,),
        "Classes whose in-file extends chain is deeper than the limit.",
        max_depth=6,
    ),
    _rule(
        "missing-hierarchy", "hierarchy", DESIGN, (DESIGNITE,),
        "Methods dispatching on one value with 3+ way equality chains or switches where a "
        "type hierarchy should carry the variation.",
        min_branches=3,
    ),
    _rule(
        "multipath-hierarchy", "hierarchy", DESIGN, (DESIGNITE,),
        "Types inheriting from the same in-file ancestor through more than one path.",
    ),
    _rule(
        "rebellious-hierarchy", "hierarchy", DESIGN, (DESIGNITE,),
        "Subclasses overriding an in-file parent method with a throw-only body, rejecting "
        "the supertype contract.",
    ),
    _rule(
        "wide-hierarchy", "hierarchy", DESIGN, (DESIGNITE,),
        "Supertypes with more direct in-file subtypes than the limit.",
        max_width=10,
    ),
    _rule(
        "dependency-cycles-between-packages", "hierarchy", DESIGN, (DESIGNITE,),
        "Package-level cycles; degraded to the single-unit signal of importing a type "
        "from the file's own package.",
    ),
    # ---- abstraction ---------------------------------------------------------
    _rule(
        "imperative-abstraction", "abstraction", DESIGN, (DESIGNITE,),
        "Classes that wrap a single public instance method and little data: an operation "
        "modeled as a class.",
        max_fields=1,
    ),
    _rule(
        "multifaceted-abstraction", "abstraction", DESIGN, (DESIGNITE,),
        "Classes whose method/field usage graph splits into disjoint responsibility "
        "clusters.",
    ),
    _rule(
        "unnecessary-abstraction", "abstraction", DESIGN, (DESIGNITE,),
        "Classes with no behavior and no instance data: empty classes and bare constant "
        "holders.",
    ),
    _rule(
        "unutilized-abstraction", "abstraction", DESIGN, (DESIGNITE,),
        "Non-public helper types never referenced by the rest of the file "
        "(the file's first top-level type is its entry point and exempt).",
    ),
)

_BY_ID = {r.rule_id: r for r in _RULES}
assert len(_BY_ID) == len(_RULES), "duplicate rule_id in catalog"


def catalog() -> list[SmellRule]:
    """All canonical rules, in catalog order."""
    return list(_RULES)


def rule_by_id(rule_id: str) -> SmellRule:
    return _BY_ID[rule_id]


def rule_types() -> dict[str, str]:
    """rule_id -> smell_type for every cataloged rule."""
    return {r.rule_id: r.smell_type for r in _RULES}


def rules_for_category(category: str) -> list[SmellRule]:
    return [r for r in _RULES if r.category == category]


def rules_for_type(smell_type: str) -> list[SmellRule]:
    return [r for r in _RULES if r.smell_type == smell_type]


def multi_origin_rules() -> list[SmellRule]:
    return [r for r in _RULES if len(r.origin_tags) > 1]
