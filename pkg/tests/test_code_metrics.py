"""Method and class metrics: counting rules, invariances, and guard rails."""

from __future__ import annotations

import pytest

from smellscore.code_metrics import (
    AbstractBodyError,
    class_metrics,
    cognitive_complexity,
    cyclomatic_complexity,
    inheritance_depth_hint,
    max_method_cyclomatic,
    method_metrics,
)
from smellscore.java_syntax import parse_text


def method_of(body: str, params: str = "int a, int b"):
    out = parse_text("T.java", "class T {\n    void m(%s) {\n%s\n    }\n}\n" % (params, body))
    assert out.ok, out.failure
    return out.ast.types[0].methods[0]


class TestMethodMetrics:
    def test_straight_line(self):
        m = method_metrics(method_of("        int x = 0;"))
        assert m.cyclomatic == 1
        assert m.cognitive == 0

    def test_if_containing_while(self):
        m = method_metrics(method_of("        if (a > 0) {\n            while (b > 0) {\n                b--;\n            }\n        }"))
        assert m.cyclomatic == 3
        assert m.cognitive == 3  # if, while, plus one nesting increment

    def test_switch_case_labels(self):
        body = (
            "        switch (a) {\n"
            "            case 1:\n                break;\n"
            "            case 2:\n                break;\n"
            "            case 3:\n                break;\n"
            "            default:\n                break;\n"
            "        }"
        )
        m = method_metrics(method_of(body))
        assert m.cyclomatic == 4  # one per case label, default excluded

    def test_boolean_operators_count(self):
        m = method_metrics(method_of("        if (a > 0 && b > 0 || a < -5) {\n            return;\n        }"))
        assert m.cyclomatic == 4  # if, &&, ||
        assert m.cognitive == 3  # if plus two operator runs

    def test_ternary_counts(self):
        m = method_metrics(method_of("        int x = a > b ? a : b;"))
        assert m.cyclomatic == 2

    def test_catch_counts(self):
        m = method_metrics(method_of("        try {\n            run();\n        } catch (Exception e) {\n            stop();\n        }"))
        assert m.cyclomatic == 2
        assert m.cognitive == 1

    def test_else_if_chain_cognitive(self):
        body = (
            "        if (a > 2) {\n            a = 0;\n"
            "        } else if (b > 2) {\n            b = 0;\n"
            "        } else {\n            a = b;\n        }"
        )
        m = method_metrics(method_of(body))
        assert m.cyclomatic == 3
        assert m.cognitive == 3  # if +1, else-if +1, else +1

    def test_parameter_and_statement_counts(self):
        m = method_metrics(method_of("        int x = 0;\n        x = a;\n        return;", params="int a"))
        assert m.parameter_count == 1
        assert m.statement_count == 3

    def test_loc_is_physical_body_lines(self):
        m = method_metrics(method_of("        int x = 0;"))
        # opening brace line through closing brace line
        assert m.loc == 3

    def test_bodiless_method_raises(self):
        out = parse_text("T.java", "abstract class T { abstract void m(); }")
        with pytest.raises(AbstractBodyError):
            method_metrics(out.ast.types[0].methods[0])

    def test_comment_and_whitespace_invariance(self):
        plain = method_of("        if (a > 0) {\n            b = 1;\n        }")
        commented = method_of("        // guard\n        if (a > 0) {\n\n            b = 1; /* set */\n        }")
        assert cyclomatic_complexity(plain.body) == cyclomatic_complexity(commented.body)
        assert cognitive_complexity(plain.body) == cognitive_complexity(commented.body)

    def test_lambda_nesting_increments(self):
        m = method_metrics(method_of("        items.forEach(s -> {\n            if (a > 0) {\n                run(s);\n            }\n        });"))
        # lambda adds nesting but no structural increment: if at nesting 1
        assert m.cognitive == 2


class TestClassMetrics:
    def test_empty_class(self):
        out = parse_text("A.java", "class A {}")
        cm = class_metrics(out.ast.types[0])
        assert (cm.method_count, cm.field_count, cm.fan_out) == (0, 0, 0)

    def test_counts_match_declarations(self):
        methods = "\n".join(f"    public void m{i}() {{\n    }}" for i in range(12))
        fields = "\n".join(f"    private int f{i};" for i in range(9))
        out = parse_text("A.java", f"class A {{\n{fields}\n{methods}\n}}\n")
        cm = class_metrics(out.ast.types[0])
        assert cm.method_count == 12
        assert cm.field_count == 9
        assert cm.public_member_count == 12

    def test_fan_out_distinct_type_names(self):
        fields = "\n".join(f"    T{i} f{i};" for i in range(21))
        out = parse_text("A.java", f"class A {{\n{fields}\n}}\n")
        assert class_metrics(out.ast.types[0]).fan_out == 21

    def test_fan_out_ignores_primitives_own_name_and_type_params(self):
        out = parse_text("A.java", "class A<T> { T value; int count; A next; String label; }")
        assert class_metrics(out.ast.types[0]).fan_out == 1  # only String

    def test_inheritance_hint_within_file(self):
        out = parse_text("A.java", "class A {}\nclass B extends A {}\nclass C extends B {}\nclass D extends External {}\n")
        by_name = {t.name: t for t in out.ast.types}
        assert inheritance_depth_hint(by_name["A"], out.ast) == 0
        assert inheritance_depth_hint(by_name["C"], out.ast) == 2
        assert inheritance_depth_hint(by_name["D"], out.ast) == 1

    def test_max_method_cyclomatic(self):
        out = parse_text(
            "A.java",
            "class A { void m() { if (x > 0) { x = 1; } } void n() { while (x > 0) { if (y > 0) { y = 1; } } } }",
        )
        assert max_method_cyclomatic(out.ast) == 3
