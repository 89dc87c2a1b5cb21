"""Lexer and parser behavior: lossless tokenization, structural parsing of
the supported subset, located failures, and determinism."""

from __future__ import annotations

import pytest

from smellscore.java_syntax import (
    LexError,
    SourceFile,
    TokenKind,
    parse,
    parse_text,
    significant,
    tokenize,
)
from smellscore.java_syntax import nodes as n

SAMPLE = """\
package demo;

import java.util.List;

/** Doc. */
public class Sample extends Base implements Runnable {
    private static final int LIMIT = 100;
    private List<String> names;

    public Sample(int size) {
        this.names = new java.util.ArrayList<String>(size);
    }

    @Override
    public void run() {
        int total = 0;
        for (int i = 0; i < LIMIT && total >= 0; i++) {
            total += i % 3 == 0 ? i : -i;
        }
        while (total > 0) {
            total--;
        }
        try {
            names.forEach(s -> System.out.println(s));
        } catch (RuntimeException e) {
            throw new IllegalStateException("bad", e);
        } finally {
            total = 0;
        }
    }
}
"""


def _src(text: str, path: str = "T.java") -> SourceFile:
    return SourceFile.from_text(path, text)


class TestTokenize:
    def test_round_trip_is_byte_exact(self):
        toks = tokenize(_src(SAMPLE))
        assert "".join(t.lexeme for t in toks) == SAMPLE

    def test_hex_literal_classification(self):
        toks = significant(tokenize(_src("int x = 0x1F;")))
        kinds = [(t.kind, t.lexeme) for t in toks]
        assert kinds == [
            (TokenKind.KEYWORD, "int"),
            (TokenKind.IDENTIFIER, "x"),
            (TokenKind.OPERATOR, "="),
            (TokenKind.NUMBER, "0x1F"),
            (TokenKind.SEPARATOR, ";"),
        ]
        number = toks[3]
        assert number.radix == 16

    def test_numeric_suffix_and_radix(self):
        toks = significant(tokenize(_src("long a = 10L; double b = 1.5e3d; int c = 0b101; int d = 0777;")))
        numbers = [t for t in toks if t.kind is TokenKind.NUMBER]
        assert [(t.lexeme, t.radix, t.suffix) for t in numbers] == [
            ("10L", 10, "L"),
            ("1.5e3d", 10, "d"),
            ("0b101", 2, None),
            ("0777", 8, None),
        ]

    def test_unterminated_block_comment(self):
        with pytest.raises(LexError) as err:
            tokenize(_src("/* open"))
        assert (err.value.line, err.value.col) == (1, 1)

    def test_unterminated_string(self):
        with pytest.raises(LexError):
            tokenize(_src('String s = "abc'))

    def test_illegal_character(self):
        with pytest.raises(LexError):
            tokenize(_src("int x = #;"))

    def test_mixed_token_kind_sequence(self):
        text = (
            '// note\nclass A { String s = "x"; char c = \'y\'; boolean b = true; '
            "Object o = null; int[] ns = {1, 2}; double d = 1.5e2; }\n"
        )
        kinds = [t.kind for t in significant(tokenize(_src(text)))]
        K, I, S, O = TokenKind.KEYWORD, TokenKind.IDENTIFIER, TokenKind.SEPARATOR, TokenKind.OPERATOR
        expected = [
            K, I, S,  # class A {
            I, I, O, TokenKind.STRING, S,  # String s = "x" ;
            K, I, O, TokenKind.CHAR, S,  # char c = 'y' ;
            K, I, O, TokenKind.BOOL, S,  # boolean b = true ;
            I, I, O, TokenKind.NULL, S,  # Object o = null ;
            K, S, S, I, O, S, TokenKind.NUMBER, S, TokenKind.NUMBER, S, S,  # int [ ] ns = { 1 , 2 } ;
            K, I, O, TokenKind.NUMBER, S,  # double d = 1.5e2 ;
            S,  # }
        ]
        assert len(kinds) == 40
        assert kinds == expected

    def test_spans_are_ordered_and_contiguous(self):
        src = _src(SAMPLE)
        toks = tokenize(src)
        offset = 0
        for t in toks:
            start = src.line_index[t.span.start_line - 1] + t.span.start_col - 1
            assert start == offset
            offset += len(t.lexeme)
        assert offset == len(SAMPLE)


class TestParse:
    def test_minimal_class(self):
        out = parse_text("A.java", "class A {}")
        assert out.ok
        decl = out.ast.types[0]
        assert decl.name == "A" and decl.kind == "class"
        assert decl.methods == [] and decl.fields == []

    def test_structural_counts(self):
        out = parse_text("A.java", "class A { void m(int a, int b) { if (a>b) return; } }")
        assert out.ok
        decl = out.ast.types[0]
        assert len(decl.methods) == 1
        method = decl.methods[0]
        assert len(method.params) == 2
        ifs = [s for s in n.walk(method.body) if isinstance(s, n.IfStmt)]
        assert len(ifs) == 1

    def test_malformed_parameter_list(self):
        out = parse_text("A.java", "class A { void m( { }")
        assert not out.ok
        # first error is the '{' where a type was expected
        assert out.failure.first_error_span.start_line == 1
        assert out.failure.first_error_span.start_col == 19

    def test_lex_failure_becomes_parse_failure(self):
        out = parse_text("A.java", "/* open")
        assert not out.ok
        assert out.failure.first_error_span.start_line == 1

    def test_parse_is_deterministic(self):
        first = parse_text("S.java", SAMPLE)
        second = parse_text("S.java", SAMPLE)
        assert first.ok and second.ok
        assert first.ast == second.ast

    def test_child_spans_within_parent_spans(self):
        out = parse_text("S.java", SAMPLE)
        assert out.ok

        def contains(outer, inner) -> bool:
            if inner.start_line < outer.start_line or inner.end_line > outer.end_line:
                return False
            if inner.start_line == outer.start_line and inner.start_col < outer.start_col:
                return False
            if inner.end_line == outer.end_line and inner.end_col > outer.end_col:
                return False
            return True

        for node in n.walk(out.ast):
            for child in n.iter_child_nodes(node):
                if isinstance(child, n.Comment):
                    continue  # attached docs precede their declaration
                assert contains(node.span, child.span), (node, child)

    def test_doc_comment_attachment(self):
        out = parse_text("S.java", SAMPLE)
        decl = out.ast.types[0]
        assert decl.doc is not None and decl.doc.is_javadoc
        ctor = decl.constructors[0]
        assert ctor.doc is None

    def test_switch_arms_preserve_order(self):
        text = """\
class A {
    void m(int k) {
        switch (k) {
            case 2:
                break;
            case 1:
                break;
            default:
                break;
        }
    }
}
"""
        out = parse_text("A.java", text)
        assert out.ok
        switch = next(s for s in n.walk(out.ast) if isinstance(s, n.SwitchStmt))
        labels = []
        for arm in switch.arms:
            for lbl in arm.labels:
                labels.append(None if lbl is None else lbl.lexeme)
        assert labels == ["2", "1", None]

    def test_generics_shift_split(self):
        out = parse_text("G.java", "class G { java.util.Map<String, java.util.List<Integer>> cache; }")
        assert out.ok, out.failure
        field = out.ast.types[0].fields[0]
        assert field.type.simple_name == "Map"
        assert len(field.type.type_args) == 2

    def test_anonymous_class_and_lambda(self):
        text = """\
class A {
    Runnable r1 = new Runnable() {
        public void run() {
        }
    };
    Runnable r2 = () -> {
    };
}
"""
        out = parse_text("A.java", text)
        assert out.ok, out.failure

    def test_cast_vs_paren(self):
        out = parse_text("C.java", "class C { void m(Object o) { int a = (int) f(); int b = (a) + 1; String s = (String) o; } }")
        assert out.ok, out.failure
        casts = [e for e in n.walk(out.ast) if isinstance(e, n.Cast)]
        assert len(casts) == 2

    def test_enum_with_constructor_args(self):
        text = """\
enum Planet {
    EARTH(1), MARS(2);

    private final int order;

    Planet(int order) {
        this.order = order;
    }
}
"""
        out = parse_text("P.java", text)
        assert out.ok, out.failure
        decl = out.ast.types[0]
        assert [c.name for c in decl.enum_constants] == ["EARTH", "MARS"]
        assert len(decl.constructors) == 1

    def test_line_index_invariants(self):
        src = _src(SAMPLE)
        assert src.line_index[0] == 0
        assert all(a < b for a, b in zip(src.line_index, src.line_index[1:]))


STRESS_SAMPLES = {
    "generics_methods": """\
import java.util.*;
class G<K, V extends Comparable<V>> {
    Map<K, List<V>> index = new HashMap<K, List<V>>();
    <T extends Number> T pick(List<? extends T> xs, T fallback) {
        if (xs.isEmpty()) {
            return fallback;
        }
        return xs.get(0);
    }
}
""",
    "arrays": """\
class Arrays2 {
    int[][] grid = new int[3][4];
    int[] flat = new int[]{1, 2, 3};
    String[] names = {"a", "b"};
    void m(String... args) {
        int x[] = new int[5];
        grid[0][1] = x[2] + flat[0];
        int[][] deep = new int[][]{{1}, {2}};
    }
}
""",
    "ternary_nest": """\
class T {
    int pick(int a, int b, int c) {
        return a > b ? (b > c ? b : c) : a > c ? a : c;
    }
}
""",
    "string_escapes": r"""class S {
    String s = "tab\t quote\" backslash\\ unicodeA";
    char c = '\'';
    char n = '\n';
}
""",
    "do_label_continue": """\
class L {
    void m(int n) {
        outer:
        for (int i = 0; i < n; i++) {
            int j = 0;
            do {
                j++;
                if (j > 3) {
                    continue outer;
                }
            } while (j < 10);
        }
    }
}
""",
    "method_refs_lambdas": """\
import java.util.function.*;
class F {
    Runnable r = F::run2;
    Supplier<F> s = F::new;
    Function<int[], Integer> len = a -> a.length;
    BiFunction<Integer, Integer, Integer> add = (x, y) -> x + y;
    Consumer<String> p = (String z) -> System.out.println(z);
    static void run2() {
    }
}
""",
    "casts_instanceof": """\
class C {
    Object o;
    void m() {
        if (o instanceof String) {
            String s = (String) o;
            int n = ((String) o).length();
            double d = (double) n / 2;
            long l = (long) -n;
            byte b = (byte) (n & 0xFF);
        }
    }
}
""",
    "anon_class_args": """\
class A {
    Thread t = new Thread(new Runnable() {
        public void run() {
            int x = 0;
            x += 1;
        }
    }, "worker");
}
""",
    "try_with_multi": """\
import java.io.*;
class R {
    void m(String p) {
        try (FileReader a = new FileReader(p); BufferedReader b = new BufferedReader(a)) {
            b.readLine();
        } catch (IOException | RuntimeException e) {
            e.printStackTrace();
        }
    }
}
""",
    "qualified_and_this": """\
class Q {
    int value;
    Q self() {
        return this;
    }
    void m(Q other) {
        this.value = other.value;
        java.util.List<String> xs = new java.util.ArrayList<String>();
        String cls = Q.class.getName();
        int max = java.lang.Math.max(1, 2);
    }
}
""",
    "enum_constant_bodies": """\
enum Op {
    ADD("+") {
    },
    SUB("-");

    private final String symbol;

    Op(String symbol) {
        this.symbol = symbol;
    }

    String symbol() {
        return symbol;
    }
}
""",
    "assignment_operators": """\
class Ops {
    void m(int a, int b) {
        a <<= 1;
        a >>= 2;
        a >>>= 1;
        a &= b;
        a |= b;
        a ^= b;
        a %= 3 + (b > 0 ? 1 : 2);
        boolean z = a != b && !(a == 0) || b >= -1;
    }
}
""",
    "synchronized_assert": """\
class Sync {
    private final Object lock = new Object();
    void m(int n) {
        assert n > 0 : "must be positive";
        synchronized (lock) {
            n--;
        }
    }
}
""",
}


@pytest.mark.parametrize("name", sorted(STRESS_SAMPLES))
def test_stress_sample_parses_and_round_trips(name):
    text = STRESS_SAMPLES[name]
    out = parse_text(f"{name}.java", text)
    assert out.ok, out.failure
    toks = tokenize(_src(text))
    assert "".join(t.lexeme for t in toks) == text
