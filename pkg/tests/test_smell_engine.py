"""Engine-level invariants: dedup, aggregation, monotonicity, determinism,
per-corpus detection, and the single-class silence of hierarchy rules."""

from __future__ import annotations

import json

from smellscore.java_syntax import SourceFile
from smellscore.rules.catalog import catalog, rule_by_id, rules_for_category, rules_for_type
from smellscore.smell_engine import BASELINE, detect_corpus, detect_file, load_report_store, write_report_store

from test_corpus import make_task, write_manifest
from smellscore.corpus import load_manifest

SMELLY = """\
public class Messy {
    public int count;

    public void grow(int amount) {
        int step = 86400;
        try {
            count = count + step + amount;
        } catch (Exception e) {
        }
    }
}
"""


class TestCatalog:
    def test_deduplicated_row_count(self):
        assert len(catalog()) == 82  # 50 implementation + 32 design rows after merges
        assert len(rules_for_category("implementation")) == 50
        assert len(rules_for_category("design")) == 32

    def test_every_smell_type_has_rules(self):
        from smellscore.rules.model import ALL_TYPES

        assert len(ALL_TYPES) == 13
        for smell_type in ALL_TYPES:
            assert rules_for_type(smell_type), smell_type

    def test_merged_rule_is_one_entry_with_both_origins(self):
        entries = [r for r in catalog() if r.rule_id == "empty-catch-block"]
        assert len(entries) == 1
        assert entries[0].origin_tags == {"pmd", "checkstyle"}

    def test_rule_ids_unique(self):
        ids = [r.rule_id for r in catalog()]
        assert len(ids) == len(set(ids))


def _report(text: str, rules=None, path="Messy.java"):
    return detect_file(SourceFile.from_text(path, text), ("t", "m"), rules=rules)


class TestDetectFile:
    def test_parse_failure_yields_empty_report(self):
        report = _report("class A { void m( { }")
        assert not report.parse_ok
        assert report.violations == []
        assert report.parse_error

    def test_origin_tags_never_multiply_counts(self):
        rule = rule_by_id("empty-catch-block")
        once = _report(SMELLY, rules=[rule])
        twice = _report(SMELLY, rules=[rule, rule])
        assert once.per_rule_counts == twice.per_rule_counts
        assert once.per_rule_counts["empty-catch-block"] == 1

    def test_aggregation_identity(self):
        report = _report(SMELLY)
        assert sum(report.per_type_counts.values()) == len(report.violations)
        assert sum(report.per_rule_counts.values()) == len(report.violations)
        types = {r.rule_id: r.smell_type for r in catalog()}
        recount: dict[str, int] = {}
        for rule_id, count in report.per_rule_counts.items():
            recount[types[rule_id]] = recount.get(types[rule_id], 0) + count
        assert recount == report.per_type_counts

    def test_disjoint_rule_sets_are_additive(self):
        implementation = rules_for_category("implementation")
        design = rules_for_category("design")
        both = _report(SMELLY)
        left = _report(SMELLY, rules=implementation)
        right = _report(SMELLY, rules=design)
        assert len(both.violations) == len(left.violations) + len(right.violations)
        merged = sorted(
            [(v.rule_id, v.span.as_tuple()) for v in left.violations]
            + [(v.rule_id, v.span.as_tuple()) for v in right.violations]
        )
        assert merged == sorted((v.rule_id, v.span.as_tuple()) for v in both.violations)

    def test_determinism(self):
        assert _report(SMELLY) == _report(SMELLY)

    def test_violations_sorted_canonically(self):
        report = _report(SMELLY)
        keys = [v.sort_key() for v in report.violations]
        assert keys == sorted(keys)

    def test_hierarchy_rules_silent_on_single_class(self):
        samples = [
            "class A { void m() { x = 1; } }",
            # even a tag dispatch cannot fire hierarchy rules in a lone class
            "class A { void m(int k) { if (k == 1) { x = 1; } else if (k == 2) { x = 2; } else if (k == 3) { x = 3; } } }",
            "package a;\nimport a.Other;\nclass A { void m() { x = 1; } }",
        ]
        hierarchy = rules_for_type("hierarchy")
        for text in samples:
            report = _report(text, rules=hierarchy, path="A.java")
            assert report.parse_ok
            assert report.violations == [], text


class TestDetectCorpus:
    def _fixture(self, tmp_path):
        tasks = [make_task(tmp_path, f"T{i}", models=("m1",)) for i in range(10)]
        # plant one unparseable m1 solution
        (tmp_path / "solutions" / "m1" / "T3.java").write_text("class Broken {", encoding="utf-8")
        write_manifest(tmp_path, tasks)
        return load_manifest(tmp_path)

    def test_report_cardinality(self, tmp_path):
        corpus = self._fixture(tmp_path)
        results = detect_corpus(corpus, [BASELINE, "m1"])
        assert len(results[BASELINE]) == 10
        assert len(results["m1"]) == 10

    def test_parse_failure_lands_in_roster(self, tmp_path):
        corpus = self._fixture(tmp_path)
        out = tmp_path / "out"
        detect_corpus(corpus, [BASELINE, "m1"], out_dir=out)
        roster = json.loads((out / "reports" / "m1" / "_failures.json").read_text())
        assert [r["task_id"] for r in roster] == ["T3"]
        assert json.loads((out / "reports" / "baseline" / "_failures.json").read_text()) == []

    def test_rerun_is_byte_identical(self, tmp_path):
        corpus = self._fixture(tmp_path)
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        detect_corpus(corpus, [BASELINE, "m1"], out_dir=out_a)
        detect_corpus(corpus, [BASELINE, "m1"], out_dir=out_b)
        files_a = sorted(p.relative_to(out_a) for p in out_a.rglob("*.json"))
        files_b = sorted(p.relative_to(out_b) for p in out_b.rglob("*.json"))
        assert files_a == files_b
        for rel in files_a:
            assert (out_a / rel).read_bytes() == (out_b / rel).read_bytes()

    def test_parallel_matches_serial(self, tmp_path):
        corpus = self._fixture(tmp_path)
        serial = detect_corpus(corpus, [BASELINE, "m1"], jobs=1)
        parallel = detect_corpus(corpus, [BASELINE, "m1"], jobs=4)
        assert serial == parallel

    def test_store_round_trip(self, tmp_path):
        corpus = self._fixture(tmp_path)
        results = detect_corpus(corpus, [BASELINE, "m1"])
        write_report_store(results, tmp_path / "out")
        loaded = load_report_store(tmp_path / "out")
        assert loaded == results
