"""Command-line front end.

Verbs: ingest, generate, analyze, import-reports, score, report, diff, and
run (analyze then score then report).  Outputs are a pure function of the
corpus content and configuration: files are rewritten only when their bytes
change, so a rerun over unchanged inputs reports zero recomputed files and
leaves byte-identical trees.

Exit codes: 0 ok, 1 configuration error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .corpus import (
    Corpus,
    DuplicateTaskError,
    ManifestSyntaxError,
    MissingFileError,
    load_manifest,
    validate_corpus,
)
from .llm_gateway import EndpointConfig, run_generation_batch
from .rules.catalog import catalog, rule_by_id
from .rules.model import IMPLEMENTATION_TYPES, DESIGN_TYPES, SmellRule, ViolationReport
from .scoreboard import (
    RuleSetSelector,
    ScenarioSelector,
    ScoreCard,
    load_scorecards,
    score_scenario,
)
from .smell_engine import BASELINE, detect_corpus, load_report_store
from .tool_adapters import ExternalReport, diff_reports, import_reports


class ConfigError(Exception):
    pass


class IoError(Exception):
    pass


@dataclass
class RunConfig:
    corpus_path: Path
    out_dir: Path
    subjects: list[str] = field(default_factory=list)
    scenarios: list[ScenarioSelector] = field(default_factory=lambda: [ScenarioSelector(kind="all")])
    rulesets: list[RuleSetSelector] = field(default_factory=lambda: [RuleSetSelector(kind="all")])
    threshold_overrides: dict[str, dict[str, Any]] = field(default_factory=dict)
    parallelism: int = 1

    def __post_init__(self) -> None:
        if self.parallelism < 1:
            raise ConfigError("parallelism must be >= 1")

    def rules(self) -> list[SmellRule]:
        out = []
        for rule in catalog():
            overrides = self.threshold_overrides.get(rule.rule_id)
            out.append(rule.with_thresholds(**overrides) if overrides else rule)
        return out

    @classmethod
    def from_json_file(cls, path: Path) -> "RunConfig":
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError as e:
            raise ConfigError(f"config file not found: {path}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"config file is not valid JSON: {e}") from e
        return cls(
            corpus_path=Path(doc["corpus"]),
            out_dir=Path(doc["out"]),
            subjects=list(doc.get("subjects", [])),
            scenarios=[ScenarioSelector.parse(s) for s in doc.get("scenarios", ["all"])],
            rulesets=[RuleSetSelector.parse(r) for r in doc.get("rulesets", ["all"])],
            threshold_overrides=doc.get("thresholds", {}),
            parallelism=int(doc.get("jobs", 1)),
        )


@dataclass
class RunSummary:
    reports_written: int = 0
    scorecards_written: int = 0
    heatmaps_written: int = 0
    files_changed: int = 0
    parse_failures: dict[str, list[str]] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {
            "reports_written": self.reports_written,
            "scorecards_written": self.scorecards_written,
            "heatmaps_written": self.heatmaps_written,
            "recomputed": self.files_changed,
            "parse_failures": self.parse_failures,
        }


def _write_if_changed(path: Path, text: str) -> bool:
    """Write only when bytes differ; returns True when the file changed."""
    data = text.encode("utf-8")
    if path.exists() and path.read_bytes() == data:
        return False
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)
    return True


def _json_text(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _load_corpus(path: Path) -> Corpus:
    try:
        return load_manifest(path)
    except (ManifestSyntaxError, DuplicateTaskError) as e:
        raise ConfigError(str(e)) from e
    except MissingFileError as e:
        raise ConfigError(str(e)) from e


# --------------------------------------------------------------------------
# Pipeline stages
# --------------------------------------------------------------------------

def run_analyze(config: RunConfig, summary: RunSummary) -> dict[str, dict[str, ViolationReport]]:
    corpus = _load_corpus(config.corpus_path)
    subjects = config.subjects or [BASELINE, *sorted(corpus.models)]
    reports = detect_corpus(corpus, subjects, rules=config.rules(), jobs=config.parallelism)

    for subject in sorted(reports):
        subject_dir = config.out_dir / "reports" / subject
        failures = []
        for task_id in sorted(reports[subject]):
            report = reports[subject][task_id]
            changed = _write_if_changed(subject_dir / f"{task_id}.json", _json_text(report.to_json()))
            summary.reports_written += 1
            summary.files_changed += int(changed)
            if not report.parse_ok:
                failures.append({"task_id": task_id, "error": report.parse_error})
        changed = _write_if_changed(subject_dir / "_failures.json", _json_text(failures))
        summary.files_changed += int(changed)
        if failures:
            summary.parse_failures[subject] = [f["task_id"] for f in failures]
    return reports


def run_score(config: RunConfig, summary: RunSummary, reports=None) -> list[ScoreCard]:
    corpus = _load_corpus(config.corpus_path)
    if reports is None:
        reports = load_report_store(config.out_dir)
        if not reports:
            raise IoError(f"no report store under {config.out_dir}")
    subjects = config.subjects or sorted(reports)
    all_cards: list[ScoreCard] = []
    for scenario in config.scenarios:
        for ruleset in config.rulesets:
            cards = score_scenario(corpus, reports, scenario, ruleset, subjects)
            all_cards.extend(cards)
            doc = [c.to_json() for c in sorted(cards, key=lambda c: (c.scenario, c.subject))]
            path = config.out_dir / "scores" / scenario.label / f"{ruleset.label}.json"
            changed = _write_if_changed(path, _json_text(doc))
            summary.scorecards_written += len(cards)
            summary.files_changed += int(changed)
    return all_cards


def run_report(config: RunConfig, summary: RunSummary) -> None:
    scores_dir = config.out_dir / "scores"
    if not scores_dir.is_dir():
        raise IoError(f"no scores under {config.out_dir}")

    topic_cards = _read_cards(scores_dir / "topic" / "all.json")
    if topic_cards:
        rows = sorted({c.scenario.split("/", 1)[1] for c in topic_cards})
        for name, changed in emit_heatmap(topic_cards, rows, config.out_dir, "topic"):
            summary.heatmaps_written += 1
            summary.files_changed += int(changed)

    type_cards: list[ScoreCard] = []
    for smell_type in (*IMPLEMENTATION_TYPES, *DESIGN_TYPES):
        type_cards.extend(_read_cards(scores_dir / "all" / f"type-{smell_type}.json"))
    if type_cards:
        rows = [t for t in (*IMPLEMENTATION_TYPES, *DESIGN_TYPES)
                if any(c.ruleset == f"type-{t}" for c in type_cards)]
        for name, changed in emit_heatmap(type_cards, rows, config.out_dir, "smell-type"):
            summary.heatmaps_written += 1
            summary.files_changed += int(changed)


def _read_cards(path: Path) -> list[ScoreCard]:
    if not path.is_file():
        return []
    return load_scorecards(path)


def emit_heatmap(
    cards: Sequence[ScoreCard], rows: Sequence[str], out_dir: Path, row_kind: str
) -> list[tuple[Path, bool]]:
    """Two CSV matrices (scores and increase rates) from persisted scorecards.

    Cells are copied from the cards; undefined increase rates render as empty
    strings.  Row order: catalog order for smell types, lexicographic for
    topics (the caller passes rows accordingly).  Column order: sorted
    subjects.
    """
    subjects = sorted({c.subject for c in cards})

    def cell_key(card: ScoreCard) -> str:
        if row_kind == "topic":
            return card.scenario.split("/", 1)[1]
        return card.ruleset.removeprefix("type-")

    lookup: dict[tuple[str, str], ScoreCard] = {}
    for c in cards:
        lookup[(cell_key(c), c.subject)] = c

    def render(kind: str) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([row_kind, *subjects])
        for row in rows:
            cells = []
            for subject in subjects:
                card = lookup.get((row, subject))
                if card is None:
                    cells.append("")
                elif kind == "vs":
                    cells.append(f"{float(card.vs):.3f}")
                else:
                    if card.increase_rate is None:
                        cells.append("")
                    else:
                        cells.append(f"{float(card.increase_rate) * 100:.2f}")
            writer.writerow([row, *cells])
        return buf.getvalue()

    out = []
    for kind, suffix in (("vs", "vs"), ("increase", "increase")):
        path = out_dir / "heatmaps" / f"{row_kind}_{suffix}.csv"
        changed = _write_if_changed(path, render(kind))
        out.append((path, changed))
    return out


def run_pipeline(config: RunConfig) -> RunSummary:
    """analyze, then score, then report; idempotent on unchanged inputs."""
    summary = RunSummary()
    reports = run_analyze(config, summary)
    run_score(config, summary, reports=reports)
    run_report(config, summary)
    return summary


# --------------------------------------------------------------------------
# argparse wiring
# --------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, corpus: bool = True, out: bool = True) -> None:
    if corpus:
        p.add_argument("--corpus", type=Path, help="corpus directory or corpus.json path")
    if out:
        p.add_argument("--out", type=Path, help="output directory")
    p.add_argument("--config", type=Path, help="JSON config file mirroring the run options")
    p.add_argument("--subjects", help="comma-separated subject list (e.g. baseline,m1)")
    p.add_argument("--scenario", action="append", default=None,
                   help="all | topic | source | complexity:<metric> | correctness:<model>")
    p.add_argument("--ruleset", action="append", default=None,
                   help="all | implementation | design | type:<name>")
    p.add_argument("--jobs", type=int, default=None, help="parallel analysis workers")


def _build_config(args: argparse.Namespace) -> RunConfig:
    if getattr(args, "config", None):
        config = RunConfig.from_json_file(args.config)
    else:
        if not getattr(args, "corpus", None):
            raise ConfigError("--corpus is required (or provide --config)")
        if not getattr(args, "out", None):
            raise ConfigError("--out is required (or provide --config)")
        config = RunConfig(corpus_path=args.corpus, out_dir=args.out)
    if getattr(args, "corpus", None):
        config.corpus_path = args.corpus
    if getattr(args, "out", None):
        config.out_dir = args.out
    if getattr(args, "subjects", None):
        config.subjects = [s.strip() for s in args.subjects.split(",") if s.strip()]
    if getattr(args, "scenario", None):
        try:
            config.scenarios = [ScenarioSelector.parse(s) for s in args.scenario]
        except ValueError as e:
            raise ConfigError(str(e)) from e
    if getattr(args, "ruleset", None):
        try:
            config.rulesets = [RuleSetSelector.parse(r) for r in args.ruleset]
        except ValueError as e:
            raise ConfigError(str(e)) from e
    if getattr(args, "jobs", None):
        config.parallelism = args.jobs
    if not config.corpus_path.exists():
        raise ConfigError(f"corpus not found: {config.corpus_path}")
    return config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smellscore", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("ingest", help="load and validate a corpus, print its profile")
    p.add_argument("--corpus", type=Path, required=True)

    p = sub.add_parser("generate", help="populate solutions by querying an HTTP endpoint")
    p.add_argument("--corpus", type=Path, required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--endpoint-config", type=Path, required=True,
                   help="JSON: {url, api_key_env?, request_template?, response_path?, delay_seconds?}")
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--retries", type=int, default=2)

    for verb in ("analyze", "score", "report", "run"):
        p = sub.add_parser(verb)
        _add_common(p)

    p = sub.add_parser("import-reports", help="convert external detector reports into the report store")
    p.add_argument("--format", required=True, choices=["pmd_xml", "checkstyle_xml", "designite_csv"])
    p.add_argument("--in", dest="inputs", type=Path, nargs="+", required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--subject", required=True, help="task_id:model_id for the imported report")
    p.add_argument("--source", type=Path, help="Java source file for span resolution")

    p = sub.add_parser("diff", help="compare a native report with an imported one")
    p.add_argument("--native", type=Path, required=True)
    p.add_argument("--imported", type=Path, required=True)
    p.add_argument("--out", type=Path, help="CSV output path (default stdout)")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    except (IoError, OSError) as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return 2


def _dispatch(args: argparse.Namespace) -> int:
    if args.verb == "ingest":
        corpus = _load_corpus(args.corpus)
        summary = validate_corpus(corpus)
        print(json.dumps(summary.to_json(), indent=2, sort_keys=True))
        return 0

    if args.verb == "generate":
        try:
            doc = json.loads(args.endpoint_config.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"bad endpoint config: {e}") from e
        corpus_root = args.corpus if args.corpus.is_dir() else args.corpus.parent
        records = run_generation_batch(
            corpus_root, args.model, EndpointConfig.from_json(doc),
            timeout=args.timeout, max_retries=args.retries,
        )
        counts: dict[str, int] = {}
        for r in records:
            counts[r.status] = counts.get(r.status, 0) + 1
        print(json.dumps({"generated": len(records), "by_status": counts}, sort_keys=True))
        return 0

    if args.verb == "import-reports":
        task_id, _, model_id = args.subject.partition(":")
        if not model_id:
            raise ConfigError("--subject must look like task_id:model_id")
        externals = [ExternalReport(format=args.format, path=p) for p in args.inputs]
        result = import_reports(externals, subject=(task_id, model_id), source_path=args.source)
        subject_dir = args.out / "reports" / model_id
        _write_if_changed(subject_dir / f"{task_id}.json", _json_text(result.report.to_json()))
        print(json.dumps(
            {"violations": result.report.total_violations, "unmapped": result.unmapped_count},
            sort_keys=True,
        ))
        return 0

    if args.verb == "diff":
        native = ViolationReport.from_json(json.loads(args.native.read_text(encoding="utf-8")))
        imported = ViolationReport.from_json(json.loads(args.imported.read_text(encoding="utf-8")))
        try:
            summary = diff_reports(native, imported)
        except ValueError as e:
            raise ConfigError(str(e)) from e
        text = summary.to_csv()
        if args.out:
            args.out.parent.mkdir(parents=True, exist_ok=True)
            args.out.write_text(text, encoding="utf-8")
        else:
            print(text, end="")
        return 0

    config = _build_config(args)
    summary = RunSummary()
    if args.verb == "analyze":
        run_analyze(config, summary)
    elif args.verb == "score":
        run_score(config, summary)
    elif args.verb == "report":
        run_report(config, summary)
    elif args.verb == "run":
        summary = run_pipeline(config)
    print(json.dumps(summary.to_json(), indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
