"""Detection engine: runs the rule catalog over parsed sources and persists
one report per (subject, task) into the report store.

Report store layout under an output directory:

    reports/<subject>/<task_id>.json   one ViolationReport, fields verbatim
    reports/<subject>/_failures.json   task ids whose source failed to parse
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import Corpus
from .java_syntax import ParseOutcome, SourceFile, parse, significant, tokenize
from .rules import catalog as catalog_mod
from .rules import design as design_checks
from .rules import implementation as impl_checks
from .rules.catalog import catalog, rule_types
from .rules.context import RuleContext
from .rules.model import SmellRule, ViolationReport

BASELINE = "baseline"


def _build_registry() -> dict[str, object]:
    registry: dict[str, object] = {}
    for rule in catalog():
        fn_name = "check_" + rule.rule_id.replace("-", "_")
        fn = getattr(impl_checks, fn_name, None) or getattr(design_checks, fn_name, None)
        if fn is None:
            raise RuntimeError(f"no checker implemented for rule {rule.rule_id}")
        registry[rule.rule_id] = fn
    return registry


_REGISTRY = _build_registry()


def detect_file(
    source: SourceFile,
    subject: tuple[str, str],
    rules: Sequence[SmellRule] | None = None,
    outcome: ParseOutcome | None = None,
) -> ViolationReport:
    """Run the given rules (default: full catalog) over one source file.

    A parse failure produces a report with parse_ok=False and no violations.
    Duplicate rules in the input are collapsed by rule_id, so passing a rule
    once per origin tag cannot multiply counts.
    """
    if rules is None:
        rules = catalog()
    unique: dict[str, SmellRule] = {}
    for r in rules:
        unique.setdefault(r.rule_id, r)

    if outcome is None:
        outcome = parse(source)
    if not outcome.ok:
        failure = outcome.failure
        message = f"{failure.message} at {failure.first_error_span.as_tuple()}"
        return ViolationReport.build(subject, parse_ok=False, violations=[], rule_types=rule_types(), parse_error=message)

    tokens = tokenize(source)
    ctx = RuleContext(source=source, unit=outcome.ast, tokens=tokens, sig=significant(tokens))

    violations = []
    for rule in unique.values():
        if not rule.enabled:
            continue
        checker = _REGISTRY[rule.rule_id]
        violations.extend(checker(ctx, rule))
    return ViolationReport.build(subject, parse_ok=True, violations=violations, rule_types=rule_types())


def detect_corpus(
    corpus: Corpus,
    subjects: Iterable[str],
    rules: Sequence[SmellRule] | None = None,
    out_dir: str | Path | None = None,
    jobs: int = 1,
) -> dict[str, dict[str, ViolationReport]]:
    """One report per (subject, task).  Subjects are model ids or 'baseline'.

    Per-file parse failures are recorded in the reports, never raised.  When
    out_dir is given the reports are persisted in canonical order so results
    are independent of worker scheduling.
    """
    work: list[tuple[str, str, Path]] = []
    for subject in sorted(set(subjects)):
        for task in corpus.tasks:
            if subject == BASELINE:
                path = corpus.resolve(task.reference_path)
            else:
                solution = task.solution_for(subject)
                if solution is None:
                    continue
                path = corpus.resolve(solution.path)
            work.append((subject, task.task_id, path))

    def run(item: tuple[str, str, Path]) -> tuple[str, str, ViolationReport]:
        subject, task_id, path = item
        text = path.read_text(encoding="utf-8")
        source = SourceFile.from_text(str(path), text)
        return subject, task_id, detect_file(source, (task_id, subject), rules)

    results: dict[str, dict[str, ViolationReport]] = {}
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            done = list(pool.map(run, work))
    else:
        done = [run(item) for item in work]
    for subject, task_id, report in done:
        results.setdefault(subject, {})[task_id] = report

    if out_dir is not None:
        write_report_store(results, out_dir)
    return results


# --------------------------------------------------------------------------
# Report store
# --------------------------------------------------------------------------

def write_report_store(results: dict[str, dict[str, ViolationReport]], out_dir: str | Path) -> list[Path]:
    """Persist reports deterministically; returns the files written."""
    base = Path(out_dir) / "reports"
    written: list[Path] = []
    for subject in sorted(results):
        subject_dir = base / subject
        subject_dir.mkdir(parents=True, exist_ok=True)
        failures: list[dict] = []
        for task_id in sorted(results[subject]):
            report = results[subject][task_id]
            path = subject_dir / f"{task_id}.json"
            _write_json(path, report.to_json())
            written.append(path)
            if not report.parse_ok:
                failures.append({"task_id": task_id, "error": report.parse_error})
        failure_path = subject_dir / "_failures.json"
        _write_json(failure_path, failures)
        written.append(failure_path)
    return written


def load_report_store(out_dir: str | Path) -> dict[str, dict[str, ViolationReport]]:
    base = Path(out_dir) / "reports"
    results: dict[str, dict[str, ViolationReport]] = {}
    if not base.is_dir():
        return results
    for subject_dir in sorted(p for p in base.iterdir() if p.is_dir()):
        subject = subject_dir.name
        results[subject] = {}
        for report_path in sorted(subject_dir.glob("*.json")):
            if report_path.name == "_failures.json":
                continue
            doc = json.loads(report_path.read_text(encoding="utf-8"))
            results[subject][report_path.stem] = ViolationReport.from_json(doc)
    return results


def _write_json(path: Path, doc) -> None:
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
