"""Violations-per-solution scoring, scenario partitioning, and the
descriptive statistics used in reports.

All score arithmetic is exact rational arithmetic; floats appear only in the
correlation and dispersion helpers where square roots are unavoidable.
Solutions that failed to parse are excluded from both the numerator and the
denominator of every score and surface separately as a failure rate.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

from .corpus import CodingTask, Corpus
from .rules.catalog import catalog, rules_for_category, rules_for_type
from .rules.model import SmellRule, ViolationReport


class EmptyScenarioError(Exception):
    """No analyzable solutions remain in a scenario."""


class UndefinedBaselineError(Exception):
    """Increase rate is undefined because the baseline score is zero."""


class DegenerateInputError(Exception):
    """Correlation input has zero variance or too few points."""


class UnknownTopicError(Exception):
    """A topic filter names a topic absent from the corpus."""


# --------------------------------------------------------------------------
# Selectors
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ScenarioSelector:
    kind: str  # all | by_topic | by_complexity | by_source | by_correctness
    metric: str = "cyclomatic"  # for by_complexity
    bucket_width: int | None = None  # None = per-metric default
    model_id: str | None = None  # for by_correctness
    topics: tuple[str, ...] = ()  # optional by_topic filter

    DEFAULT_WIDTHS = {"cyclomatic": 1, "cognitive": 5, "loc": 10}

    @property
    def label(self) -> str:
        if self.kind == "by_complexity":
            return f"complexity-{self.metric}"
        if self.kind == "by_correctness":
            return f"correctness-{self.model_id}"
        return {"all": "all", "by_topic": "topic", "by_source": "source"}[self.kind]

    @classmethod
    def parse(cls, text: str) -> "ScenarioSelector":
        """Parse CLI syntax: all | topic | source | complexity:<metric> | correctness:<model>."""
        if text == "all":
            return cls(kind="all")
        if text == "topic":
            return cls(kind="by_topic")
        if text == "source":
            return cls(kind="by_source")
        if text.startswith("complexity:"):
            metric = text.split(":", 1)[1]
            if metric not in cls.DEFAULT_WIDTHS:
                raise ValueError(f"unknown complexity metric {metric!r}")
            return cls(kind="by_complexity", metric=metric)
        if text.startswith("correctness:"):
            return cls(kind="by_correctness", model_id=text.split(":", 1)[1])
        raise ValueError(f"unknown scenario {text!r}")


@dataclass(frozen=True)
class RuleSetSelector:
    kind: str  # all | by_category | by_type | explicit
    category: str | None = None
    smell_type: str | None = None
    rule_ids: tuple[str, ...] = ()

    @property
    def label(self) -> str:
        if self.kind == "by_category":
            return self.category or ""
        if self.kind == "by_type":
            return f"type-{self.smell_type}"
        if self.kind == "explicit":
            return "explicit"
        return "all"

    def resolve(self) -> list[SmellRule]:
        if self.kind == "all":
            rules = catalog()
        elif self.kind == "by_category":
            rules = rules_for_category(self.category)
        elif self.kind == "by_type":
            rules = rules_for_type(self.smell_type)
        elif self.kind == "explicit":
            from .rules.catalog import rule_by_id

            rules = [rule_by_id(r) for r in self.rule_ids]
        else:
            raise ValueError(f"unknown rule-set kind {self.kind!r}")
        if not rules:
            raise ValueError(f"rule-set selector {self.label!r} resolves to no rules")
        return rules

    @classmethod
    def parse(cls, text: str) -> "RuleSetSelector":
        """Parse CLI syntax: all | implementation | design | type:<name>."""
        if text == "all":
            return cls(kind="all")
        if text in ("implementation", "design"):
            return cls(kind="by_category", category=text)
        if text.startswith("type:"):
            return cls(kind="by_type", smell_type=text.split(":", 1)[1])
        raise ValueError(f"unknown ruleset {text!r}")


# --------------------------------------------------------------------------
# Partitioning
# --------------------------------------------------------------------------

def partition(corpus: Corpus, selector: ScenarioSelector) -> list[tuple[str, list[CodingTask]]]:
    """Split the corpus into labeled, disjoint task subsets.

    For all/by_topic/by_source/by_complexity the union of the subsets is the
    whole corpus; for by_correctness it is the set of tasks whose solution by
    the selected model carries a known flag.
    """
    tasks = list(corpus.tasks)
    if selector.kind == "all":
        return [("all", tasks)]

    if selector.kind == "by_topic":
        if selector.topics:
            known = corpus.topics()
            for t in selector.topics:
                if t not in known:
                    raise UnknownTopicError(f"topic {t!r} not in corpus")
        groups: dict[str, list[CodingTask]] = {}
        for task in tasks:
            if selector.topics and task.topic not in selector.topics:
                continue
            groups.setdefault(task.topic, []).append(task)
        return sorted(groups.items())

    if selector.kind == "by_source":
        groups = {}
        for task in tasks:
            groups.setdefault(task.source, []).append(task)
        return sorted(groups.items())

    if selector.kind == "by_complexity":
        width = selector.bucket_width or ScenarioSelector.DEFAULT_WIDTHS[selector.metric]
        groups = {}
        for task in tasks:
            value = task.complexity.value(selector.metric)
            if width == 1:
                label = str(value)
            else:
                lo = (value // width) * width
                label = f"{lo}-{lo + width - 1}"
            groups.setdefault(label, []).append(task)
        return sorted(groups.items(), key=lambda kv: int(kv[0].split("-")[0]))

    if selector.kind == "by_correctness":
        model = selector.model_id
        if model is None:
            raise ValueError("by_correctness requires a model_id")
        groups = {"correct": [], "incorrect": []}
        for task in tasks:
            solution = task.solution_for(model)
            if solution is None or solution.correct is None:
                continue
            groups["correct" if solution.correct else "incorrect"].append(task)
        return [(label, groups[label]) for label in ("correct", "incorrect")]

    raise ValueError(f"unknown scenario kind {selector.kind!r}")


# --------------------------------------------------------------------------
# Core metrics
# --------------------------------------------------------------------------

def compute_vs(reports: Iterable[ViolationReport], rules: Sequence[SmellRule] | set[str]) -> Fraction:
    """Average rule violations per analyzed (parse-clean) solution."""
    rule_ids = {r.rule_id for r in rules} if not isinstance(rules, set) else rules
    total = 0
    analyzed = 0
    for report in reports:
        if not report.parse_ok:
            continue
        analyzed += 1
        total += report.count_for_rules(rule_ids)
    if analyzed == 0:
        raise EmptyScenarioError("no analyzable solutions in scenario")
    return Fraction(total, analyzed)


def compute_baseline_vs(reference_reports: Iterable[ViolationReport], rules: Sequence[SmellRule] | set[str]) -> Fraction:
    """Same average computed over the human-written reference solutions."""
    return compute_vs(reference_reports, rules)


def compute_increase(vs: Fraction, baseline_vs: Fraction) -> Fraction:
    """Relative change of a subject's score against the baseline."""
    if baseline_vs == 0:
        raise UndefinedBaselineError("baseline score is zero; increase rate is undefined")
    return (vs - baseline_vs) / baseline_vs


# --------------------------------------------------------------------------
# Scorecards
# --------------------------------------------------------------------------

@dataclass
class ScoreCard:
    subject: str
    scenario: str  # e.g. "topic/Inheritance"
    ruleset: str
    n_tasks: int
    n_analyzed: int
    total_violations: int
    vs: Fraction
    baseline_vs: Fraction | None = None
    increase_rate: Fraction | None = None  # None = undefined

    def to_json(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "scenario": self.scenario,
            "ruleset": self.ruleset,
            "n_tasks": self.n_tasks,
            "n_analyzed": self.n_analyzed,
            "total_violations": self.total_violations,
            "vs": _frac_json(self.vs),
            "baseline_vs": _frac_json(self.baseline_vs) if self.baseline_vs is not None else None,
            "increase_rate": _frac_json(self.increase_rate) if self.increase_rate is not None else "undefined",
        }

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "ScoreCard":
        return cls(
            subject=doc["subject"],
            scenario=doc["scenario"],
            ruleset=doc["ruleset"],
            n_tasks=doc["n_tasks"],
            n_analyzed=doc["n_analyzed"],
            total_violations=doc["total_violations"],
            vs=_frac_parse(doc["vs"]),
            baseline_vs=_frac_parse(doc["baseline_vs"]) if doc.get("baseline_vs") is not None else None,
            increase_rate=(
                _frac_parse(doc["increase_rate"]) if doc.get("increase_rate") not in (None, "undefined") else None
            ),
        )


def _frac_json(value: Fraction) -> dict[str, Any]:
    return {"fraction": f"{value.numerator}/{value.denominator}", "float": float(value)}


def _frac_parse(doc: dict[str, Any]) -> Fraction:
    num, den = doc["fraction"].split("/")
    return Fraction(int(num), int(den))


def score_scenario(
    corpus: Corpus,
    reports: dict[str, dict[str, ViolationReport]],
    scenario: ScenarioSelector,
    ruleset: RuleSetSelector,
    subjects: Sequence[str],
) -> list[ScoreCard]:
    """ScoreCards for every (label, subject) cell of a scenario.

    Labels whose task subset has no analyzable solutions for a subject are
    skipped rather than reported as zero.
    """
    from .smell_engine import BASELINE

    rule_ids = {r.rule_id for r in ruleset.resolve()}
    cards: list[ScoreCard] = []
    for label, tasks in partition(corpus, scenario):
        if not tasks:
            continue
        task_ids = [t.task_id for t in tasks]
        baseline_reports = _select(reports.get(BASELINE, {}), task_ids)
        try:
            baseline_vs = compute_vs(baseline_reports, rule_ids)
        except EmptyScenarioError:
            baseline_vs = None

        for subject in subjects:
            subject_reports = _select(reports.get(subject, {}), task_ids)
            if not subject_reports:
                continue
            analyzed = [r for r in subject_reports if r.parse_ok]
            if not analyzed:
                continue
            total = sum(r.count_for_rules(rule_ids) for r in analyzed)
            vs = Fraction(total, len(analyzed))
            increase: Fraction | None = None
            if baseline_vs is not None and baseline_vs > 0:
                increase = compute_increase(vs, baseline_vs)
            cards.append(
                ScoreCard(
                    subject=subject,
                    scenario=f"{scenario.label}/{label}",
                    ruleset=ruleset.label,
                    n_tasks=len(tasks),
                    n_analyzed=len(analyzed),
                    total_violations=total,
                    vs=vs,
                    baseline_vs=baseline_vs,
                    increase_rate=increase,
                )
            )
    return cards


def _select(by_task: dict[str, ViolationReport], task_ids: Sequence[str]) -> list[ViolationReport]:
    return [by_task[t] for t in task_ids if t in by_task]


def write_scorecards(cards: Sequence[ScoreCard], out_dir: str | Path, scenario: str, ruleset: str) -> Path:
    path = Path(out_dir) / "scores" / scenario / f"{ruleset}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = [c.to_json() for c in sorted(cards, key=lambda c: (c.scenario, c.subject))]
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def load_scorecards(path: str | Path) -> list[ScoreCard]:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return [ScoreCard.from_json(item) for item in doc]


# --------------------------------------------------------------------------
# Statistics
# --------------------------------------------------------------------------

def pearson(xs: Sequence[float | Fraction], ys: Sequence[float | Fraction]) -> float:
    """Pearson correlation coefficient; undefined inputs raise, never return 0."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise DegenerateInputError("pearson needs two equal-length vectors of size >= 2")
    n = len(xs)
    fx = [float(x) for x in xs]
    fy = [float(y) for y in ys]
    mx = math.fsum(fx) / n
    my = math.fsum(fy) / n
    cov = math.fsum((x - mx) * (y - my) for x, y in zip(fx, fy))
    var_x = math.fsum((x - mx) ** 2 for x in fx)
    var_y = math.fsum((y - my) ** 2 for y in fy)
    if var_x == 0 or var_y == 0:
        raise DegenerateInputError("pearson is undefined for zero-variance input")
    r = cov / math.sqrt(var_x * var_y)
    return max(-1.0, min(1.0, r))


def dispersion(vs_by_label: dict[str, float | Fraction]) -> float:
    """Population standard deviation of the labeled values."""
    if len(vs_by_label) < 2:
        raise DegenerateInputError("dispersion needs at least two labels")
    values = [float(v) for v in vs_by_label.values()]
    mean = math.fsum(values) / len(values)
    return math.sqrt(math.fsum((v - mean) ** 2 for v in values) / len(values))


@dataclass
class TopicRankings:
    best: list[tuple[str, Fraction]]
    worst: list[tuple[str, Fraction]]
    most_improved: list[tuple[str, Fraction]]
    most_worsened: list[tuple[str, Fraction]]


def rank_topics(cards: Sequence[ScoreCard], k: int) -> TopicRankings:
    """Best/worst topics by score and most improved/worsened by increase rate.

    Ties break lexicographically by topic name; ordering is stable.
    """
    def topic_of(card: ScoreCard) -> str:
        return card.scenario.split("/", 1)[1]

    by_vs = sorted(((topic_of(c), c.vs) for c in cards), key=lambda kv: (kv[1], kv[0]))
    with_rate = [(topic_of(c), c.increase_rate) for c in cards if c.increase_rate is not None]
    by_rate = sorted(with_rate, key=lambda kv: (kv[1], kv[0]))
    return TopicRankings(
        best=by_vs[:k],
        worst=sorted(by_vs, key=lambda kv: (-kv[1], kv[0]))[:k],
        most_improved=by_rate[:k],
        most_worsened=sorted(by_rate, key=lambda kv: (-kv[1], kv[0]))[:k],
    )


@dataclass
class TopSmell:
    rule_id: str
    avg_violations: Fraction  # average per subject
    weight: Fraction  # share of the smell type's violations


def top_smells(reports_by_subject: dict[str, Iterable[ViolationReport]], smell_type: str) -> list[TopSmell]:
    """Most prevalent rules of one smell type, averaged across subjects.

    Weights are each rule's share of the type's total violations and sum to 1
    when every rule is listed.  Zero violations yield an empty list.
    """
    rules = rules_for_type(smell_type)
    if not rules:
        raise ValueError(f"no rules of type {smell_type!r}")
    rule_ids = [r.rule_id for r in rules]
    totals = {r: 0 for r in rule_ids}
    n_subjects = 0
    for _, reports in sorted(reports_by_subject.items()):
        n_subjects += 1
        for report in reports:
            if not report.parse_ok:
                continue
            for rule_id in rule_ids:
                totals[rule_id] += report.per_rule_counts.get(rule_id, 0)
    group_total = sum(totals.values())
    if group_total == 0 or n_subjects == 0:
        return []
    out = [
        TopSmell(
            rule_id=rule_id,
            avg_violations=Fraction(count, n_subjects),
            weight=Fraction(count, group_total),
        )
        for rule_id, count in totals.items()
        if count > 0
    ]
    out.sort(key=lambda s: (-s.weight, s.rule_id))
    return out


def failure_rate(reports: Iterable[ViolationReport]) -> tuple[int, int]:
    """(failed, total) parse outcomes for a report collection."""
    failed = 0
    total = 0
    for r in reports:
        total += 1
        if not r.parse_ok:
            failed += 1
    return failed, total
