"""Benchmark corpus data model, manifest loading, and validation.

A corpus lives in a directory with a ``corpus.json`` manifest; all paths in
the manifest are relative to the manifest's directory and use forward
slashes.  The corpus is immutable after load and safe to share across
analysis workers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterator

VALID_SOURCES = ("textbook", "stackoverflow")


class ManifestSyntaxError(Exception):
    """Malformed manifest: bad JSON, missing keys, or invariant violations."""


class MissingFileError(Exception):
    """A reference or solution path does not resolve to a readable file."""


class DuplicateTaskError(Exception):
    """A task_id (or task/model pair) occurs more than once."""


@dataclass(frozen=True)
class ComplexityTriple:
    cyclomatic: int
    cognitive: int
    loc: int

    def __post_init__(self) -> None:
        if self.cyclomatic < 1:
            raise ManifestSyntaxError(f"cyclomatic must be >= 1, got {self.cyclomatic}")
        if self.cognitive < 0:
            raise ManifestSyntaxError(f"cognitive must be >= 0, got {self.cognitive}")
        if self.loc < 1:
            raise ManifestSyntaxError(f"loc must be >= 1, got {self.loc}")

    def value(self, metric: str) -> int:
        if metric not in ("cyclomatic", "cognitive", "loc"):
            raise ValueError(f"unknown complexity metric {metric!r}")
        return getattr(self, metric)


@dataclass(frozen=True)
class GeneratedSolution:
    model_id: str
    path: str  # relative, forward slashes
    correct: bool | None = None  # None = unknown


@dataclass(frozen=True)
class CodingTask:
    task_id: str
    source: str
    topic: str
    description: str
    input_length: int
    complexity: ComplexityTriple
    reference_path: str
    solutions: tuple[GeneratedSolution, ...] = ()

    def solution_for(self, model_id: str) -> GeneratedSolution | None:
        for s in self.solutions:
            if s.model_id == model_id:
                return s
        return None


@dataclass(frozen=True)
class Corpus:
    root: Path
    tasks: tuple[CodingTask, ...]
    models: frozenset[str]

    def __post_init__(self) -> None:
        if not self.tasks:
            raise ManifestSyntaxError("corpus has no tasks")

    def task(self, task_id: str) -> CodingTask:
        for t in self.tasks:
            if t.task_id == task_id:
                return t
        raise KeyError(task_id)

    def resolve(self, rel_path: str) -> Path:
        return self.root / Path(rel_path)

    def topics(self) -> set[str]:
        return {t.topic for t in self.tasks}

    def iter_solutions(self) -> Iterator[tuple[CodingTask, GeneratedSolution]]:
        for t in self.tasks:
            for s in t.solutions:
                yield t, s


def load_manifest(path: str | Path) -> Corpus:
    """Load and validate a corpus manifest.

    Raises ManifestSyntaxError for malformed documents, DuplicateTaskError for
    repeated task ids, and MissingFileError for unresolvable source paths.
    """
    manifest_path = Path(path)
    if manifest_path.is_dir():
        manifest_path = manifest_path / "corpus.json"
    if not manifest_path.is_file():
        raise MissingFileError(f"manifest not found: {manifest_path}")
    root = manifest_path.parent

    try:
        doc = json.loads(manifest_path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise ManifestSyntaxError(f"manifest is not valid JSON: {e}") from e

    if not isinstance(doc, dict) or not isinstance(doc.get("tasks"), list):
        raise ManifestSyntaxError("manifest must be an object with a 'tasks' array")

    tasks: list[CodingTask] = []
    seen_ids: set[str] = set()
    models: set[str] = set()

    for raw in doc["tasks"]:
        task = _parse_task(raw, root)
        if task.task_id in seen_ids:
            raise DuplicateTaskError(f"duplicate task_id {task.task_id!r}")
        seen_ids.add(task.task_id)
        models.update(s.model_id for s in task.solutions)
        tasks.append(task)

    return Corpus(root=root, tasks=tuple(tasks), models=frozenset(models))


def _parse_task(raw: Any, root: Path) -> CodingTask:
    if not isinstance(raw, dict):
        raise ManifestSyntaxError("each task must be an object")
    try:
        task_id = str(raw["task_id"])
        source = str(raw["source"])
        topic = str(raw["topic"])
        description = str(raw["description"])
        reference_path = str(raw["reference_path"])
        complexity_raw = raw["complexity"]
    except KeyError as e:
        raise ManifestSyntaxError(f"task missing required field {e.args[0]!r}") from e

    if source not in VALID_SOURCES:
        raise ManifestSyntaxError(f"task {task_id}: source must be one of {VALID_SOURCES}, got {source!r}")
    if not topic:
        raise ManifestSyntaxError(f"task {task_id}: topic must be non-empty")

    word_count = len(description.split())
    input_length = raw.get("input_length", word_count)
    if not isinstance(input_length, int) or input_length != word_count:
        raise ManifestSyntaxError(
            f"task {task_id}: input_length {input_length!r} does not match description word count {word_count}"
        )

    if not isinstance(complexity_raw, dict):
        raise ManifestSyntaxError(f"task {task_id}: complexity must be an object")
    try:
        complexity = ComplexityTriple(
            cyclomatic=int(complexity_raw["cyclomatic"]),
            cognitive=int(complexity_raw["cognitive"]),
            loc=int(complexity_raw["loc"]),
        )
    except KeyError as e:
        raise ManifestSyntaxError(f"task {task_id}: complexity missing {e.args[0]!r}") from e

    _require_file(root, reference_path, task_id)

    solutions: list[GeneratedSolution] = []
    seen_models: set[str] = set()
    for sol_raw in raw.get("solutions", []):
        if not isinstance(sol_raw, dict) or "model_id" not in sol_raw or "path" not in sol_raw:
            raise ManifestSyntaxError(f"task {task_id}: each solution needs model_id and path")
        model_id = str(sol_raw["model_id"])
        if model_id in seen_models:
            raise DuplicateTaskError(f"task {task_id}: duplicate solution for model {model_id!r}")
        seen_models.add(model_id)
        sol_path = str(sol_raw["path"])
        _require_file(root, sol_path, task_id)
        correct = sol_raw.get("correct")
        if correct is not None and not isinstance(correct, bool):
            raise ManifestSyntaxError(f"task {task_id}: correct flag must be boolean when present")
        solutions.append(GeneratedSolution(model_id=model_id, path=sol_path, correct=correct))

    return CodingTask(
        task_id=task_id,
        source=source,
        topic=topic,
        description=description,
        input_length=word_count,
        complexity=complexity,
        reference_path=reference_path,
        solutions=tuple(solutions),
    )


def _require_file(root: Path, rel: str, task_id: str) -> None:
    p = root / Path(rel)
    if not p.is_file():
        raise MissingFileError(f"task {task_id}: file not found: {rel}")


def save_manifest(corpus: Corpus, path: str | Path) -> None:
    """Serialize a corpus back to manifest JSON (paths stay relative)."""
    doc = {"tasks": [_task_to_json(t) for t in corpus.tasks]}
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _task_to_json(task: CodingTask) -> dict[str, Any]:
    out: dict[str, Any] = {
        "task_id": task.task_id,
        "source": task.source,
        "topic": task.topic,
        "description": task.description,
        "input_length": task.input_length,
        "complexity": {
            "cyclomatic": task.complexity.cyclomatic,
            "cognitive": task.complexity.cognitive,
            "loc": task.complexity.loc,
        },
        "reference_path": task.reference_path,
        "solutions": [],
    }
    for s in task.solutions:
        sol: dict[str, Any] = {"model_id": s.model_id, "path": s.path}
        if s.correct is not None:
            sol["correct"] = s.correct
        out["solutions"].append(sol)
    return out


# --------------------------------------------------------------------------
# Validation summary
# --------------------------------------------------------------------------

@dataclass
class SourceProfile:
    n_tasks: int = 0
    n_topics: int = 0
    tasks_per_topic_avg: float = 0.0
    tasks_per_topic_max: int = 0
    tasks_per_topic_min: int = 0
    input_length_avg: float = 0.0
    input_length_max: int = 0
    input_length_min: int = 0
    complexity_avg: float = 0.0
    complexity_max: int = 0
    complexity_min: int = 0


@dataclass
class ValidationSummary:
    n_tasks: int
    n_solutions: int
    n_topics: int
    per_source: dict[str, SourceProfile] = field(default_factory=dict)
    complexity_min: int = 0
    complexity_avg: float = 0.0
    complexity_max: int = 0

    def to_json(self) -> dict[str, Any]:
        return {
            "n_tasks": self.n_tasks,
            "n_solutions": self.n_solutions,
            "n_topics": self.n_topics,
            "complexity": {
                "min": self.complexity_min,
                "avg": self.complexity_avg,
                "max": self.complexity_max,
            },
            "per_source": {
                name: vars(profile) for name, profile in sorted(self.per_source.items())
            },
        }


def validate_corpus(corpus: Corpus) -> ValidationSummary:
    """Pure aggregation over the task list; counts match brute-force recounts."""
    tasks = corpus.tasks
    cyclomatics = [t.complexity.cyclomatic for t in tasks]
    summary = ValidationSummary(
        n_tasks=len(tasks),
        n_solutions=sum(len(t.solutions) for t in tasks),
        n_topics=len({t.topic for t in tasks}),
        complexity_min=min(cyclomatics),
        complexity_avg=sum(cyclomatics) / len(cyclomatics),
        complexity_max=max(cyclomatics),
    )
    for source in sorted({t.source for t in tasks}):
        subset = [t for t in tasks if t.source == source]
        by_topic: dict[str, int] = {}
        for t in subset:
            by_topic[t.topic] = by_topic.get(t.topic, 0) + 1
        lengths = [t.input_length for t in subset]
        cycs = [t.complexity.cyclomatic for t in subset]
        counts = list(by_topic.values())
        summary.per_source[source] = SourceProfile(
            n_tasks=len(subset),
            n_topics=len(by_topic),
            tasks_per_topic_avg=len(subset) / len(by_topic),
            tasks_per_topic_max=max(counts),
            tasks_per_topic_min=min(counts),
            input_length_avg=sum(lengths) / len(lengths),
            input_length_max=max(lengths),
            input_length_min=min(lengths),
            complexity_avg=sum(cycs) / len(cycs),
            complexity_max=max(cycs),
            complexity_min=min(cycs),
        )
    return summary
