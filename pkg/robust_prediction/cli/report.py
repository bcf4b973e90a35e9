# -*- coding: utf-8 -*-

"""
Build, render and write run reports.

The JSON form is ``RunReport.model_dump_json(indent=2)``; the text form is
rendered from the same model, so every number it shows can be recomputed
from the JSON.
"""

import json
import typing as T
from pathlib import Path

from ..config.api import PipelineConfig, Recipe
from ..constants import ReportFormatEnum
from ..data_model import Dataset
from ..ensemble_eval import EvaluationReport, MetricSet
from ..exc import PipelineError
from ..rpm_pipeline import PipelineResult, Rule
from ..schemas import (
    Metrics,
    Confusion,
    Evaluation,
    ClusterScoreRead,
    LevelRead,
    ConditionRead,
    RuleRead,
    RunReport,
    CompareRow,
)


# =============================================================================
# Build
# =============================================================================
def _metrics(m: MetricSet) -> Metrics:
    return Metrics(**m.to_dict())


def evaluation_schema(report: EvaluationReport) -> Evaluation:
    return Evaluation(
        learners=[spec.label for spec in report.learners],
        learner_specs=list(report.learners),
        seed=report.seed,
        folds=report.folds,
        mean=_metrics(report.mean),
        std=_metrics(report.std),
        fold_metrics=[_metrics(m) for m in report.fold_metrics],
        pooled_confusion=Confusion(
            labels=list(report.pooled.labels),
            counts=report.pooled.counts.tolist(),
        ),
        dropped_test_instances=report.dropped_test_instances,
    )


def _rule_schema(rule: Rule) -> RuleRead:
    return RuleRead(
        conditions=[
            ConditionRead(
                attribute=c.attribute,
                op=c.op,
                threshold=c.threshold,
                categories=list(c.categories),
            )
            for c in rule.conditions
        ],
        prediction=rule.prediction,
        support=rule.support,
        confidence=rule.confidence,
        text=rule.render(),
    )


def build_report(
    result: PipelineResult,
    recipe: Recipe | None = None,
    data_path: Path | str | None = None,
) -> RunReport:
    """
    Turn a pipeline result into a :class:`~robust_prediction.schemas.RunReport`.
    Dataset facts and the pipeline settings come from ``result`` itself;
    ``recipe`` only adds the id and the description.
    """
    if result.source is None or result.config is None:
        raise PipelineError("result carries no source dataset or config, run it through run_rpm")
    d: Dataset = result.source
    cfg: PipelineConfig = result.config
    levels = [
        LevelRead(
            level=t.level,
            k=t.k,
            wcss=t.wcss,
            clusters=[
                ClusterScoreRead(
                    cluster_id=s.cluster_id,
                    attributes=list(s.attributes),
                    accuracy_mean=s.accuracy_mean,
                    accuracy_std=s.accuracy_std,
                )
                for s in t.cluster_scores
            ],
            chosen=list(t.chosen),
            chi_square={name: weight for name, weight in t.weights.ranked()},
            selected=list(t.selected),
            evaluation=evaluation_schema(t.report),
        )
        for t in result.levels
    ]
    return RunReport(
        recipe_id="" if recipe is None else recipe.recipe_id,
        description="" if recipe is None else recipe.description,
        data_path="" if data_path is None else str(data_path),
        pipeline=cfg,
        n_instances=d.n_instances,
        classes=list(d.classes),
        class_counts=d.class_counts().tolist(),
        seed=cfg.seed,
        loop_rule=cfg.loop_rule.value,
        per_class_n=result.per_class_n,
        balanced_size=result.balanced_size,
        levels=levels,
        final_level=result.final_level,
        stop_reason=result.stop_reason,
        final_attributes=list(result.final_trace.selected),
        final=evaluation_schema(result.final_report),
        rules=[_rule_schema(r) for r in result.rules],
        baseline=None if result.baseline is None else evaluation_schema(result.baseline),
        notes=list(result.notes),
    )


# =============================================================================
# Render
# =============================================================================
def _pct(mean: float, std: float) -> str:
    return f"{mean * 100:.2f}% +/- {std * 100:.2f}%"


def render_metrics(e: Evaluation, indent: str = "  ") -> list[str]:
    return [
        f"{indent}Accuracy: {_pct(e.mean.accuracy, e.std.accuracy)}",
        f"{indent}Kappa: {e.mean.kappa:.3f} +/- {e.std.kappa:.3f}",
        f"{indent}Weighted Mean Recall: "
        f"{_pct(e.mean.weighted_mean_recall, e.std.weighted_mean_recall)}",
        f"{indent}Weighted Mean Precision: "
        f"{_pct(e.mean.weighted_mean_precision, e.std.weighted_mean_precision)}",
    ]


def render_text(report: RunReport) -> str:
    counts = ", ".join(f"{c}={n}" for c, n in zip(report.classes, report.class_counts))
    lines = [
        f"Recipe {report.recipe_id}: {report.description}".rstrip(": "),
        f"Data: {report.data_path} ({report.n_instances} instances; {counts})",
        f"Balanced: {report.balanced_size} instances ({report.per_class_n} per class), "
        f"seed {report.seed}, loop rule {report.loop_rule}",
        "",
    ]
    for level in report.levels:
        lines.append(f"Level {level.level} (k={level.k})")
        for c in level.clusters:
            lines.append(
                f"  cluster {c.cluster_id}: {len(c.attributes)} attributes, "
                f"CART accuracy {_pct(c.accuracy_mean, c.accuracy_std)}"
            )
        lines.append(f"  chosen: {', '.join(level.chosen)}")
        lines.append(f"  selected: {', '.join(level.selected)}")
        lines.extend(render_metrics(level.evaluation, indent="  "))
        lines.append("")
    lines.append(f"Final level {report.final_level} ({report.stop_reason})")
    lines.append(f"Attributes: {', '.join(report.final_attributes)}")
    lines.append("")
    lines.append(f"RPM ensemble [{', '.join(report.final.learners)}]")
    lines.extend(render_metrics(report.final))
    if report.baseline is not None:
        lines.append("")
        lines.append(f"PCA baseline [{', '.join(report.baseline.learners)}]")
        lines.extend(render_metrics(report.baseline))
    lines.append("")
    lines.append("Rules")
    if report.rules:
        for i, rule in enumerate(report.rules, start=1):
            lines.append(f"  {i}. {rule.text}")
    else:
        lines.append("  none")
    if report.notes:
        lines.append("")
        lines.append("Notes")
        for note in report.notes:
            lines.append(f"  - {note}")
    return "\n".join(lines) + "\n"


def render_json(report: RunReport) -> str:
    return report.model_dump_json(indent=2) + "\n"


def emit_report(
    report: RunReport | PipelineResult,
    fmt: ReportFormatEnum | str = ReportFormatEnum.text,
    path: Path | str | None = None,
    recipe: Recipe | None = None,
    data_path: Path | str | None = None,
) -> str:
    """
    Render ``report`` and write it to ``path`` when given. Returns the text.

    A :class:`~robust_prediction.rpm_pipeline.PipelineResult` is passed
    through :func:`build_report` first, with ``recipe`` and ``data_path``.
    """
    if isinstance(report, PipelineResult):
        report = build_report(report, recipe=recipe, data_path=data_path)
    fmt = ReportFormatEnum(fmt)
    text = render_text(report) if fmt is ReportFormatEnum.text else render_json(report)
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return text


# =============================================================================
# Compare
# =============================================================================
def load_report(path: Path | str) -> RunReport:
    return RunReport.model_validate_json(Path(path).read_text(encoding="utf-8"))


def compare_rows(reports: T.Iterable[RunReport]) -> list[CompareRow]:
    rows = []
    for r in reports:
        b = r.baseline
        rows.append(
            CompareRow(
                recipe_id=r.recipe_id,
                rpm_accuracy=r.final.mean.accuracy,
                rpm_accuracy_std=r.final.std.accuracy,
                rpm_kappa=r.final.mean.kappa,
                rpm_kappa_std=r.final.std.kappa,
                pca_accuracy=None if b is None else b.mean.accuracy,
                pca_accuracy_std=None if b is None else b.std.accuracy,
                pca_kappa=None if b is None else b.mean.kappa,
                pca_kappa_std=None if b is None else b.std.kappa,
            )
        )
    return rows


def render_compare(rows: T.Sequence[CompareRow], fmt: ReportFormatEnum | str = ReportFormatEnum.text) -> str:
    fmt = ReportFormatEnum(fmt)
    if fmt is ReportFormatEnum.json:
        return json.dumps([row.model_dump() for row in rows], indent=2) + "\n"
    header = f"{'recipe':<8} {'RPM accuracy':>14} {'RPM kappa':>10} {'PCA accuracy':>14} {'PCA kappa':>10}"
    lines = [header, "-" * len(header)]
    for row in rows:
        pca_acc = "n/a" if row.pca_accuracy is None else f"{row.pca_accuracy * 100:.2f}%"
        pca_kappa = "n/a" if row.pca_kappa is None else f"{row.pca_kappa:.3f}"
        lines.append(
            f"{row.recipe_id:<8} {row.rpm_accuracy * 100:>13.2f}% {row.rpm_kappa:>10.3f} "
            f"{pca_acc:>14} {pca_kappa:>10}"
        )
    return "\n".join(lines) + "\n"
