# -*- coding: utf-8 -*-

"""
Robust prediction model orchestration.

1. Balance the classes by bootstrapping.
2. Per level: transpose the current attribute set, cluster the attributes
   with k-means (k = number of classes), score every cluster by
   cross-validated CART accuracy, rank the best cluster's attributes by
   chi-square and keep the top v, then cross-validate the voting ensemble on
   that selection.
3. Iterate on the chosen cluster under the configured loop rule.
4. Turn a CART tree trained on the final selection into rules.

:func:`run_pca_baseline` replaces steps 1 to 3 by a PCA reduction of the raw
data, keeping the ensemble, folds and seeds.
"""

import typing as T
import dataclasses

import numpy as np

from .config.api import PipelineConfig
from .constants import LoopRuleEnum
from .data_model import Dataset, impute_missing, transpose, project_attributes
from .sampling import bootstrap_balance, majority_class_size
from .attribute_clustering import ClusterScore, kmeans, split_by_cluster, pick_best_cluster
from .feature_ranking import AttributeWeights, chi_square_weights, select_top_v, pca_reduce
from .ensemble_eval import EvaluationReport, cross_validate
from .learners.api import train
from .learners.tree import TreeModel, LEAF
from .exc import PipelineError
from .logger import logger

SELECTION_BIAS_NOTE = (
    "Attributes are selected once on the full balanced data before cross-validation; "
    "accuracies carry the corresponding selection bias."
)


# ------------------------------------------------------------------------------
# Rules
# ------------------------------------------------------------------------------
@dataclasses.dataclass(frozen=True)
class Condition:
    """
    One test on an attribute of ``D_f``.

    :param index: position of the attribute among the regular attributes.
    :param op: ``"<="``, ``">"`` or ``"in"``.
    :param codes: admitted category indices of an ``"in"`` test.
    """

    attribute: str
    index: int
    op: str
    threshold: float | None = None
    codes: tuple[int, ...] = ()
    categories: tuple[str, ...] = ()

    def holds(self, value: float) -> bool:
        if self.op == "<=":
            return value <= self.threshold
        elif self.op == ">":
            return value > self.threshold
        else:
            return int(value) in self.codes

    def render(self) -> str:
        if self.op == "in":
            return f"{self.attribute} in {{{', '.join(self.categories)}}}"
        return f"{self.attribute} {self.op} {self.threshold:.6g}"


@dataclasses.dataclass(frozen=True)
class Rule:
    conditions: tuple[Condition, ...]
    prediction: str
    support: int
    confidence: float

    def matches(self, row: np.ndarray) -> bool:
        """
        ``row`` holds the encoded regular attributes of ``D_f``, in order.
        """
        return all(c.holds(row[c.index]) for c in self.conditions)

    def render(self) -> str:
        body = " AND ".join(c.render() for c in self.conditions) or "TRUE"
        return (
            f"IF {body} THEN {self.prediction} "
            f"(support={self.support}, confidence={self.confidence:.3f})"
        )


def _merge_conditions(
    path: list[tuple[int, str, float | int]],
    d_f: Dataset,
) -> tuple[Condition, ...]:
    """
    Fold the raw tests of a root-to-leaf path into one condition per
    attribute and comparator: tightest numeric bounds, intersected category
    sets. Conditions are listed in first-use order.
    """
    attrs = d_f.regular_attributes
    upper: dict[int, float] = {}
    lower: dict[int, float] = {}
    allowed: dict[int, set[int]] = {}
    order: list[tuple[int, str]] = []
    for j, op, value in path:
        a = attrs[j]
        if a.is_nominal:
            everything = set(range(len(a.categories)))
            keep = {int(value)} if op == "==" else everything - {int(value)}
            allowed[j] = allowed.get(j, everything) & keep
            key = (j, "in")
        elif op == "<=":
            upper[j] = min(upper.get(j, np.inf), value)
            key = (j, "<=")
        else:
            lower[j] = max(lower.get(j, -np.inf), value)
            key = (j, ">")
        if key not in order:
            order.append(key)
    conditions = []
    for j, op in order:
        a = attrs[j]
        if op == "in":
            codes = tuple(sorted(allowed[j]))
            conditions.append(
                Condition(
                    attribute=a.name,
                    index=j,
                    op="in",
                    codes=codes,
                    categories=tuple(a.categories[c] for c in codes),
                )
            )
        else:
            threshold = upper[j] if op == "<=" else lower[j]
            conditions.append(Condition(attribute=a.name, index=j, op=op, threshold=float(threshold)))
    return tuple(conditions)


def rules_from_tree(model: TreeModel, d_f: Dataset) -> list[Rule]:
    """
    One rule per leaf, ordered by decreasing support (ties keep the
    left-first leaf order).
    """
    tree = model.tree
    rules = []
    stack: list[tuple[int, list]] = [(0, [])]
    while stack:
        node, path = stack.pop()
        j = int(tree.attribute[node])
        if j == LEAF:
            counts = tree.counts[node]
            support = int(counts.sum())
            code = int(tree.prediction[node])
            rules.append(
                Rule(
                    conditions=_merge_conditions(path, d_f),
                    prediction=model.classes[code],
                    support=support,
                    confidence=float(counts[code] / support),
                )
            )
            continue
        if tree.category[node] >= 0:
            cat = int(tree.category[node])
            left, right = (j, "==", cat), (j, "!=", cat)
        else:
            thr = float(tree.threshold[node])
            left, right = (j, "<=", thr), (j, ">", thr)
        stack.append((int(tree.right[node]), path + [right]))
        stack.append((int(tree.left[node]), path + [left]))
    order = sorted(range(len(rules)), key=lambda i: -rules[i].support)
    return [rules[i] for i in order]


def generate_rules(d_f: Dataset, cfg: PipelineConfig) -> list[Rule]:
    """
    Train the configured rule learner (CART by default) on all of ``d_f`` and
    read one rule off every leaf.
    """
    model = train(cfg.rule_learner, d_f, seed=cfg.seed)
    if not isinstance(model, TreeModel):
        raise PipelineError(
            f"rules need a single tree learner, got {cfg.rule_learner.algorithm.value}"
        )
    return rules_from_tree(model, d_f)


def apply_rules(rules: T.Sequence[Rule], d: Dataset) -> list[str]:
    """
    Label of the first matching rule for every instance of ``d``.
    """
    x = d.regular_values()
    labels = []
    for i, row in enumerate(x):
        for rule in rules:
            if rule.matches(row):
                labels.append(rule.prediction)
                break
        else:
            raise PipelineError(f"no rule matches instance {i}")
    return labels


# ------------------------------------------------------------------------------
# Level loop
# ------------------------------------------------------------------------------
@dataclasses.dataclass(frozen=True, eq=False)
class LevelTrace:
    """
    :param chosen: attribute names of the best cluster ``C_x``.
    :param selected: top-v attribute names, ``D_f`` of the level.
    :param report: ensemble evaluation of ``D_f``; its mean accuracy is ``P_i``.
    """

    level: int
    k: int
    wcss: float
    cluster_scores: tuple[ClusterScore, ...]
    chosen: tuple[str, ...]
    weights: AttributeWeights
    selected: tuple[str, ...]
    report: EvaluationReport
    d_f: Dataset

    @property
    def performance(self) -> float:
        return self.report.accuracy


@dataclasses.dataclass(frozen=True, eq=False)
class PipelineResult:
    """
    :param source: the input dataset, missing cells imputed.
    :param config: the configuration the run used.
    """

    levels: tuple[LevelTrace, ...]
    final_level: int
    stop_reason: str
    per_class_n: int
    balanced_size: int
    rules: tuple[Rule, ...]
    baseline: EvaluationReport | None = None
    notes: tuple[str, ...] = ()
    source: Dataset | None = None
    config: PipelineConfig | None = None

    @property
    def final_trace(self) -> LevelTrace:
        return self.levels[self.final_level - 1]

    @property
    def final_report(self) -> EvaluationReport:
        return self.final_trace.report

    @property
    def final_dataset(self) -> Dataset:
        return self.final_trace.d_f


@logger.emoji_block(
    msg="Level {level}",
    emoji="🔁",
)
def _run_level(
    level: int,
    current: Dataset,
    cfg: PipelineConfig,
    k: int,
) -> LevelTrace:
    m = transpose(current, normalize=cfg.normalize)
    k_level = min(k, m.n_rows)
    if k_level < k:
        logger.warning(f"only {m.n_rows} attributes left, clustering with k={k_level}")
    assignment = kmeans(
        m,
        k_level,
        seed=cfg.seed + level,
        max_iter=cfg.kmeans.max_iter,
        tol=cfg.kmeans.tol,
        n_init=cfg.kmeans.n_init,
    )
    clusters = split_by_cluster(current.with_provenance(f"level {level}"), assignment)
    logger.info(f"{m.n_rows} attributes in clusters of sizes {[len(c.regular_names) for c in clusters]}")
    chosen, scores = pick_best_cluster(
        clusters,
        seed=cfg.seed,
        folds=cfg.folds,
        learner=cfg.cluster_learner,
        n_jobs=cfg.n_jobs,
    )
    for s in scores:
        logger.info(
            f"cluster {s.cluster_id}: {s.size} attributes, "
            f"accuracy {s.accuracy_mean:.4f} +/- {s.accuracy_std:.4f}"
        )
    if level == 1 and len(chosen.regular_names) < 2:
        raise PipelineError(
            f"the best level 1 cluster holds {len(chosen.regular_names)} attribute, "
            "at least 2 are needed"
        )
    weights = chi_square_weights(chosen, bins=cfg.bins)
    d_f = select_top_v(chosen, weights, cfg.top_v)
    report = cross_validate(
        d_f,
        cfg.learners,
        folds=cfg.folds,
        seed=cfg.seed,
        strict=cfg.strict_cv,
        n_jobs=cfg.n_jobs,
    )
    logger.info(
        f"P_{level} = {report.mean.accuracy:.4f} +/- {report.std.accuracy:.4f} "
        f"on {d_f.regular_names}"
    )
    return LevelTrace(
        level=level,
        k=k_level,
        wcss=assignment.wcss,
        cluster_scores=tuple(scores),
        chosen=tuple(chosen.regular_names),
        weights=weights,
        selected=tuple(d_f.regular_names),
        report=report,
        d_f=d_f,
    )


def _prepare(d: Dataset) -> Dataset:
    if d.has_missing:
        logger.info("imputing missing cells with attribute mean / mode")
        return impute_missing(d)
    return d


def run_rpm(
    d: Dataset,
    cfg: PipelineConfig,
    notes: T.Sequence[str] = (),
    include_baseline: bool = False,
) -> PipelineResult:
    """
    Run the whole pipeline on ``d``.

    Loop rules:

    - ``improvement``: run another level while ``P_i > P_{i-1}``; the final
      level is the best one (the earliest on ties).
    - ``paper_literal``: run another level while ``P_i < P_{i-1}`` or at the
      first level; when that condition ends the loop the final level is the
      previous one.

    Both also stop at ``max_levels``, when the chosen cluster has fewer than
    ``2k`` attributes, or when it is the whole current attribute set.
    """
    d = _prepare(d)
    per_class_n = cfg.per_class_n or majority_class_size(d)
    balanced = bootstrap_balance(d, per_class_n, seed=cfg.seed)
    logger.info(
        f"balanced {d.n_instances} instances to {balanced.n_instances} "
        f"({per_class_n} per class)"
    )
    k = cfg.kmeans.k or len(d.classes)

    traces: list[LevelTrace] = []
    current = balanced
    final_level = None
    stop_reason = ""
    for level in range(1, cfg.max_levels + 1):
        trace = _run_level(level=level, current=current, cfg=cfg, k=k)
        traces.append(trace)
        if level > 1:
            previous = traces[-2].performance
            if cfg.loop_rule is LoopRuleEnum.improvement and not trace.performance > previous:
                stop_reason = "accuracy did not improve"
                break
            if cfg.loop_rule is LoopRuleEnum.paper_literal and not trace.performance < previous:
                stop_reason = "accuracy did not drop"
                final_level = level - 1
                break
        if level == cfg.max_levels:
            stop_reason = "max_levels reached"
            break
        if len(trace.chosen) < 2 * k:
            stop_reason = f"chosen cluster has fewer than {2 * k} attributes"
            break
        if list(trace.chosen) == current.regular_names:
            stop_reason = "chosen cluster is the whole attribute set"
            break
        current = project_attributes(current, trace.chosen)

    if final_level is None:
        if cfg.loop_rule is LoopRuleEnum.improvement:
            performances = [t.performance for t in traces]
            final_level = int(np.argmax(performances)) + 1
        else:
            final_level = len(traces)
    logger.info(f"stopped after level {len(traces)} ({stop_reason}), final level {final_level}")

    final = traces[final_level - 1]
    rules = generate_rules(final.d_f, cfg)
    baseline = run_pca_baseline(d, cfg) if include_baseline else None
    return PipelineResult(
        levels=tuple(traces),
        final_level=final_level,
        stop_reason=stop_reason,
        per_class_n=per_class_n,
        balanced_size=balanced.n_instances,
        rules=tuple(rules),
        baseline=baseline,
        notes=tuple(notes) + (SELECTION_BIAS_NOTE,),
        source=d,
        config=cfg,
    )


def run_pca_baseline(d: Dataset, cfg: PipelineConfig) -> EvaluationReport:
    """
    Impute, reduce the raw (unbalanced) data with PCA, and cross-validate the
    same ensemble with the same folds count and seed as :func:`run_rpm`.
    """
    reduced = pca_reduce(_prepare(d), variance_to_keep=cfg.variance_to_keep)
    logger.info(f"PCA baseline keeps {len(reduced.regular_names)} components")
    return cross_validate(
        reduced,
        cfg.learners,
        folds=cfg.folds,
        seed=cfg.seed,
        strict=cfg.strict_cv,
        n_jobs=cfg.n_jobs,
    )
