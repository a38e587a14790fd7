"""Per-examiner model fitting and group-informed prior construction.

An examiner's model is the full chain from their count table through
priors and posteriors to the per-category evidence values.  Informative
priors for one examiner are built from the *other* examiners in a group:
each other member's posterior (under their own uninformative priors) is
computed, and the cell-wise mean of those posteriors becomes the held-out
examiner's prior.  Leave-one-out rotation gives every member a prior that
never saw their own data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import (
    CATEGORIES,
    CELLS,
    TRUTHS,
    BayesFactorSet,
    BetaHyper,
    CountTable,
    PosteriorSet,
    PriorMode,
    PriorSet,
    bayes_factor_set,
    posterior_set,
    posterior_update,
    uninformative_priors,
)
from .records import Dataset, ResponseRecord, aggregate, table_from_records


class GroupError(ValueError):
    """A group operation was asked of an unsuitable group."""


@dataclass(frozen=True)
class ExaminerModel:
    """A fitted conversion model for one examiner under one condition set.

    Posteriors and evidence values are derivable from the table and priors;
    they are stored so the model is a self-contained lookup object.
    """

    examiner_id: str
    table: CountTable
    priors: PriorSet
    posteriors: PosteriorSet
    bayes_factors: BayesFactorSet


def fit_examiner(examiner_id: str, table: CountTable, priors: PriorSet) -> ExaminerModel:
    """Run the conjugate update and evidence-ratio chain for one examiner."""
    posteriors = posterior_set(table, priors)
    return ExaminerModel(
        examiner_id=examiner_id,
        table=table,
        priors=priors,
        posteriors=posteriors,
        bayes_factors=bayes_factor_set(posteriors),
    )


@dataclass(frozen=True)
class GroupDataset:
    """Count tables for a group of examiners tested under one condition set.

    Which examiners are comparable (same mark/print quality regime) is a
    subject-expert judgement made by the caller; this type only records
    the grouping.
    """

    members: tuple[tuple[str, CountTable], ...]
    condition_label: str = ""

    def __post_init__(self) -> None:
        if not self.members:
            raise GroupError("a group needs at least one member")
        ids = [examiner_id for examiner_id, _ in self.members]
        if len(set(ids)) != len(ids):
            raise GroupError("examiner ids within a group must be unique")

    @classmethod
    def from_dataset(cls, dataset: Dataset) -> "GroupDataset":
        return cls(members=tuple(aggregate(dataset)),
                   condition_label=dataset.condition_label)

    def ids(self) -> tuple[str, ...]:
        return tuple(examiner_id for examiner_id, _ in self.members)

    def table_for(self, examiner_id: str) -> CountTable:
        for member_id, table in self.members:
            if member_id == examiner_id:
                return table
        raise GroupError(f"examiner {examiner_id!r} is not a member of this group")


def mean_hypers(
    hypers: Sequence[BetaHyper], weights: Sequence[float] | None = None
) -> BetaHyper:
    """Component-wise (weighted) mean of beta shape pairs.

    Means are accumulated relative to the first element, so a collection
    of identical pairs returns that pair bit-exactly.
    """
    if not hypers:
        raise ValueError("cannot average an empty collection of shape pairs")
    if weights is not None:
        if len(weights) != len(hypers):
            raise ValueError(
                f"got {len(weights)} weights for {len(hypers)} shape pairs"
            )
        if any(not math.isfinite(w) or w <= 0.0 for w in weights):
            raise ValueError("weights must be finite and > 0")

    def shifted_mean(values: list[float]) -> float:
        first = values[0]
        if weights is None:
            return first + math.fsum(v - first for v in values) / len(values)
        total = math.fsum(weights)
        return first + math.fsum(
            w * (v - first) for v, w in zip(values, weights)
        ) / total

    return BetaHyper(
        shifted_mean([h.a for h in hypers]),
        shifted_mean([h.b for h in hypers]),
    )


def loo_informative_priors(group: GroupDataset, held_out: str) -> PriorSet:
    """Informative priors for one member, learned from all the others.

    Every other member's posterior under their own uninformative priors is
    computed, then averaged cell-wise.  When the other members' trial
    totals differ for a truth label, the mean is weighted by each
    posterior's pseudo-count (its total evidence mass); with equal totals
    the plain mean is used, which is the same thing.
    """
    ids = group.ids()
    if held_out not in ids:
        raise GroupError(f"held-out examiner {held_out!r} is not a member of this group")
    others = [(member_id, table) for member_id, table in group.members
              if member_id != held_out]
    if not others:
        raise GroupError("leave-one-out priors need a group of at least 2 members")

    posteriors = [
        posterior_set(table, uninformative_priors(table.n_same, table.n_diff))
        for _, table in others
    ]
    hypers = {}
    for truth in TRUTHS:
        totals = [table.total(truth) for _, table in others]
        use_weights = len(set(totals)) > 1
        for cat in CATEGORIES:
            cells = [post.cell(cat, truth) for post in posteriors]
            weights = [cell.pseudo_count for cell in cells] if use_weights else None
            hypers[(cat, truth)] = mean_hypers(cells, weights)
    return PriorSet(hypers=hypers, mode=PriorMode.INFORMATIVE)


def loo_group_fit(group: GroupDataset) -> tuple[ExaminerModel, ...]:
    """Fit every member with informative priors learned from the others.

    The folds are independent pure computations; output order follows the
    group's member order.
    """
    if len(group.members) < 2:
        raise GroupError("leave-one-out fitting needs a group of at least 2 members")
    return tuple(
        fit_examiner(member_id, table, loo_informative_priors(group, member_id))
        for member_id, table in group.members
    )


def sequential_update(
    model: ExaminerModel, new_records: Iterable[ResponseRecord]
) -> ExaminerModel:
    """Fold newly observed trials into an already-fitted model.

    The current posterior becomes the prior for the increment, so the
    result matches a one-shot fit of all data under the original priors
    (conjugacy).  The stored table becomes the merged table; the stored
    priors remain the original ones.
    """
    new_records = tuple(new_records)
    for record in new_records:
        if record.examiner_id != model.examiner_id:
            raise ValueError(
                f"record for examiner {record.examiner_id!r} cannot update the "
                f"model for examiner {model.examiner_id!r}"
            )
    increment = table_from_records(new_records)
    hypers = {
        (cat, truth): posterior_update(
            model.posteriors.cell(cat, truth),
            increment.count(cat, truth),
            increment.total(truth),
        )
        for cat, truth in CELLS
    }
    posteriors = PosteriorSet(hypers=hypers)
    return ExaminerModel(
        examiner_id=model.examiner_id,
        table=model.table.merged_with(increment),
        priors=model.priors,
        posteriors=posteriors,
        bayes_factors=bayes_factor_set(posteriors),
    )
