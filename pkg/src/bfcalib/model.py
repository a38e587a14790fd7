"""Beta-binomial evidence model for categorical examiner conclusions.

Each response category ("identification", "inconclusive", "exclusion") is
modelled independently against each ground-truth label (same source vs
different source) by a binomial likelihood with a conjugate beta prior.
The strength-of-evidence value for a category is the ratio of the
posterior-expected response probabilities under the two truth labels.
Unlike the raw sample-proportion ratio, that ratio is always finite and
strictly positive, even when observed counts are zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping


class EmptySampleError(ValueError):
    """An operation required at least one trial for a truth label."""


class InconsistentCountsError(ValueError):
    """Response counts disagree with the declared trial totals."""


class ResponseCategory(Enum):
    """The three conclusion levels an examiner can report."""

    IDENTIFICATION = "ID"
    INCONCLUSIVE = "IN"
    EXCLUSION = "EX"

    @classmethod
    def parse(cls, token: str) -> "ResponseCategory":
        try:
            return _CATEGORY_TOKENS[token.strip().lower()]
        except KeyError:
            raise ValueError(
                f"unknown response token {token!r}; expected one of "
                "ID/IN/EX or identification/inconclusive/exclusion"
            ) from None


class TruthLabel(Enum):
    """Ground truth of a mark-print pair."""

    SAME_SOURCE = "s"
    DIFFERENT_SOURCE = "d"

    @classmethod
    def parse(cls, token: str) -> "TruthLabel":
        try:
            return _TRUTH_TOKENS[token.strip().lower()]
        except KeyError:
            raise ValueError(
                f"unknown truth token {token!r}; expected s/d or same/different"
            ) from None


_CATEGORY_TOKENS = {
    "id": ResponseCategory.IDENTIFICATION,
    "identification": ResponseCategory.IDENTIFICATION,
    "in": ResponseCategory.INCONCLUSIVE,
    "inconclusive": ResponseCategory.INCONCLUSIVE,
    "ex": ResponseCategory.EXCLUSION,
    "exclusion": ResponseCategory.EXCLUSION,
}

_TRUTH_TOKENS = {
    "s": TruthLabel.SAME_SOURCE,
    "same": TruthLabel.SAME_SOURCE,
    "d": TruthLabel.DIFFERENT_SOURCE,
    "different": TruthLabel.DIFFERENT_SOURCE,
}

CATEGORIES: tuple[ResponseCategory, ...] = tuple(ResponseCategory)
TRUTHS: tuple[TruthLabel, ...] = tuple(TruthLabel)

Cell = tuple[ResponseCategory, TruthLabel]
CELLS: tuple[Cell, ...] = tuple((cat, t) for cat in CATEGORIES for t in TRUTHS)


@dataclass(frozen=True)
class CountTable:
    """Per-examiner response counts split by ground truth.

    ``counts`` maps (category, truth) to the number of trials with that
    truth label answered with that category.  ``n_same``/``n_diff`` are the
    per-truth trial totals; category counts must sum to them exactly.  The
    count of responses that are *not* a given category is always derived,
    never stored.
    """

    counts: Mapping[Cell, int]
    n_same: int
    n_diff: int

    def __post_init__(self) -> None:
        if set(self.counts) != set(CELLS):
            raise InconsistentCountsError(
                "counts must contain exactly the six (category, truth) cells"
            )
        clean = {}
        for cell, value in self.counts.items():
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise InconsistentCountsError(
                    f"count for {cell[0].value}|{cell[1].value} must be a "
                    f"non-negative integer, got {value!r}"
                )
            clean[cell] = value
        object.__setattr__(self, "counts", clean)
        for truth, total in ((TruthLabel.SAME_SOURCE, self.n_same),
                             (TruthLabel.DIFFERENT_SOURCE, self.n_diff)):
            if not isinstance(total, int) or isinstance(total, bool) or total < 0:
                raise InconsistentCountsError(
                    f"trial total for truth {truth.value!r} must be a "
                    f"non-negative integer, got {total!r}"
                )
            row_sum = sum(clean[(cat, truth)] for cat in CATEGORIES)
            if row_sum != total:
                raise InconsistentCountsError(
                    f"counts for truth {truth.value!r} sum to {row_sum}, "
                    f"declared total is {total}"
                )

    @classmethod
    def from_rows(cls, same: tuple[int, int, int], diff: tuple[int, int, int]) -> "CountTable":
        """Build from (ID, IN, EX) count triples for each truth label."""
        counts = {}
        for triple, truth in ((same, TruthLabel.SAME_SOURCE),
                              (diff, TruthLabel.DIFFERENT_SOURCE)):
            for cat, value in zip(CATEGORIES, triple):
                counts[(cat, truth)] = value
        return cls(counts=counts, n_same=sum(same), n_diff=sum(diff))

    def count(self, cat: ResponseCategory, truth: TruthLabel) -> int:
        return self.counts[(cat, truth)]

    def total(self, truth: TruthLabel) -> int:
        return self.n_same if truth is TruthLabel.SAME_SOURCE else self.n_diff

    def complement(self, cat: ResponseCategory, truth: TruthLabel) -> int:
        """Count of responses with this truth label that are not ``cat``."""
        return self.total(truth) - self.count(cat, truth)

    def merged_with(self, other: "CountTable") -> "CountTable":
        """Cell-wise sum of two tables (for incremental data collection)."""
        counts = {cell: self.counts[cell] + other.counts[cell] for cell in CELLS}
        return CountTable(counts=counts,
                          n_same=self.n_same + other.n_same,
                          n_diff=self.n_diff + other.n_diff)

    def swapped(self) -> "CountTable":
        """Table with the two truth rows (and their totals) exchanged."""
        counts = {(cat, t): self.counts[(cat, _OTHER_TRUTH[t])] for cat, t in CELLS}
        return CountTable(counts=counts, n_same=self.n_diff, n_diff=self.n_same)


_OTHER_TRUTH = {
    TruthLabel.SAME_SOURCE: TruthLabel.DIFFERENT_SOURCE,
    TruthLabel.DIFFERENT_SOURCE: TruthLabel.SAME_SOURCE,
}


@dataclass(frozen=True)
class BetaHyper:
    """Shape pair of a beta distribution; also used for posteriors.

    Both shapes must be strictly positive, which keeps every expected
    value strictly inside (0, 1) and every derived evidence ratio finite.
    """

    a: float
    b: float

    def __post_init__(self) -> None:
        for name, value in (("a", self.a), ("b", self.b)):
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ValueError(f"shape {name} must be a real number, got {value!r}")
            if not math.isfinite(value) or value <= 0.0:
                raise ValueError(f"shape {name} must be finite and > 0, got {value!r}")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))

    @property
    def pseudo_count(self) -> float:
        """Total prior evidence mass, in units of trials."""
        return self.a + self.b


class PriorMode(Enum):
    UNINFORMATIVE = "uninformative"
    INFORMATIVE = "informative"


@dataclass(frozen=True)
class PriorSet:
    """One beta prior per (category, truth) cell, plus its provenance mode.

    Uninformative priors share a single shape pair across the three
    categories of each truth label; informative priors may differ per cell.
    """

    hypers: Mapping[Cell, BetaHyper]
    mode: PriorMode

    def __post_init__(self) -> None:
        if set(self.hypers) != set(CELLS):
            raise ValueError("priors must contain exactly the six (category, truth) cells")
        object.__setattr__(self, "hypers", dict(self.hypers))
        if self.mode is PriorMode.UNINFORMATIVE:
            for truth in TRUTHS:
                cells = [self.hypers[(cat, truth)] for cat in CATEGORIES]
                if any(c.a != cells[0].a or c.b != cells[0].b for c in cells[1:]):
                    raise ValueError(
                        "uninformative priors must be identical across the three "
                        f"categories for truth {truth.value!r}"
                    )

    def cell(self, cat: ResponseCategory, truth: TruthLabel) -> BetaHyper:
        return self.hypers[(cat, truth)]


@dataclass(frozen=True)
class PosteriorSet:
    """Updated beta shapes per (category, truth) cell."""

    hypers: Mapping[Cell, BetaHyper]

    def __post_init__(self) -> None:
        if set(self.hypers) != set(CELLS):
            raise ValueError("posteriors must contain exactly the six (category, truth) cells")
        object.__setattr__(self, "hypers", dict(self.hypers))

    def cell(self, cat: ResponseCategory, truth: TruthLabel) -> BetaHyper:
        return self.hypers[(cat, truth)]

    def pseudo_count(self, cat: ResponseCategory, truth: TruthLabel) -> float:
        return self.hypers[(cat, truth)].pseudo_count


class RatioKind(Enum):
    FINITE = "finite"
    POSITIVE_INFINITE = "positive_infinite"
    ZERO = "zero"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class ExtendedRatio:
    """Sample-proportion ratio with its zero-count failure modes made explicit.

    A zero denominator with a positive numerator is tagged, never returned
    as a floating-point infinity; 0/0 is tagged undefined.
    """

    kind: RatioKind
    value: float | None = None

    def __post_init__(self) -> None:
        if self.kind is RatioKind.FINITE:
            if self.value is None or not math.isfinite(self.value) or self.value <= 0.0:
                raise ValueError("finite ratio requires a finite positive value")
        elif self.value is not None:
            raise ValueError(f"{self.kind.value} ratio must not carry a value")

    @classmethod
    def finite(cls, value: float) -> "ExtendedRatio":
        return cls(RatioKind.FINITE, float(value))

    @classmethod
    def zero(cls) -> "ExtendedRatio":
        return cls(RatioKind.ZERO)

    @classmethod
    def positive_infinite(cls) -> "ExtendedRatio":
        return cls(RatioKind.POSITIVE_INFINITE)

    @classmethod
    def undefined(cls) -> "ExtendedRatio":
        return cls(RatioKind.UNDEFINED)

    @property
    def is_finite(self) -> bool:
        return self.kind is RatioKind.FINITE


@dataclass(frozen=True)
class BayesFactorSet:
    """Evidence value per response category; always finite and positive."""

    values: Mapping[ResponseCategory, float]

    def __post_init__(self) -> None:
        if set(self.values) != set(CATEGORIES):
            raise ValueError("a value is required for each of the three categories")
        for cat, value in self.values.items():
            if not math.isfinite(value) or value <= 0.0:
                raise ValueError(
                    f"value for {cat.value} must be finite and > 0, got {value!r}"
                )
        object.__setattr__(self, "values", dict(self.values))

    def __getitem__(self, cat: ResponseCategory) -> float:
        return self.values[cat]


def sample_proportion(table: CountTable, cat: ResponseCategory, truth: TruthLabel) -> float:
    """Observed fraction of ``truth`` trials answered with ``cat``."""
    total = table.total(truth)
    if total == 0:
        raise EmptySampleError(
            f"no trials recorded for truth {truth.value!r}; proportion undefined"
        )
    return table.count(cat, truth) / total


def likelihood_ratio(table: CountTable, cat: ResponseCategory) -> ExtendedRatio:
    """Ratio of same-source to different-source sample proportions for ``cat``.

    Degenerate zero-count outcomes are tagged rather than raised or
    silently returned as 0.0/inf floats.
    """
    if table.n_same == 0 or table.n_diff == 0:
        raise EmptySampleError("both truth labels need at least one trial")
    numer = sample_proportion(table, cat, TruthLabel.SAME_SOURCE)
    denom = sample_proportion(table, cat, TruthLabel.DIFFERENT_SOURCE)
    if numer == 0.0 and denom == 0.0:
        return ExtendedRatio.undefined()
    if denom == 0.0:
        return ExtendedRatio.positive_infinite()
    if numer == 0.0:
        return ExtendedRatio.zero()
    return ExtendedRatio.finite(numer / denom)


def uninformative_priors(n_same: int, n_diff: int) -> PriorSet:
    """Reference priors weighted by each truth label's share of the trials.

    Every cell for the same-source row gets a = b = n_same / (n_same + n_diff)
    and the different-source row gets a = b = n_diff / (n_same + n_diff).
    With equal totals both reduce to the symmetric Beta(0.5, 0.5) reference
    prior; with unequal totals the weighting avoids biasing the evidence
    ratio toward either truth label.
    """
    for name, value in (("n_same", n_same), ("n_diff", n_diff)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise EmptySampleError(f"{name} must be an integer >= 1, got {value!r}")
    total = n_same + n_diff
    same = BetaHyper(n_same / total, n_same / total)
    diff = BetaHyper(n_diff / total, n_diff / total)
    hypers = {}
    for cat in CATEGORIES:
        hypers[(cat, TruthLabel.SAME_SOURCE)] = same
        hypers[(cat, TruthLabel.DIFFERENT_SOURCE)] = diff
    return PriorSet(hypers=hypers, mode=PriorMode.UNINFORMATIVE)


def posterior_update(prior: BetaHyper, successes: int, trials: int) -> BetaHyper:
    """Conjugate update: add successes to a and failures to b."""
    for name, value in (("successes", successes), ("trials", trials)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise InconsistentCountsError(f"{name} must be a non-negative integer")
    if successes > trials:
        raise InconsistentCountsError(
            f"successes ({successes}) exceed trials ({trials})"
        )
    return BetaHyper(successes + prior.a, (trials - successes) + prior.b)


def posterior_set(table: CountTable, priors: PriorSet) -> PosteriorSet:
    """Apply the conjugate update to every (category, truth) cell."""
    hypers = {}
    for cat, truth in CELLS:
        hypers[(cat, truth)] = posterior_update(
            priors.cell(cat, truth), table.count(cat, truth), table.total(truth)
        )
    return PosteriorSet(hypers=hypers)


def expected_theta(hyper: BetaHyper) -> float:
    """Mean of the beta distribution; strictly inside (0, 1)."""
    return hyper.a / (hyper.a + hyper.b)


def bayes_factor(posteriors: PosteriorSet, cat: ResponseCategory) -> float:
    """Posterior-expected response probability ratio, same over different source."""
    same = expected_theta(posteriors.cell(cat, TruthLabel.SAME_SOURCE))
    diff = expected_theta(posteriors.cell(cat, TruthLabel.DIFFERENT_SOURCE))
    return same / diff


def bayes_factor_set(posteriors: PosteriorSet) -> BayesFactorSet:
    return BayesFactorSet(values={cat: bayes_factor(posteriors, cat) for cat in CATEGORIES})


def max_attainable_bf(n_same: int, n_diff: int, mode: PriorMode) -> float:
    """Largest evidence value a dataset of this size can support.

    With uninformative priors a perfect record yields n_same + n_diff + 1.
    With group-derived informative priors, the ceiling assumes every group
    member also responded perfectly, doubling the effective evidence:
    2 * (n_same + n_diff) + 1.  The smallest attainable value is the
    reciprocal of the same expression.
    """
    for name, value in (("n_same", n_same), ("n_diff", n_diff)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise EmptySampleError(f"{name} must be an integer >= 1, got {value!r}")
    total = n_same + n_diff
    if mode is PriorMode.UNINFORMATIVE:
        return float(total + 1)
    if mode is PriorMode.INFORMATIVE:
        return float(2 * total + 1)
    raise ValueError(f"unknown prior mode: {mode!r}")
