"""Scikit-learn style front end for the calibration pipeline.

``BayesFactorCalibrator`` follows the fit/transform contract so the
conversion step composes with the wider ecosystem: fit on ground-truth
test responses, then transform casework outputs into evidence values.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .calibration import GroupDataset, fit_examiner, loo_group_fit
from .model import ResponseCategory, TruthLabel, uninformative_priors
from .records import Dataset, ResponseRecord
from .reporting import ConversionTable, conversion_table

_PRIOR_CHOICES = ("uninformative", "informative")


def _check_pairs(X) -> list[tuple[str, ResponseCategory]]:
    """Validate X as an (n, 2) array of [examiner_id, response] rows."""
    array = np.asarray(X, dtype=object)
    if array.ndim != 2 or array.shape[1] != 2:
        raise ValueError(
            "X must be array-like of shape (n_samples, 2) with columns "
            f"[examiner_id, response], got shape {array.shape}"
        )
    pairs = []
    for index, (examiner_id, response) in enumerate(array):
        try:
            category = ResponseCategory.parse(str(response))
        except ValueError as exc:
            raise ValueError(f"X row {index}: {exc}") from None
        pairs.append((str(examiner_id), category))
    return pairs


def _check_truths(y, n_samples: int) -> list[TruthLabel]:
    array = np.asarray(y, dtype=object).ravel()
    if array.shape[0] != n_samples:
        raise ValueError(
            f"y has {array.shape[0]} entries but X has {n_samples} rows"
        )
    truths = []
    for index, token in enumerate(array):
        try:
            truths.append(TruthLabel.parse(str(token)))
        except ValueError as exc:
            raise ValueError(f"y entry {index}: {exc}") from None
    return truths


class BayesFactorCalibrator(BaseEstimator, TransformerMixin):
    """Convert categorical examiner conclusions into calibrated evidence values.

    Parameters
    ----------
    prior : {"uninformative", "informative"}
        "uninformative" fits each examiner independently with reference
        priors weighted by their trial shares.  "informative" fits each
        examiner with priors learned from the other examiners in the
        training data by leave-one-out rotation (requires >= 2 examiners).
    condition_label : str
        Opaque name of the condition set the training data represent.

    Examples
    --------
    >>> X = [["E01", "ID"], ["E01", "EX"]]
    >>> y = ["same", "different"]
    >>> cal = BayesFactorCalibrator().fit(X, y)
    >>> cal.transform([["E01", "ID"]])
    array([3.])
    """

    def __init__(self, prior: str = "uninformative", condition_label: str = ""):
        self.prior = prior
        self.condition_label = condition_label

    def fit(self, X, y):
        """Fit one model per examiner from ground-truth-known responses."""
        if self.prior not in _PRIOR_CHOICES:
            raise ValueError(
                f"prior must be one of {_PRIOR_CHOICES}, got {self.prior!r}"
            )
        pairs = _check_pairs(X)
        truths = _check_truths(y, len(pairs))
        records = tuple(
            ResponseRecord(examiner_id, f"X{index:06d}", truth, category)
            for index, ((examiner_id, category), truth) in enumerate(zip(pairs, truths))
        )
        dataset = Dataset(records=records, condition_label=self.condition_label)
        group = GroupDataset.from_dataset(dataset)
        if self.prior == "informative":
            models = loo_group_fit(group)
        else:
            models = []
            for examiner_id, table in group.members:
                try:
                    priors = uninformative_priors(table.n_same, table.n_diff)
                except ValueError as exc:
                    raise ValueError(f"examiner {examiner_id!r}: {exc}") from None
                models.append(fit_examiner(examiner_id, table, priors))
        self.models_ = {model.examiner_id: model for model in models}
        self.n_features_in_ = 2
        return self

    def transform(self, X) -> np.ndarray:
        """Evidence value for each [examiner_id, response] row."""
        if not hasattr(self, "models_"):
            raise NotFittedError(
                "this BayesFactorCalibrator is not fitted yet; call fit first"
            )
        pairs = _check_pairs(X)
        values = np.empty(len(pairs), dtype=np.float64)
        for index, (examiner_id, category) in enumerate(pairs):
            try:
                model = self.models_[examiner_id]
            except KeyError:
                raise ValueError(
                    f"X row {index}: examiner {examiner_id!r} was not seen during fit"
                ) from None
            values[index] = model.bayes_factors[category]
        return values

    def predict(self, X) -> np.ndarray:
        """Alias of :meth:`transform` for predictor-style pipelines."""
        return self.transform(X)

    def conversion_table(self) -> ConversionTable:
        """Lookup table of all fitted evidence values."""
        if not hasattr(self, "models_"):
            raise NotFittedError(
                "this BayesFactorCalibrator is not fitted yet; call fit first"
            )
        return conversion_table(self.models_.values(), self.condition_label)
