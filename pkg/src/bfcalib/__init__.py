"""Calibrated Bayes factors for categorical forensic-examination conclusions.

Fits a per-category beta-binomial model to an examiner's responses on
ground-truth-known trials and converts each categorical conclusion into a
finite, strictly positive evidence value.  Priors are either reference
priors weighted by trial share, or informative priors learned from the
other examiners in a group by leave-one-out rotation.
"""

from .calibration import (
    ExaminerModel,
    GroupDataset,
    GroupError,
    fit_examiner,
    loo_group_fit,
    loo_informative_priors,
    mean_hypers,
    sequential_update,
)
from .estimator import BayesFactorCalibrator
from .model import (
    CATEGORIES,
    TRUTHS,
    BayesFactorSet,
    BetaHyper,
    CountTable,
    EmptySampleError,
    ExtendedRatio,
    InconsistentCountsError,
    PosteriorSet,
    PriorMode,
    PriorSet,
    RatioKind,
    ResponseCategory,
    TruthLabel,
    bayes_factor,
    bayes_factor_set,
    expected_theta,
    likelihood_ratio,
    max_attainable_bf,
    posterior_set,
    posterior_update,
    sample_proportion,
    uninformative_priors,
)
from .numerics import (
    DensityCurve,
    beta_pdf,
    density_curve,
    ln_gamma,
    posterior_mean_oracle,
)
from .records import (
    Dataset,
    RecordParseError,
    ResponseRecord,
    aggregate,
    export_results,
    parse_records,
)
from .reporting import (
    ConversionRow,
    ConversionTable,
    conversion_table,
    curve_csv,
    format_bf,
    log2_bf,
    swarm_data,
)
from .simulate import (
    ConvergenceReport,
    ExaminerProfile,
    SimConfig,
    convergence_study,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "BayesFactorCalibrator",
    "BayesFactorSet",
    "BetaHyper",
    "CATEGORIES",
    "ConversionRow",
    "ConversionTable",
    "ConvergenceReport",
    "CountTable",
    "Dataset",
    "DensityCurve",
    "EmptySampleError",
    "ExaminerModel",
    "ExaminerProfile",
    "ExtendedRatio",
    "GroupDataset",
    "GroupError",
    "InconsistentCountsError",
    "PosteriorSet",
    "PriorMode",
    "PriorSet",
    "RatioKind",
    "RecordParseError",
    "ResponseCategory",
    "ResponseRecord",
    "SimConfig",
    "TRUTHS",
    "TruthLabel",
    "aggregate",
    "bayes_factor",
    "bayes_factor_set",
    "beta_pdf",
    "conversion_table",
    "convergence_study",
    "curve_csv",
    "density_curve",
    "expected_theta",
    "export_results",
    "fit_examiner",
    "format_bf",
    "likelihood_ratio",
    "ln_gamma",
    "log2_bf",
    "loo_group_fit",
    "loo_informative_priors",
    "max_attainable_bf",
    "mean_hypers",
    "parse_records",
    "posterior_mean_oracle",
    "posterior_set",
    "posterior_update",
    "sample_proportion",
    "sequential_update",
    "swarm_data",
    "synthesize",
    "uninformative_priors",
]
