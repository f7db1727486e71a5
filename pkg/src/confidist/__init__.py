"""confidist: practical uncertainty statements from data or published
summaries.

Three routes are covered: null-hypothesis p values, confidence intervals
and the confidence distributions behind them, and estimated probabilities
for hypotheses (with a two-hypothesis Bayes update for the cases intervals
cannot reach). A Monte Carlo module verifies that the confidence
statements are calibrated rather than taking it on faith.
"""

from .calibrate import (
    CalibrationConfig,
    CalibrationReport,
    run_ci_coverage,
    run_flat_prior_equivalence,
)
from .data import (
    Dataset,
    Observation,
    SummaryStats,
    bundled_dataset,
    parse_dataset,
    parse_observations,
    parse_summaries,
    replicate,
    summarize,
)
from .errors import (
    ConfidistError,
    DegenerateDataError,
    DomainError,
    InputError,
    NumericError,
    UnderflowWarning,
)
from .inference import (
    BayesTwoHypothesis,
    ConfidenceDistribution,
    ConfidenceInterval,
    HypothesisSpec,
    PStatement,
    ProbabilityBound,
    TestResult,
    ThresholdInversion,
    anova_oneway,
    bayes_two_hypothesis,
    binomial_ci,
    ci,
    diff_conf_dist,
    diff_means_test,
    format_report,
    guessing_test,
    hypothesis_probability,
    invert_ci_for_threshold,
    mean_conf_dist,
    p_to_estimated_prob,
    parse_p_statement,
)
from .special import (
    binom_tail,
    f_sf,
    inv_reg_inc_beta,
    ln_gamma,
    reg_inc_beta,
    t_cdf,
    t_pdf,
    t_quantile,
)

__version__ = "0.1.0"

__all__ = [
    "BayesTwoHypothesis",
    "CalibrationConfig",
    "CalibrationReport",
    "ConfidenceDistribution",
    "ConfidenceInterval",
    "ConfidistError",
    "Dataset",
    "DegenerateDataError",
    "DomainError",
    "HypothesisSpec",
    "InputError",
    "NumericError",
    "Observation",
    "PStatement",
    "ProbabilityBound",
    "SummaryStats",
    "TestResult",
    "ThresholdInversion",
    "UnderflowWarning",
    "anova_oneway",
    "bayes_two_hypothesis",
    "binom_tail",
    "binomial_ci",
    "bundled_dataset",
    "ci",
    "diff_conf_dist",
    "diff_means_test",
    "f_sf",
    "format_report",
    "guessing_test",
    "hypothesis_probability",
    "inv_reg_inc_beta",
    "invert_ci_for_threshold",
    "ln_gamma",
    "mean_conf_dist",
    "p_to_estimated_prob",
    "parse_dataset",
    "parse_observations",
    "parse_p_statement",
    "parse_summaries",
    "reg_inc_beta",
    "replicate",
    "run_ci_coverage",
    "run_flat_prior_equivalence",
    "summarize",
    "t_cdf",
    "t_pdf",
    "t_quantile",
]
