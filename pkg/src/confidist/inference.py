"""The three routes to a statement of uncertainty.

1. Null-hypothesis tests: two-sample t (pooled or Welch), one-way ANOVA
   from group summaries, and the exact binomial test against guessing.
2. Confidence intervals and the confidence distribution behind them: a
   t location-scale distribution centered on the point estimate with the
   standard error as scale.
3. Estimated probabilities for hypotheses: the confidence-distribution
   mass on a region (at least / at most a threshold, or within a band),
   conversions from published p values, inversion of intervals at a
   threshold, and the two-hypothesis Bayes update.

Sign convention for two-group comparisons: difference = first group minus
second group. Reports avoid test jargon, always name the baseline
hypothesis, and never use the word "significant".
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import special
from .data import SummaryStats
from .errors import DegenerateDataError, DomainError, InputError, NumericError
from .render import number, percent

__all__ = [
    "BayesTwoHypothesis",
    "ConfidenceDistribution",
    "ConfidenceInterval",
    "HypothesisSpec",
    "PStatement",
    "ProbabilityBound",
    "TestResult",
    "ThresholdInversion",
    "anova_oneway",
    "bayes_two_hypothesis",
    "binomial_ci",
    "ci",
    "diff_conf_dist",
    "diff_means_test",
    "format_report",
    "guessing_test",
    "hypothesis_probability",
    "invert_ci_for_threshold",
    "mean_conf_dist",
    "p_to_estimated_prob",
    "parse_p_statement",
]


@dataclass(frozen=True)
class ConfidenceInterval:
    """A range plus the confidence level it was built at."""

    lower: float
    upper: float
    level: float

    def __post_init__(self):
        if not 0.0 < self.level < 1.0:
            raise DomainError(f"confidence level must lie in (0, 1), got {self.level}")
        if not self.lower <= self.upper:
            raise DomainError(f"interval bounds out of order: ({self.lower}, {self.upper})")

    @property
    def width(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class ConfidenceDistribution:
    """A t location-scale distribution describing what the sample left
    uncertain about a mean (or a difference of means).

    Every confidence interval is a pair of its quantiles, and the mass it
    puts on a region is that region's estimated probability.
    """

    center: float
    scale: float
    df: float

    def __post_init__(self):
        if not self.scale > 0.0:
            raise DomainError(f"scale must be positive, got {self.scale}")
        if not self.df > 0.0:
            raise DomainError(f"degrees of freedom must be positive, got {self.df}")

    def cdf(self, x: float) -> float:
        return special.t_cdf((x - self.center) / self.scale, self.df)

    def pdf(self, x: float) -> float:
        return special.t_pdf((x - self.center) / self.scale, self.df) / self.scale

    def quantile(self, p: float) -> float:
        return self.center + self.scale * special.t_quantile(p, self.df)


@dataclass(frozen=True)
class HypothesisSpec:
    """A claim about the population quantity: at least t, at most t, or
    within [a, b].

    Whether the boundary itself counts is immaterial: the model is
    continuous, so exact equality carries probability zero.
    """

    kind: str  # "at_least" | "at_most" | "within"
    bounds: tuple[float, ...]

    def __post_init__(self):
        if self.kind in ("at_least", "at_most"):
            if len(self.bounds) != 1:
                raise DomainError(f"{self.kind} takes one bound, got {self.bounds}")
        elif self.kind == "within":
            if len(self.bounds) != 2:
                raise DomainError(f"within takes two bounds, got {self.bounds}")
            if not self.bounds[0] <= self.bounds[1]:
                raise DomainError(f"within needs a <= b, got {self.bounds}")
        else:
            raise DomainError(f"unknown hypothesis kind {self.kind!r}")

    @classmethod
    def at_least(cls, t: float) -> "HypothesisSpec":
        return cls("at_least", (float(t),))

    @classmethod
    def at_most(cls, t: float) -> "HypothesisSpec":
        return cls("at_most", (float(t),))

    @classmethod
    def within(cls, a: float, b: float) -> "HypothesisSpec":
        return cls("within", (float(a), float(b)))


@dataclass(frozen=True)
class TestResult:
    """Outcome of one test.

    For t methods, p_two_tailed = 2*(1 - t_cdf(|statistic|, df)). For the
    one-sided binomial test it holds the upper-tail P(X >= k) and se/df are
    absent. For ANOVA, df/df2 are the between/within degrees of freedom and
    there is no single effect size.
    """

    estimate: float | None
    se: float | None
    df: float | None
    statistic: float
    p_two_tailed: float
    method: str  # "pooled" | "welch" | "anova" | "binomial"
    df2: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.p_two_tailed <= 1.0:
            raise DomainError(f"p value out of [0, 1]: {self.p_two_tailed}")


@dataclass(frozen=True)
class BayesTwoHypothesis:
    """A prior, the likelihood of the data under each hypothesis, and the
    posterior probability of the first."""

    prior: float
    lik_h1: float
    lik_h0: float
    posterior: float


@dataclass(frozen=True)
class PStatement:
    """A published p value: either an exact figure ("p = 0.044") or an
    upper bound ("p < 0.001"), plus the sign of the observed estimate."""

    relation: str  # "equals" | "less_than"
    p: float
    sign_of_estimate: str  # "positive" | "negative"

    def __post_init__(self):
        if self.relation not in ("equals", "less_than"):
            raise DomainError(f"relation must be 'equals' or 'less_than', got {self.relation!r}")
        if self.sign_of_estimate not in ("positive", "negative"):
            raise DomainError(
                f"sign must be 'positive' or 'negative', got {self.sign_of_estimate!r}"
            )
        if not 0.0 < self.p <= 1.0:
            raise DomainError(f"p must lie in (0, 1], got {self.p}")


class ProbabilityBound(NamedTuple):
    """An estimated probability, possibly known only as a strict bound."""

    value: float
    relation: str  # "=" | ">" | "<"

    def display(self) -> str:
        pct = percent(self.value, precise=True)
        return pct if self.relation == "=" else f"{self.relation} {pct}"


class ThresholdInversion(NamedTuple):
    """The confidence level whose symmetric interval endpoint equals a
    threshold, and the tail mass beyond it. degenerate flags a threshold
    at the distribution center (level 0)."""

    level: float
    tail_prob: float
    degenerate: bool = False


def _require_inferential(stats: SummaryStats):
    if stats.n < 2:
        raise DegenerateDataError(
            f"group {stats.label!r} has n={stats.n}; inference needs n >= 2"
        )


def mean_conf_dist(stats: SummaryStats) -> ConfidenceDistribution:
    """Confidence distribution for one group mean: t around the sample mean
    with scale sd/sqrt(n) and n-1 degrees of freedom."""
    _require_inferential(stats)
    if stats.sd == 0.0:
        raise DegenerateDataError(
            f"group {stats.label!r} has zero spread; its confidence distribution "
            f"collapses to the single point {stats.mean}"
        )
    return ConfidenceDistribution(
        center=stats.mean, scale=stats.sd / math.sqrt(stats.n), df=float(stats.n - 1)
    )


def ci(dist: ConfidenceDistribution, level: float) -> ConfidenceInterval:
    """Central confidence interval: (1-level)/2 tail mass on each side."""
    if not 0.0 < level < 1.0:
        raise DomainError(f"confidence level must lie strictly between 0 and 1, got {level}")
    half = special.t_quantile(0.5 * (1.0 + level), dist.df) * dist.scale
    return ConfidenceInterval(lower=dist.center - half, upper=dist.center + half, level=level)


def diff_means_test(a: SummaryStats, b: SummaryStats, variant: str = "pooled") -> TestResult:
    """Two-sample t test for the difference of means (first minus second).

    "pooled" is the classical equal-variance test with df = n_a + n_b - 2;
    "welch" uses the unequal-variance standard error and the
    Welch-Satterthwaite degrees of freedom.
    """
    if variant not in ("pooled", "welch"):
        raise DomainError(f"unknown variant {variant!r}; use 'pooled' or 'welch'")
    _require_inferential(a)
    _require_inferential(b)
    if a.sd == 0.0 and b.sd == 0.0:
        raise DegenerateDataError(
            f"groups {a.label!r} and {b.label!r} both have zero spread; "
            f"the difference has no standard error"
        )
    estimate = a.mean - b.mean
    va, vb = a.sd * a.sd, b.sd * b.sd
    if variant == "pooled":
        df = float(a.n + b.n - 2)
        pooled_var = ((a.n - 1) * va + (b.n - 1) * vb) / df
        se = math.sqrt(pooled_var * (1.0 / a.n + 1.0 / b.n))
    else:
        ra, rb = va / a.n, vb / b.n
        se = math.sqrt(ra + rb)
        df = (ra + rb) ** 2 / (ra * ra / (a.n - 1) + rb * rb / (b.n - 1))
    statistic = estimate / se
    p = 2.0 * (1.0 - special.t_cdf(abs(statistic), df))
    return TestResult(
        estimate=estimate, se=se, df=df, statistic=statistic,
        p_two_tailed=p, method=variant,
    )


def diff_conf_dist(a: SummaryStats, b: SummaryStats, variant: str = "pooled") -> ConfidenceDistribution:
    """Confidence distribution for the difference of two group means."""
    result = diff_means_test(a, b, variant)
    return ConfidenceDistribution(center=result.estimate, scale=result.se, df=result.df)


def hypothesis_probability(dist: ConfidenceDistribution, hyp: HypothesisSpec) -> float:
    """Confidence-distribution mass on the hypothesis region: the estimated
    probability that the hypothesis is true."""
    if hyp.kind == "at_least":
        return 1.0 - dist.cdf(hyp.bounds[0])
    if hyp.kind == "at_most":
        return dist.cdf(hyp.bounds[0])
    lo, hi = hyp.bounds
    return dist.cdf(hi) - dist.cdf(lo)


def anova_oneway(groups: Sequence[SummaryStats]) -> TestResult:
    """One-way fixed-effects ANOVA from group summaries.

    Between sum of squares from the group means around the weighted grand
    mean; within from the group variances. F = MS_between / MS_within with
    df (k-1, N-k).
    """
    groups = list(groups)
    if len(groups) < 2:
        raise DomainError(f"ANOVA needs at least 2 groups, got {len(groups)}")
    for g in groups:
        _require_inferential(g)
    total_n = sum(g.n for g in groups)
    grand = math.fsum(g.n * g.mean for g in groups) / total_n
    ss_between = math.fsum(g.n * (g.mean - grand) ** 2 for g in groups)
    ss_within = math.fsum((g.n - 1) * g.sd * g.sd for g in groups)
    df1 = len(groups) - 1
    df2 = total_n - len(groups)
    if ss_within == 0.0:
        if ss_between == 0.0:
            raise DegenerateDataError(
                "every group is constant and equal; F is undefined (0/0)"
            )
        f_value = math.inf
    else:
        f_value = (ss_between / df1) / (ss_within / df2)
    return TestResult(
        estimate=None, se=None, df=float(df1), statistic=f_value,
        p_two_tailed=special.f_sf(f_value, df1, df2), method="anova", df2=float(df2),
    )


def p_to_estimated_prob(stmt: PStatement) -> tuple[ProbabilityBound, ProbabilityBound]:
    """Convert a two-tailed p value into estimated probabilities that the
    population value of the statistic is positive / negative.

    With a positive observed estimate: P(positive) = 1 - p/2 and
    P(negative) = p/2; a negative estimate swaps the two. A statement
    "p < x" propagates as strict bounds, never as point values.
    """
    big = 1.0 - 0.5 * stmt.p
    small = 1.0 - big  # exact complement of the rounded big side
    if stmt.relation == "equals":
        big_bound = ProbabilityBound(big, "=")
        small_bound = ProbabilityBound(small, "=")
    else:
        big_bound = ProbabilityBound(big, ">")
        small_bound = ProbabilityBound(small, "<")
    if stmt.sign_of_estimate == "positive":
        return big_bound, small_bound
    return small_bound, big_bound


_P_PATTERN = re.compile(r"\s*[pP]\s*(=|<)\s*([^\s%]+)\s*")


def parse_p_statement(text: str, sign: str = "positive") -> PStatement:
    """Parse strings like "p < 0.001" or "P = .044" into a PStatement.

    Percent forms are rejected: p values are written as fractions.
    """
    match = _P_PATTERN.fullmatch(text)
    if match is None:
        hint = "; write p as a fraction, not a percentage" if "%" in text else ""
        raise InputError(
            f"could not parse p statement from {text!r} "
            f"(expected e.g. 'p = 0.044' or 'p < 0.001'){hint}"
        )
    relation = "equals" if match.group(1) == "=" else "less_than"
    fragment = match.group(2)
    try:
        p = float(fragment)
    except ValueError:
        raise InputError(f"non-numeric p value {fragment!r} in {text!r}") from None
    if not 0.0 < p <= 1.0:
        raise InputError(f"p value must lie in (0, 1], got {fragment!r}")
    return PStatement(relation=relation, p=p, sign_of_estimate=sign)


def invert_ci_for_threshold(dist: ConfidenceDistribution, threshold: float) -> ThresholdInversion:
    """Which confidence level puts its symmetric interval endpoint exactly
    at the threshold -- and therefore how much estimated probability lies
    beyond it.

    Read in closed form from the cdf: tail = mass beyond the threshold,
    level = 1 - 2*tail. No trial and error over interval tables needed.
    """
    if threshold == dist.center:
        return ThresholdInversion(level=0.0, tail_prob=0.5, degenerate=True)
    c = dist.cdf(threshold)
    tail = 1.0 - c if threshold > dist.center else c
    return ThresholdInversion(level=1.0 - 2.0 * tail, tail_prob=tail, degenerate=False)


def bayes_two_hypothesis(prior: float, lik_h1: float, lik_h0: float) -> BayesTwoHypothesis:
    """Two-hypothesis Bayes update.

    posterior = prior*lik_h1 / (prior*lik_h1 + (1-prior)*lik_h0), i.e.
    posterior odds are prior odds times the likelihood ratio.
    """
    if not 0.0 <= prior <= 1.0:
        raise DomainError(f"prior must lie in [0, 1], got {prior}")
    if lik_h1 < 0.0 or lik_h0 < 0.0:
        raise DomainError(f"likelihoods must be nonnegative, got {lik_h1}, {lik_h0}")
    if prior == 0.0:
        posterior = 0.0
    elif prior == 1.0:
        posterior = 1.0
    else:
        numerator = prior * lik_h1
        denominator = numerator + (1.0 - prior) * lik_h0
        if denominator == 0.0:
            raise NumericError(
                "both likelihoods are zero with an interior prior; "
                "the posterior is undefined"
            )
        posterior = numerator / denominator
    return BayesTwoHypothesis(prior=prior, lik_h1=lik_h1, lik_h0=lik_h0, posterior=posterior)


def guessing_test(k: int, n: int, p0: float) -> TestResult:
    """Exact binomial test of the guessing hypothesis: the p value is
    P(X >= k) when each trial succeeds by chance with probability p0.

    The effect size is the observed success proportion k/n.
    """
    if not 0.0 < p0 < 1.0:
        raise DomainError(f"guessing probability must lie strictly inside (0, 1), got {p0}")
    if n < 1:
        raise DomainError(f"need at least one trial, got n={n}")
    p = special.binom_tail(k, n, p0)
    return TestResult(
        estimate=k / n, se=None, df=None, statistic=float(k),
        p_two_tailed=p, method="binomial",
    )


def binomial_ci(k: int, n: int, level: float = 0.95, sided: str = "two") -> ConfidenceInterval:
    """Exact (Clopper-Pearson) confidence interval for a binomial success
    probability, by inverting the binomial tails through the incomplete
    beta identity P(X >= k | p) = I_p(k, n-k+1).

    "two" is the equal-tailed interval; "lower_one" returns [p_low, 1]
    with P(X >= k | p_low) = 1 - level.
    """
    if int(k) != k or int(n) != n:
        raise DomainError(f"k and n must be whole counts, got k={k}, n={n}")
    k, n = int(k), int(n)
    if n < 1 or k < 0 or k > n:
        raise DomainError(f"need 0 <= k <= n with n >= 1, got k={k}, n={n}")
    if not 0.0 < level < 1.0:
        raise DomainError(f"confidence level must lie in (0, 1), got {level}")
    if sided not in ("two", "lower_one"):
        raise DomainError(f"sided must be 'two' or 'lower_one', got {sided!r}")
    if sided == "lower_one":
        lower = 0.0 if k == 0 else special.inv_reg_inc_beta(1.0 - level, k, n - k + 1)
        return ConfidenceInterval(lower=lower, upper=1.0, level=level)
    alpha = 1.0 - level
    lower = 0.0 if k == 0 else special.inv_reg_inc_beta(0.5 * alpha, k, n - k + 1)
    upper = 1.0 if k == n else special.inv_reg_inc_beta(1.0 - 0.5 * alpha, k + 1, n - k)
    return ConfidenceInterval(lower=lower, upper=upper, level=level)


def format_report(result, *, labels=None, subject=None, hypothesis=None) -> str:
    """Plain-language report sentence for a test result, a confidence
    interval, or a hypothesis probability.

    The baseline hypothesis is always stated explicitly, probabilities are
    rendered as percentages, and the word "significant" never appears.

    labels: (first group, second group) for two-group comparisons.
    subject: what the number describes, e.g. "the mean rating in Happyland".
    hypothesis: the HypothesisSpec a bare probability refers to.
    """
    if isinstance(result, TestResult):
        return _report_test(result, labels)
    if isinstance(result, ConfidenceInterval):
        return _report_interval(result, subject)
    if isinstance(result, (int, float)) and hypothesis is not None:
        return _report_probability(float(result), hypothesis, labels, subject)
    raise DomainError(
        "format_report needs a TestResult, a ConfidenceInterval, or a "
        "probability together with its hypothesis"
    )


def _report_test(result: TestResult, labels) -> str:
    if result.method == "binomial":
        return f"Probability of getting this result by guesswork = {percent(result.p_two_tailed)}"
    if result.method == "anova":
        k = int(result.df) + 1
        return (
            f"On the assumption that all {k} group means are equal, the "
            f"probability of differences as big or bigger than those observed "
            f"is {percent(result.p_two_tailed, precise=True)}"
        )
    a, b = labels if labels else ("the first group", "the second group")
    return (
        f"On the assumption that the overall mean values in {a} and {b} are "
        f"equal, the probability of getting a difference between the mean "
        f"values in {a} and {b} as big or bigger than the observed "
        f"{number(result.estimate)} is {percent(result.p_two_tailed, precise=True)}"
    )


def _report_interval(interval: ConfidenceInterval, subject) -> str:
    what = subject or "the population value"
    return (
        f"We can be {percent(interval.level)} confident that {what} lies "
        f"between {number(interval.lower)} and {number(interval.upper)}"
    )


def _report_probability(prob: float, hyp: HypothesisSpec, labels, subject) -> str:
    claim = _hypothesis_phrase(hyp, labels, subject)
    return f"Estimated probability that {claim}: {percent(prob)}"


def _hypothesis_phrase(hyp: HypothesisSpec, labels, subject) -> str:
    if labels:
        a, b = labels
        if hyp.kind == "at_least":
            (t,) = hyp.bounds
            if t == 0.0:
                return f"{a} exceeds {b}"
            if t > 0.0:
                return f"{a} exceeds {b} by at least {t:g}"
            return f"{a} minus {b} is at least {t:g}"
        if hyp.kind == "at_most":
            (t,) = hyp.bounds
            if t == 0.0:
                return f"{b} exceeds {a}"
            if t < 0.0:
                return f"{b} exceeds {a} by at least {-t:g}"
            return f"{a} minus {b} is at most {t:g}"
        lo, hi = hyp.bounds
        if lo == -hi and hi > 0.0:
            return f"{a} and {b} differ by less than {hi:g}"
        return f"{a} minus {b} lies between {lo:g} and {hi:g}"
    what = subject or "the population value"
    if hyp.kind == "at_least":
        return f"{what} is at least {hyp.bounds[0]:g}"
    if hyp.kind == "at_most":
        return f"{what} is at most {hyp.bounds[0]:g}"
    lo, hi = hyp.bounds
    return f"{what} lies between {lo:g} and {hi:g}"
