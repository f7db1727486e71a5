"""Command-line interface.

One subcommand per operation: describe, ci, compare, anova, p2prob, bayes,
guess, distcurve, calibrate. Every command supports --format json; numbers
in JSON are always full precision, with paper-rounded display strings
alongside. Exit codes: 0 success, 2 input or usage error, 3 numeric
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import calibrate as cal
from . import data as data_mod
from . import inference as inf
from .errors import DomainError, InputError, NumericError
from .render import interval_str, number, p_value_str, percent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="confidist",
        description="p values, confidence intervals and distributions, and "
                    "estimated probabilities for hypotheses",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", help="per-group n, mean, sd of a CSV file")
    _add_input(p)
    _add_output(p)
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("ci", help="confidence interval for one group mean")
    _add_input(p)
    p.add_argument("--group", required=True, help="group label")
    p.add_argument("--level", type=float, default=0.95, help="confidence level (default 0.95)")
    _add_output(p)
    p.set_defaults(func=cmd_ci)

    p = sub.add_parser("compare", help="two-group comparison: difference, p value, "
                                       "CI, and hypothesis probabilities")
    _add_input(p)
    p.add_argument("--group-a", required=True, help="first group (difference = A - B)")
    p.add_argument("--group-b", required=True, help="second group")
    p.add_argument("--welch", action="store_true", help="unequal-variance (Welch) test "
                                                        "instead of the pooled default")
    p.add_argument("--delta", type=float, default=1.0,
                   help="half-width of the 'approximately equal' band (default 1)")
    p.add_argument("--level", type=float, default=0.95, help="confidence level (default 0.95)")
    _add_output(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("anova", help="one-way ANOVA across all groups")
    _add_input(p)
    _add_output(p)
    p.set_defaults(func=cmd_anova)

    p = sub.add_parser("p2prob", help="convert a p value to estimated probabilities")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--p", dest="p_text", help="statement such as 'p = 0.044' or 'p < 0.001'")
    g.add_argument("--value", type=float, help="exact p value (relation '=')")
    p.add_argument("--sign", choices=["positive", "negative"], default="positive",
                   help="sign of the observed sample estimate (default positive)")
    _add_output(p)
    p.set_defaults(func=cmd_p2prob)

    p = sub.add_parser("bayes", help="two-hypothesis Bayes update")
    p.add_argument("--prior", type=float, required=True, help="prior probability of H1")
    p.add_argument("--lik-h1", type=float, required=True, help="likelihood of the data under H1")
    p.add_argument("--lik-h0", type=float, required=True, help="likelihood of the data under H0")
    _add_output(p)
    p.set_defaults(func=cmd_bayes)

    p = sub.add_parser("guess", help="exact binomial test against guessing")
    p.add_argument("--k", type=int, required=True, help="observed successes")
    p.add_argument("--n", type=int, required=True, help="number of trials")
    p.add_argument("--p0", type=float, required=True, help="per-trial success chance under guessing")
    _add_output(p)
    p.set_defaults(func=cmd_guess)

    p = sub.add_parser("distcurve", help="confidence-distribution curve as CSV (x, density, cdf)")
    _add_input(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--group", help="group label for a single-mean curve")
    g.add_argument("--diff", nargs=2, metavar=("A", "B"), help="difference-of-means curve")
    p.add_argument("--welch", action="store_true", help="Welch variant for the difference")
    p.add_argument("--points", type=int, default=201, help="number of grid points (default 201)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_distcurve)

    p = sub.add_parser("calibrate", help="Monte Carlo coverage check; emits a JSON report")
    p.add_argument("--true-mean", type=float, default=0.0)
    p.add_argument("--true-sd", type=float, default=1.0)
    p.add_argument("--n", type=int, default=10, help="sample size per replication")
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1, help="parallel workers (result is "
                                                          "identical for any worker count)")
    p.set_defaults(func=cmd_calibrate)

    return parser


def _add_input(p: argparse.ArgumentParser):
    p.add_argument("input", nargs="?", help="CSV file (header group,value or group,n,mean,sd)")
    p.add_argument("--bundled", choices=sorted(data_mod._BUNDLED_FILES),
                   help="use a packaged example dataset instead of a file")


def _add_output(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("--rounding", choices=["paper", "full"], default="paper",
                   help="paper: 1 dp for means/intervals, whole-percent probabilities, "
                        "3 dp p values; full: repr precision")


def _load_dataset(args) -> data_mod.Dataset:
    if getattr(args, "bundled", None):
        if args.input is not None:
            raise InputError("give either an input file or --bundled, not both")
        return data_mod.bundled_dataset(args.bundled)
    if args.input is None:
        raise InputError("provide an input CSV file or --bundled NAME")
    try:
        text = Path(args.input).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc}") from None
    return data_mod.parse_dataset(text)


def _json_num(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return None
    return x


def _emit(obj):
    print(json.dumps(obj, indent=2))


def cmd_describe(args) -> int:
    dataset = _load_dataset(args)
    full = args.rounding == "full"
    if args.format == "json":
        _emit([
            {"group": g.label, "n": g.n, "mean": g.mean, "sd": _json_num(g.sd)}
            for g in dataset.groups
        ])
        return 0
    width = max(len("group"), *(len(g.label) for g in dataset.groups))
    print(f"{'group':<{width}}  {'n':>5}  mean    sd")
    for g in dataset.groups:
        sd = "n/a" if math.isnan(g.sd) else number(g.sd, full=full)
        print(f"{g.label:<{width}}  {g.n:>5}  {number(g.mean, full=full):<6}  {sd}")
    return 0


def cmd_ci(args) -> int:
    dataset = _load_dataset(args)
    dist = inf.mean_conf_dist(dataset.group(args.group))
    interval = inf.ci(dist, args.level)
    full = args.rounding == "full"
    display = interval_str(interval.lower, interval.upper, full=full)
    if args.format == "json":
        _emit({
            "group": args.group,
            "level": interval.level,
            "lower": interval.lower,
            "upper": interval.upper,
            "display": display,
        })
        return 0
    print(f"{percent(args.level)} CI for {args.group}: {display}")
    return 0


_COMPARISON_HYPOTHESES = (
    lambda d: inf.HypothesisSpec.at_least(0.0),
    lambda d: inf.HypothesisSpec.at_most(0.0),
    lambda d: inf.HypothesisSpec.at_least(d),
    lambda d: inf.HypothesisSpec.within(-d, d),
    lambda d: inf.HypothesisSpec.at_most(-d),
)


def cmd_compare(args) -> int:
    dataset = _load_dataset(args)
    if args.group_a == args.group_b:
        raise InputError("the two groups to compare must differ")
    a = dataset.group(args.group_a)
    b = dataset.group(args.group_b)
    variant = "welch" if args.welch else "pooled"
    result = inf.diff_means_test(a, b, variant)
    dist = inf.diff_conf_dist(a, b, variant)
    interval = inf.ci(dist, args.level)
    delta = args.delta
    hypotheses = [build(delta) for build in _COMPARISON_HYPOTHESES]
    probabilities = [inf.hypothesis_probability(dist, h) for h in hypotheses]
    labels = (args.group_a, args.group_b)
    full = args.rounding == "full"
    ci_display = interval_str(interval.lower, interval.upper, signed=True, full=full)
    report = inf.format_report(result, labels=labels)
    if args.format == "json":
        _emit({
            "group_a": args.group_a,
            "group_b": args.group_b,
            "method": result.method,
            "estimate": result.estimate,
            "se": result.se,
            "df": result.df,
            "statistic": result.statistic,
            "p_value": result.p_two_tailed,
            "ci": {"level": interval.level, "lower": interval.lower,
                   "upper": interval.upper, "display": ci_display},
            "delta": delta,
            "hypotheses": [
                {"kind": h.kind, "bounds": list(h.bounds), "probability": prob,
                 "display": inf.format_report(prob, hypothesis=h, labels=labels)}
                for h, prob in zip(hypotheses, probabilities)
            ],
            "report": report,
        })
        return 0
    print(f"{args.group_a} - {args.group_b} ({result.method})")
    print(f"  estimate: {number(result.estimate, full=full)}")
    print(f"  standard error: {result.se:.4g}" if not full else f"  standard error: {result.se!r}")
    print(f"  t statistic: {result.statistic:.3f} (df {result.df:.6g})")
    print(f"  p value: {p_value_str(result.p_two_tailed, full=full)}")
    print(f"  {percent(args.level)} CI for difference: {ci_display}")
    print(f"  {report}")
    for h, prob in zip(hypotheses, probabilities):
        print(f"  {inf.format_report(prob, hypothesis=h, labels=labels)}")
    return 0


def cmd_anova(args) -> int:
    dataset = _load_dataset(args)
    result = inf.anova_oneway(dataset.groups)
    full = args.rounding == "full"
    p_display = p_value_str(result.p_two_tailed, full=full)
    if args.format == "json":
        _emit({
            "groups": len(dataset.groups),
            "f": result.statistic,
            "df_between": result.df,
            "df_within": result.df2,
            "p_value": result.p_two_tailed,
            "p_display": p_display,
        })
        return 0
    print(f"One-way ANOVA across {len(dataset.groups)} groups")
    print(f"  F = {result.statistic:.3f} (df {result.df:.6g}, {result.df2:.6g})")
    print(f"  p value: {p_display}")
    return 0


def cmd_p2prob(args) -> int:
    if args.p_text is not None:
        stmt = inf.parse_p_statement(args.p_text, sign=args.sign)
    else:
        if not 0.0 < args.value <= 1.0:
            raise InputError(f"p value must lie in (0, 1], got {args.value}")
        stmt = inf.PStatement(relation="equals", p=args.value, sign_of_estimate=args.sign)
    prob_positive, prob_negative = inf.p_to_estimated_prob(stmt)
    if args.format == "json":
        _emit({
            "relation": stmt.relation,
            "p": stmt.p,
            "sign": stmt.sign_of_estimate,
            "prob_positive": {"value": prob_positive.value, "relation": prob_positive.relation,
                              "display": prob_positive.display()},
            "prob_negative": {"value": prob_negative.value, "relation": prob_negative.relation,
                              "display": prob_negative.display()},
        })
        return 0
    rel = "=" if stmt.relation == "equals" else "<"
    print(f"p statement: p {rel} {stmt.p:g} (sample estimate {stmt.sign_of_estimate})")
    for side, bound in (("positive", prob_positive), ("negative", prob_negative)):
        print(f"Estimated probability that population value of statistic is "
              f"{side} {bound.relation} {percent(bound.value, precise=True)}")
    return 0


def cmd_bayes(args) -> int:
    result = inf.bayes_two_hypothesis(args.prior, args.lik_h1, args.lik_h0)
    if args.format == "json":
        _emit({
            "prior": result.prior,
            "lik_h1": result.lik_h1,
            "lik_h0": result.lik_h0,
            "posterior": result.posterior,
        })
        return 0
    print(f"prior P(H1) = {percent(result.prior, precise=True)}, "
          f"likelihoods H1:H0 = {result.lik_h1:g}:{result.lik_h0:g}")
    print(f"posterior P(H1) = {result.posterior!r} ({percent(result.posterior, precise=True)})")
    return 0


def cmd_guess(args) -> int:
    result = inf.guessing_test(args.k, args.n, args.p0)
    report = inf.format_report(result)
    full = args.rounding == "full"
    if args.format == "json":
        _emit({
            "k": args.k,
            "n": args.n,
            "p0": args.p0,
            "p_value": result.p_two_tailed,
            "estimate": result.estimate,
            "report": report,
        })
        return 0
    print(f"{args.k} correct out of {args.n} trials, chance {args.p0:g} per trial")
    print(f"  p value: {p_value_str(result.p_two_tailed, full=full)}")
    print(f"  observed success proportion: {result.estimate:g}")
    print(f"  {report}")
    return 0


def cmd_distcurve(args) -> int:
    dataset = _load_dataset(args)
    if args.points < 2:
        raise InputError(f"need at least 2 points, got {args.points}")
    if args.group is not None:
        dist = inf.mean_conf_dist(dataset.group(args.group))
    else:
        label_a, label_b = args.diff
        dist = inf.diff_conf_dist(dataset.group(label_a), dataset.group(label_b),
                                  "welch" if args.welch else "pooled")
    span = 4.5 * dist.scale
    step = 2.0 * span / (args.points - 1)
    rows = []
    for i in range(args.points):
        x = dist.center - span + i * step
        rows.append((x, dist.pdf(x), dist.cdf(x)))
    if args.format == "json":
        _emit({
            "center": dist.center,
            "scale": dist.scale,
            "df": dist.df,
            "points": [{"x": x, "density": d, "cdf": c} for x, d, c in rows],
        })
        return 0
    print("x,density,cdf")
    for x, d, c in rows:
        print(f"{x!r},{d!r},{c!r}")
    return 0


def cmd_calibrate(args) -> int:
    config = cal.CalibrationConfig(
        true_mean=args.true_mean,
        true_sd=args.true_sd,
        n=args.n,
        level=args.level,
        trials=args.trials,
        seed=args.seed,
    )
    report = cal.run_ci_coverage(config, workers=args.workers)
    print(report.to_json())
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
