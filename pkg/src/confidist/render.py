"""Display formatting shared by reports and the CLI.

Paper-style rounding: intervals and means to one decimal place,
probabilities to the whole percent, p values to three decimals. Estimated
probabilities converted from p values keep two decimals ("66.35%") because
a whole percent would destroy the information the conversion adds. Full
mode prints repr precision everywhere. All output is locale-independent.
"""

from __future__ import annotations


def percent(x: float, *, precise: bool = False) -> str:
    """A probability as a percentage string.

    Default is the whole percent; tiny-but-nonzero values switch to three
    significant figures so they do not print as "0%". precise keeps two
    decimals (trailing zeros trimmed).
    """
    v = 100.0 * x
    if precise:
        s = f"{v:.2f}".rstrip("0").rstrip(".")
        return f"{s}%"
    if 0.0 < v < 0.5:
        return f"{v:.3g}%"
    return f"{v:.0f}%"


def number(x: float, *, full: bool = False) -> str:
    """A measurement-unit quantity: one decimal place under paper rounding."""
    if full:
        return repr(float(x))
    return f"{x:.1f}"


def signed_number(x: float, *, full: bool = False) -> str:
    if full:
        v = float(x)
        return repr(v) if v < 0 else f"+{v!r}"
    return f"{x:+.1f}"


def interval_str(lower: float, upper: float, *, signed: bool = False, full: bool = False) -> str:
    """Interval rendering, e.g. "5.5 to 7.1" or "-1.2 to +1.8"."""
    fmt = signed_number if signed else number
    return f"{fmt(lower, full=full)} to {fmt(upper, full=full)}"


def p_value_str(p: float, *, full: bool = False) -> str:
    """A p value as a fraction; paper rounding is three decimals, so
    anything below 0.0005 displays as "0.000"."""
    if full:
        return repr(float(p))
    return f"{p:.3f}"
