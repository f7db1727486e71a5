"""Data ingestion: raw observations or published summary statistics.

Two CSV shapes are understood:

    group,value          one observation per line        (provenance "raw")
    group,n,mean,sd      one group summary per line      (provenance "summary")

Both produce a Dataset of per-group sufficient statistics (n, mean, sample
sd with the n-1 denominator); everything downstream consumes only those.
Files must be UTF-8 with a plain decimal point; LF and CRLF both work.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from importlib import resources

from .errors import DomainError, InputError

RAW_HEADER = ("group", "value")
SUMMARY_HEADER = ("group", "n", "mean", "sd")

_BUNDLED_FILES = {
    "happiness": "happiness_summary.csv",
    "happiness-x40": "happiness_x40.csv",
}


@dataclass(frozen=True)
class Observation:
    """A single rating: which group it belongs to and its value."""

    group: str
    value: float

    def __post_init__(self):
        if not self.group:
            raise DomainError("observation group label may not be empty")


@dataclass(frozen=True)
class SummaryStats:
    """Sufficient statistics of one group: size, mean, sample sd (n-1)."""

    label: str
    n: int
    mean: float
    sd: float

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"group {self.label!r}: n must be at least 1, got {self.n}")
        if self.sd < 0:
            raise DomainError(f"group {self.label!r}: sd must be nonnegative, got {self.sd}")


@dataclass(frozen=True)
class Dataset:
    """Ordered per-group summaries plus where they came from.

    Immutable once built; the first listed group is "group A" in any
    difference, so input order is preserved.
    """

    groups: tuple[SummaryStats, ...]
    provenance: str  # "raw" or "summary"

    def __post_init__(self):
        labels = [g.label for g in self.groups]
        if len(set(labels)) != len(labels):
            raise DomainError(f"duplicate group labels: {labels}")
        if self.provenance not in ("raw", "summary"):
            raise DomainError(f"provenance must be 'raw' or 'summary', got {self.provenance!r}")

    def labels(self) -> list[str]:
        return [g.label for g in self.groups]

    def group(self, label: str) -> SummaryStats:
        for g in self.groups:
            if g.label == label:
                return g
        raise InputError(f"no group named {label!r}; available: {', '.join(self.labels())}")


def summarize(values, label: str = "") -> SummaryStats:
    """Mean and sample standard deviation (n-1 denominator) of raw values."""
    vals = [float(v) for v in values]
    if len(vals) < 2:
        raise InputError(f"need at least 2 values to summarize, got {len(vals)}")
    n = len(vals)
    mean = math.fsum(vals) / n
    ss = math.fsum((v - mean) ** 2 for v in vals)
    return SummaryStats(label=label, n=n, mean=mean, sd=math.sqrt(ss / (n - 1)))


def parse_observations(csv_text: str) -> Dataset:
    """Parse `group,value` CSV into per-group summaries.

    A group with a single observation parses fine (its sd is NaN); any
    later inference on it fails because n < 2.
    """
    rows = _read_rows(csv_text, RAW_HEADER)
    by_group: dict[str, list[float]] = {}
    for line_no, row in rows:
        group = row["group"].strip()
        if not group:
            raise InputError(f"line {line_no}: empty group label")
        obs = Observation(group=group, value=_parse_float(row["value"], line_no, "value"))
        by_group.setdefault(obs.group, []).append(obs.value)
    if not by_group:
        raise InputError("no observations found after the header")
    groups = []
    for label, vals in by_group.items():
        if len(vals) == 1:
            groups.append(SummaryStats(label=label, n=1, mean=vals[0], sd=math.nan))
        else:
            groups.append(summarize(vals, label=label))
    return Dataset(groups=tuple(groups), provenance="raw")


def parse_summaries(csv_text: str) -> Dataset:
    """Parse `group,n,mean,sd` CSV of published group summaries."""
    rows = _read_rows(csv_text, SUMMARY_HEADER)
    groups: list[SummaryStats] = []
    seen: set[str] = set()
    for line_no, row in rows:
        label = row["group"].strip()
        if not label:
            raise InputError(f"line {line_no}: empty group label")
        if label in seen:
            raise InputError(f"line {line_no}: duplicate group {label!r}")
        seen.add(label)
        n = _parse_int(row["n"], line_no, "n")
        if n < 2:
            raise InputError(f"line {line_no}: n must be at least 2, got {n}")
        mean = _parse_float(row["mean"], line_no, "mean")
        sd = _parse_float(row["sd"], line_no, "sd")
        if sd < 0:
            raise InputError(f"line {line_no}: sd must be nonnegative, got {sd}")
        groups.append(SummaryStats(label=label, n=n, mean=mean, sd=sd))
    if not groups:
        raise InputError("no summary rows found after the header")
    return Dataset(groups=tuple(groups), provenance="summary")


def parse_dataset(csv_text: str) -> Dataset:
    """Parse either CSV shape, deciding by the header row."""
    header = _peek_header(csv_text)
    if header == list(RAW_HEADER):
        return parse_observations(csv_text)
    if header == list(SUMMARY_HEADER):
        return parse_summaries(csv_text)
    raise InputError(
        f"line 1: unrecognized header {','.join(header)!r}; expected "
        f"{','.join(RAW_HEADER)!r} or {','.join(SUMMARY_HEADER)!r}"
    )


def replicate(dataset: Dataset, k: int) -> Dataset:
    """Act as if the whole dataset had been observed k times over.

    Means are unchanged, each group's n becomes k*n, and its sd shrinks by
    sqrt(k*(n-1)/(k*n-1)) -- exactly what recomputing the sample sd over k
    concatenated copies gives.
    """
    if int(k) != k or k < 1:
        raise InputError(f"replication count must be a positive integer, got {k}")
    k = int(k)
    groups = tuple(
        SummaryStats(
            label=g.label,
            n=g.n * k,
            mean=g.mean,
            sd=g.sd * math.sqrt(k * (g.n - 1) / (k * g.n - 1)),
        )
        for g in dataset.groups
    )
    return Dataset(groups=groups, provenance=dataset.provenance)


def bundled_dataset(name: str = "happiness") -> Dataset:
    """Packaged example data.

    "happiness": three-country summary statistics (n=10 per group),
    back-solved from the published 95% intervals. "happiness-x40": the
    same data replicated 40-fold (n=400 per group).
    """
    try:
        fname = _BUNDLED_FILES[name]
    except KeyError:
        raise InputError(
            f"unknown bundled dataset {name!r}; choose from {sorted(_BUNDLED_FILES)}"
        ) from None
    text = resources.files(__package__).joinpath("data").joinpath(fname).read_text("utf-8")
    return parse_summaries(text)


def _peek_header(csv_text: str) -> list[str]:
    reader = csv.reader(io.StringIO(csv_text.lstrip("﻿")))
    for row in reader:
        if row:
            return [cell.strip().lower() for cell in row]
        break
    raise InputError("line 1: missing header row")


def _read_rows(csv_text: str, expected_header: tuple[str, ...]):
    """Yield (line_no, field dict) rows, enforcing the header contract."""
    reader = csv.reader(io.StringIO(csv_text.lstrip("﻿")))
    rows = []
    header_seen = False
    for line_no, row in enumerate(reader, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue  # blank line
        if not header_seen:
            got = [cell.strip().lower() for cell in row]
            if got != list(expected_header):
                raise InputError(
                    f"line {line_no}: expected header {','.join(expected_header)!r}, "
                    f"got {','.join(got)!r}"
                )
            header_seen = True
            continue
        if len(row) != len(expected_header):
            raise InputError(
                f"line {line_no}: expected {len(expected_header)} fields, got {len(row)}"
            )
        rows.append((line_no, dict(zip(expected_header, row))))
    if not header_seen:
        raise InputError("line 1: missing header row")
    return rows


def _parse_float(text: str, line_no: int, field: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise InputError(f"line {line_no}: non-numeric {field} {text.strip()!r}") from None
    if not math.isfinite(value):
        raise InputError(f"line {line_no}: {field} must be finite, got {text.strip()!r}")
    return value


def _parse_int(text: str, line_no: int, field: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise InputError(f"line {line_no}: {field} must be an integer, got {text.strip()!r}") from None
