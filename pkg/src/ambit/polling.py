"""Election-poll audits: what does a poll actually pin down?

A poll summary is a respondent support share and a response rate; support is
a binary indicator, so the outcome scale is already [0, 1] and no
normalization is needed. The audit reports the identification region for the
candidate's population support under each requested assumption, the
minimax-regret point prediction for each region, and an optional sensitivity
sweep over bounded-variation strengths. With the response rates typical of
modern polls the agnostic region is nearly the whole unit interval, which is
the point: tight point predictions are purchased entirely by assumptions.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Optional, Sequence

from .criteria import mmr_point_prediction
from .errors import AssumptionError, UndefinedMARError, ValidationError
from .identification import (
    Assumption,
    IdentificationRegion,
    Interval,
    ObservedStratum,
    mar_point,
    region_for,
    sweep_bounded_variation,
)

#: Columns of the poll input CSV, in order.
POLL_COLUMNS = ("poll_id", "candidate", "respondent_share", "response_rate", "as_of")

#: Columns of the sweep output CSV, in order.
SWEEP_COLUMNS = (
    "delta0",
    "delta1",
    "lo",
    "hi",
    "width",
    "mmr_predictor",
    "max_regret",
    "feasible",
)


@dataclass(frozen=True)
class PollSummary:
    """One candidate's numbers from one poll."""

    poll_id: str
    candidate_label: str
    respondent_share: float
    response_rate: float
    as_of: str

    def __post_init__(self) -> None:
        for name in ("respondent_share", "response_rate"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                hint = ""
                if 1.0 < v <= 100.0:
                    hint = (
                        "; percentages must be given as decimals "
                        "(divide by 100)"
                    )
                raise ValidationError(
                    f"{name} must lie in [0, 1], got {v!r}{hint}"
                )

    def stratum(self) -> ObservedStratum:
        label = f"{self.poll_id}:{self.candidate_label}"
        mean = self.respondent_share if self.response_rate > 0 else None
        return ObservedStratum(label, mean, self.response_rate)


@dataclass(frozen=True)
class AssumptionOutcome:
    """One assumption's region and its point prediction, or why it failed."""

    assumption: Assumption
    region: Optional[IdentificationRegion]
    mmr_predictor: Optional[float]
    max_regret: Optional[float]
    error: Optional[str]


@dataclass(frozen=True)
class SweepEntry:
    """One delta pair of the sensitivity sweep; infeasible entries keep
    their place in the table."""

    delta0: float
    delta1: float
    region: Optional[Interval]


@dataclass(frozen=True)
class PollReport:
    summary: PollSummary
    outcomes: tuple[AssumptionOutcome, ...]
    mar_point: Optional[float]
    sweep: tuple[SweepEntry, ...]


def audit_poll(
    summary: PollSummary,
    assumptions: Sequence[Assumption],
    sweep: Optional[Sequence[tuple[float, float]]] = None,
) -> PollReport:
    """Regions, point predictions, and an optional delta sweep for one poll.

    Assumptions that cannot be applied (infeasible bounded variation, MAR
    with no respondents) are marked in the report instead of aborting it.
    """
    stratum = summary.stratum()
    outcomes = []
    for assumption in assumptions:
        try:
            region = region_for(stratum, assumption)
            predictor, regret = mmr_point_prediction(region.region)
            outcomes.append(
                AssumptionOutcome(assumption, region, predictor, regret, None)
            )
        except AssumptionError as exc:
            outcomes.append(AssumptionOutcome(assumption, None, None, None, str(exc)))
    try:
        mar_value: Optional[float] = mar_point(stratum).region.lo
    except UndefinedMARError:
        mar_value = None
    entries: list[SweepEntry] = []
    if sweep is not None:
        for (d0, d1), region in sweep_bounded_variation(stratum, list(sweep)):
            entries.append(
                SweepEntry(d0, d1, region.region if region is not None else None)
            )
    return PollReport(summary, tuple(outcomes), mar_value, tuple(entries))


def emit_sweep_table(report: PollReport) -> list[dict[str, Any]]:
    """Sweep rows in input order, one dict per delta pair.

    Keys follow ``SWEEP_COLUMNS``; infeasible rows carry ``None`` endpoints
    and ``feasible = False``.
    """
    if not report.sweep:
        raise ValidationError("report contains no sweep")
    return sweep_rows(report.sweep)


def sweep_rows(entries: Sequence[SweepEntry]) -> list[dict[str, Any]]:
    rows: list[dict[str, Any]] = []
    for entry in entries:
        if entry.region is None:
            rows.append(
                {
                    "delta0": entry.delta0,
                    "delta1": entry.delta1,
                    "lo": None,
                    "hi": None,
                    "width": None,
                    "mmr_predictor": None,
                    "max_regret": None,
                    "feasible": False,
                }
            )
            continue
        predictor, regret = mmr_point_prediction(entry.region)
        rows.append(
            {
                "delta0": entry.delta0,
                "delta1": entry.delta1,
                "lo": entry.region.lo,
                "hi": entry.region.hi,
                "width": entry.region.width,
                "mmr_predictor": predictor,
                "max_regret": regret,
                "feasible": True,
            }
        )
    return rows


def _parse_row(row: Mapping[str, Any], index: int) -> PollSummary:
    for field in POLL_COLUMNS:
        if field not in row:
            raise ValidationError(f"row {index}: field {field!r}: missing")
        if field != "as_of" and row[field] in (None, ""):
            # as_of is informational and may be blank.
            raise ValidationError(f"row {index}: field {field!r}: missing value")
    try:
        share = float(row["respondent_share"])
    except (TypeError, ValueError) as exc:
        raise ValidationError(
            f"row {index}: field 'respondent_share': not a number: "
            f"{row['respondent_share']!r}"
        ) from exc
    try:
        rate = float(row["response_rate"])
    except (TypeError, ValueError) as exc:
        raise ValidationError(
            f"row {index}: field 'response_rate': not a number: "
            f"{row['response_rate']!r}"
        ) from exc
    try:
        return PollSummary(
            str(row["poll_id"]), str(row["candidate"]), share, rate, str(row["as_of"])
        )
    except ValidationError as exc:
        raise ValidationError(f"row {index}: {exc}") from exc


def load_polls(rows: Iterable[Mapping[str, Any]]) -> list[PollSummary]:
    """Validate structured rows (CSV dicts or JSON objects) into summaries.

    Row numbers (1-based, excluding the header) are attached to every error.
    An empty input yields an empty list.
    """
    out = []
    for index, row in enumerate(rows, start=1):
        unknown = set(row) - set(POLL_COLUMNS)
        if unknown:
            raise ValidationError(f"row {index}: unknown fields {sorted(unknown)}")
        out.append(_parse_row(row, index))
    return out


def read_polls_csv(path: str) -> list[PollSummary]:
    """Read the documented CSV format (header required)."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return []
        missing = set(POLL_COLUMNS) - set(reader.fieldnames)
        if missing:
            raise ValidationError(f"CSV header is missing columns {sorted(missing)}")
        return load_polls(reader)


def read_polls_json(path: str) -> list[PollSummary]:
    """Read the JSON mirror: an array of objects with the CSV field names."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise ValidationError("poll JSON must be an array of objects")
    return load_polls(data)
