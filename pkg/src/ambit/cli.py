"""Command-line front end.

Subcommands: ``bounds``, ``treat``, ``poll``, ``sweep``, ``simulate``,
``serve``. Exit codes: 0 success, 2 validation error (bad flags, bad files,
out-of-range values), 3 assumption that cannot be applied (infeasible
bounded variation, MAR with no respondents).

Human-readable output rounds at 6 decimals; ``--json`` emits the exact
structures the HTTP service serves, at full precision.
"""

from __future__ import annotations

import csv
import json
import os
import sys
from typing import Any, Optional, Sequence

import click

from . import polling, results, simulation
from .errors import AssumptionError, ValidationError
from .formats import (
    assumption_from_obj,
    assumption_from_token,
    assumption_to_token,
    treatment_problem_from_obj,
)
from .identification import Interval, OutcomeScale, outward_round

EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3


def _fmt(x: float) -> str:
    """Six-decimal presentation with trailing zeros stripped."""
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return s if s not in ("", "-0") else "0"


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ValidationError as exc:
        _fail(str(exc), EXIT_VALIDATION)
    except AssumptionError as exc:
        _fail(str(exc), EXIT_INFEASIBLE)


def _parse_scale(text: Optional[str]) -> Optional[OutcomeScale]:
    if text is None:
        return None
    parts = text.split(":")
    if len(parts) != 2:
        raise ValidationError(f"scale {text!r}: expected LO:HI")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise ValidationError(f"scale {text!r}: could not parse numbers") from exc
    return OutcomeScale(lo, hi)


def _parse_delta_grid(text: str) -> list[float]:
    """Either START:STOP:STEP (inclusive) or a comma-separated list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValidationError(f"deltas {text!r}: expected START:STOP:STEP")
        try:
            start, stop, step = (float(p) for p in parts)
        except ValueError as exc:
            raise ValidationError(f"deltas {text!r}: could not parse numbers") from exc
        if step <= 0 or stop < start:
            raise ValidationError(f"deltas {text!r}: need STEP > 0 and STOP >= START")
        count = int(round((stop - start) / step)) + 1
        return [round(start + i * step, 12) for i in range(count)]
    try:
        return [float(p) for p in text.split(",") if p.strip() != ""]
    except ValueError as exc:
        raise ValidationError(f"deltas {text!r}: could not parse numbers") from exc


def _parse_delta_pairs(text: str) -> list[tuple[float, float]]:
    pairs = []
    for item in text.split(","):
        parts = item.split(":")
        if len(parts) != 2:
            raise ValidationError(f"pairs {text!r}: each entry must be D0:D1")
        try:
            pairs.append((float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise ValidationError(f"pairs {text!r}: could not parse numbers") from exc
    if not pairs:
        raise ValidationError("pairs: at least one D0:D1 entry required")
    return pairs


def _delta_pairs(grid: Sequence[float], symmetric: bool) -> list[tuple[float, float]]:
    # Symmetric pairs bound the respondent/nonrespondent gap both ways;
    # one-sided pairs assume respondents are the more favorable group.
    if symmetric:
        return [(-d, d) for d in grid]
    return [(0.0, d) for d in grid]


def _write_rows(rows: list[dict[str, Any]], columns: Sequence[str], out: str) -> None:
    def cell(v: Any) -> str:
        if v is None:
            return ""
        if isinstance(v, bool):
            return "true" if v else "false"
        return repr(v) if isinstance(v, float) else str(v)

    fh = sys.stdout if out == "-" else open(out, "w", newline="")
    try:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([cell(row[c]) for c in columns])
    finally:
        if fh is not sys.stdout:
            fh.close()


@click.group()
def main() -> None:
    """Identification regions and treatment choice under ambiguity."""


@main.command()
@click.option("--mean", type=float, default=None, help="Observed (respondent) mean in [0, 1].")
@click.option("--rate", type=float, required=True, help="Response rate in [0, 1].")
@click.option(
    "--assumption",
    "assumption_token",
    default="agnostic",
    show_default=True,
    help="agnostic | mar | bv:D0,D1 | gamma:LO,HI",
)
@click.option("--scale", "scale_text", default=None, help="Original units LO:HI for output.")
@click.option("--json", "as_json", is_flag=True, help="Emit full-precision JSON.")
def bounds(mean, rate, assumption_token, scale_text, as_json) -> None:
    """Identification region for one stratum mean."""

    def run():
        assumption = assumption_from_token(assumption_token)
        scale = _parse_scale(scale_text)
        return results.region_result(mean, rate, assumption, scale)

    result = _guard(run)
    if as_json:
        click.echo(json.dumps(result))
        return
    block = result.get("scaled", result)
    click.echo(
        f"[{_fmt(block['lo'])}, {_fmt(block['hi'])}] width {_fmt(block['width'])}"
    )


@main.command()
@click.argument("problem_file", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--criterion",
    type=click.Choice(["minimax_regret", "maximin", "both"]),
    default="both",
    show_default=True,
)
@click.option("--json", "as_json", is_flag=True, help="Emit full-precision JSON.")
def treat(problem_file, criterion, as_json) -> None:
    """Per-arm regions, regret table, and the chosen arm."""

    def run():
        with open(problem_file) as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{problem_file}: invalid JSON: {exc}") from exc
        return results.treatment_result(treatment_problem_from_obj(obj))

    result = _guard(run)
    if as_json:
        click.echo(json.dumps(result))
        return
    click.echo(f"stratum: {result['stratum_label']}")
    for arm in result["arms"]:
        click.echo(
            f"  arm {arm['label']}: share {_fmt(arm['share'])}  region "
            f"[{_fmt(arm['lo'])}, {_fmt(arm['hi'])}]  width {_fmt(arm['width'])}"
        )
    for pair in result["dominance"]:
        click.echo(f"  dominated: {pair['dominated']} (by {pair['dominator']})")
    labels = [arm["label"] for arm in result["arms"]]
    wanted = ["minimax_regret", "maximin"] if criterion == "both" else [criterion]
    for name in wanted:
        block = result[name]
        scores = "  ".join(
            f"{label}={_fmt(s)}" for label, s in zip(labels, block["scores"])
        )
        optimal = "{" + ", ".join(labels[i] for i in block["optimal_set"]) + "}"
        click.echo(
            f"{name}: {scores}  optimal {optimal}  chosen {block['chosen_label']}"
        )


@main.command()
@click.argument("poll_file", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--assumption",
    "assumption_tokens",
    multiple=True,
    default=("agnostic", "mar"),
    show_default=True,
    help="Repeatable: agnostic | mar | bv:D0,D1 | gamma:LO,HI",
)
@click.option("--json", "as_json", is_flag=True, help="Emit full-precision JSON.")
def poll(poll_file, assumption_tokens, as_json) -> None:
    """Audit polls from a CSV (or JSON) summary file."""

    def run():
        if poll_file.endswith(".json"):
            summaries = polling.read_polls_json(poll_file)
        else:
            summaries = polling.read_polls_csv(poll_file)
        assumptions = [assumption_from_token(t) for t in assumption_tokens]
        return results.poll_audit_result(summaries, assumptions)

    result = _guard(run)
    if as_json:
        click.echo(json.dumps(result))
        return
    for report in result["reports"]:
        click.echo(
            f"poll {report['poll_id']}  candidate {report['candidate']}  "
            f"(as of {report['as_of']})"
        )
        click.echo(
            f"  respondent share {_fmt(report['respondent_share'])}, "
            f"response rate {_fmt(report['response_rate'])}"
        )
        if report["mar_point"] is not None:
            click.echo(f"  mar point: {_fmt(report['mar_point'])}")
        for outcome in report["outcomes"]:
            token = assumption_to_token(assumption_from_obj(outcome["assumption"]))
            if not outcome["feasible"]:
                click.echo(f"  {token}: infeasible ({outcome['error']})")
                continue
            rounded = outward_round(Interval(outcome["lo"], outcome["hi"]))
            click.echo(
                f"  {token}: [{rounded[0]:.3f}, {rounded[1]:.3f}]  "
                f"(exact [{_fmt(outcome['lo'])}, {_fmt(outcome['hi'])}], "
                f"width {_fmt(outcome['width'])})  "
                f"mmr predictor {_fmt(outcome['mmr_predictor'])}  "
                f"max regret {_fmt(outcome['max_regret'])}"
            )


@main.command()
@click.option("--mean", type=float, default=None, help="Observed (respondent) mean in [0, 1].")
@click.option("--rate", type=float, required=True, help="Response rate in [0, 1].")
@click.option("--deltas", default=None, help="Grid: START:STOP:STEP or D1,D2,...")
@click.option(
    "--symmetric/--one-sided",
    default=False,
    help="Pairs (-d, d) versus (0, d) for each grid value d.",
)
@click.option("--pairs", default=None, help="Explicit pairs: D0:D1,D0:D1,...")
@click.option("--out", default="-", show_default=True, help="CSV path or - for stdout.")
def sweep(mean, rate, deltas, symmetric, pairs, out) -> None:
    """Sensitivity sweep over bounded-variation strengths, as CSV."""

    def run():
        if (deltas is None) == (pairs is None):
            raise ValidationError("give exactly one of --deltas or --pairs")
        if deltas is not None:
            delta_pairs = _delta_pairs(_parse_delta_grid(deltas), symmetric)
        else:
            delta_pairs = _parse_delta_pairs(pairs)
        return results.sweep_result(mean, rate, delta_pairs)

    result = _guard(run)
    _write_rows(result["rows"], polling.SWEEP_COLUMNS, out)


@main.command()
@click.option(
    "--config",
    "config_file",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Study config JSON.",
)
@click.option("--out", default=None, help="Also write the report CSV here.")
@click.option("--json", "as_json", is_flag=True, help="Emit full-precision JSON.")
def simulate(config_file, out, as_json) -> None:
    """Run a missingness Monte Carlo study."""

    def run():
        config = simulation.read_sim_config(config_file)
        report = simulation.run_study(config)
        return report

    report = _guard(run)
    rows = simulation.report_rows(report)
    if out is not None:
        _write_rows(rows, simulation.REPORT_COLUMNS, out)
    if as_json:
        click.echo(json.dumps({"true_mean": report.true_mean, "rows": rows}))
    else:
        click.echo(simulation.report_text(report))


@main.command()
@click.option(
    "--port",
    type=int,
    default=lambda: int(os.environ.get("AMBIT_PORT", "8080")),
    help="Port to listen on [env AMBIT_PORT, default 8080].",
)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port, host) -> None:
    """Run the JSON-over-HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
