"""Result dictionaries shared by the CLI and the HTTP service.

Both surfaces render these structures verbatim (the service adds a
``schema_version`` envelope field, the CLI either dumps them as JSON or
formats them for humans), so for identical inputs the two are numerically
identical by construction. All numbers are plain Python floats at full
precision; rounding happens only in human-readable CLI text.
"""

from __future__ import annotations

from typing import Any, Optional, Sequence

from . import polling, simulation
from .criteria import (
    CriterionResult,
    Prior,
    WelfareMatrix,
    bayes_rank,
    maximin_rank,
    minimax_regret_rank,
    mmr_point_prediction,
)
from .errors import ValidationError
from .formats import assumption_to_obj
from .identification import (
    Assumption,
    ObservedStratum,
    OutcomeScale,
    denormalize,
    region_for,
    sweep_bounded_variation,
)
from .treatment import (
    TreatmentProblem,
    arm_dominance,
    arm_region,
    maximin_treatment_choice,
    mmr_treatment_choice,
    problem_state_space,
)


def region_result(
    mean: Optional[float],
    rate: float,
    assumption: Assumption,
    scale: Optional[OutcomeScale] = None,
    label: str = "stratum",
) -> dict[str, Any]:
    """Identification region plus its point prediction for one stratum."""
    stratum = ObservedStratum(label, mean, rate)
    region = region_for(stratum, assumption)
    predictor, max_regret = mmr_point_prediction(region.region)
    out: dict[str, Any] = {
        "assumption": assumption_to_obj(assumption),
        "lo": region.region.lo,
        "hi": region.region.hi,
        "width": region.region.width,
        "mmr_predictor": predictor,
        "max_regret": max_regret,
    }
    if scale is not None:
        out["scaled"] = {
            "lo": denormalize(region.region.lo, scale),
            "hi": denormalize(region.region.hi, scale),
            "width": region.region.width * (scale.hi - scale.lo),
        }
    return out


def _criterion_obj(result: CriterionResult, labels: Sequence[str]) -> dict[str, Any]:
    return {
        "criterion": result.criterion,
        "scores": [float(s) for s in result.scores],
        "optimal_set": list(result.optimal_set),
        "chosen": result.chosen,
        "chosen_label": labels[result.chosen],
    }


def decide_result(
    action_labels: Sequence[str],
    state_labels: Sequence[str],
    welfare: Sequence[Sequence[float]],
    criterion: str,
    prior_weights: Optional[Sequence[float]] = None,
) -> dict[str, Any]:
    """Rank a welfare matrix under one criterion."""
    matrix = WelfareMatrix(tuple(action_labels), tuple(state_labels), welfare)
    if criterion == "bayes":
        if prior_weights is None:
            raise ValidationError("criterion 'bayes' requires a prior")
        result = bayes_rank(matrix, Prior(prior_weights))
    elif criterion == "maximin":
        result = maximin_rank(matrix)
    elif criterion == "minimax_regret":
        result = minimax_regret_rank(matrix)
    else:
        raise ValidationError(
            f"criterion must be bayes, maximin or minimax_regret, got {criterion!r}"
        )
    return _criterion_obj(result, matrix.action_labels)


def treatment_result(problem: TreatmentProblem) -> dict[str, Any]:
    """Per-arm regions, both criteria, and dominance for a treatment problem."""
    space = problem_state_space(problem)
    arms = []
    for arm in problem.arms:
        region = arm_region(arm).region
        arms.append(
            {
                "label": arm.label,
                "share": arm.share,
                "assumption": assumption_to_obj(arm.assumption),
                "lo": region.lo,
                "hi": region.hi,
                "width": region.width,
            }
        )
    labels = space.arm_labels
    return {
        "stratum_label": problem.stratum_label,
        "arms": arms,
        "minimax_regret": _criterion_obj(mmr_treatment_choice(space), labels),
        "maximin": _criterion_obj(maximin_treatment_choice(space), labels),
        "dominance": [
            {"dominated": labels[b], "dominator": labels[a]}
            for b, a in arm_dominance(space)
        ],
    }


def sweep_result(
    mean: Optional[float],
    rate: float,
    deltas: Sequence[tuple[float, float]],
    label: str = "stratum",
) -> dict[str, Any]:
    """Bounded-variation sweep rows for one stratum."""
    stratum = ObservedStratum(label, mean, rate)
    entries = [
        polling.SweepEntry(d0, d1, reg.region if reg is not None else None)
        for (d0, d1), reg in sweep_bounded_variation(stratum, list(deltas))
    ]
    return {"rows": polling.sweep_rows(entries)}


def poll_audit_result(
    summaries: Sequence[polling.PollSummary],
    assumptions: Sequence[Assumption],
    deltas: Optional[Sequence[tuple[float, float]]] = None,
) -> dict[str, Any]:
    """Audit reports for a batch of polls."""
    reports = []
    for summary in summaries:
        report = polling.audit_poll(summary, assumptions, sweep=deltas)
        outcomes = []
        for outcome in report.outcomes:
            entry: dict[str, Any] = {
                "assumption": assumption_to_obj(outcome.assumption),
                "feasible": outcome.region is not None,
            }
            if outcome.region is not None:
                entry.update(
                    {
                        "lo": outcome.region.region.lo,
                        "hi": outcome.region.region.hi,
                        "width": outcome.region.region.width,
                        "mmr_predictor": outcome.mmr_predictor,
                        "max_regret": outcome.max_regret,
                    }
                )
            else:
                entry["error"] = outcome.error
            outcomes.append(entry)
        item: dict[str, Any] = {
            "poll_id": summary.poll_id,
            "candidate": summary.candidate_label,
            "respondent_share": summary.respondent_share,
            "response_rate": summary.response_rate,
            "as_of": summary.as_of,
            "mar_point": report.mar_point,
            "outcomes": outcomes,
        }
        if deltas is not None:
            item["sweep"] = polling.emit_sweep_table(report)
        reports.append(item)
    return {"reports": reports}


def simulate_result(config: simulation.SimConfig) -> dict[str, Any]:
    """Run a study and return its rows plus the ground truth."""
    report = simulation.run_study(config)
    return {"true_mean": report.true_mean, "rows": simulation.report_rows(report)}
