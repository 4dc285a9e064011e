"""Acceptance suite: one test per release criterion, at stated tolerances.

Run with ``pytest tests/test_acceptance.py -s`` to see one pass line per
criterion (a failed criterion fails its test). This suite exercises the
public surfaces only and is independent of the unit tests.
"""

import json

import numpy as np
import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient
from scipy import integrate, stats

from ambit import (
    Agnostic,
    Interval,
    MAR,
    ObservedStratum,
    Prior,
    RectangularStateSpace,
    TreatmentArm,
    WelfareMatrix,
    agnostic_region,
    arm_region,
    bayes_rank,
    bounded_variation_region,
    discretize_interval_states,
    mar_point,
    maximin_rank,
    maximin_treatment_choice,
    minimax_regret_rank,
    mmr_point_prediction,
    mmr_treatment_choice,
    outward_round,
    region_width,
)
from ambit.cli import main as cli_main
from ambit.gridkernels import rect_grid_criteria
from ambit.service import create_app
from ambit.simulation import (
    MCAR,
    LatentIndex,
    OutcomeModel,
    ReservationThreshold,
    SimConfig,
    population_stratum,
    run_study,
)
from ambit.identification import OutcomeScale

from fixtures import DISAGREE_PROBLEM, PAPER_POLL_ROW, PAPER_REGION_REQUEST
from oracles import (
    brute_bayes,
    brute_max_regret,
    brute_maximin,
    brute_optimal_set,
    mmr_prediction_grid,
)

ATOL = 1e-12


def _pass(name: str) -> None:
    print(f"\n[PASS] {name}")


def test_polling_reproduction():
    stratum = ObservedStratum("poll", 0.544, 0.014)
    region = agnostic_region(stratum).region
    assert region.lo == pytest.approx(0.007616, abs=ATOL)
    assert region.hi == pytest.approx(0.993616, abs=ATOL)
    assert outward_round(region, 3) == (0.007, 0.994)
    assert mar_point(stratum).region.lo == 0.544
    assert mar_point(stratum).region.hi == 0.544
    _pass("polling reproduction: agnostic [0.007, 0.994], MAR point 0.544")


def test_width_laws():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        stratum = ObservedStratum("s", rng.random(), rng.random())
        width = region_width(agnostic_region(stratum).region)
        assert abs(width - (1.0 - stratum.response_rate)) <= ATOL
    for _ in range(1000):
        share = rng.random()
        arm = TreatmentArm("t", share, rng.random(), Agnostic())
        assert abs(arm_region(arm).region.width - (1.0 - share)) <= ATOL
    _pass("width laws: agnostic width = 1 - p; arm width = untreated share (1e-12)")


def test_assumption_spectrum_limits():
    rng = np.random.default_rng(2025)
    checked = 0
    while checked < 1000:
        stratum = ObservedStratum("s", rng.random(), rng.uniform(1e-9, 1.0))
        mar_like = bounded_variation_region(stratum, 0.0, 0.0).region
        mar_region = mar_point(stratum).region
        assert abs(mar_like.lo - mar_region.lo) <= ATOL
        assert abs(mar_like.hi - mar_region.hi) <= ATOL

        vacuous = bounded_variation_region(stratum, -1.0, 1.0).region
        agnostic = agnostic_region(stratum).region
        assert abs(vacuous.lo - agnostic.lo) <= ATOL
        assert abs(vacuous.hi - agnostic.hi) <= ATOL

        d = np.sort(rng.uniform(-1, 1, 4))
        try:
            inner = bounded_variation_region(stratum, d[1], d[2]).region
            outer = bounded_variation_region(stratum, d[0], d[3]).region
        except Exception:
            continue
        assert inner.issubset(outer, tol=ATOL)
        checked += 1
    _pass("assumption spectrum: delta 0 = MAR, delta (-1,1) = agnostic, nesting holds")


def test_criterion_oracle_equivalence():
    rng = np.random.default_rng(2026)
    for _ in range(1000):
        n_actions = int(rng.integers(1, 7))
        n_states = int(rng.integers(1, 7))
        w = rng.normal(size=(n_actions, n_states))
        mat = WelfareMatrix(
            tuple(f"a{i}" for i in range(n_actions)),
            tuple(f"s{i}" for i in range(n_states)),
            w,
        )
        weights = rng.dirichlet(np.ones(n_states))

        got = bayes_rank(mat, Prior(weights)).optimal_set
        want = brute_optimal_set(brute_bayes(w.tolist(), weights.tolist()), maximize=True)
        assert got == want

        got = maximin_rank(mat).optimal_set
        want = brute_optimal_set(brute_maximin(w.tolist()), maximize=True)
        assert got == want

        got = minimax_regret_rank(mat).optimal_set
        want = brute_optimal_set(brute_max_regret(w.tolist()), maximize=False)
        assert got == want
    _pass("criterion oracle equivalence: 1000 random matrices up to 6x6, exact")


def test_treatment_closed_form_vs_grid():
    rng = np.random.default_rng(2027)
    grid_points = 101
    matrix_checked = 0
    for i in range(500):
        k = int(rng.integers(2, 5))
        bounds = np.sort(rng.random((k, 2)), axis=1)
        regions = [Interval(lo, hi) for lo, hi in bounds]
        space = RectangularStateSpace(
            tuple(f"t{j}" for j in range(k)), tuple(regions)
        )
        grid_mmr, grid_mm = rect_grid_criteria(regions, grid_points)
        assert mmr_treatment_choice(space).optimal_set == grid_mmr.optimal_set
        assert maximin_treatment_choice(space).optimal_set == grid_mm.optimal_set
        # Matrix route, where the state count stays under its cap.
        if k == 2 or (k == 3 and matrix_checked < 10):
            mat = discretize_interval_states(regions, grid_points)
            assert minimax_regret_rank(mat).optimal_set == grid_mmr.optimal_set
            assert maximin_rank(mat).optimal_set == grid_mm.optimal_set
            matrix_checked += k == 3
    _pass(
        "treatment closed forms vs 101-point grid enumeration: 500 problems, "
        "2-4 arms (matrix route cross-checked within its state cap)"
    )


def test_mmr_prediction_grid_oracle():
    rng = np.random.default_rng(2028)
    step = 1e-3
    for _ in range(100):
        lo, hi = np.sort(rng.random(2))
        predictor, max_regret = mmr_point_prediction(Interval(lo, hi))
        o_pred, o_regret = mmr_prediction_grid(lo, hi, points=1001)
        assert abs(predictor - o_pred) <= step + ATOL
        assert abs(max_regret - ((hi - lo) / 2) ** 2) <= ATOL
        assert abs(max_regret - o_regret) <= 2 * step
    _pass("minimax-regret prediction: midpoint and ((hi-lo)/2)^2 vs 1001-point grid")


BETA22 = OutcomeModel("beta", (2, 2), OutcomeScale(0.0, 1.0))


def test_simulation_properties():
    # (a) MCAR(0.5): plug-in bias statistically indistinguishable from 0.
    cfg = SimConfig(BETA22, MCAR(0.5), (100_000,), 200, 91, (MAR(),))
    cell = run_study(cfg).cells[0]
    assert abs(cell.bias_mean) <= 3 * cell.bias_se

    # (b) Reservation threshold at the Beta(2,2) median: bias equals the
    # truncated-mean gap (quadrature oracle) and does not shrink with n.
    dist = stats.beta(2, 2)
    median = dist.ppf(0.5)
    respond = 1 - dist.cdf(median)
    num, _ = integrate.quad(lambda x: x * dist.pdf(x), median, 1.0)
    oracle_gap = num / respond - dist.mean()

    cfg = SimConfig(
        BETA22,
        ReservationThreshold(float(median)),
        (10_000, 100_000, 1_000_000),
        200,
        92,
        (MAR(),),
    )
    report = run_study(cfg)
    for cell in report.cells:
        assert cell.bias_mean == pytest.approx(oracle_gap, abs=3 * cell.bias_se + 1e-9)
        assert cell.bias_mean > oracle_gap / 2  # bounded away from zero

    # (c) Population-exact agnostic regions cover the truth, always.
    rng = np.random.default_rng(93)
    covered = 0
    total = 100
    for _ in range(total):
        mech_kind = int(rng.integers(0, 3))
        if mech_kind == 0:
            mech = MCAR(float(rng.uniform(0.05, 0.95)))
        elif mech_kind == 1:
            mech = ReservationThreshold(float(rng.uniform(0.05, 0.95)))
        else:
            mech = LatentIndex(
                float(rng.uniform(-0.95, 0.95)), float(rng.uniform(0.05, 0.95))
            )
        outcome = OutcomeModel(
            "beta", (float(rng.uniform(0.5, 4)), float(rng.uniform(0.5, 4))),
            OutcomeScale(0.0, 1.0),
        )
        stratum = population_stratum(outcome, mech)
        region = agnostic_region(stratum).region
        if region.lo - 1e-9 <= outcome.mean() <= region.hi + 1e-9:
            covered += 1
    assert covered == total
    _pass(
        "simulation: MCAR bias ~ 0 (3 sigma); MNAR bias = quadrature gap at "
        "n = 1e4..1e6 (3 sigma, non-vanishing); population-exact coverage 100%"
    )


def test_cli_service_parity(tmp_path):
    runner = CliRunner()
    client = TestClient(create_app())

    # bounds <-> /v1/region
    cli_out = runner.invoke(
        cli_main,
        ["bounds", "--mean", "0.544", "--rate", "0.014", "--assumption", "agnostic", "--json"],
    )
    assert cli_out.exit_code == 0
    service_out = client.post("/v1/region", json=PAPER_REGION_REQUEST).json()
    service_out.pop("schema_version")
    assert json.loads(cli_out.output) == service_out

    # treat <-> /v1/treatment
    path = tmp_path / "problem.json"
    path.write_text(json.dumps(DISAGREE_PROBLEM))
    cli_out = runner.invoke(cli_main, ["treat", str(path), "--json"])
    assert cli_out.exit_code == 0
    service_out = client.post("/v1/treatment", json=DISAGREE_PROBLEM).json()
    service_out.pop("schema_version")
    assert json.loads(cli_out.output) == service_out

    # poll <-> /v1/poll-audit
    csv_path = tmp_path / "polls.csv"
    csv_path.write_text(
        "poll_id,candidate,respondent_share,response_rate,as_of\n"
        f"{PAPER_POLL_ROW['poll_id']},{PAPER_POLL_ROW['candidate']},"
        f"{PAPER_POLL_ROW['respondent_share']},{PAPER_POLL_ROW['response_rate']},"
        f"{PAPER_POLL_ROW['as_of']}\n"
    )
    cli_out = runner.invoke(
        cli_main,
        ["poll", str(csv_path), "--assumption", "agnostic", "--assumption", "mar", "--json"],
    )
    assert cli_out.exit_code == 0
    service_out = client.post(
        "/v1/poll-audit",
        json={
            "polls": [PAPER_POLL_ROW],
            "assumptions": [{"type": "agnostic"}, {"type": "mar"}],
        },
    ).json()
    service_out.pop("schema_version")
    assert json.loads(cli_out.output) == service_out
    _pass("CLI/service parity: bounds, treat, poll match their /v1 endpoints exactly")
