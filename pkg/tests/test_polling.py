import json

import numpy as np
import pytest

from ambit import Agnostic, BoundedVariation, MAR, ValidationError
from ambit.polling import (
    PollSummary,
    audit_poll,
    emit_sweep_table,
    load_polls,
    read_polls_csv,
    read_polls_json,
)

ATOL = 1e-12

PAPER_POLL = PollSummary("2024-05", "rep", 0.544, 0.014, "2024-05-15")


def test_audit_reproduces_paper_numbers():
    report = audit_poll(PAPER_POLL, [Agnostic(), MAR()])
    agnostic, mar = report.outcomes

    region = agnostic.region.region
    assert region.lo == pytest.approx(0.007616, abs=0.001)
    assert region.hi == pytest.approx(0.993616, abs=0.001)
    assert agnostic.mmr_predictor == pytest.approx(0.500616, abs=ATOL)
    assert agnostic.max_regret == pytest.approx(0.243049, abs=1e-4)

    assert mar.region.region.lo == pytest.approx(0.544, abs=ATOL)
    assert mar.max_regret == 0.0
    assert report.mar_point == pytest.approx(0.544, abs=ATOL)


def test_audit_full_response_is_point():
    report = audit_poll(PollSummary("p", "c", 0.5, 1.0, "d"), [Agnostic(), MAR()])
    for outcome in report.outcomes:
        assert outcome.region.region.lo == 0.5
        assert outcome.region.region.hi == 0.5
        assert outcome.max_regret == 0.0


def test_audit_marks_infeasible_instead_of_aborting():
    report = audit_poll(
        PollSummary("p", "c", 0.05, 0.5, "d"),
        [Agnostic(), BoundedVariation(0.2, 0.3)],
    )
    assert report.outcomes[0].region is not None
    assert report.outcomes[1].region is None
    assert "contradicts" in report.outcomes[1].error


def test_report_coherence():
    rng = np.random.default_rng(101)
    for _ in range(100):
        share, rate = rng.random(), rng.uniform(1e-6, 1.0)
        summary = PollSummary("p", "c", share, rate, "d")
        deltas = [(-d, d) for d in np.linspace(0, 0.5, 6)]
        report = audit_poll(
            summary, [Agnostic(), MAR(), BoundedVariation(-0.2, 0.2)], sweep=deltas
        )
        agnostic = report.outcomes[0].region.region
        for outcome in report.outcomes:
            if outcome.region is not None:
                assert outcome.region.region.issubset(agnostic, tol=ATOL)
        assert agnostic.contains(report.mar_point, tol=ATOL)
        for entry in report.sweep:
            if entry.region is not None and entry.delta0 <= 0 <= entry.delta1:
                assert entry.region.contains(report.mar_point, tol=ATOL)


def test_sweep_table_monotone_width():
    deltas = [(-d, d) for d in np.arange(0, 0.5001, 0.05)]
    report = audit_poll(PAPER_POLL, [], sweep=deltas)
    rows = emit_sweep_table(report)
    assert len(rows) == 11
    widths = [row["width"] for row in rows]
    assert all(w is not None for w in widths)
    assert all(b >= a - ATOL for a, b in zip(widths, widths[1:]))
    assert widths[0] == pytest.approx(0.0, abs=ATOL)


def test_sweep_table_single_pair_and_infeasible():
    report = audit_poll(PAPER_POLL, [], sweep=[(0.0, 0.0)])
    rows = emit_sweep_table(report)
    assert len(rows) == 1
    assert rows[0]["width"] == pytest.approx(0.0, abs=ATOL)
    assert rows[0]["feasible"] is True

    report = audit_poll(
        PollSummary("p", "c", 0.05, 0.5, "d"), [], sweep=[(0.2, 0.3)]
    )
    row = emit_sweep_table(report)[0]
    assert row["feasible"] is False
    assert row["lo"] is None and row["hi"] is None


def test_sweep_table_requires_sweep():
    report = audit_poll(PAPER_POLL, [Agnostic()])
    with pytest.raises(ValidationError):
        emit_sweep_table(report)


def test_load_polls_well_formed(tmp_path):
    path = tmp_path / "polls.csv"
    path.write_text(
        "poll_id,candidate,respondent_share,response_rate,as_of\n"
        "p1,alice,0.544,0.014,2024-05-01\n"
        "p1,bob,0.456,0.014,2024-05-01\n"
        "p2,alice,0.51,0.02,2024-06-01\n"
    )
    polls = read_polls_csv(str(path))
    assert len(polls) == 3
    assert polls[0].candidate_label == "alice"
    assert polls[2].response_rate == 0.02


def test_load_polls_percent_hint():
    rows = [
        {
            "poll_id": "p",
            "candidate": "c",
            "respondent_share": "0.5",
            "response_rate": "1.4",
            "as_of": "d",
        }
    ]
    with pytest.raises(ValidationError, match=r"divide by 100"):
        load_polls(rows)
    try:
        load_polls(rows)
    except ValidationError as exc:
        assert "row 1" in str(exc)
        assert "response_rate" in str(exc)


def test_load_polls_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    assert read_polls_csv(str(path)) == []
    header_only = tmp_path / "header.csv"
    header_only.write_text("poll_id,candidate,respondent_share,response_rate,as_of\n")
    assert read_polls_csv(str(header_only)) == []


def test_load_polls_missing_field(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text(
        "poll_id,candidate,respondent_share,response_rate,as_of\n"
        "p1,alice,,0.014,2024-05-01\n"
    )
    with pytest.raises(ValidationError, match="row 1.*respondent_share"):
        read_polls_csv(str(path))


def test_load_polls_json_mirror(tmp_path):
    path = tmp_path / "polls.json"
    path.write_text(
        json.dumps(
            [
                {
                    "poll_id": "p1",
                    "candidate": "alice",
                    "respondent_share": 0.544,
                    "response_rate": 0.014,
                    "as_of": "2024-05-01",
                }
            ]
        )
    )
    polls = read_polls_json(str(path))
    assert len(polls) == 1
    assert polls[0].respondent_share == 0.544


def test_load_polls_allows_blank_as_of():
    polls = load_polls(
        [
            {
                "poll_id": "p",
                "candidate": "c",
                "respondent_share": 0.5,
                "response_rate": 0.01,
                "as_of": "",
            }
        ]
    )
    assert polls[0].as_of == ""


def test_load_polls_rejects_unknown_fields():
    with pytest.raises(ValidationError, match="unknown"):
        load_polls(
            [
                {
                    "poll_id": "p",
                    "candidate": "c",
                    "respondent_share": 0.5,
                    "response_rate": 0.01,
                    "as_of": "d",
                    "extra": 1,
                }
            ]
        )
