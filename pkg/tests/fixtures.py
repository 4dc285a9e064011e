"""Canonical input fixtures shared by CLI, service, and acceptance tests."""

# Two-arm problem whose regions work out to a ~ [0.2, 0.9], b ~ [0.4, 0.5]:
# minimax regret picks a (max regrets 0.3 vs 0.5), maximin picks b (0.4 > 0.2).
DISAGREE_PROBLEM = {
    "stratum_label": "fixture",
    "arms": [
        {
            "label": "a",
            "share": 0.2,
            "observed_mean": 0.6,
            "assumption": {"type": "restriction_set", "gamma": {"lo": 0.1, "hi": 0.975}},
        },
        {
            "label": "b",
            "share": 0.8,
            "observed_mean": 0.45,
            "assumption": {"type": "restriction_set", "gamma": {"lo": 0.2, "hi": 0.7}},
        },
    ],
}

# The polling fixture: 54.4% respondent support at a 1.4% response rate.
PAPER_POLL_ROW = {
    "poll_id": "2024-05",
    "candidate": "rep",
    "respondent_share": 0.544,
    "response_rate": 0.014,
    "as_of": "2024-05-15",
}

PAPER_REGION_REQUEST = {
    "mean": 0.544,
    "rate": 0.014,
    "assumption": {"type": "agnostic"},
}
