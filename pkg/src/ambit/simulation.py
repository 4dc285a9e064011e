"""Monte Carlo studies of what missing data does to plug-in estimates.

The experiments make one claim executable: when missingness depends on the
outcome itself, the bias of the respondents-only (missing-at-random) point
estimate does not shrink as the sample grows, while set-valued identification
regions keep covering the truth. Three mechanisms are supported:

* ``MCAR``                 -- observe each outcome with a fixed probability,
  independent of everything; the plug-in estimate is consistent.
* ``ReservationThreshold`` -- observe an outcome only when it exceeds a
  threshold (in original units), the classic self-selection story where high
  values are seen and low ones are not.
* ``LatentIndex``          -- observe when a standard-normal index, Gaussian-
  copula-correlated with the outcome, clears the cutoff that produces a
  target response rate.

Determinism ("seeding-v1"): the generator for replication r of sample-size
index i is ``default_rng(SeedSequence(entropy=seed, spawn_key=(i, r)))``, and
each replication draws outcomes first, then mechanism noise. Identical
(config, n, seed) triples therefore produce bit-identical samples within this
implementation; cross-implementation guarantees are statistical only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Mapping, Optional, Union

import numpy as np
from scipy import integrate, stats

from .errors import AssumptionError, ValidationError
from .formats import assumption_from_obj, assumption_to_token
from .identification import (
    Assumption,
    ObservedStratum,
    OutcomeScale,
    region_for,
)

#: Columns of the study report CSV, in order.
REPORT_COLUMNS = (
    "n",
    "assumption",
    "bias_mean",
    "bias_se",
    "lo_mean",
    "hi_mean",
    "coverage",
)


@dataclass(frozen=True)
class OutcomeModel:
    """A bounded outcome law on an original-units scale.

    ``beta`` with shape params (a, b), or ``uniform``; draws are normalized
    to [0, 1], so the scale only matters for mechanisms stated in original
    units.
    """

    law: str
    params: tuple[float, ...]
    scale: OutcomeScale

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if self.law == "beta":
            if len(self.params) != 2 or min(self.params) <= 0:
                raise ValidationError(
                    f"beta law needs two positive shape params, got {self.params}"
                )
        elif self.law == "uniform":
            if self.params:
                raise ValidationError("uniform law takes no params")
        else:
            raise ValidationError(f"unknown outcome law {self.law!r}")

    def _dist(self):
        if self.law == "beta":
            return stats.beta(*self.params)
        return stats.uniform()

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """n normalized draws."""
        if self.law == "beta":
            return rng.beta(self.params[0], self.params[1], size=n)
        return rng.random(n)

    def mean(self) -> float:
        """True normalized mean (the experiment ground truth)."""
        return float(self._dist().mean())

    def cdf(self, x) -> np.ndarray:
        return self._dist().cdf(x)

    def pdf(self, x) -> np.ndarray:
        return self._dist().pdf(x)

    def ppf(self, q) -> np.ndarray:
        return self._dist().ppf(q)


@dataclass(frozen=True)
class MCAR:
    """Observe with fixed probability, independent of the outcome."""

    observe_prob: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.observe_prob <= 1.0:
            raise ValidationError(
                f"observe_prob must lie in [0, 1], got {self.observe_prob!r}"
            )


@dataclass(frozen=True)
class ReservationThreshold:
    """Observe the outcome only when it exceeds the threshold (original units)."""

    threshold: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.threshold):
            raise ValidationError("threshold must be finite")


@dataclass(frozen=True)
class LatentIndex:
    """Observe when a correlated standard-normal index clears a cutoff.

    The index is rho * Phi^-1(F(y)) + sqrt(1 - rho^2) * eps with independent
    standard-normal eps, so it is standard normal marginally; the cutoff
    Phi^-1(1 - target_response_rate) hits the target rate exactly.
    """

    correlation: float
    target_response_rate: float

    def __post_init__(self) -> None:
        if not -1.0 <= self.correlation <= 1.0:
            raise ValidationError(
                f"correlation must lie in [-1, 1], got {self.correlation!r}"
            )
        if not 0.0 < self.target_response_rate < 1.0:
            raise ValidationError(
                f"target_response_rate must lie in (0, 1), got "
                f"{self.target_response_rate!r}"
            )


MissingnessMechanism = Union[MCAR, ReservationThreshold, LatentIndex]


@dataclass(frozen=True)
class SimConfig:
    outcome: OutcomeModel
    mechanism: MissingnessMechanism
    sample_sizes: tuple[int, ...]
    replications: int
    seed: int
    assumptions: tuple[Assumption, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sample_sizes", tuple(int(n) for n in self.sample_sizes))
        object.__setattr__(self, "assumptions", tuple(self.assumptions))
        if self.replications < 1:
            raise ValidationError("replications must be >= 1")
        if not self.sample_sizes:
            raise ValidationError("at least one sample size required")
        if min(self.sample_sizes) < 10:
            raise ValidationError("sample sizes must be >= 10")
        if not self.assumptions:
            raise ValidationError("at least one assumption required")


def generate_sample(
    config: SimConfig,
    n: int,
    seed: Union[int, np.random.SeedSequence],
) -> tuple[np.ndarray, np.ndarray]:
    """Draw n (outcome, observed) pairs.

    Returns (y, z): normalized outcomes and 0/1 observability flags.
    Outcomes are drawn first, mechanism noise second, so identical
    (config, n, seed) yield bit-identical output.
    """
    rng = np.random.default_rng(seed)
    y = config.outcome.sample(rng, n)
    mech = config.mechanism
    if isinstance(mech, MCAR):
        z = rng.random(n) < mech.observe_prob
    elif isinstance(mech, ReservationThreshold):
        scale = config.outcome.scale
        y_orig = scale.lo + y * (scale.hi - scale.lo)
        z = y_orig > mech.threshold
    elif isinstance(mech, LatentIndex):
        rho = mech.correlation
        u = np.clip(config.outcome.cdf(y), 1e-12, 1.0 - 1e-12)
        v = stats.norm.ppf(u)
        eps = rng.standard_normal(n)
        index = rho * v + math.sqrt(max(0.0, 1.0 - rho * rho)) * eps
        cutoff = stats.norm.ppf(1.0 - mech.target_response_rate)
        z = index > cutoff
    else:
        raise ValidationError(f"unknown mechanism: {mech!r}")
    return y, z.astype(np.int8)


def plug_in_stratum(y: np.ndarray, z: np.ndarray, label: str = "sample") -> ObservedStratum:
    """Sample analogue of the observed-stratum pair.

    Observed mean is the mean outcome among z = 1 (absent when there are
    none); the response rate is the observed fraction.
    """
    y = np.asarray(y, dtype=float)
    z = np.asarray(z)
    if y.size == 0 or y.shape != z.shape:
        raise ValidationError("need a nonempty sample with matching y and z")
    observed = z != 0
    rate = float(observed.mean())
    mean = float(y[observed].mean()) if observed.any() else None
    return ObservedStratum(label, mean, rate)


def population_stratum(
    outcome: OutcomeModel, mechanism: MissingnessMechanism, label: str = "population"
) -> ObservedStratum:
    """Exact-population observed stratum implied by the data process.

    Response rate and respondent mean are computed from the outcome law and
    the mechanism (by quadrature where needed), not from draws. This is what
    plug-in estimates converge to.
    """
    if isinstance(mechanism, MCAR):
        p = mechanism.observe_prob
        mean = outcome.mean() if p > 0 else None
        return ObservedStratum(label, mean, p)
    if isinstance(mechanism, ReservationThreshold):
        scale = outcome.scale
        t = (mechanism.threshold - scale.lo) / (scale.hi - scale.lo)
        if t < 0.0:
            return ObservedStratum(label, outcome.mean(), 1.0)
        if t >= 1.0:
            return ObservedStratum(label, None, 0.0)
        p = float(1.0 - outcome.cdf(t))
        if p == 0.0:
            return ObservedStratum(label, None, 0.0)
        num, _ = integrate.quad(lambda x: x * outcome.pdf(x), t, 1.0)
        return ObservedStratum(label, min(num / p, 1.0), p)
    if isinstance(mechanism, LatentIndex):
        rho = mechanism.correlation
        rate = mechanism.target_response_rate
        if rho == 1.0:
            thr = float(outcome.ppf(1.0 - rate))
            num, _ = integrate.quad(lambda x: x * outcome.pdf(x), thr, 1.0)
            return ObservedStratum(label, min(num / rate, 1.0), rate)
        if rho == -1.0:
            thr = float(outcome.ppf(rate))
            num, _ = integrate.quad(lambda x: x * outcome.pdf(x), 0.0, thr)
            return ObservedStratum(label, min(num / rate, 1.0), rate)
        cutoff = stats.norm.ppf(1.0 - rate)
        denom = math.sqrt(1.0 - rho * rho)

        def integrand(x: float) -> float:
            v = stats.norm.ppf(min(max(outcome.cdf(x), 1e-12), 1 - 1e-12))
            return x * stats.norm.sf((cutoff - rho * v) / denom) * outcome.pdf(x)

        num, _ = integrate.quad(integrand, 0.0, 1.0, limit=200)
        return ObservedStratum(label, min(num / rate, 1.0), rate)
    raise ValidationError(f"unknown mechanism: {mechanism!r}")


@dataclass(frozen=True)
class SimCell:
    """Aggregates for one (sample size, assumption) pair."""

    n: int
    assumption: Assumption
    bias_mean: float
    bias_se: float
    lo_mean: Optional[float]
    hi_mean: Optional[float]
    lo_sd: Optional[float]
    hi_sd: Optional[float]
    coverage: float
    feasible_share: float


@dataclass(frozen=True)
class SimReport:
    """Study output: the true mean and one cell per (n, assumption)."""

    true_mean: float
    replications: int
    seed: int
    cells: tuple[SimCell, ...]


def run_study(config: SimConfig) -> SimReport:
    """Replicate plug-in estimation under the configured missingness.

    For every sample size and replication: draw a sample, form the plug-in
    stratum, compute the region under each assumption, and record whether it
    covers the true mean and how biased the respondents-only mean is.
    Infeasible assumption draws count as non-covering and show up in
    ``feasible_share``; they are data, not failures. Aggregation is by
    replication index, so reports are deterministic for a given seed.
    """
    true_mean = config.outcome.mean()
    reps = config.replications
    cells: list[SimCell] = []
    for i_n, n in enumerate(config.sample_sizes):
        biases: list[float] = []
        los: dict[int, list[float]] = {i: [] for i in range(len(config.assumptions))}
        his: dict[int, list[float]] = {i: [] for i in range(len(config.assumptions))}
        covered = np.zeros(len(config.assumptions))
        feasible = np.zeros(len(config.assumptions))
        for i_rep in range(reps):
            seed = np.random.SeedSequence(entropy=config.seed, spawn_key=(i_n, i_rep))
            y, z = generate_sample(config, n, seed)
            stratum = plug_in_stratum(y, z, label=f"n{n}r{i_rep}")
            if stratum.observed_mean is not None:
                biases.append(stratum.observed_mean - true_mean)
            for i_a, assumption in enumerate(config.assumptions):
                try:
                    region = region_for(stratum, assumption).region
                except AssumptionError:
                    continue
                feasible[i_a] += 1
                los[i_a].append(region.lo)
                his[i_a].append(region.hi)
                if region.lo <= true_mean <= region.hi:
                    covered[i_a] += 1
        bias_arr = np.array(biases)
        if bias_arr.size:
            bias_mean = float(bias_arr.mean())
            bias_se = float(bias_arr.std(ddof=1) / math.sqrt(bias_arr.size)) if bias_arr.size > 1 else 0.0
        else:
            bias_mean, bias_se = float("nan"), float("nan")
        for i_a, assumption in enumerate(config.assumptions):
            lo_arr = np.array(los[i_a])
            hi_arr = np.array(his[i_a])
            cells.append(
                SimCell(
                    n=n,
                    assumption=assumption,
                    bias_mean=bias_mean,
                    bias_se=bias_se,
                    lo_mean=float(lo_arr.mean()) if lo_arr.size else None,
                    hi_mean=float(hi_arr.mean()) if hi_arr.size else None,
                    lo_sd=float(lo_arr.std(ddof=0)) if lo_arr.size else None,
                    hi_sd=float(hi_arr.std(ddof=0)) if hi_arr.size else None,
                    coverage=float(covered[i_a] / reps),
                    feasible_share=float(feasible[i_a] / reps),
                )
            )
    return SimReport(true_mean, reps, config.seed, tuple(cells))


def report_rows(report: SimReport) -> list[dict[str, Any]]:
    """CSV/JSON rows, one per cell, keyed by ``REPORT_COLUMNS``."""
    rows = []
    for cell in report.cells:
        rows.append(
            {
                "n": cell.n,
                "assumption": assumption_to_token(cell.assumption),
                "bias_mean": cell.bias_mean,
                "bias_se": cell.bias_se,
                "lo_mean": cell.lo_mean,
                "hi_mean": cell.hi_mean,
                "coverage": cell.coverage,
            }
        )
    return rows


def report_text(report: SimReport) -> str:
    """Human-readable study summary."""
    lines = [
        f"true mean {report.true_mean:.6f}   "
        f"replications {report.replications}   seed {report.seed}",
        f"{'n':>9} {'assumption':<16} {'bias':>10} {'se':>9} "
        f"{'lo_mean':>9} {'hi_mean':>9} {'coverage':>9} {'feasible':>9}",
    ]
    for cell in report.cells:
        lo = f"{cell.lo_mean:.6f}" if cell.lo_mean is not None else "-"
        hi = f"{cell.hi_mean:.6f}" if cell.hi_mean is not None else "-"
        lines.append(
            f"{cell.n:>9} {assumption_to_token(cell.assumption):<16} "
            f"{cell.bias_mean:>10.6f} {cell.bias_se:>9.6f} {lo:>9} {hi:>9} "
            f"{cell.coverage:>9.3f} {cell.feasible_share:>9.3f}"
        )
    return "\n".join(lines)


def load_sim_config(obj: Mapping[str, Any]) -> SimConfig:
    """Build a config from the documented JSON structure."""
    known = {"outcome", "mechanism", "sample_sizes", "replications", "seed", "assumptions"}
    unknown = set(obj) - known
    if unknown:
        raise ValidationError(f"config: unknown fields {sorted(unknown)}")
    missing = known - set(obj)
    if missing:
        raise ValidationError(f"config: missing fields {sorted(missing)}")

    out = obj["outcome"]
    scale_obj = out.get("scale", {"lo": 0.0, "hi": 1.0})
    outcome = OutcomeModel(
        law=out.get("law", "beta"),
        params=tuple(out.get("params", ())),
        scale=OutcomeScale(float(scale_obj["lo"]), float(scale_obj["hi"])),
    )

    mech_obj = obj["mechanism"]
    kind = mech_obj.get("type")
    if kind == "mcar":
        mechanism: MissingnessMechanism = MCAR(float(mech_obj["observe_prob"]))
    elif kind == "reservation_threshold":
        mechanism = ReservationThreshold(float(mech_obj["threshold"]))
    elif kind == "latent_index":
        mechanism = LatentIndex(
            float(mech_obj["correlation"]), float(mech_obj["target_response_rate"])
        )
    else:
        raise ValidationError(f"mechanism.type: unknown mechanism {kind!r}")

    assumptions = tuple(
        assumption_from_obj(a, where=f"assumptions[{i}]")
        for i, a in enumerate(obj["assumptions"])
    )
    return SimConfig(
        outcome=outcome,
        mechanism=mechanism,
        sample_sizes=tuple(obj["sample_sizes"]),
        replications=int(obj["replications"]),
        seed=int(obj["seed"]),
        assumptions=assumptions,
    )


def read_sim_config(path: str) -> SimConfig:
    import json

    with open(path) as fh:
        return load_sim_config(json.load(fh))
