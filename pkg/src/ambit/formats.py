"""Wire and flag encodings for assumptions.

Two encodings exist: a JSON object form used by the HTTP service, the
treatment problem file, and the simulation config

    {"type": "agnostic"}
    {"type": "mar"}
    {"type": "restriction_set", "gamma": {"lo": 0.2, "hi": 0.4}}
    {"type": "bounded_variation", "delta0": -0.1, "delta1": 0.1}

and a compact token form used on the command line and in report tables:
``agnostic``, ``mar``, ``gamma:LO,HI``, ``bv:D0,D1``.
"""

from __future__ import annotations

from typing import Any, Mapping

from .errors import ValidationError
from .identification import (
    MAR,
    Agnostic,
    Assumption,
    BoundedVariation,
    Interval,
    RestrictionSet,
)


def assumption_to_obj(assumption: Assumption) -> dict[str, Any]:
    if isinstance(assumption, Agnostic):
        return {"type": "agnostic"}
    if isinstance(assumption, MAR):
        return {"type": "mar"}
    if isinstance(assumption, RestrictionSet):
        return {
            "type": "restriction_set",
            "gamma": {"lo": assumption.gamma.lo, "hi": assumption.gamma.hi},
        }
    if isinstance(assumption, BoundedVariation):
        return {
            "type": "bounded_variation",
            "delta0": assumption.delta0,
            "delta1": assumption.delta1,
        }
    raise ValidationError(f"unknown assumption: {assumption!r}")


def _require(obj: Mapping[str, Any], key: str, where: str) -> Any:
    if key not in obj:
        raise ValidationError(f"{where}: missing field {key!r}")
    return obj[key]


def assumption_from_obj(obj: Mapping[str, Any], where: str = "assumption") -> Assumption:
    if not isinstance(obj, Mapping):
        raise ValidationError(f"{where}: expected an object, got {type(obj).__name__}")
    kind = _require(obj, "type", where)
    known = {
        "agnostic": {"type"},
        "mar": {"type"},
        "restriction_set": {"type", "gamma"},
        "bounded_variation": {"type", "delta0", "delta1"},
    }
    if kind not in known:
        raise ValidationError(f"{where}.type: unknown assumption type {kind!r}")
    extra = set(obj) - known[kind]
    if extra:
        raise ValidationError(f"{where}: unknown fields {sorted(extra)}")
    if kind == "agnostic":
        return Agnostic()
    if kind == "mar":
        return MAR()
    if kind == "restriction_set":
        gamma = _require(obj, "gamma", where)
        lo = _require(gamma, "lo", f"{where}.gamma")
        hi = _require(gamma, "hi", f"{where}.gamma")
        return RestrictionSet(Interval(float(lo), float(hi)))
    d0 = float(_require(obj, "delta0", where))
    d1 = float(_require(obj, "delta1", where))
    return BoundedVariation(d0, d1)


def treatment_problem_from_obj(obj: Mapping[str, Any]):
    """Decode the treatment problem JSON; errors carry JSON paths."""
    from .treatment import TreatmentArm, TreatmentProblem

    if not isinstance(obj, Mapping):
        raise ValidationError("treatment problem must be an object")
    unknown = set(obj) - {"stratum_label", "arms"}
    if unknown:
        raise ValidationError(f"unknown fields {sorted(unknown)}")
    arms_obj = _require(obj, "arms", "problem")
    if not isinstance(arms_obj, list):
        raise ValidationError("arms: expected an array")
    arms = []
    for i, arm in enumerate(arms_obj):
        where = f"arms[{i}]"
        if not isinstance(arm, Mapping):
            raise ValidationError(f"{where}: expected an object")
        unknown = set(arm) - {"label", "share", "observed_mean", "assumption"}
        if unknown:
            raise ValidationError(f"{where}: unknown fields {sorted(unknown)}")
        label = str(_require(arm, "label", where))
        try:
            share = float(_require(arm, "share", where))
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"{where}.share: not a number") from exc
        mean = arm.get("observed_mean")
        if mean is not None:
            try:
                mean = float(mean)
            except (TypeError, ValueError) as exc:
                raise ValidationError(f"{where}.observed_mean: not a number") from exc
        assumption = assumption_from_obj(
            _require(arm, "assumption", where), where=f"{where}.assumption"
        )
        try:
            arms.append(TreatmentArm(label, share, mean, assumption))
        except ValidationError as exc:
            raise ValidationError(f"{where}: {exc}") from exc
    return TreatmentProblem(str(obj.get("stratum_label", "stratum")), tuple(arms))


def assumption_to_token(assumption: Assumption) -> str:
    if isinstance(assumption, Agnostic):
        return "agnostic"
    if isinstance(assumption, MAR):
        return "mar"
    if isinstance(assumption, RestrictionSet):
        return f"gamma:{assumption.gamma.lo:g},{assumption.gamma.hi:g}"
    if isinstance(assumption, BoundedVariation):
        return f"bv:{assumption.delta0:g},{assumption.delta1:g}"
    raise ValidationError(f"unknown assumption: {assumption!r}")


def assumption_from_token(token: str) -> Assumption:
    """Parse the compact flag form, e.g. ``agnostic`` or ``bv:-0.1,0.1``."""
    t = token.strip()
    if t == "agnostic":
        return Agnostic()
    if t == "mar":
        return MAR()
    for prefix in ("bv:", "gamma:"):
        if t.startswith(prefix):
            body = t[len(prefix):]
            parts = body.split(",")
            if len(parts) != 2:
                raise ValidationError(
                    f"assumption {token!r}: expected two comma-separated numbers"
                )
            try:
                a, b = float(parts[0]), float(parts[1])
            except ValueError as exc:
                raise ValidationError(
                    f"assumption {token!r}: could not parse numbers"
                ) from exc
            if prefix == "bv:":
                return BoundedVariation(a, b)
            return RestrictionSet(Interval(a, b))
    raise ValidationError(
        f"assumption {token!r}: expected agnostic, mar, bv:D0,D1 or gamma:LO,HI"
    )
