"""Partial identification of means under missing data, and decision criteria
(dominance, Bayes, maximin, minimax regret) over the resulting state spaces."""

from .criteria import (
    CriterionResult,
    Prior,
    RegretMatrix,
    WelfareMatrix,
    bayes_rank,
    discretize_interval_states,
    eliminate_dominated,
    maximin_rank,
    minimax_regret_rank,
    mmr_point_prediction,
    regret_matrix,
)
from .errors import (
    AmbitError,
    AssumptionError,
    CapExceededError,
    InfeasibleAssumptionError,
    OutOfRangeError,
    UndefinedMARError,
    ValidationError,
)
from .identification import (
    MAR,
    Agnostic,
    Assumption,
    BoundedVariation,
    IdentificationRegion,
    Interval,
    ObservedStratum,
    OutcomeScale,
    RestrictionSet,
    agnostic_region,
    bounded_variation_region,
    denormalize,
    lie_mean,
    mar_point,
    normalize,
    outward_round,
    region_for,
    region_under_gamma,
    region_width,
    sweep_bounded_variation,
)
from .treatment import (
    RectangularStateSpace,
    TreatmentArm,
    TreatmentProblem,
    arm_dominance,
    arm_region,
    maximin_treatment_choice,
    mmr_treatment_choice,
    problem_state_space,
)

__version__ = "0.1.0"
