"""Hidden-variable models for the GHZ correlations."""

from .constraints import (
    Assignment,
    AssignmentSpace,
    Constraint,
    NoGoReport,
    constraints_from_dict,
    constraints_to_json,
    enumerate_assignments,
    exhaustive_no_go,
    ghz_constraints,
    noncontextual_sigma_plus,
    satisfies,
    sigma_plus_keys,
)
from .contextual import (
    ContextualModel,
    EquivalenceReport,
    PreconditionError,
    build_singular_contextual_model,
    check_equivalence_theorem,
    constraint_probabilities,
)
from .lp import FluctuationLP, lp_min_fluctuation, max_pairwise_tv
from .sampling import SampleResult, sample

__all__ = [
    "Assignment",
    "AssignmentSpace",
    "Constraint",
    "ContextualModel",
    "EquivalenceReport",
    "FluctuationLP",
    "NoGoReport",
    "PreconditionError",
    "SampleResult",
    "build_singular_contextual_model",
    "check_equivalence_theorem",
    "constraint_probabilities",
    "constraints_from_dict",
    "constraints_to_json",
    "enumerate_assignments",
    "exhaustive_no_go",
    "ghz_constraints",
    "lp_min_fluctuation",
    "max_pairwise_tv",
    "noncontextual_sigma_plus",
    "sample",
    "satisfies",
    "sigma_plus_keys",
]
