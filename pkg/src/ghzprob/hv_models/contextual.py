"""Setting-dependent hidden-variable laws over a shared assignment space."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..measure import PROB_TOL, ProbabilityMeasure
from ..quantum import OutcomeDistribution, reduce_phase
from .constraints import AssignmentSpace, Constraint, collect_pairs, sigma_plus_keys

SETTING_ATOL = 1e-6


def _angle_gap(x: float, y: float) -> float:
    d = abs(reduce_phase(x) - reduce_phase(y))
    return min(d, 2.0 * math.pi - d)


def same_setting(s: Sequence[float], t: Sequence[float], atol: float = SETTING_ATOL) -> bool:
    return len(s) == len(t) and all(_angle_gap(x, y) <= atol for x, y in zip(s, t))


class ContextualModel:
    """One probability law over assignments per setting tuple.

    All laws live on the same assignment space, built from the (party,
    setting) pairs that the settings mention.
    """

    def __init__(self, settings: Sequence[Sequence[float]], distributions: Sequence[ProbabilityMeasure]):
        settings = tuple(tuple(reduce_phase(x) for x in s) for s in settings)
        if len(settings) != len(distributions):
            raise ValueError("need one distribution per setting")
        if not settings:
            raise ValueError("a model needs at least one setting")
        self.settings = settings
        self.space = AssignmentSpace(collect_pairs(Constraint(s, 1) for s in settings))
        dists = []
        for s, d in zip(settings, distributions):
            if not isinstance(d, ProbabilityMeasure):
                d = ProbabilityMeasure(d.atoms if hasattr(d, "atoms") else d)
            unknown = set(d.atoms) - set(self.space.index)
            if unknown:
                raise ValueError(f"distribution at {s} has atoms outside the assignment space: {sorted(unknown)[:4]}")
            dists.append(d)
        self.distributions = tuple(dists)

    def __len__(self) -> int:
        return len(self.settings)

    def index_of(self, setting: Sequence[float]) -> int:
        for i, s in enumerate(self.settings):
            if same_setting(s, setting):
                return i
        raise KeyError(f"setting {tuple(setting)} is not in the model")

    def distribution(self, setting: Sequence[float]) -> ProbabilityMeasure:
        return self.distributions[self.index_of(setting)]

    def weights(self, i: int) -> np.ndarray:
        """Distribution ``i`` as a dense vector over the assignment space."""
        w = np.zeros(len(self.space))
        for k, v in self.distributions[i].atoms.items():
            w[self.space.index[k]] = v
        return w

    def outcome_law(self, setting: Sequence[float]) -> OutcomeDistribution:
        """Push the law at ``setting`` forward to the outcomes measured there."""
        i = self.index_of(setting)
        rows = self.space.outcome_rows(self.settings[i])
        probs: dict[tuple[int, ...], float] = {}
        for k, v in self.distributions[i].atoms.items():
            outcome = tuple(int(x) for x in rows[self.space.index[k]])
            probs[outcome] = probs.get(outcome, 0.0) + v
        return OutcomeDistribution(probs, self.settings[i])

    def to_dict(self) -> dict:
        return {
            "settings": [list(s) for s in self.settings],
            "distributions": [dict(d.atoms) for d in self.distributions],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "ContextualModel":
        try:
            settings, dists = data["settings"], data["distributions"]
        except KeyError as exc:
            raise ValueError(f"model JSON is missing {exc}") from None
        return cls(settings, [ProbabilityMeasure(d) for d in dists])

    @classmethod
    def from_json(cls, text: str) -> "ContextualModel":
        return cls.from_dict(json.loads(text))


def constraint_probabilities(model: ContextualModel, constraints: Sequence[Constraint]) -> list[float]:
    """Probability each constraint holds under the law at its own setting."""
    out = []
    for c in constraints:
        d = model.distribution(c.settings)
        out.append(d.measure_of(model.space.satisfier_keys(c)))
    return out


def build_singular_contextual_model(constraints: Sequence[Constraint]) -> ContextualModel:
    """Mutually singular laws, each certain to satisfy its own constraint.

    For constraint ``s`` on ``n`` parties the support is a block of
    ``2**(n-1)`` assignments: every sign choice on ``s``'s own pairs whose
    product is the required sign, with all other pairs frozen to one
    off-setting pattern.  Patterns are scanned in space order starting from
    pattern number ``s`` (mod the pattern count) and the first block disjoint
    from all earlier supports is taken, so the output is reproducible and
    supports never overlap.  Each block is weighted uniformly.
    """
    if not constraints:
        raise ValueError("empty constraint family")
    space = AssignmentSpace.from_constraints(constraints)
    used: set[int] = set()
    dists = []
    for s, c in enumerate(constraints):
        on = space.columns_for(c.settings)
        off = [j for j in range(len(space.pairs)) if j not in on]
        sat = space.satisfier_mask(c)
        off_keys = np.array(["".join(map(str, row)) for row in space.matrix[:, off]]) if off else np.array([""] * len(space))
        patterns = list(dict.fromkeys(off_keys.tolist()))
        block = None
        for t in range(len(patterns)):
            pattern = patterns[(s + t) % len(patterns)]
            rows = np.flatnonzero(sat & (off_keys == pattern))
            if not used.intersection(rows.tolist()):
                block = rows
                break
        if block is None or len(block) == 0:
            raise ValueError(f"no support for constraint {s} disjoint from the earlier ones")
        used.update(block.tolist())
        w = 1.0 / len(block)
        dists.append(ProbabilityMeasure({space.keys[i]: w for i in block}))
    return ContextualModel([c.settings for c in constraints], dists)


class PreconditionError(ValueError):
    """Raised when the laws of a model are not mutually absolutely continuous."""


@dataclass(frozen=True)
class EquivalenceReport:
    premise_probabilities: tuple[float, ...]
    transported_probabilities: tuple[float, ...]
    sigma_plus_probability: float
    final_probability: float
    sigma_plus_disjoint_from_final: bool
    contradiction: bool
    failing_constraint: int | None
    deficit: float

    def to_dict(self) -> dict:
        return {
            "premise_probabilities": list(self.premise_probabilities),
            "transported_probabilities": list(self.transported_probabilities),
            "sigma_plus_probability": self.sigma_plus_probability,
            "final_probability": self.final_probability,
            "sigma_plus_disjoint_from_final": self.sigma_plus_disjoint_from_final,
            "contradiction": self.contradiction,
            "failing_constraint": self.failing_constraint,
            "deficit": self.deficit,
        }


def check_equivalence_theorem(
    model: ContextualModel, constraints: Sequence[Constraint], tol: float = PROB_TOL
) -> EquivalenceReport:
    """Run the probability-one argument for mutually equivalent laws.

    On a finite space two laws are equivalent iff their supports coincide, so
    a premise event of probability one under its own law also has probability
    one under the final constraint's law.  The final law then gives the
    premise intersection probability one; whenever that intersection misses
    the final constraint's satisfier set, the final constraint cannot hold
    with certainty and a contradiction is reported.
    """
    if len(constraints) < 2:
        raise ValueError("need premises and a final constraint")
    laws = [model.distribution(c.settings) for c in constraints]
    supports = [d.support() for d in laws]
    if any(s != supports[0] for s in supports[1:]):
        raise PreconditionError("laws have different supports, so they are not mutually absolutely continuous")

    space = model.space
    final_law = laws[-1]
    premise = tuple(d.measure_of(space.satisfier_keys(c)) for d, c in zip(laws[:-1], constraints[:-1]))
    transported = tuple(final_law.measure_of(space.satisfier_keys(c)) for c in constraints[:-1])
    sigma = sigma_plus_keys(constraints, space)
    final_keys = space.satisfier_keys(constraints[-1])
    disjoint = not set(sigma).intersection(final_keys)
    sigma_prob = final_law.measure_of(sigma)
    final_prob = final_law.measure_of(final_keys)

    premises_hold = all(abs(p - 1.0) <= tol for p in premise)
    contradiction = premises_hold and final_prob < 1.0 - tol
    return EquivalenceReport(
        premise_probabilities=premise,
        transported_probabilities=transported,
        sigma_plus_probability=sigma_prob,
        final_probability=final_prob,
        sigma_plus_disjoint_from_final=disjoint,
        contradiction=contradiction,
        failing_constraint=len(constraints) - 1 if contradiction else None,
        deficit=1.0 - final_prob if contradiction else 0.0,
    )
