"""Ensemble-fluctuation invariant and the GHZ bound ``epsilon >= 1/3``.

``epsilon`` is the largest total variation distance (no 1/2 factor) between
any two hidden-variable laws that realize the same quantum state.  If every
law gives its own constraint probability one, then the law at the final
setting puts at least ``1 - 3 epsilon`` on the premise intersection, which it
must give probability zero; hence ``epsilon >= 1/3``.  The audit below
evaluates that chain term by term.  The chain bounds each event gap by
``epsilon``, although the sharp bound for probability laws is
``epsilon / 2``; the sharp variant is reported alongside as a diagnostic.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Sequence

from .hv_models import Constraint, ContextualModel, sigma_plus_keys
from .measure import PROB_TOL, ProbabilityMeasure, max_event_distance, tv_distance

BLOCKING_RTOL = 1e-12


@dataclass(frozen=True)
class DistributionFamily:
    members: tuple[ProbabilityMeasure, ...]

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ValueError("a distribution family needs at least one member")
        for m in members:
            if not m.is_probability():
                raise ValueError("family members must be probability measures")
        object.__setattr__(self, "members", members)


def epsilon_invariant(family: DistributionFamily | Sequence[ProbabilityMeasure]) -> float:
    """Largest pairwise TV distance in the family; 0 for a singleton."""
    if not isinstance(family, DistributionFamily):
        family = DistributionFamily(tuple(family))
    return max(
        (tv_distance(p, q) for p, q in itertools.combinations(family.members, 2)),
        default=0.0,
    )


@dataclass(frozen=True)
class EpsilonChainAudit:
    epsilon: float
    epsilon_event: float
    sigma_plus_probability: float
    complement_probabilities_final: tuple[float, ...]
    complement_probabilities_own: tuple[float, ...]
    union_bound: float
    transported_bound: float
    sigma_plus_lower_bound: float
    final_constraint_probability: float
    sigma_plus_disjoint_from_final: bool
    constraints_hold: bool
    union_step_holds: bool
    transport_step_holds: bool
    bound_holds: bool
    epsilon_at_least_third: bool
    paradox: bool

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["complement_probabilities_final"] = list(self.complement_probabilities_final)
        d["complement_probabilities_own"] = list(self.complement_probabilities_own)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def ghz_epsilon_chain(
    model: ContextualModel, constraints: Sequence[Constraint], tol: float = PROB_TOL
) -> EpsilonChainAudit:
    """Evaluate every step of the fluctuation chain on a concrete model.

    With ``F`` the law at the final setting, ``P_i`` the law at premise ``i``,
    ``O_i`` premise ``i``'s satisfier set and ``S`` their intersection::

        F(S) >= 1 - sum_i F(not O_i)                  (union bound)
             >= 1 - sum_i P_i(not O_i) - k epsilon    (transport, k premises)

    ``paradox`` is set when the chain forces ``F(S) > 0`` while ``S`` misses
    the final constraint's satisfier set, i.e. the final constraint cannot
    hold with probability one.
    """
    if len(constraints) < 2:
        raise ValueError("need premises and a final constraint")
    try:
        laws = [model.distribution(c.settings) for c in constraints]
    except KeyError as exc:
        raise ValueError(f"model is missing a setting: {exc}") from None
    space = model.space
    final = laws[-1]
    premises = constraints[:-1]

    eps = epsilon_invariant(laws)
    eps_event = max((max_event_distance(p, q) for p, q in itertools.combinations(laws, 2)), default=0.0)

    sigma = sigma_plus_keys(constraints, space)
    final_keys = space.satisfier_keys(constraints[-1])
    all_keys = set(space.keys)
    complements = [all_keys.difference(space.satisfier_keys(c)) for c in premises]

    comp_final = tuple(final.measure_of(e) for e in complements)
    comp_own = tuple(p.measure_of(e) for p, e in zip(laws[:-1], complements))
    sigma_prob = final.measure_of(sigma)
    union_bound = 1.0 - math.fsum(comp_final)
    transported = 1.0 - math.fsum(comp_own) - len(premises) * eps
    final_prob = final.measure_of(final_keys)
    disjoint = not set(sigma).intersection(final_keys)

    own_probs = [p.measure_of(space.satisfier_keys(c)) for p, c in zip(laws, constraints)]
    constraints_hold = all(abs(v - 1.0) <= tol for v in own_probs)
    third = eps >= 1.0 / 3.0 - tol
    return EpsilonChainAudit(
        epsilon=eps,
        epsilon_event=eps_event,
        sigma_plus_probability=sigma_prob,
        complement_probabilities_final=comp_final,
        complement_probabilities_own=comp_own,
        union_bound=union_bound,
        transported_bound=transported,
        sigma_plus_lower_bound=max(union_bound, transported),
        final_constraint_probability=final_prob,
        sigma_plus_disjoint_from_final=disjoint,
        constraints_hold=constraints_hold,
        union_step_holds=sigma_prob >= union_bound - tol,
        transport_step_holds=union_bound >= transported - tol,
        bound_holds=sigma_prob >= 1.0 - len(premises) * eps - tol,
        epsilon_at_least_third=third,
        paradox=disjoint and transported > tol,
    )


@dataclass(frozen=True)
class DiscretePerturbation:
    points: int
    delta: float
    rho: float
    rho_measured: float
    ghz_blocked: bool
    p: ProbabilityMeasure
    p_prime: ProbabilityMeasure

    def to_dict(self) -> dict:
        return {
            "N": self.points,
            "delta": self.delta,
            "rho": self.rho,
            "rho_measured": self.rho_measured,
            "ghz_blocked": self.ghz_blocked,
        }


def perturbed_pair(points: int, delta: float) -> tuple[ProbabilityMeasure, ProbabilityMeasure]:
    """Two laws on ``points`` atoms differing by exactly ``delta`` at every atom.

    For ``delta <= 1/N`` the first law is uniform and the second alternates
    ``+delta, -delta``.  Up to ``delta <= 2/N`` the first law is instead
    spread over the even atoms, which then lose ``delta`` each while the odd
    atoms gain it.  Any ``delta > 0`` needs ``N`` even, since the signed
    differences must cancel.
    """
    n = int(points)
    if n < 1:
        raise ValueError(f"need at least one point, got {points}")
    delta = float(delta)
    if not (math.isfinite(delta) and delta >= 0.0):
        raise ValueError(f"delta must be a nonnegative number, got {delta!r}")
    if delta == 0.0:
        p = ProbabilityMeasure.uniform(range(n))
        return p, p
    if n % 2:
        raise ValueError(f"delta > 0 needs an even number of points, got N={n}")
    if n * delta > 2.0 + BLOCKING_RTOL:
        raise ValueError(f"N * delta = {n * delta} exceeds 2, the largest total variation distance")
    if delta <= 1.0 / n:
        base = [1.0 / n] * n
    else:
        base = [2.0 / n if j % 2 == 0 else 0.0 for j in range(n)]
    shifted = [max(b - delta, 0.0) if j % 2 == 0 else b + delta for j, b in enumerate(base)]
    return ProbabilityMeasure(dict(enumerate(base))), ProbabilityMeasure(dict(enumerate(shifted)))


def discrete_perturbation_verdict(points: int, delta: float) -> DiscretePerturbation:
    """``rho = N delta`` for the atomwise-``delta`` pair, and whether it blocks GHZ.

    The scheme is blocked once ``rho >= 1/3``, i.e. ``delta >= 1/(3N)``; the
    comparison allows a relative slack of ``1e-12`` for ``delta`` computed as
    ``1/(3N)`` in floating point.
    """
    p, q = perturbed_pair(points, delta)
    rho = points * delta
    return DiscretePerturbation(
        points=int(points),
        delta=float(delta),
        rho=rho,
        rho_measured=tv_distance(p, q),
        ghz_blocked=delta > 0.0 and 3.0 * points * delta >= 1.0 - BLOCKING_RTOL,
        p=p,
        p_prime=q,
    )
