"""Smallest worst-case total variation between per-setting laws.

Each setting's law must be supported on its constraint's satisfier set.  The
objective is the largest pairwise total variation distance (sum of absolute
differences, no 1/2 factor).  In epigraph form this is a small linear program:

    minimize    T
    subject to  sum_j P_s(j) = 1                 for every setting s
                u_stj >= +-(P_s(j) - P_t(j))     for every pair s < t
                sum_j u_stj <= T
                P, u >= 0,  P_s(j) = 0 off s's satisfier set
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import optimize, sparse

from ..measure import ProbabilityMeasure, tv_distance
from .constraints import AssignmentSpace, Constraint
from .contextual import ContextualModel


@dataclass(frozen=True)
class FluctuationLP:
    epsilon_star: float
    witness: ContextualModel
    achieved: float

    def to_dict(self) -> dict:
        return {
            "epsilon_star": self.epsilon_star,
            "achieved": self.achieved,
            "witness": self.witness.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def max_pairwise_tv(laws: Sequence[ProbabilityMeasure]) -> float:
    return max((tv_distance(p, q) for p, q in itertools.combinations(laws, 2)), default=0.0)


def lp_min_fluctuation(constraints: Sequence[Constraint]) -> FluctuationLP:
    """Minimize the largest pairwise TV distance over admissible law families.

    Returns the optimal value together with a witness model.  ``achieved`` is
    the witness's max pairwise distance recomputed from its cleaned atoms.
    """
    if not constraints:
        raise ValueError("empty constraint family")
    space = AssignmentSpace.from_constraints(constraints)
    supports = [np.flatnonzero(space.satisfier_mask(c)) for c in constraints]
    for s, sup in enumerate(supports):
        if len(sup) == 0:
            raise ValueError(f"constraint {s} has no satisfying assignment; the program is infeasible")
    settings = [c.settings for c in constraints]

    if len(constraints) == 1:
        law = ProbabilityMeasure.uniform(space.keys[i] for i in supports[0])
        return FluctuationLP(0.0, ContextualModel(settings, [law]), 0.0)

    # variable layout: [P_0 | P_1 | ... | u_(0,1) | u_(0,2) | ... | T]
    p_offset = np.cumsum([0] + [len(s) for s in supports])
    p_col = [dict(zip(sup.tolist(), range(p_offset[s], p_offset[s + 1]))) for s, sup in enumerate(supports)]
    n = int(p_offset[-1])
    pair_cols = []
    for s, t in itertools.combinations(range(len(constraints)), 2):
        union = sorted(set(supports[s].tolist()) | set(supports[t].tolist()))
        pair_cols.append((s, t, {j: n + k for k, j in enumerate(union)}))
        n += len(union)
    t_col = n
    n += 1

    entries = []
    row = 0
    for s, t, ucol in pair_cols:
        for j, uc in ucol.items():
            for sign in (1.0, -1.0):
                # sign*(P_s(j) - P_t(j)) - u <= 0
                if j in p_col[s]:
                    entries.append((row, p_col[s][j], sign))
                if j in p_col[t]:
                    entries.append((row, p_col[t][j], -sign))
                entries.append((row, uc, -1.0))
                row += 1
        for uc in ucol.values():
            entries.append((row, uc, 1.0))
        entries.append((row, t_col, -1.0))
        row += 1
    ub_rows, ub_cols, ub_vals = zip(*entries)
    a_ub = sparse.csr_matrix((ub_vals, (ub_rows, ub_cols)), shape=(row, n))
    b_ub = np.zeros(row)

    eq_rows, eq_cols = [], []
    for s, cols in enumerate(p_col):
        eq_rows += [s] * len(cols)
        eq_cols += list(cols.values())
    a_eq = sparse.csr_matrix((np.ones(len(eq_cols)), (eq_rows, eq_cols)), shape=(len(supports), n))
    b_eq = np.ones(len(supports))

    cost = np.zeros(n)
    cost[t_col] = 1.0
    res = optimize.linprog(cost, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs-ds")
    if res.status != 0:
        raise RuntimeError(f"linear program failed: {res.message}")

    laws = []
    for s, cols in enumerate(p_col):
        w = np.clip(np.array([res.x[c] for c in cols.values()]), 0.0, None)
        w /= w.sum()
        laws.append(ProbabilityMeasure({space.keys[j]: float(v) for j, v in zip(cols, w) if v > 0.0}))
    return FluctuationLP(float(res.fun), ContextualModel(settings, laws), max_pairwise_tv(laws))
