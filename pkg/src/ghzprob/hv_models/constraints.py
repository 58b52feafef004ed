"""Deterministic response functions and perfect-correlation constraints.

A constraint says that at a given tuple of settings the product of all
parties' outcomes is always ``required_sign``.  A deterministic hidden
variable fixes one ``+-1`` response per (party, setting) pair, so a finite
constraint family reduces to ``2**k`` assignments over its ``k`` distinct
pairs and every question about it can be settled by enumeration.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..quantum import reduce_phase

MAX_PAIRS = 24
PARTY_NAMES = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"

Pair = tuple[int, float]


@dataclass(frozen=True)
class Constraint:
    """``prod_k X_k(settings[k]) == required_sign`` with certainty."""

    settings: tuple[float, ...]
    required_sign: int

    def __post_init__(self):
        settings = tuple(reduce_phase(s) for s in self.settings)
        if len(settings) < 2:
            raise ValueError("a constraint involves at least two parties")
        if self.required_sign not in (1, -1):
            raise ValueError(f"required_sign must be +1 or -1, got {self.required_sign!r}")
        object.__setattr__(self, "settings", settings)
        object.__setattr__(self, "required_sign", int(self.required_sign))

    @property
    def parties(self) -> int:
        return len(self.settings)

    def pairs(self) -> tuple[Pair, ...]:
        return tuple(enumerate(self.settings))

    def flipped(self) -> "Constraint":
        return Constraint(self.settings, -self.required_sign)

    def to_dict(self) -> dict:
        return {"settings": list(self.settings), "sign": self.required_sign}

    @classmethod
    def from_dict(cls, data: Mapping) -> "Constraint":
        sign = data.get("sign", data.get("required_sign"))
        if sign is None or "settings" not in data:
            raise ValueError("constraint JSON needs 'settings' and 'sign'")
        return cls(tuple(float(s) for s in data["settings"]), int(sign))


def ghz_constraints() -> list[Constraint]:
    """The four perfect correlations of the three-photon GHZ scheme."""
    h = math.pi / 2
    return [
        Constraint((h, 0.0, 0.0), 1),
        Constraint((0.0, h, 0.0), 1),
        Constraint((0.0, 0.0, h), 1),
        Constraint((h, h, h), -1),
    ]


def constraints_to_json(constraints: Sequence[Constraint]) -> str:
    return json.dumps({"constraints": [c.to_dict() for c in constraints]})


def constraints_from_dict(data) -> list[Constraint]:
    items = data["constraints"] if isinstance(data, Mapping) else data
    return [Constraint.from_dict(item) for item in items]


def pair_label(pair: Pair) -> str:
    party, setting = pair
    return f"{PARTY_NAMES[party]}:{setting:g}"


def collect_pairs(constraints: Iterable[Constraint]) -> tuple[Pair, ...]:
    """Distinct (party, setting) pairs, ordered by party then setting."""
    return tuple(sorted({p for c in constraints for p in c.pairs()}))


@dataclass(frozen=True)
class Assignment:
    """One deterministic ``+-1`` response per (party, setting) pair."""

    values: Mapping[Pair, int]

    def __getitem__(self, pair: Pair) -> int:
        return self.values[pair]

    def key(self, pairs: Sequence[Pair] | None = None) -> str:
        pairs = sorted(self.values) if pairs is None else pairs
        return "".join("+" if self.values[p] > 0 else "-" for p in pairs)

    def outcomes(self, settings: Sequence[float]) -> tuple[int, ...]:
        return tuple(self[(k, reduce_phase(s))] for k, s in enumerate(settings))


class AssignmentSpace:
    """All ``2**k`` assignments over a fixed ordered list of pairs.

    Row ``i`` of :attr:`matrix` holds the values of assignment ``i``; its key
    is the sign string of that row in pair order.  Rows are enumerated with
    ``+1`` before ``-1`` in each position, so row 0 is all-plus.
    """

    def __init__(self, pairs: Sequence[Pair]):
        pairs = tuple(pairs)
        if len(set(pairs)) != len(pairs):
            raise ValueError("duplicate (party, setting) pairs")
        if len(pairs) > MAX_PAIRS:
            raise ValueError(f"{len(pairs)} pairs would give 2**{len(pairs)} assignments (limit {MAX_PAIRS})")
        self.pairs = pairs
        self.column = {p: i for i, p in enumerate(pairs)}
        self.matrix = np.array(list(itertools.product((1, -1), repeat=len(pairs))), dtype=np.int8).reshape(
            -1, len(pairs)
        )
        self.keys = tuple("".join("+" if v > 0 else "-" for v in row) for row in self.matrix)
        self.index = {k: i for i, k in enumerate(self.keys)}

    @classmethod
    def from_constraints(cls, constraints: Iterable[Constraint]) -> "AssignmentSpace":
        return cls(collect_pairs(constraints))

    def __len__(self) -> int:
        return len(self.keys)

    def assignment(self, i: int) -> Assignment:
        return Assignment({p: int(v) for p, v in zip(self.pairs, self.matrix[i])})

    def columns_for(self, settings: Sequence[float]) -> list[int]:
        cols = []
        for pair in enumerate(reduce_phase(s) for s in settings):
            if pair not in self.column:
                raise ValueError(f"pair {pair_label(pair)} is not part of this assignment space")
            cols.append(self.column[pair])
        return cols

    def products(self, c: Constraint) -> np.ndarray:
        """Outcome product at ``c``'s settings, one entry per assignment."""
        return np.prod(self.matrix[:, self.columns_for(c.settings)], axis=1)

    def satisfier_mask(self, c: Constraint) -> np.ndarray:
        return self.products(c) == c.required_sign

    def satisfier_keys(self, c: Constraint) -> list[str]:
        return [self.keys[i] for i in np.flatnonzero(self.satisfier_mask(c))]

    def outcome_rows(self, settings: Sequence[float]) -> np.ndarray:
        return self.matrix[:, self.columns_for(settings)]


def enumerate_assignments(constraints: Sequence[Constraint]) -> list[Assignment]:
    """Every sign assignment over the family's distinct (party, setting) pairs."""
    space = AssignmentSpace.from_constraints(constraints)
    return [space.assignment(i) for i in range(len(space))]


def satisfies(a: Assignment, c: Constraint) -> bool:
    try:
        values = [a[p] for p in c.pairs()]
    except KeyError as exc:
        raise ValueError(f"assignment has no value for pair {pair_label(exc.args[0])}") from None
    return math.prod(values) == c.required_sign


@dataclass(frozen=True)
class NoGoReport:
    total_assignments: int
    satisfier_counts: tuple[int, ...]
    all_satisfied_count: int
    max_simultaneous: int
    witnesses: tuple[str, ...]
    pairs: tuple[Pair, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "total_assignments": self.total_assignments,
            "satisfier_counts": list(self.satisfier_counts),
            "all_satisfied_count": self.all_satisfied_count,
            "max_simultaneous": self.max_simultaneous,
            "witnesses": list(self.witnesses),
            "pairs": [pair_label(p) for p in self.pairs],
        }


def exhaustive_no_go(constraints: Sequence[Constraint]) -> NoGoReport:
    """Count, over every assignment, how many constraints hold simultaneously."""
    if not constraints:
        raise ValueError("empty constraint family")
    space = AssignmentSpace.from_constraints(constraints)
    masks = np.array([space.satisfier_mask(c) for c in constraints])
    hits = masks.sum(axis=0)
    best = int(hits.max())
    return NoGoReport(
        total_assignments=len(space),
        satisfier_counts=tuple(int(m.sum()) for m in masks),
        all_satisfied_count=int(np.sum(hits == len(constraints))),
        max_simultaneous=best,
        witnesses=tuple(space.keys[i] for i in np.flatnonzero(hits == best)),
        pairs=space.pairs,
    )


def sigma_plus_keys(constraints: Sequence[Constraint], space: AssignmentSpace | None = None) -> list[str]:
    """Assignments satisfying every premise constraint (all but the last).

    For the GHZ family this is the intersection of the three ``+1``
    satisfier sets.
    """
    if len(constraints) < 2:
        raise ValueError("need premises and a final constraint")
    space = space or AssignmentSpace.from_constraints(constraints)
    mask = np.logical_and.reduce([space.satisfier_mask(c) for c in constraints[:-1]])
    return [space.keys[i] for i in np.flatnonzero(mask)]


def noncontextual_sigma_plus(p, constraints: Sequence[Constraint]) -> float:
    """Probability that a single hidden-variable law assigns to the premise intersection."""
    return p.measure_of(sigma_plus_keys(constraints))
