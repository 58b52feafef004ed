"""Monte Carlo draws from a contextual model.

Randomness comes from ``numpy.random.SeedSequence``: the draws for setting
``i`` and block ``b`` use the child stream ``spawn_key=(i, b)`` of the user
seed.  Blocks have a fixed size, so the result is the same whatever number
of workers handles them.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..quantum import sign_string
from .contextual import ContextualModel

BLOCK_SIZE = 1 << 18


def block_rng(seed: int, setting_index: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(setting_index, block)))


@dataclass(frozen=True)
class SampleResult:
    setting: tuple[float, ...]
    n: int
    seed: int
    assignment_counts: Mapping[str, int]
    outcome_counts: Mapping[tuple[int, ...], int]

    def outcome_frequency(self, outcome: Sequence[int]) -> float:
        return self.outcome_counts.get(tuple(outcome), 0) / self.n

    def product_frequency(self, sign: int) -> float:
        hits = sum(c for o, c in self.outcome_counts.items() if np.prod(o) == sign)
        return hits / self.n

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["outcome", "count"])
        for outcome in sorted(self.outcome_counts, reverse=True):
            writer.writerow([sign_string(outcome), self.outcome_counts[outcome]])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "setting": list(self.setting),
            "n": self.n,
            "seed": self.seed,
            "assignment_counts": dict(sorted(self.assignment_counts.items())),
            "outcome_counts": {sign_string(o): c for o, c in sorted(self.outcome_counts.items(), reverse=True)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def sample(
    model: ContextualModel,
    setting: Sequence[float],
    n: int,
    seed: int,
    workers: int = 1,
) -> SampleResult:
    """Draw ``n`` i.i.d. hidden-variable values from the law at ``setting``.

    Raises ``KeyError`` for a setting the model does not define.
    """
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    i = model.index_of(setting)
    law = model.distributions[i]
    keys = sorted(law.support())
    probs = np.array([law[k] for k in keys])
    probs /= probs.sum()

    sizes = [BLOCK_SIZE] * (n // BLOCK_SIZE)
    if n % BLOCK_SIZE:
        sizes.append(n % BLOCK_SIZE)

    def draw(block: int) -> np.ndarray:
        return block_rng(seed, i, block).multinomial(sizes[block], probs)

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(draw, range(len(sizes))))
    else:
        parts = [draw(b) for b in range(len(sizes))]
    counts = np.sum(parts, axis=0)

    rows = model.space.outcome_rows(model.settings[i])
    assignment_counts = {}
    outcome_counts: dict[tuple[int, ...], int] = {}
    for k, c in zip(keys, counts.tolist()):
        if c == 0:
            continue
        assignment_counts[k] = c
        outcome = tuple(int(x) for x in rows[model.space.index[k]])
        outcome_counts[outcome] = outcome_counts.get(outcome, 0) + c
    return SampleResult(model.settings[i], n, seed, assignment_counts, outcome_counts)
