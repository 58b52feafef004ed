"""Signed measures on finite sample spaces.

Points of the sample space are opaque hashable labels (strings or ints).
Measures defined over different label sets are compared on the union of
their supports, with missing atoms treated as zero.

The total variation norm used throughout the package is the plain sum of
absolute atom weights, ``||mu|| = mu+(Omega) + mu-(Omega)``, with no 1/2
factor.  Under this convention two probability measures with disjoint
supports are at distance 2.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Hashable, Iterable, Mapping

PROB_TOL = 1e-12

Label = Hashable


class DiscreteSignedMeasure:
    """Finitely supported signed measure given by its atom weights."""

    __slots__ = ("_atoms",)

    def __init__(self, atoms: Mapping[Label, float]):
        clean = {}
        for label, weight in atoms.items():
            w = float(weight)
            if not math.isfinite(w):
                raise ValueError(f"atom {label!r} has non-finite weight {weight!r}")
            clean[label] = w
        self._atoms = MappingProxyType(clean)

    @property
    def atoms(self) -> Mapping[Label, float]:
        return self._atoms

    def __getitem__(self, label: Label) -> float:
        return self._atoms.get(label, 0.0)

    def __len__(self) -> int:
        return len(self._atoms)

    def __iter__(self):
        return iter(self._atoms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiscreteSignedMeasure):
            return NotImplemented
        return self.support() == other.support() and all(
            self[k] == other[k] for k in self.support()
        )

    def __hash__(self):
        return hash(frozenset((k, v) for k, v in self._atoms.items() if v != 0.0))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({dict(self._atoms)!r})"

    def support(self) -> frozenset:
        """Labels carrying nonzero weight."""
        return frozenset(k for k, v in self._atoms.items() if v != 0.0)

    def total_mass(self) -> float:
        return math.fsum(self._atoms.values())

    def measure_of(self, event: Iterable[Label]) -> float:
        """Measure of a set of labels; labels outside the atom map count as zero."""
        return math.fsum(self[k] for k in set(event))

    def is_probability(self, tol: float = PROB_TOL) -> bool:
        return all(w >= 0.0 for w in self._atoms.values()) and abs(self.total_mass() - 1.0) <= tol

    def __add__(self, other: "DiscreteSignedMeasure") -> "DiscreteSignedMeasure":
        keys = set(self._atoms) | set(other.atoms)
        return DiscreteSignedMeasure({k: self[k] + other[k] for k in keys})

    def __sub__(self, other: "DiscreteSignedMeasure") -> "DiscreteSignedMeasure":
        keys = set(self._atoms) | set(other.atoms)
        return DiscreteSignedMeasure({k: self[k] - other[k] for k in keys})

    def __neg__(self) -> "DiscreteSignedMeasure":
        return DiscreteSignedMeasure({k: -v for k, v in self._atoms.items()})

    def scale(self, alpha: float) -> "DiscreteSignedMeasure":
        return DiscreteSignedMeasure({k: alpha * v for k, v in self._atoms.items()})

    __rmul__ = scale

    def to_dict(self) -> dict:
        return {"atoms": {str(k): v for k, v in self._atoms.items()}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "DiscreteSignedMeasure":
        if "atoms" not in data:
            raise ValueError("measure JSON needs an 'atoms' object")
        return cls(data["atoms"])

    @classmethod
    def from_json(cls, text: str) -> "DiscreteSignedMeasure":
        return cls.from_dict(json.loads(text))


class ProbabilityMeasure(DiscreteSignedMeasure):
    """Nonnegative measure of total mass one (within ``PROB_TOL``)."""

    __slots__ = ()

    def __init__(self, atoms: Mapping[Label, float]):
        super().__init__(atoms)
        negative = [k for k, v in self._atoms.items() if v < 0.0]
        if negative:
            raise ValueError(f"probability measure has negative atoms: {negative[:5]}")
        mass = self.total_mass()
        if abs(mass - 1.0) > PROB_TOL:
            raise ValueError(f"probability measure has total mass {mass!r}")

    @classmethod
    def uniform(cls, labels: Iterable[Label]) -> "ProbabilityMeasure":
        labels = list(dict.fromkeys(labels))
        if not labels:
            raise ValueError("uniform measure needs at least one label")
        w = 1.0 / len(labels)
        return cls({k: w for k in labels})


@dataclass(frozen=True)
class JordanPair:
    positive_part: DiscreteSignedMeasure
    negative_part: DiscreteSignedMeasure

    def recompose(self) -> DiscreteSignedMeasure:
        return self.positive_part - self.negative_part


def jordan_decompose(m: DiscreteSignedMeasure) -> JordanPair:
    """Split ``m`` into its positive and negative variations.

    The two parts have disjoint supports and nonnegative weights, and their
    difference restores ``m`` atom by atom with no rounding.
    """
    pos = {k: v for k, v in m.atoms.items() if v > 0.0}
    neg = {k: -v for k, v in m.atoms.items() if v < 0.0}
    return JordanPair(DiscreteSignedMeasure(pos), DiscreteSignedMeasure(neg))


def total_variation_norm(m: DiscreteSignedMeasure) -> float:
    """``mu+(Omega) + mu-(Omega)``, i.e. the sum of absolute atom weights."""
    return math.fsum(abs(v) for v in m.atoms.values())


def tv_distance(p: DiscreteSignedMeasure, q: DiscreteSignedMeasure) -> float:
    """Total variation distance ``||p - q||`` (no 1/2 factor)."""
    keys = set(p.atoms) | set(q.atoms)
    return math.fsum(abs(p[k] - q[k]) for k in keys)


def max_event_distance(p: DiscreteSignedMeasure, q: DiscreteSignedMeasure) -> float:
    """Largest gap ``|p(E) - q(E)|`` over all events ``E``.

    The supremum is attained on the set where ``p - q`` is positive (or its
    complement), so no enumeration is needed.  For probability measures the
    result is exactly half of :func:`tv_distance`.
    """
    for name, m in (("p", p), ("q", q)):
        if not m.is_probability():
            raise ValueError(f"{name} is not a probability measure")
    jordan = jordan_decompose(p - q)
    return max(jordan.positive_part.total_mass(), jordan.negative_part.total_mass())

