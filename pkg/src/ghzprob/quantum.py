"""Born-rule predictions for the three-photon GHZ experiment.

Convention: the state is ``(|000> + i|111>) / sqrt(2)`` and party ``k`` measures
``sigma(phi_k) = cos(phi_k) X + sin(phi_k) Y``, whose eigenvector for outcome
``a = +-1`` is ``(|0> + a e^{i phi}|1>) / sqrt(2)``.  With this choice the
product expectation is ``sin(phi_1 + phi_2 + phi_3)``, so the product is
certainly +1 on the surface ``sum phi = pi/2`` and certainly -1 on
``sum phi = 3 pi/2``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

NORM_TOL = 1e-12
TWO_PI = 2.0 * math.pi

OUTCOMES = tuple(itertools.product((1, -1), repeat=3))


def sign_string(outcome: Sequence[int]) -> str:
    return "".join("+" if v > 0 else "-" for v in outcome)


def parse_sign_string(text: str) -> tuple[int, ...]:
    if not text or any(ch not in "+-" for ch in text):
        raise ValueError(f"not a sign string: {text!r}")
    return tuple(1 if ch == "+" else -1 for ch in text)


def reduce_phase(phi: float) -> float:
    """Map an angle into ``[0, 2 pi)``."""
    r = math.fmod(float(phi), TWO_PI)
    if r < 0.0:
        r += TWO_PI
    if r >= TWO_PI:
        r = 0.0
    return r


@dataclass(frozen=True)
class PhaseTriple:
    phi1: float
    phi2: float
    phi3: float

    def __post_init__(self):
        for name in ("phi1", "phi2", "phi3"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} is not finite")
            object.__setattr__(self, name, reduce_phase(value))

    @classmethod
    def of(cls, phases: "PhaseTriple | Iterable[float]") -> "PhaseTriple":
        if isinstance(phases, PhaseTriple):
            return phases
        phases = tuple(phases)
        if len(phases) != 3:
            raise ValueError(f"need three phases, got {len(phases)}")
        return cls(*phases)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.phi1, self.phi2, self.phi3)

    def total(self) -> float:
        return self.phi1 + self.phi2 + self.phi3


class StateVector:
    """Normalized three-qubit state; amplitudes indexed by basis labels 000..111."""

    __slots__ = ("_amps",)

    def __init__(self, amplitudes):
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (8,):
            raise ValueError(f"a three-qubit state has 8 amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalized: sum |amp|^2 = {norm!r}")
        amps.setflags(write=False)
        self._amps = amps

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amps

    def amplitude(self, label: str) -> complex:
        return complex(self._amps[int(label, 2)])

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self._amps) ** 2)))


@dataclass(frozen=True)
class OutcomeDistribution:
    """Joint law of the ``+-1`` outcomes, keyed by outcome tuples."""

    probabilities: Mapping[tuple[int, ...], float]
    phases: tuple[float, ...] | None = None

    def __post_init__(self):
        probs = {tuple(int(v) for v in k): float(p) for k, p in self.probabilities.items()}
        if any(p < -NORM_TOL for p in probs.values()):
            raise ValueError("outcome probabilities must be nonnegative")
        total = math.fsum(probs.values())
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"outcome probabilities sum to {total!r}")
        object.__setattr__(self, "probabilities", probs)

    def __getitem__(self, outcome) -> float:
        return self.probabilities.get(tuple(outcome), 0.0)

    def product_probability(self, sign: int) -> float:
        """Probability that the product of all outcomes equals ``sign``."""
        return math.fsum(p for k, p in self.probabilities.items() if math.prod(k) == sign)

    def product_expectation(self) -> float:
        return math.fsum(math.prod(k) * p for k, p in self.probabilities.items())

    def marginal(self, parties: Sequence[int]) -> dict[tuple[int, ...], float]:
        out: dict[tuple[int, ...], float] = {}
        for k, p in self.probabilities.items():
            key = tuple(k[i] for i in parties)
            out[key] = out.get(key, 0.0) + p
        return out

    def to_dict(self) -> dict:
        return {
            "phases": list(self.phases) if self.phases is not None else None,
            "probabilities": {sign_string(k): p for k, p in self.probabilities.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "OutcomeDistribution":
        probs = {parse_sign_string(k): v for k, v in data["probabilities"].items()}
        phases = data.get("phases")
        return cls(probs, tuple(phases) if phases is not None else None)


def ghz_state() -> StateVector:
    """``(|000> + i|111>) / sqrt(2)``."""
    amps = np.zeros(8, dtype=complex)
    amps[0] = 1.0 / math.sqrt(2.0)
    amps[7] = 1j / math.sqrt(2.0)
    return StateVector(amps)


def eigenvector(phi: float, outcome: int) -> np.ndarray:
    """Eigenvector of ``cos(phi) X + sin(phi) Y`` for eigenvalue ``outcome``."""
    return np.array([1.0, outcome * np.exp(1j * phi)]) / math.sqrt(2.0)


def _as_state(psi) -> np.ndarray:
    if isinstance(psi, StateVector):
        return psi.amplitudes
    return StateVector(psi).amplitudes


def outcome_distribution(psi, phases) -> OutcomeDistribution:
    """Born probabilities of the eight outcome triples at the given phases.

    ``psi`` may be a :class:`StateVector` or any length-8 array; unnormalized
    input raises ``ValueError``.
    """
    amps = _as_state(psi).reshape(2, 2, 2)
    phi = PhaseTriple.of(phases)
    probs = {}
    for outcome in OUTCOMES:
        e1, e2, e3 = (eigenvector(p, a) for p, a in zip(phi.as_tuple(), outcome))
        amp = np.einsum("i,j,k,ijk->", e1.conj(), e2.conj(), e3.conj(), amps)
        probs[outcome] = float(abs(amp) ** 2)
    return OutcomeDistribution(probs, phi.as_tuple())


def product_expectation(psi, phases) -> float:
    """``E[A B C]`` at the given phases; ``sin(sum phi)`` for the GHZ state."""
    return outcome_distribution(psi, phases).product_expectation()


def closed_form_distribution(phases) -> OutcomeDistribution:
    """GHZ outcome law ``p(a, b, c) = (1 + a b c sin(phi1 + phi2 + phi3)) / 8``."""
    phi = PhaseTriple.of(phases)
    s = math.sin(phi.total())
    probs = {o: (1.0 + math.prod(o) * s) / 8.0 for o in OUTCOMES}
    return OutcomeDistribution(probs, phi.as_tuple())
