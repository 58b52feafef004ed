"""Singular/equivalent classification of Gaussian product measures.

A Gaussian measure on sequence space is described coordinatewise: variances
``b_j`` of the reference measure plus a mean shift ``da_j`` or a variance shift
``db_j`` of the perturbed one.  Every sequence is a power law
``t_j = c * j**(-p)`` (with optional finite overrides), which makes series
convergence decidable exactly: ``sum c * j**(-p)`` diverges iff ``c > 0`` and
``p <= 1``.  Numeric partial sums are never used for a verdict, since they
cannot separate ``sum 1/j`` from ``sum 1/j**1.001``.

Two routes are provided:

* the Gaussian criteria, summing ``da_j**2 / b_j`` (mean shift) or
  ``(db_j / b_j)**2`` (variance shift);
* the product-measure route, summing ``-log`` of the per-coordinate Hellinger
  affinity, whose power-law rate is derived analytically.

Both produce one of two verdicts, never a third.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np


class Verdict(str, enum.Enum):
    SINGULAR = "Singular"
    EQUIVALENT = "Equivalent"


@dataclass(frozen=True)
class PowerLawSeq:
    """The sequence ``t_j = c * j**(-p)`` for ``j >= 1``, with finite overrides."""

    c: float
    p: float
    overrides: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        c, p = float(self.c), float(self.p)
        if not (math.isfinite(c) and math.isfinite(p)):
            raise ValueError(f"power law needs finite c and p, got c={c!r}, p={p!r}")
        if c < 0:
            raise ValueError(f"power-law coefficient must be >= 0, got {c!r}")
        ov = {}
        for j, v in dict(self.overrides).items():
            j = int(j)
            if j < 1:
                raise ValueError(f"override index must be >= 1, got {j}")
            v = float(v)
            if not math.isfinite(v):
                raise ValueError(f"override t_{j} is not finite")
            ov[j] = v
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "overrides", ov)

    @classmethod
    def zero(cls) -> "PowerLawSeq":
        return cls(0.0, 0.0)

    def is_tail_zero(self) -> bool:
        return self.c == 0.0

    def is_zero(self) -> bool:
        return self.c == 0.0 and all(v == 0.0 for v in self.overrides.values())

    def term(self, j: int) -> float:
        if j in self.overrides:
            return self.overrides[j]
        return self.c * float(j) ** (-self.p)

    def terms(self, n: int) -> np.ndarray:
        """First ``n`` terms ``t_1 .. t_n`` as an array."""
        j = np.arange(1, n + 1, dtype=float)
        out = self.c * j ** (-self.p)
        for k, v in self.overrides.items():
            if k <= n:
                out[k - 1] = v
        return out

    def to_dict(self) -> dict:
        d = {"c": self.c, "p": self.p}
        if self.overrides:
            d["overrides"] = {str(k): v for k, v in sorted(self.overrides.items())}
        return d

    @classmethod
    def from_dict(cls, data: Mapping) -> "PowerLawSeq":
        try:
            return cls(data["c"], data["p"], data.get("overrides", {}))
        except KeyError as exc:
            raise ValueError(f"power law JSON is missing {exc}") from None


def series_diverges(s: PowerLawSeq) -> bool:
    """p-series test; finite overrides never change the answer."""
    return s.c > 0.0 and s.p <= 1.0


@dataclass(frozen=True)
class GaussianPerturbation:
    """Diagonal Gaussian reference measure and a mean or variance perturbation."""

    b: PowerLawSeq
    da: PowerLawSeq = field(default_factory=PowerLawSeq.zero)
    db: PowerLawSeq = field(default_factory=PowerLawSeq.zero)

    def __post_init__(self):
        if self.b.c <= 0.0:
            raise ValueError("base variances must be strictly positive (c_b > 0)")
        if any(v <= 0.0 for v in self.b.overrides.values()):
            raise ValueError("base variance overrides must be strictly positive")
        if self.b.p <= 1.0:
            # covariance must be trace class
            raise ValueError(f"base variances must be summable, need p_b > 1, got {self.b.p}")

    def to_dict(self) -> dict:
        return {"b": self.b.to_dict(), "da": self.da.to_dict(), "db": self.db.to_dict()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "GaussianPerturbation":
        if "b" not in data:
            raise ValueError("perturbation JSON needs a 'b' power law")
        zero = {"c": 0.0, "p": 0.0}
        return cls(
            PowerLawSeq.from_dict(data["b"]),
            PowerLawSeq.from_dict(data.get("da", zero)),
            PowerLawSeq.from_dict(data.get("db", zero)),
        )

    @classmethod
    def from_json(cls, text: str) -> "GaussianPerturbation":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Classification:
    """Verdict plus the decisive series ``coefficient * j**(-exponent)``.

    ``log10_coefficient`` is kept alongside ``coefficient`` because the latter
    underflows for perturbations like ``1e-100 * j**-1.5``, while the verdict
    only depends on the coefficient being positive.
    """

    verdict: Verdict
    criterion: str
    exponent: float
    coefficient: float
    log10_coefficient: float | None
    overridden_indices: tuple[int, ...] = ()

    @property
    def singular(self) -> bool:
        return self.verdict is Verdict.SINGULAR

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "criterion": self.criterion,
            "exponent": self.exponent,
            "coefficient": self.coefficient,
            "log10_coefficient": self.log10_coefficient,
            "overridden_indices": list(self.overridden_indices),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "Classification":
        return cls(
            Verdict(data["verdict"]),
            data["criterion"],
            float(data["exponent"]),
            float(data["coefficient"]),
            None if data.get("log10_coefficient") is None else float(data["log10_coefficient"]),
            tuple(int(j) for j in data.get("overridden_indices", ())),
        )


def _decide(criterion, positive, log10_coef, exponent, overridden) -> Classification:
    # positive is tracked symbolically; the float coefficient may underflow to 0
    diverges = positive and exponent <= 1.0
    if positive:
        coef = 10.0 ** log10_coef if log10_coef < 308.0 else math.inf
    else:
        coef = 0.0
    return Classification(
        Verdict.SINGULAR if diverges else Verdict.EQUIVALENT,
        criterion,
        float(exponent),
        coef,
        float(log10_coef) if positive else None,
        tuple(sorted(overridden)),
    )


def _log10(x: float) -> float:
    return math.log10(x) if x > 0 else -math.inf


def _require_single_shift(g: GaussianPerturbation):
    if not g.da.is_zero() and not g.db.is_zero():
        raise ValueError("mean shift and variance shift are classified separately; got both")


def _check_variance_shift(g: GaussianPerturbation):
    if any(v < 0.0 for v in g.db.overrides.values()):
        raise ValueError("variance shift must be nonnegative on every index")


def classify_mean_shift(g: GaussianPerturbation) -> Classification:
    """Classify via the series ``sum da_j**2 / b_j``."""
    if not g.db.is_zero():
        raise ValueError("classify_mean_shift requires a zero variance shift")
    exponent = 2.0 * g.da.p - g.b.p
    log10_coef = 2.0 * _log10(g.da.c) - _log10(g.b.c)
    overridden = set(g.da.overrides) | set(g.b.overrides)
    return _decide("mean_shift", g.da.c > 0.0, log10_coef, exponent, overridden)


def classify_variance_shift(g: GaussianPerturbation) -> Classification:
    """Classify via the series ``sum (db_j / b_j)**2``."""
    if not g.da.is_zero():
        raise ValueError("classify_variance_shift requires a zero mean shift")
    _check_variance_shift(g)
    exponent = 2.0 * (g.db.p - g.b.p)
    log10_coef = 2.0 * (_log10(g.db.c) - _log10(g.b.c))
    overridden = set(g.db.overrides) | set(g.b.overrides)
    return _decide("variance_shift", g.db.c > 0.0, log10_coef, exponent, overridden)


def classify(g: GaussianPerturbation) -> Classification:
    """Dispatch to the mean-shift or variance-shift criterion."""
    _require_single_shift(g)
    if not g.db.is_zero():
        return classify_variance_shift(g)
    return classify_mean_shift(g)


def hellinger_affinity_1d(mean1: float, var1: float, mean2: float, var2: float) -> float:
    """Hellinger affinity ``int sqrt(p q)`` of two univariate normal laws.

    Parameters
    ----------
    mean1, var1, mean2, var2 : float
        Means and (strictly positive) variances of the two normals.

    Returns
    -------
    float
        A value in ``(0, 1]``, equal to 1 iff the two laws coincide.
    """
    return math.exp(-neg_log_hellinger_affinity_1d(mean1, var1, mean2, var2))


def neg_log_hellinger_affinity_1d(mean1: float, var1: float, mean2: float, var2: float) -> float:
    """``-log`` of :func:`hellinger_affinity_1d`, evaluated without cancellation."""
    if not (var1 > 0.0 and var2 > 0.0):
        raise ValueError(f"variances must be positive, got {var1!r}, {var2!r}")
    s = var1 + var2
    mean_term = (mean1 - mean2) ** 2 / (4.0 * s)
    # 0.5*log(s / (2 sqrt(v1 v2))) = 0.25*log1p((v1 - v2)^2 / (4 v1 v2))
    var_term = 0.25 * math.log1p((var1 - var2) ** 2 / (4.0 * var1 * var2))
    return mean_term + var_term


def kakutani_classify(g: GaussianPerturbation) -> Classification:
    """Classify via divergence of ``sum_j -log A_j`` for the per-coordinate affinities.

    For a mean shift with common variance ``b_j``,
    ``-log A_j = da_j**2 / (8 b_j)`` exactly.  For a variance shift with ratio
    ``r_j = db_j / b_j``, ``-log A_j = 1/4 log(1 + r_j**2 / (4 (1 + r_j)))``,
    which behaves like ``r_j**2 / 16`` when ``r_j -> 0`` and stays bounded
    away from zero otherwise.
    """
    _require_single_shift(g)
    if not g.db.is_zero():
        _check_variance_shift(g)
        q = g.db.p - g.b.p  # decay exponent of r_j
        ratio_c = g.db.c / g.b.c
        overridden = set(g.db.overrides) | set(g.b.overrides)
        positive = g.db.c > 0.0
        if q <= 0.0 and positive:
            # r_j does not tend to zero, so the terms do not vanish
            if q == 0.0:
                limit = 0.25 * math.log1p(ratio_c ** 2 / (4.0 * (1.0 + ratio_c)))
                return _decide("kakutani", True, _log10(limit), 0.0, overridden)
            # r_j grows, -log A_j ~ 1/4 log(r_j / 4); report the constant lower bound 1/4
            return _decide("kakutani", True, _log10(0.25), 0.0, overridden)
        log10_coef = 2.0 * _log10(ratio_c) - math.log10(16.0)
        return _decide("kakutani", positive, log10_coef, 2.0 * q, overridden)

    exponent = 2.0 * g.da.p - g.b.p
    log10_coef = 2.0 * _log10(g.da.c) - _log10(g.b.c) - math.log10(8.0)
    overridden = set(g.da.overrides) | set(g.b.overrides)
    return _decide("kakutani", g.da.c > 0.0, log10_coef, exponent, overridden)


def neg_log_affinity_terms(g: GaussianPerturbation, n: int) -> np.ndarray:
    """Exact ``-log A_j`` for ``j = 1..n``, overrides included."""
    b = g.b.terms(n)
    da = g.da.terms(n)
    db = g.db.terms(n)
    if np.any(b + db <= 0):
        raise ValueError("perturbed variances must stay positive")
    return np.array(
        [neg_log_hellinger_affinity_1d(0.0, bj, daj, bj + dbj) for bj, daj, dbj in zip(b, da, db)]
    )


def criterion_terms(g: GaussianPerturbation, n: int) -> np.ndarray:
    """First ``n`` terms of the Gaussian criterion series for ``g``."""
    _require_single_shift(g)
    b = g.b.terms(n)
    if not g.db.is_zero():
        return (g.db.terms(n) / b) ** 2
    return g.da.terms(n) ** 2 / b
