import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghzprob.measure import (
    DiscreteSignedMeasure,
    ProbabilityMeasure,
    jordan_decompose,
    max_event_distance,
    total_variation_norm,
    tv_distance,
)
from oracles import brute_force_event_distance

weights = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
signed_measures = st.dictionaries(st.sampled_from("abcdefghij"), weights, max_size=10).map(DiscreteSignedMeasure)


def random_probability(rng, n, labels=None):
    w = rng.exponential(size=n)
    # zero some atoms so supports differ
    w[rng.random(n) < 0.3] = 0.0
    if w.sum() == 0:
        w[0] = 1.0
    w /= w.sum()
    labels = labels or list(range(n))
    return ProbabilityMeasure(dict(zip(labels, w.tolist())))


class TestJordan:
    def test_sign_split(self):
        j = jordan_decompose(DiscreteSignedMeasure({"a": 0.3, "b": -0.7}))
        assert dict(j.positive_part.atoms) == {"a": 0.3}
        assert dict(j.negative_part.atoms) == {"b": 0.7}

    def test_positive_measure_has_empty_negative_part(self):
        j = jordan_decompose(DiscreteSignedMeasure({"a": 0.2, "b": 0.8}))
        assert len(j.negative_part) == 0

    def test_random_ten_atom_roundtrip(self):
        rng = np.random.default_rng(3)
        m = DiscreteSignedMeasure(dict(enumerate(rng.normal(size=10).tolist())))
        j = jordan_decompose(m)
        back = {k: j.positive_part[k] - j.negative_part[k] for k in range(10)}
        assert back == dict(m.atoms)

    @given(signed_measures)
    def test_invariants(self, m):
        j = jordan_decompose(m)
        assert all(v >= 0 for v in j.positive_part.atoms.values())
        assert all(v >= 0 for v in j.negative_part.atoms.values())
        assert not j.positive_part.support() & j.negative_part.support()
        for k in m:
            assert abs(j.recompose()[k] - m[k]) <= 1e-15


class TestNorms:
    def test_probability_has_unit_norm(self):
        assert total_variation_norm(ProbabilityMeasure({"x": 0.25, "y": 0.75})) == 1.0

    def test_signed_norm(self):
        assert total_variation_norm(DiscreteSignedMeasure({"a": 0.3, "b": -0.7})) == pytest.approx(1.0, abs=1e-15)

    def test_four_points_shifted_by_a_tenth(self):
        p = ProbabilityMeasure({0: 0.25, 1: 0.25, 2: 0.25, 3: 0.25})
        q = ProbabilityMeasure({0: 0.35, 1: 0.15, 2: 0.35, 3: 0.15})
        assert total_variation_norm(p - q) == pytest.approx(0.4, abs=1e-12)
        assert tv_distance(p, q) == pytest.approx(0.4, abs=1e-12)

    def test_identity(self):
        p = ProbabilityMeasure({"a": 0.5, "b": 0.5})
        assert tv_distance(p, p) == 0.0

    def test_disjoint_probabilities_are_two_apart(self):
        assert tv_distance(ProbabilityMeasure({"a": 1.0}), ProbabilityMeasure({"b": 0.5, "c": 0.5})) == 2.0

    def test_union_of_label_sets(self):
        p = DiscreteSignedMeasure({"a": 1.0})
        q = DiscreteSignedMeasure({"b": -1.0})
        assert tv_distance(p, q) == 2.0

    @given(signed_measures, st.floats(min_value=-100, max_value=100, allow_nan=False))
    def test_homogeneity(self, m, alpha):
        assert total_variation_norm(m.scale(alpha)) == pytest.approx(
            abs(alpha) * total_variation_norm(m), rel=1e-12, abs=1e-12
        )

    @given(signed_measures, signed_measures, signed_measures)
    def test_metric_axioms(self, p, q, r):
        assert tv_distance(p, q) == tv_distance(q, p)
        assert tv_distance(p, q) >= 0
        assert tv_distance(p, r) <= tv_distance(p, q) + tv_distance(q, r) + 1e-12


class TestMaxEventDistance:
    def test_equal(self):
        p = ProbabilityMeasure({"a": 0.3, "b": 0.7})
        assert max_event_distance(p, p) == 0.0

    def test_disjoint(self):
        assert max_event_distance(ProbabilityMeasure({"a": 1.0}), ProbabilityMeasure({"b": 1.0})) == 1.0

    def test_matches_enumeration_on_six_points(self):
        rng = np.random.default_rng(11)
        p, q = random_probability(rng, 6), random_probability(rng, 6)
        assert max_event_distance(p, q) == pytest.approx(
            brute_force_event_distance(dict(p.atoms), dict(q.atoms)), abs=1e-12
        )

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=2**32 - 1))
    def test_half_of_tv(self, n, seed):
        rng = np.random.default_rng(seed)
        p, q = random_probability(rng, n), random_probability(rng, n)
        brute = brute_force_event_distance(dict(p.atoms), dict(q.atoms))
        assert tv_distance(p, q) == pytest.approx(2 * brute, abs=1e-12)

    def test_rejects_signed_input(self):
        with pytest.raises(ValueError):
            max_event_distance(DiscreteSignedMeasure({"a": -1.0, "b": 2.0}), ProbabilityMeasure({"a": 1.0}))


class TestValidation:
    def test_nonfinite_weight(self):
        with pytest.raises(ValueError):
            DiscreteSignedMeasure({"a": math.inf})

    @pytest.mark.parametrize("atoms", [{"a": 0.5}, {"a": 1.5, "b": -0.5}])
    def test_probability_requirements(self, atoms):
        with pytest.raises(ValueError):
            ProbabilityMeasure(atoms)

    def test_probability_tolerance(self):
        ProbabilityMeasure({"a": 0.5, "b": 0.5 + 5e-13})

    def test_json_roundtrip(self):
        m = DiscreteSignedMeasure({"a": 0.1, "b": -2.5})
        text = m.to_json()
        assert json.loads(text) == {"atoms": {"a": 0.1, "b": -2.5}}
        assert DiscreteSignedMeasure.from_json(text) == m

    def test_immutable(self):
        m = DiscreteSignedMeasure({"a": 1.0})
        with pytest.raises(TypeError):
            m.atoms["a"] = 2.0
