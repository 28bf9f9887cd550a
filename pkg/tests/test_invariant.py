"""不变量 f(V)、精确恒等式与随机语料测试。"""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pentaflow.errors import InvalidPolygon
from pentaflow.geometry import iterate_pentagram, pentagram_map, regular_polygon
from pentaflow.invariant import (
    check_invariance,
    coefficient_product,
    convex_corpus,
    invariant_f,
    mapped_coefficient_formula,
    mapped_coefficient_identity,
    random_convex_polygon,
    ratio_transport_check,
    ratio_transport_sweep,
)


def test_hexagon_invariant():
    report = invariant_f(regular_polygon(6))
    assert report.f_coeff == pytest.approx(2.0**-12, rel=1e-12)
    assert report.f_signed == pytest.approx(2.0**-12, rel=1e-10)


def test_pentagon_invariant(pentagon):
    report = invariant_f(pentagon)
    assert report.f_coeff == pytest.approx(0.0081306, abs=1e-7)
    assert report.f_coeff == pytest.approx(((3 - math.sqrt(5)) / 2) ** 5, rel=1e-12)


@pytest.mark.parametrize("seed", range(8))
def test_signed_and_coefficient_forms_agree(seed):
    V = random_convex_polygon(6 + seed, np.random.default_rng(seed))
    report = invariant_f(V)
    assert report.relative_gap < 1e-9
    assert report.max_factor_gap() < 1e-9
    assert len(report.to_frame()) == V.n


def test_invariance_random_12gon():
    V = random_convex_polygon(12, np.random.default_rng(2024))
    assert check_invariance(V) < 1e-9


def test_invariance_over_five_iterations():
    V = random_convex_polygon(7, np.random.default_rng(7))
    f0 = coefficient_product(V)
    for image in iterate_pentagram(V, 5):
        assert abs(coefficient_product(image) / f0 - 1) < 1e-8


def test_invariant_is_similarity_invariant():
    V = random_convex_polygon(9, np.random.default_rng(9))
    angle = 0.7
    M = 3.5 * np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])
    moved = V.transform(M, np.array([4.0, -2.0]))
    assert coefficient_product(moved) == pytest.approx(coefficient_product(V), rel=1e-10)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 100_000), n=st.integers(5, 20))
def test_invariance_property(seed, n):
    V = random_convex_polygon(n, np.random.default_rng(seed))
    assert check_invariance(V) < 1e-9


@pytest.mark.slow
def test_invariance_on_corpus():
    worst = max(check_invariance(V) for V in convex_corpus(1000, n_range=(5, 20), seed=0))
    assert worst < 1e-9


@pytest.fixture(scope="module")
def corpus():
    return convex_corpus(1000, n_range=(5, 20), seed=0)


@pytest.mark.slow
def test_signed_and_coefficient_forms_agree_on_corpus(corpus):
    assert max(invariant_f(V).relative_gap for V in corpus) < 1e-10


@pytest.mark.slow
def test_identities_on_corpus(corpus):
    worst_transport = 0.0
    worst_mapped = 0.0
    for V in corpus:
        image = pentagram_map(V)
        frame = ratio_transport_sweep(V, image=image)
        worst_transport = max(worst_transport, frame["c_over_a_residual"].max(), frame["b_over_d_residual"].max())
        worst_mapped = max(worst_mapped, *(mapped_coefficient_identity(V, i, image=image) for i in range(V.n)))
    assert worst_transport < 1e-10
    assert worst_mapped < 1e-10


@pytest.mark.parametrize("seed", range(6))
def test_ratio_transport(seed):
    V = random_convex_polygon(8 + seed, np.random.default_rng(50 + seed))
    image = pentagram_map(V)
    for i in range(V.n):
        first, second = ratio_transport_check(V, i, image=image)
        assert first < 1e-10
        assert second < 1e-10


def test_ratio_transport_sweep_matches_pointwise():
    V = random_convex_polygon(10, np.random.default_rng(31))
    frame = ratio_transport_sweep(V)
    assert list(frame["i"]) == list(range(10))
    assert frame["c_over_a_residual"].max() < 1e-10
    assert frame["b_over_d_residual"].max() < 1e-10
    first, second = ratio_transport_check(V, 4)
    assert frame.loc[4, "c_over_a_residual"] == pytest.approx(first, abs=1e-12)
    assert frame.loc[4, "b_over_d_residual"] == pytest.approx(second, abs=1e-12)


@pytest.mark.parametrize("seed", range(6))
def test_mapped_coefficient_identity(seed):
    V = random_convex_polygon(7 + seed, np.random.default_rng(70 + seed))
    image = pentagram_map(V)
    for i in range(V.n):
        assert mapped_coefficient_identity(V, i, image=image) < 1e-10


def test_mapped_coefficient_formula_on_regular_polygon():
    # T 作用于正多边形仍得正多边形，B 系数不变
    V = regular_polygon(8)
    assert mapped_coefficient_formula(V, 3) == pytest.approx(1 / (4 * math.cos(math.pi / 8) ** 2), abs=1e-12)


def test_corpus_is_reproducible():
    first = [V.to_array() for V in convex_corpus(5, seed=11)]
    second = [V.to_array() for V in convex_corpus(5, seed=11)]
    for a, b in zip(first, second):
        np.testing.assert_array_equal(a, b)


def test_corpus_polygons_are_normalized_and_convex():
    for V in convex_corpus(30, n_range=(5, 12), seed=4):
        assert 5 <= V.n <= 12
        assert V.is_convex()
        assert V.orientation == 1
        arr = V.to_array()
        np.testing.assert_allclose(arr.mean(axis=0), 0.0, atol=1e-12)
        assert np.linalg.norm(arr, axis=1).max() == pytest.approx(1.0)


def test_random_polygon_rejects_small_n():
    with pytest.raises(InvalidPolygon, match="n >= 5"):
        random_convex_polygon(4, np.random.default_rng(0))
