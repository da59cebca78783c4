"""Densities, rejection sampling, and seeded reproducibility."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from locmst.geometry import Rect
from locmst.sampling import (
    Density,
    PointSet,
    derive_rng,
    sample_binomial,
    sample_poisson,
)


def make_two_level_density() -> Density:
    # mass 0.75 on the left half, 0.25 on the right
    return Density(
        background=0.5, rects=((Rect(0.0, 0.0, 0.5, 1.0), 1.5),)
    )


class TestDensity:
    def test_uniform(self):
        d = Density.uniform()
        assert d.integral_over(Rect(0, 0, 1, 1)) == pytest.approx(1.0)
        assert d.eps1 == d.eps2 == 1.0

    def test_piecewise_integral(self):
        d = make_two_level_density()
        assert d.integral_over(Rect(0, 0, 1, 1)) == pytest.approx(1.0)
        assert d.integral_over(Rect(0.0, 0.0, 0.5, 1.0)) == pytest.approx(0.75)
        assert d.integral_over(Rect(0.25, 0.0, 0.75, 1.0)) == pytest.approx(0.5)
        assert d.eps1 == 0.5 and d.eps2 == 1.5

    def test_values_match_value(self):
        d = make_two_level_density()
        pts = np.array([[0.1, 0.5], [0.9, 0.5], [0.499, 0.0]])
        vec = d.values(pts)
        for k in range(len(pts)):
            assert vec[k] == d.value(pts[k, 0], pts[k, 1])

    def test_must_integrate_to_one(self):
        with pytest.raises(ValueError):
            Density(background=0.9, rects=())

    def test_rejects_overlapping_rects(self):
        with pytest.raises(ValueError):
            Density(
                background=1.0,
                rects=(
                    (Rect(0.0, 0.0, 0.6, 1.0), 1.2),
                    (Rect(0.5, 0.0, 1.0, 1.0), 0.7),
                ),
            )

    def test_rejects_nonpositive_floor(self):
        with pytest.raises(ValueError):
            Density(background=2.0, rects=((Rect(0, 0, 0.5, 1.0), 0.0),))


def test_binomial_reproducible_and_in_domain():
    d = Density.uniform()
    a = sample_binomial(200, d, seed=42)
    b = sample_binomial(200, d, seed=42)
    c = sample_binomial(200, d, seed=43)
    np.testing.assert_array_equal(a.coords, b.coords)
    assert not np.array_equal(a.coords, c.coords)
    assert a.n == 200 and a.process == "binomial"
    assert (a.coords >= 0.0).all() and (a.coords < 1.0).all()


def test_key_splits_the_stream():
    d = Density.uniform()
    a = sample_binomial(50, d, seed=7, key=(0,))
    b = sample_binomial(50, d, seed=7, key=(1,))
    assert not np.array_equal(a.coords, b.coords)
    again = sample_binomial(50, d, seed=7, key=(1,))
    np.testing.assert_array_equal(b.coords, again.coords)


def test_rejection_respects_the_density():
    # left half carries probability 3/4; with n=40000 the observed
    # fraction should sit within five standard deviations (~0.011)
    d = make_two_level_density()
    ps = sample_binomial(40_000, d, seed=11)
    frac = float((ps.coords[:, 0] < 0.5).mean())
    assert abs(frac - 0.75) < 5 * np.sqrt(0.75 * 0.25 / 40_000)


def test_poisson_count_statistics():
    d = Density.uniform()
    counts = [sample_poisson(100, d, seed=5, key=(k,)).n for k in range(60)]
    mean = float(np.mean(counts))
    # mean 100, sd 10, standard error 10/sqrt(60) ~ 1.3
    assert abs(mean - 100.0) < 6.5
    assert len(set(counts)) > 1


def test_poisson_thinning_consistency():
    """A Poisson process restricted to a subregion is Poisson with the
    restricted mass; check mean and variance moments jointly."""
    d = Density.uniform()
    region_counts = []
    for k in range(200):
        ps = sample_poisson(60, d, seed=23, key=(k,))
        inside = (ps.coords[:, 0] < 0.25).sum()
        region_counts.append(int(inside))
    lam = 60 * 0.25
    mean = float(np.mean(region_counts))
    var = float(np.var(region_counts, ddof=1))
    assert abs(mean - lam) < 5 * np.sqrt(lam / 200)
    # variance of the sample variance of Poisson(15) over 200 draws:
    # roughly lam*sqrt(2/199) ~ 1.5; allow five of those
    assert abs(var - lam) < 7.5


def test_empty_and_invalid_requests():
    d = Density.uniform()
    assert sample_binomial(0, d, seed=0).coords.shape == (0, 2)
    with pytest.raises(ValueError):
        sample_binomial(-1, d, seed=0)
    with pytest.raises(ValueError):
        sample_poisson(-0.5, d, seed=0)


def test_point_set_shape_validation():
    with pytest.raises(ValueError):
        PointSet(np.zeros((3, 3)))
    ps = PointSet(np.zeros((0, 2)))
    assert ps.n == 0


@given(seed=st.integers(min_value=0, max_value=2**31), key=st.integers(0, 99))
@settings(max_examples=25)
def test_derive_rng_is_deterministic(seed, key):
    x = derive_rng(seed, key).random(4)
    y = derive_rng(seed, key).random(4)
    np.testing.assert_array_equal(x, y)
