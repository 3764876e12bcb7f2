import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from resolvent_bounds import bounds
from resolvent_bounds import matrix_ops as mo
from resolvent_bounds.errors import DomainError, InvalidInputError, SingularityError
from resolvent_bounds.spectrum import Spectrum

from conftest import brute_power_sup, np_norm, random_points

GOLDEN = (1 + math.sqrt(5)) / 2


def jordan2(coupling=1.0, p=2):
    return mo.from_spectrum(Spectrum.zeros(2), "jordan", p, coupling=coupling)


# --- construction -------------------------------------------------------------


def test_diagonal_one_by_one():
    T = mo.from_spectrum(Spectrum([0.5]), "diagonal")
    np.testing.assert_array_equal(T.entries, [[0.5]])


def test_nilpotent_jordan_block():
    np.testing.assert_array_equal(jordan2().entries, [[0, 1], [0, 0]])


def test_similarity_spectrum_residual():
    T = mo.from_spectrum(Spectrum([0.3, -0.3]), "similarity", conditioning=10.0, seed=7)
    assert np.max(mo.spectrum_residuals(T)) <= 1e-10
    # independent check: characteristic polynomial z^2 - 0.09
    np.testing.assert_allclose(np.poly(T.entries), [1, 0, -0.09], atol=1e-12)
    s = np.linalg.svd(T.similarity, compute_uv=False)
    assert s[0] / s[-1] == pytest.approx(10.0, rel=1e-12)


def test_unknown_structure_and_bad_norm():
    with pytest.raises(InvalidInputError):
        mo.from_spectrum(Spectrum([0.1]), "banded")
    with pytest.raises(InvalidInputError):
        mo.parse_norm_kind(3)
    assert mo.parse_norm_kind("inf") == math.inf


def test_operator_norms_match_numpy(rng):
    m = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    for p in mo.NORM_KINDS:
        assert mo.operator_norm(m, p) == pytest.approx(np_norm(m, p), rel=1e-13)


def test_matrix_is_immutable():
    T = jordan2()
    with pytest.raises(ValueError):
        T.entries[0, 0] = 1.0


# --- power_bound --------------------------------------------------------------


def test_power_bound_scalar():
    pb = mo.power_bound(mo.from_spectrum(Spectrum([0.5]), "diagonal"))
    assert pb.value == 1.0 and pb.k_max == 0 and pb.certified


def test_power_bound_nilpotent_jordan():
    pb = mo.power_bound(jordan2())
    assert pb.value == 1.0 and pb.certified


def test_power_bound_scaled_jordan():
    pb = mo.power_bound(jordan2(4.0))
    assert pb.value == pytest.approx(4.0, rel=1e-15)
    assert pb.k_max == 1 and pb.certified


def test_power_bound_similarity_envelope(rng):
    for _ in range(10):
        sigma = Spectrum(random_points(rng, 4))
        for p in mo.NORM_KINDS:
            T = mo.from_spectrum(sigma, "similarity", p, conditioning=30.0, seed=int(rng.integers(1000)))
            pb = mo.power_bound(T)
            assert pb.certified
            assert pb.value == pytest.approx(brute_power_sup(T.entries, p), rel=1e-12)


def test_power_bound_matches_brute_force(rng):
    for _ in range(20):
        n = int(rng.integers(1, 6))
        T = mo.from_spectrum(Spectrum(random_points(rng, n)), "jordan", 2, coupling=rng.uniform(0, 2))
        pb = mo.power_bound(T)
        assert pb.value == pytest.approx(brute_power_sup(T.entries, 2, 2000), rel=1e-10)


def test_power_bound_near_unit_circle():
    T = mo.from_spectrum(Spectrum([0.99, 0.98], modulus_cap=0.995), "jordan", coupling=0.5)
    pb = mo.power_bound(T)
    assert pb.value == pytest.approx(brute_power_sup(T.entries, 2, 5000), rel=1e-10)


# --- resolvent ----------------------------------------------------------------


def test_resolvent_norm_zero_matrix():
    T = mo.from_spectrum(Spectrum([0.0]), "diagonal")
    assert mo.resolvent_norm(T, 2.0) == 0.5


def test_resolvent_norm_jordan_golden_ratio():
    assert abs(mo.resolvent_norm(jordan2(), 1.0) - GOLDEN) < 1e-9
    # oracle: singular values of (I - J)^-1 = [[1, 1], [0, 1]]
    assert abs(np.linalg.svd([[1, 1], [0, 1]], compute_uv=False)[0] - GOLDEN) < 1e-15


def test_resolvent_norm_normal():
    T = mo.from_spectrum(Spectrum([0.5, -0.5]), "diagonal")
    assert abs(mo.resolvent_norm(T, 1.0) - 2.0) < 1e-15


def test_resolvent_at_eigenvalue():
    T = mo.from_spectrum(Spectrum([0.5]), "diagonal")
    with pytest.raises(SingularityError):
        mo.resolvent(T, 0.5)


def test_batched_resolvent_norms_match_single(rng):
    T = mo.from_spectrum(Spectrum(random_points(rng, 4)), "similarity", math.inf, conditioning=5.0, seed=3)
    lams = np.exp(1j * np.linspace(0, 6, 7))
    single = [np_norm(np.linalg.inv(l * np.eye(4) - T.entries), math.inf) for l in lams]
    np.testing.assert_allclose(mo.resolvent_norms(T, lams), single, rtol=1e-12)


def test_spectral_distance_examples():
    assert mo.spectral_distance(1.0, Spectrum([0.5])) == 0.5
    assert mo.spectral_distance(1.0, Spectrum([0.0, 0.9])) == pytest.approx(0.1)
    assert mo.spectral_distance(1j, Spectrum([0.5, -0.5])) == pytest.approx(1.1180339887, abs=1e-9)


# --- boundary reduction -------------------------------------------------------


def test_boundary_reduce_scalar():
    T = mo.from_spectrum(Spectrum([0.5]), "diagonal")
    red = mo.boundary_reduce(2.0, T)
    assert red.lambda_star == 1.0 and red.rho == 2.0
    np.testing.assert_array_equal(red.T_star.entries, [[0.25]])


def test_boundary_reduce_rejects_circle():
    with pytest.raises(DomainError):
        mo.boundary_reduce(1.0, jordan2())


def _identities(lam, T):
    red = mo.boundary_reduce(lam, T)
    d = mo.spectral_distance(lam, T.spectrum)
    d_star = mo.spectral_distance(red.lambda_star, red.T_star.spectrum)
    r = np.linalg.inv(lam * np.eye(T.n) - T.entries)
    r_star = np.linalg.inv(red.lambda_star * np.eye(T.n) - red.T_star.entries)
    return abs(red.rho * d_star - d), np.max(np.abs(r_star / red.rho - r))


def test_scaling_identities_example():
    T = mo.from_spectrum(Spectrum([0.3, -0.4j]), "jordan", coupling=0.7)
    e1, e2 = _identities(1.5 * np.exp(1j * math.pi / 3), T)
    assert e1 < 1e-14 and e2 < 1e-12


@given(st.integers(1, 6), st.integers(0, 2**32 - 1), st.floats(1.0001, 4.0), st.floats(0, 2 * math.pi))
def test_scaling_identities_property(n, seed, radius, angle):
    rng = np.random.default_rng(seed)
    T = mo.from_spectrum(Spectrum(random_points(rng, n)), "similarity", conditioning=rng.uniform(1, 50), seed=seed)
    e1, e2 = _identities(radius * np.exp(1j * angle), T)
    assert e1 < 1e-12 and e2 < 1e-12


# --- ratio --------------------------------------------------------------------


def test_ratio_normal_is_one(rng):
    for _ in range(20):
        T = mo.from_spectrum(Spectrum(random_points(rng, 5)), "diagonal")
        lam = np.exp(2j * math.pi * rng.uniform())
        assert abs(mo.resolvent_ratio(T, lam) - 1.0) < 1e-12


def test_ratio_jordan():
    assert abs(mo.resolvent_ratio(jordan2(), 1.0) - GOLDEN) < 1e-9


def test_trivial_resolvent_bound(rng):
    for _ in range(50):
        n = int(rng.integers(1, 6))
        T = mo.from_spectrum(Spectrum(random_points(rng, n)), "jordan", int(rng.choice([1, 2])), coupling=rng.uniform(0, 2))
        C = mo.power_bound(T).value
        lam = rng.uniform(1.01, 4) * np.exp(2j * math.pi * rng.uniform())
        assert mo.resolvent_norm(T, lam) <= C / (abs(lam) - 1) + 1e-10


@given(st.integers(1, 8), st.integers(0, 2**32 - 1), st.sampled_from(["diagonal", "jordan", "similarity"]), st.sampled_from([1, 2, math.inf]))
def test_ratio_below_theorem_bound(n, seed, family, p):
    rng = np.random.default_rng(seed)
    T = mo.from_spectrum(Spectrum(random_points(rng, n)), family, p, coupling=rng.uniform(0, 2), conditioning=rng.uniform(1, 100), seed=seed)
    pb = mo.power_bound(T)
    lams = np.exp(2j * np.pi * np.arange(256) / 256)
    if pb.certified:
        assert np.max(mo.ratios(T, lams, pb)) <= bounds.theorem_bound(n) + 1e-6


def test_residual_scaling_for_large_coupling():
    T = mo.from_spectrum(Spectrum([0.2, -0.1, 0.05j]), "jordan", coupling=5.0)
    assert np.max(mo.spectrum_residuals(T)) <= 1e-8
