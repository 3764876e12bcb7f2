import math

import mpmath
import numpy as np
import pytest

from resolvent_bounds import bounds
from resolvent_bounds.errors import DomainError

mpmath.mp.dps = 40

K = float(5 * mpmath.pi / 3 + 2 * mpmath.sqrt(2))


def test_theorem_bound_values():
    assert abs(bounds.theorem_bound(1, 1.0) - 8.0644149) < 1e-6
    assert bounds.theorem_bound(1) == pytest.approx(K, rel=1e-15)
    assert bounds.theorem_bound(4) == pytest.approx(8 * K, rel=1e-15)
    assert bounds.theorem_bound(1, 3.0) == pytest.approx(3 * K, rel=1e-15)
    assert abs(bounds.theorem_bound(4) - 64.5153) < 1e-4


def test_theorem_bound_linear_in_C():
    for n in range(1, 20):
        for C in (1.0, 2.5, 7.0):
            assert bounds.theorem_bound(n, C) == C * bounds.theorem_bound(n, 1.0)


def test_theorem_bound_rejects_bad_inputs():
    with pytest.raises(DomainError):
        bounds.theorem_bound(0)
    with pytest.raises(DomainError):
        bounds.theorem_bound(2, 0.5)


def test_asymptotic_bound():
    assert bounds.asymptotic_bound(1) == pytest.approx(5.2359878, abs=1e-7)
    assert bounds.asymptotic_bound(1, 2.0) == pytest.approx(2 * 5 * math.pi / 3, rel=1e-15)
    for n in (1, 7, 100):
        assert bounds.asymptotic_bound(n) / bounds.theorem_bound(n) == pytest.approx(0.6493, abs=1e-4)


def test_classical_bound():
    assert bounds.classical_bound(1, 1.0, 1.0) == pytest.approx(5.1961524, abs=1e-7)
    assert bounds.classical_bound(1, 1.0, 3.0) == pytest.approx(1.0, rel=1e-15)


def test_crossover():
    ref = float((3 * mpmath.sqrt(3) / (5 * mpmath.pi / 3 + 2 * mpmath.sqrt(2))) ** 2)
    assert bounds.crossover_distance() == pytest.approx(ref, rel=1e-14)
    assert abs(bounds.crossover_distance() - 0.4151) < 1e-4


def test_crossover_sides_on_grid():
    for n in (1, 3, 8):
        for d in np.linspace(0.01, 0.415, 60):
            assert bounds.theorem_beats_classical(n, 1.0, d)
        for d in np.linspace(0.4152, 2.0, 60):
            assert not bounds.theorem_beats_classical(n, 1.0, d)


def test_hilbert_reference():
    assert bounds.hilbert_reference(1) == pytest.approx(1.0, rel=1e-15)
    assert bounds.hilbert_reference(2) == pytest.approx(1 + math.sqrt(2), rel=1e-15)
    vals = [bounds.hilbert_reference(n) for n in range(1, 101)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    assert vals[-1] / (400 / math.pi) == pytest.approx(1.0, abs=1e-4)


def test_contraction_linear_bound():
    assert bounds.contraction_linear_bound(0.0) == 1.0
    assert bounds.contraction_regime_applies(0.0)
    assert bounds.contraction_linear_bound(0.3) == 1.3
    assert not bounds.contraction_regime_applies(0.3)
    assert bounds.contraction_linear_bound(1 - 1e-15) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        bounds.contraction_linear_bound(1.0)


def test_lower_reference():
    assert bounds.lower_reference(1) == pytest.approx(1.2440169358562925, rel=1e-15)
    assert bounds.lower_reference(3) == pytest.approx(2 + math.sqrt(3), rel=1e-15)
    n = np.unique(np.geomspace(1, 1e6, 2000).astype(int))
    assert np.all(n * (2 + math.sqrt(3)) / 3 < K * n**1.5)
    for m in (1, 10, 1000, 10**6):
        assert bounds.lower_reference(m) < bounds.theorem_bound(m)


def test_finite_certificate():
    assert bounds.finite_certificate(2, 0.5) == pytest.approx(5 * math.pi / 3 * 2**1.5 / 0.5 + 4)


def test_table_layout_and_values():
    rows = bounds.bound_table(range(1, 4))
    assert tuple(rows[0]) == bounds.TABLE_HEADER
    r = rows[0]
    assert r["zarouf"] == pytest.approx(8.0644149, abs=1e-7)
    assert r["ds_1"] == pytest.approx(5.1961524, abs=1e-7)
    assert r["hilbert_ref"] == pytest.approx(1.0)
    assert r["lower_ref"] == pytest.approx(1.2440169, abs=1e-7)
    for row in rows:
        d = bounds.crossover_distance()
        assert abs(row["zarouf"] / d - row["ds_crossover"]) <= 0.005 * row["ds_crossover"]
