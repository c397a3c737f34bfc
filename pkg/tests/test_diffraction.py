"""Autocorrelation, finite volume spectra, and concentration diagnostics."""

import cmath
import math
import random
from fractions import Fraction

import pytest

from dyadelone.balls import transversal
from dyadelone.diffraction import (
    almost_period_defect,
    autocorr,
    pp_mass,
    randomized_control,
    residues,
    spectrum,
)
from dyadelone.dyadic import ZERO, from_int, normalize
from dyadelone.pointset import point_set, random_well_placed


def _xi(a):
    return point_set(transversal(a), scale=a)


def _d(num, den_exp):
    return normalize(num, den_exp)


def test_autocorr_two_point_set():
    S = point_set([ZERO, _d(1, 1)])
    ac = autocorr(S, 1)
    coeffs = {str(g): v for g, v in ac.coeffs.items()}
    assert coeffs == {"0": Fraction(1), "1/2": Fraction(1, 2), "-1/2": Fraction(1, 2)}


def test_autocorr_multiplicity_free():
    S = point_set([ZERO, _d(1, 1)])
    ac = autocorr(S, 1, multiplicity=False)
    coeffs = {str(g): v for g, v in ac.coeffs.items()}
    assert coeffs == {
        "0": Fraction(1, 2),
        "1/2": Fraction(1, 2),
        "-1/2": Fraction(1, 2),
    }


def test_autocorr_total_mass():
    rng = random.Random(31)
    for _ in range(10):
        a = rng.randrange(1, 5)
        S = random_well_placed(a, rng)
        ac = autocorr(S, a)
        assert sum(ac.coeffs.values()) == Fraction(len(S) ** 2, 1 << a)
        assert ac.coeffs[ZERO] == Fraction(len(S), 1 << a)


def test_autocorr_outside_ball_rejected():
    S = point_set([ZERO, from_int(1)])
    with pytest.raises(ValueError):
        autocorr(S, -1)


def test_spectrum_single_point_is_flat():
    spec = spectrum(point_set([ZERO]), 0, 2)
    assert list(spec.intensities) == [1.0, 1.0, 1.0, 1.0]
    assert pp_mass(spec, 1) == pytest.approx(0.25)


def test_spectrum_transversal_frozen():
    spec = spectrum(_xi(2), 2, 1)
    rt2 = math.sqrt(2)
    expected = [
        4.0,
        (2 + rt2) / 2,
        0.0,
        (2 - rt2) / 2,
        0.0,
        (2 - rt2) / 2,
        0.0,
        (2 + rt2) / 2,
    ]
    assert list(spec.intensities) == pytest.approx(expected, abs=1e-12)
    assert pp_mass(spec, 1) == pytest.approx(0.5)
    spec0 = spectrum(_xi(2), 2, 0)
    assert list(spec0.intensities) == pytest.approx([4.0, 0.0, 0.0, 0.0], abs=1e-12)
    assert pp_mass(spec0, 1) == pytest.approx(1.0)


def _oracle_intensities(a, M):
    # closed form geometric sum for the full transversal of A_a
    L = 1 << (a + M)
    N = 1 << a
    out = []
    for kk in range(L):
        if kk == 0:
            out.append(float(N * N))
        elif kk % (1 << M) == 0:
            out.append(0.0)
        else:
            z = cmath.exp(-2j * math.pi * kk / L)
            out.append(abs((1 - z**N) / (1 - z)) ** 2)
    return [v / N for v in out]


def test_spectrum_matches_geometric_sum():
    for a in range(1, 5):
        for M in range(0, 3):
            spec = spectrum(_xi(a), a, M)
            expected = _oracle_intensities(a, M)
            assert list(spec.intensities) == pytest.approx(expected, abs=1e-10)


def test_spectrum_parseval():
    rng = random.Random(43)
    for _ in range(30):
        a = rng.randrange(1, 6)
        M = rng.randrange(0, 4)
        S = random_well_placed(a, rng, spread=1 << M, include_zero=False)
        spec = spectrum(S, a, M)
        total = math.fsum(spec.intensities)
        expected = (1 << (a + M)) * len(S) / (1 << a)
        assert total == pytest.approx(expected, rel=1e-12)


def test_spectrum_collision_rejected():
    S = point_set([ZERO, from_int(4)])
    with pytest.raises(ValueError, match="not separated at resolution"):
        spectrum(S, 1, 1)


def test_spectrum_argument_validation():
    with pytest.raises(ValueError):
        spectrum(point_set([]), 2, 1)
    with pytest.raises(ValueError):
        spectrum(_xi(2), 2, -1)


def test_pp_mass_validation():
    spec = spectrum(_xi(2), 2, 1)
    with pytest.raises(ValueError):
        pp_mass(spec, 0)
    with pytest.raises(ValueError):
        pp_mass(spec, len(spec.intensities) + 1)
    assert pp_mass(spec, len(spec.intensities)) == pytest.approx(1.0)


def test_almost_period_defect_frozen():
    S = _xi(2)
    q = _d(1, 2)
    assert almost_period_defect(S, q, 2) == Fraction(1, 2)
    assert almost_period_defect(S, q, 0) == 0
    assert almost_period_defect(S, ZERO, 5) == 0


def test_almost_period_defect_deep_shift_is_invisible():
    rng = random.Random(47)
    for _ in range(10):
        a = rng.randrange(2, 5)
        S = random_well_placed(a, rng)
        k = rng.randrange(0, 4)
        g = normalize(rng.randrange(1, 8) << k, 0)
        # g is divisible by 2**k, hence lies in V_k
        assert almost_period_defect(S, g, k) == 0


def test_almost_period_defect_validation():
    S = _xi(2)
    with pytest.raises(ValueError, match="outside"):
        almost_period_defect(S, _d(1, 3), 2)
    unscaled = point_set(list(S))
    with pytest.raises(ValueError):
        almost_period_defect(unscaled, ZERO, 1)


def test_randomized_control_properties():
    S = _xi(3)
    rng = random.Random(51)
    C = randomized_control(S, 3, 2, rng)
    assert len(C) == len(S)
    # the control keeps each base residue, it only rolls the deep lift
    assert sorted(r % (1 << 3) for r in residues(C, 3, 2)) == sorted(
        r % (1 << 3) for r in residues(S, 3, 2)
    )
    spec = spectrum(C, 3, 2)
    assert math.fsum(spec.intensities) == pytest.approx(
        (1 << 5) * len(C) / (1 << 3), rel=1e-12
    )


def test_randomized_control_collision_rejected():
    S = point_set([ZERO, from_int(1)])
    with pytest.raises(ValueError, match="control requires"):
        randomized_control(S, 0, 2, random.Random(1))


def test_control_mass_less_concentrated_on_average():
    # not guaranteed for single draws, so average over seeds
    S = _xi(4)
    spec = spectrum(S, 4, 2)
    base = pp_mass(spec, 1 << 4)
    worse = 0
    for seed in range(12):
        C = randomized_control(S, 4, 2, random.Random(seed))
        if pp_mass(spectrum(C, 4, 2), 1 << 4) < base:
            worse += 1
    assert worse >= 9
