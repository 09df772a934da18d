"""Tests for hexagon tilings, their weights and the slice marginals."""
from fractions import Fraction

import mpmath
import pytest

from qracah_gaps.errors import IndexOutOfRangeError, InvalidKappaError, InvariantViolationError, NoCaseAppliesError, TooLargeError
from qracah_gaps.numeric.scalars import to_bigfloat
from qracah_gaps.tiling import BoxedPlanePartition, ParticleSlice, compare_slice, enumerate_tilings, full_weight, global_factor, \
    horizontal_lozenges, macmahon_count, particles, slice_marginal, tiling_rows, tiling_weight

Q = Fraction(1, 4)
KAPPA2 = Fraction(1, 4096)


@pytest.mark.parametrize('a, b, c, count', [(1, 1, 1, 2), (2, 2, 2, 20), (2, 3, 3, 175), (1, 2, 3, 10)])
def test_counts(a, b, c, count):
    assert macmahon_count(a, b, c) == count
    tilings = enumerate_tilings(a, b, c)
    assert len(tilings) == count
    assert len(set(tilings)) == count


def test_guard():
    with pytest.raises(TooLargeError):
        enumerate_tilings(5, 5, 5)


def test_particles_at_the_ends():
    for tiling in enumerate_tilings(2, 3, 3):
        assert particles(tiling, 0).positions == (0, 1)
        assert particles(tiling, 6).positions == (3, 4)
    with pytest.raises(IndexOutOfRangeError):
        particles(enumerate_tilings(1, 1, 1)[0], 3)


def test_every_tiling_has_bc_horizontal_lozenges():
    for tiling in enumerate_tilings(2, 2, 3):
        assert sum(len(horizontal_lozenges(tiling, t)) for t in range(6)) == 6


def test_steps():
    tiling = BoxedPlanePartition([[2, 1]], 2)
    assert tiling.steps(0) == [0, 1, 0, 1]
    assert tiling.volume == 3


@pytest.mark.parametrize('t', range(7))
def test_slices_match_the_ensemble(t):
    tilings = enumerate_tilings(2, 3, 3)
    comparison = compare_slice(2, 3, 3, KAPPA2, Q, t, tilings)
    assert comparison.matches
    assert comparison.nonnegative
    assert sum(comparison.marginal.values()) == 1
    assert all(row[0] == t for row in comparison.rows())


def test_uncovered_slice():
    with pytest.raises(NoCaseAppliesError):
        compare_slice(2, 2, 3, KAPPA2, Q, 2)
    assert sum(slice_marginal(2, 2, 3, KAPPA2, Q, 2).values()) == 1


def test_weight_ratio_at_kappa_zero():
    tilings = enumerate_tilings(2, 2, 2)
    reference = tilings[0]
    for tiling in tilings:
        assert tiling_weight(tiling, 0, Q) / tiling_weight(reference, 0, Q) == Q ** (reference.volume - tiling.volume)


def test_kappa_range():
    tiling = enumerate_tilings(1, 1, 1)[0]
    with pytest.raises(InvalidKappaError):
        tiling_weight(tiling, Q, Q)
    with pytest.raises(InvalidKappaError):
        tiling_weight(tiling, Fraction(-1), Q)


def test_full_weight_is_the_lozenge_product():
    with mpmath.workprec(128):
        kappa = mpmath.sqrt(to_bigfloat(KAPPA2))
        q = to_bigfloat(Q)
        for tiling in enumerate_tilings(2, 2, 2):
            direct = mpmath.mpf(1)
            for t in range(5):
                for x in horizontal_lozenges(tiling, t):
                    exponent = mpmath.mpf(2 * x - t - 2 + 1) / 2
                    direct *= kappa * q ** exponent - q ** -exponent / kappa
            assert abs(full_weight(tiling, KAPPA2, Q) - direct) <= mpmath.mpf(2) ** -100 * abs(direct)


def test_global_factor():
    factor = global_factor(1, 1, 1)
    assert (factor.sign, factor.kappa_exponent, factor.q_exponent) == (-1, -1, Fraction(1, 2))


def test_tiling_rows():
    tilings = enumerate_tilings(1, 1, 1)
    assert tiling_rows(tilings, 0, Q) == [(0, 1, '4'), (1, 0, '1')]


class TestValidation:
    @pytest.mark.parametrize('entries, c', [([[1, 2]], 2), ([[3]], 2), ([[1], [1, 1]], 2), ([], 2), ([[1], [2]], 2)])
    def test_plane_partition(self, entries, c):
        with pytest.raises(ValueError):
            BoxedPlanePartition(entries, c)

    def test_intersecting_paths(self):
        with pytest.raises(InvariantViolationError):
            ParticleSlice(0, (1, 1))
