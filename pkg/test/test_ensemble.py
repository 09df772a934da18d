"""Tests for the q-Racah parameters, weights, nodes and the tiling slice dictionary."""
from fractions import Fraction

import pytest

from qracah_gaps.ensemble import EnsembleParams, NodeGrid, check_structure, configuration_weight, distribution, node, phi_factors, qhahn_weight, \
    qpochhammer, sigma, tiling_case, tiling_to_ensemble, validate, weight, weight_ratio
from qracah_gaps.errors import IndexOutOfRangeError, InvalidKappaError, InvalidParamsError, NoCaseAppliesError, ZeroArgumentError
from qracah_gaps.numeric.scalars import Backend, QuadExt


def test_derived_parameters(p0, p1):
    assert p0.gamma == 256
    assert p0.u2 == Fraction(1, 64)
    assert p0.u == Fraction(1, 8)
    assert p1.gamma == 32
    assert p1.u2 == Fraction(1, 8)
    assert isinstance(p1.u, QuadExt)
    assert p1.u * p1.u == p1.u2


def test_presets_are_valid(p0, p1):
    assert not validate(p0)
    assert not validate(p1)


def test_validate_lists_violations():
    params = EnsembleParams(Fraction(1, 2), Fraction(1), Fraction(64), Fraction(1, 8), 4, 2)
    violations = validate(params)
    assert 'beta*delta < 1' in violations
    assert 'alpha >= gamma' in violations


def test_float_parameters_are_rejected():
    with pytest.raises(InvalidParamsError):
        EnsembleParams(0.25, Fraction(256), Fraction(256), Fraction(1, 1024), 3, 2)


def test_structural_errors():
    with pytest.raises(InvalidParamsError):
        NodeGrid(EnsembleParams(Fraction(3, 2), Fraction(1), Fraction(1), Fraction(0), 3, 2))
    with pytest.raises(InvalidParamsError):
        NodeGrid(EnsembleParams(Fraction(1, 2), Fraction(32), Fraction(32), Fraction(0), 0, 2))


def test_qpochhammer():
    assert qpochhammer(Fraction(1, 2), Fraction(1, 2), 0) == 1
    assert qpochhammer(Fraction(1, 2), Fraction(1, 2), 2) == Fraction(1, 2) * Fraction(3, 4)


def test_weight_ratio_matches_weights(p0, p1):
    for params in (p0, p1):
        for x in range(params.M):
            assert weight_ratio(x, params) == weight(x + 1, params) / weight(x, params)


def test_weight_outside_grid(p0):
    with pytest.raises(IndexOutOfRangeError):
        weight(p0.M + 1, p0)


def test_weight_at_zero_is_one(p0):
    assert weight(0, p0) == 1


def test_delta_zero_reduces_to_qhahn():
    params = EnsembleParams(Fraction(1, 4), Fraction(256), Fraction(256), Fraction(0), 3, 2)
    assert all(weight(x, params) == qhahn_weight(x, params) for x in range(params.M + 1))


def test_nodes_and_sigma(p0, p0_grid):
    assert p0_grid.is_ordered()
    assert node(0, p0) == 1 + p0.u2 / p0.q
    assert p0_grid.nodes[2] == sigma(Fraction(16), p0)
    with pytest.raises(ZeroArgumentError):
        sigma(0, p0)


def test_phi_factors_vanish_at_the_edges(p0):
    plus, _ = phi_factors(p0.gamma * p0.q, p0)
    _, minus = phi_factors(p0.q, p0)
    assert plus == 0
    assert minus == 0


def test_distribution_is_normalized(p0, p1):
    for params in (p0, p1):
        probabilities = distribution(params)
        assert sum(probabilities.values()) == 1
        assert all(value > 0 for value in probabilities.values())
        assert len(probabilities) == (10 if params is p1 else 6)


def test_configuration_weight_vanishes_on_collisions(p0_grid):
    assert configuration_weight((1, 1), p0_grid) == 0


def test_bigfloat_backend(p0):
    floating = p0.with_backend(Backend.BIGFLOAT)
    assert floating.backend == Backend.BIGFLOAT
    with pytest.raises(InvalidParamsError):
        floating.with_backend(Backend.RATIONAL)


@pytest.mark.parametrize('b, c, t, expected', [
    (3, 3, 0, (1, 0)),
    (3, 3, 2, (1, 0)),
    (3, 3, 3, (2, 0)),
    (3, 3, 6, (4, 3)),
    (2, 4, 0, (1, 0)),
    (2, 4, 4, (4, 2)),
    (1, 4, 3, (3, 2)),
    (2, 4, 5, (4, 3)),
    (4, 2, 2, (2, 0)),
    (4, 2, 3, (2, 0)),
])
def test_tiling_case(b, c, t, expected):
    assert tiling_case(b, c, t) == expected


@pytest.mark.parametrize('b, c, t', [(2, 3, 2), (1, 4, 1), (1, 4, 2), (3, 3, 7)])
def test_uncovered_slices(b, c, t):
    with pytest.raises(NoCaseAppliesError):
        tiling_case(b, c, t)


def test_tiling_to_ensemble_case_one():
    q, kappa2 = Fraction(1, 4), Fraction(1, 4096)
    params = tiling_to_ensemble(2, 3, 3, 1, kappa2, q)
    assert params.N == 2
    assert params.M == 2
    assert params.alpha == q ** -5
    assert params.beta == q ** -5
    assert params.delta == kappa2 * q ** -1


def test_tiling_to_ensemble_kappa_range():
    with pytest.raises(InvalidKappaError):
        tiling_to_ensemble(2, 3, 3, 1, Fraction(1, 1024), Fraction(1, 4))
    with pytest.raises(InvalidKappaError):
        tiling_to_ensemble(2, 3, 3, 1, Fraction(-1, 4096), Fraction(1, 4))


def test_node_ordering_condition():
    params = EnsembleParams(Fraction(1, 2), Fraction(32), Fraction(32), Fraction(1, 8), 4, 2)
    assert params.gamma * params.delta * params.q == 2
    assert 'gamma*delta*q < 1' in validate(params)
    with pytest.raises(InvalidParamsError, match=r'gamma\*delta\*q=2 is outside'):
        check_structure(params)
    with pytest.raises(InvalidParamsError):
        NodeGrid(params)
