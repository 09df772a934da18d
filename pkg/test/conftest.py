"""Shared fixtures: the two parameter presets with their node grids and orthogonal polynomial systems."""
from fractions import Fraction

import pytest

from qracah_gaps.ensemble import EnsembleParams, NodeGrid
from qracah_gaps.orthopoly import build_ops


@pytest.fixture
def p0():
    """q = 1/4, alpha = beta = 256, delta = 1/1024, M = 3, N = 2; u = 1/8 is rational."""
    return EnsembleParams(Fraction(1, 4), Fraction(256), Fraction(256), Fraction(1, 1024), 3, 2)


@pytest.fixture
def p1():
    """q = 1/2, alpha = beta = 32, delta = 1/64, M = 4, N = 2; u^2 = 1/8 needs the quadratic extension."""
    return EnsembleParams(Fraction(1, 2), Fraction(32), Fraction(32), Fraction(1, 64), 4, 2)


@pytest.fixture
def p0_grid(p0):
    return NodeGrid(p0)


@pytest.fixture
def p1_grid(p1):
    return NodeGrid(p1)


@pytest.fixture
def p0_ops(p0_grid):
    return build_ops(p0_grid)


@pytest.fixture
def p1_ops(p1_grid):
    return build_ops(p1_grid)
