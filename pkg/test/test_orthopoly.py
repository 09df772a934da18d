"""Tests for the orthogonal polynomial systems and the Christoffel-Darboux kernel."""
from fractions import Fraction

import mpmath
import pytest

from qracah_gaps.ensemble import EnsembleParams
from qracah_gaps.errors import DegenerateWeightError, IndexOutOfRangeError, InvalidParamsError
from qracah_gaps.numeric.scalars import to_bigfloat
from qracah_gaps.orthopoly import build_ops, build_ops_from, cd_kernel, cd_kernel_two_point, cn_closed_form, gram_schmidt, kernel_matrix


@pytest.mark.parametrize('name', ['p0', 'p1'])
def test_polynomials_are_orthogonal(name, request):
    ops = build_ops(request.getfixturevalue(f'{name}_grid'))
    assert ops.degree == len(ops.nodes) - 1
    for i, first in enumerate(ops.polynomials):
        assert first.lead == 1
        assert first.degree == i
        for j, second in enumerate(ops.polynomials):
            value = ops.inner(first, second)
            assert value == (ops.norms[i] if i == j else 0)


def test_recurrence_matches_gram_schmidt(p0_grid, p0_ops):
    assert gram_schmidt(p0_grid, p0_ops.degree) == p0_ops.polynomials


def test_restricted_weight(p1_grid):
    ops = build_ops(p1_grid, 3)
    assert len(ops.nodes) == 3
    assert ops.degree == 2


def test_moments(p0_ops):
    assert p0_ops.moments[0] == sum(p0_ops.weights)
    assert p0_ops.norms[0] == p0_ops.moments[0]


def test_degenerate_weight():
    with pytest.raises(DegenerateWeightError):
        build_ops_from([Fraction(1), Fraction(2)], [Fraction(0), Fraction(0)])


def test_kernel_two_point_formula(p0_ops, p1_ops):
    for ops in (p0_ops, p1_ops):
        for x in range(len(ops.nodes)):
            for y in range(len(ops.nodes)):
                if x != y:
                    assert cd_kernel(ops, 2, x, y) == cd_kernel_two_point(ops, 2, x, y)


def test_kernel_trace_is_particle_number(p1_ops):
    matrix = kernel_matrix(p1_ops, 2)
    assert sum(matrix[x][x] for x in range(len(matrix))) == 2


def test_kernel_index_out_of_range(p0_ops):
    with pytest.raises(IndexOutOfRangeError):
        cd_kernel(p0_ops, 2, 0, len(p0_ops.nodes))
    with pytest.raises(ValueError):
        cd_kernel_two_point(p0_ops, 2, 1, 1)


@pytest.mark.parametrize('degree', [0, 1])
def test_closed_form_norm(p0, p0_ops, degree):
    with mpmath.workprec(128):
        closed = cn_closed_form(p0, degree)
        exact = to_bigfloat(p0_ops.norms[degree])
        assert abs(closed - exact) <= mpmath.mpf(2) ** -80 * abs(exact)


def test_closed_form_needs_delta():
    params = EnsembleParams(Fraction(1, 4), Fraction(256), Fraction(256), Fraction(0), 3, 2)
    with pytest.raises(InvalidParamsError):
        cn_closed_form(params, 0)
