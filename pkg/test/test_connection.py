"""Tests for the connection matrices, their isomonodromic steps and the double ratio recursion."""
from fractions import Fraction

import pytest

from qracah_gaps.connection import ConnectionMatrix, TransitionTriple, advance_triple, asymptotic_d, asymptotic_limit, b21_sum, build_AN, \
    build_As_from_m, connection_gap_table, extract_triple, gap_double_ratio, in_residue_image, isomonodromy_step, iterate_connection, pole_parameters
from qracah_gaps.drhp import advance_m, build_mN, direct_m, solve_T
from qracah_gaps.ensemble import EnsembleParams
from qracah_gaps.errors import InvalidParamsError, InvariantViolationError, ZeroDeterminantError
from qracah_gaps.numeric.matrix import Mat2
from qracah_gaps.numeric.poly import Poly
from qracah_gaps.numeric.ratfunc import RatFunc
from qracah_gaps.oracle import enumerate_gap_table


@pytest.mark.parametrize('name', ['p0', 'p1'])
def test_connection_table_matches_enumeration(name, request):
    params = request.getfixturevalue(name)
    assert connection_gap_table(params).values == enumerate_gap_table(params).values


def test_pole_parameters(p0):
    q = p0.q
    assert pole_parameters(p0, 2) == (1 / q, 1 / q, q, p0.alpha * q, p0.delta * q, p0.beta * p0.delta * q)


@pytest.mark.parametrize('name', ['p0', 'p1'])
def test_initial_matrix_structure(name, request):
    params = request.getfixturevalue(name)
    matrix = build_AN(params)
    matrix.check()
    assert matrix.s == params.N
    assert matrix.b.e12.is_zero()
    assert matrix.value_at_u() == Mat2.identity()
    assert matrix.b.det() == matrix.Q * matrix.P


def test_b21_residue_sum(p0):
    assert b21_sum(p0) == RatFunc.from_poly(build_AN(p0).b.e21)


@pytest.mark.parametrize('name', ['p0', 'p1'])
def test_isomonodromic_matrices_match_direct_construction(name, request):
    params = request.getfixturevalue(name)
    grid = request.getfixturevalue(f'{name}_grid')
    seen = []
    for matrix, triple in iterate_connection(params):
        assert matrix == build_As_from_m(direct_m(grid, params.N, matrix.s), params)
        assert in_residue_image(matrix, triple.v)
        seen.append(matrix.s)
    assert seen == list(range(params.N, params.M + 1))


def test_isomonodromy_step(p0, p0_grid):
    matrix = build_AN(p0)
    triple = extract_triple(matrix)
    following = isomonodromy_step(matrix, triple.jump())
    assert following.s == p0.N + 1
    assert following == build_As_from_m(direct_m(p0_grid, p0.N, p0.N + 1), p0)


def test_triple_scaling(p0):
    triple = extract_triple(build_AN(p0))
    assert triple.scaled(Fraction(3)).jump() == triple.jump()
    jump = triple.jump()
    assert jump * jump == Mat2(0, 0, 0, 0)


def test_asymptotics(p0):
    matrix = build_AN(p0)
    limit = asymptotic_limit(matrix)
    first, second = asymptotic_d(matrix)
    assert (first, second) == (limit.e11, limit.e22)
    assert limit.e12 == 0


def test_json(p0):
    document = build_AN(p0).to_json()
    assert set(document) == {'s', 'n', 'm', 'k', 'poles'}
    assert document['m'] == ['0', '0']
    assert set(document['poles']) == {'z1', 'z2', 'z3', 'z4', 'z5', 'z6', 'u2'}


def test_not_palindromic(p0):
    matrix = build_AN(p0)
    broken = ConnectionMatrix(matrix.s, p0, Mat2(matrix.b.e11, matrix.b.e12, Poly((1, 1)), matrix.b.e22))
    with pytest.raises(InvariantViolationError):
        broken.coefficients()


def test_delta_zero_is_rejected():
    params = EnsembleParams(Fraction(1, 4), Fraction(256), Fraction(256), Fraction(0), 3, 2)
    with pytest.raises(InvalidParamsError):
        ConnectionMatrix(2, params, Mat2(Poly((1,)), Poly(), Poly(), Poly((1,))))


def test_double_ratio_matches_enumeration(p0):
    exact = enumerate_gap_table(p0)
    steps = list(iterate_connection(p0))
    for (matrix, triple), (following, _) in zip(steps, steps[1:]):
        s = matrix.s
        advanced = advance_triple(matrix, triple)
        assert in_residue_image(following, advanced.v)
        assert gap_double_ratio(triple, advanced, s, p0) == exact[s + 2] * exact[s] / (exact[s + 1] * exact[s + 1])


def test_double_ratio_needs_independent_vectors(p0):
    triple = TransitionTriple((1, 0), (1, 0), (2, 0))
    with pytest.raises(ZeroDeterminantError):
        gap_double_ratio(triple, triple, 2, p0)


@pytest.mark.parametrize('name', ['p0', 'p1'])
def test_triple_jump_is_the_drhp_jump(name, request):
    params = request.getfixturevalue(name)
    grid = request.getfixturevalue(f'{name}_grid')
    m = build_mN(grid, params.N)
    for matrix, triple in iterate_connection(params):
        if matrix.s == params.M:
            break
        jump = solve_T(m)
        assert triple.jump() == jump.matrix()
        assert extract_triple(matrix).jump() == jump.matrix()
        m = advance_m(m, jump)


@pytest.mark.parametrize('name', ['p0', 'p1'])
def test_double_ratio_is_the_enumerated_one(name, request):
    params = request.getfixturevalue(name)
    exact = enumerate_gap_table(params)
    steps = list(iterate_connection(params))
    for (matrix, triple), (_, advanced) in zip(steps, steps[1:]):
        s = matrix.s
        ratio = exact[s + 2] * exact[s] / (exact[s + 1] * exact[s + 1])
        assert ratio > 0
        assert gap_double_ratio(triple, advanced, s, params) == ratio


def test_initial_matrix_needs_positive_delta():
    params = EnsembleParams(Fraction(1, 4), Fraction(256), Fraction(256), Fraction(0), 3, 2)
    with pytest.raises(InvalidParamsError):
        build_AN(params)
