"""Tests for the Painleve coordinates of the connection matrices and the discrete Painleve steps."""
from fractions import Fraction

import pytest

from qracah_gaps.connection import build_AN, iterate_connection
from qracah_gaps.ensemble import EnsembleParams
from qracah_gaps.errors import BasePointHitError, InvalidParamsError, InvariantViolationError, InvolutionFixedPointError, UnknownTokenError
from qracah_gaps.oracle import enumerate_gap_table
from qracah_gaps.painleve import Direction, InvariantPoint, PainlevePoint, QRacahPainleveParams, SpectralPoint, apply_weyl_word, \
    connection_from_painleve, degenerate_coords, ensemble_step, from_painleve, from_painleve_closed_form, invariant_from_connection, \
    invariant_from_spectral, null_root_product, painleve_gap_table, painleve_orbit, painleve_point, qhahn_coords, qhahn_limit_check, qp_e6_step, \
    qp_e7_step, root_shift, spectral_from_connection, to_painleve, weyl_reflection


@pytest.fixture
def generic_point():
    params = QRacahPainleveParams((Fraction(2), Fraction(3), Fraction(5), Fraction(7), Fraction(11), Fraction(13)), Fraction(1, 3),
                                  (Fraction(2), Fraction(-3)), Fraction(1, 2))
    return PainlevePoint(Fraction(3), Fraction(5, 7), params)


def _points(params):
    return [(matrix, painleve_point(matrix)) for matrix, _ in iterate_connection(params)]


@pytest.mark.parametrize('name', ['p0', 'p1'])
def test_painleve_table_matches_enumeration(name, request):
    params = request.getfixturevalue(name)
    assert painleve_gap_table(params).values == enumerate_gap_table(params).values


def test_painleve_table_needs_positive_delta():
    with pytest.raises(InvalidParamsError):
        painleve_gap_table(EnsembleParams(Fraction(1, 4), Fraction(256), Fraction(256), Fraction(0), 3, 2))


@pytest.mark.parametrize('name', ['p0', 'p1'])
def test_orbit(name, request):
    params = request.getfixturevalue(name)
    orbit = painleve_orbit(params)
    assert sorted(orbit.points) == list(range(params.N, params.M + 1))
    assert orbit.direction == Direction.FORWARD
    assert orbit.shifts == [[1, 0, 1, -1, -1, 1, 0, 0]] * (params.M - params.N)
    for point in orbit.points.values():
        assert point.params.step_q() == params.q
        assert null_root_product(point.params.ensemble_root_variables()) == params.q
    document = orbit.to_json()
    assert [entry['s'] for entry in document] == list(range(params.N, params.M + 1))
    assert set(document[0]) == {'s', 'f', 'g', 'params'}


@pytest.mark.parametrize('name', ['p0', 'p1'])
def test_point_round_trip(name, request):
    params = request.getfixturevalue(name)
    for matrix, point in _points(params):
        invariant = invariant_from_connection(matrix)
        assert from_painleve(point) == invariant
        assert from_painleve_closed_form(point) == invariant.x
        assert to_painleve(invariant, point.params).same_coordinates(point)


@pytest.mark.parametrize('name', ['p0', 'p1'])
def test_matrix_from_point(name, request):
    params = request.getfixturevalue(name)
    for matrix, point in _points(params):
        k0 = matrix.coefficients()['k'][0]
        assert connection_from_painleve(point, matrix.s, params, k0) == matrix


def test_matrix_from_point_needs_matching_poles(p0):
    point = painleve_point(build_AN(p0))
    with pytest.raises(InvariantViolationError):
        connection_from_painleve(point, p0.N + 1, p0)


@pytest.mark.parametrize('name', ['p0', 'p1'])
def test_ensemble_step_follows_the_recursion(name, request):
    params = request.getfixturevalue(name)
    points = [point for _, point in _points(params)]
    for current, following in zip(points, points[1:]):
        stepped = ensemble_step(current)
        assert stepped.same_coordinates(following)
        assert stepped.params.same_values(following.params)
        back = ensemble_step(following, Direction.INVERSE)
        assert back.same_coordinates(current)
        assert back.params.same_values(current.params)


def test_ensemble_step_needs_a_direction(generic_point):
    with pytest.raises(ValueError):
        ensemble_step(generic_point, Direction.NONE)


def test_qp_e7_translation(generic_point):
    params = generic_point.params
    stepped = qp_e7_step(generic_point)
    assert root_shift(params.root_variables(), stepped.params.root_variables(), params.q) == [-2, 0, 0, 0, 1, 0, 0, 0]


@pytest.mark.parametrize('index', range(8))
def test_reflections_are_involutions(generic_point, index):
    reflected = weyl_reflection(generic_point, index)
    back = weyl_reflection(reflected, index)
    assert back.same_coordinates(generic_point)
    assert back.params.same_values(generic_point.params)


def test_reflection_words(generic_point):
    moved = apply_weyl_word(generic_point, 'w3 w0 w4')
    assert moved.same_coordinates(weyl_reflection(weyl_reflection(weyl_reflection(generic_point, 4), 0), 3))
    assert apply_weyl_word(moved, 'w4 w0 w3').same_coordinates(generic_point)
    assert weyl_reflection(generic_point, 0).params.kappa1 == generic_point.params.kappa2
    with pytest.raises(UnknownTokenError):
        weyl_reflection(generic_point, 8)


def test_invariant_coordinates_from_a_root(p0):
    matrix = build_AN(p0)
    spectral = spectral_from_connection(matrix)
    assert invariant_from_spectral(spectral, p0.u) == invariant_from_connection(matrix)
    assert invariant_from_spectral(spectral_from_connection(matrix, 1), p0.u) == invariant_from_connection(matrix)


def test_spectral_partner():
    point = SpectralPoint(Fraction(2), Fraction(5))
    partner = point.partner(Fraction(1, 9))
    assert (partner.t, partner.p) == (Fraction(1, 18), Fraction(1, 5))
    back = partner.partner(Fraction(1, 9))
    assert (back.t, back.p) == (point.t, point.p)


def test_involution_fixed_points():
    with pytest.raises(InvolutionFixedPointError):
        SpectralPoint(0, 1)
    with pytest.raises(InvolutionFixedPointError):
        invariant_from_spectral(SpectralPoint(Fraction(1, 3), Fraction(2)), Fraction(1, 3))


def test_parameter_block(generic_point):
    params = generic_point.params
    assert params.kappa1 == Fraction(1, 9)
    assert params.kappa2 == Fraction(21)
    assert len(params.root_variables()) == 8
    assert len(params.base_points()) == 8
    assert params.as_dict()['q'] == '1/2'


@pytest.mark.parametrize('step', [qp_e7_step, qp_e6_step])
def test_step_round_trip(generic_point, step):
    stepped = step(generic_point)
    assert stepped.params.kappa1 == generic_point.params.kappa1 * 2
    assert stepped.params.kappa2 == generic_point.params.kappa2 / 2
    back = step(stepped, Direction.INVERSE)
    assert back.same_coordinates(generic_point)
    assert (back.params.kappa1, back.params.kappa2) == (generic_point.params.kappa1, generic_point.params.kappa2)


def test_qhahn_limit():
    x, y = Fraction(3), Fraction(2)
    z = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 5))
    report = qhahn_limit_check(x, y, z)
    assert report['converged']
    assert report['qhahn_f']
    assert report['limit'] == degenerate_coords(x, y, z[2])
    assert len(report['orders']) == 3


def test_root_shift():
    q = Fraction(1, 2)
    before = [Fraction(1), Fraction(3), Fraction(5)]
    after = [Fraction(1, 2), Fraction(12), Fraction(7)]
    assert root_shift(before, after, q) == [1, -2, None]


def test_invariant_point_equality():
    assert InvariantPoint(Fraction(1), Fraction(2)) == InvariantPoint(Fraction(1), Fraction(2))
    assert InvariantPoint(Fraction(1), Fraction(2)) != InvariantPoint(Fraction(1), Fraction(3))


def test_qhahn_coords():
    assert qhahn_coords(Fraction(2), Fraction(1), Fraction(1), Fraction(3)) == (Fraction(1, 2), Fraction(3))
    with pytest.raises(BasePointHitError):
        qhahn_coords(Fraction(0), Fraction(1), Fraction(1), Fraction(3))
