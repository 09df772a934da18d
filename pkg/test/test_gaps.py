"""Tests for the method dispatcher and the cross-check report."""
from fractions import Fraction

import mpmath
import pytest

from qracah_gaps import gaps
from qracah_gaps.ensemble import EnsembleParams
from qracah_gaps.errors import BackendMismatchError, ConfigurationError, InvalidParamsError
from qracah_gaps.gaps import METHODS, CheckResult, CrosscheckReport, crosscheck, discrepancy, gap_table
from qracah_gaps.numeric.scalars import Backend, to_bigfloat
from qracah_gaps.oracle import enumerate_gap_table
from qracah_gaps.painleve import Direction, painleve_orbit


def test_unknown_method(p0):
    with pytest.raises(ConfigurationError):
        gap_table(p0, 'guess')


@pytest.mark.parametrize('method', ['drhp', 'painleve'])
def test_exact_only_methods_reject_big_floats(p0, method):
    with pytest.raises(BackendMismatchError):
        gap_table(p0, method, Backend.BIGFLOAT)


def test_big_float_fredholm(p0):
    exact = enumerate_gap_table(p0)
    floating = gap_table(p0, 'fredholm', Backend.BIGFLOAT, 160)
    with mpmath.workprec(160):
        for s in exact.s_range:
            assert abs(floating[s] - to_bigfloat(exact[s])) <= mpmath.mpf(2) ** -100


def test_quadratic_backend_is_exact(p1):
    assert gap_table(p1, 'connection', Backend.QUADEXT).values == gap_table(p1).values


def test_crosscheck_passes(p0):
    report = crosscheck(p0)
    assert report.passed
    assert set(report.tables) == set(METHODS)
    lines = report.lines()
    assert lines[-1] == 'PASS all checks'
    assert all(line.split(' ', 1)[0] in ('PASS', 'REPORT') for line in lines)
    assert any(line.startswith('PASS closed form inverse at s=2') for line in lines)
    assert 'PASS conjugated q-P(E7) step against the isomonodromic step: direction forward, root variable shifts [[1, 0, 1, -1, -1, 1, 0, 0]]' in lines


def test_crosscheck_detects_a_corrupted_matrix(p0):
    report = crosscheck(p0, methods=['enumerate'], corrupt=lambda k1: k1 + 1)
    assert not report.passed
    assert report.lines()[-1] == 'FAIL crosscheck'


def test_crosscheck_needs_exact_parameters(p0):
    with pytest.raises(InvalidParamsError):
        crosscheck(p0.with_backend(Backend.BIGFLOAT))


def test_discrepancy():
    assert discrepancy(Fraction(1, 3), Fraction(1, 3)) == 0
    assert discrepancy(Fraction(1, 2), Fraction(1, 4)) == mpmath.mpf('0.25')
    with mpmath.workprec(53):
        assert discrepancy(Fraction(1), Fraction(1) + Fraction(1, 2 ** 200)) > 0


def test_report_lines():
    report = CrosscheckReport()
    report.add('first', True)
    report.report('second', 'value 3')
    assert report.passed
    report.add('third', False, 'TooLargeError')
    assert not report.passed
    assert report.lines() == ['PASS first', 'REPORT second: value 3', 'FAIL third: TooLargeError', 'FAIL crosscheck']
    assert CheckResult('x', 'FAIL').failed
    assert not CheckResult('x', 'REPORT').failed


def test_crosscheck_fails_without_a_matching_step(p0, monkeypatch):
    def unmatched(params):
        orbit = painleve_orbit(params)
        orbit.direction = Direction.NONE
        return orbit

    monkeypatch.setattr(gaps, 'painleve_orbit', unmatched)
    report = crosscheck(p0, methods=['enumerate'])
    assert not report.passed
    assert any(line.startswith('FAIL conjugated q-P(E7) step against the isomonodromic step: direction none') for line in report.lines())


def test_crosscheck_fails_on_unexpected_shifts(p0, monkeypatch):
    def shifted(params):
        orbit = painleve_orbit(params)
        orbit.shifts = [[-2, 0, 0, 0, 1, 0, 0, 0]]
        return orbit

    monkeypatch.setattr(gaps, 'painleve_orbit', shifted)
    report = crosscheck(p0, methods=['enumerate'])
    assert not report.passed
    assert any(line.startswith('FAIL root variables follow the ensemble translation') for line in report.lines())


def test_crosscheck_skips_connection_methods_without_delta():
    params = EnsembleParams(Fraction(1, 4), Fraction(256), Fraction(256), Fraction(0), 3, 2)
    report = crosscheck(params, methods=['enumerate', 'connection', 'painleve'])
    assert set(report.tables) == {'enumerate'}
    lines = report.lines()
    assert 'REPORT connection skipped: connection matrices need delta > 0' in lines
    assert 'REPORT painleve skipped: connection matrices need delta > 0' in lines
