"""Tests for the discrete Riemann-Hilbert recursion."""
from fractions import Fraction

import pytest

from qracah_gaps.drhp import DRHPSolution, NilpotentJump, advance_m, build_mN, direct_m, drhp_gap_table, gap_ratio_drhp, solve_T
from qracah_gaps.errors import CancellationFailureError, DegenerateJumpError, InvariantViolationError
from qracah_gaps.numeric.matrix import Mat2
from qracah_gaps.numeric.poly import Poly
from qracah_gaps.oracle import enumerate_gap_table


@pytest.mark.parametrize('name', ['p0', 'p1'])
def test_drhp_table_matches_enumeration(name, request):
    params = request.getfixturevalue(name)
    assert drhp_gap_table(params).values == enumerate_gap_table(params).values


def test_initial_solution(p0, p0_grid):
    m = build_mN(p0_grid, p0.N)
    m.check()
    assert m.s == p0.N
    assert m.p1 == Poly.from_roots(p0_grid.nodes[:p0.N])
    assert m.asymptotic_report(p0.M) == {'z^N': True, 'z^M': False}


def test_initial_solution_is_the_direct_one(p1, p1_grid):
    initial = build_mN(p1_grid, p1.N)
    direct = direct_m(p1_grid, p1.N, p1.N)
    assert (initial.p1, initial.p2) == (direct.p1, direct.p2)


@pytest.mark.parametrize('name', ['p0', 'p1'])
def test_advance_matches_direct_solution(name, request):
    params = request.getfixturevalue(name)
    grid = request.getfixturevalue(f'{name}_grid')
    m = build_mN(grid, params.N)
    for s in range(params.N, params.M):
        jump = solve_T(m)
        assert jump.nilpotency_defect() == 0
        m = advance_m(m, jump)
        direct = direct_m(grid, params.N, s + 1)
        assert (m.p1, m.p2) == (direct.p1, direct.p2)


def test_full_solution_has_the_size_normalization(p0, p0_grid):
    m = direct_m(p0_grid, p0.N, p0.M + 1)
    m.check()
    assert m.asymptotic_report(p0.M)['z^N']


def test_residues_and_evaluation(p0, p0_grid):
    m = direct_m(p0_grid, p0.N, 3)
    residue = m.residue(1)
    assert residue.e11 == 0 and residue.e21 == 0
    assert residue.e12 == p0_grid.weights[1] * m.p1(p0_grid.nodes[1])
    point = Fraction(7, 3)
    assert m.evaluate(point) == m.entries().evaluate(point)
    assert m.evaluate(point).det() == 1
    with pytest.raises(ValueError):
        m.residue(3)


def test_jump_ratio(p0, p0_grid):
    table = enumerate_gap_table(p0)
    m = build_mN(p0_grid, p0.N)
    jump = solve_T(m)
    assert gap_ratio_drhp(m, jump) == table[p0.N + 1] / table[p0.N]
    assert jump.matrix() * jump.matrix() == Mat2(0, 0, 0, 0)


def test_degenerate_jump_ratio(p0_grid):
    m = build_mN(p0_grid, 2)
    with pytest.raises(DegenerateJumpError):
        gap_ratio_drhp(m, NilpotentJump(Fraction(1), Fraction(0), Fraction(0)))


def test_broken_determinant(p0_grid):
    m = DRHPSolution(2, 2, Poly.from_roots(p0_grid.nodes[:2]), Poly((1,)), p0_grid.nodes, p0_grid.weights)
    with pytest.raises(InvariantViolationError):
        m.check()


def test_failed_shift_is_an_invariant_violation(p0_grid, monkeypatch):
    m = build_mN(p0_grid, 2)
    jump = solve_T(m)

    def refuse(self, divisor, tolerance=None):
        raise CancellationFailureError(f'{self!r} is not divisible by {divisor!r}')

    monkeypatch.setattr(Poly, 'exact_div', refuse)
    with pytest.raises(InvariantViolationError):
        advance_m(m, jump)
