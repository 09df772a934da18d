"""Module for the discrete Riemann-Hilbert solutions m_s, their nilpotent jumps T_s and the gap ratio they carry."""
from __future__ import annotations
from typing import TYPE_CHECKING

import logging

from qracah_gaps.errors import CancellationFailureError, DegenerateJumpError, InvariantViolationError, NoSolutionError
from qracah_gaps.ensemble import NodeGrid
from qracah_gaps.numeric.matrix import Mat2, solve_linear
from qracah_gaps.numeric.poly import Poly
from qracah_gaps.numeric.ratfunc import RatFunc
from qracah_gaps.numeric.scalars import div
from qracah_gaps.oracle import GapTable, rho_values, seed_values
from qracah_gaps.orthopoly import build_ops

if TYPE_CHECKING:
    from typing import Any, Dict, List, Optional, Sequence, Tuple

    from qracah_gaps.ensemble import EnsembleParams

LOG: logging.Logger = logging.getLogger("qracah_gaps.drhp")


class DRHPSolution:
    """
    Solution m_s of the discrete Riemann-Hilbert problem with poles at pi_0..pi_(s-1).

    The matrix is stored in partial fraction form: the first column is the polynomial pair (p1, p2) and the second column is
    C(p)(z) = sum_(x<s) omega(x) p(pi_x)/(z - pi_x), so every residue is [[0, omega p1(pi_x)], [0, omega p2(pi_x)]].

    Args:
        s (int): number of poles.
        particles (int): N, the asymptotic degree.
        p1 (Poly): entry (1,1), monic of degree N.
        p2 (Poly): entry (2,1), of degree below N.
        nodes (Sequence): pi_0, pi_1, ... (at least s of them).
        weights (Sequence): omega(0), omega(1), ...
    """
    def __init__(self, s: int, particles: int, p1: Poly, p2: Poly, nodes: Sequence[Any], weights: Sequence[Any]) -> None:  # pylint: disable=too-many-arguments,too-many-positional-arguments
        self.s: int = s
        self.particles: int = particles
        self.p1: Poly = p1
        self.p2: Poly = p2
        self.nodes: List[Any] = list(nodes)
        self.weights: List[Any] = list(weights)

    @property
    def poles(self) -> List[Any]:
        """The pole locations pi_0..pi_(s-1)."""
        return self.nodes[:self.s]

    def cauchy(self, polynomial: Poly, point: Any) -> Any:
        """C(p) at a point that is not a pole."""
        total: Any = 0
        for pi, w in zip(self.poles, self.weights):
            total = total + div(w * polynomial(pi), point - pi)
        return total

    def cauchy_numerator(self, polynomial: Poly) -> Poly:
        """Numerator of C(p) over the pole polynomial L(z) = prod (z - pi_x)."""
        total = Poly()
        for index, (pi, w) in enumerate(zip(self.poles, self.weights)):
            others = Poly.from_roots(self.poles[:index] + self.poles[index + 1:])
            total = total + others * (w * polynomial(pi))
        return total

    def pole_polynomial(self) -> Poly:
        """L(z) = prod_(x<s) (z - pi_x)."""
        return Poly.from_roots(self.poles)

    def entries(self) -> Mat2:
        """The matrix with RatFunc entries."""
        denominator = self.pole_polynomial()
        return Mat2(RatFunc.from_poly(self.p1), RatFunc(self.cauchy_numerator(self.p1), denominator),
                    RatFunc.from_poly(self.p2), RatFunc(self.cauchy_numerator(self.p2), denominator))

    def evaluate(self, point: Any) -> Mat2:
        """m_s(z) at a point that is not a pole."""
        return Mat2(self.p1(point), self.cauchy(self.p1, point), self.p2(point), self.cauchy(self.p2, point))

    def residue(self, x: int) -> Mat2:
        """Residue at the pole pi_x."""
        if not 0 <= x < self.s:
            raise ValueError(f'pi_{x} is not a pole of m_{self.s}')
        pi, w = self.nodes[x], self.weights[x]
        return Mat2(0, w * self.p1(pi), 0, w * self.p2(pi))

    def column_at_node(self, x: int) -> Tuple[Any, Any]:
        """First column (m11, m21) at pi_x."""
        pi = self.nodes[x]
        return self.p1(pi), self.p2(pi)

    def det_defect(self) -> Poly:
        """p1 C2 - p2 C1 - L after clearing the denominator L; the zero polynomial when det m_s = 1."""
        return self.p1 * self.cauchy_numerator(self.p2) - self.p2 * self.cauchy_numerator(self.p1) - self.pole_polynomial()

    def asymptotic_report(self, size: Optional[int] = None) -> Dict[str, bool]:
        """
        Check m_s(z) diag(z^-N, z^N) = I + O(1/z); with size given, also the normalizer diag(z^-N, z^M).

        Returns:
            Dict[str, bool]: 'z^N' and, if requested, 'z^M' checks.
        """
        c1 = self.cauchy_numerator(self.p1)
        c2 = self.cauchy_numerator(self.p2)
        degree = self.particles
        first_column = self.p1.degree == degree and self.p1.lead == 1 and self.p2.degree < degree
        report = {'z^N': first_column and c1.degree < self.s - degree and c2.degree == self.s - degree and c2.lead == 1}
        if size is not None:
            report['z^M'] = first_column and c1.degree < self.s - size and c2.degree == self.s - size and c2.lead == 1
        return report

    def check(self) -> None:
        """
        Verify det m_s = 1 and the asymptotic normalization.

        Raises:
            InvariantViolationError: if either fails.
        """
        if not self.det_defect().is_zero():
            raise InvariantViolationError(f'det m_{self.s} is not identically 1')
        if not self.asymptotic_report()['z^N']:
            raise InvariantViolationError(f'm_{self.s} violates the asymptotic normalization')


class NilpotentJump:
    """
    Traceless jump T = [[t11, t12], [t21, -t11]].

    Args:
        t11: entry (1,1).
        t12: entry (1,2).
        t21: entry (2,1).
    """
    def __init__(self, t11: Any, t12: Any, t21: Any) -> None:
        self.t11: Any = t11
        self.t12: Any = t12
        self.t21: Any = t21

    def matrix(self) -> Mat2:
        """As a Mat2."""
        return Mat2(self.t11, self.t12, self.t21, -self.t11)

    def nilpotency_defect(self) -> Any:
        """t11^2 + t12 t21, zero for a nilpotent matrix."""
        return self.t11 * self.t11 + self.t12 * self.t21

    def __repr__(self) -> str:
        return f'NilpotentJump({self.t11}, {self.t12}, {self.t21})'


def build_mN(grid: NodeGrid, particles: int, rho: Optional[List[Any]] = None) -> DRHPSolution:  # pylint: disable=invalid-name
    """
    The initial solution m_N = [[Pi, 0], [Pi sum_(x<N) rho_x/(z - pi_x), 1/Pi]] with Pi(z) = prod_(m<N) (z - pi_m).
    """
    if rho is None:
        rho = rho_values(grid, particles)
    roots = grid.nodes[:particles]
    product = Poly.from_roots(roots)
    lower = Poly()
    for index in range(particles):
        lower = lower + Poly.from_roots(roots[:index] + roots[index + 1:]) * rho[index]
    return DRHPSolution(particles, particles, product, lower, grid.nodes, grid.weights)


def direct_m(grid: NodeGrid, particles: int, s: int) -> DRHPSolution:
    """
    The solution with s poles from the orthogonal polynomials of the weight restricted to the first s nodes.

    p1 = P_N and p2 = P_(N-1)/c_(N-1) of the restricted weight.
    """
    ops = build_ops(grid, s)
    if particles == s:
        upper = Poly.from_roots(grid.nodes[:s])
    else:
        upper = ops.polynomials[particles]
    lower = ops.polynomials[particles - 1] * div(1, ops.norms[particles - 1])
    return DRHPSolution(s, particles, upper, lower, grid.nodes, grid.weights)


def solve_T(m: DRHPSolution) -> NilpotentJump:  # pylint: disable=invalid-name
    """
    The jump T_s with m_(s+1) = (I + T_s/(z - pi_s)) m_s.

    With v = m_s column one at pi_s and e = m_s column two at pi_s minus omega(s) times the derivative of column one,
    T is the unique solution of T v = 0 and T e = omega(s) v, solved as four equations in (t11, t12, t21).
    Nilpotency is checked afterwards.

    Raises:
        DegenerateJumpError: if v vanishes, the system has no unique solution or t11 = 0.
        InvariantViolationError: if the solution is not nilpotent.
    """
    s = m.s
    pi, w = m.nodes[s], m.weights[s]
    v1, v2 = m.p1(pi), m.p2(pi)
    if v1 == 0 and v2 == 0:
        raise DegenerateJumpError(f'm_{s} column one vanishes at pi_{s}')
    e1 = m.cauchy(m.p1, pi) - w * m.p1.derivative()(pi)
    e2 = m.cauchy(m.p2, pi) - w * m.p2.derivative()(pi)
    rows = [[v1, v2, 0], [-v2, 0, v1], [e1, e2, 0], [-e2, 0, e1]]
    try:
        t11, t12, t21 = solve_linear(rows, [0, 0, w * v1, w * v2])
    except NoSolutionError as err:
        raise DegenerateJumpError(f'No unique jump at pi_{s}') from err
    if t11 == 0:
        raise DegenerateJumpError(f't11 vanishes at s={s}')
    jump = NilpotentJump(t11, t12, t21)
    if jump.nilpotency_defect() != 0:
        raise InvariantViolationError(f'T_{s} is not nilpotent: {jump}')
    return jump


def advance_m(m: DRHPSolution, jump: NilpotentJump) -> DRHPSolution:
    """
    m_(s+1) = (I + T_s/(z - pi_s)) m_s.

    The first column stays polynomial because T_s kills it at pi_s.

    Raises:
        InvariantViolationError: if the new solution fails the determinant or asymptotic checks.
    """
    pi = m.nodes[m.s]
    divisor = Poly((-pi, 1))
    try:
        delta1 = (m.p1 - m.p1(pi)).exact_div(divisor)
        delta2 = (m.p2 - m.p2(pi)).exact_div(divisor)
    except CancellationFailureError as err:
        raise InvariantViolationError(f'Cannot shift m_{m.s}') from err
    p1 = m.p1 + delta1 * jump.t11 + delta2 * jump.t12
    p2 = m.p2 + delta1 * jump.t21 - delta2 * jump.t11
    advanced = DRHPSolution(m.s + 1, m.particles, p1, p2, m.nodes, m.weights)
    advanced.check()
    return advanced


def gap_ratio_drhp(m: DRHPSolution, jump: NilpotentJump) -> Any:
    """
    D_(s+1)/D_s = omega(s) m11_s(pi_s)^2 / t12.

    Raises:
        DegenerateJumpError: if t12 = 0.
    """
    if jump.t12 == 0:
        raise DegenerateJumpError(f't12 vanishes at s={m.s}')
    value = m.p1(m.nodes[m.s])
    return div(m.weights[m.s] * value * value, jump.t12)


def drhp_gap_table(params: EnsembleParams) -> GapTable:
    """Gap table from the D_N seed and the recursion m_s -> m_(s+1)."""
    grid = NodeGrid(params)
    ops = build_ops(grid)
    rho = rho_values(grid, params.N)
    table = GapTable(params.N, params.M, 'drhp')
    table[params.N], _ = seed_values(grid, ops, params.N, rho)
    m = build_mN(grid, params.N, rho)
    for s in range(params.N, params.M + 1):
        jump = solve_T(m)
        ratio = gap_ratio_drhp(m, jump)
        LOG.debug('drhp step s=%d ratio %s', s, ratio)
        table[s + 1] = table[s] * ratio
        if s < params.M:
            m = advance_m(m, jump)
    return table
