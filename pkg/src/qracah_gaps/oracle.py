"""Module for reference gap probabilities: enumeration, Fredholm determinants, seed formulas and the resolvent."""
from __future__ import annotations
from typing import TYPE_CHECKING

import itertools
import logging
import math

from qracah_gaps.ensemble import ENUMERATION_GUARD, NodeGrid, configuration_weight
from qracah_gaps.errors import IndexOutOfRangeError, NoSolutionError, SingularOperatorError, TooLargeError
from qracah_gaps.numeric.matrix import determinant, solve_linear
from qracah_gaps.numeric.scalars import div, format_exact
from qracah_gaps.orthopoly import build_ops, cd_kernel

if TYPE_CHECKING:
    from typing import Any, Dict, List, Optional, Tuple

    from qracah_gaps.ensemble import EnsembleParams
    from qracah_gaps.orthopoly import OPSystem

LOG: logging.Logger = logging.getLogger("qracah_gaps.oracle")


class GapTable:
    """
    Gap probabilities D_s for s = N..M+1 computed by one method.

    Args:
        particles (int): N.
        size (int): M.
        method (str): name of the method that produced the values.
        values (Dict[int, Any]): D_s by s.
    """
    def __init__(self, particles: int, size: int, method: str, values: Optional[Dict[int, Any]] = None) -> None:
        self.particles: int = particles
        self.size: int = size
        self.method: str = method
        self.values: Dict[int, Any] = dict(values or {})

    @property
    def s_range(self) -> range:
        """The range N..M+1."""
        return range(self.particles, self.size + 2)

    def __getitem__(self, s: int) -> Any:
        return self.values[s]

    def __setitem__(self, s: int, value: Any) -> None:
        if s not in self.s_range:
            raise IndexOutOfRangeError(f's={s} is outside {self.particles}..{self.size + 1}')
        self.values[s] = value

    def is_complete(self) -> bool:
        """True if every s in the range has a value."""
        return all(s in self.values for s in self.s_range)

    def violations(self) -> List[str]:
        """
        Check 0 < D_s <= 1, monotonicity in s and D_(M+1) = 1.

        Returns:
            List[str]: one message per violated property.
        """
        found: List[str] = []
        ordered = [self.values[s] for s in self.s_range if s in self.values]
        for s in self.s_range:
            if s in self.values and not 0 < self.values[s] <= 1:
                found.append(f'D_{s}={format_exact(self.values[s])} is outside (0, 1]')
        for first, second in zip(ordered, ordered[1:]):
            if second < first:
                found.append('D_s is not nondecreasing in s')
                break
        last = self.size + 1
        if last in self.values and self.values[last] != 1:
            found.append(f'D_{last}={format_exact(self.values[last])} differs from 1')
        return found

    def rows(self) -> List[Tuple[int, str, str]]:
        """CSV rows (s, D_s, method)."""
        return [(s, format_exact(self.values[s]), self.method) for s in self.s_range if s in self.values]

    def __repr__(self) -> str:
        return f'GapTable({self.method}, {self.values})'


def _check_s(params: EnsembleParams, s: int) -> None:
    if not params.N <= s <= params.M + 1:
        raise IndexOutOfRangeError(f's={s} is outside {params.N}..{params.M + 1}')


def gap_enumerate(params: EnsembleParams, s: int, grid: Optional[NodeGrid] = None) -> Any:
    """
    D_s by summing the ensemble distribution over configurations inside the first s nodes.

    Raises:
        TooLargeError: if the number of configurations exceeds the enumeration guard.
        IndexOutOfRangeError: if s is outside N..M+1.
    """
    _check_s(params, s)
    count = math.comb(params.M + 1, params.N)
    if count > ENUMERATION_GUARD:
        raise TooLargeError(f'{count} configurations exceed the guard of {ENUMERATION_GUARD}')
    if grid is None:
        grid = NodeGrid(params)
    inside: Any = 0
    total: Any = 0
    for configuration in itertools.combinations(range(params.M + 1), params.N):
        value = configuration_weight(configuration, grid)
        total = total + value
        if configuration[-1] < s:
            inside = inside + value
    return div(inside, total)


def gap_fredholm(ops: OPSystem, particles: int, s: int) -> Any:
    """
    D_s = det(I - K) with the kernel restricted to the nodes s..M.

    The empty block (s = M+1) has determinant 1.
    """
    block = range(s, len(ops.nodes))
    matrix = [[(1 if x == y else 0) - cd_kernel(ops, particles, x, y) for y in block] for x in block]
    return determinant(matrix)


def rho_values(grid: NodeGrid, particles: int) -> List[Any]:
    """
    rho_x = 1/(omega(x) prod_(m<N, m!=x) (pi_x - pi_m)^2) for x = 0..N (x = N only when N <= M).
    """
    values: List[Any] = []
    for x in range(min(particles + 1, grid.size)):
        product: Any = grid.weights[x]
        for m in range(particles):
            if m != x:
                difference = grid.nodes[x] - grid.nodes[m]
                product = product * difference * difference
        values.append(div(1, product))
    return values


def seed_values(grid: NodeGrid, ops: OPSystem, particles: int, rho: Optional[List[Any]] = None) -> Tuple[Any, Optional[Any]]:
    """
    The first two gap probabilities in closed form.

    D_N = Delta(pi_0..pi_(N-1))^2 prod omega / prod c_n and
    D_(N+1) = omega(N) h_N prod_(l<N) (pi_N - pi_l)^2 D_N with h_N = rho_N + sum_(m<N) rho_m/(pi_N - pi_m)^2.

    Returns:
        Tuple: (D_N, D_(N+1)), the second entry is None when N = M + 1.
    """
    if rho is None:
        rho = rho_values(grid, particles)
    first: Any = 1
    for x in range(particles):
        first = first * grid.weights[x]
        for y in range(x + 1, particles):
            difference = grid.nodes[x] - grid.nodes[y]
            first = first * difference * difference
    for norm in ops.norms[:particles]:
        first = div(first, norm)
    if particles >= grid.size:
        return first, None
    target = grid.nodes[particles]
    h_value: Any = rho[particles]
    spread: Any = 1
    for m in range(particles):
        difference = target - grid.nodes[m]
        h_value = h_value + div(rho[m], difference * difference)
        spread = spread * difference * difference
    second = grid.weights[particles] * h_value * spread * first
    return first, second


def resolvent_diag(ops: OPSystem, particles: int, s: int) -> Any:
    """
    Diagonal resolvent value R_s(pi_s, pi_s), so that 1 + R = D_(s+1)/D_s.

    Computed as the (s, s) entry of (I - K_s)^-1 minus one.

    Raises:
        SingularOperatorError: if I - K_s is singular.
    """
    block = list(range(s, len(ops.nodes)))
    if not block:
        raise IndexOutOfRangeError(f's={s} leaves an empty block')
    matrix = [[(1 if x == y else 0) - cd_kernel(ops, particles, x, y) for y in block] for x in block]
    unit = [1] + [0] * (len(block) - 1)
    try:
        solution = solve_linear(matrix, unit)
    except NoSolutionError as err:
        raise SingularOperatorError(f'I - K is singular on the nodes {s}..{len(ops.nodes) - 1}') from err
    return solution[0] - 1


def enumerate_gap_table(params: EnsembleParams) -> GapTable:
    """Gap table by enumeration."""
    grid = NodeGrid(params)
    table = GapTable(params.N, params.M, 'enumerate')
    for s in table.s_range:
        table[s] = gap_enumerate(params, s, grid)
    return table


def fredholm_gap_table(params: EnsembleParams) -> GapTable:
    """Gap table by Fredholm determinants of the conjugated kernel."""
    ops = build_ops(NodeGrid(params))
    table = GapTable(params.N, params.M, 'fredholm')
    for s in table.s_range:
        table[s] = gap_fredholm(ops, params.N, s)
    return table
