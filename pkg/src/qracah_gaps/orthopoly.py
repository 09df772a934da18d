"""Module for monic orthogonal polynomials on the node grid, their norms and the Christoffel-Darboux kernel."""
from __future__ import annotations
from typing import TYPE_CHECKING

import logging

import mpmath

from qracah_gaps.errors import DegenerateWeightError, IndexOutOfRangeError, InvalidParamsError, NonConvergentError
from qracah_gaps.numeric.poly import Poly
from qracah_gaps.numeric.scalars import div, to_bigfloat

if TYPE_CHECKING:
    from typing import Any, List, Optional, Sequence

    from qracah_gaps.ensemble import EnsembleParams, NodeGrid

LOG: logging.Logger = logging.getLogger("qracah_gaps.orthopoly")


class OPSystem:
    """
    Monic orthogonal polynomials P_0..P_n of a discrete weight, in the variable z = sigma(q^-x).

    Attributes:
        polynomials (List[Poly]): P_0, P_1, ... monic of increasing degree.
        norms (List): c_k = (P_k, P_k).
        moments (List): m_0..m_2n with m_k = sum omega(x) pi_x^k.
        recurrence (List): pairs (a_k, b_k) with P_(k+1) = (z - a_k) P_k - b_k P_(k-1).
    """
    def __init__(self, nodes: Sequence[Any], weights: Sequence[Any], polynomials: List[Poly], norms: List[Any], recurrence: List[Any]) -> None:
        self.nodes: List[Any] = list(nodes)
        self.weights: List[Any] = list(weights)
        self.polynomials: List[Poly] = polynomials
        self.norms: List[Any] = norms
        self.recurrence: List[Any] = recurrence
        self.moments: List[Any] = [sum((w * pi ** k for pi, w in zip(self.nodes, self.weights)), 0) for k in range(2 * len(polynomials) - 1)]

    @property
    def degree(self) -> int:
        """Degree of the last polynomial."""
        return len(self.polynomials) - 1

    def inner(self, left: Poly, right: Poly) -> Any:
        """The discrete inner product sum omega(x) left(pi_x) right(pi_x)."""
        result: Any = 0
        for pi, w in zip(self.nodes, self.weights):
            result = result + w * left(pi) * right(pi)
        return result


def build_ops(grid: NodeGrid, count: Optional[int] = None) -> OPSystem:
    """
    Monic orthogonal polynomials by the three-term recurrence (discrete Stieltjes procedure).

    Args:
        grid (NodeGrid): nodes and weights.
        count (int): use only the first count nodes; all nodes by default. Polynomials up to degree count - 1 are built.

    Raises:
        DegenerateWeightError: if a norm vanishes, i.e. a Hankel minor of the moment matrix is zero.
    """
    nodes, weights = grid.restricted(grid.size if count is None else count)
    return build_ops_from(nodes, weights)


def build_ops_from(nodes: Sequence[Any], weights: Sequence[Any]) -> OPSystem:
    """Same as build_ops for explicit node and weight lists."""
    identity = Poly.identity()
    polynomials: List[Poly] = [Poly.constant(1)]
    values: List[Any] = [1] * len(nodes)
    previous_values: List[Any] = [0] * len(nodes)
    norms: List[Any] = []
    recurrence: List[Any] = []
    for degree in range(len(nodes)):
        norm = sum((w * v * v for w, v in zip(weights, values)), 0)
        if norm == 0:
            raise DegenerateWeightError(f'The norm of P_{degree} vanishes')
        norms.append(norm)
        if degree == len(nodes) - 1:
            break
        a_coefficient = div(sum((w * pi * v * v for pi, w, v in zip(nodes, weights, values)), 0), norm)
        b_coefficient = div(norm, norms[-2]) if degree > 0 else 0
        recurrence.append((a_coefficient, b_coefficient))
        previous = polynomials[-2] if degree > 0 else Poly()
        polynomials.append((identity - a_coefficient) * polynomials[-1] - previous * b_coefficient)
        values, previous_values = [(pi - a_coefficient) * v - b_coefficient * p for pi, v, p in zip(nodes, values, previous_values)], values
    LOG.debug('Built %d orthogonal polynomials on %d nodes', len(polynomials), len(nodes))
    return OPSystem(nodes, weights, polynomials, norms, recurrence)


def gram_schmidt(grid: NodeGrid, degree: int) -> List[Poly]:
    """
    Monic Gram-Schmidt orthogonalisation of 1, z, ..., z^degree.

    Raises:
        DegenerateWeightError: if a norm vanishes.
    """
    def inner(left: Poly, right: Poly) -> Any:
        return sum((w * left(pi) * right(pi) for pi, w in zip(grid.nodes, grid.weights)), 0)

    basis: List[Poly] = []
    norms: List[Any] = []
    for power in range(degree + 1):
        candidate = Poly([0] * power + [1])
        for polynomial, norm in zip(basis, norms):
            candidate = candidate - polynomial * div(inner(candidate, polynomial), norm)
        norm = inner(candidate, candidate)
        if norm == 0:
            raise DegenerateWeightError(f'Gram-Schmidt breaks down at degree {power}')
        basis.append(candidate)
        norms.append(norm)
    return basis


def _check_index(ops: OPSystem, index: int) -> None:
    if not 0 <= index < len(ops.nodes):
        raise IndexOutOfRangeError(f'Node {index} is outside 0..{len(ops.nodes) - 1}')


def cd_kernel(ops: OPSystem, particles: int, x: int, y: int) -> Any:
    """
    Conjugated Christoffel-Darboux kernel omega(x) sum_(i<N) P_i(pi_x) P_i(pi_y)/c_i.

    It differs from the symmetric kernel by the diagonal similarity sqrt(omega(x)/omega(y)), which leaves every principal
    minor unchanged.

    Raises:
        IndexOutOfRangeError: for node indices outside the grid.
    """
    _check_index(ops, x)
    _check_index(ops, y)
    first, second = ops.nodes[x], ops.nodes[y]
    total: Any = 0
    for polynomial, norm in zip(ops.polynomials[:particles], ops.norms[:particles]):
        total = total + div(polynomial(first) * polynomial(second), norm)
    return ops.weights[x] * total


def cd_kernel_two_point(ops: OPSystem, particles: int, x: int, y: int) -> Any:
    """
    The same kernel through the two point Christoffel-Darboux formula (x != y).

    omega(x) (P_N(pi_x) P_(N-1)(pi_y) - P_(N-1)(pi_x) P_N(pi_y)) / (c_(N-1) (pi_x - pi_y)).
    """
    _check_index(ops, x)
    _check_index(ops, y)
    if x == y:
        raise ValueError('The two point formula needs distinct nodes')
    first, second = ops.nodes[x], ops.nodes[y]
    upper, lower = ops.polynomials[particles], ops.polynomials[particles - 1]
    numerator = upper(first) * lower(second) - lower(first) * upper(second)
    return ops.weights[x] * div(numerator, ops.norms[particles - 1] * (first - second))


def kernel_matrix(ops: OPSystem, particles: int) -> List[List[Any]]:
    """The full conjugated kernel matrix on the grid."""
    size = len(ops.nodes)
    return [[cd_kernel(ops, particles, x, y) for y in range(size)] for x in range(size)]


def leading_coefficient_hypergeometric(q: Any, alpha: Any, beta: Any, gamma: Any, delta: Any, degree: int) -> Any:  # pylint: disable=too-many-arguments,too-many-positional-arguments
    """
    Leading coefficient of the q-Racah polynomial normalized to 1 at x = 0, as a polynomial in sigma(q^-x).

    (q^-n, alpha beta q^(n+1); q)_n (-1)^n q^(n(n+1)/2) / (alpha q, beta delta q, gamma q, q; q)_n, evaluated with mpmath.
    """
    numerator = mpmath.qp(q ** (-degree), q, degree) * mpmath.qp(alpha * beta * q ** (degree + 1), q, degree) * (-1) ** degree \
        * q ** (degree * (degree + 1) // 2)
    denominator = mpmath.qp(alpha * q, q, degree) * mpmath.qp(beta * delta * q, q, degree) * mpmath.qp(gamma * q, q, degree) \
        * mpmath.qp(q, q, degree)
    return numerator / denominator


def cn_closed_form(params: EnsembleParams, degree: int, precision_bits: int = 128) -> Any:
    """
    Norm of the monic polynomial P_n from the closed orthogonality relation.

    The infinite q-Pochhammer products are evaluated with mpmath.qp at the given precision. The closed form is the norm of
    the hypergeometrically normalized polynomial; it is divided by the square of its leading coefficient.

    Args:
        params (EnsembleParams): the parameters, delta > 0.
        degree (int): n.
        precision_bits (int): working precision.

    Raises:
        InvalidParamsError: if delta = 0, where the closed form divides by delta.
        NonConvergentError: if q is outside (0, 1) so the infinite products diverge.
    """
    if params.delta == 0:
        raise InvalidParamsError('The closed form norm needs delta > 0')
    with mpmath.workprec(precision_bits):
        q, alpha, beta = to_bigfloat(params.q), to_bigfloat(params.alpha), to_bigfloat(params.beta)
        gamma, delta = to_bigfloat(params.gamma), to_bigfloat(params.delta)
        if not 0 < abs(q) < 1:
            raise NonConvergentError(f'Infinite products in base {params.q} do not converge')

        def infinite(*arguments: Any) -> Any:
            result = mpmath.mpf(1)
            for argument in arguments:
                result *= mpmath.qp(argument, q)
            return result

        def finite(*arguments: Any) -> Any:
            result = mpmath.mpf(1)
            for argument in arguments:
                result *= mpmath.qp(argument, q, degree)
            return result

        mass = infinite(gamma * delta * q ** 2, gamma / (alpha * beta), delta / alpha, 1 / beta) \
            / infinite(gamma * delta * q / alpha, gamma * q / beta, delta * q, 1 / (alpha * beta * q))
        hypergeometric_norm = mass * (1 - alpha * beta * q) * (gamma * delta * q) ** degree / (1 - alpha * beta * q ** (2 * degree + 1)) \
            * finite(q, beta * q, alpha * q / delta, alpha * beta * q / gamma) / finite(alpha * beta * q, alpha * q, beta * delta * q, gamma * q)
        lead = leading_coefficient_hypergeometric(q, alpha, beta, gamma, delta, degree)
        return +(hypergeometric_norm / (lead * lead))
