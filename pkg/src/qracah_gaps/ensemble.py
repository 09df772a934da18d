"""Module for the q-Racah ensemble: parameters, weight, node grid and the tiling slice dictionary."""
from __future__ import annotations
from typing import TYPE_CHECKING

import itertools
import logging
import math
from fractions import Fraction

import mpmath

from qracah_gaps.errors import IndexOutOfRangeError, InvalidKappaError, InvalidParamsError, NoCaseAppliesError, TooLargeError, ZeroArgumentError
from qracah_gaps.numeric.poly import Poly
from qracah_gaps.numeric.scalars import Backend, adjoin_sqrt, div, format_exact, is_exact, to_bigfloat

if TYPE_CHECKING:
    from typing import Any, Dict, List, Tuple

LOG: logging.Logger = logging.getLogger("qracah_gaps.ensemble")

ENUMERATION_GUARD: int = 10**6


class EnsembleParams:  # pylint: disable=too-many-instance-attributes
    """
    Parameters (q, alpha, beta, delta, M, N) of the q-Racah ensemble.

    gamma is fixed to q^(-M-1) and u^2 = gamma*delta*q^2. Values are exact rationals unless the parameters were
    converted with with_backend(Backend.BIGFLOAT).

    Args:
        q: the base, in (0, 1).
        alpha: positive parameter.
        beta: positive parameter.
        delta: non-negative parameter, 0 selects the q-Hahn ensemble.
        M (int): largest node index.
        N (int): number of particles.
    """
    def __init__(self, q: Any, alpha: Any, beta: Any, delta: Any, M: int, N: int) -> None:  # pylint: disable=invalid-name
        if not isinstance(M, int) or not isinstance(N, int):
            raise InvalidParamsError('M and N must be integers')
        self.q: Any = _exact(q)
        self.alpha: Any = _exact(alpha)
        self.beta: Any = _exact(beta)
        self.delta: Any = _exact(delta)
        self.M: int = M  # pylint: disable=invalid-name
        self.N: int = N  # pylint: disable=invalid-name
        if self.q == 0:
            raise InvalidParamsError('q must be nonzero')
        self.gamma: Any = div(1, self.q ** (M + 1))
        self.u2: Any = self.gamma * self.delta * self.q * self.q
        self._u: Any = None

    @property
    def u(self) -> Any:  # pylint: disable=invalid-name
        """Square root of u^2: rational when u^2 is a rational square, a QuadExt generator otherwise, an mpf for big floats."""
        if self._u is None:
            if is_exact(self.u2):
                self._u = adjoin_sqrt(self.u2)
            else:
                self._u = mpmath.sqrt(self.u2)
        return self._u

    @property
    def backend(self) -> Backend:
        """Backend of the parameter values."""
        return Backend.RATIONAL if is_exact(self.q) else Backend.BIGFLOAT

    def with_backend(self, backend: Backend) -> EnsembleParams:
        """
        Convert the parameters to another backend.

        The quadratic backend keeps the rational values; u is adjoined on demand.
        """
        if backend == Backend.BIGFLOAT:
            return EnsembleParams(to_bigfloat(self.q), to_bigfloat(self.alpha), to_bigfloat(self.beta), to_bigfloat(self.delta), self.M, self.N)
        if not is_exact(self.q):
            raise InvalidParamsError('Floating point parameters cannot be converted to an exact backend')
        return self

    def replace(self, **changes: Any) -> EnsembleParams:
        """Copy with some of q, alpha, beta, delta, M, N replaced."""
        values: Dict[str, Any] = {'q': self.q, 'alpha': self.alpha, 'beta': self.beta, 'delta': self.delta, 'M': self.M, 'N': self.N}
        for key, value in changes.items():
            if key not in values:
                raise InvalidParamsError(f'Unknown ensemble parameter {key}')
            values[key] = value
        return EnsembleParams(**values)

    def as_dict(self) -> Dict[str, Any]:
        """Serializable view with exact values as strings."""
        return {'q': format_exact(self.q), 'alpha': format_exact(self.alpha), 'beta': format_exact(self.beta), 'delta': format_exact(self.delta),
                'gamma': format_exact(self.gamma), 'u2': format_exact(self.u2), 'M': self.M, 'N': self.N}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EnsembleParams):
            return NotImplemented
        return (self.q, self.alpha, self.beta, self.delta, self.M, self.N) == (other.q, other.alpha, other.beta, other.delta, other.M, other.N)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f'EnsembleParams(q={self.q}, alpha={self.alpha}, beta={self.beta}, delta={self.delta}, M={self.M}, N={self.N})'


def _exact(value: Any) -> Any:
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise InvalidParamsError(f'Floating point literal {value} is not an exact parameter, use a fraction')
    return value


def check_structure(params: EnsembleParams) -> None:
    """
    Raise on structural errors that make the weight undefined.

    Raises:
        InvalidParamsError: if q is outside (0, 1), N < 1 or M < N - 1, or if gamma*delta*q leaves [0, 1) and the nodes stop increasing.
    """
    if not 0 < params.q < 1:
        raise InvalidParamsError(f'q={params.q} is outside (0, 1)')
    if params.N < 1:
        raise InvalidParamsError(f'N={params.N} must be at least 1')
    if params.M < params.N - 1:
        raise InvalidParamsError(f'M={params.M} must be at least N-1={params.N - 1}')
    gdq = params.gamma * params.delta * params.q
    if not 0 <= gdq < 1:
        raise InvalidParamsError(f'gamma*delta*q={gdq} is outside [0, 1), the nodes are not increasing')


def validate(params: EnsembleParams) -> List[str]:
    """
    List every violated parameter inequality.

    The node ordering condition gamma*delta*q < 1 follows from beta*delta < 1 and beta >= gamma and is still reported on its own.
    check_structure raises on it.

    Args:
        params (EnsembleParams): the parameters.

    Returns:
        List[str]: violated inequalities, empty if the parameters define a probability measure.
    """
    violations: List[str] = []
    if params.M < params.N - 1:
        violations.append('M >= N-1')
    if params.N < 1:
        violations.append('N >= 1')
    if not 0 < params.q < 1:
        violations.append('0 < q < 1')
    if not params.alpha > 0:
        violations.append('alpha > 0')
    if not params.beta > 0:
        violations.append('beta > 0')
    if params.delta < 0:
        violations.append('delta >= 0')
    if not params.beta * params.delta < 1:
        violations.append('beta*delta < 1')
    if params.beta < params.gamma:
        violations.append('beta >= gamma')
    if params.alpha < params.gamma:
        violations.append('alpha >= gamma')
    if not params.gamma * params.delta * params.q < 1:
        violations.append('gamma*delta*q < 1')
    if violations:
        LOG.debug('Parameters %s violate %s', params, violations)
    return violations


def qpochhammer(y: Any, q: Any, k: int) -> Any:
    """
    The q-Pochhammer symbol (y; q)_k = (1 - y)(1 - yq)...(1 - yq^(k-1)).

    Args:
        y: the argument.
        q: the base.
        k (int): number of factors, k >= 0.
    """
    if k < 0:
        raise ValueError('qpochhammer needs k >= 0')
    result: Any = 1
    power: Any = 1
    for _ in range(k):
        result = result * (1 - y * power)
        power = power * q
    return result


def qpochhammer_multi(arguments: List[Any], q: Any, k: int) -> Any:
    """Product (y_1, ..., y_i; q)_k of q-Pochhammer symbols."""
    result: Any = 1
    for argument in arguments:
        result = result * qpochhammer(argument, q, k)
    return result


def weight(x: int, params: EnsembleParams) -> Any:
    """
    The q-Racah weight at node x.

    At delta = 0 the formula reduces to the q-Hahn weight.

    Args:
        x (int): node index in [0, M].
        params (EnsembleParams): the parameters.

    Raises:
        InvalidParamsError: on structural parameter errors.
        IndexOutOfRangeError: if x is outside [0, M].
    """
    check_structure(params)
    if not 0 <= x <= params.M:
        raise IndexOutOfRangeError(f'Node {x} is outside 0..{params.M}')
    q, alpha, beta, gamma, delta = params.q, params.alpha, params.beta, params.gamma, params.delta
    numerator = qpochhammer_multi([alpha * q, beta * delta * q, gamma * q, gamma * delta * q], q, x) * (1 - gamma * delta * q ** (2 * x + 1))
    denominator = qpochhammer_multi([q, div(gamma * delta * q, alpha), div(gamma * q, beta), delta * q], q, x) * (alpha * beta * q) ** x \
        * (1 - gamma * delta * q)
    try:
        return div(numerator, denominator)
    except ZeroDivisionError as err:
        raise InvalidParamsError(f'The weight is undefined at x={x} for {params}') from err


def qhahn_weight(x: int, params: EnsembleParams) -> Any:
    """q-Hahn weight (alpha q, q^-M; q)_x / ((q, q^-M/beta; q)_x (alpha beta q)^x)."""
    check_structure(params)
    if not 0 <= x <= params.M:
        raise IndexOutOfRangeError(f'Node {x} is outside 0..{params.M}')
    q, alpha, beta = params.q, params.alpha, params.beta
    q_minus_m = div(1, q ** params.M)
    return div(qpochhammer_multi([alpha * q, q_minus_m], q, x), qpochhammer_multi([q, div(q_minus_m, beta)], q, x) * (alpha * beta * q) ** x)


def sigma(z: Any, params: EnsembleParams) -> Any:
    """
    The map sigma(z) = z + u^2/(qz).

    Raises:
        ZeroArgumentError: at z = 0.
    """
    if z == 0:
        raise ZeroArgumentError('sigma is undefined at z = 0')
    return z + div(params.u2, params.q * z)


def node(x: int, params: EnsembleParams) -> Any:
    """The node pi_x = sigma(q^-x)."""
    return sigma(div(1, params.q ** x), params)


def phi_polys(params: EnsembleParams) -> Tuple[Poly, Poly]:
    """
    Phi^+ and Phi^- as polynomials.

    Phi^+ = (z - alpha q)(z - beta delta q)(z - gamma q)(z - gamma delta q),
    Phi^- = alpha beta (z - gamma delta q/alpha)(z - gamma q/beta)(z - delta q)(z - q).
    """
    q, alpha, beta, gamma, delta = params.q, params.alpha, params.beta, params.gamma, params.delta
    plus = Poly.from_roots([alpha * q, beta * delta * q, gamma * q, gamma * delta * q])
    minus = Poly.from_roots([div(gamma * delta * q, alpha), div(gamma * q, beta), delta * q, q], lead=alpha * beta)
    return plus, minus


def phi_factors(z: Any, params: EnsembleParams) -> Tuple[Any, Any]:
    """Values (Phi^+(z), Phi^-(z))."""
    plus, minus = phi_polys(params)
    return plus(z), minus(z)


def weight_ratio(x: int, params: EnsembleParams) -> Any:
    """
    Closed form of weight(x+1)/weight(x).

    Phi^+(q^-x)(q^-2x - q u^2) / (q Phi^-(q^-x)(q^-2x - u^2/q)).
    """
    q, u2 = params.q, params.u2
    point = div(1, q ** x)
    plus, minus = phi_factors(point, params)
    return div(plus * (point * point - q * u2), q * minus * (point * point - div(u2, q)))


class NodeGrid:
    """
    Nodes pi_0 < ... < pi_M and weights omega(0..M) of an ensemble.

    Args:
        params (EnsembleParams): the parameters.
    """
    def __init__(self, params: EnsembleParams) -> None:
        check_structure(params)
        self.params: EnsembleParams = params
        self.nodes: List[Any] = [node(x, params) for x in range(params.M + 1)]
        self.weights: List[Any] = [weight(x, params) for x in range(params.M + 1)]

    @property
    def size(self) -> int:
        """Number of nodes M + 1."""
        return len(self.nodes)

    def is_ordered(self) -> bool:
        """True if the nodes are strictly increasing and all weights positive."""
        increasing = all(left < right for left, right in zip(self.nodes, self.nodes[1:]))
        return increasing and all(value > 0 for value in self.weights)

    def restricted(self, count: int) -> Tuple[List[Any], List[Any]]:
        """Nodes and weights of the first count nodes."""
        return self.nodes[:count], self.weights[:count]


def configuration_weight(configuration: Tuple[int, ...], grid: NodeGrid) -> Any:
    """Unnormalized probability prod (pi_i - pi_j)^2 prod omega of a configuration of node indices."""
    result: Any = 1
    for first, second in itertools.combinations(configuration, 2):
        difference = grid.nodes[first] - grid.nodes[second]
        result = result * difference * difference
    for index in configuration:
        result = result * grid.weights[index]
    return result


def distribution(params: EnsembleParams, grid: NodeGrid | None = None) -> Dict[Tuple[int, ...], Any]:
    """
    Probability of every N-point configuration.

    Raises:
        TooLargeError: if the number of configurations exceeds the enumeration guard.
    """
    count = math.comb(params.M + 1, params.N)
    if count > ENUMERATION_GUARD:
        raise TooLargeError(f'{count} configurations exceed the guard of {ENUMERATION_GUARD}')
    if grid is None:
        grid = NodeGrid(params)
    weights = {configuration: configuration_weight(configuration, grid) for configuration in itertools.combinations(range(params.M + 1), params.N)}
    total: Any = sum(weights.values())
    return {configuration: div(value, total) for configuration, value in weights.items()}


def tiling_case(b: int, c: int, t: int) -> Tuple[int, int]:
    """
    Select the case of the tiling slice dictionary.

    The strict case conditions are checked in the order (1) to (4) and the first match wins.

    Args:
        b (int): hexagon side b.
        c (int): hexagon side c.
        t (int): slice index in [0, b + c].

    Returns:
        Tuple[int, int]: the case number and the offset subtracted from slice positions.

    Raises:
        NoCaseAppliesError: if no case covers the slice.
    """
    total, side = b + c, c
    if not 0 <= t <= total:
        raise NoCaseAppliesError(f'Slice {t} is outside 0..{total}')
    if t < side and t < total - side:
        return 1, 0
    if side - 1 < t < total - side + 1:
        return 2, 0
    if total - side + 1 < t < side:
        return 3, t + side - total
    if t > side - 1 and t > total - side - 1:
        return 4, t + side - total
    raise NoCaseAppliesError(f'No case of the slice dictionary covers t={t} for b={b}, c={c}')


def tiling_to_ensemble(a: int, b: int, c: int, t: int, kappa2: Any, q: Any) -> EnsembleParams:  # pylint: disable=too-many-arguments,too-many-positional-arguments
    """
    Ensemble parameters describing slice t of a random (a, b, c) hexagon tiling.

    Args:
        a (int): number of particles N.
        b (int): hexagon side b, T = b + c.
        c (int): hexagon side c, S = c.
        t (int): slice index.
        kappa2: kappa^2, in [0, q^(T-1)).
        q: the base.

    Raises:
        InvalidKappaError: if kappa^2 is outside the admissible range.
        NoCaseAppliesError: if no case covers the slice.
    """
    q = _exact(q)
    kappa2 = _exact(kappa2)
    total, side, particles = b + c, c, a
    if not 0 <= kappa2 < q ** (total - 1):
        raise InvalidKappaError(f'kappa^2={kappa2} is outside [0, q^{total - 1})')
    case, _ = tiling_case(b, c, t)

    def power(exponent: int) -> Any:
        return q ** exponent

    if case == 1:
        alpha, beta, delta, size = power(-side - particles), power(side - total - particles), kappa2 * power(particles - side), t + particles - 1
    elif case == 2:
        alpha, beta, delta, size = power(-t - particles), power(t - total - particles), kappa2 * power(particles - t), side + particles - 1
    elif case == 3:
        alpha, beta, delta, size = power(t - total - particles), power(-total - particles), kappa2 * power(t + particles - total), \
            total - side + particles - 1
    else:
        alpha, beta, delta, size = power(side - total - particles), power(-side - particles), kappa2 * power(side + particles - total), \
            total - t + particles - 1
    params = EnsembleParams(q, alpha, beta, delta, size, particles)
    LOG.debug('Slice t=%d of hexagon (%d,%d,%d) maps to case (%d): %s', t, a, b, c, case, params)
    return params
