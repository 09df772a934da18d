"""Module for the connection matrices A_s, their isomonodromic dynamics and the gap probability recursion they carry."""
from __future__ import annotations
from typing import TYPE_CHECKING

import logging

from qracah_gaps.ensemble import NodeGrid, node, phi_factors, phi_polys, weight_ratio
from qracah_gaps.errors import CancellationFailureError, DegenerateJumpError, InvalidParamsError, InvariantViolationError, NonDiagonalLimitError, \
    RankFailureError, ZeroDeterminantError
from qracah_gaps.numeric.matrix import Mat2, det2, solve_linear
from qracah_gaps.numeric.poly import Poly, float_tolerance
from qracah_gaps.numeric.ratfunc import RatFunc, laurent_expand
from qracah_gaps.numeric.scalars import div, format_exact, is_exact
from qracah_gaps.oracle import GapTable, rho_values, seed_values
from qracah_gaps.orthopoly import build_ops

if TYPE_CHECKING:
    from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

    from qracah_gaps.drhp import DRHPSolution
    from qracah_gaps.ensemble import EnsembleParams

LOG: logging.Logger = logging.getLogger("qracah_gaps.connection")

DEFAULT_PRECISION_BITS: int = 256


def pole_parameters(params: EnsembleParams, s: int) -> Tuple[Any, Any, Any, Any, Any, Any]:
    """
    The pole parameters (z1, ..., z6) of A_s.

    z1 = z2 = q^(-s+1), z3 = q, z4 = alpha q, z5 = delta q, z6 = beta delta q.
    """
    q = params.q
    first = div(1, q ** (s - 1))
    return first, first, q, params.alpha * q, params.delta * q, params.beta * params.delta * q


def pole_polynomials(params: EnsembleParams, s: int) -> Tuple[Poly, Poly]:
    """
    The denominators (P_s, Q_s) of A_s and A_s^-1.

    P_s = (z - z1)(z - u^2/z2)(z - z3)(z - u^2/z4)(z - z5)(z - u^2/z6) and
    Q_s = (z1 z3 z5/(z2 z4 z6)) (z - u^2/z1)(z - z2)(z - u^2/z3)(z - z4)(z - u^2/z5)(z - z6).
    """
    u2 = params.u2
    z1, z2, z3, z4, z5, z6 = pole_parameters(params, s)
    lower = Poly.from_roots([z1, div(u2, z2), z3, div(u2, z4), z5, div(u2, z6)])
    upper = Poly.from_roots([div(u2, z1), z2, div(u2, z3), z4, div(u2, z5), z6], lead=div(z1 * z3 * z5, z2 * z4 * z6))
    return lower, upper


def _vanishes(value: Any, tolerance: Optional[Any]) -> bool:
    if tolerance is None or is_exact(value):
        return value == 0
    return abs(value) <= tolerance


def _palindromic_quadratic(polynomial: Poly, u2: Any) -> Tuple[Any, Any]:
    """Split c z (z^2 - u^2)(a z^2 + b z + a u^2) into (a, b)."""
    if polynomial.is_zero():
        return 0, 0
    try:
        quotient = polynomial.exact_div(Poly((0, -u2, 0, 1)))
    except CancellationFailureError as err:
        raise InvariantViolationError(f'{polynomial!r} is not divisible by z(z^2 - u^2)') from err
    if quotient.degree > 2 or quotient.coefficient(0) != quotient.coefficient(2) * u2:
        raise InvariantViolationError(f'{polynomial!r} is not of the palindromic form z(z^2-u^2)(a z^2 + b z + a u^2)')
    return quotient.coefficient(2), quotient.coefficient(1)


class ConnectionMatrix:
    """
    The connection matrix A_s(z) = B_s(z)/P_s(z) of the q-Racah ensemble.

    Args:
        s (int): index of the matrix, the number of poles of the underlying m_s.
        params (EnsembleParams): ensemble parameters, delta > 0.
        b (Mat2): the polynomial matrix B_s.

    Raises:
        InvalidParamsError: if delta = 0, where several pole parameters collapse to zero.
    """
    def __init__(self, s: int, params: EnsembleParams, b: Mat2) -> None:
        if params.delta == 0:
            raise InvalidParamsError('Connection matrices need delta > 0')
        self.s: int = s
        self.params: EnsembleParams = params
        self.b: Mat2 = b
        self.z: Tuple[Any, ...] = pole_parameters(params, s)
        u2 = params.u2
        z1, z2, z3, z4, z5, z6 = self.z
        self.P, self.Q = pole_polynomials(params, s)  # pylint: disable=invalid-name
        self._q_lead: Any = div(z1 * z3 * z5, z2 * z4 * z6)
        self._q_roots: List[Any] = [div(u2, z1), z2, div(u2, z3), z4, div(u2, z5), z6]

    def q_reduced(self) -> Poly:
        """Q_s(z)/(z - z1), regular and nonzero at z1."""
        return Poly.from_roots(self._q_roots[:1] + self._q_roots[2:], lead=self._q_lead)

    def coefficients(self) -> Dict[str, List[Any]]:
        """
        Coefficients of the palindromic form of B_s.

        b11 = n0 z^6 + n1 z^5 + n2 z^4 + n3 z^3 + n4 u^2 z^2 + n5 u^4 z + n6 u^6,
        b12 = z(z^2 - u^2)(m0 z^2 + m1 z + m0 u^2) and b21 = z(z^2 - u^2)(k0 z^2 + k1 z + k0 u^2).

        Raises:
            InvariantViolationError: if b12 or b21 is not of the palindromic form.
        """
        u2 = self.params.u2
        b11 = self.b.e11
        scaled = [b11.coefficient(6), b11.coefficient(5), b11.coefficient(4), b11.coefficient(3),
                  div(b11.coefficient(2), u2), div(b11.coefficient(1), u2 * u2), div(b11.coefficient(0), u2 * u2 * u2)]
        return {'n': scaled, 'm': list(_palindromic_quadratic(self.b.e12, u2)), 'k': list(_palindromic_quadratic(self.b.e21, u2))}

    def evaluate(self, point: Any) -> Mat2:
        """
        A_s at a point.

        Raises:
            EvaluationAtPoleError: at a zero of P_s.
        """
        return self.as_ratfunc().evaluate(point)

    def inverse_at(self, point: Any) -> Mat2:
        """
        A_s^-1 = adj(B_s)/Q_s at a point.

        Raises:
            EvaluationAtPoleError: at a zero of Q_s.
        """
        return self.inverse_ratfunc().evaluate(point)

    def as_ratfunc(self) -> Mat2:
        """A_s with RatFunc entries."""
        return self.b.map(lambda entry: RatFunc(entry, self.P))

    def inverse_ratfunc(self) -> Mat2:
        """A_s^-1 with RatFunc entries."""
        return self.b.adjugate().map(lambda entry: RatFunc(entry, self.Q))

    def det_defect(self) -> Poly:
        """det B_s - P_s Q_s, the zero polynomial for a valid matrix."""
        return self.b.det() - self.P * self.Q

    def involution_defect(self) -> Mat2:
        """
        z^6 B_s(u^2/z) B_s(z) - z^6 P_s(u^2/z) P_s(z) I.

        Every entry is the zero polynomial exactly when A_s(u^2/z) A_s(z) = I.
        """
        reflected = self._reflected(self.b)
        scale = self._reflect(self.P) * self.P
        product = reflected * self.b
        return product - Mat2(scale, Poly(), Poly(), scale)

    def _reflect(self, polynomial: Poly) -> Poly:
        return polynomial.homogenize(Poly.constant(self.params.u2), Poly.identity(), 6)

    def _reflected(self, matrix: Mat2) -> Mat2:
        return matrix.map(self._reflect)

    def value_at_u(self) -> Mat2:
        """A_s(u), the identity for a valid matrix."""
        return self.evaluate(self.params.u)

    def value_at_minus_u(self) -> Mat2:
        """A_s(-u)."""
        return self.evaluate(-self.params.u)

    def palindromy_defect(self) -> Poly:
        """u^6 b22(z) - z^6 b11(u^2/z)."""
        u2 = self.params.u2
        return self.b.e22 * (u2 * u2 * u2) - self._reflect(self.b.e11)

    def check(self) -> None:
        """
        Verify the determinant, involution and palindromic structure (exact backends).

        Raises:
            InvariantViolationError: on the first failed property.
        """
        if not self.det_defect().is_zero():
            raise InvariantViolationError(f'det A_{self.s} differs from Q/P')
        if not all(entry.is_zero() for entry in self.involution_defect()):
            raise InvariantViolationError(f'A_{self.s}(u^2/z) A_{self.s}(z) is not the identity')
        if not self.palindromy_defect().is_zero():
            raise InvariantViolationError(f'b22 of A_{self.s} is not the reflection of b11')
        self.coefficients()
        if self.value_at_u() != Mat2.identity():
            raise InvariantViolationError(f'A_{self.s}(u) is not the identity')

    def poles(self) -> Dict[str, Any]:
        """Pole parameters z1..z6 and u^2."""
        data = {f'z{index}': value for index, value in enumerate(self.z, start=1)}
        data['u2'] = self.params.u2
        return data

    def to_json(self) -> Dict[str, Any]:
        """Serializable coefficients and pole data of B_s."""
        coefficients = self.coefficients()
        return {'s': self.s,
                'n': [format_exact(value) for value in coefficients['n']],
                'm': [format_exact(value) for value in coefficients['m']],
                'k': [format_exact(value) for value in coefficients['k']],
                'poles': {key: format_exact(value) for key, value in self.poles().items()}}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConnectionMatrix):
            return NotImplemented
        return self.s == other.s and self.b == other.b

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f'ConnectionMatrix(s={self.s}, b={self.b!r})'


class TransitionTriple:
    """
    Vectors (v, v1, v2) determining the jump T_s = v v1^T/(v1^T v2).

    v spans the image of the residue of A_s at z1, v1^T the image of the residue of A_s^-T, and v2 solves the order zero
    Laurent condition, so that T_s v2 = v.
    """
    def __init__(self, v: Sequence[Any], v1: Sequence[Any], v2: Sequence[Any]) -> None:
        self.v: Tuple[Any, Any] = (v[0], v[1])
        self.v1: Tuple[Any, Any] = (v1[0], v1[1])
        self.v2: Tuple[Any, Any] = (v2[0], v2[1])

    def pairing(self) -> Any:
        """v1^T v2."""
        return self.v1[0] * self.v2[0] + self.v1[1] * self.v2[1]

    def det(self) -> Any:
        """det[v, v2]."""
        return det2(self.v, self.v2)

    def jump(self) -> Mat2:
        """
        The nilpotent jump T_s.

        Raises:
            DegenerateJumpError: if v1^T v2 = 0.
        """
        pairing = self.pairing()
        if pairing == 0:
            raise DegenerateJumpError('v1^T v2 vanishes')
        return Mat2.outer(self.v, self.v1).map(lambda entry: div(entry, pairing))

    def scaled(self, factor: Any) -> TransitionTriple:
        """The triple for v -> factor v, which leaves T_s unchanged."""
        return TransitionTriple((factor * self.v[0], factor * self.v[1]), self.v1, (factor * self.v2[0], factor * self.v2[1]))

    def __repr__(self) -> str:
        return f'TransitionTriple(v={self.v}, v1={self.v1}, v2={self.v2})'


def build_AN(params: EnsembleParams, grid: Optional[NodeGrid] = None, rho: Optional[List[Any]] = None) -> ConnectionMatrix:  # pylint: disable=invalid-name
    """
    The initial connection matrix A_N in closed form.

    b11 = q^-N (z3 z5/(z4 z6)) (z - u^2/z1)(z - u^2/z2)(z - z3)(z - z4)(z - u^2/z5)(z - z6),
    b22 = q^N (z - z1)(z - z2)(z - u^2/z3)(z - u^2/z4)(z - z5)(z - u^2/z6), b12 = 0 and
    b21 = z(z^2 - u^2)(k0 z^2 + k1 z + k0 u^2) with k0, k1 sums over the first N nodes.

    Args:
        params (EnsembleParams): the parameters.
        grid (NodeGrid): node grid, built from params if omitted.
        rho (List): the values rho_x, computed if omitted.

    Raises:
        InvalidParamsError: if delta = 0, where u^2 vanishes and the pole parameters collapse.
    """
    if params.delta == 0:
        raise InvalidParamsError('Connection matrices need delta > 0')
    if grid is None:
        grid = NodeGrid(params)
    if rho is None:
        rho = rho_values(grid, params.N)
    particles = params.N
    q, u2 = params.q, params.u2
    z1, z2, z3, z4, z5, z6 = pole_parameters(params, particles)
    lower_scale = div(1, q ** particles)
    upper_scale = q ** particles
    b11 = Poly.from_roots([div(u2, z1), div(u2, z2), z3, z4, div(u2, z5), z6], lead=lower_scale * div(z3 * z5, z4 * z6))
    b22 = Poly.from_roots([z1, z2, div(u2, z3), div(u2, z4), z5, div(u2, z6)], lead=upper_scale)
    first = div(lower_scale, params.alpha * params.beta)
    second = q ** (particles - 1)
    upper_sum = div(u2, z1) + div(u2, z2) + z3 + z4 + div(u2, z5) + z6
    lower_sum = z1 + z2 + div(u2, z3) + div(u2, z4) + z5 + div(u2, z6)
    k0: Any = 0
    k1: Any = 0
    for x in range(particles):
        scale = q * rho[x]
        k0 = k0 + scale * (first - second)
        k1 = k1 + scale * (first * (q * grid.nodes[x] - upper_sum) - second * (grid.nodes[x] - lower_sum))
    b21 = Poly((0, -u2, 0, 1)) * Poly((k0 * u2, k1, k0))
    LOG.debug('A_%d: k0=%s k1=%s', particles, k0, k1)
    return ConnectionMatrix(particles, params, Mat2(b11, Poly(), b21, b22))


def b21_sum(params: EnsembleParams, grid: Optional[NodeGrid] = None, rho: Optional[List[Any]] = None) -> RatFunc:
    """
    The (2,1) entry of B_N as the residue sum q z sum_(x<N) rho_x [b11/((z - q^(1-x))(z - u^2 q^x)) - b22/((z - q^-x)(qz - u^2 q^x))].

    Agrees with the closed form of build_AN; kept as an independent check.
    """
    if grid is None:
        grid = NodeGrid(params)
    if rho is None:
        rho = rho_values(grid, params.N)
    q, u2 = params.q, params.u2
    matrix = build_AN(params, grid, rho)
    total = RatFunc(Poly())
    for x in range(params.N):
        power = q ** x
        upper = RatFunc(matrix.b.e11 * rho[x], Poly.from_roots([div(q, power), u2 * power]))
        lower = RatFunc(matrix.b.e22 * rho[x], Poly.from_roots([div(1, power)]) * Poly((-u2 * power, q)))
        total = total + upper - lower
    return total * Poly((0, q))


def _substitute(function: RatFunc, numerator: Poly, denominator: Poly) -> RatFunc:
    degree = max(function.num.degree, function.den.degree, 0)
    return RatFunc(function.num.homogenize(numerator, denominator, degree), function.den.homogenize(numerator, denominator, degree))


def _lift(entry: Any) -> RatFunc:
    if isinstance(entry, RatFunc):
        return entry
    if isinstance(entry, Poly):
        return RatFunc.from_poly(entry)
    return RatFunc.constant(entry)


def _from_rational(s: int, params: EnsembleParams, matrix: Mat2, tolerance: Optional[Any]) -> ConnectionMatrix:
    """Clear the denominator P_s of a rational matrix; every other pole must cancel."""
    z1, z2, z3, z4, z5, z6 = pole_parameters(params, s)
    u2 = params.u2
    denominator = Poly.from_roots([z1, div(u2, z2), z3, div(u2, z4), z5, div(u2, z6)])

    def clear(entry: Any) -> Poly:
        function = _lift(entry)
        return (function.num * denominator).exact_div(function.den, tolerance)

    result = ConnectionMatrix(s, params, matrix.map(clear))
    if tolerance is None:
        result.check()
    return result


def _tolerance(params: EnsembleParams, precision_bits: Optional[int]) -> Optional[Any]:
    if is_exact(params.q):
        return None
    return float_tolerance(precision_bits or DEFAULT_PRECISION_BITS)


def build_As_from_m(m: DRHPSolution, params: EnsembleParams, precision_bits: Optional[int] = None) -> ConnectionMatrix:  # pylint: disable=invalid-name
    """
    A_s = m_s(sigma(z/q)) D(z) m_s(sigma(z))^-1 with D = diag(Phi^+/Phi^-, 1).

    The product is formed over rational functions and cleared by P_s; the poles at the interior nodes cancel.

    Raises:
        CancellationFailureError: if a pole that should cancel survives.
    """
    q, u2 = params.q, params.u2
    entries = m.entries()
    shifted = entries.map(lambda entry: _substitute(entry, Poly((q * u2, 0, 1)), Poly((0, q))))
    direct = entries.map(lambda entry: _substitute(entry, Poly((u2, 0, q)), Poly((0, q))))
    direct_inverse = Mat2(direct.e22, -direct.e12, -direct.e21, direct.e11)
    plus, minus = phi_polys(params)
    scale = Mat2(RatFunc(plus, minus), RatFunc(Poly()), RatFunc(Poly()), RatFunc.constant(1))
    return _from_rational(m.s, params, shifted * scale * direct_inverse, _tolerance(params, precision_bits))


def isomonodromy_step(matrix: ConnectionMatrix, jump: Mat2, precision_bits: Optional[int] = None) -> ConnectionMatrix:
    """
    A_(s+1)(z) = (I + T_s/(sigma(z/q) - pi_s)) A_s(z) (I - T_s/(sigma(z) - pi_s)).

    Args:
        matrix (ConnectionMatrix): A_s.
        jump (Mat2): the nilpotent jump T_s.
        precision_bits (int): precision of the float cancellation test.

    Raises:
        CancellationFailureError: if the result is not of the connection matrix form.
    """
    params = matrix.params
    q, u2 = params.q, params.u2
    pi = node(matrix.s, params)
    left_factor = RatFunc(Poly((0, q)), Poly((q * u2, -q * pi, 1)))
    right_factor = RatFunc(Poly((0, q)), Poly((u2, -q * pi, q)))
    left = Mat2.identity().map(RatFunc.constant) + jump.map(lambda entry: left_factor * entry)
    right = Mat2.identity().map(RatFunc.constant) - jump.map(lambda entry: right_factor * entry)
    following = _from_rational(matrix.s + 1, params, left * matrix.as_ratfunc() * right, _tolerance(params, precision_bits))
    LOG.debug('Isomonodromic step A_%d -> A_%d', matrix.s, following.s)
    return following


def _kappa(params: EnsembleParams, s: int) -> Any:
    q, u2 = params.q, params.u2
    return div(div(1, q ** s) - u2 * q ** (s - 1), div(1, q ** (s - 1)))


def extract_triple(matrix: ConnectionMatrix, anchor: Optional[Sequence[Any]] = None, precision_bits: Optional[int] = None) -> TransitionTriple:
    """
    The triple (v, v1, v2) of A_s at its pole z1 = q^(-s+1).

    v spans the image of B_s(z1), v1 is a nonzero row of adj B_s(z1). With (z - z1) A_s^-1(z) = R + C (z - z1) + ...,
    v2 solves R v2 = C v/kappa_s with kappa_s = (q^-s - u^2 q^(s-1))/q^(-s+1), fixed by v . v2 = 0.

    Args:
        matrix (ConnectionMatrix): A_s.
        anchor (Sequence): optional target vector; v is scaled so that its first nonzero component matches the anchor,
            otherwise that component is scaled to 1.
        precision_bits (int): precision of the float zero tests.

    Raises:
        RankFailureError: if the residue is not of rank one.
        NoSolutionError: if the v2 system is inconsistent.
    """
    params = matrix.params
    tolerance = _tolerance(params, precision_bits)
    z1 = matrix.z[0]
    value = matrix.b.evaluate(z1)
    if all(_vanishes(entry, tolerance) for entry in value):
        raise RankFailureError(f'The residue of A_{matrix.s} at {z1} vanishes')
    if not _vanishes(value.det(), tolerance):
        raise RankFailureError(f'The residue of A_{matrix.s} at {z1} has rank two')
    column = value.column(0)
    if all(_vanishes(entry, tolerance) for entry in column):
        column = value.column(1)
    index = 0 if not _vanishes(column[0], tolerance) else 1
    target = 1 if anchor is None else anchor[index]
    factor = div(target, column[index])
    v = (factor * column[0], factor * column[1])
    adjugate = value.adjugate()
    v1 = (adjugate.e11, adjugate.e12)
    if all(_vanishes(entry, tolerance) for entry in v1):
        v1 = (adjugate.e21, adjugate.e22)
    reduced = matrix.q_reduced()
    regular = matrix.b.adjugate().map(lambda entry: RatFunc(entry, reduced))
    expansions = [laurent_expand(entry, z1, 1) for entry in regular]
    residue = Mat2(*(expansion[1] for expansion in expansions))
    constant = Mat2(*(expansion[2] for expansion in expansions))
    kappa = _kappa(params, matrix.s)
    image = constant.apply(v)
    rows = [[residue.e11, residue.e12], [residue.e21, residue.e22], [v[0], v[1]]]
    v2 = solve_linear(rows, [div(image[0], kappa), div(image[1], kappa), 0], tolerance)
    return TransitionTriple(v, v1, v2)


def in_residue_image(matrix: ConnectionMatrix, vector: Sequence[Any]) -> bool:
    """True if vector lies in the image of the residue of A_s at z1."""
    value = matrix.b.evaluate(matrix.z[0])
    return det2(value.column(0), vector) == 0 and det2(value.column(1), vector) == 0


def _derivative_at(function: RatFunc, point: Any) -> Any:
    return laurent_expand(function, point, 1)[2]


def advance_triple(matrix: ConnectionMatrix, triple: TransitionTriple) -> TransitionTriple:
    """
    The triple of A_(s+1) from that of A_s.

    With R(w) = I + T_s/(sigma(w) - pi_s): v^ = R(q^(-s-1)) A_s(q^-s) v, v1^T = v1^T A_s^-1(q^-s) R^-1(q^(-s-1)) and
    v2^ = R(q^(-s-1)) A_s(q^-s) (q^-s G v^ + (q^-s - u^2 q^(s-1)) v2)/(q^(-s-1) - u^2 q^s), where G is the derivative of
    A_s^-1(z) R^-1(z/q) at z = q^-s.

    Raises:
        EvaluationAtPoleError: if q^-s is a pole of A_s or A_s^-1.
    """
    params = matrix.params
    q, u2 = params.q, params.u2
    s = matrix.s
    jump = triple.jump()
    pi = node(s, params)
    point = div(1, q ** s)
    gap = node(s + 1, params) - pi
    shift = Mat2.identity() + jump.map(lambda entry: div(entry, gap))
    shift_inverse = Mat2.identity() - jump.map(lambda entry: div(entry, gap))
    value = matrix.evaluate(point)
    inverse_value = matrix.inverse_at(point)
    v_hat = shift.apply(value.apply(triple.v))
    v1_hat = shift_inverse.apply_left(inverse_value.apply_left(triple.v1))
    factor = RatFunc(Poly((0, q)), Poly((q * u2, -q * pi, 1)))
    right = Mat2.identity().map(RatFunc.constant) - jump.map(lambda entry: factor * entry)
    derivative = (matrix.inverse_ratfunc() * right).map(lambda entry: _derivative_at(entry, point))
    moved = derivative.apply(v_hat)
    weight = point - u2 * q ** (s - 1)
    combined = (point * moved[0] + weight * triple.v2[0], point * moved[1] + weight * triple.v2[1])
    lifted = shift.apply(value.apply(combined))
    scale = div(1, div(1, q ** (s + 1)) - u2 * q ** s)
    v2_hat = (scale * lifted[0], scale * lifted[1])
    return TransitionTriple(v_hat, v1_hat, v2_hat)


def gap_double_ratio(triple: TransitionTriple, advanced: TransitionTriple, s: int, params: EnsembleParams) -> Any:
    """
    D_(s+2) D_s / D_(s+1)^2 = (omega(s+1)/omega(s)) (Phi^-(q^-s)/Phi^+(q^-s))^2 det[v^, v2^]/det[v, v2].

    The value does not depend on the scaling of v.

    Raises:
        ZeroDeterminantError: if det[v, v2] vanishes.
    """
    determinant = triple.det()
    if determinant == 0:
        raise ZeroDeterminantError(f'det[v, v2] vanishes at s={s}')
    plus, minus = phi_factors(div(1, params.q ** s), params)
    rescale = div(minus, plus)
    return weight_ratio(s, params) * rescale * rescale * div(advanced.det(), determinant)


def asymptotic_limit(matrix: ConnectionMatrix) -> Mat2:
    """
    Limit of S(z/q + u^2/z) A_s(z) S^-1(z + u^2/(qz)) at infinity, S(w) = diag(1, w).

    Raises:
        NonDiagonalLimitError: if an entry grows, i.e. deg b11, deg b22 > 6, deg b12 > 7 or deg b21 > 5.
    """
    b = matrix.b
    if max(b.e11.degree, b.e22.degree) > 6 or b.e12.degree > 7 or b.e21.degree > 5:
        raise NonDiagonalLimitError(f'The conjugated A_{matrix.s} has no finite limit at infinity')
    q = matrix.params.q
    return Mat2(b.e11.coefficient(6), b.e12.coefficient(7), div(b.e21.coefficient(5), q), div(b.e22.coefficient(6), q))


def asymptotic_d(matrix: ConnectionMatrix) -> Tuple[Any, Any]:
    """
    The diagonal (d1, d2) of the asymptotic limit.

    The (2,1) entry of the limit is k0/q and is not part of the condition; the (1,2) entry must vanish.

    Raises:
        NonDiagonalLimitError: if the (1,2) entry of the limit is not zero.
    """
    limit = asymptotic_limit(matrix)
    if limit.e12 != 0:
        raise NonDiagonalLimitError(f'The conjugated A_{matrix.s} has a nonzero (1,2) limit')
    return limit.e11, limit.e22


def iterate_connection(params: EnsembleParams, precision_bits: Optional[int] = None) -> Iterator[Tuple[ConnectionMatrix, TransitionTriple]]:
    """
    Yield (A_s, triple_s) for s = N..M, starting from build_AN and following the isomonodromic dynamics.
    """
    grid = NodeGrid(params)
    rho = rho_values(grid, params.N)
    matrix = build_AN(params, grid, rho)
    if _tolerance(params, precision_bits) is None:
        matrix.check()
    triple = extract_triple(matrix, precision_bits=precision_bits)
    yield matrix, triple
    for _ in range(params.N, params.M):
        following = isomonodromy_step(matrix, triple.jump(), precision_bits)
        triple = advance_triple(matrix, triple)
        matrix = following
        yield matrix, triple


def connection_gap_table(params: EnsembleParams, precision_bits: Optional[int] = None,
                         observer: Optional[Callable[[ConnectionMatrix, TransitionTriple], None]] = None, method: str = 'connection') -> GapTable:
    """
    Gap table from the seeds D_N, D_(N+1) and the double ratio recursion of the connection matrices.

    Args:
        params (EnsembleParams): the parameters.
        precision_bits (int): precision of the float zero tests.
        observer (Callable): called with every (A_s, triple_s) of the run.
        method (str): method label of the table.

    Raises:
        InvariantViolationError: if an exact run does not end at D_(M+1) = 1.
    """
    LOG.info('Running the connection recursion for %s', params)
    grid = NodeGrid(params)
    table = GapTable(params.N, params.M, method)
    first, second = seed_values(grid, build_ops(grid), params.N)
    table[params.N] = first
    if second is None:
        return table
    table[params.N + 1] = second
    ratio = div(second, first)
    previous: Optional[TransitionTriple] = None
    for matrix, triple in iterate_connection(params, precision_bits):
        if previous is not None:
            s = matrix.s - 1
            ratio = ratio * gap_double_ratio(previous, triple, s, params)
            table[s + 2] = table[s + 1] * ratio
            LOG.debug('connection step s=%d double ratio gives D_%d=%s', s, s + 2, table[s + 2])
        if observer is not None:
            observer(matrix, triple)
        previous = triple
    last = params.M + 1
    if _tolerance(params, precision_bits) is None and table[last] != 1:
        raise InvariantViolationError(f'The connection recursion ends at D_{last}={format_exact(table[last])} instead of 1')
    return table
