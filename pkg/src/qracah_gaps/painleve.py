"""Module for spectral and Painleve coordinates of the connection matrices and the discrete Painleve dynamics on them."""
from __future__ import annotations
from typing import TYPE_CHECKING

import logging
from enum import Enum
from fractions import Fraction

import mpmath

from qracah_gaps.connection import ConnectionMatrix, advance_triple, asymptotic_d, build_AN, extract_triple, gap_double_ratio, iterate_connection, \
    pole_parameters, pole_polynomials
from qracah_gaps.ensemble import NodeGrid
from qracah_gaps.errors import BasePointHitError, CancellationFailureError, DegenerateB21Error, IndeterminateStepError, InvariantViolationError, \
    InvolutionFixedPointError, InvalidParamsError, UnknownTokenError
from qracah_gaps.lattice import E7_DATA, ENSEMBLE_STEP_CONJUGATOR, ENSEMBLE_TRANSLATION, inverse_word, parse_word
from qracah_gaps.numeric.matrix import Mat2, solve_linear
from qracah_gaps.numeric.poly import Poly, poly_gcd
from qracah_gaps.numeric.scalars import QuadExt, adjoin_sqrt, div, format_exact, is_exact, to_bigfloat
from qracah_gaps.oracle import GapTable, seed_values
from qracah_gaps.orthopoly import build_ops

if TYPE_CHECKING:
    from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

    from qracah_gaps.ensemble import EnsembleParams

LOG: logging.Logger = logging.getLogger("qracah_gaps.painleve")

# exponent of q in the null root product a0^2 a1 a2^2 a3^3 a4^4 a5^3 a6^2 a7
NULL_ROOT_COEFFICIENTS: Tuple[int, ...] = (2, 1, 2, 3, 4, 3, 2, 1)


class Direction(Enum):
    """Direction of a discrete Painleve step."""
    FORWARD = 'forward'
    INVERSE = 'inverse'
    NONE = 'none'


def _simplify(value: Any) -> Any:
    if isinstance(value, QuadExt) and value.is_rational():
        return value.a
    return value


def _divide(numerator: Any, denominator: Any, error: type, message: str) -> Any:
    if denominator == 0:
        raise error(message)
    return _simplify(div(numerator, denominator))


class SpectralPoint:
    """
    Spectral coordinates (t, p) of a connection matrix: t a root of the quadratic factor of b21, p = b11(t)/P(t).

    The involution partner (u^2/t, 1/p) describes the same matrix.
    """
    def __init__(self, t: Any, p: Any) -> None:
        if t == 0:
            raise InvolutionFixedPointError('t = 0 is not a spectral coordinate')
        self.t: Any = t
        self.p: Any = p

    def partner(self, u2: Any) -> SpectralPoint:
        """The involution partner (u^2/t, 1/p)."""
        return SpectralPoint(div(u2, self.t), div(1, self.p))

    def __repr__(self) -> str:
        return f'SpectralPoint(t={self.t}, p={self.p})'


class InvariantPoint:
    """Involution invariant coordinates x = t + u^2/t and y = (pt - u)/(pu - t)."""
    def __init__(self, x: Any, y: Any) -> None:
        self.x: Any = _simplify(x)
        self.y: Any = _simplify(y)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InvariantPoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f'InvariantPoint(x={self.x}, y={self.y})'


class QRacahPainleveParams:  # pylint: disable=too-many-instance-attributes
    """
    Parameter block (nu_1..nu_8; kappa_1, kappa_2) of the Painleve surface matched to a connection matrix.

    nu_1 = 1/z6, nu_2 = 1/z1, nu_3 = 1/z3, nu_4 = 1/z5, nu_5 = u z4/z2, nu_6 = u, nu_7 = -rho_1 z4 z6/u,
    nu_8 = -rho_2 z4 z6/u, kappa_1 = u/z2, kappa_2 = z4/u. Weyl group actions move nu and kappa away from this matching;
    z, u and rho keep describing the matrix the block started from.

    Args:
        z (Sequence): pole parameters z1..z6.
        u: square root of u^2.
        rho (Sequence): (rho_1, rho_2) = (-d_1, -d_2), exchanged when swap is set.
        q: the base.
        swap (bool): whether rho lists d_2 before d_1.
    """
    def __init__(self, z: Sequence[Any], u: Any, rho: Sequence[Any], q: Any, swap: bool = False) -> None:  # pylint: disable=too-many-arguments,too-many-positional-arguments
        if u == 0:
            raise InvalidParamsError('The Painleve matching needs u != 0')
        self.z: Tuple[Any, ...] = tuple(z)
        self.u: Any = u
        self.rho: Tuple[Any, Any] = (rho[0], rho[1])
        self.q: Any = q
        self.swap: bool = swap
        z1, z2, z3, z4, z5, z6 = self.z
        self.nu: Tuple[Any, ...] = (div(1, z6), div(1, z1), div(1, z3), div(1, z5), _simplify(div(u * z4, z2)), u,
                                    _simplify(div(-rho[0] * z4 * z6, u)), _simplify(div(-rho[1] * z4 * z6, u)))
        self.kappa1: Any = _simplify(div(u, z2))
        self.kappa2: Any = _simplify(div(z4, u))

    @classmethod
    def from_connection(cls, matrix: ConnectionMatrix, swap: bool = False) -> QRacahPainleveParams:
        """
        Match the parameters of a connection matrix, rho_i = -d_i from the asymptotic limit.

        Args:
            matrix (ConnectionMatrix): A_s.
            swap (bool): exchange the roles of d_1 and d_2.

        Raises:
            InvariantViolationError: if rho_1 rho_2 differs from z1 z3 z5/(z2 z4 z6 q).
        """
        first, second = asymptotic_d(matrix)
        if swap:
            first, second = second, first
        z1, z2, z3, z4, z5, z6 = matrix.z
        q = matrix.params.q
        if first * second != div(z1 * z3 * z5, z2 * z4 * z6 * q):
            raise InvariantViolationError(f'rho_1 rho_2 violates the product constraint for A_{matrix.s}')
        return cls(matrix.z, matrix.params.u, (-first, -second), q, swap)

    @property
    def d1(self) -> Any:
        """Leading coefficient of b11 in the matrix the block was matched to."""
        return -self.rho[1] if self.swap else -self.rho[0]

    def with_values(self, nu: Optional[Sequence[Any]] = None, kappa1: Optional[Any] = None, kappa2: Optional[Any] = None) -> QRacahPainleveParams:
        """Copy with some of nu, kappa_1 and kappa_2 replaced."""
        copy = QRacahPainleveParams(self.z, self.u, self.rho, self.q, self.swap)
        copy.nu = tuple(_simplify(value) for value in nu) if nu is not None else self.nu
        copy.kappa1 = _simplify(kappa1) if kappa1 is not None else self.kappa1
        copy.kappa2 = _simplify(kappa2) if kappa2 is not None else self.kappa2
        return copy

    def with_kappa(self, kappa1: Any, kappa2: Any) -> QRacahPainleveParams:
        """Copy with new kappa values."""
        return self.with_values(kappa1=kappa1, kappa2=kappa2)

    def same_values(self, other: QRacahPainleveParams) -> bool:
        """True if both blocks have equal nu and kappa."""
        return self.nu == other.nu and (self.kappa1, self.kappa2) == (other.kappa1, other.kappa2)

    def step_q(self) -> Any:
        """kappa_1^2 kappa_2^2 / (nu_1 ... nu_8)."""
        product: Any = 1
        for value in self.nu:
            product = product * value
        return _simplify(div(self.kappa1 * self.kappa1 * self.kappa2 * self.kappa2, product))

    def root_variables(self) -> List[Any]:
        """Root variables a0..a7 of the standard surface model."""
        nu1, nu2, nu3, nu4, nu5, nu6, nu7, nu8 = self.nu
        values = [div(self.kappa1, self.kappa2), div(nu3, nu4), div(nu2, nu3), div(nu1, nu2), div(self.kappa2, nu1 * nu5), div(nu5, nu6),
                  div(nu6, nu7), div(nu7, nu8)]
        return [_simplify(value) for value in values]

    def ensemble_root_variables(self) -> List[Any]:
        """
        Root variables in the ensemble parametrization.

        a0 = z4/z2, a1 = z5/z3, a2 = z3/z1, a3 = z1 z6/u^2, a4 = -u^2/(rho_1 z4 z6), a5 = rho_1/rho_2,
        a6 = -rho_2 z2 z4/u^2, a7 = u^2/(z2 z4).
        """
        z1, z2, z3, z4, z5, z6 = self.z
        u2 = _simplify(self.u * self.u)
        rho1, rho2 = self.rho
        return [div(z4, z2), div(z5, z3), div(z3, z1), div(z1 * z6, u2), div(-u2, rho1 * z4 * z6), div(rho1, rho2), div(-rho2 * z2 * z4, u2),
                div(u2, z2 * z4)]

    def base_points(self) -> List[Tuple[Any, Any]]:
        """p_i(nu_i, 1/nu_i) for i = 1..4 and p_i(kappa_1/nu_i, nu_i/kappa_2) for i = 5..8."""
        points = [(value, div(1, value)) for value in self.nu[:4]]
        points.extend((div(self.kappa1, value), div(value, self.kappa2)) for value in self.nu[4:])
        return [(_simplify(f), _simplify(g)) for f, g in points]

    def as_dict(self) -> Dict[str, Any]:
        """Serializable parameter block."""
        return {'nu': [format_exact(value) for value in self.nu], 'kappa': [format_exact(self.kappa1), format_exact(self.kappa2)],
                'q': format_exact(self.q)}

    def __repr__(self) -> str:
        return f'QRacahPainleveParams(nu={self.nu}, kappa=({self.kappa1}, {self.kappa2}))'


class PainlevePoint:
    """
    Point (f, g) together with its parameter block.

    Args:
        f: first coordinate.
        g: second coordinate.
        params (QRacahPainleveParams): the parameter block.
    """
    def __init__(self, f: Any, g: Any, params: QRacahPainleveParams) -> None:
        self.f: Any = _simplify(f)
        self.g: Any = _simplify(g)
        self.params: QRacahPainleveParams = params

    def base_points_hit(self) -> List[int]:
        """Indices 1..8 of the base points the point coincides with."""
        return [index for index, point in enumerate(self.params.base_points(), start=1) if point == (self.f, self.g)]

    def same_coordinates(self, other: PainlevePoint) -> bool:
        """True if both points have equal (f, g)."""
        return self.f == other.f and self.g == other.g

    def __repr__(self) -> str:
        return f'PainlevePoint(f={self.f}, g={self.g})'


def _b21_quadratic(matrix: ConnectionMatrix) -> Tuple[Any, Any]:
    k0, k1 = matrix.coefficients()['k']
    if k0 == 0:
        raise DegenerateB21Error(f'k0 vanishes for A_{matrix.s}')
    return k0, k1


def spectral_points(matrix: ConnectionMatrix) -> Tuple[SpectralPoint, SpectralPoint]:
    """
    Both spectral points of a connection matrix, one per root of k0 t^2 + k1 t + k0 u^2.

    The roots live in the quadratic extension by the discriminant when it is not a rational square.

    Raises:
        DegenerateB21Error: if k0 = 0.
        BasePointHitError: if t is a zero of P_s.
        BackendMismatchError: if u and the roots need two different quadratic fields, use invariant_from_connection then.
    """
    k0, k1 = _b21_quadratic(matrix)
    u2 = matrix.params.u2
    root = adjoin_sqrt(k1 * k1 - 4 * k0 * k0 * u2)
    points = []
    for sign in (1, -1):
        t = _simplify(div(-k1 + sign * root, 2 * k0))
        denominator = matrix.P(t)
        if denominator == 0:
            raise BasePointHitError(f't={t} is a pole of A_{matrix.s}')
        points.append(SpectralPoint(t, _simplify(div(matrix.b.e11(t), denominator))))
    return points[0], points[1]


def spectral_from_connection(matrix: ConnectionMatrix, root: int = 0) -> SpectralPoint:
    """
    Spectral coordinates (t, p) with t the chosen root of the quadratic factor of b21.

    Raises:
        DegenerateB21Error: if k0 = 0.
    """
    return spectral_points(matrix)[root]


def invariant_from_spectral(point: SpectralPoint, u: Any) -> InvariantPoint:
    """
    x = t + u^2/t, y = (pt - u)/(pu - t).

    Raises:
        InvolutionFixedPointError: at the fixed points t = +-u of the involution or where pu = t.
    """
    t, p = point.t, point.p
    if t in (u, -u):
        raise InvolutionFixedPointError(f't={t} is a fixed point of the involution')
    denominator = p * u - t
    if denominator == 0:
        raise InvolutionFixedPointError(f'pu = t at {point}')
    return InvariantPoint(t + div(u * u, t), div(p * t - u, denominator))


def invariant_from_connection(matrix: ConnectionMatrix) -> InvariantPoint:
    """
    Invariant coordinates without adjoining a root of b21.

    x = -k1/k0 and y = (b11(t) t - u P(t))/(b11(t) u - t P(t)) reduced modulo t^2 + (k1/k0) t + u^2 to (c1 + d1 t)/(c2 + d2 t),
    which is independent of the root exactly when c1 d2 = c2 d1.

    Raises:
        DegenerateB21Error: if k0 = 0.
        InvariantViolationError: if the reduced quotient depends on the root.
        InvolutionFixedPointError: if the denominator vanishes identically.
    """
    k0, k1 = _b21_quadratic(matrix)
    params = matrix.params
    u, u2 = params.u, params.u2
    modulus = Poly((u2, div(k1, k0), 1))
    identity = Poly.identity()
    _, upper = (matrix.b.e11 * identity - matrix.P * u).divmod(modulus)
    _, lower = (matrix.b.e11 * u - matrix.P * identity).divmod(modulus)
    c1, d1 = upper.coefficient(0), upper.coefficient(1)
    c2, d2 = lower.coefficient(0), lower.coefficient(1)
    if c1 * d2 != c2 * d1:
        raise InvariantViolationError(f'y depends on the root of b21 for A_{matrix.s}')
    if c2 == 0 and d2 == 0:
        raise InvolutionFixedPointError(f'pu = t for both roots of A_{matrix.s}')
    y = div(d1, d2) if d2 != 0 else div(c1, c2)
    return InvariantPoint(-div(k1, k0), y)


def _symmetric(params: QRacahPainleveParams) -> Tuple[Any, Any, Any]:
    _, z2, _, z4, _, z6 = params.z
    return z2 + z4 + z6, z2 * z4 + z4 * z6 + z6 * z2, z2 * z4 * z6


def change_of_variables(x: Any, y: Any, z2: Any, z4: Any, z6: Any, u: Any) -> Tuple[Any, Any]:  # pylint: disable=too-many-arguments,too-many-positional-arguments
    """
    (f, g) as functions of the invariant coordinates, with sigma_i the symmetric functions of (z2, z4, z6).

    Raises:
        BasePointHitError: if a denominator vanishes.
    """
    s1, s2, s3 = z2 + z4 + z6, z2 * z4 + z4 * z6 + z6 * z2, z2 * z4 * z6
    u2 = u * u
    u3 = u2 * u
    numerator = s3 * (x * y + u * (y - 1)) - u2 * (x * x - s1 * x + s2 * (y + 1)) + u3 * (1 - y) * (s1 - x) + u2 * u2 * (1 + y)
    denominator = s3 * x * (x * y + u * (y - 1)) - u2 * (s2 * x * y + s3 * (y + 1)) + u3 * s2 * (1 - y) + u2 * u2 * (s1 * (1 + y) - x) \
        + u3 * u2 * (y - 1)
    f = _divide(numerator, denominator, BasePointHitError, f'f is indeterminate at (x, y) = ({x}, {y})')
    g = _divide(x * y * z6 + u * z6 * (y - 1) - u2 * (1 + y), z6 * (1 + y) - x + u * (y - 1), BasePointHitError,
                f'g is indeterminate at (x, y) = ({x}, {y})')
    return f, g


def to_painleve(point: InvariantPoint, params: QRacahPainleveParams) -> PainlevePoint:
    """
    The Painleve coordinates of an invariant point.

    Raises:
        BasePointHitError: if a denominator vanishes.
    """
    _, z2, _, z4, _, z6 = params.z
    f, g = change_of_variables(point.x, point.y, z2, z4, z6, params.u)
    return PainlevePoint(f, g, params)


def from_painleve(point: PainlevePoint) -> InvariantPoint:
    """
    Invert to_painleve by elimination.

    Along g = const, y is linear fractional in x; substituting it into the f equation and cancelling the common factor of
    numerator and denominator leaves a linear equation for x.

    Raises:
        BasePointHitError: if the elimination does not leave a single solution.
    """
    params = point.params
    f, g = point.f, point.g
    u = params.u
    u2, z6 = u * u, params.z[5]
    s1, s2, s3 = _symmetric(params)
    x = Poly.identity()
    y_num = Poly((g * u - g * z6 - u * z6 - u2, g))
    y_den = Poly((g * z6 + g * u - u * z6 + u2, -z6))
    numerator = (x * y_num + (y_num - y_den) * u) * s3 - ((x * x - x * s1) * y_den + (y_num + y_den) * s2) * u2 \
        + (y_den - y_num) * (x * -1 + s1) * (u2 * u) + (y_den + y_num) * (u2 * u2)
    denominator = x * (x * y_num + (y_num - y_den) * u) * s3 - (x * y_num * s2 + (y_num + y_den) * s3) * u2 + (y_den - y_num) * (u2 * u * s2) \
        + ((y_den + y_num) * s1 - x * y_den) * (u2 * u2) + (y_num - y_den) * (u2 * u2 * u)
    common = poly_gcd(numerator, denominator)
    if common.is_zero():
        raise BasePointHitError(f'The f equation is empty at {point}')
    if common.degree > 0:
        numerator = numerator.exact_div(common)
        denominator = denominator.exact_div(common)
    linear = denominator * f - numerator
    if linear.degree != 1:
        raise BasePointHitError(f'No unique preimage of {point}')
    solution = _simplify(div(-linear.coefficient(0), linear.coefficient(1)))
    y_value = _divide(y_num(solution), y_den(solution), BasePointHitError, f'y is indeterminate at {point}')
    return InvariantPoint(solution, y_value)


def from_painleve_closed_form(point: PainlevePoint) -> Any:
    """
    x from the closed inverse ((k1 - k2) g + nu6 (1 + k1 k2)(1 - fg) + nu6^2 (k1 - k2) f)/(k1 - k2 fg).

    The crosscheck compares it with the elimination in from_painleve at every point of the orbit.
    """
    params = point.params
    f, g = point.f, point.g
    k1, k2, nu6 = params.kappa1, params.kappa2, params.nu[5]
    numerator = (k1 - k2) * g + nu6 * (1 + k1 * k2) * (1 - f * g) + nu6 * nu6 * (k1 - k2) * f
    return _divide(numerator, k1 - k2 * f * g, BasePointHitError, f'The closed inverse is indeterminate at {point}')


def _product(values: Sequence[Any]) -> Any:
    result: Any = 1
    for value in values:
        result = result * value
    return result


def _e7_first(params: QRacahPainleveParams, g: Any) -> Any:
    """prod_(i=5..8)(g - nu_i/kappa_2) / prod_(i=1..4)(g - 1/nu_i)."""
    upper = _product([g - div(value, params.kappa2) for value in params.nu[4:]])
    lower = _product([g - div(1, value) for value in params.nu[:4]])
    return _divide(upper, lower, IndeterminateStepError, f'g={g} is a pole of the step')


def _e7_second(params: QRacahPainleveParams, f: Any, kappa1: Any) -> Any:
    """prod_(i=5..8)(f - kappa_1/nu_i) / prod_(i=1..4)(f - nu_i)."""
    upper = _product([f - div(kappa1, value) for value in params.nu[4:]])
    lower = _product([f - value for value in params.nu[:4]])
    return _divide(upper, lower, IndeterminateStepError, f'f={f} is a pole of the step')


def qp_e7_step(point: PainlevePoint, direction: Direction = Direction.FORWARD) -> PainlevePoint:
    """
    One step of q-P(E7/A1).

    Forward: the first equation is solved for fbar g, then the second, with kappa_1/q and q kappa_2, for fbar gbar.
    The inverse step undoes both in reverse order.

    Raises:
        IndeterminateStepError: if a coefficient of the linear fractional solve vanishes.
    """
    if direction == Direction.INVERSE:
        return _qp_e7_inverse(point)
    params = point.params
    q, k1, k2 = params.q, params.kappa1, params.kappa2
    f, g = point.f, point.g
    if g == 0:
        raise IndeterminateStepError('g = 0')
    ratio = _e7_first(params, g)
    level = f * g
    shifted = level - div(k1, k2)
    target = div(k1, q * k2)
    x_value = _divide(shifted * target - ratio * (level - 1), shifted - ratio * (level - 1), IndeterminateStepError,
                      f'The first equation has no unique solution at {point}')
    f_bar = _divide(x_value, g, IndeterminateStepError, 'g = 0')
    if f_bar == 0:
        raise IndeterminateStepError(f'fbar vanishes at {point}')
    k1_bar, k2_bar = _simplify(div(k1, q)), _simplify(q * k2)
    inner = _divide(x_value - target, x_value - 1, IndeterminateStepError, f'fbar g = 1 at {point}')
    side = _e7_second(params, f_bar, k1_bar)
    low = div(k1, q * q * k2)
    y_value = _divide(inner * low - side, inner - side, IndeterminateStepError, f'The second equation has no unique solution at {point}')
    return PainlevePoint(f_bar, _divide(y_value, f_bar, IndeterminateStepError, 'fbar = 0'), params.with_kappa(k1_bar, k2_bar))


def _qp_e7_inverse(point: PainlevePoint) -> PainlevePoint:
    params = point.params
    q, k1_bar, k2_bar = params.q, params.kappa1, params.kappa2
    k1, k2 = _simplify(q * k1_bar), _simplify(div(k2_bar, q))
    f_bar, g_bar = point.f, point.g
    if f_bar == 0:
        raise IndeterminateStepError('fbar = 0')
    y_value = f_bar * g_bar
    low = div(k1, q * q * k2)
    target = div(k1, q * k2)
    side = _e7_second(params, f_bar, k1_bar)
    inner = _divide(side * (y_value - 1), y_value - low, IndeterminateStepError, f'fbar gbar = kappa ratio at {point}')
    x_value = _divide(target - inner, 1 - inner, IndeterminateStepError, f'The second equation has no unique solution at {point}')
    g = _divide(x_value, f_bar, IndeterminateStepError, 'fbar = 0')
    if g == 0:
        raise IndeterminateStepError(f'g vanishes at {point}')
    previous = params.with_kappa(k1, k2)
    ratio = _e7_first(previous, g)
    level_shift = div(k1, k2)
    level = _divide(level_shift * (x_value - target) - ratio * (x_value - 1), (x_value - target) - ratio * (x_value - 1), IndeterminateStepError,
                    f'The first equation has no unique solution at {point}')
    return PainlevePoint(_divide(level, g, IndeterminateStepError, 'g = 0'), g, previous)


# nu indices exchanged by the reflections that only permute parameters
_TRANSPOSITIONS: Dict[int, Tuple[int, int]] = {1: (2, 3), 2: (1, 2), 3: (0, 1), 5: (4, 5), 6: (5, 6), 7: (6, 7)}


def weyl_reflection(point: PainlevePoint, index: int) -> PainlevePoint:
    """
    Action of the simple reflection w_index of the E7 Weyl group on a point and its parameter block.

    w1, w2, w3 exchange nu_3 and nu_4, nu_2 and nu_3, nu_1 and nu_2; w5, w6, w7 exchange nu_5 and nu_6, nu_6 and nu_7,
    nu_7 and nu_8, all without moving (f, g). w0 exchanges kappa_1 and kappa_2 and maps (f, g) to (1/g, 1/f). w4 replaces
    nu_1, nu_5 and kappa_1 by kappa_2/nu_5, kappa_2/nu_1 and kappa_1 kappa_2/(nu_1 nu_5) and moves f along the line g = const.

    Raises:
        UnknownTokenError: for an index outside 0..7.
        IndeterminateStepError: if the point lies where the reflection is not defined.
    """
    params = point.params
    f, g = point.f, point.g
    if index in _TRANSPOSITIONS:
        first, second = _TRANSPOSITIONS[index]
        nu = list(params.nu)
        nu[first], nu[second] = nu[second], nu[first]
        return PainlevePoint(f, g, params.with_values(nu=nu))
    if index == 0:
        if f == 0 or g == 0:
            raise IndeterminateStepError(f'w0 is not defined at {point}')
        return PainlevePoint(div(1, g), div(1, f), params.with_values(kappa1=params.kappa2, kappa2=params.kappa1))
    if index == 4:
        k1, k2 = params.kappa1, params.kappa2
        nu1, nu5 = params.nu[0], params.nu[4]
        upper = (g - div(1, nu1)) * (f - div(k1, nu5))
        lower = (g - div(nu5, k2)) * (f - nu1)
        f_new = _divide(upper - div(k1, nu1 * nu5) * lower, div(nu5, k2) * upper - div(lower, nu1), IndeterminateStepError,
                        f'w4 is not defined at {point}')
        nu = list(params.nu)
        nu[0], nu[4] = div(k2, nu5), div(k2, nu1)
        return PainlevePoint(f_new, g, params.with_values(nu=nu, kappa1=div(k1 * k2, nu1 * nu5)))
    raise UnknownTokenError(f'w{index} is not a generator of the E7 group')


def apply_weyl_word(point: PainlevePoint, word: Union[str, Sequence[int]]) -> PainlevePoint:
    """
    Apply a word of simple reflections, the rightmost letter first.

    Raises:
        UnknownTokenError: for a token that is not a generator.
        IndeterminateStepError: if a reflection is not defined at an intermediate point.
    """
    for index in reversed(parse_word(word, E7_DATA)):
        point = weyl_reflection(point, index)
    return point


def ensemble_step(point: PainlevePoint, direction: Direction = Direction.FORWARD) -> PainlevePoint:
    """
    The q-P(E7) step conjugated by w3 w0 w4, which moves the point of A_s to the point of A_(s+1).

    The conjugated step multiplies nu_2, nu_5 and kappa_1 by q, which is z1 = z2 -> z1/q in the matching; the inverse
    direction goes from A_s to A_(s-1).

    Raises:
        IndeterminateStepError: if a reflection or the step is not defined at the point.
        InvariantViolationError: if the resulting parameters are not those of the neighbouring matrix.
        ValueError: for Direction.NONE.
    """
    if direction == Direction.NONE:
        raise ValueError('The ensemble step needs a direction')
    params = point.params
    moved = apply_weyl_word(point, inverse_word(ENSEMBLE_STEP_CONJUGATOR, E7_DATA))
    moved = qp_e7_step(moved, direction)
    moved = apply_weyl_word(moved, ENSEMBLE_STEP_CONJUGATOR)
    factor = params.q if direction == Direction.FORWARD else div(1, params.q)
    z = list(params.z)
    z[0], z[1] = _simplify(div(z[0], factor)), _simplify(div(z[1], factor))
    target = QRacahPainleveParams(z, params.u, params.rho, params.q, params.swap)
    if not moved.params.same_values(target):
        raise InvariantViolationError(f'The ensemble step from {point} leaves the matched parameters: {moved.params} instead of {target}')
    return PainlevePoint(moved.f, moved.g, target)


def qp_e6_step(point: PainlevePoint, direction: Direction = Direction.FORWARD) -> PainlevePoint:
    """
    One step of q-P(E6/A2).

    (fg - 1)(fbar g - 1)/(f fbar) = prod_(i<=4)(g - 1/nu_i)/((g - nu5/kappa2)(g - nu6/kappa2)) and
    (fg - 1)(f gbar - 1)/(g gbar) = prod_(i<=4)(f - nu_i)/((f - kappa1/nu7)(f - kappa1/nu8)) with kappa_1/q, q kappa_2 after the step.

    Raises:
        IndeterminateStepError: if a coefficient vanishes.
    """
    params = point.params
    q = params.q
    nu = params.nu

    def first(g: Any, kappa2: Any) -> Any:
        return _divide(_product([g - div(1, value) for value in nu[:4]]), (g - div(nu[4], kappa2)) * (g - div(nu[5], kappa2)), IndeterminateStepError,
                       f'g={g} is a pole of the step')

    def second(f: Any, kappa1: Any) -> Any:
        return _divide(_product([f - value for value in nu[:4]]), (f - div(kappa1, nu[6])) * (f - div(kappa1, nu[7])), IndeterminateStepError,
                       f'f={f} is a pole of the step')

    if direction == Direction.INVERSE:
        k1_bar, k2_bar = params.kappa1, params.kappa2
        k1, k2 = _simplify(q * k1_bar), _simplify(div(k2_bar, q))
        f_bar, g_bar = point.f, point.g
        side = second(f_bar, k1_bar)
        g = _divide(f_bar * g_bar - 1, f_bar * (f_bar * g_bar - 1) - side * g_bar, IndeterminateStepError, f'No unique g at {point}')
        ratio = first(g, k2)
        f = _divide(f_bar * g - 1, g * (f_bar * g - 1) - ratio * f_bar, IndeterminateStepError, f'No unique f at {point}')
        return PainlevePoint(f, g, params.with_kappa(k1, k2))
    k1, k2 = params.kappa1, params.kappa2
    k1_bar, k2_bar = _simplify(div(k1, q)), _simplify(q * k2)
    f, g = point.f, point.g
    ratio = first(g, k2)
    f_bar = _divide(f * g - 1, (f * g - 1) * g - ratio * f, IndeterminateStepError, f'No unique fbar at {point}')
    side = second(f_bar, k1_bar)
    g_bar = _divide(f_bar * g - 1, f_bar * (f_bar * g - 1) - side * g, IndeterminateStepError, f'No unique gbar at {point}')
    return PainlevePoint(f_bar, g_bar, params.with_kappa(k1_bar, k2_bar))


def qhahn_coords(t: Any, p: Any, w: Any, z6: Any) -> Tuple[Any, Any]:
    """
    The q-Hahn change of variables f = 1/t, g = t w z6/(z6 (p - w) + t w).

    Raises:
        BasePointHitError: if a denominator vanishes.
    """
    f = _divide(1, t, BasePointHitError, 't = 0')
    g = _divide(t * w * z6, z6 * (p - w) + t * w, BasePointHitError, f'g is indeterminate at (t, p) = ({t}, {p})')
    return f, g


def degenerate_coords(x: Any, y: Any, z6: Any) -> Tuple[Any, Any]:
    """The u = 0 limit of the change of variables: f = 1/x, g = x y z6/(z6 (1 + y) - x)."""
    f = _divide(1, x, BasePointHitError, 'x = 0')
    g = _divide(x * y * z6, z6 * (1 + y) - x, BasePointHitError, f'g is indeterminate at (x, y) = ({x}, {y})')
    return f, g


def qhahn_limit_check(x: Any, y: Any, z: Sequence[Any], exponents: Sequence[int] = (1, 2, 3, 4), base: int = 10) -> Dict[str, Any]:  # pylint: disable=too-many-locals
    """
    Convergence of the change of variables to its u = 0 limit along u = base^-k.

    Args:
        x, y: invariant coordinates, exact.
        z (Sequence): (z2, z4, z6).
        exponents (Sequence): the k values, increasing.
        base (int): base of the u sequence.

    Returns:
        Dict: 'limit' (f, g) at u = 0, 'errors' max(|f - f0|, |g - g0|) per k, 'orders' the Richardson order estimates
        log(e_k/e_(k+1))/log(base), 'qhahn_f' whether the limit f equals the q-Hahn f = 1/t at t = x and 'converged' when every
        order is at least 0.9.
    """
    z2, z4, z6 = z
    f0, g0 = degenerate_coords(x, y, z6)
    errors: List[Any] = []
    for exponent in exponents:
        u = Fraction(1, base ** exponent)
        f, g = change_of_variables(x, y, z2, z4, z6, u)
        errors.append(max(abs(f - f0), abs(g - g0)))
    orders: List[Any] = []
    for current, following in zip(errors, errors[1:]):
        if following == 0:
            orders.append(mpmath.inf)
        else:
            orders.append(mpmath.log(to_bigfloat(current) / to_bigfloat(following), base))
    report = {'limit': (f0, g0), 'errors': errors, 'orders': orders, 'qhahn_f': qhahn_coords(x, 1, 1, z6)[0] == f0 if x != 0 else False,
              'converged': all(order >= mpmath.mpf('0.9') for order in orders)}
    LOG.debug('q-Hahn limit check at (%s, %s): orders %s', x, y, [mpmath.nstr(order, 6) for order in orders])
    return report


def null_root_product(values: Sequence[Any]) -> Any:
    """a0^2 a1 a2^2 a3^3 a4^4 a5^3 a6^2 a7, the step q of the dynamics."""
    product: Any = 1
    for value, exponent in zip(values, NULL_ROOT_COEFFICIENTS):
        product = product * value ** exponent
    return _simplify(product)


def root_shift(before: Sequence[Any], after: Sequence[Any], q: Any, bound: int = 4) -> List[Optional[int]]:
    """
    Exponents k_i with after_i = q^k_i before_i, None where no |k| <= bound fits.
    """
    shifts: List[Optional[int]] = []
    for first, second in zip(before, after):
        ratio = div(second, first)
        found = None
        for exponent in range(-bound, bound + 1):
            if ratio == q ** exponent:
                found = exponent
                break
        shifts.append(found)
    return shifts


def painleve_point(matrix: ConnectionMatrix, swap: bool = False) -> PainlevePoint:
    """
    The Painleve point of a connection matrix, checked by the round trip through from_painleve.

    Raises:
        InvariantViolationError: if the round trip does not return the invariant point.
    """
    params = QRacahPainleveParams.from_connection(matrix, swap)
    invariant = invariant_from_connection(matrix)
    point = to_painleve(invariant, params)
    if from_painleve(point) != invariant:
        raise InvariantViolationError(f'from_painleve does not invert to_painleve at A_{matrix.s}')
    return point


def connection_from_painleve(point: PainlevePoint, s: int, params: EnsembleParams, k0: Any = 1) -> ConnectionMatrix:  # pylint: disable=too-many-locals
    """
    Rebuild A_s from its Painleve point.

    With (x, y) = from_painleve(point), b21 = k0 z (z^2 - u^2)(z^2 - x z + u^2). b11 has the leading coefficient d_1 and
    b11(0) = P_s(0)/d_1, satisfies b11(+-u) = P_s(+-u) and b11(t)(y u - t) = P_s(t)(y t - u) at both roots t of
    t^2 - x t + u^2. These fix b11 up to a multiple of b21, which is chosen so that b12 keeps degree five. b22 is the
    reflection of b11 and b12 = (b11 b22 - P_s Q_s)/b21.

    Args:
        point (PainlevePoint): the point, matched to A_s.
        s (int): index of the matrix.
        params (EnsembleParams): ensemble parameters, exact with delta > 0.
        k0: the free diagonal gauge, the leading coefficient of the quadratic factor of b21.

    Raises:
        InvariantViolationError: if the point is not matched to A_s or the rebuilt matrix fails its checks.
        NoSolutionError: if the conditions on b11 do not fix it.
    """
    if tuple(point.params.z) != pole_parameters(params, s):
        raise InvariantViolationError(f'{point} is not matched to A_{s}')
    invariant = from_painleve(point)
    x, y = invariant.x, invariant.y
    u, u2 = params.u, params.u2
    lower, upper = pole_polynomials(params, s)
    lead = point.params.d1
    modulus = Poly((u2, -x, 1))
    _, target = (Poly((-u, y)) * lower).divmod(modulus)
    remainders = [(Poly.identity() ** power * Poly((y * u, -1))).divmod(modulus)[1] for power in range(7)]
    rows = [[0, 0, 0, 0, 0, 0, 1], [1, 0, 0, 0, 0, 0, 0], [u ** power for power in range(7)], [(-u) ** power for power in range(7)],
            [remainder.coefficient(0) for remainder in remainders], [remainder.coefficient(1) for remainder in remainders], [0, 0, 0, 0, 0, 1, 0]]
    rhs = [lead, div(lower(0), lead), lower(u), lower(-u), target.coefficient(0), target.coefficient(1), 0]
    b11 = Poly(_simplify(value) for value in solve_linear(rows, rhs))
    b21 = Poly((0, -u2, 0, 1)) * Poly((k0 * u2, -k0 * x, k0))
    cube = u2 * u2 * u2

    def reflect(polynomial: Poly) -> Poly:
        return polynomial.homogenize(Poly.constant(u2), Poly.identity(), 6) * div(1, cube)

    b22 = reflect(b11)
    excess = div((b11 * b22 - lower * upper).coefficient(11), k0)
    gap = b22.coefficient(6) - b11.coefficient(6)
    if gap == 0:
        raise InvariantViolationError(f'The degree of b12 cannot be fixed for A_{s} at {point}')
    b11 = b11 + b21 * div(-excess, gap)
    b22 = reflect(b11)
    try:
        b12 = (b11 * b22 - lower * upper).exact_div(b21)
    except CancellationFailureError as err:
        raise InvariantViolationError(f'b21 does not divide det B_{s} - P Q for the point {point}') from err
    matrix = ConnectionMatrix(s, params, Mat2(b11, b12, b21, b22))
    matrix.check()
    return matrix


class PainleveOrbit:
    """
    The Painleve points (f_s, g_s) along a connection recursion.

    Attributes:
        points (Dict[int, PainlevePoint]): the point of A_s by s.
        direction (Direction): calibrated direction of ensemble_step, NONE if neither direction reproduces the orbit.
        shifts (List): q exponent shift of the standard root variables between consecutive points.
    """
    def __init__(self, points: Dict[int, PainlevePoint]) -> None:
        self.points: Dict[int, PainlevePoint] = points
        self.direction: Direction = Direction.NONE
        self.shifts: List[List[Optional[int]]] = []

    def to_json(self) -> List[Dict[str, Any]]:
        """Serializable orbit."""
        return [{'s': s, 'f': format_exact(point.f), 'g': format_exact(point.g), 'params': point.params.as_dict()}
                for s, point in sorted(self.points.items())]


def calibrate(orbit: PainleveOrbit) -> Direction:
    """
    Compare ensemble_step in each direction with the extracted orbit.

    A direction wins if it maps every (f_s, g_s) to (f_(s+1), g_(s+1)). The shifts record the q exponents by which the
    standard root variables move between consecutive points. Without a winner the result is NONE and a warning with the
    candidate translations is logged.
    """
    indices = sorted(orbit.points)
    candidates = {Direction.FORWARD: True, Direction.INVERSE: True}
    for s in indices[:-1]:
        current, following = orbit.points[s], orbit.points[s + 1]
        for direction in candidates:
            if not candidates[direction]:
                continue
            try:
                stepped = ensemble_step(current, direction)
            except (IndeterminateStepError, InvariantViolationError) as err:
                LOG.debug('The %s ensemble step fails at s=%d: %s', direction.value, s, err)
                candidates[direction] = False
                continue
            candidates[direction] = stepped.same_coordinates(following)
    orbit.shifts = [root_shift(orbit.points[s].params.root_variables(), orbit.points[s + 1].params.root_variables(), orbit.points[s].params.q)
                    for s in indices[:-1]]
    winners = [direction for direction, matched in candidates.items() if matched]
    if len(indices) < 2 or not winners:
        orbit.direction = Direction.NONE
        if len(indices) >= 2:
            LOG.warning('Neither direction of the ensemble step reproduces the orbit; the forward step translates the root variables by %s, '
                        'the orbit by %s', [-value for value in ENSEMBLE_TRANSLATION], orbit.shifts)
    else:
        orbit.direction = winners[0]
    return orbit.direction


def painleve_orbit(params: EnsembleParams, swap: bool = False) -> PainleveOrbit:
    """
    Extract (f_s, g_s) for s = N..M from the connection recursion and calibrate the step direction.

    Raises:
        InvalidParamsError: for floating point parameters, the orbit is computed exactly.
    """
    if not is_exact(params.q):
        raise InvalidParamsError('The Painleve orbit needs exact parameters')
    points = {matrix.s: painleve_point(matrix, swap) for matrix, _ in iterate_connection(params)}
    orbit = PainleveOrbit(points)
    calibrate(orbit)
    return orbit


def painleve_gap_table(params: EnsembleParams, swap: bool = False) -> GapTable:
    """
    Gap table driven by the Painleve dynamics.

    The point of A_N is carried along by ensemble_step. At every s the connection matrix is rebuilt from the point alone
    and its transition triple gives the double ratio D_(s+2) D_s/D_(s+1)^2 on top of the seeds D_N and D_(N+1).

    Raises:
        InvalidParamsError: for floating point parameters or delta = 0.
        InvariantViolationError: if the run does not end at D_(M+1) = 1.
    """
    if not is_exact(params.q):
        raise InvalidParamsError('The Painleve method needs exact parameters')
    if params.delta == 0:
        raise InvalidParamsError('The Painleve method needs delta > 0')
    LOG.info('Running the Painleve recursion for %s', params)
    grid = NodeGrid(params)
    table = GapTable(params.N, params.M, 'painleve')
    first, second = seed_values(grid, build_ops(grid), params.N)
    table[params.N] = first
    if second is None:
        return table
    table[params.N + 1] = second
    ratio = div(second, first)
    point = painleve_point(build_AN(params, grid), swap)
    for s in range(params.N, params.M):
        if s > params.N:
            point = ensemble_step(point)
        matrix = connection_from_painleve(point, s, params)
        triple = extract_triple(matrix)
        ratio = ratio * gap_double_ratio(triple, advance_triple(matrix, triple), s, params)
        table[s + 2] = table[s + 1] * ratio
        LOG.debug('Painleve step s=%d at (f, g) = (%s, %s) gives D_%d=%s', s, format_exact(point.f), format_exact(point.g), s + 2, table[s + 2])
    last = params.M + 1
    if table[last] != 1:
        raise InvariantViolationError(f'The Painleve recursion ends at D_{last}={format_exact(table[last])} instead of 1')
    return table
