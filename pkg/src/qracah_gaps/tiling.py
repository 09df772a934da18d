"""Module for kappa,q-weighted lozenge tilings of small hexagons and their slice marginals."""
from __future__ import annotations
from typing import TYPE_CHECKING

import logging
from fractions import Fraction

import mpmath

from qracah_gaps.ensemble import distribution, tiling_case, tiling_to_ensemble
from qracah_gaps.errors import IndexOutOfRangeError, InvalidKappaError, InvariantViolationError, TooLargeError
from qracah_gaps.numeric.scalars import div, format_exact, to_bigfloat

if TYPE_CHECKING:
    from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

LOG: logging.Logger = logging.getLogger("qracah_gaps.tiling")

TILING_GUARD: int = 10**5


class BoxedPlanePartition:
    """
    An a x b array with entries in [0, c], weakly decreasing along rows and columns.

    Row i describes path i of the non-intersecting path family: entry (i, j) is c minus the number of up-steps the path
    makes before its (j+1)-th flat step.

    Args:
        entries (Sequence[Sequence[int]]): the rows.
        c (int): the height bound.

    Raises:
        ValueError: if the array is not a boxed plane partition.
    """
    def __init__(self, entries: Sequence[Sequence[int]], c: int) -> None:
        self.entries: Tuple[Tuple[int, ...], ...] = tuple(tuple(row) for row in entries)
        self.c: int = c
        if not self.entries or len({len(row) for row in self.entries}) != 1:
            raise ValueError('A plane partition needs rows of equal length')
        for i, row in enumerate(self.entries):
            for j, value in enumerate(row):
                if not 0 <= value <= c:
                    raise ValueError(f'Entry ({i},{j})={value} is outside [0, {c}]')
                if (j > 0 and value > row[j - 1]) or (i > 0 and value > self.entries[i - 1][j]):
                    raise ValueError(f'Entry ({i},{j})={value} breaks monotonicity')

    @property
    def a(self) -> int:  # pylint: disable=invalid-name
        """Number of rows, the number of paths N."""
        return len(self.entries)

    @property
    def b(self) -> int:  # pylint: disable=invalid-name
        """Number of columns."""
        return len(self.entries[0])

    @property
    def volume(self) -> int:
        """Number of boxes."""
        return sum(sum(row) for row in self.entries)

    def steps(self, path: int) -> List[int]:
        """Steps of a path over the b + c time steps: 1 for an up-step, 0 for a flat step."""
        result: List[int] = []
        made = 0
        for value in self.entries[path]:
            before = self.c - value
            result.extend([1] * (before - made))
            result.append(0)
            made = before
        result.extend([1] * (self.c - made))
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoxedPlanePartition):
            return NotImplemented
        return self.entries == other.entries and self.c == other.c

    def __hash__(self) -> int:
        return hash((self.entries, self.c))

    def __repr__(self) -> str:
        return f'BoxedPlanePartition({[list(row) for row in self.entries]}, c={self.c})'


class ParticleSlice:
    """
    Positions x_1 < ... < x_N where the vertical line at time t cuts the paths.

    Args:
        t (int): the time.
        positions (Sequence[int]): strictly increasing positions.
    """
    def __init__(self, t: int, positions: Sequence[int]) -> None:
        self.t: int = t
        self.positions: Tuple[int, ...] = tuple(positions)
        if any(second <= first for first, second in zip(self.positions, self.positions[1:])):
            raise InvariantViolationError(f'Paths intersect at t={t}: {self.positions}')

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ParticleSlice):
            return NotImplemented
        return self.t == other.t and self.positions == other.positions

    def __hash__(self) -> int:
        return hash((self.t, self.positions))

    def __repr__(self) -> str:
        return f'ParticleSlice(t={self.t}, {self.positions})'


def macmahon_count(a: int, b: int, c: int) -> int:
    """Number of boxed plane partitions, prod (i+j+k-1)/(i+j+k-2) over the a x b x c box."""
    count = Fraction(1)
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            for k in range(1, c + 1):
                count *= Fraction(i + j + k - 1, i + j + k - 2)
    return int(count)


def _rows(length: int, bound: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Weakly decreasing rows dominated entrywise by bound."""
    if length == 0:
        yield ()
        return
    for first in range(bound[0], -1, -1):
        for rest in _rows(length - 1, [min(first, value) for value in bound[1:]]):
            yield (first,) + rest


def enumerate_tilings(a: int, b: int, c: int) -> List[BoxedPlanePartition]:
    """
    All boxed plane partitions of the a x b x c box in lexicographically decreasing order.

    Raises:
        TooLargeError: if the MacMahon count exceeds the enumeration guard.
    """
    count = macmahon_count(a, b, c)
    if count > TILING_GUARD:
        raise TooLargeError(f'{count} tilings of the ({a},{b},{c}) hexagon exceed the guard of {TILING_GUARD}')

    def fill(prefix: List[Tuple[int, ...]]) -> Iterator[List[Tuple[int, ...]]]:
        if len(prefix) == a:
            yield prefix
            return
        bound = list(prefix[-1]) if prefix else [c] * b
        for row in _rows(b, bound):
            yield from fill(prefix + [row])

    tilings = [BoxedPlanePartition(rows, c) for rows in fill([])]
    if len(tilings) != count:
        raise InvariantViolationError(f'Enumerated {len(tilings)} tilings, the product formula gives {count}')
    LOG.debug('Enumerated %d tilings of the (%d,%d,%d) hexagon', count, a, b, c)
    return tilings


def particles(tiling: BoxedPlanePartition, t: int) -> ParticleSlice:
    """
    The particle slice at time t; path k starts at position k.

    Raises:
        IndexOutOfRangeError: if t is outside [0, b + c].
    """
    if not 0 <= t <= tiling.b + tiling.c:
        raise IndexOutOfRangeError(f't={t} is outside 0..{tiling.b + tiling.c}')
    return ParticleSlice(t, [path + sum(tiling.steps(path)[:t]) for path in range(tiling.a)])


def slice_range(a: int, b: int, c: int, t: int) -> range:
    """Positions available at time t: max(0, t-b) .. min(t, c) + N - 1."""
    return range(max(0, t - b), min(t, c) + a)


def horizontal_lozenges(tiling: BoxedPlanePartition, t: int) -> List[int]:
    """Positions at time t not occupied by a path; each carries one horizontal lozenge."""
    occupied = set(particles(tiling, t).positions)
    return [x for x in slice_range(tiling.a, tiling.b, tiling.c, t) if x not in occupied]


def check_kappa(kappa2: Any, q: Any, total: int) -> None:
    """
    Raises:
        InvalidKappaError: unless 0 <= kappa^2 < q^(T-1).
    """
    if not 0 <= kappa2 < q ** (total - 1):
        raise InvalidKappaError(f'kappa^2={kappa2} is outside [0, q^{total - 1})')


def lozenge_factor(t: int, x: int, c: int, kappa2: Any, q: Any) -> Any:
    """
    Rational part (1 - kappa^2 q^(2e)) q^-x of the lozenge factor kappa q^e - q^-e/kappa, e = (2x - t - c + 1)/2.

    The remaining factor -q^((t+c-1)/2)/kappa depends on t only and goes into global_factor.
    """
    return (1 - kappa2 * q ** (2 * x - t - c + 1)) * div(1, q ** x)


def tiling_weight(tiling: BoxedPlanePartition, kappa2: Any, q: Any) -> Any:
    """
    Rational part of the weight of a tiling, the product of lozenge_factor over all horizontal lozenges.

    Raises:
        InvalidKappaError: if kappa^2 is outside [0, q^(T-1)).
        InvariantViolationError: if the tiling does not carry b*c horizontal lozenges.
    """
    total = tiling.b + tiling.c
    check_kappa(kappa2, q, total)
    result: Any = 1
    count = 0
    for t in range(total + 1):
        for x in horizontal_lozenges(tiling, t):
            result = result * lozenge_factor(t, x, tiling.c, kappa2, q)
            count += 1
    if count != tiling.b * tiling.c:
        raise InvariantViolationError(f'{count} horizontal lozenges instead of {tiling.b * tiling.c}')
    return result


class GlobalFactor:
    """
    Tiling independent factor sign * kappa^kappa_exponent * q^q_exponent of every tiling weight.

    Args:
        sign (int): +1 or -1.
        kappa_exponent (int): power of kappa.
        q_exponent (Fraction): power of q, possibly a half integer.
    """
    def __init__(self, sign: int, kappa_exponent: int, q_exponent: Fraction) -> None:
        self.sign: int = sign
        self.kappa_exponent: int = kappa_exponent
        self.q_exponent: Fraction = q_exponent

    def value(self, kappa2: Any, q: Any, precision_bits: int = 128) -> Any:
        """Numerical value, kappa taken as the positive root of kappa^2."""
        with mpmath.workprec(precision_bits):
            kappa = mpmath.sqrt(to_bigfloat(kappa2))
            return self.sign * kappa ** self.kappa_exponent * mpmath.power(to_bigfloat(q), to_bigfloat(self.q_exponent))

    def __repr__(self) -> str:
        return f'GlobalFactor({self.sign}, kappa^{self.kappa_exponent}, q^{self.q_exponent})'


def global_factor(a: int, b: int, c: int) -> GlobalFactor:
    """(-1)^(bc) kappa^(-bc) q^E with E the sum of (t + c - 1)/2 over all horizontal lozenges."""
    exponent = Fraction(0)
    for t in range(b + c + 1):
        holes = len(slice_range(a, b, c, t)) - a
        exponent += holes * Fraction(t + c - 1, 2)
    return GlobalFactor((-1) ** (b * c), -b * c, exponent)


def full_weight(tiling: BoxedPlanePartition, kappa2: Any, q: Any, precision_bits: int = 128) -> Any:
    """Product of the lozenge factors kappa q^e - q^-e/kappa in big floats."""
    factor = global_factor(tiling.a, tiling.b, tiling.c)
    with mpmath.workprec(precision_bits):
        return factor.value(kappa2, q, precision_bits) * to_bigfloat(tiling_weight(tiling, kappa2, q))


def slice_marginal(a: int, b: int, c: int, kappa2: Any, q: Any, t: int,  # pylint: disable=too-many-arguments,too-many-positional-arguments
                   tilings: Optional[List[BoxedPlanePartition]] = None) -> Dict[Tuple[int, ...], Any]:
    """
    Distribution of the particle slice at time t under the normalized tiling weights.

    Raises:
        TooLargeError: if the hexagon is too large to enumerate.
        InvalidKappaError: if kappa^2 is outside [0, q^(T-1)).
    """
    if tilings is None:
        tilings = enumerate_tilings(a, b, c)
    totals: Dict[Tuple[int, ...], Any] = {}
    partition: Any = 0
    for tiling in tilings:
        value = tiling_weight(tiling, kappa2, q)
        partition = partition + value
        key = particles(tiling, t).positions
        totals[key] = totals.get(key, 0) + value
    return {key: div(value, partition) for key, value in sorted(totals.items())}


def ensemble_marginal(a: int, b: int, c: int, kappa2: Any, q: Any, t: int) -> Dict[Tuple[int, ...], Any]:  # pylint: disable=too-many-arguments,too-many-positional-arguments
    """
    The q-Racah distribution of the slice dictionary, with positions shifted back by the case offset.

    Raises:
        NoCaseAppliesError: if no case covers the slice.
    """
    _, offset = tiling_case(b, c, t)
    params = tiling_to_ensemble(a, b, c, t, kappa2, q)
    return {tuple(x + offset for x in configuration): value for configuration, value in distribution(params).items()}


class SliceComparison:
    """
    Tiling marginal and ensemble distribution of one slice.

    Args:
        t (int): the slice.
        case (int): the case of the slice dictionary.
        marginal (Dict): enumerated tiling marginal.
        ensemble (Dict): q-Racah probabilities.
    """
    def __init__(self, t: int, case: int, marginal: Dict[Tuple[int, ...], Any], ensemble: Dict[Tuple[int, ...], Any]) -> None:
        self.t: int = t
        self.case: int = case
        self.marginal: Dict[Tuple[int, ...], Any] = marginal
        self.ensemble: Dict[Tuple[int, ...], Any] = ensemble

    @property
    def matches(self) -> bool:
        """Exact agreement, positions missing on one side count as probability zero."""
        keys = set(self.marginal) | set(self.ensemble)
        return all(self.marginal.get(key, 0) == self.ensemble.get(key, 0) for key in keys)

    @property
    def nonnegative(self) -> bool:
        """All marginal probabilities are nonnegative."""
        return all(value >= 0 for value in self.marginal.values())

    def rows(self) -> List[Tuple[int, str, str, str]]:
        """CSV rows (t, positions, probability, ensemble)."""
        keys = sorted(set(self.marginal) | set(self.ensemble))
        return [(self.t, ' '.join(str(x) for x in key), format_exact(self.marginal.get(key, Fraction(0))),
                 format_exact(self.ensemble.get(key, Fraction(0)))) for key in keys]


def compare_slice(a: int, b: int, c: int, kappa2: Any, q: Any, t: int,  # pylint: disable=too-many-arguments,too-many-positional-arguments
                  tilings: Optional[List[BoxedPlanePartition]] = None) -> SliceComparison:
    """Enumerated marginal against the q-Racah distribution at slice t."""
    case, _ = tiling_case(b, c, t)
    comparison = SliceComparison(t, case, slice_marginal(a, b, c, kappa2, q, t, tilings), ensemble_marginal(a, b, c, kappa2, q, t))
    LOG.debug('Slice t=%d case (%d): match %s', t, case, comparison.matches)
    return comparison


def tiling_rows(tilings: Sequence[BoxedPlanePartition], kappa2: Any, q: Any) -> List[Tuple[int, int, str]]:
    """CSV rows (index, volume, weight) with the rational part of each weight."""
    return [(index, tiling.volume, format_exact(tiling_weight(tiling, kappa2, q))) for index, tiling in enumerate(tilings)]
