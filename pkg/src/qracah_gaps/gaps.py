"""Module for running the gap probability methods and cross-checking them against each other."""
from __future__ import annotations
from typing import TYPE_CHECKING

import logging

import mpmath

from qracah_gaps.connection import ConnectionMatrix, build_As_from_m, connection_gap_table, extract_triple, isomonodromy_step, iterate_connection
from qracah_gaps.drhp import direct_m, drhp_gap_table
from qracah_gaps.ensemble import NodeGrid
from qracah_gaps.errors import BackendMismatchError, ConfigurationError, InvalidParamsError, QRacahError
from qracah_gaps.lattice import ENSEMBLE_TRANSLATION
from qracah_gaps.numeric.matrix import Mat2
from qracah_gaps.numeric.poly import Poly
from qracah_gaps.numeric.scalars import Backend, format_exact, is_exact, to_bigfloat
from qracah_gaps.oracle import enumerate_gap_table, fredholm_gap_table
from qracah_gaps.painleve import Direction, from_painleve, from_painleve_closed_form, painleve_gap_table, painleve_orbit

if TYPE_CHECKING:
    from typing import Any, Callable, Dict, List, Optional, Sequence

    from qracah_gaps.ensemble import EnsembleParams
    from qracah_gaps.oracle import GapTable
    from qracah_gaps.painleve import PainleveOrbit

LOG: logging.Logger = logging.getLogger("qracah_gaps.gaps")

METHODS: Dict[str, Callable[[EnsembleParams], GapTable]] = {
    'enumerate': enumerate_gap_table,
    'fredholm': fredholm_gap_table,
    'drhp': drhp_gap_table,
    'connection': connection_gap_table,
    'painleve': painleve_gap_table,
}

EXACT_ONLY: Sequence[str] = ('drhp', 'painleve')
DELTA_POSITIVE: Sequence[str] = ('connection', 'painleve')


def gap_table(params: EnsembleParams, method: str = 'enumerate', backend: Backend = Backend.RATIONAL, precision_bits: int = 128) -> GapTable:
    """
    Gap probabilities D_N..D_(M+1) by one method.

    Args:
        params (EnsembleParams): exact parameters.
        method (str): one of METHODS.
        backend (Backend): RATIONAL and QUADEXT run exactly, BIGFLOAT converts the parameters at precision_bits.
        precision_bits (int): working precision of the BIGFLOAT backend.

    Raises:
        ConfigurationError: for an unknown method.
        BackendMismatchError: for a method that only runs exactly combined with BIGFLOAT.
    """
    if method not in METHODS:
        raise ConfigurationError(f'Unknown method {method}, expected one of {", ".join(METHODS)}')
    if backend != Backend.BIGFLOAT:
        return METHODS[method](params.with_backend(backend))
    if method in EXACT_ONLY:
        raise BackendMismatchError(f'The {method} method runs in the exact backends only')
    with mpmath.workprec(precision_bits):
        floating = params.with_backend(Backend.BIGFLOAT)
        if method == 'connection':
            return connection_gap_table(floating, precision_bits)
        return METHODS[method](floating)


class CheckResult:
    """
    Outcome of one check of a cross-check run.

    Args:
        name (str): what was checked.
        status (str): PASS, FAIL or REPORT; REPORT lines carry information without deciding the run.
        detail (str): discrepancy, error class or reported value.
    """
    def __init__(self, name: str, status: str, detail: str = '') -> None:
        self.name: str = name
        self.status: str = status
        self.detail: str = detail

    @property
    def failed(self) -> bool:
        """True for FAIL."""
        return self.status == 'FAIL'

    def line(self) -> str:
        """One report line."""
        return f'{self.status} {self.name}' + (f': {self.detail}' if self.detail else '')

    def __repr__(self) -> str:
        return f'CheckResult({self.line()})'


class CrosscheckReport:
    """
    Gap tables of every method together with the checks run on them.

    Attributes:
        tables (Dict[str, GapTable]): table per method that ran to completion.
        checks (List[CheckResult]): the checks in the order they ran.
    """
    def __init__(self) -> None:
        self.tables: Dict[str, GapTable] = {}
        self.checks: List[CheckResult] = []

    def add(self, name: str, passed: bool, detail: str = '') -> None:
        """Record a PASS or FAIL."""
        self.checks.append(CheckResult(name, 'PASS' if passed else 'FAIL', detail))

    def report(self, name: str, detail: str) -> None:
        """Record a REPORT line."""
        self.checks.append(CheckResult(name, 'REPORT', detail))

    @property
    def passed(self) -> bool:
        """True if no check failed."""
        return not any(check.failed for check in self.checks)

    def lines(self) -> List[str]:
        """The report as text lines, ending with the overall result."""
        return [check.line() for check in self.checks] + ['PASS all checks' if self.passed else 'FAIL crosscheck']


def discrepancy(first: Any, second: Any) -> Any:
    """
    |first - second| as a big float, exactly 0 when the values are equal.

    Exact values compare exactly, so a difference that only shows up beyond the working precision still counts.
    """
    difference = first - second
    if is_exact(difference) and difference == 0:
        return mpmath.mpf(0)
    value = abs(to_bigfloat(difference))
    if is_exact(difference) and value == 0:
        return mpmath.mpf(2) ** (-mpmath.mp.prec)
    return value


def _compare(report: CrosscheckReport, reference: GapTable, table: GapTable) -> None:
    missing = [s for s in reference.s_range if s not in table.values or s not in reference.values]
    if missing:
        report.add(f'{table.method} agrees with {reference.method}', False, f'missing D_s for s in {missing}')
        return
    worst = max(discrepancy(reference[s], table[s]) for s in reference.s_range)
    report.add(f'{table.method} agrees with {reference.method}', worst == 0, f'max discrepancy {mpmath.nstr(worst, 5)}')


def _structural(report: CrosscheckReport, params: EnsembleParams, corrupt: Optional[Callable[[Any], Any]]) -> None:
    grid = NodeGrid(params)
    try:
        for matrix, _ in iterate_connection(params) if corrupt is None else _corrupted(params, corrupt):
            matrix.check()
            direct = build_As_from_m(direct_m(grid, params.N, matrix.s), params)
            report.add(f'A_{matrix.s} determinant, involution, palindromy and A(u) = I', True)
            report.add(f'A_{matrix.s} from the isomonodromic step equals A_{matrix.s} from m_{matrix.s}', direct == matrix)
    except QRacahError as err:
        LOG.error('Structural check failed: %s', err)
        report.add('connection matrix structure', False, type(err).__name__)


def _corrupted(params: EnsembleParams, corrupt: Callable[[Any], Any]) -> Any:
    """Connection matrices of a run whose first matrix has its b21 coefficient k1 replaced by corrupt(k1)."""
    matrix, _ = next(iter(iterate_connection(params)))
    k0, k1 = matrix.coefficients()['k']
    u2 = params.u2
    b21 = Poly((0, -u2, 0, 1)) * Poly((k0 * u2, corrupt(k1), k0))
    broken = ConnectionMatrix(matrix.s, params, Mat2(matrix.b.e11, matrix.b.e12, b21, matrix.b.e22))
    LOG.warning('Injected fault: k1 of A_%d changed from %s to %s', matrix.s, format_exact(k1), format_exact(corrupt(k1)))
    triple = extract_triple(matrix)
    yield isomonodromy_step(broken, triple.jump()), None


def _closed_form(report: CrosscheckReport, orbit: PainleveOrbit) -> None:
    for s, point in sorted(orbit.points.items()):
        try:
            closed = from_painleve_closed_form(point)
            eliminated = from_painleve(point).x
        except QRacahError as err:
            report.add(f'closed form inverse at s={s}', False, type(err).__name__)
            continue
        report.add(f'closed form inverse at s={s}', closed == eliminated, f'x {format_exact(closed)} against {format_exact(eliminated)}')


def crosscheck(params: EnsembleParams, methods: Optional[Sequence[str]] = None, corrupt: Optional[Callable[[Any], Any]] = None) -> CrosscheckReport:
    """
    Run the methods on exact parameters, compare every table with the first one and run the structural checks.

    Args:
        params (EnsembleParams): exact parameters.
        methods (Sequence[str]): methods to run, all by default; the first is the reference.
        corrupt (Callable): fault injection, applied to the b21 coefficient k1 of the first connection matrix.

    Returns:
        CrosscheckReport: tables and checks; errors of a method are recorded as FAIL with the error class.

    Raises:
        InvalidParamsError: for floating point parameters.
    """
    if not is_exact(params.q):
        raise InvalidParamsError('The crosscheck compares exact tables, the parameters are floating point')
    LOG.info('Loading crosscheck with config %s', params.as_dict())
    report = CrosscheckReport()
    for method in methods or list(METHODS):
        if params.delta == 0 and method in DELTA_POSITIVE:
            report.report(f'{method} skipped', 'connection matrices need delta > 0')
            continue
        try:
            table = gap_table(params, method)
        except QRacahError as err:
            LOG.error('Method %s failed: %s', method, err)
            report.add(f'{method} ran', False, type(err).__name__)
            continue
        report.tables[method] = table
        violations = table.violations()
        report.add(f'{method} D_s in (0, 1], nondecreasing, D_(M+1) = 1', not violations, '; '.join(violations))
    tables = list(report.tables.values())
    for table in tables[1:]:
        _compare(report, tables[0], table)
    if params.delta != 0 and params.M > params.N:
        _structural(report, params, corrupt)
        try:
            orbit = painleve_orbit(params)
        except QRacahError as err:
            report.add('Painleve orbit', False, type(err).__name__)
        else:
            report.add(f'Painleve points of A_{params.N}..A_{params.M} invert exactly', True)
            detail = f'direction {orbit.direction.value}, root variable shifts {orbit.shifts}'
            report.add('conjugated q-P(E7) step against the isomonodromic step', orbit.direction == Direction.FORWARD, detail)
            expected = [-value for value in ENSEMBLE_TRANSLATION]
            report.add('root variables follow the ensemble translation', all(shift == expected for shift in orbit.shifts), detail)
            _closed_form(report, orbit)
    LOG.info('Crosscheck finished: %s', 'PASS' if report.passed else 'FAIL')
    return report
