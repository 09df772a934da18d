"""Module for the qracah-gaps command line interface."""
from __future__ import annotations
from typing import TYPE_CHECKING

import argparse
import csv
import io
import json
import logging
import sys

from qracah_gaps.config import LOG_LEVELS, PRESETS, RunConfig, load_config
from qracah_gaps.errors import ConfigurationError, NoCaseAppliesError, QRacahError
from qracah_gaps.gaps import METHODS, crosscheck, gap_table
from qracah_gaps.lattice import verification_report
from qracah_gaps.numeric.scalars import Backend
from qracah_gaps.painleve import painleve_orbit
from qracah_gaps.tiling import compare_slice, enumerate_tilings, tiling_rows

if TYPE_CHECKING:
    from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

    from qracah_gaps.ensemble import EnsembleParams

LOG: logging.Logger = logging.getLogger("qracah_gaps.cli")

COMMANDS_WITHOUT_PARAMS = ('lattice-verify',)


def _common_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--params', dest='params', help=f'Preset ({", ".join(PRESETS)}) or JSON configuration file', type=str, required=False,
                        default=None)
    parent.add_argument('--method', dest='method', help='Gap probability method', choices=list(METHODS), required=False, default=None)
    parent.add_argument('--backend', dest='backend', help='Numeric backend', choices=[backend.value for backend in Backend], required=False,
                        default=None)
    parent.add_argument('--precision-bits', dest='precision_bits', help='Working precision of the bigfloat backend', type=int, required=False,
                        default=None)
    parent.add_argument('--seed', dest='seed', help='Seed of randomized checks', type=int, required=False, default=None)
    parent.add_argument('--out', dest='out', help='Output file, stdout if absent', type=str, required=False, default=None)
    parent.add_argument('--log-level', dest='log_level', help='Logging level', choices=list(LOG_LEVELS), required=False, default=None)
    return parent


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with one subcommand per operation."""
    parent = _common_flags()
    parser = argparse.ArgumentParser(prog='qracah-gaps', description='Exact gap probabilities of the q-Racah ensemble')
    commands = parser.add_subparsers(dest='command', required=True)
    commands.add_parser('gap', parents=[parent], help='Gap table D_N..D_(M+1) as CSV')
    crosscheck_parser = commands.add_parser('crosscheck', parents=[parent], help='Run every method and the structural checks')
    crosscheck_parser.add_argument('--corrupt-k1', dest='corrupt_k1', help='Inject a fault into the first connection matrix', action='store_true')
    commands.add_parser('lattice-verify', parents=[parent], help='Verify the Picard lattice and Weyl word identities')
    tiling_parser = commands.add_parser('tiling', parents=[parent], help='Compare tiling slice marginals with the q-Racah distribution')
    tiling_parser.add_argument('--tilings', dest='tilings', help='Also write index, volume and weight of every tiling to this CSV file', type=str,
                               required=False, default=None)
    orbit_parser = commands.add_parser('orbit', parents=[parent], help='Painleve coordinates along the connection recursion as JSON')
    orbit_parser.add_argument('--swap', dest='swap', help='Use the second root of b21 for the spectral point', action='store_true')
    return parser


def _csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, 'w', encoding='utf-8', newline='') as file:
            file.write(text)
    except OSError as err:
        raise ConfigurationError(f'{out} cannot be written: {err}') from err
    LOG.info('Wrote %s', out)


def _ensemble(run_config: RunConfig) -> EnsembleParams:
    if run_config.ensemble is None:
        raise ConfigurationError('This command needs an "ensemble" block')
    return run_config.ensemble


def cmd_gap(run_config: RunConfig, _: argparse.Namespace) -> int:
    """Write the gap table of the configured method."""
    table = gap_table(_ensemble(run_config), run_config.active_config['method'], run_config.backend, run_config.active_config['precision_bits'])
    _write(_csv(('s', 'D_s', 'method'), table.rows()), run_config.active_config['out'])
    return 0


def _shift_k1(k1: Any) -> Any:
    return k1 + 1


def cmd_crosscheck(run_config: RunConfig, args: argparse.Namespace) -> int:
    """Run all methods and checks, exit status 1 on any FAIL."""
    report = crosscheck(_ensemble(run_config), corrupt=_shift_k1 if args.corrupt_k1 else None)
    _write('\n'.join(report.lines()) + '\n', run_config.active_config['out'])
    return 0 if report.passed else 1


def cmd_lattice_verify(run_config: RunConfig, _: argparse.Namespace) -> int:
    """Write PASS or FAIL per lattice identity."""
    results = verification_report(seed=run_config.active_config['seed'])
    lines = [f'{"PASS" if passed else "FAIL"} {name}' for name, passed in results]
    passed = all(passed for _, passed in results)
    lines.append('PASS all checks' if passed else 'FAIL lattice-verify')
    _write('\n'.join(lines) + '\n', run_config.active_config['out'])
    return 0 if passed else 1


def cmd_tiling(run_config: RunConfig, args: argparse.Namespace) -> int:
    """
    Compare the slice marginals of the configured hexagon with the q-Racah distribution.

    Without a configured slice every slice is compared; slices no case covers are skipped with a warning.
    """
    tiling = run_config.tiling
    if tiling is None:
        raise ConfigurationError('This command needs a "tiling" block')
    tilings = enumerate_tilings(tiling.a, tiling.b, tiling.c)
    slices = [tiling.t] if tiling.t is not None else list(range(tiling.b + tiling.c + 1))
    rows: List[Sequence[Any]] = []
    passed = True
    for t in slices:
        try:
            comparison = compare_slice(tiling.a, tiling.b, tiling.c, tiling.kappa2, tiling.q, t, tilings)
        except NoCaseAppliesError as err:
            if tiling.t is not None:
                raise
            LOG.warning('Skipping slice t=%d: %s', t, err)
            continue
        if not comparison.nonnegative:
            LOG.warning('Slice t=%d has negative marginal probabilities', t)
        if not comparison.matches:
            LOG.error('Slice t=%d (case %d) does not match the q-Racah distribution', t, comparison.case)
        passed = passed and comparison.matches and comparison.nonnegative
        rows.extend(comparison.rows())
    _write(_csv(('t', 'positions', 'probability', 'ensemble'), rows), run_config.active_config['out'])
    if args.tilings is not None:
        _write(_csv(('index', 'volume', 'weight'), tiling_rows(tilings, tiling.kappa2, tiling.q)), args.tilings)
    LOG.info('Tiling (%d, %d, %d): %d tilings, marginal match %s', tiling.a, tiling.b, tiling.c, len(tilings), 'PASS' if passed else 'FAIL')
    return 0 if passed else 1


def cmd_orbit(run_config: RunConfig, args: argparse.Namespace) -> int:
    """Write the Painleve orbit with its calibrated direction as JSON."""
    params = _ensemble(run_config)
    orbit = painleve_orbit(params, swap=args.swap)
    document: Dict[str, Any] = {
        'params': params.as_dict(),
        'swap': args.swap,
        'direction': orbit.direction.value,
        'shifts': orbit.shifts,
        'points': orbit.to_json(),
    }
    _write(json.dumps(document, indent=2, sort_keys=True) + '\n', run_config.active_config['out'])
    return 0


COMMANDS: Dict[str, Callable[[RunConfig, argparse.Namespace], int]] = {
    'gap': cmd_gap,
    'crosscheck': cmd_crosscheck,
    'lattice-verify': cmd_lattice_verify,
    'tiling': cmd_tiling,
    'orbit': cmd_orbit,
}


def _run_config(args: argparse.Namespace) -> RunConfig:
    needs_params = args.command not in COMMANDS_WITHOUT_PARAMS
    if args.params is None:
        if needs_params:
            raise ConfigurationError(f'{args.command} needs --params')
        run_config = RunConfig({}, required=False)
    else:
        run_config = load_config(args.params, required=needs_params)
    return run_config.override(method=args.method, backend=args.backend, precision_bits=args.precision_bits, seed=args.seed, out=args.out,
                               log_level=args.log_level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the qracah-gaps console script.

    Returns:
        int: 0 if every check passed, 1 on a failed check or a library error. Usage errors exit with status 2 from argparse.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(format='%(asctime)s:%(levelname)s:%(name)s:%(message)s', level=LOG_LEVELS[args.log_level or 'info'])
    try:
        run_config = _run_config(args)
        logging.getLogger().setLevel(LOG_LEVELS[run_config.active_config['log_level']])
        return COMMANDS[args.command](run_config, args)
    except QRacahError as err:
        LOG.error('%s failed: %s', args.command, err)
        print(f'error: {type(err).__name__}: {err}', file=sys.stderr)
        return 1
