"""Module for the JSON run configuration and the named parameter presets."""
from __future__ import annotations
from typing import TYPE_CHECKING

import json
import logging
import os

from qracah_gaps.ensemble import EnsembleParams
from qracah_gaps.errors import ConfigurationError, InvalidParamsError
from qracah_gaps.gaps import METHODS
from qracah_gaps.numeric.scalars import Backend, parse_exact

if TYPE_CHECKING:
    from typing import Any, Dict, Optional, Tuple

LOG: logging.Logger = logging.getLogger("qracah_gaps.config")

ROOT_KEY: str = 'qracahGaps'

LOG_LEVELS: Dict[str, int] = {
    'debug': logging.DEBUG,
    'info': logging.INFO,
    'warning': logging.WARNING,
    'error': logging.ERROR,
}

MIN_PRECISION_BITS: int = 64

PRESETS: Dict[str, Dict[str, Any]] = {
    'P0': {'ensemble': {'q': '1/4', 'alpha': '256', 'beta': '256', 'delta': '1/1024', 'M': 3, 'N': 2}},
    'P1': {'ensemble': {'q': '1/2', 'alpha': '32', 'beta': '32', 'delta': '1/64', 'M': 4, 'N': 2}},
    'H233': {'tiling': {'a': 2, 'b': 3, 'c': 3, 'kappa2': '1/4096', 'q': '1/4'}},
}


def _exact(block: str, key: str, value: Any) -> Any:
    if isinstance(value, (bool, float)):
        raise ConfigurationError(f'{block}.{key}={value!r} is not exact, write it as a string "p/q"')
    if isinstance(value, int):
        return parse_exact(str(value))
    if not isinstance(value, str):
        raise ConfigurationError(f'{block}.{key} must be a string "p/q"')
    try:
        return parse_exact(value)
    except (ValueError, ZeroDivisionError) as err:
        raise ConfigurationError(f'{block}.{key}="{value}" is not an exact rational: {err}') from err


def _integer(block: str, key: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigurationError(f'{block}.{key}={value!r} must be an integer')
    return value


def _require(block: str, config: Dict[str, Any], keys: Tuple[str, ...], optional: Tuple[str, ...] = ()) -> None:
    if not isinstance(config, dict):
        raise ConfigurationError(f'"{block}" must be an object')
    missing = [key for key in keys if key not in config]
    if missing:
        raise ConfigurationError(f'"{block}" is missing {", ".join(missing)}')
    unknown = [key for key in config if key not in keys + optional]
    if unknown:
        raise ConfigurationError(f'"{block}" has unknown keys {", ".join(unknown)}')


class TilingConfig:  # pylint: disable=too-few-public-methods
    """
    The hexagon (a, b, c), the weight parameters and an optional slice.

    Args:
        config (Dict): the "tiling" block.
    """
    def __init__(self, config: Dict[str, Any]) -> None:
        _require('tiling', config, ('a', 'b', 'c', 'kappa2', 'q'), ('t',))
        self.a: int = _integer('tiling', 'a', config['a'])  # pylint: disable=invalid-name
        self.b: int = _integer('tiling', 'b', config['b'])  # pylint: disable=invalid-name
        self.c: int = _integer('tiling', 'c', config['c'])  # pylint: disable=invalid-name
        if min(self.a, self.b, self.c) < 1:
            raise ConfigurationError('The hexagon sides a, b, c must be at least 1')
        self.kappa2: Any = _exact('tiling', 'kappa2', config['kappa2'])
        self.q: Any = _exact('tiling', 'q', config['q'])  # pylint: disable=invalid-name
        self.t: Optional[int] = None  # pylint: disable=invalid-name
        if config.get('t') is not None:
            self.t = _integer('tiling', 't', config['t'])
            if not 0 <= self.t <= self.b + self.c:
                raise ConfigurationError(f'tiling.t={self.t} is outside 0..{self.b + self.c}')

    def as_dict(self) -> Dict[str, Any]:
        """Serializable view."""
        return {'a': self.a, 'b': self.b, 'c': self.c, 'kappa2': str(self.kappa2), 'q': str(self.q), 't': self.t}


class RunConfig:
    """
    Validated run configuration.

    Recognised keys are copied into active_config with their defaults; the parameter block becomes an EnsembleParams or a
    TilingConfig.

    Args:
        config (Dict): the object under the "qracahGaps" key.

    Raises:
        ConfigurationError: on unknown or invalid keys, or when both or none of "ensemble" and "tiling" are given while
            required is set.
    """
    def __init__(self, config: Dict[str, Any], required: bool = True) -> None:
        if not isinstance(config, dict):
            raise ConfigurationError(f'"{ROOT_KEY}" must be an object')
        known = ('log_level', 'ensemble', 'tiling', 'backend', 'precision_bits', 'method', 'seed', 'out')
        unknown = [key for key in config if key not in known]
        if unknown:
            raise ConfigurationError(f'Unknown configuration keys {", ".join(unknown)}')
        self.active_config: Dict[str, Any] = {}
        self.ensemble: Optional[EnsembleParams] = None
        self.tiling: Optional[TilingConfig] = None

        self.active_config['log_level'] = 'info'
        if 'log_level' in config:
            self.active_config['log_level'] = config['log_level']
        self.active_config['backend'] = 'rational'
        if 'backend' in config:
            self.active_config['backend'] = config['backend']
        self.active_config['precision_bits'] = 128
        if 'precision_bits' in config:
            self.active_config['precision_bits'] = config['precision_bits']
        self.active_config['method'] = 'enumerate'
        if 'method' in config:
            self.active_config['method'] = config['method']
        self.active_config['seed'] = 0
        if 'seed' in config:
            self.active_config['seed'] = config['seed']
        self.active_config['out'] = config.get('out')
        self.validate()

        if 'ensemble' in config and 'tiling' in config:
            raise ConfigurationError('Give either "ensemble" or "tiling", not both')
        if 'ensemble' in config:
            self.ensemble = ensemble_from_config(config['ensemble'])
        elif 'tiling' in config:
            self.tiling = TilingConfig(config['tiling'])
        elif required:
            raise ConfigurationError('The configuration needs an "ensemble" or a "tiling" block')

    def validate(self) -> None:
        """
        Check the scalar keys of active_config.

        Raises:
            ConfigurationError: on the first invalid key.
        """
        if self.active_config['log_level'] not in LOG_LEVELS:
            raise ConfigurationError(f'log_level must be one of {", ".join(LOG_LEVELS)}')
        try:
            Backend(self.active_config['backend'])
        except ValueError as err:
            raise ConfigurationError(f'backend must be one of {", ".join(backend.value for backend in Backend)}') from err
        bits = self.active_config['precision_bits']
        if isinstance(bits, bool) or not isinstance(bits, int) or bits < MIN_PRECISION_BITS:
            raise ConfigurationError(f'precision_bits must be an integer of at least {MIN_PRECISION_BITS}')
        if self.active_config['method'] not in METHODS:
            raise ConfigurationError(f'method must be one of {", ".join(METHODS)}')
        seed = self.active_config['seed']
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise ConfigurationError('seed must be an integer')
        if self.active_config['out'] is not None and not isinstance(self.active_config['out'], str):
            raise ConfigurationError('out must be a path')

    def override(self, **flags: Any) -> RunConfig:
        """
        Replace active_config values by command line flags that were given (not None) and validate again.

        Raises:
            ConfigurationError: if an overridden value is invalid.
        """
        for key, value in flags.items():
            if key not in self.active_config:
                raise ConfigurationError(f'Unknown configuration key {key}')
            if value is not None:
                self.active_config[key] = value
        self.validate()
        return self

    @property
    def backend(self) -> Backend:
        """The numeric backend."""
        return Backend(self.active_config['backend'])

    def __repr__(self) -> str:
        blocks = {'ensemble': self.ensemble.as_dict() if self.ensemble is not None else None,
                  'tiling': self.tiling.as_dict() if self.tiling is not None else None}
        return f'RunConfig({self.active_config}, {blocks})'


def ensemble_from_config(config: Dict[str, Any]) -> EnsembleParams:
    """
    Build EnsembleParams from an "ensemble" block.

    Raises:
        ConfigurationError: on missing keys, inexact values or parameters that define no ensemble.
    """
    _require('ensemble', config, ('q', 'alpha', 'beta', 'delta', 'M', 'N'))
    try:
        return EnsembleParams(_exact('ensemble', 'q', config['q']), _exact('ensemble', 'alpha', config['alpha']), _exact('ensemble', 'beta', config['beta']),
                              _exact('ensemble', 'delta', config['delta']), _integer('ensemble', 'M', config['M']), _integer('ensemble', 'N', config['N']))
    except InvalidParamsError as err:
        raise ConfigurationError(f'Invalid ensemble parameters: {err}') from err


def load_config(source: str, required: bool = True) -> RunConfig:
    """
    Load a configuration from a preset name or a JSON file.

    Args:
        source (str): P0, P1, H233 or a path to a JSON file with a "qracahGaps" object.
        required (bool): whether an ensemble or tiling block must be present.

    Raises:
        ConfigurationError: if the file cannot be read or is invalid.
    """
    if source in PRESETS:
        config = PRESETS[source]
    else:
        if not os.path.isfile(source):
            raise ConfigurationError(f'{source} is neither a preset ({", ".join(PRESETS)}) nor a file')
        try:
            with open(source, 'r', encoding='utf-8') as file:
                document = json.load(file)
        except json.JSONDecodeError as err:
            raise ConfigurationError(f'{source} is not valid JSON: {err}') from err
        except OSError as err:
            raise ConfigurationError(f'{source} cannot be read: {err}') from err
        if not isinstance(document, dict) or ROOT_KEY not in document:
            raise ConfigurationError(f'{source} has no "{ROOT_KEY}" object')
        config = document[ROOT_KEY]
    run_config = RunConfig(config, required)
    LOG.info('Loading qracah-gaps with config %s', run_config)
    return run_config
