# General utils: logging, run directories, config loading and error types

import glob
import hashlib
import json
import logging
import os
import re
import sys
from pathlib import Path

import numpy as np
import pandas as pd
import yaml

# Settings
np.set_printoptions(linewidth=320, formatter={'float_kind': '{:11.5g}'.format})  # format short g, %precision=5
pd.options.display.max_columns = 12
NUM_THREADS = max(1, min(8, int(os.getenv('THREADS', os.cpu_count() or 1))))  # ThreadPool size for sweeps
os.environ['NUMEXPR_MAX_THREADS'] = str(NUM_THREADS)  # NumExpr max threads


class DomainError(ValueError):
    # Argument outside the documented domain of an operation
    pass


class PreconditionError(DomainError):
    # Input object violates a structural precondition (Hermiticity, unit trace, unitarity)
    pass


class DimensionCapError(DomainError):
    # Hilbert-space dimension above a numeric or oracle cap
    pass


class InsufficientEnvironmentError(ValueError):
    # Redundancy threshold not reached by any fragment of the available environment
    pass


class NumericalError(ArithmeticError):
    # Eigenvalue or probability outside its clip tolerance, or a solver failure
    pass


class ConfigError(ValueError):
    """Invalid sweep configuration, rendered as 'source:line: message' when the line is known."""

    def __init__(self, message, source=None, line=None):
        self.message, self.source, self.line = message, source, line
        super().__init__(self.__str__())

    def __str__(self):
        if self.source is None:
            return self.message
        return f'{self.source}:{self.line}: {self.message}' if self.line else f'{self.source}: {self.message}'


def set_logging(verbose=True):
    logging.basicConfig(
        format="%(message)s",
        level=logging.INFO if verbose else logging.WARN)


def colorstr(*input):
    # ANSI-colored string, colorstr('red', 'bold', 'error:'); a single argument is blue and bold
    *args, string = input if len(input) > 1 else ('blue', 'bold', input[0])
    colors = {'red': '\033[31m', 'blue': '\033[34m', 'bold': '\033[1m', 'end': '\033[0m'}
    return ''.join(colors[x] for x in args) + f'{string}' + colors['end']


def check_file(file):
    # Search for file if not found
    if file == '-' or Path(file).is_file() or file == '':
        return file
    files = glob.glob('./**/' + file, recursive=True)  # find file
    if not len(files):
        raise ConfigError('file not found', source=file)
    if len(files) > 1:
        raise ConfigError(f'multiple files match, specify exact path: {files}', source=file)
    return files[0]  # return file


def increment_path(path, exist_ok=True):
    # First free run directory: runs/info-curve/exp, then exp2, exp3, ...
    path = Path(path)
    if exist_ok or not path.exists():
        return str(path)
    taken = [int(m.group(1)) for d in path.parent.glob(f'{path.name}*')
             if (m := re.fullmatch(rf'{re.escape(path.name)}(\d+)', d.name))]
    return str(path.parent / f'{path.name}{max(taken, default=1) + 1}')


def _key_lines(node, prefix=''):
    # Map dotted key paths of a composed YAML mapping to 1-based line numbers
    lines = {}
    if isinstance(node, yaml.MappingNode):
        for k, v in node.value:
            key = f'{prefix}{k.value}'
            lines[key] = k.start_mark.line + 1
            lines.update(_key_lines(v, key + '.'))
    return lines


def load_yaml(file):
    """Load a YAML (or JSON) document from a path or '-' for stdin.

    Returns (dict, lines, source) where lines maps dotted keys to their line numbers.
    """
    source = '<stdin>' if file == '-' else str(file)
    try:
        text = sys.stdin.read() if file == '-' else Path(check_file(file)).read_text()
    except OSError as e:
        raise ConfigError(str(e), source=source)
    try:
        data = yaml.safe_load(text)
        lines = _key_lines(yaml.compose(text)) if data else {}
    except yaml.YAMLError as e:
        mark = getattr(e, 'problem_mark', None)
        raise ConfigError(f'parse error: {getattr(e, "problem", e)}', source=source,
                          line=mark.line + 1 if mark else None)
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError('top level must be a mapping', source=source, line=1)
    return data, lines, source


def config_hash(cfg):
    # SHA-256 of the canonical JSON form of a resolved config
    s = json.dumps(cfg, sort_keys=True, separators=(',', ':'), default=str)
    return hashlib.sha256(s.encode()).hexdigest()


def round_sig(x, digits=12):
    # Round floats to significant digits, NaN/inf to None, for JSON tables
    if isinstance(x, (float, np.floating)):
        return float(f'{x:.{digits}g}') if np.isfinite(x) else None
    if isinstance(x, np.integer):
        return int(x)
    return x
