"""Sweep information measures of a pure-decoherence model

Usage:
    $ python sweep.py --task info-curve --cfg data/curve.yaml
    $ python sweep.py --task redundancy --cfg data/redundancy.yaml --delta 0.1 0.01 0.001
    $ python sweep.py --task oracle-check --cfg data/oracle.yaml
    $ python sweep.py --task fit-exponent --cfg data/curve.yaml
    $ cat cfg.json | python sweep.py --task info-curve --cfg - --format json --output curve.json
"""

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from multiprocessing.pool import ThreadPool
from pathlib import Path

import numpy as np
import pandas as pd
import yaml
from tqdm import tqdm

from models.decoherence import (DecoherenceModel, PointerModel, branching_state, cmaybe_component,
                                gamma_component)
from models.oracle import evolve_full, good_decoherence_residual, grid_accessible_lower_bound, oracle_measures
from utils.chernoff import (FIT_WINDOW, SWITCHOVER_GAMMA, InfoCurve, auto_window, decay_exponent_fit, deficit,
                            mean_exponent, qcb_error_bound, qcb_info, qcb_info_from_bound, qcb_prefactor)
from utils.general import (NUM_THREADS, ConfigError, DomainError, InsufficientEnvironmentError, NumericalError,
                           colorstr, config_hash, increment_path, load_yaml, round_sig, set_logging)
from utils.metrics import (NUMERIC_DIM_CAP, accessible_info_closed_form, accessible_info_fano, accessible_info_from_pe,
                           helstrom_error_numeric, helstrom_error_pure_product, holevo_pointer_closed_form,
                           holevo_pointer_numeric)
from utils.redundancy import redundancy_result

logger = logging.getLogger(__name__)

TASKS = ('info-curve', 'redundancy', 'oracle-check', 'fit-exponent')
MODES = ('closed-form', 'numeric', 'oracle')
ORACLE_MAX_ENV = 12  # qubit components, 2 * 2**12 = oracle dimension cap
COLUMNS = {
    'info-curve': ['fragment_size', 'gamma_eff', 'holevo_pointer', 'accessible_info', 'qcb_info', 'pe_helstrom',
                   'pe_qcb', 'deficit_holevo', 'deficit_accessible', 'deficit_qcb'],
    'redundancy': ['measure', 'delta', 'threshold_mode', 'f_delta', 'r_delta', 'r_asymptotic', 'relative_gap',
                   'status'],
    'oracle-check': ['check', 'fragment_size', 'env_size', 'value', 'reference', 'discrepancy', 'tolerance',
                     'status'],
    'fit-exponent': ['measure', 'window_first', 'window_last', 'xi_fit', 'xi_fit_log_prefactor', 'xi_analytic',
                     'abs_diff', 'abs_diff_log_prefactor']}
TOLERANCES = {  # oracle-check defaults, data/tolerances.yaml overrides
    'holevo_abs': 1e-6,
    'holevo_residual_factor': 2.0,
    'helstrom_abs': 1e-10,
    'grid_abs': 5e-3,
    'ordering_slack': 1e-9,
    'residual_ratio_abs': 1e-6}
MEASURES = ('holevo_pointer', 'accessible_info', 'qcb_info')
DEFICITS = {'holevo_pointer': 'holevo', 'accessible_info': 'accessible', 'qcb_info': 'qcb'}


@dataclass
class SweepConfig:
    task: str = 'info-curve'
    p1: float = None  # 0.5 unless a model file sets it
    components: dict = None  # {gamma | angle: x, count: n, polarization: r} or {gammas: [...]}
    model: str = None  # models/*.yaml instead of inline components
    fragment_sizes: list = None
    frag_max: int = None
    deltas: list = field(default_factory=lambda: [0.1, 0.01, 0.001, 0.0001])
    threshold: str = 'linear'
    mode: str = 'closed-form'
    prefactor: str = 'auto'
    window: list = None
    resolution: int = 128
    synthetic: bool = False
    tolerances: dict = None
    format: str = 'csv'
    output: str = None


FLAGS = {'p1': 'p1', 'frag_max': 'frag-max', 'deltas': 'delta', 'mode': 'mode', 'format': 'format',
         'output': 'output', 'threshold': 'threshold', 'prefactor': 'prefactor', 'window': 'window',
         'resolution': 'resolution', 'model': 'model'}


def resolve_config(opt):
    """Merge the config document with command-line overrides and validate; errors cite file:line or --flag."""
    d, lines, source = load_yaml(opt.cfg) if opt.cfg else ({}, {}, '<flags>')
    where = {k: (source, lines.get(k)) for k in d}
    unknown = set(d) - set(SweepConfig.__dataclass_fields__)
    if unknown:
        k = sorted(unknown)[0]
        raise ConfigError(f'unknown key {k!r}', *where[k])
    if opt.task is not None:
        d['task'] = opt.task
    for k, flag in FLAGS.items():
        v = getattr(opt, k, None)
        if v is not None:
            d[k], where[k] = v, (f'--{flag}', None)
    if opt.synthetic:
        d['synthetic'] = True
    if opt.gamma is not None and opt.angle is not None:
        raise ConfigError('give one of --gamma and --angle, not both', '--angle')
    comps = d.get('components') or {}
    comps = dict(comps) if isinstance(comps, dict) else comps
    for k in ('gamma', 'angle'):
        v = getattr(opt, k)
        if v is not None:
            base = comps if isinstance(comps, dict) else {}
            comps = {k: v, 'count': base.get('count'), 'polarization': base.get('polarization', 1.0)}
            d['components'], where['components'] = comps, (f'--{k}', None)
    if opt.env_size is not None and isinstance(comps, dict):
        comps['count'] = opt.env_size
        d['components'], where['components'] = comps, ('--env-size', None)
    if opt.tol is not None:
        d['tolerances'] = opt.tol
    cfg = SweepConfig(**d)
    check_config(cfg, where, lines)
    return cfg


def _is_number(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def check_config(cfg, where, lines):
    def err(key, msg):
        source, line = where.get(key.split('.')[0], ('<config>', None))
        raise ConfigError(msg, source, lines.get(key, line) if not source.startswith('--') else None)

    if cfg.task not in TASKS:
        err('task', f'task {cfg.task!r} must be one of {TASKS}')
    if cfg.mode not in MODES:
        err('mode', f'mode {cfg.mode!r} must be one of {MODES}')
    if cfg.format not in ('csv', 'json'):
        err('format', f'format {cfg.format!r} must be csv or json')
    if cfg.threshold not in ('linear', 'entropic'):
        err('threshold', f'threshold {cfg.threshold!r} must be linear or entropic')
    if cfg.prefactor not in ('auto', 'pure', 'mixed'):
        err('prefactor', f'prefactor {cfg.prefactor!r} must be auto, pure or mixed')
    if cfg.p1 is not None and (not _is_number(cfg.p1) or not 0 <= cfg.p1 <= 1):
        err('p1', f'p1={cfg.p1} must lie in [0, 1]')
    if cfg.model is None:
        c = cfg.components
        if c and not isinstance(c, dict):
            err('components', f'components must be a mapping, got {type(c).__name__}')
        if not c:
            err('components', 'no environment: give components (or a model) in the config, or --gamma/--angle '
                              'with --env-size')
        kinds = [k for k in ('gamma', 'angle', 'gammas') if c.get(k) is not None]
        if len(kinds) != 1:
            err('components', f'components need exactly one of gamma, angle or gammas, got {kinds}')
        extra = set(c) - {'gamma', 'angle', 'gammas', 'count', 'polarization'}
        if extra:
            err(f'components.{sorted(extra)[0]}', f'unknown component key {sorted(extra)[0]!r}')
        if kinds == ['gammas'] and (not isinstance(c['gammas'], list) or not c['gammas']):
            err('components.gammas', f'components.gammas must be a nonempty list, got {c["gammas"]!r}')
        if kinds == ['angle'] and not _is_number(c['angle']):
            err('components.angle', f'angle {c["angle"]!r} must be a number (radians)')
        gammas = c['gammas'] if kinds == ['gammas'] else [c[kinds[0]]] if kinds == ['gamma'] else []
        if kinds != ['gammas'] and (not isinstance(c.get('count'), int) or c['count'] < 1):
            err('components.count', f'component count {c.get("count")} must be a positive integer')
        if any(not _is_number(g) or not 0 <= g <= 1 for g in gammas):
            err(f'components.{kinds[0]}', f'gamma values must lie in [0, 1], got {gammas}')
        r = c.get('polarization', 1.0)
        if not _is_number(r) or not 0 <= r <= 1:
            err('components.polarization', f'polarization {r!r} must be a number in [0, 1]')
    if cfg.fragment_sizes is not None:
        if not isinstance(cfg.fragment_sizes, list) or not cfg.fragment_sizes or \
                any(not isinstance(n, int) or n < 1 for n in cfg.fragment_sizes):
            err('fragment_sizes', f'fragment sizes must be positive integers, got {cfg.fragment_sizes}')
    if cfg.frag_max is not None and (not isinstance(cfg.frag_max, int) or cfg.frag_max < 1):
        err('frag_max', f'frag_max={cfg.frag_max} must be a positive integer')
    hi = 1.0 if cfg.threshold == 'linear' else 0.5
    if not isinstance(cfg.deltas, list) or not cfg.deltas or \
            any(not _is_number(x) or not 0 < x <= hi for x in cfg.deltas):
        err('deltas', f'deltas must lie in (0, {hi:g}] for {cfg.threshold} thresholds, got {cfg.deltas}')
    w = cfg.window
    if w is not None and (not isinstance(w, list) or len(w) != 2 or any(not isinstance(x, int) for x in w)
                          or w[0] > w[1] or w[0] < 1):
        err('window', f'window must read [first, last] with 1 <= first <= last, got {cfg.window}')
    if not isinstance(cfg.resolution, int) or cfg.resolution < 8:
        err('resolution', f'resolution {cfg.resolution} must be an integer >= 8')


def load_tolerances(tol):
    t = dict(TOLERANCES)
    if isinstance(tol, dict):
        t.update(tol)
    elif tol:
        d, _, source = load_yaml(tol)
        unknown = set(d) - set(TOLERANCES)
        if unknown:
            raise ConfigError(f'unknown tolerance {sorted(unknown)[0]!r}', source)
        t.update(d)
    return t


def build_model(cfg):
    if cfg.model is not None:
        return DecoherenceModel.from_config(cfg.model, p1=cfg.p1)
    c, pointer = cfg.components, PointerModel.binary(0.5 if cfg.p1 is None else cfg.p1)
    r = c.get('polarization', 1.0)
    if c.get('gammas') is not None:
        return DecoherenceModel(pointer, [gamma_component(g, r) for g in c['gammas']])
    comp = gamma_component(c['gamma'], r) if c.get('gamma') is not None else cmaybe_component(c['angle'], r)
    return DecoherenceModel.homogeneous(pointer, comp, c['count'])


def fragment_sizes(cfg, model):
    E = model.env_size
    sizes = sorted(set(cfg.fragment_sizes)) if cfg.fragment_sizes else list(range(1, (cfg.frag_max or min(E, 60)) + 1))
    if sizes[-1] > E:
        raise ConfigError(f'fragment size {sizes[-1]} exceeds environment size {E}', 'fragment_sizes')
    return sizes


def prefactor(cfg, model):
    kind = cfg.prefactor if cfg.prefactor != 'auto' else ('pure' if model.is_pure else 'mixed')
    return qcb_prefactor(model.pointer.probabilities[0], kind)


def _pmap(fn, items, desc):
    # Ordered parallel map with a progress bar
    with ThreadPool(NUM_THREADS) as pool:
        return list(tqdm(pool.imap(fn, items), total=len(items), desc=desc,
                         disable=not logger.isEnabledFor(logging.INFO) or not sys.stderr.isatty()))


def info_curve(cfg, model):
    """Information measures against fragment size, closed-form, numeric or oracle."""
    p1, HS = model.pointer.probabilities[0], model.pointer.missing_information
    sizes = fragment_sizes(cfg, model)
    G = np.cumprod(model.component_overlaps())[np.array(sizes) - 1]
    C = prefactor(cfg, model)
    rows = []
    if cfg.mode == 'closed-form':
        if not model.is_pure:
            raise ConfigError('closed forms need pure conditional states, use --mode numeric', 'mode')
        for n, g in zip(sizes, G):
            rows.append({'fragment_size': n, 'gamma_eff': g,
                         'holevo_pointer': holevo_pointer_closed_form(p1, g),
                         'accessible_info': accessible_info_closed_form(p1, g),
                         'qcb_info': qcb_info(HS, C, g),
                         'pe_helstrom': helstrom_error_pure_product(p1, g),
                         'pe_qcb': C * g,
                         'deficit_holevo': deficit('holevo', p1, g),
                         'deficit_accessible': deficit('accessible', p1, g),
                         'deficit_qcb': deficit('qcb', p1, g, C)})
        return pd.DataFrame(rows, columns=COLUMNS['info-curve'])

    if cfg.mode == 'numeric':
        dmax = int(np.prod([c.dim for c in model.components[:sizes[-1]]]))
        if dmax > NUMERIC_DIM_CAP:
            raise DomainError(f'fragment dimension {dmax} at #F={sizes[-1]} exceeds numeric cap {NUMERIC_DIM_CAP}')

        def point(n):
            b = branching_state(model, model.first(n))
            if model.pointer.D > 2:
                acc, pe = accessible_info_fano(HS, model.pointer.p, b.fragment_states())
                return holevo_pointer_numeric(b), acc, np.nan, pe, np.nan
            r1, r2 = b.fragment_states()[:2]
            pe = helstrom_error_numeric(p1, r1, r2)
            ch = qcb_error_bound(p1, b.pairs())
            return holevo_pointer_numeric(b), accessible_info_from_pe(HS, pe), \
                qcb_info_from_bound(HS, ch.pe_bound), pe, ch.pe_bound
    else:
        if model.env_size > ORACLE_MAX_ENV:
            raise DomainError(f'oracle mode simulates at most {ORACLE_MAX_ENV} components, got {model.env_size}')
        full = evolve_full(model)

        def point(n):
            pt = oracle_measures(full, model.first(n))
            return pt.holevo_pointer, pt.accessible_info, pt.qcb_info, pt.pe_helstrom, pt.pe_qcb

    for n, g, (chi, acc, qcb, pe, pq) in zip(sizes, G, _pmap(point, sizes, cfg.mode)):
        rows.append({'fragment_size': n, 'gamma_eff': g, 'holevo_pointer': chi, 'accessible_info': acc,
                     'qcb_info': qcb, 'pe_helstrom': pe, 'pe_qcb': pq, 'deficit_holevo': HS - chi,
                     'deficit_accessible': HS - acc, 'deficit_qcb': HS - qcb})
    return pd.DataFrame(rows, columns=COLUMNS['info-curve'])


def _effective_gamma_sq(g):
    # |gamma|^2 of a homogeneous environment, exp(-mean xi) of an inhomogeneous one, None if any overlap is 0
    if np.all(g == g[0]):
        return float(g[0])
    return float(np.exp(-mean_exponent(g))) if np.all(g > 0) else None


def redundancy(cfg, model):
    """Smallest fragment and redundancy per measure and delta, with the asymptotic estimate."""
    if not model.is_pure:
        raise ConfigError('redundancy uses the closed forms and needs pure conditional states', 'components')
    p1, HS, E = model.pointer.probabilities[0], model.pointer.missing_information, model.env_size
    g = model.component_overlaps()
    G = np.cumprod(g)
    C = prefactor(cfg, model)
    fns = {'holevo_pointer': lambda n: holevo_pointer_closed_form(p1, G[n - 1]),
           'accessible_info': lambda n: accessible_info_closed_form(p1, G[n - 1]),
           'qcb_info': lambda n: qcb_info(HS, C, G[n - 1])}
    gamma_sq = _effective_gamma_sq(g)
    rows = []
    for m in MEASURES:
        for delta in cfg.deltas:
            r = redundancy_result(m, fns[m], HS, delta, E, gamma_sq, cfg.threshold)
            rows.append({'measure': m, 'delta': delta, 'threshold_mode': cfg.threshold, 'f_delta': r.f_delta,
                         'r_delta': r.r_delta, 'r_asymptotic': r.r_asymptotic, 'relative_gap': r.relative_gap,
                         'status': r.status})
    return pd.DataFrame(rows, columns=COLUMNS['redundancy'])


def oracle_check(cfg, model, tol):
    """Compare full-simulation measures against the closed forms; returns (table, any check failed)."""
    if model.env_size > ORACLE_MAX_ENV:
        raise DomainError(f'oracle-check simulates at most {ORACLE_MAX_ENV} components, got {model.env_size}')
    if model.pointer.D != 2 or not model.is_pure:
        raise ConfigError('oracle-check compares against the binary pure-state closed forms', 'components')
    p1, E = model.pointer.probabilities[0], model.env_size
    g = model.component_overlaps()
    homogeneous = np.all(g == g[0])
    full = evolve_full(model)
    sizes = cfg.fragment_sizes or [n for n in (1, 2) if n <= E]
    rows = []

    def add(check, n, value, reference, tolerance, skip=None):
        d = abs(value - reference)
        status = skip or ('pass' if d <= tolerance else 'fail')
        rows.append({'check': check, 'fragment_size': n, 'env_size': E, 'value': value, 'reference': reference,
                     'discrepancy': d, 'tolerance': tolerance, 'status': status})

    prefix = colorstr('oracle: ')
    for n in sizes:
        if n > E:
            raise ConfigError(f'fragment size {n} exceeds environment size {E}', 'fragment_sizes')
        frag = model.first(n)
        G = float(np.prod(g[:n]))
        pt = oracle_measures(full, frag)
        residual = good_decoherence_residual(full, frag)
        no_rest = 'expected-fail (skipped)' if n == E else None  # nothing left to decohere the fragment
        logger.info(f'{prefix}#F={n} #E={E} residual={residual:.3g}')

        add('holevo_pointer', n, pt.holevo_pointer, holevo_pointer_closed_form(p1, G),
            max(tol['holevo_abs'], tol['holevo_residual_factor'] * residual), no_rest)
        add('helstrom_error', n, pt.pe_helstrom, helstrom_error_pure_product(p1, G), tol['helstrom_abs'])
        acc = pt.accessible_info
        if n == 1 and full.factor_dims[1] == 2:
            acc = grid_accessible_lower_bound(full, frag, cfg.resolution)
            add('grid_accessible', n, acc, accessible_info_closed_form(p1, G), tol['grid_abs'])
        chain = [pt.qmi, pt.holevo_pointer, acc, pt.qcb_info]
        add('ordering', n, max(0.0, max(b - a for a, b in zip(chain, chain[1:]))), 0.0, tol['ordering_slack'])

        if no_rest or E - n < 2 or not homogeneous:
            skip = no_rest or 'skipped'
            add('residual_ratio', n, np.nan, np.nan, tol['residual_ratio_abs'], skip)
            add('qmi_convergence', n, np.nan, np.nan, tol['ordering_slack'], skip)
            continue
        envs = list(range(n + 1, E + 1))
        fulls = [evolve_full(model, components=e) for e in envs]
        res = np.array([good_decoherence_residual(f, frag) for f in fulls])
        ratio = 0.0 if res.min() == 0 else float(np.exp(np.polyfit(envs, np.log(res), 1)[0]))
        add('residual_ratio', n, ratio, float(np.sqrt(g[0])), tol['residual_ratio_abs'])
        chi = holevo_pointer_closed_form(p1, G)
        gaps = np.array([abs(oracle_measures(f, frag).qmi - chi) for f in fulls])
        add('qmi_convergence', n, float(max(0.0, np.diff(gaps).max())), 0.0, tol['ordering_slack'])

    df = pd.DataFrame(rows, columns=COLUMNS['oracle-check'])
    return df, bool((df['status'] == 'fail').any())


def fit_exponent(cfg, model):
    """Fitted decay exponents of the three deficits against the analytic one."""
    if not model.is_pure:
        raise ConfigError('exponent fits use the closed forms and need pure conditional states', 'components')
    p1, HS, E = model.pointer.probabilities[0], model.pointer.missing_information, model.env_size
    g = model.component_overlaps()
    F = np.arange(1, E + 1)
    G = np.cumprod(g)
    if cfg.window is not None:
        lo, hi = cfg.window
        if hi > E:
            raise ConfigError(f'window end {hi} exceeds environment size {E}', 'window')
        Gw = G[lo - 1:hi]
        if Gw.max() > FIT_WINDOW[1] or Gw.min() < SWITCHOVER_GAMMA:
            logger.warning(f'WARNING: window {cfg.window} spans Gamma in [{Gw.min():.3g}, {Gw.max():.3g}], '
                           f'outside [{SWITCHOVER_GAMMA:g}, {FIT_WINDOW[1]:g}] where the leading-order decay holds')
    else:
        lo, hi = auto_window(F, G)
    F, G = F[:hi], G[:hi]
    xi = mean_exponent(g[lo - 1:hi])
    C = prefactor(cfg, model)
    rows = []
    names = ['synthetic'] if cfg.synthetic else list(MEASURES)
    for m in names:
        d = np.exp(-xi * F) if m == 'synthetic' else deficit(DEFICITS[m], p1, G, C if m == 'qcb_info' else None)
        curve = InfoCurve(F, HS - d, d, m, G)
        x0 = decay_exponent_fit(curve, HS, (lo, hi))
        x1 = decay_exponent_fit(curve, HS, (lo, hi), prefactor='log')
        rows.append({'measure': m, 'window_first': lo, 'window_last': hi, 'xi_fit': x0, 'xi_fit_log_prefactor': x1,
                     'xi_analytic': xi, 'abs_diff': abs(x0 - xi), 'abs_diff_log_prefactor': abs(x1 - xi)})
        logger.info(f'{m}: xi = {x1:.6f} nats = {x1 / np.log(2):.6f} bits per component (analytic {xi:.6f} nats)')
    return pd.DataFrame(rows, columns=COLUMNS['fit-exponent'])


def save_table(df, cfg, path):
    # CSV with a .meta.yaml sidecar, or JSON with embedded metadata; floats at 12 significant digits
    d = asdict(cfg)
    meta = {'task': cfg.task, 'config_hash': config_hash(d), 'config': d}
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if cfg.format == 'csv':
        df.to_csv(path, index=False, float_format='%.12g')
        with open(path.with_suffix('.meta.yaml'), 'w') as f:
            yaml.safe_dump(meta, f, sort_keys=False)
    else:
        cols = {c: [round_sig(v) if v is not None else None for v in df[c].tolist()] for c in df.columns}
        with open(path, 'w') as f:
            json.dump({'metadata': meta, 'columns': cols}, f, indent=1)
    return path


def run(cfg):
    """Run one task on a resolved config; returns (table, failed)."""
    model = build_model(cfg)
    model.info()
    if model.pointer.D != 2 and (cfg.task != 'info-curve' or cfg.mode == 'closed-form'):
        raise ConfigError(f'{cfg.task} ({cfg.mode}) needs a binary pointer, the model has D={model.pointer.D}; '
                          f'info-curve in numeric or oracle mode handles D > 2', 'model')
    if cfg.task == 'info-curve':
        return info_curve(cfg, model), False
    if cfg.task == 'redundancy':
        return redundancy(cfg, model), False
    if cfg.task == 'oracle-check':
        return oracle_check(cfg, model, load_tolerances(cfg.tolerances))
    return fit_exponent(cfg, model), False


def main(opt):
    set_logging(not opt.quiet)
    try:
        cfg = resolve_config(opt)
        df, failed = run(cfg)
        if cfg.output:
            path = Path(cfg.output)
        else:
            save_dir = Path(increment_path(Path(opt.project) / cfg.task / opt.name, exist_ok=opt.exist_ok))
            path = save_dir / f'{cfg.task}.{cfg.format}'
        save_table(df, cfg, path)
        logger.info(df.to_string(index=False))
        logger.info(f"Results saved to {colorstr('bold', path)}")
    except (NumericalError, np.linalg.LinAlgError) as e:
        logger.error(f"{colorstr('red', 'bold', 'numerical failure:')} {e}")
        return 2
    except (ConfigError, DomainError, InsufficientEnvironmentError) as e:
        logger.error(f"{colorstr('red', 'bold', 'error:')} {e}")
        return 1
    if failed:
        logger.error(f"{colorstr('red', 'bold', 'oracle:')} {int((df['status'] == 'fail').sum())} check(s) failed")
        return 2
    return 0


class ArgumentParser(argparse.ArgumentParser):
    # Flag errors are configuration errors: exit 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f'{self.prog}: error: {message}\n')


def parse_opt(args=None):
    parser = ArgumentParser(prog='sweep.py')
    parser.add_argument('--task', default=None, choices=TASKS, help='task to run')
    parser.add_argument('--cfg', type=str, default='', help='sweep *.yaml or *.json path, - for stdin')
    parser.add_argument('--model', type=str, default=None, help='model.yaml path instead of inline components')
    parser.add_argument('--p1', type=float, default=None, help='probability of the first pointer value')
    parser.add_argument('--gamma', type=float, default=None, help='homogeneous decoherence factor |gamma|')
    parser.add_argument('--angle', type=float, default=None, help='homogeneous c-maybe angle a (radians)')
    parser.add_argument('--env-size', type=int, default=None, help='number of environment components')
    parser.add_argument('--frag-max', type=int, default=None, help='sweep fragment sizes 1..frag-max')
    parser.add_argument('--delta', dest='deltas', nargs='+', type=float, default=None, help='information deficits')
    parser.add_argument('--threshold', default=None, choices=('linear', 'entropic'), help='redundancy threshold')
    parser.add_argument('--mode', default=None, choices=MODES, help='closed-form, numeric or oracle')
    parser.add_argument('--prefactor', default=None, choices=('auto', 'pure', 'mixed'), help='QCB prefactor')
    parser.add_argument('--window', nargs=2, type=int, default=None, help='fit window [first, last] fragment sizes')
    parser.add_argument('--resolution', type=int, default=None, help='grid points per Bloch angle')
    parser.add_argument('--synthetic', action='store_true', help='fit a pure exponential instead of the deficits')
    parser.add_argument('--tol', type=str, default=None, help='oracle tolerances.yaml path')
    parser.add_argument('--format', default=None, choices=('csv', 'json'), help='output format')
    parser.add_argument('--output', type=str, default=None, help='output file, default project/task/name')
    parser.add_argument('--project', default='runs', help='save to project/task/name')
    parser.add_argument('--name', default='exp', help='save to project/task/name')
    parser.add_argument('--exist-ok', action='store_true', help='existing project/name ok, do not increment')
    parser.add_argument('--quiet', action='store_true', help='warnings and errors only')
    return parser.parse_args(args)


if __name__ == '__main__':
    sys.exit(main(parse_opt()))
