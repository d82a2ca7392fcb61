#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Command Line
คำสั่ง synth | verify | analyze | reconstruct | fuse | tune | freqz

Exit status: 0 success, 1 check failure / divergence / unreadable input, 2 usage error.
"""

import argparse
import sys
from typing import List, Optional

import numpy as np

from ..filterbanks.errors import (DivergenceError, FileFormatError, FilterBankError,
                                  InvalidParameterError)
from ..filterbanks.fir_poly import FirFilter, dtft, frequency_grid
from ..filterbanks.initialization import init_params, params_from_values, synthesize
from ..filterbanks.lifting import MAX_RECOMMENDED_STEPS, LiftingParams
from ..fusion.attention import AttentionHeadParams, uwu_downsample
from ..transform.dwt import SubbandSet, analyze_2d, synthesize_2d
from ..tuning.grad_tune import LL_COMPACTION, OBJECTIVES, tune
from ..utils.config_manager import ConfigManager
from ..utils.file_io import (FilterSpecDocument, bank_metadata, dump_yaml, frequency_table,
                             load_yaml, read_image, read_spec, read_subbands, trace_table,
                             write_plane, write_spec, write_subbands, write_table)
from ..utils.logger import PerformanceTimer, UwuLogger, setup_logger
from ..utils.rng import DEFAULT_SEED
from ..utils.version import get_version_string
from ..verification.bank_verifier import BankVerifier

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

FAMILIES = ('orth', 'biorth', 'lifting')
INITS = ('haar', 'db2', 'db3', 'db4', 'zeros', 'random')
DEFAULT_INIT = {'orth': 'haar', 'biorth': 'zeros', 'lifting': 'zeros'}
LOGGER_NAME = __name__.split('.')[0]


class UsageError(Exception):
    """Invalid combination of command-line arguments"""


def _parse_values(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise UsageError(f"--values must be comma-separated numbers, got '{text}'") from None


def _max_pixels(config: ConfigManager) -> int:
    return int(config.get('cli.max_pixels', 4096 * 4096))


def _load_bank(path: str) -> tuple:
    document = read_spec(path)
    try:
        return document, document.resynthesize()
    except FilterBankError as e:
        raise FileFormatError(f"{path}: cannot synthesize stored parameters ({e})") from e


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_synth(args, config: ConfigManager, logger: UwuLogger) -> int:
    """สร้าง filter bank และเขียน spec document"""
    if args.values is not None and args.init is not None:
        raise UsageError("--values and --init are mutually exclusive")

    seed = config.get('cli.seed', DEFAULT_SEED) if args.seed is None else args.seed
    max_steps = config.get('lifting.max_recommended_steps', MAX_RECOMMENDED_STEPS)
    try:
        if args.values is not None:
            values = _parse_values(args.values)
            if args.steps is not None and args.steps != len(values):
                raise UsageError(f"--steps {args.steps} does not match {len(values)} value(s)")
            params = params_from_values(args.family, values, args.base, max_recommended_steps=max_steps)
            init = 'values'
        else:
            init = args.init or DEFAULT_INIT[args.family]
            params = init_params(args.family, init, args.steps, seed, max_recommended_steps=max_steps)
            if args.family == 'lifting' and args.base != 'haar':
                params = LiftingParams(params.values, args.base)
    except InvalidParameterError as e:
        raise UsageError(str(e)) from e

    bank = synthesize(params)
    document = FilterSpecDocument.from_bank(bank, seed=seed, init=init)
    if args.out:
        write_spec(args.out, document)
        logger.info(f"Spec written: {args.out}")
        print(f"✅ {bank.family.value} bank with {len(params.values)} parameter(s) written to {args.out}")
    else:
        sys.stdout.write(dump_yaml(document.to_dict()))
    return EXIT_OK


def cmd_verify(args, config: ConfigManager, logger: UwuLogger) -> int:
    """ตรวจสอบ spec document"""
    document = read_spec(args.spec)
    settings = dict(config.get_section('verify'))
    if args.tol is not None:
        settings['pr_tolerance'] = args.tol
    verifier = BankVerifier(settings)

    seed = config.get('cli.seed', DEFAULT_SEED) if args.seed is None else args.seed
    result = verifier.run_checks(document, seed=seed)
    for metric in result.metrics:
        logger.log_check(metric.name, metric.value, metric.threshold, metric.passed)
    print(verifier.generate_report(result))
    return EXIT_OK if result.passed else EXIT_FAILURE


def cmd_analyze(args, config: ConfigManager, logger: UwuLogger) -> int:
    """แยก image เป็น subband LL/HL/LH/HH"""
    _, bank = _load_bank(args.spec)
    image = read_image(args.image, _max_pixels(config))
    with PerformanceTimer(logger, 'analyze'):
        subbands = analyze_2d(image, bank)
    write_subbands(args.out_dir, subbands.as_dict(), subbands.original_shape,
                   family=bank.family.value)
    print(f"✅ Subbands {subbands.shape[0]}x{subbands.shape[1]} written to {args.out_dir}")
    return EXIT_OK


def cmd_reconstruct(args, config: ConfigManager, logger: UwuLogger) -> int:
    """สร้าง plane กลับจาก subband"""
    _, bank = _load_bank(args.spec)
    stored = read_subbands(args.subband_dir)
    try:
        subbands = SubbandSet(original_shape=stored['original_shape'], **stored['bands'])
    except FilterBankError as e:
        raise FileFormatError(f"{args.subband_dir}: {e}") from e
    plane = synthesize_2d(subbands, bank)
    write_plane(args.out, plane.data)
    print(f"✅ Plane {plane.height}x{plane.width} written to {args.out}")
    return EXIT_OK


def cmd_fuse(args, config: ConfigManager, logger: UwuLogger) -> int:
    """UwU downsampling: subband analysis + attention fusion"""
    _, bank = _load_bank(args.spec)
    image = read_image(args.image, _max_pixels(config))
    if args.head:
        try:
            head = AttentionHeadParams.from_dict(load_yaml(args.head) or {})
        except InvalidParameterError as e:
            raise FileFormatError(f"{args.head}: {e}") from e
    else:
        head = AttentionHeadParams.zeros()
    fused = uwu_downsample(image, bank, head)
    write_plane(args.out, fused.data)
    print(f"✅ Fused plane {fused.height}x{fused.width} written to {args.out}")
    return EXIT_OK


def cmd_tune(args, config: ConfigManager, logger: UwuLogger) -> int:
    """Tune พารามิเตอร์ด้วย gradient descent"""
    lr = config.get('tuning.lr', 0.1) if args.lr is None else args.lr
    iters = config.get('tuning.iters', 200) if args.iters is None else args.iters
    if iters < 1:
        raise UsageError("--iters must be >= 1")
    if lr < 0:
        raise UsageError("--lr must be >= 0")
    if args.objective == LL_COMPACTION and not args.image:
        raise UsageError("--objective ll-compaction requires --image")

    document, _ = _load_bank(args.spec)
    image = read_image(args.image, _max_pixels(config)) if args.image else None
    trace_path = args.trace or f"{args.out}.trace.csv"

    try:
        report = tune(document.params_record(), args.objective, lr=lr, iters=iters, image=image,
                      omega_s=config.get('tuning.omega_s'), num_samples=config.get('tuning.num_samples'),
                      clamp=config.get('tuning.clamp'), on_step=logger.log_tune_step)
    except DivergenceError as e:
        if e.report is not None:
            write_table(trace_path, trace_table(e.report.trace))
        logger.error(f"Tuning diverged: {e}")
        print(f"❌ {e}; partial trace written to {trace_path}")
        return EXIT_FAILURE

    bank = synthesize(report.params)
    tuned = FilterSpecDocument.from_bank(bank)
    tuned.metadata = {**document.metadata, **bank_metadata(bank)}
    write_spec(args.out, tuned)
    write_table(trace_path, trace_table(report.trace))
    print(f"✅ {args.objective}: {report.trace[0]:.12g} -> {report.objective:.12g} "
          f"after {report.iterations} iteration(s); spec written to {args.out}")
    return EXIT_OK


def cmd_freqz(args, config: ConfigManager, logger: UwuLogger) -> int:
    """ตาราง magnitude response ของ h0 และ h1"""
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    document = read_spec(args.spec)
    omegas = frequency_grid(args.samples)
    h0, h1 = FirFilter.from_dense(document.h0), FirFilter.from_dense(document.h1)
    table = frequency_table(omegas, np.abs(dtft(h0, omegas)), np.abs(dtft(h1, omegas)))
    write_table(args.out, table)
    print(f"✅ {args.samples} frequency samples written to {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=None,
                        help=f'Seed of the xorshift64* generator (default: {DEFAULT_SEED})')
    common.add_argument('--tol', type=float, default=None,
                        help='Override the reconstruction tolerance')

    parser = argparse.ArgumentParser(
        prog='uwu',
        description='Tunable Wavelet Units - tunable wavelet filter banks',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py synth orth --init db2 --out db2.yaml
  python main.py verify db2.yaml
  python main.py analyze image.pgm db2.yaml --out-dir subbands
  python main.py reconstruct subbands db2.yaml --out plane.f64
  python main.py tune db2.yaml --objective stopband-energy --out tuned.yaml
  python main.py freqz tuned.yaml --samples 512 --out freqz.csv
        """
    )
    parser.add_argument('--config', '-c', default='config/config.yaml',
                        help='Configuration file path (default: config/config.yaml)')
    parser.add_argument('--verbose', '-v', action='store_true', help='Enable verbose logging')
    parser.add_argument('--version', action='version', version=get_version_string())

    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    synth = sub.add_parser('synth', parents=[common], help='Synthesize a filter bank spec document')
    synth.add_argument('family', choices=FAMILIES)
    synth.add_argument('--init', choices=INITS, default=None,
                       help='Initialization scheme (default: haar for orth, zeros otherwise)')
    synth.add_argument('--values', default=None, help='Explicit comma-separated parameters')
    synth.add_argument('--steps', type=int, default=None,
                       help='Number of parameters: K+1 angles, N lattice stages or N lifting steps')
    synth.add_argument('--base', choices=('haar', 'bior1.1'), default='haar',
                       help='Lifting base wavelet (default: haar)')
    synth.add_argument('--out', '-o', default=None, help='Output spec path (default: stdout)')
    synth.set_defaults(handler=cmd_synth)

    verify = sub.add_parser('verify', parents=[common], help='Run the verification checks on a spec')
    verify.add_argument('spec')
    verify.set_defaults(handler=cmd_verify)

    analyze = sub.add_parser('analyze', parents=[common], help='Split an image into four subbands')
    analyze.add_argument('image')
    analyze.add_argument('spec')
    analyze.add_argument('--out-dir', required=True)
    analyze.set_defaults(handler=cmd_analyze)

    reconstruct = sub.add_parser('reconstruct', parents=[common],
                                 help='Rebuild a plane from an analyze output directory')
    reconstruct.add_argument('subband_dir')
    reconstruct.add_argument('spec')
    reconstruct.add_argument('--out', '-o', required=True)
    reconstruct.set_defaults(handler=cmd_reconstruct)

    fuse = sub.add_parser('fuse', parents=[common], help='UwU downsampling of an image')
    fuse.add_argument('image')
    fuse.add_argument('spec')
    fuse.add_argument('head', nargs='?', default=None,
                      help='Attention head YAML with weight (4x4) and bias (4); default uniform')
    fuse.add_argument('--out', '-o', required=True)
    fuse.set_defaults(handler=cmd_fuse)

    tune_parser = sub.add_parser('tune', parents=[common], help='Gradient-descent tuning')
    tune_parser.add_argument('spec')
    tune_parser.add_argument('--objective', choices=OBJECTIVES, default=OBJECTIVES[0])
    tune_parser.add_argument('--lr', type=float, default=None)
    tune_parser.add_argument('--iters', type=int, default=None)
    tune_parser.add_argument('--image', default=None, help='Image for the ll-compaction objective')
    tune_parser.add_argument('--out', '-o', required=True)
    tune_parser.add_argument('--trace', default=None,
                             help='Objective trace CSV (default: <out>.trace.csv)')
    tune_parser.set_defaults(handler=cmd_tune)

    freqz = sub.add_parser('freqz', parents=[common], help='Magnitude response table')
    freqz.add_argument('spec')
    freqz.add_argument('--samples', type=int, default=512)
    freqz.add_argument('--out', '-o', required=True)
    freqz.set_defaults(handler=cmd_freqz)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Command-line entry point; returns the exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    config = ConfigManager(args.config)
    settings = dict(config.config)
    settings['logging'] = dict(config.get_section('logging'))
    if args.verbose:
        settings['logging']['level'] = 'DEBUG'
    logger = setup_logger(LOGGER_NAME, settings)
    logger.set_level(settings['logging'].get('level') or 'INFO')

    validation = config.validate_config()
    if not validation['valid']:
        for error in validation['errors']:
            print(f"❌ Config error: {error}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return args.handler(args, config, logger)
    except UsageError as e:
        print(f"❌ Usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileFormatError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_FAILURE
    except FilterBankError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_FAILURE
    except KeyboardInterrupt:
        print("\n⚠️ Operation cancelled by user", file=sys.stderr)
        return EXIT_FAILURE
