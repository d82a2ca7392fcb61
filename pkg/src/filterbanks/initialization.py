#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Initialization Schemes
ค่าเริ่มต้นของพารามิเตอร์ (ini-Haar, ini-DB2/3/4, ini-Zeros, random) และ preset ที่มีชื่อ

Features:
- Bundled orthogonal lowpass tables (Haar, DB2, DB3, DB4)
- Scheme -> parameter record for every family
- Family dispatch for synthesis
- Named presets covering the standard 2/4/6/8-tap and 1..8 step configurations
"""

import logging
import math
from functools import lru_cache
from pathlib import Path
from typing import Dict, Optional, Union

import yaml

from ..utils.rng import DEFAULT_SEED, Xorshift64Star
from .banks import Family, FilterBank
from .biorth_lattice import BiorthLatticeParams, synth_biorth
from .errors import InvalidParameterError
from .fir_poly import FirFilter
from .lifting import MAX_RECOMMENDED_STEPS, LiftingParams, check_step_count, synth_lifting
from .orth_lattice import OrthLatticeParams, factor_orth, synth_orth

logger = logging.getLogger(__name__)

WAVELET_TABLE_PATH = Path(__file__).parent / 'data' / 'orthogonal_wavelets.yaml'
# Bundled tables are given to ~16 digits; factoring them is checked at this level.
TABLE_TOLERANCE = 1e-8

FAMILY_ALIASES: Dict[str, Family] = {
    'orth': Family.ORTHOGONAL,
    'orthogonal': Family.ORTHOGONAL,
    'biorth': Family.BIORTHOGONAL_LATTICE,
    'biorthogonal': Family.BIORTHOGONAL_LATTICE,
    'biorthogonal-lattice': Family.BIORTHOGONAL_LATTICE,
    'lifting': Family.LIFTING,
}

SCHEMES: Dict[Family, tuple] = {
    Family.ORTHOGONAL: ('haar', 'db2', 'db3', 'db4', 'random'),
    Family.BIORTHOGONAL_LATTICE: ('zeros', 'random'),
    Family.LIFTING: ('zeros', 'random'),
}

ParamsType = Union[OrthLatticeParams, BiorthLatticeParams, LiftingParams]


def resolve_family(family: Union[str, Family]) -> Family:
    if isinstance(family, Family):
        return family
    try:
        return FAMILY_ALIASES[str(family).lower()]
    except KeyError:
        raise InvalidParameterError(f"unknown family: {family}") from None


@lru_cache(maxsize=None)
def _wavelet_tables() -> Dict[str, tuple]:
    with open(WAVELET_TABLE_PATH, 'r', encoding='utf-8') as handle:
        raw = yaml.safe_load(handle) or {}
    return {name: tuple(float(t) for t in entry['taps']) for name, entry in raw.items()}


def load_wavelet_table(name: str) -> FirFilter:
    """Bundled analysis lowpass taps for haar / db2 / db3 / db4"""
    tables = _wavelet_tables()
    key = name.lower()
    if key not in tables:
        raise InvalidParameterError(f"unknown wavelet table: {name} "
                                    f"(available: {', '.join(sorted(tables))})")
    return FirFilter.from_dense(tables[key])


def _table_stages(name: str) -> int:
    return len(_wavelet_tables()[name]) // 2


def init_params(family: Union[str, Family], scheme: str, size: Optional[int] = None,
                seed: int = DEFAULT_SEED,
                max_recommended_steps: int = MAX_RECOMMENDED_STEPS) -> ParamsType:
    """
    สร้าง parameter record จาก initialization scheme

    ``size`` is the number of parameters (K+1 angles, N lattice coefficients or
    N lifting steps).  Table schemes fix their own size.  Lifting cascades longer
    than ``max_recommended_steps`` are logged.
    """
    family = resolve_family(family)
    scheme = scheme.lower()
    if scheme not in SCHEMES[family]:
        raise InvalidParameterError(f"initialization '{scheme}' is not available for "
                                    f"family '{family.value}' (choose from {', '.join(SCHEMES[family])})")
    if size is not None and size < 1:
        raise InvalidParameterError(f"size must be >= 1, got {size}")

    if family is Family.ORTHOGONAL and scheme != 'random':
        stages = _table_stages(scheme)
        if size is not None and size != stages:
            raise InvalidParameterError(f"'{scheme}' initialization has {stages} stage(s), not {size}")
        params = factor_orth(load_wavelet_table(scheme), tol=TABLE_TOLERANCE)
        logger.debug(f"ini-{scheme}: angles {params.angles}")
        return params

    size = size or 1
    if scheme == 'zeros':
        values = [0.0] * size
    else:
        rng = Xorshift64Star(seed)
        if family is Family.ORTHOGONAL:
            # (-pi, pi]
            values = [math.pi - 2.0 * math.pi * rng.random() for _ in range(size)]
        elif family is Family.BIORTHOGONAL_LATTICE:
            values = rng.uniform_list(size, -0.5, 0.5)
        else:
            values = rng.uniform_list(size, -1.0, 1.0)

    return params_from_values(family, values, max_recommended_steps=max_recommended_steps)


def params_from_values(family: Union[str, Family], values, base: str = 'haar',
                       max_recommended_steps: int = MAX_RECOMMENDED_STEPS) -> ParamsType:
    """Explicit parameter vector -> parameter record"""
    family = resolve_family(family)
    if family is Family.ORTHOGONAL:
        return OrthLatticeParams(tuple(values))
    if family is Family.BIORTHOGONAL_LATTICE:
        return BiorthLatticeParams(tuple(values))
    params = LiftingParams(tuple(values), base)
    check_step_count(params.num_steps, max_recommended_steps)
    return params


def synthesize(params: ParamsType) -> FilterBank:
    """เลือก synthesis ตาม family ของ parameter record"""
    if isinstance(params, OrthLatticeParams):
        return synth_orth(params)
    if isinstance(params, BiorthLatticeParams):
        return synth_biorth(params)
    if isinstance(params, LiftingParams):
        return synth_lifting(params)
    raise InvalidParameterError(f"unsupported parameter record: {type(params).__name__}")


def _preset_table() -> Dict[str, tuple]:
    presets = {
        'orth-2tap-haar': (Family.ORTHOGONAL, 'haar', None),
        'orth-4tap-db2': (Family.ORTHOGONAL, 'db2', None),
        'orth-6tap-db3': (Family.ORTHOGONAL, 'db3', None),
        'orth-8tap-db4': (Family.ORTHOGONAL, 'db4', None),
    }
    for stages in range(1, 5):
        presets[f'biorth-{2 * stages}tap-zeros'] = (Family.BIORTHOGONAL_LATTICE, 'zeros', stages)
    for steps in range(1, 9):
        presets[f'lifting-{steps}step-zeros'] = (Family.LIFTING, 'zeros', steps)
    return presets


PRESETS = _preset_table()


def preset(name: str) -> FilterBank:
    try:
        family, scheme, size = PRESETS[name.lower()]
    except KeyError:
        raise InvalidParameterError(f"unknown preset: {name}") from None
    return synthesize(init_params(family, scheme, size))
