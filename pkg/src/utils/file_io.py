#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - File Formats
อ่าน/เขียนไฟล์ของ command line

Formats:
- filter spec documents: YAML, floats with 17 significant digits (lossless float64)
- input images: plain PGM (P2), samples mapped to [0, 1]
- planes and subbands: raw little-endian float64 with a YAML sidecar manifest
- frequency / trace tables: CSV written with pandas

Every writer goes through a temp file in the target directory plus os.replace,
so readers never see a half-written file.
"""

import logging
import math
import os
import tempfile
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Union

import numpy as np
import pandas as pd
import yaml

from ..filterbanks.banks import Family, FilterBank
from ..filterbanks.errors import FileFormatError, FilterBankError
from ..filterbanks.initialization import params_from_values, resolve_family, synthesize
from .version import get_version_string

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

RAW_FORMAT = 'raw-float64-le'
DOCUMENT_KIND = 'filter-spec'
MANIFEST_SUFFIX = '.yaml'
SUBBAND_FILES = {'ll': 'll.f64', 'hl': 'hl.f64', 'lh': 'lh.f64', 'hh': 'hh.f64'}
SUBBAND_MANIFEST = 'manifest.yaml'


# ---------------------------------------------------------------------------
# YAML with lossless floats
# ---------------------------------------------------------------------------

class SpecDumper(yaml.SafeDumper):
    """SafeDumper that writes every float with 17 significant digits"""


def _represent_float(dumper: yaml.SafeDumper, value: float) -> yaml.ScalarNode:
    if math.isnan(value):
        text = '.nan'
    elif math.isinf(value):
        text = '.inf' if value > 0 else '-.inf'
    else:
        text = '%.17g' % value
        # YAML 1.1 floats need a '.'
        if '.' not in text:
            if 'e' in text:
                mantissa, exponent = text.split('e')
                text = f"{mantissa}.0e{exponent}"
            else:
                text += '.0'
    return dumper.represent_scalar('tag:yaml.org,2002:float', text)


SpecDumper.add_representer(float, _represent_float)


def dump_yaml(data: Any) -> str:
    return yaml.dump(data, Dumper=SpecDumper, sort_keys=False, default_flow_style=None,
                     allow_unicode=True, width=100)


def load_yaml(path: PathLike) -> Any:
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            return yaml.safe_load(handle)
    except OSError as e:
        raise FileFormatError(f"cannot read {path}: {e}") from e
    except yaml.YAMLError as e:
        raise FileFormatError(f"malformed YAML in {path}: {e}") from e


# ---------------------------------------------------------------------------
# atomic writes
# ---------------------------------------------------------------------------

@contextmanager
def atomic_open(path: PathLike, mode: str = 'w') -> Iterator[Any]:
    """Write to a sibling temp file and rename it over ``path`` on success"""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path('.')
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f'.{path.name}.', suffix='.tmp', dir=directory)
    try:
        if 'b' in mode:
            handle = os.fdopen(fd, mode)
        else:
            handle = os.fdopen(fd, mode, encoding='utf-8', newline='')
        with handle:
            yield handle
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def write_text(path: PathLike, text: str):
    with atomic_open(path, 'w') as handle:
        handle.write(text)


def write_yaml(path: PathLike, data: Any):
    write_text(path, dump_yaml(data))


# ---------------------------------------------------------------------------
# filter spec documents
# ---------------------------------------------------------------------------

def _floats(values: Sequence[float]) -> List[float]:
    return [float(v) for v in values]


def bank_metadata(bank: FilterBank) -> Dict[str, Any]:
    """Derived quantities recorded alongside the taps"""
    if bank.determinant is None:
        return {}
    # reported, not absorbed into the analysis filters
    return {'determinant': float(bank.determinant)}


@dataclass
class FilterSpecDocument:
    """Family, parameter vector, derived taps and provenance of one filter bank"""
    family: Family
    params: List[float]
    h0: List[float]
    h1: List[float]
    f0: List[float]
    f1: List[float]
    gain: float
    delay: int
    base: Optional[str] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_bank(cls, bank: FilterBank, seed: Optional[int] = None,
                  init: Optional[str] = None, **extra) -> 'FilterSpecDocument':
        h0, h1 = bank.analysis_taps()
        f0, f1 = bank.synthesis_taps()
        metadata = {'tool': get_version_string(), 'seed': seed, 'init': init}
        metadata.update(bank_metadata(bank))
        metadata.update(extra)
        return cls(family=bank.family, params=_floats(bank.params.values),
                   h0=_floats(h0), h1=_floats(h1), f0=_floats(f0), f1=_floats(f1),
                   gain=float(bank.gain), delay=int(bank.delay),
                   base=getattr(bank.params, 'base', None), metadata=metadata)

    def params_record(self):
        if self.family is Family.LIFTING:
            return params_from_values(self.family, self.params, self.base or 'haar')
        return params_from_values(self.family, self.params)

    def resynthesize(self) -> FilterBank:
        return synthesize(self.params_record())

    def stored_taps(self) -> Dict[str, np.ndarray]:
        return {name: np.asarray(getattr(self, name), dtype=np.float64)
                for name in ('h0', 'h1', 'f0', 'f1')}

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'kind': DOCUMENT_KIND,
            'family': self.family.value,
            'params': _floats(self.params),
        }
        if self.base is not None:
            data['base'] = self.base
        data['taps'] = {name: _floats(getattr(self, name)) for name in ('h0', 'h1', 'f0', 'f1')}
        data['gain'] = float(self.gain)
        data['delay'] = int(self.delay)
        data['metadata'] = dict(self.metadata)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'FilterSpecDocument':
        if not isinstance(data, dict) or data.get('kind') != DOCUMENT_KIND:
            raise FileFormatError("not a filter spec document")
        try:
            taps = data['taps']
            return cls(family=resolve_family(data['family']),
                       params=_floats(data['params']),
                       h0=_floats(taps['h0']), h1=_floats(taps['h1']),
                       f0=_floats(taps['f0']), f1=_floats(taps['f1']),
                       gain=float(data['gain']), delay=int(data['delay']),
                       base=data.get('base'), metadata=dict(data.get('metadata') or {}))
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, FilterBankError):
                raise FileFormatError(str(e)) from e
            raise FileFormatError(f"malformed filter spec document: {e!r}") from e


def write_spec(path: PathLike, document: FilterSpecDocument):
    write_yaml(path, document.to_dict())
    logger.debug(f"Spec document written: {path}")


def read_spec(path: PathLike) -> FilterSpecDocument:
    return FilterSpecDocument.from_dict(load_yaml(path))


# ---------------------------------------------------------------------------
# images and raw planes
# ---------------------------------------------------------------------------

def _check_dimensions(height: int, width: int, max_pixels: Optional[int], source: PathLike):
    if height <= 0 or width <= 0:
        raise FileFormatError(f"{source}: zero dimension ({height} x {width})")
    if max_pixels is not None and height * width > max_pixels:
        raise FileFormatError(f"{source}: {height} x {width} exceeds the {max_pixels} pixel limit")


def read_pgm(path: PathLike, max_pixels: Optional[int] = None) -> np.ndarray:
    """Plain (P2) graymap -> float64 plane in [0, 1]"""
    try:
        with open(path, 'r', encoding='ascii') as handle:
            text = handle.read()
    except (OSError, UnicodeDecodeError) as e:
        raise FileFormatError(f"cannot read {path}: {e}") from e

    tokens = [token for line in text.splitlines()
              for token in line.split('#', 1)[0].split()]
    if not tokens or tokens[0] != 'P2':
        raise FileFormatError(f"{path}: not a plain PGM (P2) file")
    try:
        width, height, maxval = (int(t) for t in tokens[1:4])
    except ValueError as e:
        raise FileFormatError(f"{path}: malformed PGM header") from e
    _check_dimensions(height, width, max_pixels, path)
    if not 0 < maxval < 65536:
        raise FileFormatError(f"{path}: invalid maxval {maxval}")

    samples = tokens[4:]
    if len(samples) != width * height:
        raise FileFormatError(f"{path}: expected {width * height} samples, found {len(samples)}")
    try:
        data = np.array([int(s) for s in samples], dtype=np.float64).reshape(height, width)
    except ValueError as e:
        raise FileFormatError(f"{path}: non-integer sample") from e
    if np.any(data < 0) or np.any(data > maxval):
        raise FileFormatError(f"{path}: sample outside [0, {maxval}]")
    return data / maxval


def write_pgm(path: PathLike, plane: np.ndarray, maxval: int = 255):
    """[0, 1] plane -> plain PGM (values clipped and rounded)"""
    plane = np.asarray(plane, dtype=np.float64)
    levels = np.clip(np.rint(plane * maxval), 0, maxval).astype(int)
    lines = ['P2', f'{plane.shape[1]} {plane.shape[0]}', str(maxval)]
    lines += [' '.join(str(v) for v in row) for row in levels]
    write_text(path, '\n'.join(lines) + '\n')


def write_raw(path: PathLike, plane: np.ndarray):
    with atomic_open(path, 'wb') as handle:
        handle.write(np.ascontiguousarray(plane, dtype='<f8').tobytes())


def read_raw(path: PathLike, height: int, width: int) -> np.ndarray:
    try:
        data = np.fromfile(str(path), dtype='<f8')
    except OSError as e:
        raise FileFormatError(f"cannot read {path}: {e}") from e
    if data.size != height * width:
        raise FileFormatError(f"{path}: expected {height * width} samples, found {data.size}")
    return data.astype(np.float64).reshape(height, width)


def write_plane(path: PathLike, plane: np.ndarray, **metadata):
    """Raw float64 plane plus ``<path>.yaml`` manifest"""
    plane = np.asarray(plane, dtype=np.float64)
    write_raw(path, plane)
    manifest = {'format': RAW_FORMAT, 'height': int(plane.shape[0]), 'width': int(plane.shape[1]),
                'file': Path(path).name}
    manifest.update(metadata)
    write_yaml(str(path) + MANIFEST_SUFFIX, manifest)


def _manifest_shape(manifest: Any, source: PathLike) -> tuple:
    if not isinstance(manifest, dict) or manifest.get('format') != RAW_FORMAT:
        raise FileFormatError(f"{source}: not a {RAW_FORMAT} manifest")
    try:
        return int(manifest['height']), int(manifest['width'])
    except (KeyError, TypeError, ValueError) as e:
        raise FileFormatError(f"{source}: manifest lacks dimensions") from e


def read_plane(path: PathLike, max_pixels: Optional[int] = None) -> np.ndarray:
    manifest_path = str(path) + MANIFEST_SUFFIX
    height, width = _manifest_shape(load_yaml(manifest_path), manifest_path)
    _check_dimensions(height, width, max_pixels, path)
    return read_raw(path, height, width)


def read_image(path: PathLike, max_pixels: Optional[int] = None) -> np.ndarray:
    """PGM image, or a raw plane that has a sidecar manifest"""
    if os.path.exists(str(path) + MANIFEST_SUFFIX):
        return read_plane(path, max_pixels)
    return read_pgm(path, max_pixels)


def write_subbands(directory: PathLike, bands: Dict[str, np.ndarray],
                   original_shape: Sequence[int], **metadata):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, filename in SUBBAND_FILES.items():
        write_raw(directory / filename, bands[name])
    height, width = np.shape(bands['ll'])
    manifest = {'format': RAW_FORMAT, 'height': int(height), 'width': int(width),
                'original_shape': [int(n) for n in original_shape],
                'files': dict(SUBBAND_FILES)}
    manifest.update(metadata)
    write_yaml(directory / SUBBAND_MANIFEST, manifest)


def read_subbands(directory: PathLike) -> Dict[str, Any]:
    """{'bands': {name: array}, 'original_shape': (h, w)} from an analyze output directory"""
    directory = Path(directory)
    manifest_path = directory / SUBBAND_MANIFEST
    manifest = load_yaml(manifest_path)
    height, width = _manifest_shape(manifest, manifest_path)
    try:
        files = manifest['files']
        original_shape = tuple(int(n) for n in manifest['original_shape'])
        bands = {name: read_raw(directory / files[name], height, width) for name in SUBBAND_FILES}
    except (KeyError, TypeError, ValueError) as e:
        raise FileFormatError(f"{manifest_path}: incomplete subband manifest ({e})") from e
    return {'bands': bands, 'original_shape': original_shape}


# ---------------------------------------------------------------------------
# CSV tables (pandas)
# ---------------------------------------------------------------------------

def write_table(path: PathLike, table: pd.DataFrame):
    with atomic_open(path, 'w') as handle:
        table.to_csv(handle, index=False, float_format='%.17g')


def frequency_table(omegas: np.ndarray, mag_h0: np.ndarray, mag_h1: np.ndarray) -> pd.DataFrame:
    return pd.DataFrame({'omega': omegas, 'mag_h0': mag_h0, 'mag_h1': mag_h1})


def trace_table(trace: Sequence[float]) -> pd.DataFrame:
    return pd.DataFrame({'iteration': np.arange(len(trace)), 'objective': np.asarray(trace, dtype=np.float64)})


def read_table(path: PathLike) -> pd.DataFrame:
    try:
        return pd.read_csv(path)
    except (OSError, pd.errors.ParserError) as e:
        raise FileFormatError(f"cannot read table {path}: {e}") from e
