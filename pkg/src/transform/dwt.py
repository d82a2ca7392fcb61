#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Two-Channel Transform
การแปลง wavelet หนึ่งระดับแบบ 1D และ 2D (separable) พร้อม downsample-by-2

Conventions:
- periodic (circular) boundaries, so every family reconstructs exactly
- downsampling keeps the even-indexed filter outputs
- odd lengths are padded by repeating the last sample/row/column; the original
  size is remembered and cropped after synthesis
- 2D: rows first (axis 1), then columns (axis 0); HL = highpass along rows,
  lowpass along columns
"""

import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple, Union

import numpy as np

from ..filterbanks.banks import FilterBank
from ..filterbanks.errors import TransformError
from ..filterbanks.fir_poly import FirFilter

logger = logging.getLogger(__name__)

SUBBAND_NAMES = ('ll', 'hl', 'lh', 'hh')


@dataclass(frozen=True)
class Plane:
    """2D array of finite real samples"""
    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=np.float64)
        if data.ndim != 2:
            raise TransformError(f"plane must be 2-dimensional, got shape {data.shape}")
        if data.size == 0:
            raise TransformError("empty plane")
        if not np.all(np.isfinite(data)):
            raise TransformError("plane samples must be finite")
        data.setflags(write=False)
        object.__setattr__(self, 'data', data)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape


@dataclass(frozen=True)
class SubbandSet:
    """
    LL / HL / LH / HH planes of one analysis step, each ceil(H/2) x ceil(W/2).

    ``original_shape`` is the (height, width) of the analyzed plane before padding.
    """
    ll: np.ndarray
    hl: np.ndarray
    lh: np.ndarray
    hh: np.ndarray
    original_shape: Tuple[int, int]

    def __post_init__(self):
        shapes = {np.shape(band) for band in self.bands()}
        if len(shapes) != 1:
            raise TransformError(f"subbands differ in size: {sorted(shapes)}")
        shape = shapes.pop()
        if len(shape) != 2:
            raise TransformError("subbands must be 2-dimensional")
        height, width = (int(n) for n in self.original_shape)
        if (height + 1) // 2 != shape[0] or (width + 1) // 2 != shape[1]:
            raise TransformError(f"subband size {shape} does not match original size "
                                 f"{self.original_shape}")
        object.__setattr__(self, 'original_shape', (height, width))

    @property
    def shape(self) -> Tuple[int, int]:
        return np.shape(self.ll)

    def bands(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return self.ll, self.hl, self.lh, self.hh

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.bands())

    def as_dict(self):
        return dict(zip(SUBBAND_NAMES, self.bands()))


# ---------------------------------------------------------------------------
# 1D building blocks along one axis
# ---------------------------------------------------------------------------

def circular_filter(x: np.ndarray, filt: FirFilter, axis: int = -1) -> np.ndarray:
    """y[n] = sum_i h[i] x[n - i] with periodic extension along ``axis``"""
    out = np.zeros_like(x, dtype=np.float64)
    for i, c in enumerate(filt.coeffs):
        if c != 0.0:
            out += c * np.roll(x, filt.delay + i, axis=axis)
    return out


def _take_even(x: np.ndarray, axis: int) -> np.ndarray:
    index = [slice(None)] * x.ndim
    index[axis] = slice(0, None, 2)
    return x[tuple(index)]


def _upsample(x: np.ndarray, axis: int) -> np.ndarray:
    shape = list(x.shape)
    shape[axis] *= 2
    out = np.zeros(shape, dtype=np.float64)
    index = [slice(None)] * x.ndim
    index[axis] = slice(0, None, 2)
    out[tuple(index)] = x
    return out


def _pad_even(x: np.ndarray, axis: int) -> np.ndarray:
    if x.shape[axis] % 2 == 0:
        return x
    widths = [(0, 0)] * x.ndim
    widths[axis] = (0, 1)
    return np.pad(x, widths, mode='edge')


def filter_downsample(x: np.ndarray, filt: FirFilter, axis: int = -1) -> np.ndarray:
    """One analysis channel along ``axis`` (length must be even)"""
    return _take_even(circular_filter(x, filt, axis), axis)


def analyze_axis(x: np.ndarray, bank: FilterBank, axis: int = -1) -> Tuple[np.ndarray, np.ndarray]:
    x = _pad_even(np.asarray(x, dtype=np.float64), axis)
    return filter_downsample(x, bank.h0, axis), filter_downsample(x, bank.h1, axis)


def synthesize_axis(low: np.ndarray, high: np.ndarray, bank: FilterBank, axis: int = -1) -> np.ndarray:
    """Upsample, filter with f0/f1, sum, then undo the bank's gain and delay"""
    y = circular_filter(_upsample(low, axis), bank.f0, axis) + \
        circular_filter(_upsample(high, axis), bank.f1, axis)
    return np.roll(y, -bank.delay, axis=axis) / bank.gain


# ---------------------------------------------------------------------------
# public 1D / 2D operations
# ---------------------------------------------------------------------------

def analyze_1d(signal: Sequence[float], bank: FilterBank) -> Tuple[np.ndarray, np.ndarray]:
    """(low, high), each ceil(len/2) samples"""
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1:
        raise TransformError(f"signal must be 1-dimensional, got shape {x.shape}")
    if x.size == 0:
        raise TransformError("empty signal")
    return analyze_axis(x, bank, axis=0)


def synthesize_1d(low: Sequence[float], high: Sequence[float], bank: FilterBank,
                  length: Optional[int] = None) -> np.ndarray:
    """Inverse of analyze_1d; ``length`` crops an odd-length original."""
    low = np.asarray(low, dtype=np.float64)
    high = np.asarray(high, dtype=np.float64)
    if low.ndim != 1 or high.ndim != 1:
        raise TransformError("subband signals must be 1-dimensional")
    if low.shape != high.shape:
        raise TransformError(f"length mismatch: low has {low.size}, high has {high.size}")
    if low.size == 0:
        raise TransformError("empty signal")
    y = synthesize_axis(low, high, bank, axis=0)
    if length is not None:
        if not 2 * low.size - 1 <= length <= 2 * low.size:
            raise TransformError(f"cannot crop {y.size} samples to {length}")
        y = y[:length]
    return y


def _as_array(p: Union[Plane, np.ndarray]) -> np.ndarray:
    if isinstance(p, Plane):
        return p.data
    return Plane(p).data


def analyze_2d(p: Union[Plane, np.ndarray], bank: FilterBank) -> SubbandSet:
    """Separable analysis: rows first, then columns"""
    data = _as_array(p)
    low_rows, high_rows = analyze_axis(data, bank, axis=1)
    ll, lh = analyze_axis(low_rows, bank, axis=0)
    hl, hh = analyze_axis(high_rows, bank, axis=0)
    return SubbandSet(ll=ll, hl=hl, lh=lh, hh=hh, original_shape=data.shape)


def synthesize_2d(s: SubbandSet, bank: FilterBank) -> Plane:
    """Inverse of analyze_2d (columns first, then rows), cropped to the original size"""
    low_rows = synthesize_axis(s.ll, s.lh, bank, axis=0)
    high_rows = synthesize_axis(s.hl, s.hh, bank, axis=0)
    data = synthesize_axis(low_rows, high_rows, bank, axis=1)
    height, width = s.original_shape
    return Plane(data[:height, :width])
