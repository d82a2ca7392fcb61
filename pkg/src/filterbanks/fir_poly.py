#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - FIR Polynomial Algebra
พีชคณิตของ FIR polynomial และเมทริกซ์ 2x2

Features:
- FirFilter: real taps in powers of z^-1 with an explicit delay
- Exact convolution, addition, scaling, modulation and up-sampling
- PolyMatrix2x2: lattice factors, polyphase matrices and their products
- DTFT / frequency response sampling

All values are immutable; every function here is pure and re-entrant.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .errors import InvalidParameterError

# Taps at either end with magnitude at or below this are trimmed away.
TRIM_TOLERANCE = 1e-14


@dataclass(frozen=True)
class FirFilter:
    """
    FIR filter ``sum_i coeffs[i] * z^-(delay + i)``.

    The record is kept in canonical form: leading and trailing taps below
    ``TRIM_TOLERANCE`` are removed (leading ones move into ``delay``).  The zero
    polynomial is represented as a single 0.0 tap with delay 0.
    """
    coeffs: Tuple[float, ...]
    delay: int = 0

    def __post_init__(self):
        taps = np.asarray(self.coeffs, dtype=np.float64).ravel()
        if taps.size == 0:
            raise InvalidParameterError("FIR filter needs at least one tap")
        if not np.all(np.isfinite(taps)):
            raise InvalidParameterError("FIR filter taps must be finite")
        if int(self.delay) != self.delay or self.delay < 0:
            raise InvalidParameterError(f"delay must be a non-negative integer, got {self.delay!r}")

        delay = int(self.delay)
        significant = np.flatnonzero(np.abs(taps) > TRIM_TOLERANCE)
        if significant.size == 0:
            taps, delay = np.zeros(1), 0
        else:
            delay += int(significant[0])
            taps = taps[significant[0]:significant[-1] + 1]

        object.__setattr__(self, 'coeffs', tuple(float(t) for t in taps))
        object.__setattr__(self, 'delay', delay)

    @classmethod
    def from_dense(cls, taps: Iterable[float]) -> 'FirFilter':
        """สร้าง filter จาก tap array ที่เริ่มที่ z^0"""
        return cls(tuple(taps), 0)

    @property
    def length(self) -> int:
        return len(self.coeffs)

    @property
    def degree(self) -> int:
        """Highest power of z^-1 carried by the filter"""
        return self.delay + len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0.0

    @property
    def taps(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.float64)

    def dense(self, length: Optional[int] = None) -> np.ndarray:
        """Taps laid out from z^0, zero-filled up to ``length`` (default degree + 1)."""
        span = self.degree + 1
        if length is None:
            length = span
        if length < span and not self.is_zero:
            raise InvalidParameterError(f"filter spans {span} taps, cannot fit into {length}")
        out = np.zeros(length, dtype=np.float64)
        if not self.is_zero:
            out[self.delay:self.delay + self.length] = self.coeffs
        return out

    def __add__(self, other: 'FirFilter') -> 'FirFilter':
        return poly_add(self, other)

    def __sub__(self, other: 'FirFilter') -> 'FirFilter':
        return poly_sub(self, other)

    def __mul__(self, other):
        if isinstance(other, FirFilter):
            return poly_mul(self, other)
        return poly_scale(self, float(other))

    __rmul__ = __mul__

    def __neg__(self) -> 'FirFilter':
        return poly_scale(self, -1.0)


def zero() -> FirFilter:
    return FirFilter((0.0,), 0)


def identity() -> FirFilter:
    """Single unit tap at delay 0"""
    return FirFilter((1.0,), 0)


def monomial(coef: float, delay: int) -> FirFilter:
    """``coef * z^-delay``"""
    return FirFilter((coef,), delay)


def poly_mul(a: FirFilter, b: FirFilter) -> FirFilter:
    """Full linear convolution; delays add."""
    if a.is_zero or b.is_zero:
        return zero()
    return FirFilter(tuple(np.convolve(a.coeffs, b.coeffs)), a.delay + b.delay)


def poly_add(a: FirFilter, b: FirFilter) -> FirFilter:
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    start = min(a.delay, b.delay)
    stop = max(a.degree, b.degree) + 1
    out = np.zeros(stop - start)
    out[a.delay - start:a.delay - start + a.length] += a.coeffs
    out[b.delay - start:b.delay - start + b.length] += b.coeffs
    return FirFilter(tuple(out), start)


def poly_scale(a: FirFilter, factor: float) -> FirFilter:
    return FirFilter(tuple(np.asarray(a.coeffs) * factor), a.delay)


def poly_sub(a: FirFilter, b: FirFilter) -> FirFilter:
    return poly_add(a, poly_scale(b, -1.0))


def shift(a: FirFilter, k: int) -> FirFilter:
    """Multiply by z^-k (k >= 0)."""
    if a.is_zero:
        return a
    return FirFilter(a.coeffs, a.delay + k)


def upsample(a: FirFilter, factor: int = 2) -> FirFilter:
    """``A(z^factor)``"""
    if a.is_zero:
        return a
    out = np.zeros(factor * (a.length - 1) + 1)
    out[::factor] = a.coeffs
    return FirFilter(tuple(out), factor * a.delay)


def modulate(a: FirFilter) -> FirFilter:
    """``A(-z)``: the tap at power n is multiplied by (-1)^n."""
    powers = a.delay + np.arange(a.length)
    signs = np.where(powers % 2 == 0, 1.0, -1.0)
    return FirFilter(tuple(np.asarray(a.coeffs) * signs), a.delay)


def time_reverse(a: FirFilter, span: Optional[int] = None) -> FirFilter:
    """
    ``z^-(span-1) A(z^-1)``: reverses the taps inside a window of ``span`` taps
    starting at z^0 (default: the filter's own support from z^0).
    """
    taps = a.dense(span)
    return FirFilter.from_dense(taps[::-1])


def polyphase_components(a: FirFilter) -> Tuple[FirFilter, FirFilter]:
    """Even/odd phases (E0, E1) with ``A(z) = E0(z^2) + z^-1 E1(z^2)``."""
    taps = a.dense()
    even, odd = taps[0::2], taps[1::2]
    return (FirFilter.from_dense(even),
            FirFilter.from_dense(odd) if odd.size else zero())


def as_monomial(a: FirFilter, rel_tol: float = 1e-10) -> Optional[Tuple[float, int]]:
    """``(coef, delay)`` when every tap but the dominant one is below rel_tol * |coef|."""
    if a.is_zero:
        return None
    taps = np.abs(np.asarray(a.coeffs))
    lead = int(np.argmax(taps))
    rest = np.delete(taps, lead)
    if rest.size and rest.max() > rel_tol * taps[lead]:
        return None
    return a.coeffs[lead], a.delay + lead


def max_abs_diff(a: FirFilter, b: FirFilter) -> float:
    return float(np.max(np.abs(poly_sub(a, b).coeffs)))


def evaluate(a: FirFilter, z: complex) -> complex:
    powers = a.delay + np.arange(a.length)
    return complex(np.sum(np.asarray(a.coeffs) * np.power(complex(z), -powers.astype(float))))


def dtft(a: FirFilter, omegas: Sequence[float]) -> np.ndarray:
    """``H(e^{jw}) = sum_n h(n) e^{-jwn}`` at each w in ``omegas``."""
    omegas = np.asarray(omegas, dtype=np.float64)
    powers = a.delay + np.arange(a.length)
    kernel = np.exp(-1j * np.outer(omegas, powers))
    return kernel @ np.asarray(a.coeffs)


def frequency_grid(num_samples: int) -> np.ndarray:
    """w_j = j*pi/(num_samples-1), j = 0..num_samples-1"""
    if num_samples < 2:
        raise InvalidParameterError("num_samples must be at least 2")
    return np.arange(num_samples) * (math.pi / (num_samples - 1))


def freq_response(a: FirFilter, num_samples: int) -> np.ndarray:
    return dtft(a, frequency_grid(num_samples))


@dataclass(frozen=True)
class PolyMatrix2x2:
    """2x2 matrix of FIR polynomials, row-major ``((a00, a01), (a10, a11))``."""
    entries: Tuple[Tuple[FirFilter, FirFilter], Tuple[FirFilter, FirFilter]]

    def __getitem__(self, index: Tuple[int, int]) -> FirFilter:
        row, col = index
        return self.entries[row][col]

    @classmethod
    def from_rows(cls, a00: FirFilter, a01: FirFilter,
                  a10: FirFilter, a11: FirFilter) -> 'PolyMatrix2x2':
        return cls(((a00, a01), (a10, a11)))

    @classmethod
    def constant(cls, values: Sequence[Sequence[float]]) -> 'PolyMatrix2x2':
        return cls.from_rows(*(FirFilter((float(v),)) for row in values for v in row))

    @classmethod
    def identity(cls) -> 'PolyMatrix2x2':
        return cls.constant([[1.0, 0.0], [0.0, 1.0]])

    @classmethod
    def diag(cls, a: FirFilter, b: FirFilter) -> 'PolyMatrix2x2':
        return cls.from_rows(a, zero(), zero(), b)

    @classmethod
    def delay(cls, step: int = 1) -> 'PolyMatrix2x2':
        """``Lambda(z^step) = diag(1, z^-step)``"""
        return cls.diag(identity(), monomial(1.0, step))

    def __matmul__(self, other: 'PolyMatrix2x2') -> 'PolyMatrix2x2':
        return matmul(self, other)

    def apply(self, vector: Tuple[FirFilter, FirFilter]) -> Tuple[FirFilter, FirFilter]:
        """Matrix times a column of two polynomials."""
        top, bottom = vector
        return (self[0, 0] * top + self[0, 1] * bottom,
                self[1, 0] * top + self[1, 1] * bottom)

    def scale(self, factor: float) -> 'PolyMatrix2x2':
        return PolyMatrix2x2(tuple(tuple(poly_scale(e, factor) for e in row)
                                   for row in self.entries))

    def upsample(self, factor: int = 2) -> 'PolyMatrix2x2':
        return PolyMatrix2x2(tuple(tuple(upsample(e, factor) for e in row)
                                   for row in self.entries))

    def adjugate(self) -> 'PolyMatrix2x2':
        return PolyMatrix2x2.from_rows(self[1, 1], -self[0, 1], -self[1, 0], self[0, 0])


def matmul(a: PolyMatrix2x2, b: PolyMatrix2x2) -> PolyMatrix2x2:
    return PolyMatrix2x2(tuple(
        tuple(a[i, 0] * b[0, j] + a[i, 1] * b[1, j] for j in range(2))
        for i in range(2)
    ))


def chain(factors: Sequence[PolyMatrix2x2]) -> PolyMatrix2x2:
    """Left-to-right product of a matrix cascade"""
    product = PolyMatrix2x2.identity()
    for factor in factors:
        product = matmul(product, factor)
    return product


def det2(a: PolyMatrix2x2) -> FirFilter:
    return a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]


def matrix_max_abs_diff(a: PolyMatrix2x2, b: PolyMatrix2x2) -> float:
    return max(max_abs_diff(a[i, j], b[i, j]) for i in range(2) for j in range(2))
