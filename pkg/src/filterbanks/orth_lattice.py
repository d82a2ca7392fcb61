#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Orthogonal Lattice
สร้าง orthogonal filter bank จากมุมหมุน (rotation angles) และแยกตัวประกอบกลับเป็นมุม

Features:
- Rotation/delay cascade diag(1,-1) R_K L(z^2) ... R_1 L(z^2) R_0 [1, z^-1]^T
- Order flip / sign alternating flip / alternating sign synthesis relations
- Angle recovery from a known orthogonal lowpass (ini-DB2/3/4 style initialization)
- Double-shift orthogonality check
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .banks import Family, FilterBank, delay_chain, reconstruction_gain_delay
from .errors import (EvenLengthRequiredError, FactorizationBreakdownError,
                     InvalidParameterError, NotOrthogonalError)
from .fir_poly import FirFilter, PolyMatrix2x2, chain

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class OrthLatticeParams:
    """Rotation angles theta_0..theta_K (radians); filters have 2(K+1) taps."""
    angles: Tuple[float, ...]

    def __post_init__(self):
        angles = tuple(float(a) for a in np.atleast_1d(np.asarray(self.angles, dtype=np.float64)))
        if not angles:
            raise InvalidParameterError("orthogonal lattice needs at least one angle")
        if not all(math.isfinite(a) for a in angles):
            raise InvalidParameterError("rotation angles must be finite")
        object.__setattr__(self, 'angles', angles)

    family = Family.ORTHOGONAL

    @property
    def values(self) -> Tuple[float, ...]:
        return self.angles

    @property
    def order(self) -> int:
        """K; the filter order is 2K + 1"""
        return len(self.angles) - 1

    @property
    def num_taps(self) -> int:
        return 2 * len(self.angles)

    @property
    def tap_counts(self) -> Tuple[int, int]:
        return self.num_taps, self.num_taps

    def with_values(self, values: Sequence[float]) -> 'OrthLatticeParams':
        return OrthLatticeParams(tuple(values))


SIGN_FLIP = PolyMatrix2x2.constant([[1.0, 0.0], [0.0, -1.0]])
DELAY_Z2 = PolyMatrix2x2.delay(2)


def rotation_matrix(theta: float) -> PolyMatrix2x2:
    c, s = math.cos(theta), math.sin(theta)
    return PolyMatrix2x2.constant([[c, s], [-s, c]])


def rotation_derivative(theta: float) -> PolyMatrix2x2:
    """d R(theta) / d theta"""
    c, s = math.cos(theta), math.sin(theta)
    return PolyMatrix2x2.constant([[-s, c], [-c, -s]])


def lattice_factors(params: OrthLatticeParams) -> List[PolyMatrix2x2]:
    """Left-to-right factors; R_k sits at index ``1 + 2 * (K - k)``."""
    factors = [SIGN_FLIP]
    for k in range(params.order, -1, -1):
        factors.append(rotation_matrix(params.angles[k]))
        if k > 0:
            factors.append(DELAY_Z2)
    return factors


def factor_index(params: OrthLatticeParams, k: int) -> int:
    return 1 + 2 * (params.order - k)


def synth_orth(params: OrthLatticeParams) -> FilterBank:
    """Orthogonal analysis/synthesis bank from rotation angles"""
    h0, h1 = chain(lattice_factors(params)).apply(delay_chain())
    _, f0, f1 = derive_orth_synthesis(h0, num_taps=params.num_taps)
    gain, delay = reconstruction_gain_delay(h0, h1, f0, f1)

    logger.debug(f"Synthesized orthogonal bank: K={params.order}, taps={params.num_taps}")
    return FilterBank(h0=h0, h1=h1, f0=f0, f1=f1, family=Family.ORTHOGONAL,
                      params=params, gain=gain, delay=delay)


def _even_taps(h0: FirFilter, num_taps: Optional[int]) -> np.ndarray:
    taps = h0.dense(num_taps)
    if taps.size % 2:
        raise EvenLengthRequiredError(taps.size)
    return taps


def derive_orth_synthesis(h0: FirFilter,
                          num_taps: Optional[int] = None) -> Tuple[FirFilter, FirFilter, FirFilter]:
    """
    (h1, f0, f1) from h0 by the alias-cancellation relations:
      f0(n) = h0(N-1-n),  h1(n) = (-1)^n h0(N-1-n),  f1(n) = -(-1)^n h0(n)

    ``num_taps`` fixes N when h0 carries trailing zero taps.
    """
    taps = _even_taps(h0, num_taps)
    signs = np.where(np.arange(taps.size) % 2 == 0, 1.0, -1.0)
    flipped = taps[::-1]
    return (FirFilter.from_dense(signs * flipped),
            FirFilter.from_dense(flipped),
            FirFilter.from_dense(-signs * taps))


def check_double_shift_orthogonality(h0: FirFilter, num_taps: Optional[int] = None) -> float:
    """max_k!=0 |sum h(n)h(n-2k)| together with |sum h(n)^2 - 1|"""
    taps = h0.dense(num_taps)
    if taps.size % 2:
        taps = np.append(taps, 0.0)
    corr = np.correlate(taps, taps, mode='full')
    centre = taps.size - 1
    deviation = abs(corr[centre] - 1.0)
    even_lags = corr[centre % 2::2]
    off_centre = np.delete(even_lags, centre // 2)
    if off_centre.size:
        deviation = max(deviation, float(np.max(np.abs(off_centre))))
    return float(deviation)


def dc_gain_deviation(h0: FirFilter) -> float:
    """|sum h0 - sqrt(2)|; reported only, never enforced on tuned angles"""
    return abs(float(np.sum(h0.coeffs)) - SQRT2)


def factor_orth(h0: FirFilter, tol: float = 1e-10,
                num_taps: Optional[int] = None) -> OrthLatticeParams:
    """
    Recover lattice angles from an orthogonal lowpass.

    Each stage undoes one rotation/delay pair, shortening the filter by two taps.
    theta_1..theta_K take the principal arctangent branch (-pi/2, pi/2]. theta_0 comes
    from the final 2-tap stage via atan2 and lies in (-pi, pi], so it departs from the
    per-stage convention: a negated lowpass resynthesizes with its sign intact instead of
    being folded back onto +h0.
    """
    taps = h0.dense(num_taps)
    if taps.size % 2:
        taps = np.append(taps, 0.0)

    deviation = check_double_shift_orthogonality(FirFilter.from_dense(taps), taps.size)
    if deviation > tol:
        raise NotOrthogonalError(deviation, tol)

    a = taps
    angles: List[float] = []
    stage = a.size // 2 - 1
    while a.size > 2:
        signs = np.where(np.arange(a.size) % 2 == 0, 1.0, -1.0)
        b = -signs * a[::-1]
        first, last = a[0], a[-1]
        if abs(first) <= tol and abs(last) <= tol:
            raise FactorizationBreakdownError(stage)
        theta = math.atan(last / first) if abs(first) > tol else math.pi / 2
        c, s = math.cos(theta), math.sin(theta)

        lower = c * a - s * b
        upper = s * a + c * b
        residual = max(np.max(np.abs(lower[-2:])), np.max(np.abs(upper[:2])))
        logger.debug(f"Stage {stage}: theta={theta:.12f}, residual={residual:.2e}")

        angles.append(theta)
        a = lower[:-2]
        stage -= 1

    norm = math.hypot(a[0], a[1])
    if norm <= tol:
        raise FactorizationBreakdownError(0)
    angles.append(math.atan2(a[1], a[0]))
    return OrthLatticeParams(tuple(reversed(angles)))
