#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Lifting Scheme
สร้าง biorthogonal filter bank ที่ความยาว filter ไม่เท่ากันด้วย lifting steps จาก Haar

Features:
- Lifting step function P_k(z) = -a_k + a_k z^-2k
- Filter-level recursion
    H0^k = H0^(k-1)
    H1^k = -a_k H0^(k-1) + z^-2 H1^(k-1) + a_k z^-4k H0^(k-1)
- Matrix form of the same cascade (used to cross-check the recursion)
- Synthesis by undoing the lifting steps one by one (unit-determinant inversion)
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from .banks import Family, FilterBank, reconstruction_gain_delay, synthesis_from_polyphase
from .errors import InvalidParameterError
from .fir_poly import (FirFilter, PolyMatrix2x2, chain, identity, matmul, monomial,
                       shift, upsample, zero)

logger = logging.getLogger(__name__)

HAAR_TAP = 1.0 / math.sqrt(2.0)
BASE_WAVELETS = ('haar', 'bior1.1')
# Longer cascades are allowed but logged.
MAX_RECOMMENDED_STEPS = 8


@dataclass(frozen=True)
class LiftingParams:
    """Lifting coefficients a_1..a_N on a Haar (== Bior1.1) base."""
    coefficients: Tuple[float, ...]
    base: str = field(default='haar')

    def __post_init__(self):
        values = tuple(float(a) for a in np.atleast_1d(np.asarray(self.coefficients, dtype=np.float64)))
        if not values:
            raise InvalidParameterError("lifting needs at least one step")
        if not all(math.isfinite(a) for a in values):
            raise InvalidParameterError("lifting coefficients must be finite")
        base = str(self.base).lower()
        if base not in BASE_WAVELETS:
            raise InvalidParameterError(f"unsupported base wavelet: {self.base}")
        object.__setattr__(self, 'coefficients', values)
        object.__setattr__(self, 'base', base)

    family = Family.LIFTING

    @property
    def values(self) -> Tuple[float, ...]:
        return self.coefficients

    @property
    def num_steps(self) -> int:
        return len(self.coefficients)

    @property
    def tap_counts(self) -> Tuple[int, int]:
        return lifting_tap_count(self.num_steps)

    def with_values(self, values: Sequence[float]) -> 'LiftingParams':
        return LiftingParams(tuple(values), self.base)


def check_step_count(num_steps: int, max_recommended_steps: int = MAX_RECOMMENDED_STEPS) -> bool:
    """Warn when a cascade is longer than the recommended maximum; True if it is"""
    if num_steps <= max_recommended_steps:
        return False
    logger.warning(f"{num_steps} lifting steps exceeds the recommended maximum of {max_recommended_steps}")
    return True


def base_pair() -> Tuple[FirFilter, FirFilter]:
    """Haar analysis pair; Bior1.1 has the same taps under this normalization."""
    return FirFilter((HAAR_TAP, HAAR_TAP)), FirFilter((HAAR_TAP, -HAAR_TAP))


def lifting_step_poly(k: int, a_k: float) -> FirFilter:
    """P_k(z) = -a_k + a_k z^-2k"""
    if k < 1:
        raise InvalidParameterError(f"lifting step index must be >= 1, got {k}")
    taps = np.zeros(2 * k + 1)
    taps[0], taps[-1] = -a_k, a_k
    return FirFilter.from_dense(taps)


def lifting_step_derivative(k: int) -> FirFilter:
    """d P_k / d a_k = -1 + z^-2k"""
    return lifting_step_poly(k, 1.0)


def lifting_tap_count(num_steps: int) -> Tuple[int, int]:
    """
    (len_h0, len_h1) for generic nonzero coefficients.

    h0 keeps the 2 Haar taps; step k adds z^-4k H0, so the last tap of h1
    sits at z^-(4N+1).
    """
    if num_steps < 1:
        raise InvalidParameterError("number of lifting steps must be >= 1")
    return 2, 4 * num_steps + 2


def lifting_recursion(params: LiftingParams) -> Tuple[FirFilter, FirFilter]:
    """Filter-level recursion starting from the Haar pair"""
    h0, h1 = base_pair()
    for k, a_k in enumerate(params.coefficients, start=1):
        h1 = h0 * (-a_k) + shift(h1, 2) + shift(h0, 4 * k) * a_k
    return h0, h1


def step_matrix(k: int, a_k: float) -> PolyMatrix2x2:
    """Filter-level factor [1 0; P_k(z^2) 1] diag(1, z^-2)"""
    lift = PolyMatrix2x2.from_rows(identity(), zero(), upsample(lifting_step_poly(k, a_k), 2), identity())
    return matmul(lift, PolyMatrix2x2.delay(2))


def lifting_factors(params: LiftingParams) -> List[PolyMatrix2x2]:
    """Left-to-right factors; step k sits at index ``N - k``."""
    return [step_matrix(k, params.coefficients[k - 1])
            for k in range(params.num_steps, 0, -1)]


def lifting_cascade_matrix(params: LiftingParams) -> PolyMatrix2x2:
    """M(z) with [H0; H1] = M(z) [H0^0; H1^0]"""
    return chain(lifting_factors(params))


def _synthesis_polyphase(params: LiftingParams) -> PolyMatrix2x2:
    """
    ย้อนขั้นตอน lifting ทีละขั้น

    Polyphase cascade: E_N = L_N D ... L_1 D E_0 with L_k = [1 0; P_k 1], D = diag(1, z^-1).
    Undo each step with L_k^-1 = [1 0; -P_k 1] and adj D = diag(z^-1, 1), giving
    R = E_0^-1 adj(D) L_1^-1 ... adj(D) L_N^-1 and R E_N = z^-N I.
    """
    # Haar polyphase matrix is symmetric orthogonal: its own inverse.
    base_inverse = PolyMatrix2x2.constant([[HAAR_TAP, HAAR_TAP], [HAAR_TAP, -HAAR_TAP]])
    undo_delay = PolyMatrix2x2.diag(monomial(1.0, 1), identity())
    factors = [base_inverse]
    for k, a_k in enumerate(params.coefficients, start=1):
        factors.append(undo_delay)
        factors.append(PolyMatrix2x2.from_rows(identity(), zero(), -lifting_step_poly(k, a_k), identity()))
    return chain(factors)


def synth_lifting(params: LiftingParams) -> FilterBank:
    h0, h1 = lifting_recursion(params)
    f0, f1 = synthesis_from_polyphase(_synthesis_polyphase(params))
    gain, delay = reconstruction_gain_delay(h0, h1, f0, f1)

    logger.debug(f"Synthesized lifting bank: N={params.num_steps}, len(h1)={h1.degree + 1}")
    return FilterBank(h0=h0, h1=h1, f0=f0, f1=f1, family=Family.LIFTING,
                      params=params, gain=gain, delay=delay)
