#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Biorthogonal Lattice (type A)
สร้าง biorthogonal filter bank แบบ linear phase จาก lattice coefficients k_m

Features:
- Cascade [1 1; 1 -1] S_N L(z^2) ... S_2 L(z^2) S_1 [1, z^-1]^T, S_m = [1 k_m; k_m 1]
- Mirror-image-pair check on the pre-butterfly outputs T_N, U_N
- Synthesis filters by exact polyphase inversion R(z) = adj E(z) / det E(z)
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .banks import (Family, FilterBank, delay_chain, polyphase_matrix,
                    reconstruction_gain_delay, synthesis_from_polyphase)
from .errors import (InvalidParameterError, NotPerfectReconstructionError,
                     SingularLatticeStageError, SingularPolyphaseError)
from .fir_poly import FirFilter, PolyMatrix2x2, as_monomial, chain, det2, time_reverse

logger = logging.getLogger(__name__)

# |k_m| within this of 1 makes det(S_m) = 1 - k_m^2 vanish.
SINGULAR_TOLERANCE = 1e-12
MONOMIAL_TOLERANCE = 1e-10


@dataclass(frozen=True)
class BiorthLatticeParams:
    """Lattice coefficients k_1..k_N; filter length 2N, order 2N - 1."""
    ks: Tuple[float, ...]

    def __post_init__(self):
        ks = tuple(float(k) for k in np.atleast_1d(np.asarray(self.ks, dtype=np.float64)))
        if not ks:
            raise InvalidParameterError("biorthogonal lattice needs at least one coefficient")
        if not all(math.isfinite(k) for k in ks):
            raise InvalidParameterError("lattice coefficients must be finite")
        object.__setattr__(self, 'ks', ks)

    family = Family.BIORTHOGONAL_LATTICE

    @property
    def values(self) -> Tuple[float, ...]:
        return self.ks

    @property
    def num_stages(self) -> int:
        return len(self.ks)

    @property
    def num_taps(self) -> int:
        return 2 * len(self.ks)

    @property
    def tap_counts(self) -> Tuple[int, int]:
        return self.num_taps, self.num_taps

    def with_values(self, values: Sequence[float]) -> 'BiorthLatticeParams':
        return BiorthLatticeParams(tuple(values))


BUTTERFLY = PolyMatrix2x2.constant([[1.0, 1.0], [1.0, -1.0]])
DELAY_Z2 = PolyMatrix2x2.delay(2)
# d S_m / d k_m
LATTICE_DERIVATIVE = PolyMatrix2x2.constant([[0.0, 1.0], [1.0, 0.0]])


def lattice_matrix(k: float) -> PolyMatrix2x2:
    return PolyMatrix2x2.constant([[1.0, k], [k, 1.0]])


def _check_stages(params: BiorthLatticeParams) -> None:
    for index, k in enumerate(params.ks, start=1):
        if abs(abs(k) - 1.0) <= SINGULAR_TOLERANCE:
            raise SingularLatticeStageError(index, k)


def lattice_factors(params: BiorthLatticeParams, include_butterfly: bool = True) -> List[PolyMatrix2x2]:
    """Left-to-right factors; S_m sits at index ``offset + 2 * (N - m)``."""
    factors = [BUTTERFLY] if include_butterfly else []
    for m in range(params.num_stages, 0, -1):
        factors.append(lattice_matrix(params.ks[m - 1]))
        if m > 1:
            factors.append(DELAY_Z2)
    return factors


def factor_index(params: BiorthLatticeParams, m: int) -> int:
    return 1 + 2 * (params.num_stages - m)


def mirror_pair(params: BiorthLatticeParams) -> Tuple[FirFilter, FirFilter]:
    """(T_N, U_N): the cascade output before the final butterfly"""
    return chain(lattice_factors(params, include_butterfly=False)).apply(delay_chain())


def mirror_image_deviation(t: FirFilter, u: FirFilter, num_taps: int) -> float:
    """max tap deviation between U and z^-(num_taps-1) T(z^-1)"""
    mirrored = time_reverse(t, num_taps).dense(num_taps)
    return float(np.max(np.abs(u.dense(num_taps) - mirrored)))


def check_mirror_image_pair(params: BiorthLatticeParams) -> float:
    t, u = mirror_pair(params)
    return mirror_image_deviation(t, u, params.num_taps)


def derive_biorth_synthesis(h0: FirFilter, h1: FirFilter) -> 'BiorthSynthesis':
    """
    Synthesis filters from polyphase inversion.

    With det E(z) = c z^-d, R(z) = adj E(z) / c satisfies R E = z^-d I, so the
    synthesis filters stay causal FIR and the whole cascade is a pure delay.
    """
    e = polyphase_matrix(h0, h1)
    det = det2(e)
    scale = max(np.max(np.abs(h0.coeffs)), np.max(np.abs(h1.coeffs))) ** 2
    if det.is_zero or np.max(np.abs(det.coeffs)) <= SINGULAR_TOLERANCE * max(scale, 1.0):
        raise SingularPolyphaseError(0.0 if det.is_zero else float(np.max(np.abs(det.coeffs))))

    found = as_monomial(det, MONOMIAL_TOLERANCE)
    if found is None:
        raise NotPerfectReconstructionError("polyphase determinant is not a monomial")
    coef, det_delay = found

    f0, f1 = synthesis_from_polyphase(e.adjugate().scale(1.0 / coef))
    gain, delay = reconstruction_gain_delay(h0, h1, f0, f1)
    logger.debug(f"Polyphase det {coef:.6g} z^-{det_delay}; cascade delay {delay}")
    return BiorthSynthesis(f0=f0, f1=f1, gain=gain, delay=delay,
                           determinant=coef, determinant_delay=det_delay)


@dataclass(frozen=True)
class BiorthSynthesis:
    """ผลลัพธ์ของการหา synthesis filters"""
    f0: FirFilter
    f1: FirFilter
    gain: float
    delay: int
    determinant: float
    determinant_delay: int

    def __iter__(self):
        return iter((self.f0, self.f1, self.gain, self.delay))


def synth_biorth(params: BiorthLatticeParams) -> FilterBank:
    """Type-A biorthogonal bank: symmetric h0, antisymmetric h1"""
    _check_stages(params)
    h0, h1 = chain(lattice_factors(params)).apply(delay_chain())
    synthesis = derive_biorth_synthesis(h0, h1)

    logger.debug(f"Synthesized biorthogonal bank: N={params.num_stages}, "
                 f"det={synthesis.determinant:.6g}")
    return FilterBank(h0=h0, h1=h1, f0=synthesis.f0, f1=synthesis.f1,
                      family=Family.BIORTHOGONAL_LATTICE, params=params,
                      gain=synthesis.gain, delay=synthesis.delay,
                      determinant=synthesis.determinant)


def symmetry_deviation(bank: FilterBank) -> float:
    """max deviation of h0 from palindromic and h1 from anti-palindromic"""
    h0, h1 = bank.analysis_taps()
    return float(max(np.max(np.abs(h0 - h0[::-1])), np.max(np.abs(h1 + h1[::-1]))))
