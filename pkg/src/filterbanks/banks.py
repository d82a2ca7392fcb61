#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Filter Bank Records
โครงสร้าง FilterBank และเครื่องมือ polyphase ที่ใช้ร่วมกันทุก family

Features:
- FilterBank record (analysis h0/h1, synthesis f0/f1, family tag, parameters)
- Polyphase matrix E(z) of an analysis pair and synthesis filters from R(z)
- Two-channel distortion/alias transfer functions and the (gain, delay) of a PR bank
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional, Tuple

import numpy as np

from .errors import NotPerfectReconstructionError
from .fir_poly import (FirFilter, PolyMatrix2x2, as_monomial, modulate,
                       polyphase_components, poly_scale, shift)

logger = logging.getLogger(__name__)

# Alias terms and non-leading distortion taps must stay below this (relative).
PR_TOLERANCE = 1e-10


class Family(str, Enum):
    ORTHOGONAL = 'orthogonal'
    BIORTHOGONAL_LATTICE = 'biorthogonal-lattice'
    LIFTING = 'lifting'


@dataclass(frozen=True)
class FilterBank:
    """
    Analysis (h0, h1) and synthesis (f0, f1) filters of a two-channel bank.

    ``gain`` and ``delay`` describe what the analysis->synthesis cascade does to a
    signal: ``y[n] = gain * x[n - delay]``.  ``params`` is the parameter record the
    bank was synthesized from.  ``determinant`` is the polyphase determinant
    coefficient the synthesis side divides out (biorthogonal lattice only).
    """
    h0: FirFilter
    h1: FirFilter
    f0: FirFilter
    f1: FirFilter
    family: Family
    params: Any
    gain: float = 1.0
    delay: int = 0
    determinant: Optional[float] = None

    @property
    def tap_counts(self) -> Tuple[int, int]:
        return self.params.tap_counts

    def analysis_taps(self) -> Tuple[np.ndarray, np.ndarray]:
        """Dense h0/h1 taps from z^0 with the family's nominal lengths"""
        n0, n1 = self.tap_counts
        return self.h0.dense(n0), self.h1.dense(n1)

    def synthesis_taps(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.f0.dense(), self.f1.dense()


def polyphase_matrix(h0: FirFilter, h1: FirFilter) -> PolyMatrix2x2:
    """E(z) with ``[H0; H1] = E(z^2) [1; z^-1]``"""
    e00, e01 = polyphase_components(h0)
    e10, e11 = polyphase_components(h1)
    return PolyMatrix2x2.from_rows(e00, e01, e10, e11)


def synthesis_from_polyphase(r: PolyMatrix2x2) -> Tuple[FirFilter, FirFilter]:
    """``[F0 F1] = [z^-1  1] R(z^2)``"""
    r2 = r.upsample(2)
    f0 = shift(r2[0, 0], 1) + r2[1, 0]
    f1 = shift(r2[0, 1], 1) + r2[1, 1]
    return f0, f1


def distortion_and_alias(h0: FirFilter, h1: FirFilter,
                         f0: FirFilter, f1: FirFilter) -> Tuple[FirFilter, FirFilter]:
    """
    คำนวณ distortion T(z) และ alias A(z) ของ filter bank สองช่อง

    T(z) = (F0 H0 + F1 H1) / 2,  A(z) = (F0 H0(-z) + F1 H1(-z)) / 2
    """
    distortion = poly_scale(f0 * h0 + f1 * h1, 0.5)
    alias = poly_scale(f0 * modulate(h0) + f1 * modulate(h1), 0.5)
    return distortion, alias


def reconstruction_gain_delay(h0: FirFilter, h1: FirFilter, f0: FirFilter, f1: FirFilter,
                              rel_tol: float = PR_TOLERANCE) -> Tuple[float, int]:
    """(gain, delay) of the analysis->synthesis cascade, or NotPerfectReconstructionError"""
    distortion, alias = distortion_and_alias(h0, h1, f0, f1)
    found = as_monomial(distortion, rel_tol)
    if found is None:
        raise NotPerfectReconstructionError("distortion is not a pure delay")
    gain, delay = found
    if not alias.is_zero and np.max(np.abs(alias.coeffs)) > rel_tol * abs(gain):
        raise NotPerfectReconstructionError("aliasing is not cancelled")
    logger.debug(f"Cascade gain {gain:.6g}, delay {delay}")
    return float(gain), int(delay)


def analysis_from_polyphase(e: PolyMatrix2x2) -> Tuple[FirFilter, FirFilter]:
    """Inverse of polyphase_matrix: ``[H0; H1] = E(z^2) [1; z^-1]``"""
    e2 = e.upsample(2)
    return (e2[0, 0] + shift(e2[0, 1], 1),
            e2[1, 0] + shift(e2[1, 1], 1))


# z^-1 column that feeds every lattice cascade: [1, z^-1]^T
def delay_chain() -> Tuple[FirFilter, FirFilter]:
    return FirFilter((1.0,)), FirFilter((1.0,), 1)


__all__ = [
    'Family', 'FilterBank', 'PR_TOLERANCE',
    'polyphase_matrix', 'synthesis_from_polyphase', 'analysis_from_polyphase',
    'distortion_and_alias', 'reconstruction_gain_delay', 'delay_chain',
]
