#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Gradients and Tuning
อนุพันธ์ของ filter taps ตามพารามิเตอร์ lattice/lifting และตัว tune แบบ gradient descent

Features:
- Exact tap gradients by the product rule over the matrix cascade
- Central finite-difference verification
- Stopband energy of the lowpass filter and its tap gradient
- LL-compaction objective (LL energy fraction of a plane)
- Plain gradient-descent tuner with a recorded objective trace
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Tuple, Union

import numpy as np

from ..filterbanks.banks import Family, delay_chain
from ..filterbanks.biorth_lattice import BiorthLatticeParams, LATTICE_DERIVATIVE
from ..filterbanks.biorth_lattice import factor_index as biorth_factor_index
from ..filterbanks.biorth_lattice import lattice_factors as biorth_factors
from ..filterbanks.errors import DivergenceError, InvalidParameterError
from ..filterbanks.fir_poly import FirFilter, PolyMatrix2x2, chain, frequency_grid, upsample, zero
from ..filterbanks.lifting import (LiftingParams, base_pair, lifting_factors, lifting_recursion,
                                   lifting_step_derivative)
from ..filterbanks.orth_lattice import OrthLatticeParams, rotation_derivative
from ..filterbanks.orth_lattice import factor_index as orth_factor_index
from ..filterbanks.orth_lattice import lattice_factors as orth_factors
from ..transform.dwt import filter_downsample

logger = logging.getLogger(__name__)

ParamsType = Union[OrthLatticeParams, BiorthLatticeParams, LiftingParams]

DEFAULT_OMEGA_S = math.pi / 2
DEFAULT_NUM_SAMPLES = 512
DEFAULT_CLAMP = 0.99
# |analytic - numeric| at or below this counts as agreement
ABSOLUTE_FLOOR = 1e-8

STOPBAND_ENERGY = 'stopband-energy'
LL_COMPACTION = 'll-compaction'
OBJECTIVES = (STOPBAND_ENERGY, LL_COMPACTION)


@dataclass(frozen=True)
class ParamGradient:
    """
    Tap gradients: row p of ``dh0`` is d h0 / d params[p] (and likewise ``dh1``).

    Row lengths equal the family's nominal tap counts.
    """
    params: ParamsType
    dh0: np.ndarray
    dh1: np.ndarray

    def __len__(self) -> int:
        return self.dh0.shape[0]

    def contract(self, grad_h0: np.ndarray, grad_h1: Optional[np.ndarray] = None) -> np.ndarray:
        """Chain rule: d f / d params from d f / d h0 (and d f / d h1)"""
        out = self.dh0 @ np.asarray(grad_h0, dtype=np.float64)
        if grad_h1 is not None:
            out = out + self.dh1 @ np.asarray(grad_h1, dtype=np.float64)
        return out


@dataclass
class TuneReport:
    """ผลลัพธ์ของการ tune"""
    objective_name: str
    initial_params: ParamsType
    params: ParamsType
    iterations: int = 0
    trace: List[float] = field(default_factory=list)
    lr: float = 0.0

    @property
    def objective(self) -> float:
        return self.trace[-1] if self.trace else float('nan')

    def summary(self) -> Dict[str, object]:
        return {
            'objective': self.objective_name,
            'iterations': self.iterations,
            'initial_objective': self.trace[0] if self.trace else None,
            'final_objective': self.objective,
            'final_params': list(self.params.values),
        }


# ---------------------------------------------------------------------------
# analysis filters and their derivatives
# ---------------------------------------------------------------------------

def analysis_filters(params: ParamsType) -> Tuple[FirFilter, FirFilter]:
    """(h0, h1) straight from the cascade, without deriving synthesis filters"""
    if isinstance(params, OrthLatticeParams):
        return chain(orth_factors(params)).apply(delay_chain())
    if isinstance(params, BiorthLatticeParams):
        return chain(biorth_factors(params)).apply(delay_chain())
    if isinstance(params, LiftingParams):
        return lifting_recursion(params)
    raise InvalidParameterError(f"unsupported parameter record: {type(params).__name__}")


def filter_taps(params: ParamsType) -> Tuple[np.ndarray, np.ndarray]:
    """Dense h0/h1 taps at the nominal lengths"""
    n0, n1 = params.tap_counts
    h0, h1 = analysis_filters(params)
    return h0.dense(n0), h1.dense(n1)


def _cascade_and_derivatives(params: ParamsType) -> Tuple[List[PolyMatrix2x2], List[Tuple[int, PolyMatrix2x2]],
                                                          Tuple[FirFilter, FirFilter]]:
    """Factors, (index, derivative factor) per parameter, and the column the cascade acts on"""
    if isinstance(params, OrthLatticeParams):
        derivatives = [(orth_factor_index(params, k), rotation_derivative(theta))
                       for k, theta in enumerate(params.angles)]
        return orth_factors(params), derivatives, delay_chain()

    if isinstance(params, BiorthLatticeParams):
        derivatives = [(biorth_factor_index(params, m), LATTICE_DERIVATIVE)
                       for m in range(1, params.num_stages + 1)]
        return biorth_factors(params), derivatives, delay_chain()

    if isinstance(params, LiftingParams):
        n = params.num_steps
        # d/da_k of [1 0; P_k(z^2) 1] diag(1, z^-2) = [0 0; dP_k(z^2) 0]
        derivatives = [(n - k, PolyMatrix2x2.from_rows(zero(), zero(),
                                                       upsample(lifting_step_derivative(k), 2), zero()))
                       for k in range(1, n + 1)]
        return lifting_factors(params), derivatives, base_pair()

    raise InvalidParameterError(f"unsupported parameter record: {type(params).__name__}")


def grad_filters(params: ParamsType) -> ParamGradient:
    """
    Exact d(h0, h1)/d(params).

    Every parameter sits in exactly one cascade factor, so its derivative is the
    cascade with that factor swapped for the factor's derivative.
    """
    factors, derivatives, column = _cascade_and_derivatives(params)
    n0, n1 = params.tap_counts
    dh0 = np.zeros((len(derivatives), n0))
    dh1 = np.zeros((len(derivatives), n1))
    for p, (index, derivative) in enumerate(derivatives):
        swapped = list(factors)
        swapped[index] = derivative
        g0, g1 = chain(swapped).apply(column)
        dh0[p] = g0.dense(n0)
        dh1[p] = g1.dense(n1)
    return ParamGradient(params=params, dh0=dh0, dh1=dh1)


def relative_error(analytic: np.ndarray, numeric: np.ndarray, floor: float = ABSOLUTE_FLOOR) -> float:
    """max |a - n| / max(|a|, |n|), where differences at or below ``floor`` count as 0"""
    analytic = np.asarray(analytic, dtype=np.float64)
    numeric = np.asarray(numeric, dtype=np.float64)
    diff = np.abs(analytic - numeric)
    scale = np.maximum(np.abs(analytic), np.abs(numeric))
    rel = np.where(diff <= floor, 0.0, diff / np.where(scale > 0, scale, 1.0))
    return float(np.max(rel)) if rel.size else 0.0


def finite_diff_check(params: ParamsType, step: float = 1e-6) -> float:
    """Max relative error between grad_filters and central differences of the taps"""
    if not 0 < step <= 1e-2:
        raise InvalidParameterError(f"step must lie in (0, 1e-2], got {step}")

    analytic = grad_filters(params)
    values = np.array(params.values, dtype=np.float64)
    worst = 0.0
    for p in range(values.size):
        plus, minus = values.copy(), values.copy()
        plus[p] += step
        minus[p] -= step
        h0_plus, h1_plus = filter_taps(params.with_values(plus))
        h0_minus, h1_minus = filter_taps(params.with_values(minus))
        worst = max(worst,
                    relative_error(analytic.dh0[p], (h0_plus - h0_minus) / (2 * step)),
                    relative_error(analytic.dh1[p], (h1_plus - h1_minus) / (2 * step)))
    logger.debug(f"Finite-difference check ({params.family.value}): max relative error {worst:.3e}")
    return worst


# ---------------------------------------------------------------------------
# stopband energy
# ---------------------------------------------------------------------------

def _stopband_grid(omega_s: float, num_samples: int) -> Tuple[np.ndarray, np.ndarray]:
    """Sample points on [omega_s, pi] and their trapezoid weights"""
    if not 0 < omega_s < math.pi:
        raise InvalidParameterError(f"omega_s must lie in (0, pi), got {omega_s}")
    if num_samples < 2:
        raise InvalidParameterError("num_samples must be at least 2")
    omegas = omega_s + (math.pi - omega_s) * frequency_grid(num_samples) / math.pi
    weights = np.full(num_samples, (math.pi - omega_s) / (num_samples - 1))
    weights[[0, -1]] *= 0.5
    return omegas, weights


def _kernel(omegas: np.ndarray, num_taps: int) -> np.ndarray:
    return np.exp(-1j * np.outer(omegas, np.arange(num_taps)))


def stopband_energy(h0: Union[FirFilter, np.ndarray], omega_s: float = DEFAULT_OMEGA_S,
                    num_samples: int = DEFAULT_NUM_SAMPLES) -> float:
    """Trapezoid rule for the integral of |H0(e^jw)|^2 over [omega_s, pi]"""
    taps = h0.dense() if isinstance(h0, FirFilter) else np.asarray(h0, dtype=np.float64)
    omegas, weights = _stopband_grid(omega_s, num_samples)
    response = _kernel(omegas, taps.size) @ taps
    return float(np.sum(weights * np.abs(response) ** 2))


def stopband_energy_gradient(taps: np.ndarray, omega_s: float = DEFAULT_OMEGA_S,
                             num_samples: int = DEFAULT_NUM_SAMPLES) -> np.ndarray:
    """d E / d h0[n] = sum_j w_j 2 Re(conj(H_j) e^{-j w_j n})"""
    taps = np.asarray(taps, dtype=np.float64)
    omegas, weights = _stopband_grid(omega_s, num_samples)
    kernel = _kernel(omegas, taps.size)
    response = kernel @ taps
    return 2.0 * np.real(kernel.conj().T @ (weights * response))


# ---------------------------------------------------------------------------
# subband energies and their tap gradients
# ---------------------------------------------------------------------------

def _pad_plane(plane: np.ndarray) -> np.ndarray:
    plane = np.asarray(plane, dtype=np.float64)
    if plane.ndim != 2 or plane.size == 0:
        raise InvalidParameterError("a non-empty 2D plane is required")
    return np.pad(plane, ((0, plane.shape[0] % 2), (0, plane.shape[1] % 2)), mode='edge')


def subband_tap_vjp(plane: np.ndarray, h0: np.ndarray, h1: np.ndarray,
                    cotangents: Mapping[str, np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Vector-Jacobian product of analyze_2d with respect to dense taps.

    ``cotangents`` maps subband names ('ll', 'hl', 'lh', 'hh') to d f / d subband.
    Each channel is linear in its taps; tap n acts as a circular shift by n.
    """
    x = _pad_plane(plane)
    f0, f1 = FirFilter.from_dense(h0), FirFilter.from_dense(h1)
    low_rows = filter_downsample(x, f0, axis=1)
    high_rows = filter_downsample(x, f1, axis=1)
    zeros = np.zeros_like(filter_downsample(low_rows, f0, axis=0))
    c = {name: np.asarray(cotangents.get(name, zeros), dtype=np.float64)
         for name in ('ll', 'hl', 'lh', 'hh')}

    grad_h0 = np.zeros(len(h0))
    grad_h1 = np.zeros(len(h1))
    for n in range(max(len(h0), len(h1))):
        shift = FirFilter((1.0,), n)
        # tap n in the column pass
        col_low = filter_downsample(low_rows, shift, axis=0)
        col_high = filter_downsample(high_rows, shift, axis=0)
        # tap n in the row pass
        row_n = filter_downsample(x, shift, axis=1)
        row_low = filter_downsample(row_n, f0, axis=0)
        row_high = filter_downsample(row_n, f1, axis=0)
        if n < len(h0):
            grad_h0[n] = (np.sum(c['ll'] * col_low) + np.sum(c['hl'] * col_high)
                          + np.sum(c['ll'] * row_low) + np.sum(c['lh'] * row_high))
        if n < len(h1):
            grad_h1[n] = (np.sum(c['lh'] * col_low) + np.sum(c['hh'] * col_high)
                          + np.sum(c['hl'] * row_low) + np.sum(c['hh'] * row_high))
    return grad_h0, grad_h1


def _subbands(plane: np.ndarray, h0: np.ndarray, h1: np.ndarray) -> Dict[str, np.ndarray]:
    x = _pad_plane(plane)
    f0, f1 = FirFilter.from_dense(h0), FirFilter.from_dense(h1)
    low_rows = filter_downsample(x, f0, axis=1)
    high_rows = filter_downsample(x, f1, axis=1)
    return {
        'll': filter_downsample(low_rows, f0, axis=0),
        'hl': filter_downsample(high_rows, f0, axis=0),
        'lh': filter_downsample(low_rows, f1, axis=0),
        'hh': filter_downsample(high_rows, f1, axis=0),
    }


def ll_compaction(plane: np.ndarray, h0: np.ndarray, h1: np.ndarray) -> float:
    """LL energy as a fraction of the total subband energy"""
    bands = _subbands(plane, h0, h1)
    energies = {name: float(np.sum(band ** 2)) for name, band in bands.items()}
    total = sum(energies.values())
    return energies['ll'] / total if total > 0 else 0.0


def ll_compaction_gradient(plane: np.ndarray, h0: np.ndarray,
                           h1: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    bands = _subbands(plane, h0, h1)
    energies = {name: float(np.sum(band ** 2)) for name, band in bands.items()}
    total = sum(energies.values())
    if total <= 0:
        return np.zeros(len(h0)), np.zeros(len(h1))
    # d(E_ll / E_tot) / d band = 2 band (1[ll] E_tot - E_ll) / E_tot^2
    cotangents = {
        name: 2.0 * band * ((total if name == 'll' else 0.0) - energies['ll']) / total ** 2
        for name, band in bands.items()
    }
    return subband_tap_vjp(plane, h0, h1, cotangents)


# ---------------------------------------------------------------------------
# tuner
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Objective:
    """Named objective: value and parameter gradient; ``sense`` is +1 to minimize, -1 to maximize"""
    name: str
    sense: float
    value: Callable[[ParamsType], float]
    gradient: Callable[[ParamsType], np.ndarray]


def make_objective(name: str, image: Optional[np.ndarray] = None,
                   omega_s: float = DEFAULT_OMEGA_S,
                   num_samples: int = DEFAULT_NUM_SAMPLES) -> Objective:
    if name == STOPBAND_ENERGY:
        _stopband_grid(omega_s, num_samples)

        def value(params):
            return stopband_energy(filter_taps(params)[0], omega_s, num_samples)

        def gradient(params):
            h0, _ = filter_taps(params)
            return grad_filters(params).contract(stopband_energy_gradient(h0, omega_s, num_samples))

        return Objective(name, 1.0, value, gradient)

    if name == LL_COMPACTION:
        if image is None:
            raise InvalidParameterError("ll-compaction needs an image plane")
        plane = _pad_plane(image)

        def value(params):
            return ll_compaction(plane, *filter_taps(params))

        def gradient(params):
            g0, g1 = ll_compaction_gradient(plane, *filter_taps(params))
            return grad_filters(params).contract(g0, g1)

        return Objective(name, -1.0, value, gradient)

    raise InvalidParameterError(f"unknown objective: {name} (choose from {', '.join(OBJECTIVES)})")


def tune(params: ParamsType, objective: Union[str, Objective], lr: float = 0.1, iters: int = 200,
         image: Optional[np.ndarray] = None, omega_s: float = DEFAULT_OMEGA_S,
         num_samples: int = DEFAULT_NUM_SAMPLES, clamp: float = DEFAULT_CLAMP,
         on_step: Optional[Callable[[int, float], None]] = None) -> TuneReport:
    """
    Plain gradient descent (ascent for maximized objectives).

    Biorthogonal lattice coefficients are clamped to [-clamp, clamp] after every step.
    A non-finite objective raises DivergenceError carrying the partial report.
    """
    if not lr >= 0 or not math.isfinite(lr):
        raise InvalidParameterError(f"lr must be a non-negative finite number, got {lr}")
    if iters < 1:
        raise InvalidParameterError(f"iters must be >= 1, got {iters}")
    if isinstance(objective, str):
        objective = make_objective(objective, image, omega_s, num_samples)

    report = TuneReport(objective_name=objective.name, initial_params=params, params=params, lr=lr)
    current = objective.value(params)
    if not math.isfinite(current):
        raise DivergenceError(0, report)
    report.trace.append(current)

    for iteration in range(1, iters + 1):
        grad = objective.gradient(params)
        values = np.array(params.values, dtype=np.float64) - objective.sense * lr * grad
        if params.family is Family.BIORTHOGONAL_LATTICE:
            values = np.clip(values, -clamp, clamp)
        if not np.all(np.isfinite(values)):
            raise DivergenceError(iteration, report)

        candidate = params.with_values(values)
        current = objective.value(candidate)
        if not math.isfinite(current):
            raise DivergenceError(iteration, report)

        params = candidate
        report.params = params
        report.iterations = iteration
        report.trace.append(current)
        if on_step is not None:
            on_step(iteration, current)

    logger.info(f"Tuned {params.family.value} bank ({objective.name}): "
                f"{report.trace[0]:.6g} -> {report.objective:.6g} in {report.iterations} iterations")
    return report
