#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Filter Bank Verifier
ตัวตรวจสอบ filter bank จาก spec document

Checks:
- stored taps agree with a fresh synthesis from the parameter vector
- perfect reconstruction round trip on a seeded random signal
- double-shift orthogonality (orthogonal family)
- mirror-image pair (biorthogonal lattice family)
- analytic tap gradients against central finite differences
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..filterbanks.banks import Family, FilterBank
from ..filterbanks.biorth_lattice import check_mirror_image_pair
from ..filterbanks.errors import FilterBankError
from ..filterbanks.fir_poly import FirFilter
from ..filterbanks.orth_lattice import check_double_shift_orthogonality, dc_gain_deviation
from ..transform.dwt import analyze_1d, synthesize_1d
from ..tuning.grad_tune import finite_diff_check
from ..utils.file_io import FilterSpecDocument
from ..utils.rng import DEFAULT_SEED, Xorshift64Star

DEFAULT_THRESHOLDS = {
    'stored_taps': 1e-12,
    'pr_tolerance': 1e-10,
    'orthogonality_tolerance': 1e-12,
    'mip_tolerance': 1e-12,
    'gradient_tolerance': 1e-5,
}
# Round-off allowance per unit of analysis x synthesis tap mass.
ROUNDOFF_FACTOR = 8.0 * np.finfo(np.float64).eps


@dataclass
class CheckMetric:
    """ผลการตรวจสอบหนึ่งรายการ"""
    name: str
    value: float
    threshold: float
    passed: bool
    description: str
    details: Dict[str, Any] = field(default_factory=dict)


@dataclass
class VerificationResult:
    """ผลลัพธ์การตรวจสอบ filter bank"""
    passed: bool
    metrics: List[CheckMetric]
    metadata: Dict[str, Any]

    @property
    def failed_checks(self) -> List[str]:
        return [metric.name for metric in self.metrics if not metric.passed]


class BankVerifier:
    """
    ตัวตรวจสอบ filter bank
    ค่า threshold มาจาก section ``verify`` ของ config
    """

    def __init__(self, config: Dict[str, Any] = None):
        self.logger = logging.getLogger(__name__)
        self.config = config or {}
        self.thresholds = dict(DEFAULT_THRESHOLDS)
        for key in DEFAULT_THRESHOLDS:
            if key in self.config:
                self.thresholds[key] = float(self.config[key])
        self.gradient_step = float(self.config.get('gradient_step', 1e-6))
        self.signal_length = int(self.config.get('signal_length', 64))

    def _metric(self, name: str, value: float, threshold: float, description: str,
                **details) -> CheckMetric:
        passed = bool(np.isfinite(value) and value <= threshold)
        return CheckMetric(name=name, value=float(value), threshold=threshold, passed=passed,
                           description=description, details=details)

    def _failed(self, name: str, threshold: float, error: Exception) -> CheckMetric:
        self.logger.error(f"Check {name} could not run: {error}")
        return CheckMetric(name=name, value=float('inf'), threshold=threshold, passed=False,
                           description=f'Error running {name}', details={'error': str(error)})

    def check_stored_taps(self, document: FilterSpecDocument) -> CheckMetric:
        """Resynthesize from the parameter vector and compare every stored tap"""
        name, threshold = 'stored_taps', self.thresholds['stored_taps']
        try:
            bank = document.resynthesize()
        except FilterBankError as e:
            return self._failed(name, threshold, e)

        fresh = dict(zip(('h0', 'h1'), bank.analysis_taps()))
        fresh.update(zip(('f0', 'f1'), bank.synthesis_taps()))
        worst, per_filter = 0.0, {}
        for key, stored in document.stored_taps().items():
            if stored.shape != fresh[key].shape:
                per_filter[key] = float('inf')
            else:
                per_filter[key] = float(np.max(np.abs(stored - fresh[key])))
            worst = max(worst, per_filter[key])
        if abs(bank.gain - document.gain) > threshold or bank.delay != document.delay:
            worst = float('inf')
        return self._metric(name, worst, threshold,
                            f'Stored taps vs resynthesis: {worst:.3e}', per_filter=per_filter)

    def reconstruction_threshold(self, bank: FilterBank) -> float:
        """
        PR tolerance, raised to the floating-point round-off bound of the bank.

        Nearly singular biorthogonal lattices (|k| close to 1) have synthesis taps of
        order 1/det; their round trip cannot be more accurate than eps * sum|h| * sum|f|.
        """
        def mass(*filters) -> float:
            return float(sum(np.sum(np.abs(f.coeffs)) for f in filters))

        amplification = mass(bank.h0, bank.h1) * mass(bank.f0, bank.f1)
        return max(self.thresholds['pr_tolerance'], ROUNDOFF_FACTOR * amplification)

    def check_reconstruction(self, bank: FilterBank, seed: int) -> CheckMetric:
        name, threshold = 'perfect_reconstruction', self.reconstruction_threshold(bank)
        signal = Xorshift64Star(seed).uniform_array(self.signal_length, -1.0, 1.0)
        try:
            low, high = analyze_1d(signal, bank)
            error = float(np.max(np.abs(synthesize_1d(low, high, bank, len(signal)) - signal)))
        except FilterBankError as e:
            return self._failed(name, threshold, e)
        return self._metric(name, error, threshold, f'Round-trip error: {error:.3e}',
                            signal_length=self.signal_length, seed=seed)

    def check_orthogonality(self, document: FilterSpecDocument) -> CheckMetric:
        threshold = self.thresholds['orthogonality_tolerance']
        h0 = FirFilter.from_dense(document.h0)
        deviation = check_double_shift_orthogonality(h0, len(document.h0))
        return self._metric('orthogonality', deviation, threshold,
                            f'Double-shift orthogonality deviation: {deviation:.3e}',
                            dc_gain_deviation=dc_gain_deviation(h0))

    def check_mirror_image(self, document: FilterSpecDocument) -> CheckMetric:
        name, threshold = 'mirror_image_pair', self.thresholds['mip_tolerance']
        try:
            deviation = check_mirror_image_pair(document.params_record())
        except FilterBankError as e:
            return self._failed(name, threshold, e)
        return self._metric(name, deviation, threshold, f'Mirror-image pair deviation: {deviation:.3e}')

    def check_gradients(self, document: FilterSpecDocument) -> CheckMetric:
        name, threshold = 'gradient', self.thresholds['gradient_tolerance']
        try:
            error = finite_diff_check(document.params_record(), self.gradient_step)
        except FilterBankError as e:
            return self._failed(name, threshold, e)
        return self._metric(name, error, threshold,
                            f'Finite-difference relative error: {error:.3e}', step=self.gradient_step)

    def run_checks(self, document: FilterSpecDocument, seed: Optional[int] = None) -> VerificationResult:
        """รันการตรวจสอบทั้งหมด"""
        seed = DEFAULT_SEED if seed is None else seed
        self.logger.info(f"Starting verification of a {document.family.value} bank")

        stored_bank = FilterBank(
            h0=FirFilter.from_dense(document.h0), h1=FirFilter.from_dense(document.h1),
            f0=FirFilter.from_dense(document.f0), f1=FirFilter.from_dense(document.f1),
            family=document.family, params=None, gain=document.gain, delay=document.delay,
        )
        metrics = [self.check_stored_taps(document), self.check_reconstruction(stored_bank, seed)]
        if document.family is Family.ORTHOGONAL:
            metrics.append(self.check_orthogonality(document))
        if document.family is Family.BIORTHOGONAL_LATTICE:
            metrics.append(self.check_mirror_image(document))
        metrics.append(self.check_gradients(document))

        result = VerificationResult(
            passed=all(metric.passed for metric in metrics),
            metrics=metrics,
            metadata={
                'family': document.family.value,
                'num_params': len(document.params),
                'seed': seed,
            },
        )
        self.logger.info(f"Verification completed: {'PASSED' if result.passed else 'FAILED'}")
        return result

    def generate_report(self, result: VerificationResult) -> str:
        """สร้างรายงานผลการตรวจสอบ"""
        report = ["=" * 70, "FILTER BANK VERIFICATION REPORT", "=" * 70,
                  f"Family: {result.metadata.get('family')}  "
                  f"Parameters: {result.metadata.get('num_params')}  "
                  f"Seed: {result.metadata.get('seed')}", ""]

        for metric in result.metrics:
            status = "PASSED" if metric.passed else "FAILED"
            report.append(f"{metric.name.upper()}: {metric.value:.3e} "
                          f"(threshold: {metric.threshold:.1e}) {status}")
            if 'error' in metric.details:
                report.append(f"   error: {metric.details['error']}")

        report.append("")
        if result.passed:
            report.append("Status: PASSED")
        else:
            report.append(f"Status: FAILED ({', '.join(result.failed_checks)})")
        report.append("=" * 70)
        return "\n".join(report)
