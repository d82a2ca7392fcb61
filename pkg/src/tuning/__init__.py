"""
Tunable Wavelet Units - Tuning Module
Tap gradients, stopband energy and the gradient-descent tuner
"""

from .grad_tune import (LL_COMPACTION, OBJECTIVES, STOPBAND_ENERGY, Objective, ParamGradient,
                        TuneReport, analysis_filters, filter_taps, finite_diff_check, grad_filters,
                        ll_compaction, make_objective, stopband_energy, stopband_energy_gradient,
                        subband_tap_vjp, tune)

__all__ = [
    'ParamGradient', 'TuneReport', 'Objective',
    'analysis_filters', 'filter_taps', 'grad_filters', 'finite_diff_check',
    'stopband_energy', 'stopband_energy_gradient', 'll_compaction', 'subband_tap_vjp',
    'make_objective', 'tune', 'STOPBAND_ENERGY', 'LL_COMPACTION', 'OBJECTIVES',
]
