"""
Tunable Wavelet Units - Transform Module
One-level 1D and separable 2D analysis/synthesis
"""

from .dwt import (SUBBAND_NAMES, Plane, SubbandSet, analyze_1d, analyze_2d, circular_filter,
                  filter_downsample, synthesize_1d, synthesize_2d)

__all__ = ['Plane', 'SubbandSet', 'SUBBAND_NAMES', 'analyze_1d', 'synthesize_1d',
           'analyze_2d', 'synthesize_2d', 'circular_filter', 'filter_downsample']
