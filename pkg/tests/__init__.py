"""
Tunable Wavelet Units Tests
Perfect-reconstruction, gradient, fusion and command-line test suite
"""

__version__ = "1.0.0"
