"""
Tunable Wavelet Units - Main Package
Tunable wavelet filter banks with exact perfect reconstruction

Features:
- Orthogonal lattice, biorthogonal lattice (type A) and lifting-scheme banks
- One-level 1D / separable 2D analysis and synthesis
- Analytic parameter gradients, stopband-energy tuning
- Attention-weighted subband fusion (UwU downsampling)
- Command line with reproducible file formats
"""

import logging

from .utils.version import __author__, __license__, __version__

__description__ = "Tunable wavelet filter banks and learnable wavelet downsampling"

__all__ = ['__version__', '__author__', '__license__', '__description__']

# The command line attaches handlers; library use stays silent by default.
logging.getLogger(__name__).addHandler(logging.NullHandler())
