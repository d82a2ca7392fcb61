"""
Tunable Wavelet Units - Command Line Module
"""

from .commands import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, build_parser, main

__all__ = ['build_parser', 'main', 'EXIT_OK', 'EXIT_FAILURE', 'EXIT_USAGE']
