"""
Tunable Wavelet Units - Utilities Module
Configuration management, logging, file formats and the reproducible RNG
"""

from .config_manager import ConfigManager
from .logger import LoggerContext, PerformanceTimer, UwuLogger, setup_logger
from .rng import Xorshift64Star

__all__ = ['ConfigManager', 'setup_logger', 'UwuLogger', 'LoggerContext', 'PerformanceTimer',
           'Xorshift64Star']
