"""
Tunable Wavelet Units - Verification Module
Check battery used by the ``verify`` command
"""

from .bank_verifier import BankVerifier, CheckMetric, VerificationResult

__all__ = ['BankVerifier', 'CheckMetric', 'VerificationResult']
