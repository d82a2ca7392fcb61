#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Errors
ชุด exception ของไลบรารี filter bank

Every failure raised by the library derives from ``FilterBankError`` (a ``ValueError``),
so callers can catch one base class and still see the specific condition.
"""

from typing import Any, Optional


class FilterBankError(ValueError):
    """Base class for all filter bank failures"""


class InvalidParameterError(FilterBankError):
    """Parameter record or argument outside its admissible range"""


class EvenLengthRequiredError(FilterBankError):
    def __init__(self, num_taps: int):
        super().__init__(f"even length required (got {num_taps} taps)")
        self.num_taps = num_taps


class NotOrthogonalError(FilterBankError):
    def __init__(self, deviation: float, tol: float):
        super().__init__(f"not orthogonal (deviation {deviation:.3e} > tol {tol:.3e})")
        self.deviation = deviation
        self.tol = tol


class FactorizationBreakdownError(FilterBankError):
    def __init__(self, stage: int):
        super().__init__(f"factorization breakdown at stage {stage}")
        self.stage = stage


class SingularLatticeStageError(FilterBankError):
    def __init__(self, index: int, value: float):
        super().__init__(f"singular lattice stage: |k_{index}| = {abs(value)!r} is 1")
        self.index = index
        self.value = value


class NotPerfectReconstructionError(FilterBankError):
    def __init__(self, detail: str = ""):
        message = "not perfect-reconstruction"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class SingularPolyphaseError(FilterBankError):
    def __init__(self, determinant: float):
        super().__init__(f"singular polyphase (determinant {determinant:.3e})")
        self.determinant = determinant


class TransformError(FilterBankError):
    """Empty inputs or inconsistent lengths/dimensions in analysis or synthesis"""


class DivergenceError(FilterBankError):
    """Non-finite objective during tuning; ``report`` holds the partial trace"""

    def __init__(self, iteration: int, report: Optional[Any] = None):
        super().__init__(f"objective diverged (non-finite) at iteration {iteration}")
        self.iteration = iteration
        self.report = report


class FileFormatError(FilterBankError):
    """Unreadable, malformed or oversized input files"""
