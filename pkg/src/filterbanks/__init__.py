"""
Tunable Wavelet Units - Filter Banks
FIR algebra, lattice and lifting constructions, initialization schemes
"""

from .banks import (Family, FilterBank, distortion_and_alias, polyphase_matrix,
                    reconstruction_gain_delay, synthesis_from_polyphase)
from .biorth_lattice import (BiorthLatticeParams, BiorthSynthesis, check_mirror_image_pair,
                             derive_biorth_synthesis, synth_biorth)
from .errors import (DivergenceError, EvenLengthRequiredError, FactorizationBreakdownError,
                     FileFormatError, FilterBankError, InvalidParameterError,
                     NotOrthogonalError, NotPerfectReconstructionError,
                     SingularLatticeStageError, SingularPolyphaseError, TransformError)
from .fir_poly import FirFilter, PolyMatrix2x2, dtft, freq_response
from .initialization import (PRESETS, init_params, load_wavelet_table, params_from_values,
                             preset, resolve_family, synthesize)
from .lifting import LiftingParams, lifting_step_poly, lifting_tap_count, synth_lifting
from .orth_lattice import (OrthLatticeParams, check_double_shift_orthogonality,
                           dc_gain_deviation, derive_orth_synthesis, factor_orth, synth_orth)

__all__ = [
    'FirFilter', 'PolyMatrix2x2', 'dtft', 'freq_response',
    'Family', 'FilterBank', 'polyphase_matrix', 'synthesis_from_polyphase',
    'distortion_and_alias', 'reconstruction_gain_delay',
    'OrthLatticeParams', 'synth_orth', 'derive_orth_synthesis', 'factor_orth',
    'check_double_shift_orthogonality', 'dc_gain_deviation',
    'BiorthLatticeParams', 'BiorthSynthesis', 'synth_biorth', 'derive_biorth_synthesis',
    'check_mirror_image_pair',
    'LiftingParams', 'lifting_step_poly', 'lifting_tap_count', 'synth_lifting',
    'PRESETS', 'init_params', 'load_wavelet_table', 'params_from_values', 'preset',
    'resolve_family', 'synthesize',
    'FilterBankError', 'InvalidParameterError', 'EvenLengthRequiredError', 'NotOrthogonalError',
    'FactorizationBreakdownError', 'SingularLatticeStageError', 'NotPerfectReconstructionError',
    'SingularPolyphaseError', 'TransformError', 'DivergenceError', 'FileFormatError',
]
