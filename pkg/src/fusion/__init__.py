"""
Tunable Wavelet Units - Fusion Module
Attention-weighted subband fusion (the UwU downsampling operator)
"""

from .attention import (AttentionHeadParams, UwuGradient, attention_weights, fuse, grad_uwu,
                        subband_statistics, uwu_downsample, uwu_downsample_channels, uwu_loss)

__all__ = ['AttentionHeadParams', 'UwuGradient', 'attention_weights', 'fuse', 'grad_uwu',
           'subband_statistics', 'uwu_downsample', 'uwu_downsample_channels', 'uwu_loss']
