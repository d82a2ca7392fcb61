#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Subband Fusion (UwU downsampling)
รวม subband LL/HL/LH/HH ด้วย attention head เพื่อใช้แทน max-pooling

Features:
- Attention head: mean |subband| -> affine logits -> softmax weights
- Single-plane and per-channel downsampling operators
- Sum-of-squares demonstration loss with exact gradients for the bank
  parameters and the head parameters
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np

from ..filterbanks.banks import FilterBank
from ..filterbanks.errors import InvalidParameterError, TransformError
from ..filterbanks.initialization import synthesize
from ..transform.dwt import SUBBAND_NAMES, Plane, SubbandSet, analyze_2d
from ..tuning.grad_tune import grad_filters, subband_tap_vjp

logger = logging.getLogger(__name__)

NUM_SUBBANDS = len(SUBBAND_NAMES)


@dataclass(frozen=True)
class AttentionHeadParams:
    """Affine map from subband statistics to subband logits"""
    weight: np.ndarray
    bias: np.ndarray

    def __post_init__(self):
        weight = np.array(self.weight, dtype=np.float64)
        bias = np.array(self.bias, dtype=np.float64).ravel()
        if weight.shape != (NUM_SUBBANDS, NUM_SUBBANDS) or bias.shape != (NUM_SUBBANDS,):
            raise InvalidParameterError(f"attention head needs a 4x4 weight and 4 biases, "
                                        f"got {weight.shape} and {bias.shape}")
        if not (np.all(np.isfinite(weight)) and np.all(np.isfinite(bias))):
            raise InvalidParameterError("attention head entries must be finite")
        weight.setflags(write=False)
        bias.setflags(write=False)
        object.__setattr__(self, 'weight', weight)
        object.__setattr__(self, 'bias', bias)

    @classmethod
    def zeros(cls) -> 'AttentionHeadParams':
        """Uniform weights for every input"""
        return cls(np.zeros((NUM_SUBBANDS, NUM_SUBBANDS)), np.zeros(NUM_SUBBANDS))

    @classmethod
    def favoring(cls, band: str, gap: float) -> 'AttentionHeadParams':
        """Constant logit advantage ``gap`` for one subband"""
        bias = np.zeros(NUM_SUBBANDS)
        bias[SUBBAND_NAMES.index(band)] = gap
        return cls(np.zeros((NUM_SUBBANDS, NUM_SUBBANDS)), bias)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'AttentionHeadParams':
        try:
            return cls(data['weight'], data['bias'])
        except (KeyError, TypeError) as e:
            raise InvalidParameterError(f"attention head document needs 'weight' and 'bias': {e}") from e

    def to_dict(self) -> Dict[str, Any]:
        return {'weight': self.weight.tolist(), 'bias': self.bias.tolist()}


@dataclass(frozen=True)
class UwuGradient:
    """d loss / d (bank parameters, head weight, head bias)"""
    loss: float
    params: np.ndarray
    weight: np.ndarray
    bias: np.ndarray


def subband_statistics(s: SubbandSet) -> np.ndarray:
    """mean |sample| per subband, in LL, HL, LH, HH order"""
    return np.array([np.mean(np.abs(band)) for band in s.bands()])


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = np.exp(logits - np.max(logits))
    return shifted / np.sum(shifted)


def attention_weights(s: SubbandSet, p: AttentionHeadParams) -> np.ndarray:
    return softmax(p.weight @ subband_statistics(s) + p.bias)


def fuse(s: SubbandSet, p: AttentionHeadParams) -> Tuple[np.ndarray, np.ndarray]:
    """(fused plane, weights)"""
    weights = attention_weights(s, p)
    out = np.zeros(s.shape)
    for w, band in zip(weights, s.bands()):
        out += w * band
    return out, weights


def uwu_downsample(p: Plane, bank: FilterBank, head: AttentionHeadParams) -> Plane:
    """Stride-2 replacement for max pooling: ceil(H/2) x ceil(W/2) output"""
    subbands = analyze_2d(p, bank)
    out, weights = fuse(subbands, head)
    logger.debug(f"Attention weights (LL, HL, LH, HH): {np.round(weights, 6).tolist()}")
    return Plane(out)


def uwu_downsample_channels(stack: np.ndarray, bank: FilterBank, head: AttentionHeadParams) -> np.ndarray:
    """C x H x W -> C x ceil(H/2) x ceil(W/2), channels handled independently"""
    stack = np.asarray(stack, dtype=np.float64)
    if stack.ndim != 3 or stack.shape[0] == 0:
        raise TransformError(f"channel stack must be C x H x W with C >= 1, got shape {stack.shape}")
    return np.stack([uwu_downsample(Plane(channel), bank, head).data for channel in stack])


def uwu_loss(plane: Plane, params, head: AttentionHeadParams) -> float:
    """Sum of squared output samples of uwu_downsample"""
    out = uwu_downsample(plane, synthesize(params), head)
    return float(np.sum(out.data ** 2))


def grad_uwu(p: Plane, bank: FilterBank, head: AttentionHeadParams) -> UwuGradient:
    """
    ย้อนกลับ gradient ผ่าน fusion, softmax และ analysis filters

    Loss = sum(out^2), out = sum_i w_i S_i, w = softmax(W stats + b), stats_i = mean|S_i|.
    """
    data = p.data if isinstance(p, Plane) else Plane(p).data
    subbands = analyze_2d(data, bank)
    bands = subbands.bands()
    stats = subband_statistics(subbands)
    out, weights = fuse(subbands, head)
    loss = float(np.sum(out ** 2))

    upstream = 2.0 * out
    d_weights = np.array([np.sum(upstream * band) for band in bands])
    d_logits = weights * (d_weights - np.dot(weights, d_weights))
    d_weight = np.outer(d_logits, stats)
    d_bias = d_logits
    d_stats = head.weight.T @ d_logits

    cotangents = {}
    for i, (name, band) in enumerate(zip(SUBBAND_NAMES, bands)):
        cotangents[name] = weights[i] * upstream + d_stats[i] * np.sign(band) / band.size

    h0, h1 = bank.analysis_taps()
    g0, g1 = subband_tap_vjp(data, h0, h1, cotangents)
    d_params = grad_filters(bank.params).contract(g0, g1)

    return UwuGradient(loss=loss, params=d_params, weight=d_weight, bias=d_bias)
