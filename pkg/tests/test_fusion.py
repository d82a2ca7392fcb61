#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Fusion Tests
ทดสอบ attention head, UwU downsampling และ gradient ของ demonstration loss
"""

import math
import os
import sys
import unittest

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.filterbanks.biorth_lattice import BiorthLatticeParams
from src.filterbanks.errors import InvalidParameterError, TransformError
from src.filterbanks.initialization import synthesize
from src.filterbanks.lifting import LiftingParams
from src.filterbanks.orth_lattice import OrthLatticeParams
from src.fusion.attention import (AttentionHeadParams, attention_weights, fuse, grad_uwu,
                                  subband_statistics, uwu_downsample, uwu_downsample_channels,
                                  uwu_loss)
from src.transform.dwt import Plane, analyze_2d
from src.tuning.grad_tune import relative_error

HAAR_PARAMS = OrthLatticeParams((math.pi / 4,))


def random_head(rng, scale: float = 0.5) -> AttentionHeadParams:
    return AttentionHeadParams(rng.normal(scale=scale, size=(4, 4)), rng.normal(scale=scale, size=4))


class TestAttentionHead(unittest.TestCase):
    """ทดสอบ attention weights"""

    def setUp(self):
        self.rng = np.random.default_rng(55)
        self.bank = synthesize(HAAR_PARAMS)

    def test_uniform_weights(self):
        s = analyze_2d(self.rng.uniform(size=(8, 8)), self.bank)
        np.testing.assert_allclose(attention_weights(s, AttentionHeadParams.zeros()), np.full(4, 0.25))

    def test_ll_favored_on_smooth_plane(self):
        s = analyze_2d(np.full((8, 8), 0.6), self.bank)
        head = AttentionHeadParams(np.eye(4), np.zeros(4))
        weights = attention_weights(s, head)
        self.assertEqual(int(np.argmax(weights)), 0)
        self.assertTrue(all(weights[0] > w for w in weights[1:]))

    def test_weights_form_distribution(self):
        for _ in range(10):
            s = analyze_2d(self.rng.normal(size=(6, 6)), self.bank)
            weights = attention_weights(s, random_head(self.rng, 3.0))
            self.assertTrue(np.all(weights > 0))
            self.assertAlmostEqual(float(np.sum(weights)), 1.0, delta=1e-12)

    def test_statistics(self):
        s = analyze_2d(np.full((4, 4), 1.0), self.bank)
        np.testing.assert_allclose(subband_statistics(s), [2.0, 0.0, 0.0, 0.0], atol=1e-12)

    def test_invalid_head(self):
        with self.assertRaises(InvalidParameterError):
            AttentionHeadParams(np.zeros((3, 4)), np.zeros(4))
        with self.assertRaises(InvalidParameterError):
            AttentionHeadParams(np.zeros((4, 4)), np.array([0.0, 0.0, np.inf, 0.0]))
        with self.assertRaises(InvalidParameterError):
            AttentionHeadParams.from_dict({'weight': np.zeros((4, 4)).tolist()})

    def test_dict_round_trip(self):
        head = random_head(self.rng)
        again = AttentionHeadParams.from_dict(head.to_dict())
        np.testing.assert_array_equal(again.weight, head.weight)
        np.testing.assert_array_equal(again.bias, head.bias)


class TestUwuDownsample(unittest.TestCase):
    """ทดสอบ UwU downsampling"""

    def setUp(self):
        self.rng = np.random.default_rng(66)
        self.bank = synthesize(HAAR_PARAMS)

    def test_constant_plane(self):
        out = uwu_downsample(Plane(np.full((8, 8), 0.8)), self.bank, AttentionHeadParams.zeros())
        np.testing.assert_allclose(out.data, np.full((4, 4), 0.4), atol=1e-12)

    def test_shape_contract(self):
        for height, width in ((1, 1), (1, 2), (3, 5), (16, 16), (32, 32), (33, 17)):
            out = uwu_downsample(self.rng.uniform(size=(height, width)), self.bank,
                                 AttentionHeadParams.zeros())
            self.assertEqual(out.shape, ((height + 1) // 2, (width + 1) // 2))

    def test_convex_envelope(self):
        plane = self.rng.normal(size=(12, 10))
        s = analyze_2d(plane, self.bank)
        out, _ = fuse(s, random_head(self.rng, 2.0))
        stacked = np.stack(s.bands())
        self.assertTrue(np.all(out <= stacked.max(axis=0) + 1e-12))
        self.assertTrue(np.all(out >= stacked.min(axis=0) - 1e-12))

    def test_shape_contract_every_family(self):
        banks = [synthesize(HAAR_PARAMS),
                 synthesize(BiorthLatticeParams((0.3, -0.2))),
                 synthesize(LiftingParams((0.25, -0.5)))]
        head = random_head(self.rng)
        for bank in banks:
            for height in range(1, 34):
                for width in range(1, 34):
                    out = uwu_downsample(self.rng.uniform(size=(height, width)), bank, head)
                    self.assertEqual(out.shape, ((height + 1) // 2, (width + 1) // 2),
                                     msg=f'{bank.family.value} {height}x{width}')

    def test_convex_envelope_random_planes(self):
        for _ in range(100):
            height, width = (int(n) for n in self.rng.integers(1, 33, size=2))
            s = analyze_2d(self.rng.normal(size=(height, width)), self.bank)
            out, weights = fuse(s, random_head(self.rng, 2.0))
            stacked = np.stack(s.bands())
            self.assertAlmostEqual(float(np.sum(weights)), 1.0, delta=1e-12)
            self.assertTrue(np.all(out <= stacked.max(axis=0) + 1e-12))
            self.assertTrue(np.all(out >= stacked.min(axis=0) - 1e-12))

    def test_saturated_head_selects_ll(self):
        plane = self.rng.normal(size=(10, 10))
        s = analyze_2d(plane, self.bank)
        out = uwu_downsample(plane, self.bank, AttentionHeadParams.favoring('ll', 40.0))
        np.testing.assert_allclose(out.data, s.ll, atol=1e-12)

    def test_channels(self):
        stack = self.rng.uniform(size=(3, 5, 6))
        head = random_head(self.rng)
        out = uwu_downsample_channels(stack, self.bank, head)
        self.assertEqual(out.shape, (3, 3, 3))
        for c in range(3):
            np.testing.assert_array_equal(out[c], uwu_downsample(stack[c], self.bank, head).data)
        with self.assertRaises(TransformError):
            uwu_downsample_channels(np.zeros((4, 4)), self.bank, head)


class TestGradUwu(unittest.TestCase):
    """ตรวจ gradient ของ demonstration loss ด้วย central differences"""

    STEP = 1e-5

    def setUp(self):
        self.rng = np.random.default_rng(88)

    def _numeric_params(self, plane, params, head):
        values = np.array(params.values)
        numeric = np.zeros(values.size)
        for p in range(values.size):
            plus, minus = values.copy(), values.copy()
            plus[p] += self.STEP
            minus[p] -= self.STEP
            numeric[p] = (uwu_loss(plane, params.with_values(plus), head)
                          - uwu_loss(plane, params.with_values(minus), head)) / (2 * self.STEP)
        return numeric

    def _numeric_head(self, plane, params, head):
        d_weight = np.zeros((4, 4))
        d_bias = np.zeros(4)
        for i in range(4):
            for j in range(5):
                plus_w, minus_w = head.weight.copy(), head.weight.copy()
                plus_b, minus_b = head.bias.copy(), head.bias.copy()
                if j < 4:
                    plus_w[i, j] += self.STEP
                    minus_w[i, j] -= self.STEP
                else:
                    plus_b[i] += self.STEP
                    minus_b[i] -= self.STEP
                diff = (uwu_loss(plane, params, AttentionHeadParams(plus_w, plus_b))
                        - uwu_loss(plane, params, AttentionHeadParams(minus_w, minus_b))) / (2 * self.STEP)
                if j < 4:
                    d_weight[i, j] = diff
                else:
                    d_bias[i] = diff
        return d_weight, d_bias

    def _check(self, params):
        plane = Plane(self.rng.normal(size=(16, 16)))
        head = random_head(self.rng)
        grad = grad_uwu(plane, synthesize(params), head)
        self.assertAlmostEqual(grad.loss, uwu_loss(plane, params, head), places=10)

        numeric = self._numeric_params(plane, params, head)
        self.assertLessEqual(relative_error(grad.params, numeric, floor=1e-6), 1e-4,
                             msg=f"{params.family.value}: {grad.params} vs {numeric}")
        d_weight, d_bias = self._numeric_head(plane, params, head)
        self.assertLessEqual(relative_error(grad.weight, d_weight, floor=1e-6), 1e-4)
        self.assertLessEqual(relative_error(grad.bias, d_bias, floor=1e-6), 1e-4)

    def test_orthogonal(self):
        self._check(OrthLatticeParams(tuple(self.rng.uniform(-math.pi, math.pi, 2))))

    def test_biorthogonal(self):
        self._check(BiorthLatticeParams(tuple(self.rng.uniform(-0.5, 0.5, 2))))

    def test_lifting(self):
        self._check(LiftingParams(tuple(self.rng.uniform(-1.0, 1.0, 2))))

    def test_bias_gradient_sums_to_zero(self):
        grad = grad_uwu(Plane(self.rng.normal(size=(8, 8))), synthesize(HAAR_PARAMS),
                        random_head(self.rng))
        self.assertAlmostEqual(float(np.sum(grad.bias)), 0.0, delta=1e-10)

    def test_zero_plane(self):
        grad = grad_uwu(Plane(np.zeros((8, 8))), synthesize(HAAR_PARAMS), random_head(self.rng))
        self.assertEqual(grad.loss, 0.0)
        np.testing.assert_array_equal(grad.params, np.zeros(1))
        np.testing.assert_array_equal(grad.weight, np.zeros((4, 4)))
        np.testing.assert_array_equal(grad.bias, np.zeros(4))


if __name__ == '__main__':
    unittest.main(verbosity=2)
