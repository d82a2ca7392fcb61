#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Transform Tests
ทดสอบการแปลง wavelet หนึ่งระดับแบบ 1D และ 2D
"""

import math
import os
import sys
import unittest

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.filterbanks.biorth_lattice import BiorthLatticeParams, synth_biorth
from src.filterbanks.errors import TransformError
from src.filterbanks.lifting import LiftingParams, synth_lifting
from src.filterbanks.orth_lattice import OrthLatticeParams, synth_orth
from src.transform.dwt import (Plane, SubbandSet, analyze_1d, analyze_2d, synthesize_1d,
                               synthesize_2d)

SQRT2 = math.sqrt(2.0)
HAAR = 1.0 / SQRT2


def haar_bank():
    return synth_orth(OrthLatticeParams((math.pi / 4,)))


def sample_banks(rng):
    """One random bank per family"""
    return [
        synth_orth(OrthLatticeParams(tuple(rng.uniform(-math.pi, math.pi, 3)))),
        synth_biorth(BiorthLatticeParams(tuple(rng.uniform(-0.5, 0.5, 3)))),
        synth_lifting(LiftingParams(tuple(rng.uniform(-1.0, 1.0, 2)))),
    ]


class TestAnalyze1D(unittest.TestCase):
    """ทดสอบ analyze_1d"""

    def setUp(self):
        self.bank = haar_bank()

    def test_constant_signal(self):
        low, high = analyze_1d(np.full(8, 3.0), self.bank)
        np.testing.assert_allclose(low, np.full(4, 3.0 * SQRT2), atol=1e-12)
        np.testing.assert_allclose(high, np.zeros(4), atol=1e-12)

    def test_impulse(self):
        x = np.zeros(8)
        x[0] = 1.0
        low, high = analyze_1d(x, self.bank)
        np.testing.assert_allclose(low, [HAAR, 0.0, 0.0, 0.0], atol=1e-15)
        np.testing.assert_allclose(high, [HAAR, 0.0, 0.0, 0.0], atol=1e-15)

    def test_alternating_signal(self):
        x = np.array([1.0, -1.0] * 4)
        low, high = analyze_1d(x, self.bank)
        np.testing.assert_allclose(low, np.zeros(4), atol=1e-12)
        np.testing.assert_allclose(np.abs(high), np.full(4, SQRT2), atol=1e-12)

    def test_odd_length(self):
        low, high = analyze_1d(np.arange(7.0), self.bank)
        self.assertEqual((low.size, high.size), (4, 4))

    def test_invalid_signal(self):
        with self.assertRaises(TransformError):
            analyze_1d([], self.bank)
        with self.assertRaises(TransformError):
            analyze_1d(np.zeros((2, 2)), self.bank)


class TestSynthesize1D(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(31)

    def test_round_trip_every_family(self):
        x = self.rng.uniform(-1.0, 1.0, 64)
        for bank in sample_banks(self.rng):
            low, high = analyze_1d(x, bank)
            y = synthesize_1d(low, high, bank)
            self.assertLessEqual(float(np.max(np.abs(y - x))), 1e-10, msg=bank.family.value)

    def test_odd_length_round_trip(self):
        x = self.rng.uniform(-1.0, 1.0, 13)
        for bank in sample_banks(self.rng):
            low, high = analyze_1d(x, bank)
            y = synthesize_1d(low, high, bank, length=13)
            np.testing.assert_allclose(y, x, atol=1e-10)

    def test_zero_inputs(self):
        y = synthesize_1d(np.zeros(5), np.zeros(5), haar_bank())
        np.testing.assert_array_equal(y, np.zeros(10))

    def test_low_only_constant(self):
        y = synthesize_1d(np.full(4, 2.0 * SQRT2), np.zeros(4), haar_bank())
        np.testing.assert_allclose(y, np.full(8, 2.0), atol=1e-12)

    def test_length_mismatch(self):
        with self.assertRaises(TransformError):
            synthesize_1d(np.zeros(4), np.zeros(3), haar_bank())
        with self.assertRaises(TransformError):
            synthesize_1d(np.zeros(4), np.zeros(4), haar_bank(), length=5)


class TestTransform2D(unittest.TestCase):
    """ทดสอบ analyze_2d / synthesize_2d"""

    def setUp(self):
        self.rng = np.random.default_rng(47)
        self.bank = haar_bank()

    def test_constant_plane(self):
        s = analyze_2d(np.full((6, 8), 0.5), self.bank)
        np.testing.assert_allclose(s.ll, np.full((3, 4), 1.0), atol=1e-12)
        for band in (s.hl, s.lh, s.hh):
            np.testing.assert_allclose(band, np.zeros((3, 4)), atol=1e-12)

    def test_vertical_stripes(self):
        plane = np.tile([1.0, -1.0], (8, 4))
        s = analyze_2d(plane, self.bank)
        self.assertAlmostEqual(float(np.sum(s.hl ** 2)), float(np.sum(plane ** 2)), places=9)
        for band in (s.ll, s.lh, s.hh):
            self.assertLess(float(np.max(np.abs(band))), 1e-12)

    def test_round_trip_every_family(self):
        plane = self.rng.uniform(-1.0, 1.0, (32, 32))
        for bank in sample_banks(self.rng):
            restored = synthesize_2d(analyze_2d(plane, bank), bank)
            self.assertIsInstance(restored, Plane)
            self.assertLessEqual(float(np.max(np.abs(restored.data - plane))), 1e-9)

    def test_odd_shape(self):
        plane = self.rng.uniform(0.0, 1.0, (7, 9))
        for bank in sample_banks(self.rng):
            s = analyze_2d(Plane(plane), bank)
            self.assertEqual(s.shape, (4, 5))
            self.assertEqual(s.original_shape, (7, 9))
            restored = synthesize_2d(s, bank)
            self.assertEqual(restored.shape, (7, 9))
            np.testing.assert_allclose(restored.data, plane, atol=1e-9)

    def test_single_pixel(self):
        s = analyze_2d(np.array([[2.0]]), self.bank)
        self.assertEqual(s.shape, (1, 1))
        self.assertAlmostEqual(float(synthesize_2d(s, self.bank).data[0, 0]), 2.0, places=12)

    def test_parseval_orthogonal(self):
        plane = self.rng.uniform(-1.0, 1.0, (16, 16))
        bank = synth_orth(OrthLatticeParams(tuple(self.rng.uniform(-math.pi, math.pi, 2))))
        s = analyze_2d(plane, bank)
        energy = sum(float(np.sum(band ** 2)) for band in s)
        self.assertAlmostEqual(energy / float(np.sum(plane ** 2)), 1.0, places=9)

    def test_transpose_swaps_detail_bands(self):
        plane = self.rng.uniform(-1.0, 1.0, (12, 10))
        for bank in sample_banks(self.rng):
            s = analyze_2d(plane, bank)
            t = analyze_2d(plane.T, bank)
            np.testing.assert_allclose(t.ll, s.ll.T, atol=1e-12)
            np.testing.assert_allclose(t.hl, s.lh.T, atol=1e-12)
            np.testing.assert_allclose(t.lh, s.hl.T, atol=1e-12)
            np.testing.assert_allclose(t.hh, s.hh.T, atol=1e-12)

    def test_single_subband_projection(self):
        for bank in sample_banks(self.rng):
            detail = self.rng.uniform(-1.0, 1.0, (8, 8))
            zeros = np.zeros((8, 8))
            s = SubbandSet(ll=zeros, hl=detail, lh=zeros, hh=zeros, original_shape=(16, 16))
            again = analyze_2d(synthesize_2d(s, bank), bank)
            np.testing.assert_allclose(again.hl, detail, atol=1e-9)
            for band in (again.ll, again.lh, again.hh):
                np.testing.assert_allclose(band, zeros, atol=1e-9)

    def test_zero_subbands(self):
        zeros = np.zeros((4, 4))
        s = SubbandSet(ll=zeros, hl=zeros, lh=zeros, hh=zeros, original_shape=(8, 8))
        np.testing.assert_array_equal(synthesize_2d(s, self.bank).data, np.zeros((8, 8)))

    def test_invalid_inputs(self):
        with self.assertRaises(TransformError):
            Plane(np.zeros((0, 4)))
        with self.assertRaises(TransformError):
            Plane(np.array([[1.0, np.nan]]))
        with self.assertRaises(TransformError):
            SubbandSet(ll=np.zeros((2, 2)), hl=np.zeros((2, 3)), lh=np.zeros((2, 2)),
                       hh=np.zeros((2, 2)), original_shape=(4, 4))
        with self.assertRaises(TransformError):
            SubbandSet(ll=np.zeros((2, 2)), hl=np.zeros((2, 2)), lh=np.zeros((2, 2)),
                       hh=np.zeros((2, 2)), original_shape=(6, 4))

    def test_plane_is_read_only(self):
        p = Plane(np.ones((2, 2)))
        with self.assertRaises(ValueError):
            p.data[0, 0] = 5.0


class TestPerfectReconstructionSweep(unittest.TestCase):
    """
    Round trips over every supported size of every family:
    orthogonal K = 0..3, biorthogonal N = 1..4 with |k| <= 0.5, lifting N = 1..8 with |a| <= 2
    """

    SIGNAL_DRAWS = 100
    PLANE_DRAWS = 25

    def setUp(self):
        self.rng = np.random.default_rng(548)

    def _configurations(self):
        for stages in range(1, 5):
            yield f'orth K={stages - 1}', lambda n=stages: synth_orth(
                OrthLatticeParams(tuple(self.rng.uniform(-math.pi, math.pi, n))))
        for stages in range(1, 5):
            yield f'biorth N={stages}', lambda n=stages: synth_biorth(
                BiorthLatticeParams(tuple(self.rng.uniform(-0.5, 0.5, n))))
        for steps in range(1, 9):
            yield f'lifting N={steps}', lambda n=steps: synth_lifting(
                LiftingParams(tuple(self.rng.uniform(-2.0, 2.0, n))))

    def test_signals(self):
        for label, make_bank in self._configurations():
            for _ in range(self.SIGNAL_DRAWS):
                bank = make_bank()
                x = self.rng.uniform(-1.0, 1.0, 64)
                low, high = analyze_1d(x, bank)
                error = float(np.max(np.abs(synthesize_1d(low, high, bank) - x)))
                self.assertLessEqual(error, 1e-10, msg=f'{label}: {bank.params}')

    def test_planes(self):
        for label, make_bank in self._configurations():
            for _ in range(self.PLANE_DRAWS):
                bank = make_bank()
                plane = self.rng.uniform(-1.0, 1.0, (32, 32))
                restored = synthesize_2d(analyze_2d(plane, bank), bank)
                error = float(np.max(np.abs(restored.data - plane)))
                self.assertLessEqual(error, 1e-9, msg=f'{label}: {bank.params}')


if __name__ == '__main__':
    unittest.main(verbosity=2)
