#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Verification Tests
ทดสอบ BankVerifier (check battery ของคำสั่ง verify)
"""

import os
import sys
import unittest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.filterbanks.biorth_lattice import BiorthLatticeParams
from src.filterbanks.initialization import init_params, synthesize
from src.utils.file_io import FilterSpecDocument
from src.verification.bank_verifier import DEFAULT_THRESHOLDS, BankVerifier


def document_for(family: str, scheme: str, size=None, seed: int = 42) -> FilterSpecDocument:
    bank = synthesize(init_params(family, scheme, size, seed))
    return FilterSpecDocument.from_bank(bank, seed=seed, init=scheme)


class TestBankVerifier(unittest.TestCase):
    """ทดสอบ BankVerifier"""

    def setUp(self):
        self.verifier = BankVerifier()

    def test_orthogonal_passes(self):
        result = self.verifier.run_checks(document_for('orth', 'db3'))
        self.assertTrue(result.passed, msg=result.failed_checks)
        names = [metric.name for metric in result.metrics]
        self.assertEqual(names, ['stored_taps', 'perfect_reconstruction', 'orthogonality', 'gradient'])

    def test_biorthogonal_passes(self):
        result = self.verifier.run_checks(document_for('biorth', 'random', 3))
        self.assertTrue(result.passed, msg=result.failed_checks)
        self.assertIn('mirror_image_pair', [metric.name for metric in result.metrics])

    def test_lifting_passes(self):
        result = self.verifier.run_checks(document_for('lifting', 'random', 4), seed=7)
        self.assertTrue(result.passed, msg=result.failed_checks)
        self.assertEqual(result.metadata['seed'], 7)
        self.assertEqual(result.metadata['num_params'], 4)

    def test_corrupted_taps_fail(self):
        document = document_for('orth', 'db2')
        document.h0[1] += 1e-3
        result = self.verifier.run_checks(document)
        self.assertFalse(result.passed)
        self.assertIn('stored_taps', result.failed_checks)
        self.assertIn('perfect_reconstruction', result.failed_checks)

    def test_corrupted_gain_fails(self):
        document = document_for('lifting', 'zeros', 2)
        document.gain = 2.0
        result = self.verifier.run_checks(document)
        self.assertIn('stored_taps', result.failed_checks)

    def test_singular_parameters_reported(self):
        document = document_for('biorth', 'zeros', 2)
        document.params = [0.0, 1.0]
        result = self.verifier.run_checks(document)
        self.assertFalse(result.passed)
        stored = result.metrics[0]
        self.assertEqual(stored.name, 'stored_taps')
        self.assertIn('error', stored.details)

    def test_round_off_floor_for_near_singular_lattice(self):
        bank = synthesize(BiorthLatticeParams((0.99, -0.99, 0.99, -0.99)))
        result = self.verifier.run_checks(FilterSpecDocument.from_bank(bank))
        reconstruction = result.metrics[1]
        self.assertEqual(reconstruction.name, 'perfect_reconstruction')
        self.assertTrue(reconstruction.passed, msg=reconstruction.description)
        self.assertGreater(reconstruction.threshold, DEFAULT_THRESHOLDS['pr_tolerance'])

    def test_well_conditioned_threshold_unchanged(self):
        for family, scheme, size in (('orth', 'db4', None), ('biorth', 'random', 4),
                                     ('lifting', 'random', 8)):
            bank = synthesize(init_params(family, scheme, size))
            self.assertEqual(self.verifier.reconstruction_threshold(bank),
                             DEFAULT_THRESHOLDS['pr_tolerance'], msg=family)

    def test_thresholds_from_config(self):
        verifier = BankVerifier({'pr_tolerance': 1e-6, 'signal_length': 32})
        self.assertEqual(verifier.thresholds['pr_tolerance'], 1e-6)
        self.assertEqual(verifier.thresholds['mip_tolerance'], DEFAULT_THRESHOLDS['mip_tolerance'])
        self.assertEqual(verifier.signal_length, 32)

    def test_report(self):
        passed = self.verifier.run_checks(document_for('orth', 'haar'))
        self.assertIn('Status: PASSED', self.verifier.generate_report(passed))

        document = document_for('orth', 'haar')
        document.f1[0] += 0.5
        failed = self.verifier.run_checks(document)
        report = self.verifier.generate_report(failed)
        self.assertIn('Status: FAILED', report)
        self.assertIn('stored_taps', report)


if __name__ == '__main__':
    unittest.main(verbosity=2)
