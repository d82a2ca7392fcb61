#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Utility Tests
ทดสอบ ConfigManager, Logger, ตัวสร้างเลขสุ่ม และข้อมูลเวอร์ชัน
"""

import json
import logging
import math
import os
import shutil
import sys
import tempfile
import unittest
from unittest.mock import patch

import yaml

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.utils.config_manager import DEFAULT_CONFIG, ConfigManager
from src.utils.logger import (ColoredFormatter, JsonFormatter, LoggerContext, PerformanceTimer,
                              UwuLogger, setup_logger)
from src.utils.rng import MASK64, Xorshift64Star, splitmix64
from src.utils.version import TOOL_NAME, __version__, get_version_string


class TestConfigManager(unittest.TestCase):
    """ทดสอบ Configuration Manager"""

    def setUp(self):
        """ตั้งค่าก่อนแต่ละการทดสอบ"""
        self.test_dir = tempfile.mkdtemp()
        self.config_path = os.path.join(self.test_dir, 'config.yaml')

        test_config = {
            'app': {'environment': 'test'},
            'tuning': {'lr': 0.05, 'iters': 10},
            'verify': {'pr_tolerance': 1e-9},
        }
        with open(self.config_path, 'w', encoding='utf-8') as f:
            yaml.dump(test_config, f)

        self.config_manager = ConfigManager(self.config_path)

    def tearDown(self):
        """ทำความสะอาดหลังแต่ละการทดสอบ"""
        if os.path.exists(self.test_dir):
            shutil.rmtree(self.test_dir)

    def test_get_config_value(self):
        self.assertEqual(self.config_manager.get('app.environment'), 'test')
        self.assertEqual(self.config_manager.get('tuning.lr'), 0.05)
        self.assertEqual(self.config_manager.get('verify.pr_tolerance'), 1e-9)
        self.assertIsNone(self.config_manager.get('non.existent.key'))
        self.assertEqual(self.config_manager.get('non.existent.key', 'default'), 'default')

    def test_defaults_merged(self):
        self.assertEqual(self.config_manager.get('tuning.num_samples'), 512)
        self.assertAlmostEqual(self.config_manager.get('tuning.omega_s'), math.pi / 2)
        self.assertEqual(self.config_manager.get('cli.seed'), 42)
        self.assertEqual(DEFAULT_CONFIG['tuning']['lr'], 0.1)

    def test_missing_file_uses_defaults(self):
        manager = ConfigManager(os.path.join(self.test_dir, 'missing.yaml'))
        self.assertEqual(manager.get('tuning.lr'), DEFAULT_CONFIG['tuning']['lr'])
        self.assertTrue(manager.validate_config()['valid'])

    def test_set_config_value(self):
        self.config_manager.set('tuning.iters', 500)
        self.assertEqual(self.config_manager.get('tuning.iters'), 500)
        self.config_manager.set('new.section.value', 'test')
        self.assertEqual(self.config_manager.get('new.section.value'), 'test')

    def test_validate_config(self):
        result = self.config_manager.validate_config()
        self.assertTrue(result['valid'], msg=result['errors'])

        self.config_manager.set('tuning.omega_s', 4.0)
        self.config_manager.set('verify.pr_tolerance', -1.0)
        result = self.config_manager.validate_config()
        self.assertFalse(result['valid'])
        self.assertEqual(len(result['errors']), 2)

    def test_step_limit_validated(self):
        self.config_manager.set('lifting.max_recommended_steps', 0)
        self.assertFalse(self.config_manager.validate_config()['valid'])
        self.config_manager.set('lifting.max_recommended_steps', 12)
        result = self.config_manager.validate_config()
        self.assertTrue(result['valid'])
        self.assertTrue(any('max_recommended_steps' in warning for warning in result['warnings']))

    def test_zero_lr_warning(self):
        self.config_manager.set('tuning.lr', 0)
        result = self.config_manager.validate_config()
        self.assertTrue(result['valid'])
        self.assertTrue(any('tuning.lr' in warning for warning in result['warnings']))

    def test_get_config_summary(self):
        summary = self.config_manager.get_config_summary()
        self.assertEqual(summary['config_file'], self.config_path)
        self.assertIn('tuning', summary['sections'])
        self.assertIn('validation', summary)

    def test_save_and_reload(self):
        self.config_manager.set('tuning.iters', 77)
        self.config_manager.save_config()
        self.config_manager.set('tuning.iters', 1)
        self.config_manager.reload()
        self.assertEqual(self.config_manager.get('tuning.iters'), 77)

    @patch.dict(os.environ, {'UWU_TUNING_LR': '0.25', 'UWU_VERIFY_PR_TOLERANCE': '1e-8',
                             'UWU_CLI_SEED': '7', 'UWU_LOGGING_JSON_FORMAT': 'true'})
    def test_environment_override(self):
        config_manager = ConfigManager(self.config_path)
        self.assertEqual(config_manager.get('tuning.lr'), 0.25)
        self.assertEqual(config_manager.get('verify.pr_tolerance'), 1e-8)
        self.assertEqual(config_manager.get('cli.seed'), 7)
        self.assertIs(config_manager.get('logging.json_format'), True)


class TestLogger(unittest.TestCase):
    """ทดสอบ Logger"""

    def setUp(self):
        self.test_dir = tempfile.mkdtemp()
        self.names = []

    def tearDown(self):
        for name in self.names:
            logger = logging.getLogger(name)
            for handler in list(logger.handlers):
                handler.close()
                logger.removeHandler(handler)
        if os.path.exists(self.test_dir):
            shutil.rmtree(self.test_dir)

    def _logger(self, name: str, **settings) -> UwuLogger:
        self.names.append(name)
        return setup_logger(name, {'logging': settings})

    def test_file_handlers(self):
        log_file = os.path.join(self.test_dir, 'logs', 'uwu.log')
        error_file = os.path.join(self.test_dir, 'logs', 'errors.log')
        logger = self._logger('uwu.test.files', level='DEBUG', file=log_file, error_file=error_file)
        logger.info('bank synthesized')
        logger.error('check failed')
        for handler in logger.logger.handlers:
            handler.flush()
        with open(log_file, 'r', encoding='utf-8') as handle:
            content = handle.read()
        self.assertIn('bank synthesized', content)
        with open(error_file, 'r', encoding='utf-8') as handle:
            errors = handle.read()
        self.assertIn('check failed', errors)
        self.assertNotIn('bank synthesized', errors)

    def test_handlers_set_once(self):
        first = self._logger('uwu.test.once')
        count = len(first.logger.handlers)
        setup_logger('uwu.test.once')
        self.assertEqual(len(logging.getLogger('uwu.test.once').handlers), count)

    def test_json_formatter(self):
        record = logging.LogRecord('uwu', logging.INFO, __file__, 1, 'objective %s', ('0.5',), None)
        record.iteration = 3
        entry = json.loads(JsonFormatter().format(record))
        self.assertEqual(entry['message'], 'objective 0.5')
        self.assertEqual(entry['level'], 'INFO')
        self.assertEqual(entry['iteration'], 3)

    def test_colored_formatter_keeps_record(self):
        record = logging.LogRecord('uwu', logging.WARNING, __file__, 1, 'careful', (), None)
        text = ColoredFormatter('%(levelname)s %(message)s').format(record)
        self.assertIn('\033[33m', text)
        self.assertEqual(record.levelname, 'WARNING')

    def test_context(self):
        logger = self._logger('uwu.test.context')
        logger.set_context(command='verify')
        with LoggerContext(logger, family='lifting'):
            self.assertEqual(logger.context, {'command': 'verify', 'family': 'lifting'})
        self.assertEqual(logger.context, {'command': 'verify'})

    def test_performance_timer(self):
        logger = self._logger('uwu.test.timer', level='DEBUG')
        with PerformanceTimer(logger, 'analyze') as timer:
            sum(range(1000))
        self.assertIsNotNone(timer.duration)
        self.assertGreaterEqual(timer.duration, 0.0)
        self.assertIsNone(logger.end_performance_timer('never-started'))

    def test_check_and_tune_helpers(self):
        logger = self._logger('uwu.test.helpers', level='DEBUG')
        with self.assertLogs('uwu.test.helpers', level='DEBUG') as captured:
            logger.log_check('orthogonality', 1e-16, 1e-12, True)
            logger.log_check('stored_taps', 1e-3, 1e-12, False)
            logger.log_tune_step(5, 0.125)
        self.assertEqual([r.levelname for r in captured.records], ['INFO', 'ERROR', 'DEBUG'])
        self.assertIn('FAILED', captured.records[1].getMessage())

    def test_parse_size(self):
        self.assertEqual(UwuLogger._parse_size('10MB'), 10 * 1024 ** 2)
        self.assertEqual(UwuLogger._parse_size('512KB'), 512 * 1024)
        self.assertEqual(UwuLogger._parse_size('2048'), 2048)


class TestXorshift(unittest.TestCase):
    """ทดสอบ xorshift64*"""

    def test_reproducible(self):
        first = Xorshift64Star(42)
        second = Xorshift64Star(42)
        self.assertEqual([first.next_u64() for _ in range(10)], [second.next_u64() for _ in range(10)])

    def test_seeds_differ(self):
        self.assertNotEqual(Xorshift64Star(1).next_u64(), Xorshift64Star(2).next_u64())

    def test_zero_seed(self):
        rng = Xorshift64Star(0)
        self.assertNotEqual(rng.state, 0)
        self.assertNotEqual(rng.next_u64(), 0)

    def test_ranges(self):
        rng = Xorshift64Star(3)
        values = [rng.random() for _ in range(1000)]
        self.assertTrue(all(0.0 <= v < 1.0 for v in values))
        self.assertTrue(all(0 <= rng.next_u64() <= MASK64 for _ in range(100)))
        uniform = rng.uniform_list(100, -0.5, 0.5)
        self.assertTrue(all(-0.5 <= v < 0.5 for v in uniform))

    def test_uniform_array(self):
        array = Xorshift64Star(9).uniform_array((3, 4))
        self.assertEqual(array.shape, (3, 4))
        self.assertTrue(((array >= -1.0) & (array < 1.0)).all())

    def test_splitmix_mixes(self):
        self.assertNotEqual(splitmix64(0), 0)
        self.assertNotEqual(splitmix64(1), splitmix64(2))


class TestVersion(unittest.TestCase):

    def test_version_string(self):
        self.assertEqual(get_version_string(), f"uwu-filterbanks {__version__}")
        self.assertTrue(get_version_string().startswith(TOOL_NAME))


if __name__ == '__main__':
    unittest.main(verbosity=2)
