#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Configuration Manager
ตัวจัดการการตั้งค่าระบบ

Features:
- YAML configuration file support
- Environment variable overrides (UWU_<SECTION>_<KEY>)
- Configuration validation
- Dynamic configuration reloading
"""

import copy
import logging
import math
import os
import re
from datetime import datetime
from typing import Any, Dict

import yaml

ENV_PREFIX = 'UWU_'

DEFAULT_CONFIG: Dict[str, Any] = {
    'app': {
        'name': 'Tunable Wavelet Units',
        'environment': 'development',
    },
    'logging': {
        'level': 'INFO',
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        'file': None,
        'error_file': None,
        'json_format': False,
        'max_size': '10MB',
        'backup_count': 5,
    },
    'lifting': {
        'max_recommended_steps': 8,
    },
    'tuning': {
        'omega_s': math.pi / 2,
        'num_samples': 512,
        'lr': 0.1,
        'iters': 200,
        'clamp': 0.99,
    },
    'verify': {
        'pr_tolerance': 1e-10,
        'orthogonality_tolerance': 1e-12,
        'mip_tolerance': 1e-12,
        'gradient_tolerance': 1e-5,
        'gradient_step': 1e-6,
        'signal_length': 64,
    },
    'cli': {
        'seed': 42,
        'max_pixels': 4096 * 4096,
    },
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Recursive dict merge; values from ``override`` win."""
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class ConfigManager:
    """
    ตัวจัดการการตั้งค่าระบบ
    รองรับการโหลดจากไฟล์ YAML และ environment variables
    """

    def __init__(self, config_path: str = 'config/config.yaml'):
        """เริ่มต้น Configuration Manager"""
        self.logger = logging.getLogger(__name__)
        self.config_path = config_path
        self.config: Dict[str, Any] = {}
        self.last_modified = None

        # โหลดการตั้งค่า
        self._load_config()

        # Override ด้วย environment variables
        self._apply_env_overrides()

        self.logger.debug(f"Configuration loaded from: {config_path}")

    def _load_config(self):
        """โหลดการตั้งค่าจากไฟล์ YAML (ไม่มีไฟล์ -> ใช้ค่าเริ่มต้น)"""
        try:
            if self.config_path and os.path.exists(self.config_path):
                current_modified = os.path.getmtime(self.config_path)

                if self.last_modified is None or current_modified > self.last_modified:
                    with open(self.config_path, 'r', encoding='utf-8') as file:
                        loaded = yaml.safe_load(file) or {}
                    self.config = _merge(DEFAULT_CONFIG, loaded)
                    self.last_modified = current_modified
                    self.logger.debug(f"Configuration reloaded from {self.config_path}")
            else:
                self.config = copy.deepcopy(DEFAULT_CONFIG)
                self.logger.debug(f"Config file not found, using defaults: {self.config_path}")

        except (OSError, yaml.YAMLError) as e:
            self.logger.error(f"Error loading config: {e}")
            self.config = copy.deepcopy(DEFAULT_CONFIG)

    def _apply_env_overrides(self):
        """ใช้ environment variables override การตั้งค่า"""
        for env_key, env_value in os.environ.items():
            if not env_key.startswith(ENV_PREFIX):
                continue
            # UWU_VERIFY_PR_TOLERANCE -> verify.pr_tolerance
            section, _, key = env_key[len(ENV_PREFIX):].lower().partition('_')
            if not section or not key:
                continue
            self._set_nested_value(self.config, f"{section}.{key}", env_value)
            self.logger.debug(f"Environment override: {section}.{key} = {env_value}")

    def _set_nested_value(self, config_dict: Dict[str, Any], key_path: str, value: str):
        """ตั้งค่าใน nested dictionary"""
        keys = key_path.split('.')
        current = config_dict
        for key in keys[:-1]:
            current = current.setdefault(key, {})
        current[keys[-1]] = self._convert_env_value(value)

    def _convert_env_value(self, value: str) -> Any:
        """แปลงค่าจาก environment variable เป็นประเภทที่เหมาะสม"""
        # Boolean values
        if value.lower() in ['true', 'false']:
            return value.lower() == 'true'

        # None/null values
        if value.lower() in ['none', 'null', '']:
            return None

        # Numbers
        if re.match(r'^-?\d+$', value):
            return int(value)

        if re.match(r'^-?(\d+\.\d*|\.\d+|\d+)([eE][-+]?\d+)?$', value):
            return float(value)

        # Lists (comma-separated)
        if ',' in value:
            return [item.strip() for item in value.split(',')]

        return value

    def get(self, key_path: str, default: Any = None) -> Any:
        """ดึงค่าการตั้งค่าด้วย dotted notation"""
        current = self.config
        for key in key_path.split('.'):
            if isinstance(current, dict) and key in current:
                current = current[key]
            else:
                return default
        return current

    def set(self, key_path: str, value: Any):
        """ตั้งค่าการตั้งค่าด้วย dotted notation"""
        keys = key_path.split('.')
        current = self.config
        for key in keys[:-1]:
            current = current.setdefault(key, {})
        current[keys[-1]] = value
        self.logger.debug(f"Configuration updated: {key_path} = {value}")

    def reload(self):
        """โหลดการตั้งค่าใหม่"""
        self.last_modified = None  # Force reload
        self._load_config()
        self._apply_env_overrides()
        self.logger.debug("Configuration reloaded successfully")

    def validate_config(self) -> Dict[str, Any]:
        """ตรวจสอบความถูกต้องของการตั้งค่า"""
        validation_result = {
            'valid': True,
            'errors': [],
            'warnings': []
        }

        def error(message: str):
            validation_result['errors'].append(message)
            validation_result['valid'] = False

        for section in ['logging', 'lifting', 'tuning', 'verify']:
            if section not in self.config:
                error(f"Missing required section: {section}")

        # tolerances: positive finite numbers
        tolerance_keys = [f'verify.{key}' for key in self.get_section('verify')
                           if key.endswith('tolerance') or key.endswith('step')]
        for key in tolerance_keys:
            value = self.get(key)
            if not isinstance(value, (int, float)) or isinstance(value, bool) \
                    or not math.isfinite(value) or value <= 0:
                error(f"Invalid tolerance: {key} = {value} (must be a positive finite number)")

        omega_s = self.get('tuning.omega_s')
        if not isinstance(omega_s, (int, float)) or not 0 < omega_s < math.pi:
            error(f"Invalid tuning.omega_s = {omega_s} (must lie in (0, pi))")

        num_samples = self.get('tuning.num_samples')
        if not isinstance(num_samples, int) or num_samples < 2:
            error(f"Invalid tuning.num_samples = {num_samples} (must be >= 2)")

        clamp = self.get('tuning.clamp')
        if not isinstance(clamp, (int, float)) or not 0 < clamp < 1:
            error(f"Invalid tuning.clamp = {clamp} (must lie in (0, 1))")

        max_steps = self.get('lifting.max_recommended_steps')
        if not isinstance(max_steps, int) or isinstance(max_steps, bool) or max_steps < 1:
            error(f"Invalid lifting.max_recommended_steps = {max_steps} (must be an integer >= 1)")

        if self.get('tuning.lr', 0) == 0:
            validation_result['warnings'].append("tuning.lr is 0: tune runs will not move")

        if isinstance(max_steps, int) and max_steps > 8:
            validation_result['warnings'].append(
                f"lifting.max_recommended_steps = {max_steps} is above the tested range")

        self.logger.debug(f"Configuration validation completed: "
                          f"{'VALID' if validation_result['valid'] else 'INVALID'}")
        return validation_result

    def get_section(self, section_name: str) -> Dict[str, Any]:
        """ดึงการตั้งค่าทั้งหมดใน section"""
        return self.config.get(section_name, {}) or {}

    def save_config(self):
        """บันทึกการตั้งค่าปัจจุบันลงไฟล์"""
        config_dir = os.path.dirname(self.config_path)
        if config_dir:
            os.makedirs(config_dir, exist_ok=True)
        with open(self.config_path, 'w', encoding='utf-8') as file:
            yaml.safe_dump(self.config, file, default_flow_style=False, indent=2)
        self.logger.info(f"Configuration saved to {self.config_path}")

    def get_config_summary(self) -> Dict[str, Any]:
        """ดึงสรุปการตั้งค่าสำหรับการแสดงผล"""
        return {
            'config_file': self.config_path,
            'last_modified': datetime.fromtimestamp(self.last_modified) if self.last_modified else None,
            'sections': list(self.config.keys()),
            'validation': self.validate_config(),
        }

    def __str__(self) -> str:
        return f"ConfigManager(config_path='{self.config_path}', sections={list(self.config.keys())})"

    def __repr__(self) -> str:
        return f"ConfigManager(config_path='{self.config_path}', config={self.config})"
