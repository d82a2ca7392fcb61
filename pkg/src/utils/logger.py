#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Logger
ตัวจัดการการ logging

Features:
- Colored console output on stderr (stdout stays free for reports)
- Structured logging with JSON format
- Optional rotating log files
- Context-aware logging
- Performance logging
- Check / tuning progress helpers
"""

import copy
import json
import logging
import logging.handlers
import os
import sys
import threading
import time
import traceback
from datetime import datetime
from typing import Any, Dict, Optional


class UwuLogger:
    """
    Logger wrapper สำหรับ command line และ library
    ตั้งค่า handler ครั้งเดียวต่อชื่อ logger
    """

    def __init__(self, name: str, config: Dict[str, Any] = None):
        """เริ่มต้น Logger"""
        self.name = name
        self.config = config or {}
        self.logger = logging.getLogger(name)
        self.context: Dict[str, Any] = {}
        self.performance_data: Dict[str, Dict[str, Any]] = {}

        self._setup_logger()

    @property
    def _settings(self) -> Dict[str, Any]:
        return self.config.get('logging', {}) or {}

    def _setup_logger(self):
        """ตั้งค่า logger ตามการตั้งค่า"""
        # ป้องกันการตั้งค่าซ้ำ
        if self.logger.handlers:
            return

        log_level = str(self._settings.get('level', 'INFO')).upper()
        self.logger.setLevel(getattr(logging, log_level, logging.INFO))

        formatter = self._create_formatter()

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        self.logger.addHandler(console_handler)

        log_file = self._settings.get('file')
        if log_file:
            file_handler = self._create_file_handler(log_file)
            file_handler.setFormatter(self._create_formatter(colored=False))
            self.logger.addHandler(file_handler)

        error_file = self._settings.get('error_file')
        if error_file:
            error_handler = self._create_file_handler(error_file)
            error_handler.setLevel(logging.ERROR)
            error_handler.setFormatter(self._create_formatter(colored=False))
            self.logger.addHandler(error_handler)

        self.logger.propagate = False

    def _create_formatter(self, colored: bool = True) -> logging.Formatter:
        """สร้าง formatter สำหรับ log messages"""
        log_format = self._settings.get('format') or \
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

        if self._settings.get('json_format', False):
            return JsonFormatter()
        if colored:
            return ColoredFormatter(log_format)
        return logging.Formatter(log_format)

    def _create_file_handler(self, log_file: str) -> logging.Handler:
        """สร้าง file handler พร้อม rotation"""
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)

        max_size = self._parse_size(str(self._settings.get('max_size', '10MB')))
        backup_count = int(self._settings.get('backup_count', 5))
        return logging.handlers.RotatingFileHandler(
            log_file, maxBytes=max_size, backupCount=backup_count, encoding='utf-8'
        )

    @staticmethod
    def _parse_size(size_str: str) -> int:
        """แปลงขนาดไฟล์จาก string เป็น bytes"""
        size_str = size_str.strip().upper()
        for suffix, factor in (('KB', 1024), ('MB', 1024 ** 2), ('GB', 1024 ** 3)):
            if size_str.endswith(suffix):
                return int(float(size_str[:-2]) * factor)
        return int(size_str)

    def set_level(self, level: str):
        self.logger.setLevel(getattr(logging, level.upper(), logging.INFO))

    def set_context(self, **kwargs):
        """ตั้งค่า context สำหรับ logging"""
        self.context.update(kwargs)

    def clear_context(self):
        self.context.clear()

    def debug(self, message: str, extra: Dict[str, Any] = None):
        self._log(logging.DEBUG, message, extra)

    def info(self, message: str, extra: Dict[str, Any] = None):
        self._log(logging.INFO, message, extra)

    def warning(self, message: str, extra: Dict[str, Any] = None):
        self._log(logging.WARNING, message, extra)

    def error(self, message: str, extra: Dict[str, Any] = None, exc_info: bool = False):
        self._log(logging.ERROR, message, extra, exc_info)

    def _log(self, level: int, message: str, extra: Dict[str, Any] = None, exc_info: bool = False):
        """Internal log method"""
        log_extra = self.context.copy()
        if extra:
            log_extra.update(extra)
        log_extra['thread_name'] = threading.current_thread().name
        self.logger.log(level, message, extra=log_extra, exc_info=exc_info)

    def log_exception(self, message: str = "Exception occurred", extra: Dict[str, Any] = None):
        """Log exception พร้อม stack trace"""
        exc_type, exc_value, exc_traceback = sys.exc_info()
        if exc_type is None:
            return

        log_extra = extra.copy() if extra else {}
        log_extra.update({
            'exception_type': exc_type.__name__,
            'exception_message': str(exc_value),
            'stack_trace': traceback.format_tb(exc_traceback)
        })
        self.error(message, log_extra, exc_info=True)

    def start_performance_timer(self, operation_name: str):
        """เริ่มต้นการวัดเวลา"""
        self.performance_data[operation_name] = {'start_time': time.perf_counter()}
        self.debug(f"Started performance timer: {operation_name}")

    def end_performance_timer(self, operation_name: str, extra: Dict[str, Any] = None) -> Optional[float]:
        """สิ้นสุดการวัดเวลา"""
        start_data = self.performance_data.pop(operation_name, None)
        if start_data is None:
            self.warning(f"Performance timer not found: {operation_name}")
            return None

        duration = time.perf_counter() - start_data['start_time']
        log_extra = extra.copy() if extra else {}
        log_extra.update({'operation_name': operation_name, 'duration_seconds': duration})
        self.debug(f"Performance: {operation_name} completed in {duration:.3f}s", log_extra)
        return duration

    def log_check(self, check_name: str, value: float, threshold: float, passed: bool,
                  details: Dict[str, Any] = None):
        """Log ผลการตรวจสอบ filter bank หนึ่งรายการ"""
        log_extra = {
            'check_name': check_name,
            'check_value': value,
            'check_threshold': threshold,
            'passed': passed,
            'category': 'verification'
        }
        if details:
            log_extra.update(details)

        level = logging.INFO if passed else logging.ERROR
        status = 'passed' if passed else 'FAILED'
        self._log(level, f"Check {check_name}: {value:.3e} (threshold {threshold:.1e}) {status}", log_extra)

    def log_tune_step(self, iteration: int, objective: float, details: Dict[str, Any] = None):
        """Log ค่า objective ระหว่างการ tune"""
        log_extra = {'iteration': iteration, 'objective': objective, 'category': 'tuning'}
        if details:
            log_extra.update(details)
        self.debug(f"Tune iteration {iteration}: objective = {objective:.12g}", log_extra)


class JsonFormatter(logging.Formatter):
    """JSON formatter สำหรับ structured logging"""

    RESERVED = {'name', 'msg', 'args', 'levelname', 'levelno', 'pathname', 'filename', 'module',
                'exc_info', 'exc_text', 'stack_info', 'lineno', 'funcName', 'created', 'msecs',
                'relativeCreated', 'thread', 'threadName', 'processName', 'process', 'message',
                'taskName'}

    def format(self, record: logging.LogRecord) -> str:
        """Format log record เป็น JSON"""
        log_entry = {
            'timestamp': datetime.fromtimestamp(record.created).isoformat(),
            'level': record.levelname,
            'logger': record.name,
            'message': record.getMessage(),
            'module': record.module,
            'function': record.funcName,
            'line': record.lineno
        }

        for key, value in record.__dict__.items():
            if key not in self.RESERVED:
                log_entry[key] = value

        if record.exc_info:
            log_entry['exception'] = self.formatException(record.exc_info)

        return json.dumps(log_entry, ensure_ascii=False, default=str)


class ColoredFormatter(logging.Formatter):
    """Colored formatter สำหรับ console output"""

    COLORS = {
        'DEBUG': '\033[36m',      # Cyan
        'INFO': '\033[32m',       # Green
        'WARNING': '\033[33m',    # Yellow
        'ERROR': '\033[31m',      # Red
        'CRITICAL': '\033[35m'    # Magenta
    }

    RESET = '\033[0m'

    def format(self, record: logging.LogRecord) -> str:
        # the record is shared with other handlers
        record = copy.copy(record)
        if record.levelname in self.COLORS:
            record.levelname = f"{self.COLORS[record.levelname]}{record.levelname}{self.RESET}"
        return super().format(record)


def setup_logger(name: str, config: Dict[str, Any] = None) -> UwuLogger:
    """สร้าง logger ใหม่"""
    return UwuLogger(name, config)


class LoggerContext:
    """Context manager สำหรับ logging"""

    def __init__(self, logger: UwuLogger, **context):
        self.logger = logger
        self.context = context
        self.original_context = None

    def __enter__(self):
        self.original_context = self.logger.context.copy()
        self.logger.set_context(**self.context)
        return self.logger

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.logger.context = self.original_context
        if exc_type is not None:
            self.logger.log_exception(f"Exception in context: {exc_type.__name__}")


class PerformanceTimer:
    """Context manager สำหรับการวัดเวลา"""

    def __init__(self, logger: UwuLogger, operation_name: str, **extra):
        self.logger = logger
        self.operation_name = operation_name
        self.extra = extra
        self.duration: Optional[float] = None

    def __enter__(self):
        self.logger.start_performance_timer(self.operation_name)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.duration = self.logger.end_performance_timer(self.operation_name, self.extra)
