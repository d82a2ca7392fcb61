#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Version Information
การจัดการข้อมูลเวอร์ชันของระบบ
"""

# Version information
__version__ = "1.0.0"
__author__ = "Tunable Wavelet Units Team"
__license__ = "MIT"

VERSION_PRERELEASE = None  # 'alpha', 'beta', 'rc'

TOOL_NAME = "uwu-filterbanks"


def get_version_string() -> str:
    """Version tag written into spec documents, e.g. ``uwu-filterbanks 1.0.0``"""
    version = __version__ if VERSION_PRERELEASE is None else f"{__version__}-{VERSION_PRERELEASE}"
    return f"{TOOL_NAME} {version}"
