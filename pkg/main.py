#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Main Application Entry Point
รันคำสั่ง command line ของ Tunable Wavelet Units

Examples:
  python main.py synth orth --init db2 --out db2.yaml
  python main.py verify db2.yaml
"""

import sys

from src.cli.commands import main

if __name__ == "__main__":
    sys.exit(main())
