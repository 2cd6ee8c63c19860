#!/usr/bin/env python3
"""
Gauss Sum Command Line
Main entry point using modular architecture
"""

import sys

from gausssum import run_cli

if __name__ == '__main__':
    sys.exit(run_cli(sys.argv[1:]))
