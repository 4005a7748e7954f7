#!/usr/bin/env python3
"""
Run the homological algebra CLI

Usage:
  python scripts/run_cli.py lhs --group cyclic:4 --subgroup 0,2 --degree 5
  python scripts/run_cli.py oracle --group product:cyclic:2,cyclic:2 --degree 4

Outputs go where --out / --csv point (outputs/ by convention).
"""

import sys
from pathlib import Path

# Add project root to path
PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.cli import main

if __name__ == "__main__":
    main()
