#!/usr/bin/env python3
"""
Simple script to run the qdiff-lab command line.

Usage:
    python run_cli.py nrp "sigma^2 - (1+q^2*x)*sigma + q*x" --form sigma
    python run_cli.py catalog Bq --verify
    python run_cli.py size --catalog Eq --trunc 60 --svg output/size.svg

Reports are written to stdout as JSON; progress (with --verbose) and errors
go to stderr.
"""

import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from cli.cli import main  # noqa: E402

if __name__ == "__main__":
    main()
