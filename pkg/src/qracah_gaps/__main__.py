"""Module for running the qracah-gaps command line interface with python -m qracah_gaps."""
import sys

from qracah_gaps.cli import main

sys.exit(main())
