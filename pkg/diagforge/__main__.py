"""Runs the diagforge command line with `python -m diagforge`."""

import sys

from diagforge.cli import main

sys.exit(main())
