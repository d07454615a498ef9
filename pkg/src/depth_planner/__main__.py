"""Entry point for ``python -m depth_planner``."""

import sys

from .cli import main

sys.exit(main())
