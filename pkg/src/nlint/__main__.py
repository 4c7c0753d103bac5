"""Module entry point so python -m nlint behaves like the console script."""

from __future__ import annotations

import sys

from .cli import main

sys.exit(main())
