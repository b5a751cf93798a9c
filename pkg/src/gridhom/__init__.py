"""Tilde and hat grid homology of MOY graphs."""

import os

# the TBB layer shipped in some environments is too old and only warns
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

__version__ = "0.1.0"
