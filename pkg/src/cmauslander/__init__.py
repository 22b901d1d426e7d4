"""Exact computations with Gorenstein projective modules, tilting complexes and Auslander algebras.

Layers, from the bottom: `kernel` (exact matrices), `algebra`, `modules`,
`homalg`, `complexes` and `bimodules`, `tilt`, `pipeline`; `textio`,
`report` and `cli` form the file and command line surface.
"""
from pathlib import Path

__version__ = "0.1.0"

DATA_DIR = Path(__file__).parent / "data"
