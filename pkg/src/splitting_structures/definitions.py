"""
Dagster entry point: every asset, check and resource found under defs/.
"""
from pathlib import Path

import dagster as dg

PACKAGE_ROOT = Path(__file__).parent


@dg.definitions
def defs() -> dg.Definitions:
    return dg.load_from_defs_folder(path_within_project=PACKAGE_ROOT)
