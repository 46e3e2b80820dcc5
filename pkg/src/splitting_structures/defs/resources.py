"""
Dagster resources for the splitting structures pipeline.
"""
from pathlib import Path

import dagster as dg
from dagster import ConfigurableResource
from pyprojroot.here import here


class AnalysisConfig(ConfigurableResource):
    """Where stage outputs go and the knobs shared by every stage."""

    output_root: str = ""
    seed: int = 42
    samples: int = 200
    family_cap: int = 100_000
    pair_cap: int = 500

    def stage_dir(self, stage: str) -> Path:
        """defs/<stage>/output/, or <output_root>/<stage>/ when a root is set."""
        if self.output_root:
            folder = Path(self.output_root) / stage
        else:
            folder = here(f"src/splitting_structures/defs/{stage}/output/")
        folder.mkdir(parents=True, exist_ok=True)
        return folder


@dg.definitions
def resources():
    return dg.Definitions(
        resources={
            "analysis_config": AnalysisConfig(),
        }
    )
