"""
Dagster assets for writing the fixture spaces and betweenness files.
"""
import dagster as dg

from splitting_structures.defs.resources import AnalysisConfig
from splitting_structures.generators import (
    BetweennessRelation,
    betweenness_of,
    gen_standard,
    restricted_interval_structure,
)
from splitting_structures.schema import dump_document
from splitting_structures.space import Space


def standard_fixtures() -> dict[str, Space]:
    """The named spaces every later stage runs on."""
    return {
        "path7": gen_standard("path", n=7),
        "path11": gen_standard("path", n=11),
        "path30": gen_standard("path", n=30),
        "cycle12": gen_standard("cycle", n=12, radii=(1, 2)),
        "cycle24": gen_standard("cycle", n=24, radii=(1, 2)),
        "star3x4": gen_standard("star", arms=3, length=4),
        "star3x6": gen_standard("star", arms=3, length=6),
        "theta4": gen_standard("theta", length=4),
        "tree20": gen_standard("random_tree", n=20, seed=7),
        "restricted20": restricted_interval_structure(20, 3),
    }


def betweenness_fixtures() -> dict[str, BetweennessRelation]:
    return {
        "order4": betweenness_of([0, 1, 2, 3]),
        "shuffled4": betweenness_of([0, 2, 1, 3]),
        "cyclic": BetweennessRelation.of(3, [(0, 2, 1), (1, 0, 2), (2, 1, 0)]),
    }


def _documents() -> dict[str, str]:
    texts = {f"{name}.json": dump_document(S.to_document()) for name, S in standard_fixtures().items()}
    texts |= {
        f"{name}.betweenness.json": dump_document(rel.to_document())
        for name, rel in betweenness_fixtures().items()
    }
    return texts


@dg.asset(
    code_version="v1",
    description="Write the standard fixture spaces and betweenness relations as JSON"
)
def generate_fixtures(analysis_config: AnalysisConfig) -> dg.MaterializeResult:
    """
    Build every standard fixture and write it to the generate output folder.

    Spaces are written as `<name>.json`, relations as `<name>.betweenness.json`.
    """
    output_folder = analysis_config.stage_dir("generate")

    documents = _documents()
    for filename, text in documents.items():
        (output_folder / filename).write_text(text, encoding="utf-8")

    spaces = standard_fixtures()
    return dg.MaterializeResult(
        metadata={
            "output_to": str(output_folder),
            "num_spaces": len(spaces),
            "num_relations": len(documents) - len(spaces),
            "largest_space": max(S.n for S in spaces.values()),
        }
    )


@dg.asset_check(
    asset=generate_fixtures,
    description="Regenerating the fixtures reproduces the written files byte for byte",
)
def fixtures_deterministic_check(analysis_config: AnalysisConfig) -> dg.AssetCheckResult:
    output_folder = analysis_config.stage_dir("generate")

    changed = [
        filename for filename, text in _documents().items()
        if not (output_folder / filename).exists()
        or (output_folder / filename).read_text(encoding="utf-8") != text
    ]

    return dg.AssetCheckResult(
        passed=not changed,
        metadata={"changed": changed}
    )
