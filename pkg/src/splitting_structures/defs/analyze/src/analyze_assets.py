"""
Dagster assets for analyzing the fixture spaces: split tables, decompositions,
atlases and recovered orders, written as CSV.
"""
from pathlib import Path

import dagster as dg
import pandas as pd

from splitting_structures.atlas import CyclicOrder, build_atlas, circular_order
from splitting_structures.defs.resources import AnalysisConfig
from splitting_structures.dot import export_dot
from splitting_structures.errors import AnalysisFailure, InputError
from splitting_structures.generators import BetweennessRelation, from_betweenness
from splitting_structures.order import decompose
from splitting_structures.schema import load_betweenness_file, load_space_file
from splitting_structures.space import Space, max_basis_boundary, space_from_document
from splitting_structures.suites import check_separation_oracle
from splitting_structures.tables import chart_table, split_table

BETWEENNESS_SUFFIX = ".betweenness.json"


def load_fixture_spaces(folder: Path) -> dict[str, Space]:
    """Every space file in folder, keyed by file stem; unreadable files are skipped."""
    spaces = {}
    for path in sorted(folder.glob("*.json")):
        if path.name.endswith(BETWEENNESS_SUFFIX):
            continue
        try:
            spaces[path.stem] = space_from_document(load_space_file(path))
        except InputError as e:
            dg.get_dagster_logger().warning(f"Failed to load {path.name}: {e}")
    return spaces


@dg.asset(
    deps=["generate_fixtures"],
    code_version="v1",
    description="Split tables, decompositions and atlases of every fixture space"
)
def analyze_fixtures(analysis_config: AnalysisConfig) -> dg.MaterializeResult:
    """
    Analyze each fixture space.

    Writes per space: `<name>_splits.csv`, `<name>_charts.csv` (decomposition
    charts), `<name>_atlas.csv` and `<name>.dot`; plus one `summary.csv`.
    """
    log = dg.get_dagster_logger()
    input_folder = analysis_config.stage_dir("generate")
    output_folder = analysis_config.stage_dir("analyze")

    summary = []
    for name, S in load_fixture_spaces(input_folder).items():
        table = split_table(S)
        table.to_csv(output_folder / f"{name}_splits.csv", index=False)

        row = {
            "name": name,
            "n": S.n,
            "edges": S.edge_count,
            "K": max_basis_boundary(S),
            "splitting_points": int((table["split_count"] >= 2).sum()),
            "non_flat": int((~table["locally_flat"]).sum()),
        }

        annotations = None
        try:
            decomposition = decompose(S, S.vertices)
        except AnalysisFailure as e:
            log.warning(f"Failed to decompose {name}: {e}")
            row["components"] = None
        else:
            chart_table(decomposition.components).to_csv(output_folder / f"{name}_charts.csv", index=False)
            row["components"] = len(decomposition.components)
            annotations = decomposition

        try:
            atlas = build_atlas(S, S.vertices)
        except AnalysisFailure as e:
            log.warning(f"Failed to build an atlas for {name}: {e}")
            row.update(charts=None, uncovered=None, cyclic=False)
        else:
            chart_table(atlas.charts).to_csv(output_folder / f"{name}_atlas.csv", index=False)
            row.update(
                charts=len(atlas.charts),
                uncovered=len(atlas.uncovered),
                cyclic=isinstance(circular_order(S, atlas), CyclicOrder),
            )
            if not row["components"]:
                annotations = atlas

        (output_folder / f"{name}.dot").write_text(export_dot(S, annotations), encoding="utf-8")
        summary.append(row)

    df_summary = pd.DataFrame(summary)
    df_summary.to_csv(output_folder / "summary.csv", index=False)

    return dg.MaterializeResult(
        metadata={
            "input_from": str(input_folder),
            "output_to": str(output_folder),
            "num_spaces": len(summary),
            "num_cyclic": int(df_summary["cyclic"].sum()) if summary else 0,
        }
    )


@dg.asset_check(
    asset=analyze_fixtures,
    description="Splitting classes agree with a union-find oracle on every fixture",
)
def separation_oracle_check(analysis_config: AnalysisConfig) -> dg.AssetCheckResult:

    input_folder = analysis_config.stage_dir("generate")

    mismatches = {}
    for name, S in load_fixture_spaces(input_folder).items():
        report = check_separation_oracle(S)
        if not report.passed:
            mismatches[name] = [v["point"] for v in report.violations]

    return dg.AssetCheckResult(
        passed=not mismatches,
        metadata={"mismatches": mismatches}
    )


@dg.asset(
    deps=["generate_fixtures"],
    code_version="v1",
    description="Recover total orders from the betweenness fixtures"
)
def recover_orders(analysis_config: AnalysisConfig) -> dg.MaterializeResult:
    """
    Decode every `<name>.betweenness.json` and write `betweenness.csv` with
    one row per relation: whether it is realizable and the recovered order.
    """
    input_folder = analysis_config.stage_dir("generate")
    output_folder = analysis_config.stage_dir("analyze")

    rows = []
    for path in sorted(input_folder.glob(f"*{BETWEENNESS_SUFFIX}")):
        name = path.name.removesuffix(BETWEENNESS_SUFFIX)
        rel = BetweennessRelation.from_document(load_betweenness_file(path))
        try:
            _, chart = from_betweenness(rel)
        except AnalysisFailure as e:
            rows.append({"name": name, "points": rel.n, "realizable": False, "order": None, "reason": str(e)})
        else:
            order = " ".join(str(v) for v in chart.sequence)
            rows.append({"name": name, "points": rel.n, "realizable": True, "order": order, "reason": None})

    pd.DataFrame(rows, columns=["name", "points", "realizable", "order", "reason"]).to_csv(
        output_folder / "betweenness.csv", index=False
    )

    return dg.MaterializeResult(
        metadata={
            "input_from": str(input_folder),
            "output_to": str(output_folder),
            "num_relations": len(rows),
            "num_realizable": sum(r["realizable"] for r in rows),
        }
    )
