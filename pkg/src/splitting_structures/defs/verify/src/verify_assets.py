"""
Dagster assets for running the verification suites on every fixture space.
"""
import json

import dagster as dg
import pandas as pd

from splitting_structures.defs.analyze.src.analyze_assets import load_fixture_spaces
from splitting_structures.defs.resources import AnalysisConfig
from splitting_structures.suites import SUITE_NAMES, run_suite


@dg.asset(
    deps=["generate_fixtures"],
    code_version="v1",
    description="Run the lemma, bound and order suites on every fixture space"
)
def verify_fixtures(analysis_config: AnalysisConfig) -> dg.MaterializeResult:
    """
    Run each suite on each fixture with the configured seed and sample count.

    Writes `<name>_<suite>.json` reports and a `violations.csv` listing every
    violation found (empty when everything holds).
    """
    input_folder = analysis_config.stage_dir("generate")
    output_folder = analysis_config.stage_dir("verify")

    checks_run = 0
    violations = []
    for name, S in load_fixture_spaces(input_folder).items():
        for suite in SUITE_NAMES:
            report = run_suite(
                S,
                suite,
                seed=analysis_config.seed,
                samples=analysis_config.samples,
                cap=analysis_config.family_cap,
                pair_cap=analysis_config.pair_cap,
            )
            (output_folder / f"{name}_{suite}.json").write_text(
                json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n", encoding="utf-8"
            )
            checks_run += len(report.checks)
            violations.extend(
                {"name": name, "suite": suite, "law": v["law"], "detail": json.dumps(v, sort_keys=True)}
                for v in report.violations
            )

    pd.DataFrame(violations, columns=["name", "suite", "law", "detail"]).to_csv(
        output_folder / "violations.csv", index=False
    )

    return dg.MaterializeResult(
        metadata={
            "input_from": str(input_folder),
            "output_to": str(output_folder),
            "num_checks": checks_run,
            "num_violations": len(violations),
        }
    )


@dg.asset_check(
    asset=verify_fixtures,
    description="No suite found a violation",
)
def no_violations_check(analysis_config: AnalysisConfig) -> dg.AssetCheckResult:

    violations_file = analysis_config.stage_dir("verify") / "violations.csv"
    if not violations_file.exists():
        return dg.AssetCheckResult(passed=False, metadata={"missing": str(violations_file)})

    df = pd.read_csv(violations_file)

    return dg.AssetCheckResult(
        passed=df.empty,
        metadata={"laws": sorted(df["law"].unique().tolist())}
    )
