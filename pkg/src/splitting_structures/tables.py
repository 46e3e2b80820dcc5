"""
Tabular views of analysis results, for CSV output and report payloads.
"""
import pandas as pd

from splitting_structures.order import OrderChart
from splitting_structures.space import Space
from splitting_structures.splitting import FlatWitness, is_locally_flat, sim_classes


def split_table(S: Space) -> pd.DataFrame:
    """One row per point: split count, flatness and the flatness witness [a, b, U]."""
    ground = S.vertices
    rows = []
    for x in sorted(ground):
        profile = sim_classes(S, ground, x)
        flat = is_locally_flat(S, ground, x)
        witness = [flat.a, flat.b, flat.U] if isinstance(flat, FlatWitness) else None
        rows.append({
            "point": x,
            "degree": len(S.neighbors(x)),
            "split_count": profile.count,
            "locally_flat": witness is not None,
            "witness": witness,
        })
    return pd.DataFrame(rows, columns=["point", "degree", "split_count", "locally_flat", "witness"])


def split_histogram(table: pd.DataFrame) -> dict[str, int]:
    counts = table.groupby("split_count").size()
    return {str(k): int(v) for k, v in counts.items()}


def chart_table(charts: tuple[OrderChart, ...] | list[OrderChart]) -> pd.DataFrame:
    """Long format: one row per (chart, point) with the point's rank."""
    rows = [
        {"chart": i, "anchor": chart.anchor, "point": v, "rank": chart.rank[v]}
        for i, chart in enumerate(charts)
        for v in chart.sequence
    ]
    return pd.DataFrame(rows, columns=["chart", "anchor", "point", "rank"])
