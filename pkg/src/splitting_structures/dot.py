"""
DOT rendering of a space, optionally annotated with a decomposition or an atlas.
"""
import graphviz

from splitting_structures.atlas import Atlas
from splitting_structures.order import Decomposition, OrderChart
from splitting_structures.space import Space, VertexSet


def _marked_and_charts(annotations: Decomposition | Atlas | None) -> tuple[VertexSet, tuple[OrderChart, ...]]:
    match annotations:
        case Decomposition(removed=removed, components=charts):
            return removed, charts
        case Atlas(charts=charts, uncovered=uncovered):
            return uncovered, charts
    return frozenset(), ()


def export_dot(S: Space, annotations: Decomposition | Atlas | None = None) -> str:
    """
    Undirected DOT source. Removed or uncovered points are filled; each
    chart domain becomes a cluster, a point shared by several charts going
    to the first of them.
    """
    dot = graphviz.Graph(comment=f"space on {S.n} points", strict=False)
    dot.attr(fontname="Arial")
    dot.attr("node", shape="circle", fontname="Arial")

    marked, charts = _marked_and_charts(annotations)
    placed: set[int] = set()
    for i, chart in enumerate(charts):
        members = [v for v in chart.sequence if v not in placed]
        if not members:
            continue
        with dot.subgraph(name=f"cluster_{i}") as cluster:
            cluster.attr(label=f"chart {i} (anchor {chart.anchor})", style="rounded", color="gray40")
            for v in members:
                cluster.node(str(v))
        placed.update(members)

    for v in sorted(S.vertices - placed):
        if v in marked:
            dot.node(str(v), style="filled", fillcolor="lightcoral")
        else:
            dot.node(str(v))

    for u, v in S.edges():
        dot.edge(str(u), str(v))
    return dot.source
