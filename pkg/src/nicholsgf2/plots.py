"""PNG figures: Hilbert series bar charts and Dynkin diagrams."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .splitting import DynkinDiagram


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def hilbert_chart(dims: Sequence[int], path: str | Path, title: str = "", truncated: bool = False) -> Path:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(max(4.0, 0.35 * len(dims) + 2), 3.2))
    ax.bar(range(len(dims)), dims, color="#3b6ea8")
    ax.set_xlabel("degree")
    ax.set_ylabel("dim")
    if len(dims) <= 40:
        ax.set_xticks(range(len(dims)))
    note = " (truncated)" if truncated else f" (total {sum(dims)})"
    ax.set_title((title + note).strip())
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=110, metadata={"Software": None})
    plt.close(fig)
    return path


def dynkin_figure(diagram: DynkinDiagram, path: str | Path, title: str = "") -> Path:
    import networkx as nx

    plt = _pyplot()
    g = diagram.graph()
    pos = nx.circular_layout(g) if len(g) > 1 else {0: (0.0, 0.0)}
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    nx.draw_networkx_edges(g, pos, ax=ax, width=1.5)
    nx.draw_networkx_nodes(g, pos, ax=ax, node_color="white", edgecolors="black", node_size=420)
    names = diagram.names or [str(i) for i in range(len(diagram.vertices))]
    nx.draw_networkx_labels(g, pos, labels={i: names[i] for i in g}, ax=ax, font_size=7)
    for i, (x, y) in pos.items():
        ax.annotate(str(diagram.vertices[i]), (x, y), xytext=(0, 14), textcoords="offset points",
                    ha="center", fontsize=7, color="#a03030")
    nx.draw_networkx_edge_labels(g, pos, ax=ax, font_size=7,
                                 edge_labels={(i, j): str(e) for (i, j), e in diagram.edges.items()})
    ax.set_title(title)
    ax.axis("off")
    ax.margins(0.2)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=110, metadata={"Software": None})
    plt.close(fig)
    return path
