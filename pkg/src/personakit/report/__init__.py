from .bundle import build_report, tree_hash, write_atomic, write_tree
from .cards import render_cards
from .charts import (
    boxplot_figure,
    construct_figure,
    group_figure,
    render_boxplot_chart,
    render_construct_chart,
    render_group_chart,
)

__all__ = [
    "boxplot_figure",
    "build_report",
    "construct_figure",
    "group_figure",
    "render_boxplot_chart",
    "render_cards",
    "render_construct_chart",
    "render_group_chart",
    "tree_hash",
    "write_atomic",
    "write_tree",
]
