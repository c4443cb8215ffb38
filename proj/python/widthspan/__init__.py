"""Low-stretch spanning trees from linear arrangements and tree decompositions."""

from ._core import (
    Arrangement,
    DistributionReport,
    Graph,
    ParseError,
    StretchReport,
    ValidationError,
    __version__,
    build_tree,
    cutwidth_tree,
    dp_min_stretch,
    enumerate_min_stretch,
    expected_stretch_oracle,
    explicit_distribution,
    generate,
    run_suite,
    sampled_distribution,
    spanning_tree_count,
    stretch_of,
    widths,
)

__all__ = [
    "Arrangement",
    "DistributionReport",
    "Graph",
    "ParseError",
    "StretchReport",
    "ValidationError",
    "__version__",
    "build_tree",
    "cutwidth_tree",
    "dp_min_stretch",
    "enumerate_min_stretch",
    "expected_stretch_oracle",
    "explicit_distribution",
    "generate",
    "run_suite",
    "sampled_distribution",
    "spanning_tree_count",
    "stretch_of",
    "widths",
]
