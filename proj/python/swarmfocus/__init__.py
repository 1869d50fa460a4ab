"""Coverage, clustering and dispatch of bearing-only agent swarms."""

from ._swarmfocus import (
    BoundsDomainError,
    ConfigError,
    SnapshotParseError,
    coverage,
    g_exact,
    g_lower,
    g_upper,
    grow_cluster,
    max_consensus,
    rect_bounds,
    replay,
    run,
    segmented_lower_bound,
)

__all__ = [
    "BoundsDomainError",
    "ConfigError",
    "SnapshotParseError",
    "coverage",
    "g_exact",
    "g_lower",
    "g_upper",
    "grow_cluster",
    "max_consensus",
    "rect_bounds",
    "replay",
    "run",
    "segmented_lower_bound",
]
