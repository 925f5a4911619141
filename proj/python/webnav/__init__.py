"""Web navigation models: PageRank, BookRank and ABC agents, request-log
sessionization, and heavy-tailed traffic statistics."""

from ._webnav import (
    BookmarkList,
    ConfigError,
    DataError,
    Graph,
    IoError,
    ParseError,
    PowerLawFit,
    ProtocolError,
    StatisticsError,
    WebnavError,
    __version__,
    ccdf,
    compare_runs,
    fit_power_law,
    generate_scale_free,
    ingest,
    ks_statistic,
    load_edge_list,
    log_histogram,
    save_edge_list,
    sessionize,
    shannon_entropy,
    simulate,
)

__all__ = [
    "BookmarkList",
    "ConfigError",
    "DataError",
    "Graph",
    "IoError",
    "ParseError",
    "PowerLawFit",
    "ProtocolError",
    "StatisticsError",
    "WebnavError",
    "__version__",
    "ccdf",
    "compare_runs",
    "fit_power_law",
    "generate_scale_free",
    "ingest",
    "ks_statistic",
    "load_edge_list",
    "log_histogram",
    "save_edge_list",
    "sessionize",
    "shannon_entropy",
    "simulate",
]
