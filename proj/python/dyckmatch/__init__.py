from ._core import (
    GAMMA_E,
    Error,
    OptimalEnumerator,
    chi2_uniformity,
    classify,
    cost,
    count,
    decode,
    entropy,
    enumerate_optimal,
    gf_series,
    h_lb,
    heights,
    is_optimal,
    moment,
    parse_path,
    path_to_string,
    predicted_constants,
    predicted_moment,
    sample_path,
    sample_stats,
    tn_count,
    variance_quadrature,
)

__version__ = "0.1.0"

__all__ = [
    "GAMMA_E",
    "Error",
    "OptimalEnumerator",
    "chi2_uniformity",
    "classify",
    "cost",
    "count",
    "decode",
    "entropy",
    "enumerate_optimal",
    "gf_series",
    "h_lb",
    "heights",
    "is_optimal",
    "moment",
    "parse_path",
    "path_to_string",
    "predicted_constants",
    "predicted_moment",
    "sample_path",
    "sample_stats",
    "tn_count",
    "variance_quadrature",
]
