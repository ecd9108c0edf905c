"""Egoists and cohesive groups deciding by alpha-majority on Gaussian proposals."""

from ._core import (
    __version__,
    approx,
    binomial_tail,
    estimate,
    exact,
    group_free_baseline,
    landmarks,
    min_votes,
    normal_cdf,
    normal_pdf,
    positive_part_mean,
    sweep,
)

__all__ = [
    "__version__",
    "approx",
    "binomial_tail",
    "estimate",
    "exact",
    "group_free_baseline",
    "landmarks",
    "min_votes",
    "normal_cdf",
    "normal_pdf",
    "positive_part_mean",
    "sweep",
]
