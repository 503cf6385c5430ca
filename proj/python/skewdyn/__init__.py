"""Polynomial skew products: Newton polygons, weighted Green functions, Bottcher coordinates."""

from ._core import (
    Map,
    analyze,
    bottcher,
    classify,
    green,
    newton_polygon,
    render,
    verify,
    verify_invariance,
)

__all__ = [
    "Map",
    "analyze",
    "bottcher",
    "classify",
    "green",
    "newton_polygon",
    "render",
    "verify",
    "verify_invariance",
]
__version__ = "1.0.0"
