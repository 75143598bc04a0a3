"""Exact gap spectra of Kronecker sequences on tori.

For a rational rotation vector alpha, a full-rank rational lattice, and a
horizon N, computes the N gap values (nearest positive orbit distances) in
the max, Euclidean, or Manhattan metric with exact rational arithmetic;
exposes the embedded-lattice ("slab") view whose window minima reproduce the
spectrum; checks the proven cap of 2^d + 1 distinct values; and searches for
instances attaining it.
"""

__version__ = "0.1.0"

from .gaps import (  # noqa: F401
    BoundCheck,
    GapSpectrum,
    KroneckerInstance,
    Lattice,
    Metric,
    check_gap_bound,
    gap_bound,
    gap_spectrum,
    lattice_points_near,
    manhattan_spectrum_by_map,
    point_gap,
    positive_torus_norm,
    torus_norm,
)
from .ratlin import rational, format_rational  # noqa: F401

__all__ = [
    "BoundCheck",
    "GapSpectrum",
    "KroneckerInstance",
    "Lattice",
    "Metric",
    "__version__",
    "check_gap_bound",
    "format_rational",
    "gap_bound",
    "gap_spectrum",
    "lattice_points_near",
    "manhattan_spectrum_by_map",
    "point_gap",
    "positive_torus_norm",
    "rational",
    "torus_norm",
]
