"""Unit disk graphs in the Euclidean and hyperbolic plane.

Geometry of the hyperboloid and Klein models, line arrangement combinatorics,
the gadget reduction from simple stretchability, certificate checks, the
Euclidean-to-hyperbolic scaling embedding, bisector extraction and a
numerical realization search.
"""
from .arrangement import (
    ChordArrangement,
    CombinatorialDescription,
    DegenerateArrangementError,
    OrientedLine,
    chords_to_euclidean,
    enumerate_cells,
    euclidean_to_chords,
    is_simple,
    random_simple_arrangement,
    sign_vector,
)
from .embed import EmbedResult, scale_embed
from .estimator import UnitDiskRealizer
from .extract import BisectorLine, bisector, extract_description, side_of
from .hypgeo import HPoint, KPoint, PolarPoint, convert, hyp_distance, minkowski_b
from .reduction import LabeledGraph, build_gd
from .solver import SolverConfig, penalty, solve_realization
from .witness import Realization, ThresholdInterval, interval_to_radius, verify_hudg, verify_udg

__version__ = "0.1.0"

__all__ = [
    "BisectorLine",
    "ChordArrangement",
    "CombinatorialDescription",
    "DegenerateArrangementError",
    "EmbedResult",
    "HPoint",
    "KPoint",
    "LabeledGraph",
    "OrientedLine",
    "PolarPoint",
    "Realization",
    "SolverConfig",
    "ThresholdInterval",
    "UnitDiskRealizer",
    "bisector",
    "build_gd",
    "chords_to_euclidean",
    "convert",
    "enumerate_cells",
    "euclidean_to_chords",
    "extract_description",
    "hyp_distance",
    "interval_to_radius",
    "is_simple",
    "minkowski_b",
    "penalty",
    "random_simple_arrangement",
    "scale_embed",
    "side_of",
    "sign_vector",
    "solve_realization",
    "verify_hudg",
    "verify_udg",
]
