"""Spectra of weighted hypergraph tensors via homotopy continuation."""
from .hypergraph import WeightedHypergraph, hyperflower, validate
from .tensor import HypergraphTensor, build, contract, residual
from .system import EigenSystem, assemble
from .spectra import (
    PathResult,
    SolveOptions,
    SpectrumReport,
    classify,
    geometric_multiplicity,
    h_eigen_search,
    matrix_oracle,
    solve,
    spectral_radius_nonneg,
    spectrum,
)

__version__ = "0.1.0"
