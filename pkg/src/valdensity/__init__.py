"""Exact valuations on finite lattices of subsets: Choquet integrals,
densities ``g·mu`` and Radon-Nikodym density synthesis."""

from .choquet import LscFunction, gmul, integrate, lsc_check
from .exreal import INF, ONE, ZERO, ExtValue
from .pervin import PervinSpace, close_lattice
from .radon import abs_continuous, density_oracle, density_synthesize, hahn_witness
from .valuation import SignedValuation, Valuation, dirac, dirac_combo, from_atom_weights, from_lattice_table

__version__ = "0.1.0"
