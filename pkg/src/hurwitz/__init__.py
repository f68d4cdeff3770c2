"""Exact Hurwitz numbers in low genus.

Four independent routes (closed-form generating series, explicit coefficient
formulas, the cut-and-join recursion, brute-force factorization counts) plus
the machinery that checks the closed forms.
"""
from .foundation import Partition, make_partition, partitions_up_to, theta
from .genfun import build_F, fit_K, mu, mu_single_part
from .cutjoin import HurwitzTable, hurwitz_table
from .factorize import mu_via_factorizations
from .closedform import mu2_explicit, mu2_unramified

__version__ = "0.1.0"

__all__ = [
    "Partition", "make_partition", "partitions_up_to", "theta",
    "build_F", "fit_K", "mu", "mu_single_part",
    "HurwitzTable", "hurwitz_table", "mu_via_factorizations",
    "mu2_explicit", "mu2_unramified",
]
