"""Exact Poincare series ``L_n(T)`` for the chromatic splitting conjecture.

Five independent routes compute ``L_n``; :func:`verify` cross-checks them
together with the counting, edge and ``epsilon`` laws.
"""

from .chromatic import (
    epsilon,
    l_closed_form,
    l_direct,
    l_genfun,
    l_recursive,
    spectrum_poincare,
    spectrum_summands,
    total_rank,
    unitary_poincare,
    verify,
)
from .exactpoly import Polynomial, monomial
from .kernels import BACKEND
from .useries import Series

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Polynomial",
    "Series",
    "epsilon",
    "l_closed_form",
    "l_direct",
    "l_genfun",
    "l_recursive",
    "monomial",
    "spectrum_poincare",
    "spectrum_summands",
    "total_rank",
    "unitary_poincare",
    "verify",
]
