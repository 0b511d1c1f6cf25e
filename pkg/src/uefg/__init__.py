"""Exact spectra of unitary finite-Euclidean graphs T_n^(d) over Z_n^d."""

from .cyclo import CycNum, root_of_unity
from .nt_kernel import FactoredInt, factor, jacobi, subsets
from .spectra import (
    BudgetExceeded,
    GraphParams,
    LatticeVector,
    SpectrumReport,
    conjecture_sweep,
    lambda_closed,
    lambda_oracle,
    spectrum,
    vector,
)

__all__ = [
    "BudgetExceeded", "CycNum", "FactoredInt", "GraphParams", "LatticeVector",
    "SpectrumReport", "conjecture_sweep", "factor", "jacobi", "lambda_closed",
    "lambda_oracle", "root_of_unity", "spectrum", "subsets", "vector",
]
__version__ = "0.1.0"
