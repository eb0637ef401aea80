"""Multi-dimensional discrete prolate matrices and their eigenvalue spectra."""

__version__ = "0.1.0"

from .errors import CapacityError, ContractError, DimensionError, DomainError, ParameterError
from .prolate import ProlateParams, kernel_table, prolate_matrix_1d, prolate_matrix_md
from .spectral import (
    Spectrum,
    count_above,
    count_report,
    count_transition,
    multiplicity_report,
    spectrum_1d,
    spectrum_md,
)

__all__ = [
    "__version__",
    "CapacityError",
    "ContractError",
    "DimensionError",
    "DomainError",
    "ParameterError",
    "ProlateParams",
    "Spectrum",
    "count_above",
    "count_report",
    "count_transition",
    "kernel_table",
    "multiplicity_report",
    "prolate_matrix_1d",
    "prolate_matrix_md",
    "spectrum_1d",
    "spectrum_md",
]
