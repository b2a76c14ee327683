"""Entanglement entropy of free fermions, harmonic chains and ordered spin states."""

from .errors import (CapabilityError, DegenerateStateError, EntanglementError,
                     InputDomainError, NumericalContractError, OnCutError,
                     ResourceError, SpectrumRangeError)
from .fermion1d import build_correlation_matrix, entropy_scan, segment_entropy
from .fitting import ScalingFit, fit_area_log, fit_log

__version__ = "0.1.0"
