"""Spectral test for positive partial transpose under every NxM decomposition."""

__version__ = "0.1.0"

from .core import (
    Spectrum,
    haar_unitary,
    is_psd,
    partial_transpose,
    singular_values,
    sym_eigenvalues,
    validate_spectrum,
)
from .errors import AbsPPTError
from .lmi import ABS_PPT, NOT_ABS_PPT, Verdict, certify_abs_ppt, closed_form_p2, lambda_matrix, lmi_p3
from .oracle import build_counterexample, random_falsify
from .orderings import OrderingPair, enumerate_sigma, extend_ordering, realizable
