"""Generalized (h, phi)-entropies, spectra and separability."""

from ._core import (
    GptinfoError,
    StateSpace,
    accessible_info,
    classical_collapse_check,
    classical_entropy,
    eigen_spectrum,
    entropy_upper_bound,
    holevo_chi,
    is_separable,
    majorizes,
    max_tensor_member,
    pr_box,
    quantum_entropy,
    quantum_entropy_min_search,
    run_cli,
)

__all__ = [
    "GptinfoError",
    "StateSpace",
    "accessible_info",
    "classical_collapse_check",
    "classical_entropy",
    "eigen_spectrum",
    "entropy_upper_bound",
    "holevo_chi",
    "is_separable",
    "majorizes",
    "max_tensor_member",
    "pr_box",
    "quantum_entropy",
    "quantum_entropy_min_search",
    "run_cli",
]
