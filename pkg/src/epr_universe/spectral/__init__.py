"""Graph Laplacian eigenbases and the signal operations built on them."""
from .basis import (
    TIE_BREAK_TAG,
    FourierSum,
    SpectralBasis,
    StateVector,
    carrier_id,
    delta_state,
    eigendecompose,
    fourier_expand,
    laplacian,
    lowpass_project,
    project,
    resum,
    shannon_entropy,
    spectral_basis,
    uniform_state,
)
from .jacobi import jacobi_eigh

__all__ = [
    "TIE_BREAK_TAG", "FourierSum", "SpectralBasis", "StateVector", "carrier_id",
    "delta_state", "eigendecompose", "fourier_expand", "jacobi_eigh", "laplacian",
    "lowpass_project", "project", "resum", "shannon_entropy", "spectral_basis",
    "uniform_state",
]
