"""Laplacian eigenbases, Fourier sums and low-pass projections."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..errors import BadCutoffError, CarrierMismatchError, ObjectNotInComplexError
from ..universe import EprComplex, serialize
from .jacobi import DEFAULT_MAX_SWEEPS, jacobi_eigh

DEGENERACY_TOL = 1e-8
SIGN_TOL = 1e-8
TIE_BREAK_TAG = (
    "blocks:|dl|<1e-8;basis:gram-schmidt of projected unit vectors in index order;"
    "sign:first |component|>1e-8 positive"
)


def carrier_id(e: EprComplex) -> str:
    return hashlib.sha256(serialize(e).encode()).hexdigest()[:16]


def laplacian(e: EprComplex) -> np.ndarray:
    """Combinatorial Laplacian ``D - A`` indexed by position in ``e.objects``."""
    n = len(e.objects)
    index = {o: i for i, o in enumerate(e.objects)}
    lap = np.zeros((n, n))
    for a, b in e.edges:
        i, j = index[a], index[b]
        lap[i, j] = lap[j, i] = -1.0
        lap[i, i] += 1.0
        lap[j, j] += 1.0
    return lap


@dataclass(frozen=True, eq=False)
class SpectralBasis:
    """Ascending eigenvalues with eigenvectors as the columns of ``vectors``."""

    eigenvalues: np.ndarray
    vectors: np.ndarray
    blocks: tuple[tuple[int, int], ...]
    carrier: EprComplex | None = None
    tie_break_tag: str = TIE_BREAK_TAG
    basis_id: str = field(default="")

    @property
    def dimension(self) -> int:
        return len(self.eigenvalues)

    def aligned_cutoff(self, k: int) -> int:
        """Smallest block boundary ``>= k``."""
        for start, stop in self.blocks:
            if start < k <= stop:
                return stop
        return k

    def to_dict(self, include_vectors: bool = False) -> dict:
        out = {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "blocks": [list(b) for b in self.blocks],
            "tie_break_tag": self.tie_break_tag,
        }
        if include_vectors:
            out["eigenvectors"] = [[float(x) for x in row] for row in self.vectors.T]
        return out


def _degenerate_blocks(values) -> list[tuple[int, int]]:
    blocks = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] >= DEGENERACY_TOL:
            blocks.append((start, i))
            start = i
    return blocks


def _canonical_block(vectors: np.ndarray) -> np.ndarray:
    # The eigenspace projector is basis independent, so Gram-Schmidt on the
    # projected unit vectors gives the same block whatever the solver returned.
    dim = vectors.shape[1]
    proj = vectors @ vectors.T
    out = []
    for j in range(proj.shape[0]):
        w = proj[:, j].copy()
        for _ in range(2):
            for u in out:
                w -= (u @ w) * u
        norm = np.linalg.norm(w)
        if norm > 1e-6:
            out.append(w / norm)
            if len(out) == dim:
                break
    return np.column_stack(out)


def _fix_sign(v: np.ndarray) -> np.ndarray:
    for x in v:
        if abs(x) > SIGN_TOL:
            return v if x > 0 else -v
    return v


def eigendecompose(matrix, max_sweeps: int = DEFAULT_MAX_SWEEPS,
                   carrier: EprComplex | None = None) -> SpectralBasis:
    values, vectors = jacobi_eigh(matrix, max_sweeps=max_sweeps)
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    blocks = _degenerate_blocks(values)
    out_vals = np.empty_like(values)
    out_vecs = np.empty_like(vectors)
    for start, stop in blocks:
        block = vectors[:, start:stop]
        if stop - start > 1:
            block = _canonical_block(block)
        for k in range(stop - start):
            out_vecs[:, start + k] = _fix_sign(block[:, k])
        out_vals[start:stop] = values[start:stop].mean()
    return SpectralBasis(out_vals, out_vecs, tuple(blocks), carrier,
                         basis_id=carrier_id(carrier) if carrier is not None else "")


@lru_cache(maxsize=64)
def spectral_basis(e: EprComplex) -> SpectralBasis:
    """Laplacian eigenbasis of ``e`` (cached; complexes are immutable)."""
    return eigendecompose(laplacian(e), carrier=e)


@dataclass(frozen=True, eq=False)
class StateVector:
    carrier: EprComplex
    amplitudes: np.ndarray

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> StateVector:
        return StateVector(self.carrier, self.amplitudes / self.norm)

    def probabilities(self) -> np.ndarray:
        return self.amplitudes ** 2


@dataclass(frozen=True, eq=False)
class FourierSum:
    coefficients: np.ndarray
    basis_ref: str


def delta_state(e: EprComplex, o: int) -> StateVector:
    if o not in e:
        raise ObjectNotInComplexError(f"object {o} not in complex")
    amps = np.zeros(len(e.objects))
    amps[e.objects.index(o)] = 1.0
    return StateVector(e, amps)


def uniform_state(e: EprComplex) -> StateVector:
    n = len(e.objects)
    return StateVector(e, np.full(n, 1.0 / np.sqrt(n)))


def _check_carrier(s: StateVector, basis: SpectralBasis):
    if basis.carrier is not None and s.carrier != basis.carrier:
        raise CarrierMismatchError("state and basis live on different carriers")
    if len(s.amplitudes) != basis.dimension:
        raise CarrierMismatchError("state dimension does not match basis")


def fourier_expand(s: StateVector, basis: SpectralBasis) -> FourierSum:
    _check_carrier(s, basis)
    return FourierSum(basis.vectors.T @ s.amplitudes, basis.basis_id)


def resum(f: FourierSum, basis: SpectralBasis, carrier: EprComplex | None = None) -> StateVector:
    if f.basis_ref != basis.basis_id:
        raise CarrierMismatchError("Fourier sum was expanded in a different basis")
    return StateVector(carrier if carrier is not None else basis.carrier,
                       basis.vectors @ f.coefficients)


def project(s: StateVector, basis: SpectralBasis, k: int, align: bool = True) -> np.ndarray:
    """Unnormalized reconstruction from the ``k`` lowest modes."""
    _check_carrier(s, basis)
    if not 1 <= k <= basis.dimension:
        raise BadCutoffError(f"cutoff {k} outside [1, {basis.dimension}]")
    if align:
        k = basis.aligned_cutoff(k)
    low = basis.vectors[:, :k]
    return low @ (low.T @ s.amplitudes)


def lowpass_project(s: StateVector, basis: SpectralBasis, k: int, align: bool = True) -> StateVector:
    """Keep the ``k`` lowest modes and renormalize.

    With ``align`` (the default) ``k`` is first rounded up to the end of its
    degenerate block, which makes the result independent of the choice of
    basis inside that block.
    """
    amps = project(s, basis, k, align)
    norm = np.linalg.norm(amps)
    if norm == 0.0:
        raise BadCutoffError("state has no weight on the retained modes")
    return StateVector(s.carrier, amps / norm)


def shannon_entropy(probabilities) -> float:
    """Entropy in bits; zero-probability entries contribute nothing."""
    p = np.asarray(probabilities, dtype=float)
    p = p[p > 0]
    return float(-(p * np.log2(p)).sum())
