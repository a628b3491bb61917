"""Distance and expansion diagnostics on a decaying basis."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DisconnectedError,
    DisconnectedInitialBasisError,
    NotACycleCarrierError,
    NotNormalizedError,
)
from .macrotime import MONOTONE_TOL, DecayChain, projected_deltas
from .spectral import StateVector, spectral_basis
from .symmetry import symmetry_score
from .universe import EprComplex, distances_from

NORM_TOL = 1e-8
ZERO_SPREAD_TOL = 1e-10


def _wrap(angle: float) -> float:
    return (angle + math.pi) % (2 * math.pi) - math.pi


def cycle_order(e: EprComplex) -> list[int]:
    """Objects of a cycle complex in walking order, starting at the smallest
    object and heading to its smaller neighbour."""
    adj = e.adjacency()
    n = len(e.objects)
    if n < 3 or len(e.edges) != n or any(len(adj[o]) != 2 for o in e.objects):
        raise NotACycleCarrierError("carrier is not a cycle")
    start = e.objects[0]
    order = [start]
    prev, cur = start, min(adj[start])
    while cur != start:
        order.append(cur)
        prev, cur = cur, next(w for w in sorted(adj[cur]) if w != prev)
    if len(order) != n:
        raise NotACycleCarrierError("carrier is not a single cycle")
    return order


def phase_distance(carrier, modes, o1: int, o2: int) -> float:
    """Mean absolute phase difference of the DFT modes ``modes`` between two
    positions on a cycle.

    ``carrier`` is either the cycle length ``n`` (positions are ``0..n-1``)
    or a cycle complex, in which case ``o1`` and ``o2`` are object ids.
    """
    if isinstance(carrier, EprComplex):
        order = cycle_order(carrier)
        n = len(order)
        pos = {o: i for i, o in enumerate(order)}
        if o1 not in pos or o2 not in pos:
            raise NotACycleCarrierError("positions must be objects of the cycle")
        p1, p2 = pos[o1], pos[o2]
    else:
        n = int(carrier)
        if n < 3:
            raise NotACycleCarrierError("cycle length must be at least 3")
        if not (0 <= o1 < n and 0 <= o2 < n):
            raise NotACycleCarrierError(f"positions must lie in [0, {n})")
        p1, p2 = o1, o2
    modes = list(modes)
    if not modes:
        raise ValueError("mode set is empty")
    return sum(abs(_wrap(2 * math.pi * k * (p1 - p2) / n)) for k in modes) / len(modes)


@dataclass
class PhaseMetric:
    carrier: int
    mode_set: tuple[int, ...]
    values: np.ndarray


def phase_metric(n: int, modes) -> PhaseMetric:
    modes = tuple(modes)
    vals = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            vals[i, j] = vals[j, i] = phase_distance(n, modes, i, j)
    return PhaseMetric(n, modes, vals)


def _distance_vector(e: EprComplex, center: int) -> np.ndarray:
    dist = distances_from(e, center)
    if len(dist) != len(e.objects):
        raise DisconnectedError("spread needs a connected complex")
    return np.array([dist[o] for o in e.objects], dtype=float)


def spread(s: StateVector, e: EprComplex, center: int) -> float:
    """Root-mean-square graph distance of ``|s|^2`` from ``center``."""
    if abs(s.norm - 1.0) > NORM_TOL:
        raise NotNormalizedError(f"state norm {s.norm} is not 1")
    d = _distance_vector(e, center)
    return float(np.sqrt(np.sum(s.amplitudes ** 2 * d ** 2)))


@dataclass
class ExpansionReport:
    cutoff_series: list[int]
    spread_series: list[float]
    expansion_factor_series: list[float]
    monotone_fraction: float
    baseline_shifted: bool
    baseline: float | None

    def to_dict(self) -> dict:
        return {
            "cutoffs": self.cutoff_series,
            "sigma": self.spread_series,
            "factor": self.expansion_factor_series,
            "monotone_fraction": self.monotone_fraction,
            "baseline_shifted": self.baseline_shifted,
            "baseline": self.baseline,
        }


def mean_spread(e0: EprComplex, k: int, objects) -> float:
    """Mean spread of low-pass projected deltas (cutoff ``k``) at ``objects``."""
    basis = spectral_basis(e0)
    states = projected_deltas(e0, basis, k, objects)
    values = []
    for j, o in enumerate(objects):
        d = _distance_vector(e0, o)
        values.append(math.sqrt(float(np.sum(states[:, j] ** 2 * d ** 2))))
    return float(np.mean(values))


def expansion_series(chain: DecayChain) -> ExpansionReport:
    """Spread of diffused deltas along the chain.

    ``monotone_fraction`` counts only steps where the block-aligned cutoff
    actually drops. When the first spread is zero the expansion factor is
    taken relative to the first nonzero spread and ``baseline_shifted`` is set.
    """
    e0 = chain.basis_complexes[0]
    if not e0.is_connected():
        raise DisconnectedInitialBasisError("the initial basis must be connected")
    basis = spectral_basis(e0)
    cutoffs = [basis.aligned_cutoff(len(b.objects)) for b in chain.basis_complexes]
    sigma = [mean_spread(e0, k, b.objects) for k, b in zip(cutoffs, chain.basis_complexes)]

    baseline = sigma[0]
    shifted = False
    if baseline <= ZERO_SPREAD_TOL:
        shifted = True
        baseline = next((s for s in sigma if s > ZERO_SPREAD_TOL), None)
    if baseline is None:
        factors = [1.0] * len(sigma)
    else:
        factors = [s / baseline for s in sigma]

    crossings = [sigma[i + 1] - sigma[i] for i in range(len(sigma) - 1)
                 if cutoffs[i + 1] < cutoffs[i]]
    if crossings:
        frac = sum(1 for d in crossings if d >= -MONOTONE_TOL) / len(crossings)
    else:
        frac = 1.0
    return ExpansionReport(cutoffs, sigma, factors, frac, shifted, baseline)


def flatness_score(e: EprComplex) -> float:
    if len(e.objects) < 2:
        raise ValueError("flatness needs at least two objects")
    return symmetry_score(e).transitivity_fraction
