"""Macro-time chains: a seeded decay of the basis complex inside evolving
aspects, and entropy measures along the chain."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BasisNotBelowAspectError,
    DisconnectedInitialBasisError,
    NotAnAspectError,
    PolicyError,
    PolicyExhaustsBasisError,
    StepOutOfRangeError,
    UnknownMeasureError,
)
from .rng import MASK64, SplitMix64
from .spectral import shannon_entropy, spectral_basis
from .universe import EprComplex, is_aspect, leq, make_complex

MONOTONE_TOL = 1e-12
MEASURES = ("resolution", "diffusion")


@dataclass(frozen=True)
class DecayPolicy:
    removals_per_step: int
    steps: int
    seed: int = 0
    rewire_to_matter: bool = False

    def __post_init__(self):
        if self.removals_per_step < 1:
            raise PolicyError("removals_per_step must be at least 1")
        if self.steps < 1:
            raise PolicyError("steps must be at least 1")
        if not 0 <= self.seed <= MASK64:
            raise PolicyError("seed must be a 64-bit unsigned integer")

    def check_against(self, basis: EprComplex):
        if self.removals_per_step * self.steps >= len(basis.objects):
            raise PolicyExhaustsBasisError(
                f"{self.removals_per_step} x {self.steps} removals would exhaust a basis "
                f"of {len(basis.objects)} objects"
            )

    def to_dict(self) -> dict:
        return {
            "removals_per_step": self.removals_per_step,
            "steps": self.steps,
            "seed": self.seed,
            "rewire_to_matter": self.rewire_to_matter,
        }


@dataclass(frozen=True)
class DecayChain:
    ambient_aspects: tuple[EprComplex, ...]
    basis_complexes: tuple[EprComplex, ...]
    seed: int | None = None
    removed: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    def __len__(self):
        return len(self.basis_complexes)

    @property
    def sizes(self) -> list[int]:
        return [len(b.objects) for b in self.basis_complexes]


def ambient_aspect_for(basis: EprComplex) -> EprComplex:
    """The aspect that adds only isolated objects to ``basis``."""
    return make_complex(range(basis.n_phi), basis.edges, basis.n_phi)


def generate_chain(e0: EprComplex, a0: EprComplex | None, policy: DecayPolicy) -> DecayChain:
    """Run the seeded decay.

    At each step ``removals_per_step`` basis objects are drawn without
    replacement and every edge joining them to surviving basis objects is
    cut from the ambient aspect. With ``rewire_to_matter`` each cut edge is
    replaced by an edge from the removed object to a random non-basis object
    (skipped when that edge already exists).
    """
    if a0 is None:
        a0 = ambient_aspect_for(e0)
    if not is_aspect(a0):
        raise NotAnAspectError("the ambient complex must contain every object")
    if not leq(e0, a0):
        raise BasisNotBelowAspectError("initial basis is not an induced subcomplex of the aspect")
    policy.check_against(e0)
    rng = SplitMix64(policy.seed)

    aspects = [a0]
    bases = [e0]
    removed_log = []
    edges = set(a0.edges)
    for _ in range(policy.steps):
        basis = bases[-1]
        gone = sorted(rng.sample(basis.objects, policy.removals_per_step))
        gone_set = set(gone)
        survivors = [o for o in basis.objects if o not in gone_set]
        survivor_set = set(survivors)
        cut = sorted((a, b) for a, b in edges
                     if (a in gone_set and b in survivor_set) or (b in gone_set and a in survivor_set))
        edges.difference_update(cut)
        if policy.rewire_to_matter:
            for a, b in cut:
                r = a if a in gone_set else b
                matter = [o for o in range(a0.n_phi) if o not in survivor_set and o != r]
                if not matter:
                    continue
                m = matter[rng.below(len(matter))]
                edges.add((r, m) if r < m else (m, r))
        aspects.append(EprComplex(a0.n_phi, a0.objects, tuple(sorted(edges))))
        bases.append(basis.induced(survivors))
        removed_log.append(tuple(gone))
    return DecayChain(tuple(aspects), tuple(bases), policy.seed, tuple(removed_log))


@dataclass
class ChainValidation:
    violations: list[tuple[int, str]]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_chain(chain: DecayChain) -> ChainValidation:
    out = []
    if len(chain.ambient_aspects) != len(chain.basis_complexes):
        out.append((0, "aspect and basis lists differ in length"))
    for i, basis in enumerate(chain.basis_complexes):
        if i < len(chain.ambient_aspects):
            aspect = chain.ambient_aspects[i]
            if not is_aspect(aspect):
                out.append((i, "ambient complex is not an aspect"))
            if not leq(basis, aspect):
                out.append((i, "basis is not below its aspect"))
        if i > 0:
            prev = chain.basis_complexes[i - 1]
            if not leq(basis, prev):
                out.append((i, "basis is not an induced subcomplex of the previous basis"))
            elif len(basis.objects) == len(prev.objects):
                out.append((i, "basis did not strictly decrease"))
    return ChainValidation(out)


def _check_step(chain: DecayChain, i: int):
    if not 0 <= i < len(chain):
        raise StepOutOfRangeError(f"step {i} outside chain of length {len(chain)}")


def exists_at(f: EprComplex, chain: DecayChain, i: int) -> bool:
    _check_step(chain, i)
    return leq(f, chain.ambient_aspects[i])


def resolution_entropy(chain: DecayChain, i: int) -> float:
    _check_step(chain, i)
    return math.log2(len(chain.basis_complexes[0].objects) / len(chain.basis_complexes[i].objects))


def _initial_basis(chain: DecayChain):
    e0 = chain.basis_complexes[0]
    if not e0.is_connected():
        raise DisconnectedInitialBasisError("the initial basis must be connected")
    return e0, spectral_basis(e0)


def aligned_cutoffs(chain: DecayChain) -> list[int]:
    """Surviving mode counts, rounded up to whole degenerate blocks of the
    initial basis spectrum."""
    _, basis = _initial_basis(chain)
    return [basis.aligned_cutoff(n) for n in chain.sizes]


def projected_deltas(e0: EprComplex, basis, k: int, objects) -> np.ndarray:
    """Columns are the normalized low-pass projections of deltas at ``objects``."""
    k = basis.aligned_cutoff(k)
    cols = [e0.objects.index(o) for o in objects]
    if k == basis.dimension:
        return np.eye(basis.dimension)[:, cols]
    low = basis.vectors[:, :k]
    proj = low @ low[cols, :].T
    return proj / np.linalg.norm(proj, axis=0)


def diffusion_entropy(chain: DecayChain, i: int) -> float:
    """Mean Shannon entropy (bits) of projected deltas at the surviving objects."""
    _check_step(chain, i)
    e0, basis = _initial_basis(chain)
    survivors = chain.basis_complexes[i].objects
    states = projected_deltas(e0, basis, len(survivors), survivors)
    return float(np.mean([shannon_entropy(states[:, j] ** 2) for j in range(states.shape[1])]))


@dataclass
class EntropyReport:
    measure_name: str
    values: list[float]
    deltas: list[float]
    monotone_fraction: float

    def to_dict(self) -> dict:
        return {
            "measure": self.measure_name,
            "values": self.values,
            "deltas": self.deltas,
            "monotone_fraction": self.monotone_fraction,
        }


def monotone_fraction(deltas) -> float:
    if len(deltas) == 0:
        return 1.0
    return sum(1 for d in deltas if d >= -MONOTONE_TOL) / len(deltas)


def entropy_series(chain: DecayChain, measure: str) -> EntropyReport:
    if measure == "resolution":
        fn = resolution_entropy
    elif measure == "diffusion":
        fn = diffusion_entropy
    else:
        raise UnknownMeasureError(f"unknown measure {measure!r}; expected one of {MEASURES}")
    values = [fn(chain, i) for i in range(len(chain))]
    deltas = [b - a for a, b in zip(values, values[1:])]
    return EntropyReport(measure, values, deltas, monotone_fraction(deltas))
