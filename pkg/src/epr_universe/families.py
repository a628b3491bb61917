"""Named complexes used as initial bases and test fixtures."""
from __future__ import annotations

import itertools

from .rng import SplitMix64
from .universe import EprComplex, make_complex


def _n_phi(n, n_phi):
    return n if n_phi is None else n_phi


def cycle(n: int, n_phi: int | None = None) -> EprComplex:
    if n < 3:
        raise ValueError("a cycle needs at least 3 objects")
    return make_complex(range(n), [(i, (i + 1) % n) for i in range(n)], _n_phi(n, n_phi))


def complete(n: int, n_phi: int | None = None) -> EprComplex:
    return make_complex(range(n), itertools.combinations(range(n), 2), _n_phi(n, n_phi))


def path(n: int, n_phi: int | None = None) -> EprComplex:
    return make_complex(range(n), [(i, i + 1) for i in range(n - 1)], _n_phi(n, n_phi))


def star(n: int, n_phi: int | None = None) -> EprComplex:
    """Object 0 joined to objects ``1..n-1``."""
    return make_complex(range(n), [(0, i) for i in range(1, n)], _n_phi(n, n_phi))


def edgeless(n: int, n_phi: int | None = None) -> EprComplex:
    return make_complex(range(n), (), _n_phi(n, n_phi))


def petersen() -> EprComplex:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return make_complex(range(10), outer + spokes + inner)


def gnp(n: int, p: float, seed: int, n_phi: int | None = None) -> EprComplex:
    """Erdos-Renyi graph: pair ``(a, b)`` in lexicographic order is kept when
    the next SplitMix64 float is below ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = SplitMix64(seed)
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return make_complex(range(n), edges, _n_phi(n, n_phi))
