"""Automorphism groups by individualization-refinement.

The search follows one "first path" down the tree of equitable partitions,
individualizing the smallest vertex of the first smallest non-singleton cell
at each level. Working from the deepest level upwards, for each vertex of
the target cell that is not yet known to share an orbit with the base point,
a second search looks for an automorphism fixing the earlier base points and
sending the base point to that vertex. The generators found this way form a
strong generating set relative to the base.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import TooLargeForBruteForceError
from ..universe import EprComplex
from .perm import PermGroup, Permutation, orbits

BRUTE_FORCE_LIMIT = 10


class _Graph:
    __slots__ = ("n", "adj")

    def __init__(self, e: EprComplex):
        index = {o: i for i, o in enumerate(e.objects)}
        self.n = len(e.objects)
        self.adj = [0] * self.n
        for a, b in e.edges:
            ia, ib = index[a], index[b]
            self.adj[ia] |= 1 << ib
            self.adj[ib] |= 1 << ia

    def is_automorphism(self, p: Permutation) -> bool:
        for v in range(self.n):
            image = 0
            rest = self.adj[v]
            while rest:
                low = rest & -rest
                image |= 1 << p[low.bit_length() - 1]
                rest ^= low
            if image != self.adj[p[v]]:
                return False
        return True


def _refine(g: _Graph, cells: list[list[int]]):
    """Coarsest equitable refinement of an ordered partition.

    Cells split by the vector of neighbour counts into every current cell;
    fragments are ordered by that vector, so the result (and the returned
    trace) depends only on the graph structure, not on vertex labels.
    """
    trace = []
    adj = g.adj
    while True:
        masks = []
        for c in cells:
            m = 0
            for v in c:
                m |= 1 << v
            masks.append(m)
        new_cells = []
        split = False
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in c:
                key = tuple((adj[v] & m).bit_count() for m in masks)
                groups.setdefault(key, []).append(v)
            if len(groups) == 1:
                new_cells.append(c)
                continue
            split = True
            keys = sorted(groups)
            trace.append((len(new_cells), tuple((k, len(groups[k])) for k in keys)))
            new_cells.extend(groups[k] for k in keys)
        cells = new_cells
        if not split:
            return cells, tuple(trace)


def _target(cells) -> int:
    best = None
    for i, c in enumerate(cells):
        if len(c) > 1 and (best is None or len(c) < len(cells[best])):
            best = i
    return best


def _individualize(cells, ci: int, v: int):
    rest = [w for w in cells[ci] if w != v]
    return cells[:ci] + [[v], rest] + cells[ci + 1:]


def _shape(cells):
    return tuple(len(c) for c in cells)


def _search_generators(g: _Graph):
    cells, trace = _refine(g, [list(range(g.n))] if g.n else [])
    path = [(cells, trace)]
    base = []
    targets = []
    while True:
        cells = path[-1][0]
        ci = _target(cells)
        if ci is None:
            break
        b = min(cells[ci])
        base.append(b)
        targets.append(ci)
        path.append(_refine(g, _individualize(cells, ci, b)))
    leaf = [c[0] for c in path[-1][0]]
    depth = len(base)

    def descend(level, cells, trace):
        ref_cells, ref_trace = path[level]
        if trace != ref_trace or _shape(cells) != _shape(ref_cells):
            return None
        if level == depth:
            p = [0] * g.n
            for src, c in zip(leaf, cells):
                p[src] = c[0]
            p = tuple(p)
            return p if g.is_automorphism(p) else None
        ci = targets[level]
        for w in sorted(cells[ci]):
            found = descend(level + 1, *_refine(g, _individualize(cells, ci, w)))
            if found is not None:
                return found
        return None

    gens: list[Permutation] = []
    for level in range(depth - 1, -1, -1):
        cells = path[level][0]
        ci = targets[level]
        b = base[level]
        orbit = _orbit_of(b, gens, g.n)
        for v in sorted(cells[ci]):
            if v in orbit:
                continue
            found = descend(level + 1, *_refine(g, _individualize(cells, ci, v)))
            if found is not None:
                gens.append(found)
                orbit = _orbit_of(b, gens, g.n)
    return gens, base


def _orbit_of(x, gens, n):
    seen = {x}
    queue = [x]
    for y in queue:
        for p in gens:
            z = p[y]
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return seen


def automorphisms(e: EprComplex) -> PermGroup:
    """Automorphism group of ``e`` acting on its objects.

    Generators are permutations of local indices ``0..|obj|-1``; the group's
    ``points`` maps those indices back to object ids.
    """
    g = _Graph(e)
    gens, _ = _search_generators(g)
    return PermGroup(g.n, gens, points=e.objects)


def brute_force_automorphisms(e: EprComplex) -> PermGroup:
    """Every automorphism, found by exhaustive backtracking. Oracle use only."""
    n = len(e.objects)
    if n > BRUTE_FORCE_LIMIT:
        raise TooLargeForBruteForceError(f"{n} objects exceeds brute-force limit {BRUTE_FORCE_LIMIT}")
    g = _Graph(e)
    found = []
    image = [0] * n
    used = [False] * n

    def extend(v):
        if v == n:
            found.append(tuple(image))
            return
        for w in range(n):
            if used[w]:
                continue
            ok = True
            for u in range(v):
                if (g.adj[u] >> v & 1) != (g.adj[image[u]] >> w & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False

    extend(0)
    return PermGroup(n, found, points=e.objects, order_cache=len(found))


@dataclass(frozen=True)
class SymmetryScore:
    orbit_count: int
    transitivity_fraction: float


def symmetry_score(e: EprComplex) -> SymmetryScore:
    m = len(e.objects)
    if m < 1:
        raise ValueError("symmetry score needs at least one object")
    k = len(orbits(automorphisms(e)))
    frac = 1.0 if m == 1 else 1.0 - (k - 1) / (m - 1)
    return SymmetryScore(k, frac)


def is_automorphism(e: EprComplex, p: Permutation) -> bool:
    return _Graph(e).is_automorphism(tuple(p))
