"""Finite universe of EPR complexes.

An EPR complex is a simple graph whose vertices are drawn from a fixed global
object set ``{0, ..., n_phi - 1}``. Complexes are ordered by the induced
subgraph relation; the maximal elements (complexes on every object) are the
*aspects* of the universe.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateEdgeError,
    EndpointOutsideObjectsError,
    EnumerationTooLargeError,
    NotAnAspectError,
    ObjectNotInComplexError,
    ObjectOutOfRangeError,
    PartNotBelowAspectError,
    SelfLoopError,
)

DEFAULT_ENUMERATION_LIMIT = 20

Edge = tuple[int, int]


@dataclass(frozen=True)
class EprComplex:
    """Immutable simple graph on a subset of the object set.

    Build instances with :func:`make_complex`; the constructor assumes its
    arguments are already canonical (objects ascending, edges ``(a, b)`` with
    ``a < b`` in lexicographic order).
    """

    n_phi: int
    objects: tuple[int, ...]
    edges: tuple[Edge, ...]
    _objset: frozenset = field(init=False, repr=False, compare=False)
    _edgeset: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_objset", frozenset(self.objects))
        object.__setattr__(self, "_edgeset", frozenset(self.edges))

    def __len__(self):
        return len(self.objects)

    def __contains__(self, o):
        return o in self._objset

    @property
    def object_set(self) -> frozenset:
        return self._objset

    @property
    def edge_set(self) -> frozenset:
        return self._edgeset

    def has_edge(self, a: int, b: int) -> bool:
        return (a, b) in self._edgeset if a < b else (b, a) in self._edgeset

    def neighbors(self, o: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == o:
                out.append(b)
            elif b == o:
                out.append(a)
        return sorted(out)

    def adjacency(self) -> dict[int, set[int]]:
        adj = {o: set() for o in self.objects}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def induced(self, objects: Iterable[int]) -> EprComplex:
        """Induced subcomplex on ``objects`` (which must lie in this complex)."""
        keep = frozenset(objects)
        missing = keep - self._objset
        if missing:
            raise ObjectNotInComplexError(f"objects {sorted(missing)} not in complex")
        edges = tuple(e for e in self.edges if e[0] in keep and e[1] in keep)
        return EprComplex(self.n_phi, tuple(sorted(keep)), edges)

    def is_connected(self) -> bool:
        if len(self.objects) <= 1:
            return True
        return len(_bfs_distances(self.adjacency(), self.objects[0])) == len(self.objects)


def make_complex(objects: Iterable[int], edges: Iterable[Sequence[int]] = (),
                 n_phi: int | None = None) -> EprComplex:
    """Validate and canonicalize a complex.

    ``n_phi`` defaults to one more than the largest object.
    """
    objs = sorted(set(int(o) for o in objects))
    if n_phi is None:
        n_phi = objs[-1] + 1 if objs else 0
    if n_phi < 0:
        raise ObjectOutOfRangeError(f"n_phi must be non-negative, got {n_phi}")
    if objs and (objs[0] < 0 or objs[-1] >= n_phi):
        raise ObjectOutOfRangeError(f"objects must lie in [0, {n_phi})")
    objset = set(objs)
    seen = set()
    for e in edges:
        a, b = (int(x) for x in e)
        if a == b:
            raise SelfLoopError(f"self-loop at object {a}")
        key = (a, b) if a < b else (b, a)
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {key}")
        if a not in objset or b not in objset:
            raise EndpointOutsideObjectsError(f"edge {key} has an endpoint outside the object set")
        seen.add(key)
    return EprComplex(n_phi, tuple(objs), tuple(sorted(seen)))


def empty_complex(n_phi: int) -> EprComplex:
    return EprComplex(n_phi, (), ())


def leq(e: EprComplex, f: EprComplex) -> bool:
    """True iff ``e`` is the induced subcomplex of ``f`` on ``obj(e)``."""
    if not e.object_set <= f.object_set:
        return False
    objs = e.object_set
    induced_edges = sum(1 for a, b in f.edges if a in objs and b in objs)
    return induced_edges == len(e.edges) and e.edge_set <= f.edge_set


def is_aspect(e: EprComplex) -> bool:
    return len(e.objects) == e.n_phi


def _free_pairs(e: EprComplex) -> list[Edge]:
    objs = e.object_set
    return [(a, b) for a, b in itertools.combinations(range(e.n_phi), 2)
            if not (a in objs and b in objs)]


def aspect_count(e: EprComplex) -> int:
    m = len(e.objects)
    return 2 ** (comb(e.n_phi, 2) - comb(m, 2))


@dataclass(frozen=True)
class AspectSet:
    count: int
    aspects: tuple[EprComplex, ...] | None = None


def aspects_extending(e: EprComplex, enumerate_all: bool = False,
                      limit: int = DEFAULT_ENUMERATION_LIMIT) -> AspectSet:
    """Count (and optionally list) the aspects ``A`` with ``e <= A``.

    Enumeration order: free pairs sorted lexicographically, subsets in binary
    counting order with the first free pair as the least significant bit.
    """
    count = aspect_count(e)
    if not enumerate_all:
        return AspectSet(count)
    free = _free_pairs(e)
    if len(free) > limit:
        raise EnumerationTooLargeError(count, len(free), limit)
    return AspectSet(count, tuple(_iter_aspects(e, free)))


def _iter_aspects(e: EprComplex, free: list[Edge]) -> Iterator[EprComplex]:
    everything = tuple(range(e.n_phi))
    for mask in range(2 ** len(free)):
        extra = [p for i, p in enumerate(free) if mask >> i & 1]
        yield EprComplex(e.n_phi, everything, tuple(sorted(e.edges + tuple(extra))))


def join_in_aspect(aspect: EprComplex, parts: Sequence[EprComplex]) -> EprComplex:
    """Smallest complex below ``aspect`` that lies above every part."""
    if not is_aspect(aspect):
        raise NotAnAspectError("join is taken inside an aspect")
    union = set()
    for i, part in enumerate(parts):
        if not leq(part, aspect):
            raise PartNotBelowAspectError(f"part {i} is not below the aspect")
        union |= part.object_set
    return aspect.induced(union)


@dataclass(frozen=True)
class LowerBoundSet:
    """Maximal common lower bounds of two complexes.

    ``bounds`` is sorted by descending object count, then by object tuple; the
    first entry is the deterministic selection.
    """

    bounds: tuple[EprComplex, ...]

    @property
    def unique(self) -> bool:
        return len(self.bounds) == 1

    @property
    def selected(self) -> EprComplex:
        return self.bounds[0]


def meet(e: EprComplex, a: EprComplex) -> LowerBoundSet:
    """All maximal common lower bounds of ``e`` and ``a``.

    A common lower bound is an object subset on which both complexes induce
    the same edges, so the maximal bounds are the maximal independent sets of
    the disagreement graph over the shared objects.
    """
    common = sorted(e.object_set & a.object_set)
    disagree = {o: set() for o in common}
    for x, y in itertools.combinations(common, 2):
        if e.has_edge(x, y) != a.has_edge(x, y):
            disagree[x].add(y)
            disagree[y].add(x)
    agree = {o: set(common) - disagree[o] - {o} for o in common}
    bounds = [e.induced(s) for s in _maximal_cliques(agree)]
    bounds.sort(key=lambda c: (-len(c.objects), c.objects))
    return LowerBoundSet(tuple(bounds))


def _maximal_cliques(adj: dict[int, set[int]]) -> list[frozenset]:
    # Bron-Kerbosch with pivoting; the empty graph has the empty set as its
    # only maximal clique.
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(sorted(p | x), key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(adj), set())
    return out


def _bfs_distances(adj: dict[int, set[int]], source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distances_from(e: EprComplex, source: int) -> dict[int, int]:
    """Breadth-first distances to every object reachable from ``source``."""
    if source not in e:
        raise ObjectNotInComplexError(f"object {source} not in complex")
    return _bfs_distances(e.adjacency(), source)


def graph_distance(e: EprComplex, o1: int, o2: int) -> int | None:
    """Shortest-path edge count, or ``None`` when ``o2`` is unreachable."""
    if o2 not in e:
        raise ObjectNotInComplexError(f"object {o2} not in complex")
    return distances_from(e, o1).get(o2)


def all_complexes(n_phi: int) -> list[EprComplex]:
    """Every complex over ``n_phi`` objects, including the empty one."""
    out = []
    for m in range(n_phi + 1):
        for objs in itertools.combinations(range(n_phi), m):
            pairs = list(itertools.combinations(objs, 2))
            for mask in range(2 ** len(pairs)):
                edges = tuple(p for i, p in enumerate(pairs) if mask >> i & 1)
                out.append(EprComplex(n_phi, objs, edges))
    return out


def to_dict(e: EprComplex) -> dict:
    return {"n_phi": e.n_phi, "objects": list(e.objects), "edges": [list(x) for x in e.edges]}


def from_dict(d: dict) -> EprComplex:
    return make_complex(d["objects"], d["edges"], n_phi=d["n_phi"])


def serialize(e: EprComplex) -> str:
    return json.dumps(to_dict(e), separators=(", ", ": "))


def parse(text: str) -> EprComplex:
    return from_dict(json.loads(text))
