"""Permutation groups given by generators.

A permutation on ``degree`` points is a tuple ``p`` with ``p[i]`` the image
of ``i``. Products compose left to right: ``mult(p, q)`` applies ``p`` first.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import NotAPermutationError

Permutation = tuple[int, ...]


def identity(n: int) -> Permutation:
    return tuple(range(n))


def is_identity(p: Permutation) -> bool:
    return all(i == x for i, x in enumerate(p))


def mult(p: Permutation, q: Permutation) -> Permutation:
    return tuple(q[i] for i in p)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def check_perm(p: Sequence[int], degree: int) -> Permutation:
    p = tuple(int(x) for x in p)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise NotAPermutationError(f"{list(p)} is not a permutation of {degree} points")
    return p


@dataclass
class PermGroup:
    """Group generated by ``generators`` acting on ``range(degree)``.

    ``points`` labels the domain (object ids for automorphism groups); it
    defaults to ``range(degree)``. The order is computed lazily by
    Schreier-Sims and cached.
    """

    degree: int
    generators: list[Permutation]
    points: tuple[int, ...] | None = None
    order_cache: int | None = field(default=None, compare=False)

    def __post_init__(self):
        self.generators = [check_perm(g, self.degree) for g in self.generators]
        if self.points is None:
            self.points = tuple(range(self.degree))
        elif len(self.points) != self.degree:
            raise ValueError("points must label every domain element")

    def order(self) -> int:
        if self.order_cache is None:
            self.order_cache = group_order(self)
        return self.order_cache

    def to_dict(self) -> dict:
        return {"degree": self.degree, "generators": [list(g) for g in self.generators]}

    @classmethod
    def from_dict(cls, d: dict) -> PermGroup:
        return cls(int(d["degree"]), [tuple(g) for g in d["generators"]])

    @classmethod
    def from_json(cls, text: str) -> PermGroup:
        return cls.from_dict(json.loads(text))


class StabilizerChain:
    """Base and strong generating set built by the Schreier-Sims algorithm."""

    def __init__(self, degree: int, generators: Sequence[Permutation]):
        self.degree = degree
        self.base: list[int] = []
        self.strong: list[list[Permutation]] = []
        # transversals[i][x] maps base[i] to x
        self.transversals: list[dict[int, Permutation]] = []
        self._build([g for g in generators if not is_identity(g)])

    def _orbit(self, i: int):
        b = self.base[i]
        trans = {b: identity(self.degree)}
        queue = [b]
        for x in queue:
            for g in self.strong[i]:
                y = g[x]
                if y not in trans:
                    trans[y] = mult(trans[x], g)
                    queue.append(y)
        self.transversals[i] = trans

    def _new_level(self, g: Permutation):
        moved = next(i for i, x in enumerate(g) if x != i)
        self.base.append(moved)
        self.strong.append([])
        self.transversals.append({})

    def strip(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Sift ``g`` from level ``start``; returns the residue and the level
        where sifting stopped (``len(base)`` if it passed every level)."""
        for i in range(start, len(self.base)):
            x = g[self.base[i]]
            u = self.transversals[i].get(x)
            if u is None:
                return g, i
            g = mult(g, inverse(u))
        return g, len(self.base)

    def _build(self, gens):
        for g in gens:
            if all(g[b] == b for b in self.base):
                self._new_level(g)
        for i in range(len(self.base)):
            self.strong[i] = [g for g in gens if all(g[b] == b for b in self.base[:i])]
            self._orbit(i)
        i = len(self.base) - 1
        while i >= 0:
            restart = None
            for x, u in list(self.transversals[i].items()):
                for s in self.strong[i]:
                    ux = self.transversals[i][s[x]]
                    schreier = mult(mult(u, s), inverse(ux))
                    if is_identity(schreier):
                        continue
                    h, j = self.strip(schreier, i + 1)
                    if is_identity(h):
                        continue
                    if j == len(self.base):
                        self._new_level(h)
                    for level in range(i + 1, j + 1):
                        self.strong[level].append(h)
                        self._orbit(level)
                    restart = j
                    break
                if restart is not None:
                    break
            i = restart if restart is not None else i - 1

    def order(self) -> int:
        out = 1
        for t in self.transversals:
            out *= len(t)
        return out

    def contains(self, g: Permutation) -> bool:
        h, j = self.strip(tuple(g))
        return j == len(self.base) and is_identity(h)


def group_order(group: PermGroup) -> int:
    return StabilizerChain(group.degree, group.generators).order()


def orbits(group: PermGroup) -> list[list[int]]:
    """Orbits as sorted lists of point labels, ordered by smallest member."""
    parent = list(range(group.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in group.generators:
        for i, x in enumerate(g):
            ri, rx = find(i), find(x)
            if ri != rx:
                parent[max(ri, rx)] = min(ri, rx)
    classes: dict[int, list[int]] = {}
    for i in range(group.degree):
        classes.setdefault(find(i), []).append(group.points[i])
    return sorted(sorted(c) for c in classes.values())


def elements(group: PermGroup, limit: int | None = None) -> list[Permutation]:
    """All elements in breadth-first order from the identity, multiplying by
    generators on the right."""
    ident = identity(group.degree)
    seen = {ident}
    out = [ident]
    for g in out:
        for s in group.generators:
            h = mult(g, s)
            if h not in seen:
                seen.add(h)
                out.append(h)
                if limit is not None and len(out) > limit:
                    raise ValueError(f"group has more than {limit} elements")
    return out
