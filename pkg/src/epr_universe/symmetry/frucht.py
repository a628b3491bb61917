"""Graphs with a prescribed automorphism group.

Start from the Cayley digraph of the group on its generating set (an arc
``g -> g*s`` coloured by generator ``s``); its colour-preserving
automorphisms are exactly the left multiplications. Each arc ``u -> v`` of
colour ``i`` is then replaced by an undirected gadget

    u - x - y - v

where ``x`` carries a pendant path of ``i + 2`` vertices (the colour tag) and
``y`` carries a single pendant leaf (the direction tag). The resulting simple
graph has automorphism group isomorphic to the input group.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import GroupTooLargeError
from ..universe import EprComplex, make_complex
from .perm import PermGroup, Permutation, elements, group_order, identity, is_identity, mult

DEFAULT_ORDER_LIMIT = 720


@dataclass(frozen=True)
class FruchtGraph:
    complex: EprComplex
    group_elements: tuple[Permutation, ...]
    # action[h] is the automorphism induced by left multiplication with h
    action: tuple[Permutation, ...]


def _distinct_generators(group: PermGroup) -> list[Permutation]:
    out = []
    for g in group.generators:
        if not is_identity(g) and g not in out:
            out.append(g)
    return out


def frucht_construction(group: PermGroup, limit: int = DEFAULT_ORDER_LIMIT) -> FruchtGraph:
    order = group_order(group)
    if order > limit:
        raise GroupTooLargeError(f"group order {order} exceeds limit {limit}")
    gens = _distinct_generators(group)
    elems = elements(PermGroup(group.degree, gens), limit=limit)
    index = {g: i for i, g in enumerate(elems)}
    n_elems = len(elems)

    # gadget vertex numbering: (element, colour, slot) -> id, laid out so the
    # left-multiplication action can be written down directly
    slots = [i + 2 + 2 + 1 for i in range(len(gens))]  # x, y, leaf, tag path
    offsets = []
    total = n_elems
    for s in slots:
        offsets.append(total)
        total += n_elems * s

    def vid(elem, colour, slot):
        return offsets[colour] + elem * slots[colour] + slot

    edges = []
    for colour, s in enumerate(gens):
        for g in elems:
            u = index[g]
            v = index[mult(g, s)]
            x, y, leaf = vid(u, colour, 0), vid(u, colour, 1), vid(u, colour, 2)
            edges += [(u, x), (x, y), (y, v), (y, leaf)]
            prev = x
            for k in range(colour + 2):
                t = vid(u, colour, 3 + k)
                edges.append((prev, t))
                prev = t

    action = []
    for h in elems:
        left = [index[mult(h, g)] for g in elems]
        p = list(range(total))
        for i in range(n_elems):
            p[i] = left[i]
        for colour in range(len(gens)):
            for i in range(n_elems):
                for slot in range(slots[colour]):
                    p[vid(i, colour, slot)] = vid(left[i], colour, slot)
        action.append(tuple(p))

    return FruchtGraph(make_complex(range(total), edges), tuple(elems), tuple(action))


def frucht_realize(group: PermGroup, limit: int = DEFAULT_ORDER_LIMIT) -> EprComplex:
    """A complex whose automorphism group is isomorphic to ``group``."""
    return frucht_construction(group, limit).complex


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [])
    return PermGroup(n, [tuple((i + 1) % n for i in range(n))])


def klein_four_group() -> PermGroup:
    return PermGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)])


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [])
    transposition = (1, 0) + tuple(range(2, n))
    rotation = tuple((i + 1) % n for i in range(n))
    return PermGroup(n, [transposition, rotation] if n > 2 else [transposition])


def dihedral_group(n: int) -> PermGroup:
    rotation = tuple((i + 1) % n for i in range(n))
    reflection = tuple((-i) % n for i in range(n))
    return PermGroup(n, [rotation, reflection])


def trivial_group() -> PermGroup:
    return PermGroup(1, [identity(1)])
