"""Membership predicates for the hereditary graph families a colour class may induce.

Seven families are supported, each closed under induced subgraphs and under
adding isolated vertices, and each containing the one-vertex graph:

  ``cluster:<k>``     components have at most k vertices
  ``maxdeg:<d>``      maximum degree at most d  (d = 0 is proper colouring)
  ``forest``          acyclic
  ``starforest``      acyclic, at most one vertex of degree >= 2 per component
  ``linforest``       acyclic with maximum degree at most 2
  ``colnum:<k>``      colouring number (degeneracy + 1) at most k
  ``mad:<p>/<q>``     maximum average degree at most p/q

The empty graph belongs to every family (colour classes may be empty).
Maximum average degree is computed in exact rational arithmetic so that
threshold cases such as cycles sitting exactly at 2 never wobble.

The mask-based variants (`member_mask`) run the same predicates directly on
vertex bitmasks of a host graph; the colouring engines call them in their
inner loops to test colour classes without building subgraph objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graphs import Graph, degeneracy_order

_KINDS = ("cluster", "maxdeg", "forest", "starforest", "linforest", "colnum", "mad")


@dataclass(frozen=True)
class FamilySpec:
    """Tagged description of one of the supported hereditary families."""

    kind: str
    param: int | Fraction | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind in ("cluster", "colnum"):
            if not isinstance(self.param, int) or self.param < 1:
                raise ValueError(f"{self.kind} needs a positive integer parameter")
        elif self.kind == "maxdeg":
            if not isinstance(self.param, int) or self.param < 0:
                raise ValueError("maxdeg needs a nonnegative integer parameter")
        elif self.kind == "mad":
            if not isinstance(self.param, Fraction) or self.param < 0:
                raise ValueError("mad needs a nonnegative rational threshold")
        elif self.param is not None:
            raise ValueError(f"{self.kind} takes no parameter")

    def __str__(self) -> str:
        if self.kind in ("cluster", "maxdeg", "colnum"):
            return f"{self.kind}:{self.param}"
        if self.kind == "mad":
            t = self.param
            return f"mad:{t.numerator}" if t.denominator == 1 else f"mad:{t.numerator}/{t.denominator}"
        return self.kind


def clustered(k: int) -> FamilySpec:
    return FamilySpec("cluster", k)


def max_degree(d: int) -> FamilySpec:
    return FamilySpec("maxdeg", d)


def colouring_number_at_most(k: int) -> FamilySpec:
    return FamilySpec("colnum", k)


def max_avg_degree(threshold) -> FamilySpec:
    return FamilySpec("mad", Fraction(threshold))


FOREST = FamilySpec("forest")
STAR_FOREST = FamilySpec("starforest")
LINEAR_FOREST = FamilySpec("linforest")
PROPER = max_degree(0)


def parse_family(text: str) -> FamilySpec:
    """Parse the CLI-facing grammar, e.g. ``cluster:3`` or ``mad:7/3``."""
    s = text.strip()
    if ":" not in s:
        if s in ("forest", "starforest", "linforest"):
            return FamilySpec(s)
        raise ValueError(f"cannot parse family {text!r}")
    kind, _, arg = s.partition(":")
    if kind in ("cluster", "maxdeg", "colnum"):
        if not re_fullmatch_int(arg):
            raise ValueError(f"{kind} parameter must be an integer: {text!r}")
        return FamilySpec(kind, int(arg))
    if kind == "mad":
        if "/" in arg:
            p, _, q = arg.partition("/")
            if not (re_fullmatch_int(p) and re_fullmatch_int(q)) or int(q) == 0:
                raise ValueError(f"cannot parse mad threshold {text!r}")
            return FamilySpec("mad", Fraction(int(p), int(q)))
        if not re_fullmatch_int(arg):
            raise ValueError(f"cannot parse mad threshold {text!r}")
        return FamilySpec("mad", Fraction(int(arg)))
    raise ValueError(f"cannot parse family {text!r}")


def re_fullmatch_int(s: str) -> bool:
    return s.isdigit()


# --- mask-level predicates ---------------------------------------------------

def _mask_vertices(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _components_masks(adj: Sequence[int], mask: int) -> list[int]:
    comps = []
    todo = mask
    while todo:
        start = todo & -todo
        comp = start
        frontier = start
        while frontier:
            grow = 0
            for v in _mask_vertices(frontier):
                grow |= adj[v] & mask
            frontier = grow & ~comp
            comp |= frontier
        comps.append(comp)
        todo &= ~comp
    return comps


def _edge_count_mask(adj: Sequence[int], mask: int) -> int:
    return sum((adj[v] & mask).bit_count() for v in _mask_vertices(mask)) // 2


def _is_acyclic_mask(adj: Sequence[int], mask: int) -> bool:
    comps = _components_masks(adj, mask)
    return _edge_count_mask(adj, mask) == mask.bit_count() - len(comps)


def _colouring_number_mask(adj: Sequence[int], mask: int) -> int:
    # min-degree peeling restricted to the mask; sizes here are small
    if mask == 0:
        return 0
    remaining = mask
    max_seen = 0
    while remaining:
        best_v, best_d = -1, None
        for v in _mask_vertices(remaining):
            d = (adj[v] & remaining).bit_count()
            if best_d is None or d < best_d:
                best_v, best_d = v, d
        max_seen = max(max_seen, best_d)
        remaining &= ~(1 << best_v)
    return max_seen + 1


def mad_mask(adj: Sequence[int], mask: int) -> Fraction:
    """Exact maximum average degree of the subgraph induced by ``mask``.

    Exhaustive over vertex subsets, so the caller must keep the mask at desk
    scale (at most 24 vertices).  A flow-based exact densest-subgraph routine
    could sit behind the same contract for larger graphs; nothing in this
    package needs one.
    """
    verts = list(_mask_vertices(mask))
    n = len(verts)
    if n == 0:
        raise ValueError("mad is undefined on the empty graph")
    if n > 24:
        raise ValueError("exhaustive mad is limited to 24 vertices")
    local_adj = [0] * n
    index = {v: i for i, v in enumerate(verts)}
    for i, v in enumerate(verts):
        for w in _mask_vertices(adj[v] & mask):
            local_adj[i] |= 1 << index[w]
    # e[s] = edge count inside subset s, via removal of the lowest bit
    e = [0] * (1 << n)
    best_num, best_den = 0, 1  # best 2|E(S)| / |S| as a cross-multiplied pair
    for s in range(1, 1 << n):
        low = s & -s
        rest = s ^ low
        es = e[rest] + (local_adj[low.bit_length() - 1] & rest).bit_count()
        e[s] = es
        size = s.bit_count()
        if 2 * es * best_den > best_num * size:
            best_num, best_den = 2 * es, size
    return Fraction(best_num, best_den)


def member_mask(adj: Sequence[int], mask: int, f: FamilySpec) -> bool:
    """Does the subgraph induced by ``mask`` (within ``adj``) lie in ``f``?"""
    if mask == 0:
        return True
    kind = f.kind
    if kind == "maxdeg":
        d = f.param
        return all((adj[v] & mask).bit_count() <= d for v in _mask_vertices(mask))
    if kind == "cluster":
        k = f.param
        return all(c.bit_count() <= k for c in _components_masks(adj, mask))
    if kind == "forest":
        return _is_acyclic_mask(adj, mask)
    if kind == "linforest":
        if any((adj[v] & mask).bit_count() > 2 for v in _mask_vertices(mask)):
            return False
        return _is_acyclic_mask(adj, mask)
    if kind == "starforest":
        if not _is_acyclic_mask(adj, mask):
            return False
        for comp in _components_masks(adj, mask):
            centres = sum(1 for v in _mask_vertices(comp)
                          if (adj[v] & comp).bit_count() >= 2)
            if centres > 1:
                return False
        return True
    if kind == "colnum":
        return _colouring_number_mask(adj, mask) <= f.param
    if kind == "mad":
        return mad_mask(adj, mask) <= f.param
    raise AssertionError(f.kind)


# --- graph-level API ---------------------------------------------------------

def member(g: Graph, f: FamilySpec) -> bool:
    """True iff ``g`` belongs to the family ``f``."""
    if g.vertex_count == 0:
        return True
    full = (1 << g.vertex_count) - 1
    return member_mask(g.adj_masks, full, f)


def mad(g: Graph) -> Fraction:
    """Maximum over nonempty vertex subsets S of 2|E(G[S])| / |S|, exact."""
    if g.vertex_count == 0:
        raise ValueError("mad is undefined on the empty graph")
    full = (1 << g.vertex_count) - 1
    return mad_mask(g.adj_masks, full)


def colouring_number_of(g: Graph) -> int:
    return degeneracy_order(g)[1]
