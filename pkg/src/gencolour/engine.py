"""Exact family-relative colouring: validity, chromatic number, list colouring,
and choice number by adversarial enumeration.

Everything here is a complete search; there are no heuristics and no solver
backends, so these routines are the oracle of record for the rest of the
package.  They are meant for desk-scale instances.  Honest incompleteness:
searches carry node and assignment budgets and raise
:class:`~gencolour.errors.BudgetExceededError` rather than guessing.

Choice-number checks quantify over all n-list assignments, which is finite
only up to renaming of colours.  Assignments are therefore enumerated in a
canonical form: scanning vertices in index order and each list in sorted
order, every newly introduced colour is the smallest unused integer, and
from each group of colours that previous lists cannot distinguish only the
lexicographically least choice is kept (the groups are interchangeable by a
renaming that fixes the scanned prefix, so pruning them cannot change any
verdict).  Two further verdict-preserving reductions keep the search at desk
scale: vertices of degree below n are peeled off first (every family in
scope absorbs isolated vertices), and a subtree is abandoned early once the
already-assigned prefix has no valid colouring, since any completion of it
is a counterexample.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BudgetExceededError
from .graphs import Graph, degeneracy_order
from .families import FamilySpec, member_mask

DEFAULT_MAX_NODES = 10 ** 8
DEFAULT_MAX_ASSIGNMENTS = 10 ** 8


@dataclass(frozen=True)
class Colouring:
    """Total map vertex -> colour id, stored positionally."""

    colours: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.colours):
            raise ValueError("colour ids must be nonnegative")

    def __getitem__(self, v: int) -> int:
        return self.colours[v]

    def __len__(self) -> int:
        return len(self.colours)

    def colour_classes(self) -> dict[int, tuple[int, ...]]:
        classes: dict[int, list[int]] = {}
        for v, c in enumerate(self.colours):
            classes.setdefault(c, []).append(v)
        return {c: tuple(vs) for c, vs in classes.items()}

    def restrict(self, vertices: Sequence[int]) -> dict[int, int]:
        return {v: self.colours[v] for v in vertices}

    def image(self, vertices: Sequence[int]) -> frozenset[int]:
        return frozenset(self.colours[v] for v in vertices)


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex finite colour sets; every list must be nonempty."""

    lists: tuple[frozenset[int], ...]

    def __post_init__(self):
        for v, lst in enumerate(self.lists):
            if not lst:
                raise ValueError(f"empty list on vertex {v}")
            if any(c < 0 for c in lst):
                raise ValueError("colour ids must be nonnegative")

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.lists[v]

    def __len__(self) -> int:
        return len(self.lists)

    @staticmethod
    def of(lists: Sequence[Sequence[int]]) -> "ListAssignment":
        return ListAssignment(tuple(frozenset(lst) for lst in lists))


@dataclass(frozen=True)
class ChoosabilityVerdict:
    """Outcome of an n-choosability check.

    ``bad_assignment`` is present exactly when ``choosable`` is false and is
    then a concrete n-list assignment with no valid colouring.
    """

    choosable: bool
    bad_assignment: ListAssignment | None = None

    def __post_init__(self):
        if self.choosable and self.bad_assignment is not None:
            raise ValueError("a choosable verdict carries no witness")
        if not self.choosable and self.bad_assignment is None:
            raise ValueError("a non-choosable verdict needs a witness")


class _Budget:
    """Cumulative node / assignment counters with hard caps."""

    __slots__ = ("nodes", "assignments", "max_nodes", "max_assignments")

    def __init__(self, max_nodes: int, max_assignments: int):
        self.nodes = 0
        self.assignments = 0
        self.max_nodes = max_nodes
        self.max_assignments = max_assignments

    def spend_nodes(self, count: int, what: str) -> None:
        self.nodes += count
        if self.nodes > self.max_nodes:
            raise BudgetExceededError(
                f"{what}: exceeded {self.max_nodes} backtrack nodes")

    def tick_assignment(self, what: str) -> None:
        self.assignments += 1
        if self.assignments > self.max_assignments:
            raise BudgetExceededError(
                f"{what}: exceeded {self.max_assignments} list assignments")


def _class_checker(adj: Sequence[int], f: FamilySpec, cache: dict[int, bool]):
    def ok(mask: int) -> bool:
        r = cache.get(mask)
        if r is None:
            r = member_mask(adj, mask, f)
            cache[mask] = r
        return r
    return ok


# --- validity ----------------------------------------------------------------

def is_valid_colouring(g: Graph, phi: Colouring, f: FamilySpec) -> bool:
    """True iff every colour class of ``phi`` induces a graph in ``f``."""
    if len(phi) != g.vertex_count:
        raise ValueError("colouring is not total on the graph's vertex set")
    masks: dict[int, int] = {}
    for v, c in enumerate(phi.colours):
        masks[c] = masks.get(c, 0) | (1 << v)
    adj = g.adj_masks
    return all(member_mask(adj, m, f) for m in masks.values())


# --- backtracking cores --------------------------------------------------------

def _backtrack_lists(adj, order, options, class_ok, budget, what):
    """Complete search for a colouring with ``phi[v] in options[i]`` along ``order``.

    ``options[i]`` is a sorted colour tuple for ``order[i]``.  Iterative so
    deep graphs cannot overflow the interpreter stack.  Returns a vertex ->
    colour dict or None.
    """
    n = len(order)
    if n == 0:
        return {}
    masks: dict[int, int] = {}
    phi: dict[int, int] = {}
    idx = [0] * n
    nodes = 0
    depth = 0
    while True:
        v = order[depth]
        opts = options[depth]
        placed = False
        i = idx[depth]
        while i < len(opts):
            c = opts[i]
            i += 1
            nodes += 1
            cand = masks.get(c, 0) | (1 << v)
            if class_ok(cand):
                idx[depth] = i
                phi[v] = c
                masks[c] = cand
                placed = True
                break
        if placed:
            depth += 1
            if depth == n:
                budget.spend_nodes(nodes, what)
                return phi
            idx[depth] = 0
        else:
            idx[depth] = 0
            depth -= 1
            if depth < 0:
                budget.spend_nodes(nodes, what)
                return None
            pv = order[depth]
            pc = phi.pop(pv)
            masks[pc] &= ~(1 << pv)
        if nodes & 0xFFF == 0:
            budget.spend_nodes(nodes, what)
            nodes = 0


def _chi_search(adj, order, n_colours, class_ok, budget):
    """Is there a valid colouring into ``n_colours`` colours?

    Colour names are interchangeable, so the search only ever introduces the
    smallest unused colour as a new class (completeness is preserved and the
    branching collapses).
    """
    n = len(order)
    masks: dict[int, int] = {}
    phi: dict[int, int] = {}
    idx = [0] * n
    used = [0] * (n + 1)
    nodes = 0
    depth = 0
    while True:
        v = order[depth]
        limit = min(used[depth] + 1, n_colours)
        placed = False
        c = idx[depth]
        while c < limit:
            nodes += 1
            cand = masks.get(c, 0) | (1 << v)
            if class_ok(cand):
                idx[depth] = c + 1
                phi[v] = c
                masks[c] = cand
                used[depth + 1] = max(used[depth], c + 1)
                placed = True
                break
            c += 1
        if placed:
            depth += 1
            if depth == n:
                budget.spend_nodes(nodes, "chi")
                return phi
            idx[depth] = 0
        else:
            idx[depth] = 0
            depth -= 1
            if depth < 0:
                budget.spend_nodes(nodes, "chi")
                return None
            pv = order[depth]
            pc = phi.pop(pv)
            masks[pc] &= ~(1 << pv)
        if nodes & 0xFFF == 0:
            budget.spend_nodes(nodes, "chi")
            nodes = 0


def _search_order(g: Graph) -> list[int]:
    order, _ = degeneracy_order(g)
    order.reverse()
    return order


# --- public solvers ------------------------------------------------------------

def chi(g: Graph, f: FamilySpec, max_nodes: int = DEFAULT_MAX_NODES) -> int:
    """Smallest n so that some colouring into n colours is valid for ``f``.

    Iterative deepening from n = 1; n = vertex_count always succeeds since
    singleton classes are one-vertex graphs.  Clique-style lower bounds are
    unsound family-relatively, so none are used.
    """
    if g.vertex_count == 0:
        raise ValueError("chi is undefined on the empty graph")
    budget = _Budget(max_nodes, DEFAULT_MAX_ASSIGNMENTS)
    adj = g.adj_masks
    order = _search_order(g)
    class_ok = _class_checker(adj, f, {})
    for n in range(1, g.vertex_count + 1):
        if _chi_search(adj, order, n, class_ok, budget) is not None:
            return n
    raise AssertionError("singleton colouring must always be valid")


def find_L_colouring(g: Graph, L: ListAssignment, f: FamilySpec,
                     max_nodes: int = DEFAULT_MAX_NODES) -> Colouring | None:
    """A valid colouring with ``phi(v) in L(v)`` for all v, or None.

    Complete backtracking in reversed degeneracy order, colours ascending.
    """
    if len(L) != g.vertex_count:
        raise ValueError("list assignment is not total on the graph's vertex set")
    budget = _Budget(max_nodes, DEFAULT_MAX_ASSIGNMENTS)
    adj = g.adj_masks
    order = _search_order(g)
    options = [tuple(sorted(L[v])) for v in order]
    class_ok = _class_checker(adj, f, {})
    phi = _backtrack_lists(adj, order, options, class_ok, budget, "find_L_colouring")
    if phi is None:
        return None
    return Colouring(tuple(phi[v] for v in range(g.vertex_count)))


def greedy_degeneracy_list_colouring(g: Graph, L: ListAssignment) -> Colouring:
    """Proper colouring from lists of size >= colouring number, greedily.

    Walks the reversed min-degree peeling order; every vertex then has fewer
    earlier neighbours than its list is long, so the smallest unused list
    colour always exists.
    """
    if len(L) != g.vertex_count:
        raise ValueError("list assignment is not total on the graph's vertex set")
    order, col = degeneracy_order(g)
    short = [v for v in range(g.vertex_count) if len(L[v]) < col]
    if short:
        raise ValueError(
            f"greedy needs lists of size >= {col} (colouring number); "
            f"vertex {short[0]} has {len(L[short[0]])}")
    order.reverse()
    colours = [-1] * g.vertex_count
    for v in order:
        taken = {colours[w] for w in g.adjacency[v] if colours[w] >= 0}
        for c in sorted(L[v]):
            if c not in taken:
                colours[v] = c
                break
        else:
            raise AssertionError("list colour must exist by the degeneracy bound")
    return Colouring(tuple(colours))


# --- canonical enumeration of list assignments ----------------------------------

def _list_choices(patterns: dict[int, int], next_fresh: int, size: int) -> list[tuple[int, ...]]:
    """Candidate lists for the next vertex, one per interchangeability orbit.

    ``patterns[c]`` is the bitmask of already-scanned vertices whose list
    contains colour c.  Colours with equal patterns are interchangeable by a
    renaming fixing the prefix, so a choice is determined by how many colours
    it takes from each pattern group (lowest ids serve as representatives)
    plus how many fresh colours it appends.
    """
    groups: dict[int, list[int]] = {}
    for c in range(next_fresh):
        groups.setdefault(patterns[c], []).append(c)
    classes = sorted(groups.values(), key=lambda cs: cs[0])
    out: list[tuple[int, ...]] = []

    def rec(ci: int, remaining: int, chosen: list[int]) -> None:
        if ci == len(classes):
            fresh = list(range(next_fresh, next_fresh + remaining))
            out.append(tuple(sorted(chosen + fresh)))
            return
        cls = classes[ci]
        for take in range(min(len(cls), remaining) + 1):
            rec(ci + 1, remaining - take, chosen + cls[:take])

    rec(0, size, [])
    out.sort()
    return out


def canonical_list_assignments(vertex_count: int, size: int) -> Iterator[tuple[frozenset[int], ...]]:
    """All size-``size`` list assignments on ``vertex_count`` vertices, one per
    colour-renaming orbit, in a fixed depth-first order.

    Every assignment whatsoever is a colour renaming of exactly one yield,
    so universally quantified, renaming-invariant properties can be checked
    exhaustively against this stream.
    """
    if size < 1:
        raise ValueError("lists must be nonempty")
    patterns: dict[int, int] = {}
    acc: list[tuple[int, ...]] = []

    def rec(v: int, next_fresh: int) -> Iterator[tuple[frozenset[int], ...]]:
        if v == vertex_count:
            yield tuple(frozenset(lst) for lst in acc)
            return
        bit = 1 << v
        for lst in _list_choices(patterns, next_fresh, size):
            fresh = sum(1 for c in lst if c >= next_fresh)
            for c in lst:
                patterns[c] = patterns.get(c, 0) | bit
            acc.append(lst)
            yield from rec(v + 1, next_fresh + fresh)
            acc.pop()
            for c in lst:
                if c >= next_fresh:
                    del patterns[c]
                else:
                    patterns[c] &= ~bit

    yield from rec(0, 0)


def is_n_choosable(g: Graph, n: int, f: FamilySpec,
                   max_nodes: int = DEFAULT_MAX_NODES,
                   max_assignments: int = DEFAULT_MAX_ASSIGNMENTS) -> ChoosabilityVerdict:
    """Does every n-list assignment of ``g`` admit a valid colouring?

    Exhausts the canonical assignment stream (see module docstring for the
    verdict-preserving reductions).  When the answer is no, the verdict
    carries a concrete bad assignment on the full vertex set.
    """
    if n < 1:
        raise ValueError("list size must be at least 1")
    budget = _Budget(max_nodes, max_assignments)

    # peel vertices of degree < n: each is colourable last with a colour its
    # <= n-1 coloured neighbours missed, landing isolated in its class
    alive = [True] * g.vertex_count
    deg = [g.degree(v) for v in range(g.vertex_count)]
    queue = [v for v in range(g.vertex_count) if deg[v] < n]
    while queue:
        v = queue.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for w in g.adjacency[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] < n:
                    queue.append(w)
    kept = [v for v in range(g.vertex_count) if alive[v]]
    if not kept:
        return ChoosabilityVerdict(True, None)

    index = {v: i for i, v in enumerate(kept)}
    adj = [0] * len(kept)
    for i, v in enumerate(kept):
        for w in g.adjacency[v]:
            if alive[w]:
                adj[i] |= 1 << index[w]
    V = len(kept)
    class_ok = _class_checker(adj, f, {})
    patterns: dict[int, int] = {}
    lists: list[tuple[int, ...]] = []

    def lift_witness() -> ListAssignment:
        default = frozenset(range(n))
        out: list[frozenset[int]] = [default] * g.vertex_count
        for i, lst in enumerate(lists):
            out[kept[i]] = frozenset(lst)
        return ListAssignment(tuple(out))

    def dfs(v: int, next_fresh: int, phi: dict[int, int],
            masks: dict[int, int]) -> ListAssignment | None:
        if v == V:
            budget.tick_assignment("is_n_choosable")
            return None  # phi colours the whole assignment: not a counterexample
        bit = 1 << v
        for lst in _list_choices(patterns, next_fresh, n):
            fresh = sum(1 for c in lst if c >= next_fresh)
            for c in lst:
                patterns[c] = patterns.get(c, 0) | bit
            lists.append(lst)
            # extend the prefix colouring cheaply if we can, else fall back to
            # a full search, whose failure certifies a counterexample prefix
            new_phi = None
            new_masks = None
            for c in lst:
                cand = masks.get(c, 0) | bit
                if class_ok(cand):
                    new_phi = dict(phi)
                    new_phi[v] = c
                    new_masks = dict(masks)
                    new_masks[c] = cand
                    break
            if new_phi is None:
                budget.spend_nodes(len(lst), "is_n_choosable")
                found = _backtrack_lists(adj, list(range(v + 1)), lists,
                                         class_ok, budget, "is_n_choosable")
                if found is None:
                    return lift_witness()  # any completion stays uncolourable
                new_phi = found
                new_masks = {}
                for u, c in found.items():
                    new_masks[c] = new_masks.get(c, 0) | (1 << u)
            witness = dfs(v + 1, next_fresh + fresh, new_phi, new_masks)
            lists.pop()
            for c in lst:
                if c >= next_fresh:
                    del patterns[c]
                else:
                    patterns[c] &= ~bit
            if witness is not None:
                return witness
        return None

    witness = dfs(0, 0, {}, {})
    if witness is None:
        return ChoosabilityVerdict(True, None)
    return ChoosabilityVerdict(False, witness)


def ch(g: Graph, f: FamilySpec,
       max_nodes: int = DEFAULT_MAX_NODES,
       max_assignments: int = DEFAULT_MAX_ASSIGNMENTS) -> int:
    """Smallest n for which ``g`` is n-choosable relative to ``f``.

    Starts at chi(g, f): constant lists {1..n} form an n-list assignment, so
    the choice number can never undercut the chromatic number.
    """
    n = chi(g, f, max_nodes)
    while True:
        verdict = is_n_choosable(g, n, f, max_nodes, max_assignments)
        if verdict.choosable:
            return n
        n += 1


# --- list assignment utilities ---------------------------------------------------

def random_list_assignment(g: Graph, size: int, palette: int,
                           rng: random.Random) -> ListAssignment:
    """Uniform random size-``size`` lists drawn from ``range(palette)``."""
    if palette < size:
        raise ValueError("palette smaller than list size")
    return ListAssignment(tuple(
        frozenset(rng.sample(range(palette), size)) for _ in range(g.vertex_count)))


def constant_list_assignment(g: Graph, size: int) -> ListAssignment:
    return ListAssignment(tuple(frozenset(range(size)) for _ in range(g.vertex_count)))


# --- text formats ------------------------------------------------------------------
#
# list assignments:   list <v> <c1> <c2> ... <ck>     every vertex exactly once
# colourings:         <v> <c>                         sorted by vertex

def assignment_to_text(L: ListAssignment) -> str:
    lines = [f"list {v} " + " ".join(str(c) for c in sorted(L[v]))
             for v in range(len(L))]
    return "\n".join(lines) + "\n"


def assignment_from_text(text: str, vertex_count: int) -> ListAssignment:
    lists: dict[int, frozenset[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "list" or len(parts) < 3:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
        v = int(parts[1])
        if v in lists:
            raise ValueError(f"line {lineno}: vertex {v} listed twice")
        lists[v] = frozenset(int(c) for c in parts[2:])
    if sorted(lists) != list(range(vertex_count)):
        raise ValueError("every vertex must appear exactly once")
    return ListAssignment(tuple(lists[v] for v in range(vertex_count)))


def colouring_to_text(phi: Colouring) -> str:
    return "\n".join(f"{v} {c}" for v, c in enumerate(phi.colours)) + "\n"


def colouring_from_text(text: str, vertex_count: int) -> Colouring:
    values: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
        v = int(parts[0])
        if v in values:
            raise ValueError(f"line {lineno}: vertex {v} coloured twice")
        values[v] = int(parts[1])
    if sorted(values) != list(range(vertex_count)):
        raise ValueError("every vertex must appear exactly once")
    return Colouring(tuple(values[v] for v in range(vertex_count)))
