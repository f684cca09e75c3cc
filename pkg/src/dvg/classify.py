"""Enumeration of minimal (-n)-divisor graphs on trees.

The search follows the incremental recipe: start from the reduced tree,
raise one multiplicity at a time so that the added copy meets the current
divisor in exactly 1 (which pins the curve's weight at its first repeat),
sweep the still-free weights, and post-filter declaratively.  Output is
complete within the explicit caps (max multiplicity, min weight); a
brute-force sweep over the same capped grid serves as an oracle on small
instances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .lattice import (
    CapExceededError,
    CurveConfig,
    Divisor,
    InvalidInputError,
    canonicalize,
    k_degree,
)
from .props import is_curvelike, is_minimal

Edge = tuple[int, int]


class PartialEnumerationError(CapExceededError):
    """The state cap was hit; carries the branch that was not explored."""

    def __init__(self, message: str, branch=None):
        super().__init__(message)
        self.branch = branch


@dataclass(frozen=True)
class EnumerationParams:
    """Search box for the minimal-divisor enumeration.

    ``vertices`` enumerates all free trees of that size; ``topology`` pins an
    explicit edge list instead.  Weights range over [min_weight, -1] (default
    min_weight = -(n+1), the bound satisfied by curves opening a
    1-decomposition) and multiplicities over [1, max_mult].
    """

    n: int
    vertices: int | None = None
    topology: tuple[Edge, ...] | None = None
    max_mult: int = 6
    min_weight: int | None = None
    state_cap: int = 200_000

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError("target n must be >= 1")
        if (self.vertices is None) == (self.topology is None):
            raise InvalidInputError("give exactly one of vertices or topology")
        if self.vertices is not None and self.vertices < 1:
            raise InvalidInputError("vertex count must be >= 1")
        if self.max_mult < 1:
            raise InvalidInputError("max multiplicity must be >= 1")
        if self.resolved_min_weight > -1:
            raise InvalidInputError("min weight must be <= -1")

    @property
    def resolved_min_weight(self) -> int:
        return -(self.n + 1) if self.min_weight is None else self.min_weight


# --- free trees -------------------------------------------------------------

MAX_TREE_VERTICES = 8


def _ahu_code(adjacency: list[list[int]], root: int, parent: int) -> str:
    children = sorted(
        _ahu_code(adjacency, child, root)
        for child in adjacency[root] if child != parent)
    return "(" + "".join(children) + ")"


def _tree_centers(adjacency: list[list[int]]) -> list[int]:
    v = len(adjacency)
    if v == 1:
        return [0]
    degree = [len(adjacency[i]) for i in range(v)]
    layer = [i for i in range(v) if degree[i] == 1]
    remaining = v
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for leaf in layer:
            for other in adjacency[leaf]:
                degree[other] -= 1
                if degree[other] == 1:
                    nxt.append(other)
        layer = nxt
    return sorted(layer)


def _adjacency(v: int, edges: tuple[Edge, ...]) -> list[list[int]]:
    adjacency: list[list[int]] = [[] for _ in range(v)]
    for a, b in edges:
        adjacency[a].append(b)
        adjacency[b].append(a)
    return adjacency


def tree_key(v: int, edges: tuple[Edge, ...]) -> str:
    """Isomorphism-invariant code of a free tree (rooted at its center)."""
    adjacency = _adjacency(v, edges)
    return min(_ahu_code(adjacency, c, -1) for c in _tree_centers(adjacency))


def _canonical_edges(v: int, edges: tuple[Edge, ...]) -> tuple[Edge, ...]:
    """Relabel so vertex ids follow a preorder walk of the canonical rooting."""
    adjacency = _adjacency(v, edges)
    root = min(_tree_centers(adjacency),
               key=lambda c: _ahu_code(adjacency, c, -1))
    order: dict[int, int] = {}
    out: list[Edge] = []

    def walk(node: int, parent: int) -> None:
        order[node] = len(order)
        children = sorted(
            (child for child in adjacency[node] if child != parent),
            key=lambda child: _ahu_code(adjacency, child, node))
        for child in children:
            out.append((order[node], len(order)))
            walk(child, node)

    walk(root, -1)
    return tuple(out)


def free_trees(v: int) -> list[tuple[Edge, ...]]:
    """All unlabeled free trees on v vertices, once each, as edge lists."""
    if not 1 <= v <= MAX_TREE_VERTICES:
        raise InvalidInputError(f"vertex count must be in 1..{MAX_TREE_VERTICES}")
    current: dict[str, tuple[int, tuple[Edge, ...]]] = {"()": (1, ())}
    for _ in range(v - 1):
        grown: dict[str, tuple[int, tuple[Edge, ...]]] = {}
        for size, edges in current.values():
            for attach in range(size):
                extended = edges + ((attach, size),)
                grown.setdefault(tree_key(size + 1, extended), (size + 1, extended))
        current = grown
    return sorted(
        (_canonical_edges(size, edges) for size, edges in current.values()),
        key=lambda e: tree_key(v, e))


# --- incremental search -------------------------------------------------------

def _tree_config(v: int, edges: tuple[Edge, ...], weights: tuple[int, ...]) -> CurveConfig:
    labels = tuple(f"C{i + 1}" for i in range(v))
    pairs = [(labels[a], labels[b], 1) for a, b in edges]
    return CurveConfig.build([(labels[i], weights[i]) for i in range(v)], pairs)


def _connected_subsets(v: int, adjacency: list[list[int]]):
    """All connected non-empty vertex subsets (as frozensets)."""
    found: set[frozenset[int]] = set()
    frontier = [frozenset([i]) for i in range(v)]
    found.update(frontier)
    while frontier:
        nxt = []
        for subset in frontier:
            for node in subset:
                for neighbour in adjacency[node]:
                    if neighbour in subset:
                        continue
                    grown = subset | {neighbour}
                    if grown not in found:
                        found.add(grown)
                        nxt.append(grown)
        frontier = nxt
    return found


def _violates_negatively_closed(subsets, mults, weights, adjacency) -> bool:
    """Prune 2': a reduced connected subdivisor on weight-known support with
    A^2 >= 0 can never sit inside a curvelike divisor."""
    for subset in subsets:
        square = 0
        known = True
        for i in subset:
            if mults[i] == 0:
                known = False
                break
            w = weights[i]
            if w is None:
                known = False
                break
            square += w
            for j in adjacency[i]:
                if j > i and j in subset:
                    square += 2
        if known and square >= 0:
            return True
    return False


def _declarative_filter(divisor: Divisor, n: int):
    """Full property re-verification of one candidate."""
    if divisor.square != -n or k_degree(divisor) != n - 2:
        return None
    verdict = is_curvelike(divisor)
    if not verdict or verdict.n != n:
        return None
    if not is_minimal(divisor).minimal:
        return None
    return divisor


def _search_tree(edges: tuple[Edge, ...], v: int, params: EnumerationParams) -> list[Divisor]:
    n = params.n
    min_weight = params.resolved_min_weight
    adjacency = _adjacency(v, edges)
    subsets = _connected_subsets(v, adjacency)

    start = ((1,) * v, (None,) * v)
    seen = {start}
    frontier = [start]
    states = [start]
    while frontier:
        nxt = []
        for mults, weights in frontier:
            for i in range(v):
                k = mults[i]
                if k >= params.max_mult:
                    continue
                neighbour_sum = sum(mults[j] for j in adjacency[i])
                # the added copy must meet the current divisor in exactly 1:
                # k*w_i + neighbour_sum = 1
                if weights[i] is None:
                    if k != 1:
                        raise AssertionError("weight must be pinned at first repeat")
                    w = 1 - neighbour_sum
                    if not min_weight <= w <= -1:
                        continue
                    new_weights = weights[:i] + (w,) + weights[i + 1:]
                else:
                    if k * weights[i] + neighbour_sum != 1:
                        continue
                    new_weights = weights
                new_mults = mults[:i] + (k + 1,) + mults[i + 1:]
                state = (new_mults, new_weights)
                if state in seen:
                    continue
                if _violates_negatively_closed(subsets, new_mults, new_weights, adjacency):
                    continue
                seen.add(state)
                if len(seen) > params.state_cap:
                    raise PartialEnumerationError(
                        f"state cap {params.state_cap} exceeded", branch=state)
                nxt.append(state)
                states.append(state)
        frontier = nxt

    results = []
    weight_range = range(min_weight, 0)
    for mults, weights in states:
        free = [i for i in range(v) if weights[i] is None]
        for filling in itertools.product(weight_range, repeat=len(free)):
            full = list(weights)
            for slot, w in zip(free, filling):
                full[slot] = w
            config = _tree_config(v, edges, tuple(full))
            divisor = config.divisor(mults)
            accepted = _declarative_filter(divisor, n)
            if accepted is not None:
                results.append(accepted)
    return results


def enumerate_minimal(params: EnumerationParams) -> list[Divisor]:
    """Isomorphism classes of minimal (-n)-divisors on trees, within caps.

    Every emitted divisor is 1-decomposable, negatively filtered, has
    D.K = n-2 (hence D^2 = -n) and admits no contraction or twist-off.
    Deduplicated and sorted by canonical form.
    """
    if params.topology is not None:
        v = 1 + max((max(e) for e in params.topology), default=-1)
        if v == 0:
            v = 1
        topologies = [params.topology]
    else:
        v = params.vertices
        topologies = free_trees(v)
    by_canonical: dict[bytes, Divisor] = {}
    for edges in topologies:
        for divisor in _search_tree(tuple(edges), v, params):
            by_canonical.setdefault(canonicalize(divisor), divisor)
    return [by_canonical[key] for key in sorted(by_canonical)]


def brute_force_minimal(params: EnumerationParams) -> list[Divisor]:
    """Declarative sweep over the full capped grid; oracle for the search."""
    if params.topology is not None:
        v = 1 + max((max(e) for e in params.topology), default=-1)
        if v == 0:
            v = 1
        topologies = [params.topology]
    else:
        v = params.vertices
        topologies = free_trees(v)
    n = params.n
    weight_range = range(params.resolved_min_weight, 0)
    mult_range = range(1, params.max_mult + 1)
    by_canonical: dict[bytes, Divisor] = {}
    for edges in topologies:
        for weights in itertools.product(weight_range, repeat=v):
            config = _tree_config(v, tuple(edges), weights)
            for mults in itertools.product(mult_range, repeat=v):
                divisor = config.divisor(mults)
                accepted = _declarative_filter(divisor, n)
                if accepted is not None:
                    by_canonical.setdefault(canonicalize(accepted), accepted)
    return [by_canonical[key] for key in sorted(by_canonical)]
