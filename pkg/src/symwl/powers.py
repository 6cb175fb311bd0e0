"""Graph powers, restricted and symmetric powers, and simply laced quotients.

Vertex orders are fixed: G^k follows tuple encode order, G^(k) lists the
distinct tuples in encode order, and the symmetric power lists k-subsets in
lexicographic order (itertools.combinations).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, factorial
from typing import Sequence

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .graph import Graph
from .tuples import TupleSpace


class ActionError(ValueError):
    pass


def cartesian_product(g: Graph, h: Graph, limits: Limits = DEFAULT_LIMITS) -> Graph:
    """Vertex (a, b) is a * h.n + b; adjacent iff one coordinate moves along an edge."""
    limits.check_vertices(g.n * h.n, "cartesian product")
    adj = np.kron(g.adj, np.eye(h.n, dtype=bool)) | np.kron(np.eye(g.n, dtype=bool), h.adj)
    return Graph(adj)


def _check_order(k: int) -> None:
    if k < 1:
        raise ValueError(f"power order must be >= 1, got {k}")


def _move_targets(g: Graph, tuples: np.ndarray, codes: np.ndarray, k: int, avoid_occupied: bool):
    """Yield (row, target code) for every single-coordinate move along an edge."""
    n = g.n
    rows_all = np.arange(len(tuples))
    occupied = None
    if avoid_occupied:
        occupied = np.zeros((len(tuples), n), dtype=bool)
        for l in range(k):
            occupied[rows_all, tuples[:, l]] = True
    for l in range(k):
        weight = n ** (k - 1 - l)
        moves = g.adj[tuples[:, l]]
        if occupied is not None:
            moves = moves & ~occupied
        rows, ms = np.nonzero(moves)
        yield rows, codes[rows] + (ms - tuples[rows, l]) * weight


def kth_power(g: Graph, k: int, limits: Limits = DEFAULT_LIMITS) -> Graph:
    _check_order(k)
    space = TupleSpace(g.n, k)
    limits.check_vertices(space.size, f"{k}-th power")
    tuples = space.all_tuples()
    codes = np.arange(space.size)
    adj = np.zeros((space.size, space.size), dtype=bool)
    for rows, targets in _move_targets(g, tuples, codes, k, avoid_occupied=False):
        adj[rows, targets] = True
    return Graph(adj)


def restricted_power(g: Graph, k: int, limits: Limits = DEFAULT_LIMITS) -> Graph:
    """Induced subgraph of G^k on tuples with pairwise distinct coordinates."""
    _check_order(k)
    if k > g.n:
        raise ValueError(f"restricted power needs k <= n, got k={k}, n={g.n}")
    space = TupleSpace(g.n, k)
    limits.check_vertices(space.distinct_size, f"restricted {k}-th power")
    codes = space.distinct_codes()
    tuples = space.all_tuples()[codes]
    index = np.full(space.size, -1, dtype=np.int64)
    index[codes] = np.arange(len(codes))
    adj = np.zeros((len(codes), len(codes)), dtype=bool)
    for rows, targets in _move_targets(g, tuples, codes, k, avoid_occupied=True):
        adj[rows, index[targets]] = True
    return Graph(adj)


def subsets(n: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations(range(n), k))


def sym_power(g: Graph, k: int, limits: Limits = DEFAULT_LIMITS) -> Graph:
    """Graph on k-subsets, adjacent iff their symmetric difference is an edge."""
    _check_order(k)
    if k > g.n:
        raise ValueError(f"symmetric power needs k <= n, got k={k}, n={g.n}")
    limits.check_vertices(comb(g.n, k), f"symmetric {k}-th power")
    verts = subsets(g.n, k)
    index = {s: i for i, s in enumerate(verts)}
    adj = np.zeros((len(verts), len(verts)), dtype=bool)
    nbrs = [set(g.neighbors(v)) for v in range(g.n)]
    for i, s in enumerate(verts):
        members = set(s)
        for out in s:
            rest = members - {out}
            for new in nbrs[out] - members:
                adj[i, index[tuple(sorted(rest | {new}))]] = True
    return Graph(adj)


@dataclass(frozen=True)
class Action:
    """Orbit data of a group acting on the vertices of a graph.

    ``generators`` are optional vertex permutations (perm[v] = image of v)
    used to spot-check that the group acts by automorphisms.
    """

    orbit_of: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...] = ()
    orbit_members: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        ids = sorted(set(self.orbit_of))
        if ids != list(range(len(ids))):
            raise ActionError("orbit ids must be contiguous from 0")
        members = [[] for _ in ids]
        for v, o in enumerate(self.orbit_of):
            members[o].append(v)
        object.__setattr__(self, "orbit_members", tuple(tuple(m) for m in members))

    @property
    def num_orbits(self) -> int:
        return len(self.orbit_members)

    def orbit_sizes(self) -> list[int]:
        return [len(m) for m in self.orbit_members]

    def indicator(self) -> np.ndarray:
        """(vertices, orbits) 0/1 integer matrix."""
        ind = np.zeros((len(self.orbit_of), self.num_orbits), dtype=np.int64)
        ind[np.arange(len(self.orbit_of)), self.orbit_of] = 1
        return ind

    @classmethod
    def trivial(cls, n: int) -> Action:
        return cls(tuple(range(n)))

    @classmethod
    def from_permutations(cls, n: int, generators: Sequence[Sequence[int]]) -> Action:
        """Orbits of the group generated by ``generators``, numbered by smallest member."""
        gens = tuple(tuple(int(x) for x in p) for p in generators)
        for p in gens:
            if sorted(p) != list(range(n)):
                raise ActionError(f"generator {p} is not a permutation of range({n})")
        parent = list(range(n))

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for p in gens:
            for v in range(n):
                a, b = find(v), find(p[v])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        roots = sorted({find(v) for v in range(n)})
        rid = {r: i for i, r in enumerate(roots)}
        return cls(tuple(rid[find(v)] for v in range(n)), gens)


def check_action(x: Graph, action: Action) -> None:
    if len(action.orbit_of) != x.n:
        raise ActionError(f"action covers {len(action.orbit_of)} vertices, graph has {x.n}")
    for p in action.generators:
        perm = np.asarray(p)
        if len(perm) != x.n:
            raise ActionError("generator length does not match the graph")
        if not np.array_equal(x.adj[np.ix_(perm, perm)], x.adj):
            raise ActionError(f"generator {p} is not an automorphism")
        if any(action.orbit_of[v] != action.orbit_of[perm[v]] for v in range(x.n)):
            raise ActionError(f"generator {p} does not preserve the orbits")


@dataclass(frozen=True)
class QuotientGraph:
    base: Graph
    action: Action
    simply_laced: bool
    quotient: Graph | None
    violation: dict | None = None


def quotient(x: Graph, action: Action) -> QuotientGraph:
    """Quotient by an action; only the simply laced case yields a graph.

    When a condition fails, ``violation`` names the offending edge or vertex
    instead of raising.
    """
    check_action(x, action)
    orbit = np.asarray(action.orbit_of, dtype=np.int64)
    for u, v in x.edges:
        if orbit[u] == orbit[v]:
            return QuotientGraph(x, action, False, None,
                                 {"condition": 1, "edge": [u, v], "orbit": int(orbit[u])})
    for u in range(x.n):
        seen: dict[int, int] = {}
        for v in x.neighbors(u):
            o = int(orbit[v])
            if o in seen:
                return QuotientGraph(x, action, False, None,
                                     {"condition": 2, "vertex": u,
                                      "neighbors": [seen[o], v], "orbit": o})
            seen[o] = v
    ind = action.indicator()
    arrows = ind.T @ x.adjacency_int() @ ind
    return QuotientGraph(x, action, True, Graph(arrows > 0))


def sym_action_on_restricted(g: Graph, k: int) -> Action:
    """S_k permuting coordinates of distinct tuples; orbits are k-subsets.

    Orbit ids follow the subset order of :func:`sym_power`; the generators
    are the adjacent transpositions of positions.
    """
    _check_order(k)
    if k > g.n:
        raise ValueError(f"needs k <= n, got k={k}, n={g.n}")
    space = TupleSpace(g.n, k)
    codes = space.distinct_codes()
    tuples = space.all_tuples()[codes]
    sub_index = {s: i for i, s in enumerate(subsets(g.n, k))}
    orbit_of = tuple(sub_index[tuple(sorted(t))] for t in tuples.tolist())
    index = np.full(space.size, -1, dtype=np.int64)
    index[codes] = np.arange(len(codes))
    gens = []
    for l in range(k - 1):
        swapped = tuples.copy()
        swapped[:, [l, l + 1]] = swapped[:, [l + 1, l]]
        images = index[swapped @ (g.n ** np.arange(k - 1, -1, -1))]
        gens.append(tuple(images.tolist()))
    return Action(orbit_of, tuple(gens))


@dataclass(frozen=True)
class TransferMatrix:
    """Square matrix over base vertices: |U| on pairs inside orbit U, else 0."""

    entries: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def transfer_matrix(action: Action) -> TransferMatrix:
    orbit = np.asarray(action.orbit_of)
    sizes = np.asarray(action.orbit_sizes(), dtype=np.int64)
    same = orbit[:, None] == orbit[None, :]
    return TransferMatrix(np.where(same, sizes[orbit][:, None], 0).astype(np.int64))


def m_matrix(g: Graph, k: int) -> TransferMatrix:
    """k! on pairs of distinct tuples that are equal as sets, else 0."""
    action = sym_action_on_restricted(g, k)
    tm = transfer_matrix(action)
    assert all(s == factorial(k) for s in action.orbit_sizes())
    return tm

