"""Named graphs and CFI gadget pairs used as hard test instances."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .graph import Graph, GraphError, from_edge_list
from .powers import cartesian_product
from .wl import distinguishes


def complete(n: int) -> Graph:
    return from_edge_list(n, combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    """K_{1,leaves}: centre 0 joined to vertices 1..leaves."""
    return from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner)


def shrikhande() -> Graph:
    """Cayley graph on Z_4 x Z_4 with connection set {±(1,0), ±(0,1), ±(1,1)}."""
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    edges = []
    for a, b, c, d in product(range(4), repeat=4):
        u, v = 4 * a + b, 4 * c + d
        if u < v and ((c - a) % 4, (d - b) % 4) in conn:
            edges.append((u, v))
    return from_edge_list(16, edges)


def rook4x4() -> Graph:
    return cartesian_product(complete(4), complete(4))


_FIXED = {
    "petersen": petersen,
    "shrikhande": shrikhande,
    "rook4x4": rook4x4,
    "k4": lambda: complete(4),
}
_SIZED = {"complete": complete, "cycle": cycle, "path": path, "star": star}


def named(name: str) -> Graph:
    """Build a graph from a name like ``petersen`` or ``cycle(5)``."""
    key = name.strip().lower()
    if key in _FIXED:
        return _FIXED[key]()
    m = re.fullmatch(r"(\w+)\s*\(\s*(\d+)\s*\)", key)
    if m and m.group(1) in _SIZED:
        return _SIZED[m.group(1)](int(m.group(2)))
    known = sorted(_FIXED) + [f"{s}(n)" for s in sorted(_SIZED)]
    raise GraphError(f"unknown graph name {name!r}; known: {', '.join(known)}")


def srg_parameters(g: Graph) -> tuple[int, int, int, int] | None:
    """(v, k, lambda, mu) if g is strongly regular, else None."""
    degs = set(g.degrees())
    if len(degs) != 1:
        return None
    a = g.adjacency_int()
    common = a @ a
    off = ~np.eye(g.n, dtype=bool)
    lam = set(common[g.adj].tolist())
    mu = set(common[off & ~g.adj].tolist())
    if len(lam) > 1 or len(mu) > 1:
        return None
    return (g.n, degs.pop(), lam.pop() if lam else 0, mu.pop() if mu else 0)


def neighbourhood_signature(g: Graph) -> list[tuple[int, int]]:
    """Sorted (edges, triangles) of the subgraph induced on each vertex neighbourhood."""
    sigs = []
    for v in range(g.n):
        nb = g.neighbors(v)
        sub = g.adj[np.ix_(nb, nb)].astype(np.int64)
        sigs.append((int(sub.sum()) // 2, int(np.trace(sub @ sub @ sub)) // 6))
    return sorted(sigs)


# CFI pairs: one wire pair (e^0, e^1) per base edge, shared by both endpoints;
# at each base vertex v one gadget vertex per even subset S of v's incident
# edges, joined to e^1 for e in S and to e^0 otherwise. The twisted graph
# swaps e^0/e^1 for the twist edge at its larger endpoint only.

@dataclass
class GadgetPair:
    plain: Graph
    twisted: Graph
    base: Graph
    twist_edge: tuple[int, int]
    gadget_ids: dict[tuple[int, tuple[tuple[int, int], ...]], int] = field(default_factory=dict)
    wire_ids: dict[tuple[tuple[int, int], int], int] = field(default_factory=dict)

    def manifest(self) -> dict:
        return {
            "base_n": self.base.n,
            "base_edges": [list(e) for e in self.base.edges],
            "twist_edge": list(self.twist_edge),
            "n": self.plain.n,
            "gadgets": [{"vertex": v, "subset": [list(e) for e in s], "id": i}
                        for (v, s), i in sorted(self.gadget_ids.items(), key=lambda kv: kv[1])],
            "wires": [{"edge": list(e), "bit": b, "id": i}
                      for (e, b), i in sorted(self.wire_ids.items(), key=lambda kv: kv[1])],
        }


def _is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def _cfi_graph(base: Graph, twists: Iterable[tuple[tuple[int, int], int]]):
    """Build the gadget graph; each (edge, endpoint) in ``twists`` swaps that side's wire bits."""
    flips: dict[tuple[tuple[int, int], int], int] = {}
    for e, v in twists:
        e = tuple(sorted(e))
        if e not in base.edges or v not in e:
            raise GraphError(f"twist ({e}, {v}) does not name an edge endpoint")
        flips[(e, v)] = flips.get((e, v), 0) ^ 1
    incident = {v: [e for e in base.edges if v in e] for v in range(base.n)}
    gadget_ids: dict = {}
    wire_ids: dict = {}
    next_id = 0
    for v in range(base.n):
        edges_v = incident[v]
        for size in range(0, len(edges_v) + 1, 2):
            for s in combinations(edges_v, size):
                gadget_ids[(v, s)] = next_id
                next_id += 1
    for e in base.edges:
        for b in (0, 1):
            wire_ids[(e, b)] = next_id
            next_id += 1
    pairs = []
    for (v, s), gid in gadget_ids.items():
        members = set(s)
        for e in incident[v]:
            bit = 1 if e in members else 0
            bit ^= flips.get((e, v), 0)
            pairs.append((gid, wire_ids[(e, bit)]))
    return from_edge_list(next_id, pairs), gadget_ids, wire_ids


def cfi_pair(base: Graph, twist_edge: tuple[int, int] | None = None) -> GadgetPair:
    if base.n == 0 or not _is_connected(base):
        raise GraphError("CFI base graph must be connected and non-empty")
    if min(base.degrees()) < 2:
        raise GraphError("CFI base graph needs minimum degree >= 2")
    if twist_edge is None:
        twist_edge = base.edges[0]
    twist_edge = tuple(sorted(twist_edge))
    if twist_edge not in base.edges:
        raise GraphError(f"twist edge {twist_edge} is not an edge of the base graph")
    plain, gadget_ids, wire_ids = _cfi_graph(base, [])
    twisted, _, _ = _cfi_graph(base, [(twist_edge, twist_edge[1])])
    return GadgetPair(plain, twisted, base, twist_edge, gadget_ids, wire_ids)


def cfi_graph(base: Graph, twists: Iterable[tuple[tuple[int, int], int]] = ()) -> Graph:
    """Gadget graph with arbitrary twists; repeated twists cancel in pairs."""
    return _cfi_graph(base, twists)[0]


@dataclass
class Certification:
    least_dimension: int | None
    tried: list[int]

    @property
    def status(self) -> str:
        return "distinguished" if self.least_dimension is not None else "unresolved"


def least_distinguishing_dimension(g: Graph, h: Graph, max_dim: int = 3,
                                   min_dim: int = 1,
                                   limits: Limits = DEFAULT_LIMITS) -> Certification:
    """Smallest WL dimension in [min_dim, max_dim] separating g and h, if any."""
    tried = []
    for dim in range(min_dim, max_dim + 1):
        limits.check_wl(g.n, dim)
        tried.append(dim)
        if distinguishes(g, h, dim):
            return Certification(dim, tried)
    return Certification(None, tried)
