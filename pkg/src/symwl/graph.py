"""Simple undirected graphs on vertices 0..n-1, graph6 and edge-list I/O."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Sequence

import numpy as np

GRAPH6_MAX_N = 62
ISO_SMALL_MAX_N = 10


class GraphError(ValueError):
    pass


class Graph:
    """Immutable simple graph backed by a dense boolean adjacency matrix."""

    __slots__ = ("n", "adj", "_edges")

    def __init__(self, adj: np.ndarray):
        adj = np.array(adj, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise GraphError(f"adjacency must be square, got shape {adj.shape}")
        if adj.diagonal().any():
            raise GraphError("graph has a loop")
        if not np.array_equal(adj, adj.T):
            raise GraphError("adjacency is not symmetric")
        adj.setflags(write=False)
        self.n = adj.shape[0]
        self.adj = adj
        us, vs = np.nonzero(np.triu(adj, 1))
        self._edges = tuple(zip(us.tolist(), vs.tolist()))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges (u, v) with u < v in lexicographic order."""
        return self._edges

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def degrees(self) -> list[int]:
        return self.adj.sum(axis=1).tolist()

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self.adj[v]).tolist()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def adjacency_int(self) -> np.ndarray:
        return self.adj.astype(np.int64)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adj, other.adj)

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


def from_edge_list(n: int, pairs: Iterable[Sequence[int]]) -> Graph:
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    adj = np.zeros((n, n), dtype=bool)
    for pair in pairs:
        u, v = (int(x) for x in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"vertex out of range in pair ({u}, {v}) for n={n}")
        if u == v:
            raise GraphError(f"loop pair ({u}, {v})")
        adj[u, v] = adj[v, u] = True
    return Graph(adj)


def empty_graph(n: int) -> Graph:
    return Graph(np.zeros((n, n), dtype=bool))


# graph6: header byte 63+n, then the upper triangle read column by column
# (0,1),(0,2),(1,2),(0,3),... packed big-endian into 6-bit groups offset by 63.

def _upper_triangle_pairs(n: int):
    for j in range(1, n):
        for i in range(j):
            yield i, j


def write_graph6(g: Graph) -> str:
    if g.n > GRAPH6_MAX_N:
        raise GraphError(f"graph6 writer supports n <= {GRAPH6_MAX_N}, got {g.n}")
    bits = [int(g.adj[i, j]) for i, j in _upper_triangle_pairs(g.n)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + g.n)]
    for start in range(0, len(bits), 6):
        value = 0
        for b in bits[start:start + 6]:
            value = (value << 1) | b
        out.append(chr(63 + value))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise GraphError(f"character {ch!r} outside graph6 range [63, 126]")
    n = ord(s[0]) - 63
    if n > GRAPH6_MAX_N:
        # 126 announces the multi-byte size form
        raise GraphError("graph6 header for n > 62 is not supported")
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    payload = s[1:]
    if len(payload) < nbytes:
        raise GraphError(f"truncated graph6 payload: need {nbytes} bytes, got {len(payload)}")
    if len(payload) > nbytes:
        raise GraphError(f"trailing data after graph6 payload ({len(payload) - nbytes} extra bytes)")
    bits = []
    for ch in payload:
        value = ord(ch) - 63
        bits.extend((value >> (5 - t)) & 1 for t in range(6))
    adj = np.zeros((n, n), dtype=bool)
    for b, (i, j) in zip(bits, _upper_triangle_pairs(n)):
        if b:
            adj[i, j] = adj[j, i] = True
    return Graph(adj)


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    tokens = text.split()
    if len(tokens) < 2:
        raise GraphError("edge list needs an 'n m' header")
    try:
        nums = [int(t) for t in tokens]
    except ValueError as exc:
        raise GraphError(f"non-integer token in edge list: {exc}") from None
    n, m = nums[0], nums[1]
    body = nums[2:]
    if len(body) != 2 * m:
        raise GraphError(f"header announces {m} edges but body has {len(body) / 2:g}")
    return from_edge_list(n, zip(body[0::2], body[1::2]))


def read_graph(text: str, fmt: str | None = None) -> Graph:
    """Parse graph6 or edge-list text; ``fmt=None`` sniffs the format."""
    if fmt is None:
        first = text.strip().split("\n", 1)[0].strip()
        fmt = "edgelist" if " " in first or first.isdigit() else "graph6"
    if fmt == "graph6":
        return parse_graph6(text)
    if fmt == "edgelist":
        return parse_edge_list(text)
    raise GraphError(f"unknown graph format {fmt!r}")


def format_graph(g: Graph, fmt: str) -> str:
    if fmt == "graph6":
        return write_graph6(g) + "\n"
    if fmt == "edgelist":
        return write_edge_list(g)
    raise GraphError(f"unknown graph format {fmt!r}")


def disjoint_union(g: Graph, h: Graph) -> Graph:
    adj = np.zeros((g.n + h.n, g.n + h.n), dtype=bool)
    adj[:g.n, :g.n] = g.adj
    adj[g.n:, g.n:] = h.adj
    return Graph(adj)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (g.n,) or not np.array_equal(np.sort(perm), np.arange(g.n)):
        raise GraphError("perm is not a bijection on the vertex set")
    inv = np.empty_like(perm)
    inv[perm] = np.arange(g.n)
    return Graph(g.adj[np.ix_(inv, inv)])


def is_isomorphic_small(g: Graph, h: Graph) -> bool:
    """Exhaustive isomorphism test, a test oracle only (n <= 10)."""
    if g.n != h.n:
        return False
    n = g.n
    if n > ISO_SMALL_MAX_N:
        raise GraphError(f"exhaustive isomorphism is capped at n={ISO_SMALL_MAX_N}, got {n}")
    if g.num_edges != h.num_edges:
        return False
    dg, dh = g.degrees(), h.degrees()
    if Counter(dg) != Counter(dh):
        return False
    # candidates for image of v: vertices of h with the same degree
    cand = [[w for w in range(n) if dh[w] == dg[v]] for v in range(n)]
    order = sorted(range(n), key=lambda v: len(cand[v]))
    image = [-1] * n
    used = [False] * n

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        v = order[pos]
        for w in cand[v]:
            if used[w]:
                continue
            ok = True
            for prev in order[:pos]:
                if g.adj[v, prev] != h.adj[w, image[prev]]:
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                if extend(pos + 1):
                    return True
                used[w] = False
        image[v] = -1
        return False

    return extend(0)
