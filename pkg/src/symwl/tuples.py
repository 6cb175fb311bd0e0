"""Index arithmetic over k-tuples of vertices and their atomic types.

Tuples are encoded in mixed radix with the first coordinate most
significant, so enumeration order is lexicographic. Positions are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import perm as falling_factorial
from typing import Sequence

import numpy as np

from .graph import Graph


class TupleError(ValueError):
    pass


@dataclass(frozen=True)
class TupleSpace:
    n: int
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise TupleError(f"tuple length must be >= 1, got {self.k}")
        if self.n < 0:
            raise TupleError(f"negative vertex count {self.n}")

    @property
    def size(self) -> int:
        return self.n ** self.k

    @property
    def distinct_size(self) -> int:
        return falling_factorial(self.n, self.k)

    def encode(self, tup: Sequence[int]) -> int:
        if len(tup) != self.k:
            raise TupleError(f"expected a {self.k}-tuple, got length {len(tup)}")
        code = 0
        for v in tup:
            if not 0 <= v < self.n:
                raise TupleError(f"entry {v} out of range for n={self.n}")
            code = code * self.n + int(v)
        return code

    def decode(self, code: int) -> tuple[int, ...]:
        if not 0 <= code < self.size:
            raise TupleError(f"code {code} out of range [0, {self.size})")
        out = []
        for _ in range(self.k):
            code, v = divmod(code, self.n)
            out.append(v)
        return tuple(reversed(out))

    def is_distinct(self, code: int) -> bool:
        t = self.decode(code)
        return len(set(t)) == self.k

    def substitute(self, code: int, pos: int, m: int) -> int:
        """Replace coordinate ``pos`` of the tuple with vertex ``m``."""
        if not 0 <= pos < self.k:
            raise TupleError(f"position {pos} out of range for k={self.k}")
        if not 0 <= m < self.n:
            raise TupleError(f"vertex {m} out of range for n={self.n}")
        weight = self.n ** (self.k - 1 - pos)
        old = (code // weight) % self.n
        return code + (m - old) * weight

    def sym_action(self, theta: Sequence[int], code: int) -> int:
        """Apply theta in S_k: coordinate l moves to position theta[l].

        The result t' satisfies t'[l] = t[theta^{-1}(l)], so the action law
        sym_action(compose(theta, tau), t) == sym_action(theta, sym_action(tau, t))
        holds with compose(theta, tau)[l] = theta[tau[l]].
        """
        theta = check_permutation(theta, self.k)
        t = self.decode(code)
        out = [0] * self.k
        for l, v in enumerate(t):
            out[theta[l]] = v
        return self.encode(out)

    def all_tuples(self) -> np.ndarray:
        """(n^k, k) array of every tuple in encode order."""
        if self.n == 0:
            return np.zeros((0, self.k), dtype=np.int64)
        grids = np.indices((self.n,) * self.k, dtype=np.int64)
        return grids.reshape(self.k, -1).T

    def distinct_mask(self) -> np.ndarray:
        tups = self.all_tuples()
        mask = np.ones(len(tups), dtype=bool)
        for a in range(self.k):
            for b in range(a + 1, self.k):
                mask &= tups[:, a] != tups[:, b]
        return mask

    def distinct_codes(self) -> np.ndarray:
        return np.flatnonzero(self.distinct_mask())


def check_permutation(theta: Sequence[int], k: int) -> tuple[int, ...]:
    theta = tuple(int(x) for x in theta)
    if sorted(theta) != list(range(k)):
        raise TupleError(f"{theta} is not a permutation of range({k})")
    return theta


def compose(theta: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """(theta o tau)[l] = theta[tau[l]]."""
    return tuple(theta[t] for t in tau)


@dataclass(frozen=True)
class AtomicType:
    """Equality and adjacency pattern of a tuple.

    ``eq_pattern[l]`` is the first position holding the same vertex as
    position l. ``adj_pattern`` lists adjacency bits for position pairs
    (a, b), a < b, in row-major order; pairs holding the same vertex are 0.
    """

    eq_pattern: tuple[int, ...]
    adj_pattern: tuple[int, ...]

    def key(self) -> bytes:
        return bytes(self.eq_pattern) + bytes(self.adj_pattern)


def atomic_type(g: Graph, tup: Sequence[int]) -> AtomicType:
    for v in tup:
        if not 0 <= v < g.n:
            raise TupleError(f"vertex {v} out of range for n={g.n}")
    k = len(tup)
    eq = tuple(next(a for a in range(l + 1) if tup[a] == tup[l]) for l in range(k))
    adj = tuple(int(g.adj[tup[a], tup[b]]) for a in range(k) for b in range(a + 1, k))
    return AtomicType(eq, adj)


def atomic_type_rows(g: Graph, tuples: np.ndarray) -> np.ndarray:
    """Vectorised atomic types: one row per tuple, same layout as AtomicType.key()."""
    count, k = tuples.shape
    eq = np.empty((count, k), dtype=np.int64)
    for l in range(k):
        first = np.full(count, l, dtype=np.int64)
        for a in range(l - 1, -1, -1):
            first = np.where(tuples[:, a] == tuples[:, l], a, first)
        eq[:, l] = first
    adj_cols = [g.adj[tuples[:, a], tuples[:, b]].astype(np.int64)
                for a in range(k) for b in range(a + 1, k)]
    if not adj_cols:
        return eq
    return np.concatenate([eq, np.stack(adj_cols, axis=1)], axis=1)
