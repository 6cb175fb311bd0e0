"""k-dimensional Weisfeiler-Lehman refinement over k-tuples of vertices.

Round 1 colours every tuple by its atomic type. Round r+1 colours tuple t by

    (colour_r(t), multiset over m in V of (tp(t m), (colour_r(t[0:=m]), ..., colour_r(t[k-1:=m]))))

where t[l:=m] replaces coordinate l by m. Colour ids are assigned per round
by sorting the distinct signatures (over every graph being compared) and
numbering them in order, so ids never depend on tuple order or graph order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import Graph
from .tuples import TupleSpace, atomic_type_rows

_INT63 = 2 ** 62


def dense_rank_rows(rows: np.ndarray) -> tuple[np.ndarray, int]:
    """Rank rows of a 2-D integer array in lexicographic order.

    Equal rows get equal ranks, ranks are contiguous from 0.
    """
    count = rows.shape[0]
    if count == 0:
        return np.zeros(0, dtype=np.int64), 0
    if rows.shape[1] == 1:
        order = np.argsort(rows[:, 0], kind="stable")
    else:
        order = np.lexsort(rows.T[::-1])
    srt = rows[order]
    new_group = np.empty(count, dtype=bool)
    new_group[0] = True
    new_group[1:] = np.any(srt[1:] != srt[:-1], axis=1)
    ranks_sorted = np.cumsum(new_group) - 1
    ranks = np.empty(count, dtype=np.int64)
    ranks[order] = ranks_sorted
    return ranks, int(ranks_sorted[-1]) + 1


class SignatureInterner:
    """Maps canonical signature rows to colour ids.

    One call to ``assign`` is one round: every signature seen in the round
    (from all graphs) is collected, sorted, and numbered in sorted order.
    Distinct signatures always get distinct ids; nothing is hashed.
    """

    def __init__(self):
        self.table: np.ndarray | None = None
        self.next_id = 0
        self.rounds = 0

    def assign(self, blocks: Sequence[np.ndarray]) -> list[np.ndarray]:
        widths = {b.shape[1] for b in blocks}
        if len(widths) != 1:
            raise ValueError(f"signature blocks have mismatched widths {sorted(widths)}")
        rows = np.concatenate(blocks, axis=0)
        ids, num = dense_rank_rows(rows)
        if num:
            first = np.zeros(num, dtype=np.int64)
            first[ids[::-1]] = np.arange(len(ids) - 1, -1, -1)
            self.table = rows[first]
        else:
            self.table = rows[:0]
        self.next_id = num
        self.rounds += 1
        out, start = [], 0
        for b in blocks:
            out.append(ids[start:start + len(b)])
            start += len(b)
        return out

    def lookup(self, signature: Sequence[int]) -> int | None:
        """Id of a signature from the latest round, or None if unseen."""
        if self.table is None:
            return None
        row = np.asarray(signature, dtype=np.int64)
        if row.shape != self.table.shape[1:]:
            return None
        hits = np.flatnonzero(np.all(self.table == row, axis=1))
        return int(hits[0]) if len(hits) else None


@dataclass(frozen=True)
class Coloring:
    n: int
    k: int
    colors: np.ndarray = field(repr=False)

    @property
    def num_classes(self) -> int:
        return len(np.unique(self.colors))

    def histogram(self) -> RoundHistogram:
        return RoundHistogram.of(self.colors)

    def as_array(self) -> np.ndarray:
        """Colours reshaped to an n x ... x n array indexed by tuple coordinates."""
        return self.colors.reshape((self.n,) * self.k)


@dataclass(frozen=True)
class RoundHistogram:
    counts: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, colors: np.ndarray) -> RoundHistogram:
        ids, mult = np.unique(colors, return_counts=True)
        return cls(tuple(zip(ids.tolist(), mult.tolist())))

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def as_counter(self) -> Counter:
        return Counter(dict(self.counts))


@dataclass
class WlRun:
    graph: Graph
    k: int
    colorings: list[Coloring]
    stable_round: int

    @property
    def per_round(self) -> list[tuple[Coloring, RoundHistogram]]:
        return [(c, c.histogram()) for c in self.colorings]

    def coloring(self, r: int) -> Coloring:
        """Colouring of round r (1-based); rounds past the last computed one repeat the stable partition."""
        if r < 1:
            raise ValueError(f"rounds start at 1, got {r}")
        return self.colorings[min(r, len(self.colorings)) - 1]

    def class_counts(self) -> list[int]:
        return [c.num_classes for c in self.colorings]


def _check_dim(k: int) -> None:
    if k < 1:
        raise ValueError(f"WL dimension must be >= 1, got {k}")


def _initial_rows(g: Graph, k: int) -> np.ndarray:
    return atomic_type_rows(g, TupleSpace(g.n, k).all_tuples())


def _extension_codes(g: Graph, k: int, tuples: np.ndarray) -> np.ndarray:
    """(N, n) code of how vertex m attaches to tuple t.

    Together with tp(t) this is exactly tp(t m): the first position equal
    to m (k if none) and the adjacency bits of m to each coordinate.
    """
    n = g.n
    ms = np.arange(n)
    first_eq = np.full((len(tuples), n), k, dtype=np.int64)
    adj_bits = np.zeros((len(tuples), n), dtype=np.int64)
    for l in range(k - 1, -1, -1):
        col = tuples[:, l]
        first_eq = np.where(col[:, None] == ms[None, :], l, first_eq)
        adj_bits |= g.adj[col].astype(np.int64) << l
    return first_eq * (1 << k) + adj_bits


def _substituted_colors(prev: np.ndarray, n: int, k: int, pos: int) -> np.ndarray:
    """(N, n) array: colour of t with coordinate ``pos`` replaced by m."""
    nd = prev.reshape((n,) * k)
    moved = np.expand_dims(np.moveaxis(nd, pos, -1), pos)
    return np.broadcast_to(moved, (n,) * k + (n,)).reshape(n ** k, n)


def _refine_blocks(graphs: Sequence[Graph], k: int, prevs: Sequence[np.ndarray]) -> list[np.ndarray]:
    n = graphs[0].n
    space = TupleSpace(n, k)
    tuples = space.all_tuples()
    num_colors = max(int(p.max()) + 1 for p in prevs)
    ext_span = (k + 1) << k
    packed = ext_span * num_colors ** k < _INT63

    recs = []
    for g, prev in zip(graphs, prevs):
        ext = _extension_codes(g, k, tuples)
        subs = [_substituted_colors(prev, n, k, l) for l in range(k)]
        if packed:
            key = ext.copy()
            for s in subs:
                key = key * num_colors + s
            recs.append(key)
        else:
            recs.append(np.stack([ext] + subs, axis=2))

    if packed:
        keys = recs
    else:
        flat = np.concatenate([r.reshape(-1, k + 1) for r in recs], axis=0)
        ranks, _ = dense_rank_rows(flat)
        keys, start = [], 0
        for r in recs:
            size = r.shape[0] * r.shape[1]
            keys.append(ranks[start:start + size].reshape(r.shape[0], r.shape[1]))
            start += size

    # the multiset over m is the sorted record list; prev colour goes first
    return [np.concatenate([prev[:, None], np.sort(key, axis=1)], axis=1)
            for prev, key in zip(prevs, keys)]


def initial_coloring(g: Graph, k: int, interner: SignatureInterner) -> Coloring:
    _check_dim(k)
    (ids,) = interner.assign([_initial_rows(g, k)])
    return Coloring(g.n, k, ids)


def refine_round(g: Graph, k: int, prev: Coloring, interner: SignatureInterner) -> Coloring:
    _check_dim(k)
    if prev.k != k or prev.n != g.n:
        raise ValueError("previous colouring does not match graph size and dimension")
    if g.n == 0:
        return prev
    (ids,) = interner.assign(_refine_blocks([g], k, [prev.colors]))
    return Coloring(g.n, k, ids)


def round_cap(n: int, k: int) -> int:
    return max(1, n ** k)


@dataclass
class JointRun:
    """Synchronised runs over several equal-size graphs sharing one interner."""

    graphs: list[Graph]
    k: int
    colorings: list[list[Coloring]]  # colorings[round - 1][graph index]
    stable_round: int | None

    @property
    def rounds(self) -> int:
        return len(self.colorings)

    def coloring_round(self, r: int) -> list[Coloring]:
        if not 1 <= r <= self.rounds:
            raise ValueError(f"round {r} out of range [1, {self.rounds}]")
        return self.colorings[r - 1]

    def histograms(self, r: int) -> list[RoundHistogram]:
        return [c.histogram() for c in self.coloring_round(r)]

    def joint_class_count(self, r: int) -> int:
        return len(np.unique(np.concatenate([c.colors for c in self.colorings[r - 1]])))

    def run_for(self, i: int) -> WlRun:
        cols = [rnd[i] for rnd in self.colorings]
        counts = [c.num_classes for c in cols]
        stable = len(cols)
        for r in range(1, len(cols)):
            if counts[r] <= counts[r - 1]:
                stable = r
                break
        return WlRun(self.graphs[i], self.k, cols, stable)


def refine_jointly(graphs: Sequence[Graph], k: int, max_rounds: int | None = None,
                   stop_when_stable: bool = True,
                   interner: SignatureInterner | None = None) -> JointRun:
    """Run WL on all ``graphs`` in lockstep with a shared interner.

    With ``stop_when_stable`` the run ends one round after the joint
    partition (over the disjoint union of all tuple sets) stops growing;
    that confirming round is kept. Without it exactly ``max_rounds`` rounds
    are computed.
    """
    _check_dim(k)
    graphs = list(graphs)
    if not graphs:
        raise ValueError("need at least one graph")
    n = graphs[0].n
    if any(g.n != n for g in graphs):
        raise ValueError("joint refinement needs graphs of equal size")
    interner = interner or SignatureInterner()
    cap = round_cap(n, k)
    if max_rounds is None:
        max_rounds = cap + 1
    if max_rounds < 1:
        raise ValueError(f"max_rounds must be >= 1, got {max_rounds}")

    ids = interner.assign([_initial_rows(g, k) for g in graphs])
    rounds = [[Coloring(n, k, c) for c in ids]]
    counts = [interner.next_id]
    stable = None
    while len(rounds) < max_rounds and n > 0:
        prevs = [c.colors for c in rounds[-1]]
        ids = interner.assign(_refine_blocks(graphs, k, prevs))
        rounds.append([Coloring(n, k, c) for c in ids])
        counts.append(interner.next_id)
        if stable is None and counts[-1] <= counts[-2]:
            stable = len(rounds) - 1
            if stop_when_stable:
                break
        if stop_when_stable and len(rounds) > cap:
            break
    if n == 0:
        stable = 1
    return JointRun(graphs, k, rounds, stable)


def run_until_stable(g: Graph, k: int, interner: SignatureInterner | None = None) -> WlRun:
    """Refine until the class count stops increasing or round n^k is reached.

    ``stable_round`` is the last round whose successor added no class; the
    successor itself is kept as the final colouring.
    """
    joint = refine_jointly([g], k, interner=interner)
    cols = [rnd[0] for rnd in joint.colorings]
    stable = joint.stable_round if joint.stable_round is not None else min(len(cols), round_cap(g.n, k))
    return WlRun(g, k, cols, stable)


@dataclass
class Comparison:
    k: int
    class_counts: list[list[int]]  # per round, per graph
    histograms_equal: list[bool]
    rounds: int
    complete: bool = True  # False when a round limit cut the run before joint stability

    @property
    def distinguished(self) -> bool:
        return not all(self.histograms_equal)

    @property
    def first_difference(self) -> int | None:
        for r, same in enumerate(self.histograms_equal, start=1):
            if not same:
                return r
        return None


def compare(g: Graph, h: Graph, k: int, max_rounds: int | None = None) -> Comparison:
    """Synchronised WL on g and h; histograms compared every round until joint stability."""
    _check_dim(k)
    if g.n != h.n:
        return Comparison(k, [], [False], 0)
    joint = refine_jointly([g, h], k, max_rounds=max_rounds)
    counts, equal = [], []
    for r in range(1, joint.rounds + 1):
        hg, hh = joint.histograms(r)
        counts.append([c.num_classes for c in joint.colorings[r - 1]])
        equal.append(hg == hh)
    return Comparison(k, counts, equal, joint.rounds, joint.stable_round is not None)


def distinguishes(g: Graph, h: Graph, k: int) -> bool:
    return compare(g, h, k).distinguished


def diagonal_codes(n: int, dim: int, distinct_only: bool = False) -> np.ndarray:
    """Codes of tuples (i_1..i_h, i_1..i_h) in a 2h-tuple space, in encode order of the half."""
    if dim % 2:
        raise ValueError(f"diagonal needs an even dimension, got {dim}")
    half = TupleSpace(n, dim // 2)
    codes = np.arange(half.size, dtype=np.int64)
    if distinct_only:
        codes = codes[half.distinct_mask()]
    return codes * half.size + codes


def diagonal_histogram(run: WlRun, r: int, distinct_only: bool = False) -> RoundHistogram:
    if not 1 <= r <= len(run.colorings):
        raise ValueError(f"round {r} out of range [1, {len(run.colorings)}]")
    col = run.colorings[r - 1]
    return RoundHistogram.of(col.colors[diagonal_codes(col.n, col.k, distinct_only)])
