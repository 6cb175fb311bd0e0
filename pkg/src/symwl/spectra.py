"""Exact spectral invariants: power sums, characteristic polynomials, quotient traces.

Everything here is integer arithmetic. Matrix powers stay in int64 only
while max_degree**r provably fits, then switch to Python integers.
Characteristic polynomials are computed modulo word-sized primes and lifted
by Chinese remaindering against a coefficient bound, so the result is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt
from typing import Iterator

import numpy as np
from sympy import prevprime

from .config import DEFAULT_LIMITS, Limits
from .graph import Graph
from .powers import QuotientGraph, m_matrix, restricted_power, sym_action_on_restricted, sym_power

_INT64_SAFE = 2 ** 62


class PrimePoolExhausted(RuntimeError):
    pass


# -- matrix powers -----------------------------------------------------------

def adjacency_powers(g: Graph, R: int) -> Iterator[np.ndarray]:
    """Yield A, A^2, ..., A^R exactly.

    Row v of A^(r+1) is the sum of rows of A^r over the neighbours of v.
    Entries of A^r are at most max_degree**r, which picks the dtype.
    """
    if R < 1:
        return
    n = g.n
    degrees = g.adj.sum(axis=1)
    max_deg = int(degrees.max()) if n else 0
    dtype = np.int64 if max_deg ** R < _INT64_SAFE else object
    cols = np.nonzero(g.adj)[1]
    starts = np.concatenate([[0], np.cumsum(degrees)[:-1]]).astype(np.int64)
    active = np.flatnonzero(degrees)
    power = g.adj.astype(np.int64).astype(dtype)
    yield power
    for _ in range(R - 1):
        nxt = np.zeros((n, n), dtype=dtype)
        if len(active):
            nxt[active] = np.add.reduceat(power[cols], starts[active], axis=0)
        power = nxt
        yield power


def _trace(m: np.ndarray) -> int:
    return int(sum(int(x) for x in np.diagonal(m)))


@dataclass(frozen=True)
class PowerSumSequence:
    values: tuple[int, ...]  # values[r-1] = Tr(A^r)

    def __getitem__(self, r: int) -> int:
        return self.values[r - 1]

    def __len__(self) -> int:
        return len(self.values)


def power_sums(g: Graph, R: int) -> PowerSumSequence:
    if R < 1:
        raise ValueError(f"R must be >= 1, got {R}")
    return PowerSumSequence(tuple(_trace(p) for p in adjacency_powers(g, R)))


def walk_gen_trace(g: Graph, R: int) -> list[int]:
    """Coefficients Tr(A^0), ..., Tr(A^R) of the walk generating function trace."""
    if R < 0:
        raise ValueError(f"R must be >= 0, got {R}")
    if R == 0:
        return [g.n]
    return [g.n, *power_sums(g, R).values]


# -- characteristic polynomial -----------------------------------------------

@dataclass(frozen=True)
class CharPoly:
    coeffs: tuple[int, ...]  # c_0 .. c_n of det(xI - A)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            body = str(mag) if (mag != 1 or i == 0) else ""
            terms.append((sign, body + mono))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out


def coefficient_bound(n: int) -> int:
    """Upper bound on |c_{n-i}| for a 0/1 matrix: C(n,i) * n^(i/2), maximised over i."""
    return max(comb(n, i) * (isqrt(n ** i) + 1) for i in range(n + 1))


@lru_cache(maxsize=None)
def _prime_pool(size: int) -> tuple[int, ...]:
    primes, p = [], 2 ** 31
    for _ in range(size):
        p = prevprime(p)
        primes.append(p)
    return tuple(primes)


def _hessenberg_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Upper Hessenberg matrix similar to ``a`` over GF(p)."""
    h = a % p
    n = h.shape[0]
    for j in range(n - 2):
        nz = np.flatnonzero(h[j + 1:, j])
        if not len(nz):
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            h[[i, j + 1], :] = h[[j + 1, i], :]
            h[:, [i, j + 1]] = h[:, [j + 1, i]]
        inv = pow(int(h[j + 1, j]), p - 2, p)
        u = (h[j + 2:, j] * inv) % p
        if not u.any():
            continue
        # row_i -= u_i row_{j+1}; then col_{j+1} += sum_i u_i col_i
        h[j + 2:, :] = (h[j + 2:, :] - (u[:, None] * h[j + 1, :][None, :]) % p) % p
        h[:, j + 1] = (h[:, j + 1] + ((h[:, j + 2:] * u[None, :]) % p).sum(axis=1)) % p
    return h


def _charpoly_hessenberg_mod(h: np.ndarray, p: int) -> list[int]:
    n = h.shape[0]
    polys = [np.array([1], dtype=np.int64)]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = np.zeros(m + 1, dtype=np.int64)
        cur[1:] = prev
        cur[:m] = (cur[:m] - (int(h[m - 1, m - 1]) * prev) % p) % p
        t = 1
        for i in range(1, m):
            t = (t * int(h[m - i, m - i - 1])) % p
            if t == 0:
                break
            coef = (t * int(h[m - i - 1, m - 1])) % p
            if coef:
                base = polys[m - i - 1]
                cur[:len(base)] = (cur[:len(base)] - (coef * base) % p) % p
        polys.append(cur)
    return polys[n].tolist()


def char_poly_mod(g: Graph, p: int) -> list[int]:
    """Coefficients c_0..c_n of det(xI - A) reduced mod p."""
    return _charpoly_hessenberg_mod(_hessenberg_mod(g.adjacency_int(), p), p)


def char_poly(g: Graph, limits: Limits = DEFAULT_LIMITS) -> CharPoly:
    n = g.n
    if n == 0:
        return CharPoly((1,))
    need = 2 * coefficient_bound(n) + 1
    pool = _prime_pool(limits.prime_pool)
    modulus, residues = 1, [0] * (n + 1)
    for p in pool:
        if modulus >= need:
            break
        local = char_poly_mod(g, p)
        # incremental CRT: x = r (mod modulus), x = s (mod p)
        inv = pow(modulus % p, -1, p)
        for i, s in enumerate(local):
            r = residues[i]
            residues[i] = r + modulus * (((s - r) * inv) % p)
        modulus *= p
    if modulus < need:
        raise PrimePoolExhausted(
            f"{len(pool)} primes give a {modulus.bit_length()}-bit modulus, "
            f"need {need.bit_length()} bits for n={n}")
    half = modulus // 2
    return CharPoly(tuple(r - modulus if r > half else r for r in residues))


def cospectral(g: Graph, h: Graph, method: str = "charpoly") -> bool:
    if g.n != h.n:
        return False
    if method == "charpoly":
        return char_poly(g) == char_poly(h)
    if method == "power_sums":
        if g.n == 0:
            return True
        return power_sums(g, g.n) == power_sums(h, h.n)
    raise ValueError(f"unknown cospectrality method {method!r}")


def approximate_eigenvalues(g: Graph) -> list[float]:
    """Floating-point spectrum for human-readable reports only; never used for decisions."""
    return sorted(np.linalg.eigvalsh(g.adj.astype(float)).round(9).tolist(), reverse=True)


# -- quotient trace identities -----------------------------------------------

def _int(x) -> int:
    return int(x)


def orbit_block_sums(q: QuotientGraph, R: int) -> Iterator[np.ndarray]:
    """Yield S_r[U, W] = sum over u in U, w in W of A_X^r(u, w), r = 1..R."""
    ind = q.action.indicator()
    for power in adjacency_powers(q.base, R):
        yield ind.T.astype(power.dtype) @ power @ ind.astype(power.dtype)


@dataclass
class TraceRow:
    r: int
    quotient: int
    transfer: int            # Tr(A_X^r M) with M holding |U| inside each orbit
    averaged: Fraction       # sum over orbits U of S_r[U, U] / |U|

    @property
    def transfer_equal(self) -> bool:
        return self.quotient == self.transfer

    @property
    def averaged_equal(self) -> bool:
        return self.quotient == self.averaged

    def to_dict(self) -> dict:
        return {"r": self.r, "quotient_trace": str(self.quotient),
                "transfer_trace": str(self.transfer), "averaged_trace": str(self.averaged),
                "transfer_equal": self.transfer_equal, "averaged_equal": self.averaged_equal}


@dataclass
class TraceReport:
    rows: list[TraceRow] = field(default_factory=list)

    @property
    def all_averaged_equal(self) -> bool:
        return all(row.averaged_equal for row in self.rows)

    @property
    def all_transfer_equal(self) -> bool:
        return all(row.transfer_equal for row in self.rows)

    def to_dict(self) -> dict:
        return {"rows": [row.to_dict() for row in self.rows],
                "all_transfer_equal": self.all_transfer_equal,
                "all_averaged_equal": self.all_averaged_equal}


def verify_quotient_trace(q: QuotientGraph, R: int) -> TraceReport:
    """Compare Tr(A_{X/G}^r) with the base-graph traces for r = 1..R.

    Two right-hand sides are reported: the transfer-matrix form
    Tr(A_X^r M) and the orbit-averaged form sum_U S_r[U,U] / |U|.
    """
    if not q.simply_laced:
        raise ValueError(f"quotient is not simply laced: {q.violation}")
    sizes = q.action.orbit_sizes()
    report = TraceReport()
    quotient_traces = [_trace(p) for p in adjacency_powers(q.quotient, R)]
    for r, block in enumerate(orbit_block_sums(q, R), start=1):
        diag = [_int(block[u, u]) for u in range(len(sizes))]
        transfer = sum(s * d for s, d in zip(sizes, diag))
        averaged = sum((Fraction(d, s) for s, d in zip(sizes, diag)), Fraction(0))
        report.rows.append(TraceRow(r, quotient_traces[r - 1], transfer, averaged))
    return report


def verify_path_lifting(q: QuotientGraph, R: int) -> list[dict]:
    """|U| * A_{X/G}^r(U, W) against S_r[U, W], every orbit pair, r = 1..R."""
    if not q.simply_laced:
        raise ValueError(f"quotient is not simply laced: {q.violation}")
    sizes = np.asarray(q.action.orbit_sizes(), dtype=object)
    rows = []
    for r, (qp, block) in enumerate(zip(adjacency_powers(q.quotient, R), orbit_block_sums(q, R)), start=1):
        lhs = sizes[:, None] * qp.astype(object)
        mism = np.argwhere(lhs != block.astype(object))
        rows.append({"r": r, "holds": len(mism) == 0,
                     "mismatches": [[int(a), int(b)] for a, b in mism[:5]]})
    return rows


def verify_sym_trace(g: Graph, k: int, R: int, limits: Limits = DEFAULT_LIMITS) -> TraceReport:
    """Symmetric-power traces against restricted-power traces weighted by M_k."""
    sym = sym_power(g, k, limits)
    res = restricted_power(g, k, limits)
    mk = m_matrix(g, k).entries
    action = sym_action_on_restricted(g, k)
    sizes = action.orbit_sizes()
    ind = action.indicator()
    report = TraceReport()
    sym_traces = [_trace(p) for p in adjacency_powers(sym, R)]
    for r, power in enumerate(adjacency_powers(res, R), start=1):
        transfer = int(np.sum(power.astype(object) * mk.T.astype(object)))
        block = ind.T.astype(power.dtype) @ power @ ind.astype(power.dtype)
        averaged = sum((Fraction(_int(block[u, u]), s) for u, s in enumerate(sizes)), Fraction(0))
        report.rows.append(TraceRow(r, sym_traces[r - 1], transfer, averaged))
    return report
