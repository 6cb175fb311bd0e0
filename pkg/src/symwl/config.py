"""Budgets and defaults shared by the constructions, the WL engine and the CLI."""

from __future__ import annotations

from dataclasses import dataclass


class BudgetError(RuntimeError):
    """A construction would exceed its configured size budget."""


@dataclass(frozen=True)
class Limits:
    # dense boolean adjacency costs n^2 bytes, 10^4 vertices ~ 100 MB
    max_vertices: int = 10_000
    # WL holds about n^(dim+1) per-round records
    max_wl_records: int = 10_000_000
    max_dim: int = 3
    prime_pool: int = 2048

    def check_vertices(self, count: int, what: str) -> None:
        if count > self.max_vertices:
            raise BudgetError(f"{what} needs {count} vertices, budget is {self.max_vertices}")

    def check_wl(self, n: int, dim: int) -> None:
        records = n ** (dim + 1)
        if records > self.max_wl_records:
            raise BudgetError(
                f"{dim}-dim WL on {n} vertices needs {records} records per round, "
                f"budget is {self.max_wl_records}")


DEFAULT_LIMITS = Limits()
DEFAULT_SEED = 20240611
