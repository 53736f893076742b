"""Zero patterns of matrices and their clique number.

``omega`` of a matrix is the largest order of a principal submatrix with no
off-diagonal zero entries.  It equals the clique number of the graph joining
``i`` and ``j`` whenever both ``a_ij`` and ``a_ji`` are nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Iterator

import numpy as np

from .core import DimensionError, as_matrix

BRUTEFORCE_LIMIT = 20


class OracleSizeError(ValueError):
    """Raised when an exhaustive oracle is asked to run on too large an input."""


@dataclass(frozen=True)
class PatternGraph:
    """Undirected simple graph on ``range(n)``; ``adj[v]`` is the neighbourhood bitset of ``v``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or len(self.adj) != self.n:
            raise ValueError("PatternGraph needs n >= 1 and one bitset per vertex")
        for v, row in enumerate(self.adj):
            if row >> self.n or (row >> v) & 1:
                raise ValueError(f"bad neighbourhood for vertex {v}")
            for u in _bits(row):
                if not (self.adj[u] >> v) & 1:
                    raise ValueError(f"asymmetric edge {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "PatternGraph":
        adj = [0] * n
        for i, j in edges:
            if i == j:
                raise ValueError("self-loops are not allowed")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(n, tuple(adj))

    @classmethod
    def from_adjacency(cls, M: Any) -> "PatternGraph":
        """Graph of the nonzero off-diagonal entries of a symmetric 0/1-like array."""
        a = np.asarray(M) != 0
        n = a.shape[0]
        return cls.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n) if a[i, j]))

    @classmethod
    def empty(cls, n: int) -> "PatternGraph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "PatternGraph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.adj[i] >> j) & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for i in range(self.n):
            for j in _bits(self.adj[i] >> (i + 1)):
                yield i, i + 1 + j

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def with_edge(self, i: int, j: int) -> "PatternGraph":
        adj = list(self.adj)
        adj[i] |= 1 << j
        adj[j] |= 1 << i
        return PatternGraph(self.n, tuple(adj))

    def is_complete(self) -> bool:
        return self.num_edges() == self.n * (self.n - 1) // 2

    def to_matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n))
        for i, j in self.edges():
            m[i, j] = m[j, i] = 1.0
        return m


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def extract_pattern(A: Any, tol: float = 0.0) -> PatternGraph:
    """Join ``i != j`` when ``|a_ij| > tol`` and ``|a_ji| > tol``."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    nz = np.abs(as_matrix(A).array) > tol
    both = nz & nz.T
    np.fill_diagonal(both, False)
    n = both.shape[0]
    adj = tuple(sum(1 << int(j) for j in np.flatnonzero(both[i])) for i in range(n))
    return PatternGraph(n, adj)


def degeneracy_order(G: PatternGraph) -> list[int]:
    """Smallest-last ordering: repeatedly strip a minimum-degree vertex (lowest index on ties)."""
    alive = (1 << G.n) - 1
    order = []
    while alive:
        best, best_deg = -1, G.n + 1
        for v in _bits(alive):
            d = (G.adj[v] & alive).bit_count()
            if d < best_deg:
                best, best_deg = v, d
        order.append(best)
        alive &= ~(1 << best)
    return order


def _color_sort(G: PatternGraph, cand: list[int]) -> tuple[list[int], list[int]]:
    """Greedy sequential colouring of ``cand`` in its given order.

    Returns the vertices regrouped by colour class and, for each position,
    the number of colours used up to it (an upper bound on any clique drawn
    from the prefix).
    """
    classes: list[int] = []  # bitsets
    members: list[list[int]] = []
    for v in cand:
        nb = G.adj[v]
        for k, cls in enumerate(classes):
            if not cls & nb:
                classes[k] |= 1 << v
                members[k].append(v)
                break
        else:
            classes.append(1 << v)
            members.append([v])
    order, bounds = [], []
    for k, group in enumerate(members, start=1):
        order.extend(group)
        bounds.extend([k] * len(group))
    return order, bounds


def max_clique(G: PatternGraph) -> list[int]:
    """An exact maximum clique (sorted vertex list) by colour-bounded branch and bound."""
    if G.n < 1:
        raise ValueError("graph must have at least one vertex")
    initial = list(reversed(degeneracy_order(G)))
    best: list[int] = [min(range(G.n))]

    def expand(clique: list[int], cand: list[int]) -> None:
        nonlocal best
        order, bounds = _color_sort(G, cand)
        while order:
            if len(clique) + bounds[-1] <= len(best):
                return
            v = order.pop()
            bounds.pop()
            nb = G.adj[v]
            sub = [u for u in order if (nb >> u) & 1]
            clique.append(v)
            if sub:
                expand(clique, sub)
            elif len(clique) > len(best):
                best = sorted(clique)
            clique.pop()

    expand([], initial)
    return best


def omega_exact(G: PatternGraph) -> int:
    return len(max_clique(G))


def omega_bruteforce(G: PatternGraph) -> int:
    """Clique number by checking every vertex subset (``n <= 20``)."""
    if G.n > BRUTEFORCE_LIMIT:
        raise OracleSizeError(f"oracle size limit: n = {G.n} > {BRUTEFORCE_LIMIT}")
    n = G.n
    is_clique = bytearray(1 << n)
    is_clique[0] = 1
    best = 1
    for mask in range(1, 1 << n):
        low = mask & -mask
        rest = mask ^ low
        v = low.bit_length() - 1
        if is_clique[rest] and (G.adj[v] & rest) == rest:
            is_clique[mask] = 1
            size = mask.bit_count()
            if size > best:
                best = size
    return best


def omega(A: Any, tol: float = 0.0) -> int:
    """Clique number of the two-sided pattern of ``A``."""
    return omega_exact(extract_pattern(A, tol))


def pattern_mass(A: Any, y: Any, tol: float = 0.0) -> float:
    """``sum |y_i|^2 |y_j|^2`` over ordered off-diagonal ``(i, j)`` with ``|a_ij| > tol``."""
    A = as_matrix(A)
    w = np.abs(np.asarray(y, dtype=np.complex128)) ** 2
    if w.ndim != 1 or w.shape[0] != A.n:
        raise DimensionError(f"dimension mismatch: matrix order {A.n}, vector shape {w.shape}")
    mask = np.abs(A.array) > tol
    np.fill_diagonal(mask, False)
    return float(w @ mask.astype(float) @ w)
