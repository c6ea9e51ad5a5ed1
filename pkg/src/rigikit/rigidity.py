"""Generic rigidity matrices and a memoized rank oracle for R_d.

A :class:`RankOracle` fixes one pseudo-generic placement of the vertices
``0..n-1`` and answers rank queries for arbitrary edge sets on those
vertices, so closures can range over the whole complete graph K_n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .ffield import PRIME, FieldMatrix, integer_rank, rank_mod_p
from .graphs import Edge, Graph, canonical_edges, edge, vertices_of

DEFAULT_SEED = 1729
RATIONAL_COORD_BOUND = 1 << 20
BACKENDS = ("field", "rational", "graphic")


class PreconditionError(ValueError):
    """A domain precondition failed (e.g. the input is not a k-fold circuit)."""


@dataclass(frozen=True)
class GenericConfiguration:
    """Seeded random placement of ``n`` vertices in dimension ``d``.

    With ``prime`` set, coordinates are uniform in [1, prime - 1]; with
    ``prime=None`` they are integers in [1, 2^20] for exact rational work.
    """

    d: int
    n: int
    seed: int
    prime: int | None = PRIME
    coords: tuple[tuple[int, ...], ...] = field(default=(), repr=False)

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be at least 1")
        if not self.coords:
            rng = random.Random(f"{self.seed}:{self.d}:{self.prime}")
            hi = self.prime - 1 if self.prime else RATIONAL_COORD_BOUND
            pts = tuple(tuple(rng.randint(1, hi) for _ in range(self.d)) for _ in range(self.n))
            object.__setattr__(self, "coords", pts)
        if len(self.coords) != self.n or any(len(c) != self.d for c in self.coords):
            raise ValueError("configuration shape does not match (n, d)")


def rigidity_rows(edges: Sequence[Edge], config: GenericConfiguration,
                  columns: Sequence[int] | None = None) -> list[list[int]]:
    """Rows of R(G, p) for ``edges``; ``columns`` restricts to those vertex blocks."""
    d = config.d
    verts = range(config.n) if columns is None else columns
    block = {v: i for i, v in enumerate(verts)}
    width = d * len(block)
    p = config.prime
    rows = []
    for u, v in edges:
        if u not in block or v not in block:
            raise ValueError(f"edge {(u, v)} not covered by the configuration")
        pu, pv = config.coords[u], config.coords[v]
        row = [0] * width
        bu, bv = block[u] * d, block[v] * d
        for k in range(d):
            x = pu[k] - pv[k]
            if p:
                x %= p
                row[bu + k] = x
                row[bv + k] = (-x) % p
            else:
                row[bu + k] = x
                row[bv + k] = -x
        rows.append(row)
    return rows


def rigidity_matrix(g: Graph, config: GenericConfiguration) -> FieldMatrix:
    if config.n < g.n:
        raise ValueError("configuration has fewer vertices than the graph")
    if config.prime is None:
        raise ValueError("rigidity_matrix builds field matrices; use a prime configuration")
    rows = rigidity_rows(g.edges, config, range(g.n))
    return FieldMatrix(len(rows), config.d * g.n, tuple(tuple(r) for r in rows))


def graphic_rank(edges: Iterable[Sequence[int]]) -> int:
    """Rank in the cycle matroid: |V(S)| minus the number of components of (V(S), S)."""
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rank = 0
    for u, v in edges:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            rank += 1
    return rank


def _connected_pieces(edges: Sequence[Edge]) -> list[list[Edge]]:
    parent: dict[int, int] = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    groups: dict[int, list[Edge]] = {}
    for e in edges:
        groups.setdefault(find(e[0]), []).append(e)
    return list(groups.values())


class RankOracle:
    """Memoized rank function of R_d on edge sets over the vertices ``0..n-1``.

    ``backend`` is ``field`` (F_p, the default), ``rational`` (exact
    integers, independent configuration) or ``graphic`` (cycle matroid,
    combinatorial, d ignored). ``trials > 1`` samples several
    configurations and keeps the maximum rank.
    """

    def __init__(self, n: int, d: int, seed: int = DEFAULT_SEED, backend: str = "field",
                 trials: int = 1, host: Graph | None = None):
        if backend not in BACKENDS:
            raise ValueError(f"unknown backend {backend!r}")
        if trials < 1:
            raise ValueError("trials must be >= 1")
        if d < 1:
            raise ValueError("dimension must be at least 1")
        self.n = n
        self.d = d
        self.seed = seed
        self.backend = backend
        self.trials = trials
        self.host = host
        prime = None if backend == "rational" else PRIME
        self.configs = tuple(
            GenericConfiguration(d, n, seed + 7919 * t, prime) for t in range(trials)
        ) if backend != "graphic" else ()
        self._memo: dict[frozenset[Edge], int] = {}
        self.queries = 0

    @classmethod
    def for_graph(cls, g: Graph, d: int, **kw) -> RankOracle:
        return cls(g.n, d, host=g, **kw)

    def ground(self) -> tuple[Edge, ...]:
        """The host graph's edges, or all of K_n without a host."""
        if self.host is not None:
            return self.host.edges
        return canonical_edges((u, v) for u in range(self.n) for v in range(u + 1, self.n))

    def _check(self, edges: frozenset[Edge]) -> None:
        for u, v in edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge {(u, v)} outside the oracle's vertex range")

    def rank(self, edges: Iterable[Sequence[int]]) -> int:
        key = edges if isinstance(edges, frozenset) else frozenset(edge(*e) for e in edges)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        self._check(key)
        self.queries += 1
        r = self._compute(sorted(key))
        self._memo[key] = r
        return r

    def _compute(self, edges: list[Edge]) -> int:
        if not edges:
            return 0
        if self.backend == "graphic":
            return graphic_rank(edges)
        pieces = _connected_pieces(edges)
        if len(pieces) > 1:
            # the rigidity matrix is block diagonal over vertex-disjoint pieces
            return sum(self.rank(frozenset(p)) for p in pieces)
        cols = sorted(vertices_of(edges))
        best = 0
        for config in self.configs:
            rows = rigidity_rows(edges, config, cols)
            r = rank_mod_p(rows) if config.prime else integer_rank(rows)
            best = max(best, r)
        return best

    def spanned(self, edges: Iterable[Edge], candidates: Iterable[Edge]) -> list[Edge]:
        """Candidates ``e`` with r(S + e) = r(S); one elimination for the field backend."""
        base = frozenset(edge(*e) for e in edges)
        cands = [edge(*e) for e in candidates]
        if self.backend != "field" or self.trials != 1:
            r = self.rank(base)
            return [e for e in cands if e in base or self.rank(base | {e}) == r]
        self._check(base | frozenset(cands))
        config = self.configs[0]
        basis: dict[int, list[int]] = {}
        p = config.prime

        def reduce(row):
            col = 0
            n = len(row)
            while col < n:
                x = row[col]
                if x == 0:
                    col += 1
                    continue
                piv = basis.get(col)
                if piv is None:
                    return col, row
                row = [(a - x * b) % p for a, b in zip(row, piv)]
                col += 1
            return None, row

        for row in rigidity_rows(sorted(base), config):
            col, red = reduce(row)
            if col is not None:
                inv = pow(red[col], p - 2, p)
                basis[col] = [y * inv % p for y in red]
        out = []
        for e, row in zip(cands, rigidity_rows(cands, config)):
            if e in base or reduce(row)[0] is None:
                out.append(e)
        return out


def as_edges(s) -> frozenset[Edge]:
    if isinstance(s, Graph):
        return frozenset(s.edges)
    if isinstance(s, frozenset):
        return s
    return frozenset(edge(*e) for e in s)


def rank_d(oracle: RankOracle, s) -> int:
    return oracle.rank(as_edges(s))


def maxwell_bound(n_vertices: int, d: int) -> int:
    return d * n_vertices - comb(d + 1, 2)


def _vertex_count(s, vertices) -> int:
    if vertices is not None:
        return len(set(vertices))
    if isinstance(s, Graph):
        return s.n
    return len(vertices_of(as_edges(s)))


def is_independent(oracle: RankOracle, s) -> bool:
    es = as_edges(s)
    return oracle.rank(es) == len(es)


def is_rigid(oracle: RankOracle, s, vertices: Iterable[int] | None = None) -> bool:
    """R_d-rigidity; a Graph argument counts its isolated vertices too."""
    es = as_edges(s)
    nv = _vertex_count(s, vertices)
    if nv <= 1:
        return True
    if nv <= oracle.d + 1 and len(es) == comb(nv, 2):
        return True
    if nv < oracle.d + 1:
        return False
    return oracle.rank(es) == maxwell_bound(nv, oracle.d)


def is_circuit(oracle: RankOracle, s) -> bool:
    es = as_edges(s)
    if not es:
        raise PreconditionError("circuit test needs a nonempty edge set")
    r = oracle.rank(es)
    if r != len(es) - 1:
        return False
    return all(oracle.rank(es - {e}) == r for e in es)


def is_minimally_rigid(oracle: RankOracle, s, vertices: Iterable[int] | None = None) -> bool:
    return is_independent(oracle, s) and is_rigid(oracle, s, vertices)


def bridges(oracle: RankOracle, s) -> frozenset[Edge]:
    es = as_edges(s)
    r = oracle.rank(es)
    return frozenset(e for e in es if oracle.rank(es - {e}) == r - 1)


def in_some_circuit(oracle: RankOracle, s, vertex: int) -> bool:
    """True when ``vertex`` lies on an R_d-circuit inside ``s``, i.e. some edge at it is not a bridge."""
    es = as_edges(s)
    at = [e for e in es if vertex in e]
    br = bridges(oracle, es)
    return any(e not in br for e in at)


def almost_cone_conditions(oracle: RankOracle, g: Graph, missing: Iterable[int]) -> dict:
    """The four graph-side conditions for the almost-cone of ``g`` to be minimally R_{d+1}-rigid.

    ``oracle`` works in dimension d on the vertices of ``g``. With two
    missing vertices the neighbourhood hypothesis is reported as well.
    """
    d = oracle.d
    S = sorted(set(missing))
    t = len(S)
    es = as_edges(g)
    minus = frozenset(e for e in es if not set(e) & set(S))
    out = {
        "t": t,
        "rigid": is_rigid(oracle, g),
        "edge_count": len(es) == maxwell_bound(g.n, d) + t,
        "independent_minus_S": is_independent(oracle, minus),
        "each_in_circuit": all(in_some_circuit(oracle, es, s) for s in S),
    }
    if t == 2:
        a, b = S
        out["neighbourhoods_differ"] = (g.neighbors(a) - {b}) != (g.neighbors(b) - {a})
    return out
