"""Finite simple graphs and the constructions used on rigidity circuits.

Graphs are immutable: every operation returns a new :class:`Graph` with
vertices ``0..n-1`` and a canonically sorted edge tuple, so equal graphs
serialize identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def canonical_edges(edges: Iterable[Sequence[int]]) -> tuple[Edge, ...]:
    return tuple(sorted({edge(int(u), int(v)) for u, v in edges}))


def vertices_of(edges: Iterable[Edge]) -> frozenset[int]:
    return frozenset(x for e in edges for x in e)


def complete_edges(vertices: Iterable[int]) -> tuple[Edge, ...]:
    return tuple(combinations(sorted(set(vertices)), 2))


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        canon = canonical_edges(self.edges)
        if len(canon) != len(self.edges):
            raise ValueError("parallel edges are not allowed")
        for u, v in canon:
            if v >= self.n or u < 0:
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
        object.__setattr__(self, "edges", canon)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        return cls(n, canonical_edges(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edge_set()

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(b if a == v else a for a, b in self.edges if v in (a, b))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def min_degree(self) -> int:
        return min((self.degree(v) for v in range(self.n)), default=0)

    def add_edges(self, extra: Iterable[Sequence[int]]) -> Graph:
        new = canonical_edges(extra)
        clash = set(new) & self.edge_set()
        if clash:
            raise ValueError(f"edges already present: {sorted(clash)}")
        n = max([self.n] + [v + 1 for _, v in new])
        return Graph(n, self.edges + new)

    def remove_edges(self, gone: Iterable[Sequence[int]]) -> Graph:
        gone = set(canonical_edges(gone))
        missing = gone - self.edge_set()
        if missing:
            raise ValueError(f"edges not present: {sorted(missing)}")
        return Graph(self.n, tuple(e for e in self.edges if e not in gone))

    def add_vertex(self, neighbors: Iterable[int] = ()) -> Graph:
        w = self.n
        return Graph(self.n + 1, self.edges + tuple((u, w) for u in sorted(set(neighbors))))

    def delete_vertices(self, gone: Iterable[int]) -> Graph:
        """Remove edges at ``gone`` but keep the labelling (vertices become isolated)."""
        gone = set(gone)
        return Graph(self.n, tuple(e for e in self.edges if not gone & set(e)))

    def relabel(self, mapping: dict[int, int], n: int | None = None) -> Graph:
        new = [edge(mapping[u], mapping[v]) for u, v in self.edges]
        if n is None:
            n = max(mapping.values(), default=-1) + 1
        return Graph.from_edges(n, new)

    def induced(self, keep: Iterable[int]) -> Graph:
        keep = set(keep)
        return Graph(self.n, tuple(e for e in self.edges if e[0] in keep and e[1] in keep))

    def union(self, other: Graph) -> Graph:
        return Graph.from_edges(max(self.n, other.n), set(self.edges) | set(other.edges))

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edges]})

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}


def graph_from_dict(data: dict) -> Graph:
    if "n" not in data or "edges" not in data:
        raise ValueError("graph JSON needs 'n' and 'edges'")
    return Graph.from_edges(int(data["n"]), data["edges"])


def parse_graph(text: str) -> Graph:
    """Parse either graph JSON or an edge-list text whose first line is ``n``."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return graph_from_dict(json.loads(stripped))
    tokens = stripped.split()
    if not tokens:
        raise ValueError("empty graph input")
    n = int(tokens[0])
    rest = [int(t) for t in tokens[1:]]
    if len(rest) % 2:
        raise ValueError("edge list has an odd number of endpoints")
    return Graph.from_edges(n, zip(rest[0::2], rest[1::2]))


def load_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


# ---------------------------------------------------------------- generators

def empty(n: int) -> Graph:
    return Graph(n, ())


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph(n, complete_edges(range(n)))


def complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n}; the first ``m`` vertices form one side."""
    if m < 1 or n < 1:
        raise ValueError("complete bipartite graph needs m, n >= 1")
    return Graph(m + n, tuple((i, m + j) for i in range(m) for j in range(n)))


def cone(g: Graph) -> Graph:
    """Join a new vertex (labelled ``g.n``) to every vertex of ``g``."""
    return g.add_vertex(range(g.n))


def cone_edges(g: Graph) -> tuple[Edge, ...]:
    return tuple((u, g.n) for u in range(g.n))


def almost_cone(g: Graph, missing: Iterable[int]) -> Graph:
    """The cone of ``g`` with the edges from the cone vertex to ``missing`` deleted."""
    missing = set(missing)
    return g.add_vertex(u for u in range(g.n) if u not in missing)


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def wheel(rim: int) -> Graph:
    """A rim cycle on ``0..rim-1`` plus a hub joined to all of it."""
    return cone(cycle(rim))


def theta(*lengths: int) -> Graph:
    """Internally disjoint paths of the given lengths between vertices 0 and 1."""
    if len(lengths) < 2 or any(L < 1 for L in lengths) or sorted(lengths)[1] < 2:
        raise ValueError("theta graph needs simple paths, at most one of length 1")
    edges = []
    nxt = 2
    for L in lengths:
        prev = 0
        for _ in range(L - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph.from_edges(nxt, edges)


def disjoint_union(*gs: Graph) -> Graph:
    """Vertex-disjoint union; each graph's labels are shifted past the previous ones."""
    edges = []
    off = 0
    for g in gs:
        edges += [(u + off, v + off) for u, v in g.edges]
        off += g.n
    return Graph.from_edges(off, edges)


def random_extension_graph(d: int, n: int, rng, one_ext: float = 0.5) -> Graph:
    """Random graph grown from K_{d+1} by d-dimensional 0- and 1-extensions.

    Every graph produced this way is minimally R_d-rigid.
    """
    if n < d + 1:
        raise ValueError("need at least d + 1 vertices")
    g = complete(d + 1)
    while g.n < n:
        if g.m and rng.random() < one_ext and g.n >= d + 1:
            x, y = rng.choice(g.edges)
            others = [u for u in range(g.n) if u not in (x, y)]
            if len(others) >= d - 1:
                g = one_extension(g, (x, y), [x, y] + rng.sample(others, d - 1), d)
                continue
        g = zero_extension(g, rng.sample(range(g.n), d), d)
    return g


def compact(g: Graph) -> Graph:
    """Relabel the non-isolated vertices to 0..m-1 in their original order."""
    used = sorted(vertices_of(g.edges))
    return g.relabel({v: i for i, v in enumerate(used)}, n=len(used))


def random_non_edges(g: Graph, count: int, rng) -> list[Edge]:
    present = g.edge_set()
    pool = [e for e in complete_edges(range(g.n)) if e not in present]
    return sorted(rng.sample(pool, min(count, len(pool))))


# ------------------------------------------------------------------ gluing

def glue(g1: Graph, g2: Graph, e1: Edge, e2: Edge) -> tuple[Graph, Graph, Edge]:
    """Embed ``g1`` and ``g2`` in one labelling with ``e2`` identified onto ``e1``.

    ``e2 = (a, b)`` maps ``a`` to ``e1[0]`` and ``b`` to ``e1[1]``; every other
    vertex of ``g2`` gets a fresh label after those of ``g1``, in order.
    Returns the relabelled pair and the shared edge.
    """
    if not g1.has_edge(*e1):
        raise ValueError(f"{e1} is not an edge of the first graph")
    if not g2.has_edge(*e2):
        raise ValueError(f"{e2} is not an edge of the second graph")
    a, b = e2
    mapping = {a: e1[0], b: e1[1]}
    nxt = g1.n
    for v in range(g2.n):
        if v not in mapping:
            mapping[v] = nxt
            nxt += 1
    h2 = g2.relabel(mapping, n=nxt)
    h1 = Graph(nxt, g1.edges)
    return h1, h2, edge(*e1)


def graphical_parallel_connection(g1: Graph, g2: Graph, e1: Edge, e2: Edge) -> Graph:
    h1, h2, _ = glue(g1, g2, e1, e2)
    return h1.union(h2)


def graphical_two_sum(g1: Graph, g2: Graph, e1: Edge, e2: Edge) -> Graph:
    h1, h2, shared = glue(g1, g2, e1, e2)
    return h1.union(h2).remove_edges([shared])


# -------------------------------------------------------------- extensions

def _check_distinct(vs: Sequence[int], size: int, g: Graph, what: str) -> None:
    if len(set(vs)) != len(vs) or len(vs) != size:
        raise ValueError(f"{what} needs exactly {size} distinct vertices, got {list(vs)}")
    if any(not 0 <= v < g.n for v in vs):
        raise ValueError(f"{what}: vertex out of range")


def zero_extension(g: Graph, neighbors: Sequence[int], d: int | None = None) -> Graph:
    d = len(neighbors) if d is None else d
    _check_distinct(list(neighbors), d, g, "0-extension")
    return g.add_vertex(neighbors)


def one_extension(g: Graph, xy: Edge, neighbors: Sequence[int], d: int | None = None) -> Graph:
    d = len(neighbors) - 1 if d is None else d
    _check_distinct(list(neighbors), d + 1, g, "1-extension")
    x, y = xy
    if not g.has_edge(x, y):
        raise ValueError(f"1-extension: {xy} is not an edge")
    if x not in neighbors or y not in neighbors:
        raise ValueError("1-extension: neighbor set must contain both ends of the deleted edge")
    return g.remove_edges([xy]).add_vertex(neighbors)


def x_replacement(g: Graph, uv: Edge, xy: Edge, extra: Sequence[int]) -> Graph:
    """Delete non-adjacent edges uv, xy; add w adjacent to u, v, x, y and ``extra``.

    In dimension d the new vertex has degree d + 2, so ``extra`` has d - 2 vertices.
    """
    named = [*uv, *xy]
    if len(set(named)) != 4:
        raise ValueError("X-replacement needs two non-adjacent edges")
    if not (g.has_edge(*uv) and g.has_edge(*xy)):
        raise ValueError("X-replacement: named edges must be present")
    nbrs = named + list(extra)
    _check_distinct(nbrs, len(nbrs), g, "X-replacement")
    return g.remove_edges([uv, xy]).add_vertex(nbrs)


def v_replacement(g: Graph, xy: Edge, yz: Edge, extra: Sequence[int]) -> Graph:
    """Delete adjacent edges xy, yz; add w adjacent to x, y, z and ``extra`` (d - 1 vertices)."""
    shared = set(xy) & set(yz)
    if len(shared) != 1 or edge(*xy) == edge(*yz):
        raise ValueError("V-replacement needs two distinct adjacent edges")
    if not (g.has_edge(*xy) and g.has_edge(*yz)):
        raise ValueError("V-replacement: named edges must be present")
    (y,) = shared
    x = xy[0] if xy[1] == y else xy[1]
    z = yz[0] if yz[1] == y else yz[1]
    nbrs = [x, y, z] + list(extra)
    _check_distinct(nbrs, len(nbrs), g, "V-replacement")
    return g.remove_edges([xy, yz]).add_vertex(nbrs)


# ------------------------------------------------------------------ bananas

def _banana_pair(d: int) -> tuple[Graph, Edge]:
    if d < 3:
        raise ValueError("banana graphs need d >= 3")
    common = list(range(d - 1))
    side1 = common + [d - 1, d, d + 1]
    side2 = common + [d + 2, d + 3, d + 4]
    g = Graph.from_edges(d + 5, set(complete_edges(side1)) | set(complete_edges(side2)))
    return g, (0, 1)


def banana_closed(d: int) -> Graph:
    """Two copies of K_{d+2} sharing a K_{d-1} (the shared edge kept)."""
    return _banana_pair(d)[0]


def banana(d: int) -> Graph:
    """B_{d,d-1}: ``banana_closed(d)`` minus the least shared edge (0, 1)."""
    g, e = _banana_pair(d)
    return g.remove_edges([e])


def banana_edge(d: int) -> Edge:
    return _banana_pair(d)[1]


def banana_chain(d: int, copies: int) -> Graph:
    """The iterated banana with ``copies`` copies of K_{d+2}, shared edge removed.

    The first two copies share a K_{d-1}; each further copy is glued along
    the shared edge only.
    """
    if copies < 1:
        raise ValueError("need at least one copy")
    if copies == 1:
        if d < 3:
            raise ValueError("banana graphs need d >= 3")
        return complete(d + 2).remove_edges([(0, 1)])
    g = banana_closed(d)
    e = banana_edge(d)
    k = complete(d + 2)
    for _ in range(copies - 2):
        g = graphical_parallel_connection(g, k, e, (0, 1))
    return g.remove_edges([e])


def banana_chain_steps(d: int, copies: int) -> list[tuple[Graph, Graph, Edge]]:
    """The 2-sum decomposition of ``banana_chain(d, copies)``.

    Each entry ``(left, right, e)`` lives in a common labelling with
    ``left ∩ right = {e}``; the chain at that step is ``(left ∪ right) - e``.
    For d = 3 the first step splits the double banana into its two K_5;
    for d > 3 those copies share a K_{d-1}, so the steps start at the
    third copy.
    """
    e = banana_edge(d)
    steps = []
    kd = complete(d + 2)
    if copies >= 2 and d == 3:
        n = d + 5
        left = Graph.from_edges(n, complete_edges([0, 1, 2, 3, 4]))
        right = Graph.from_edges(n, complete_edges([0, 1, 5, 6, 7]))
        steps.append((left, right, e))
    g = banana_closed(d)
    for _ in range(copies - 2):
        h1, h2, shared = glue(g, kd, e, (0, 1))
        steps.append((h1, h2, shared))
        g = h1.union(h2)
    return steps
