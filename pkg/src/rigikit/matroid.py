"""Matroid algorithms that only need a rank oracle.

Everything here works for any object with a ``rank(edges)`` method and an
``n`` attribute (vertex count of the ambient complete graph), so the same
code runs on the rigidity backends and on the graphic matroid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .graphs import Edge, complete_edges, vertices_of
from .rigidity import PreconditionError, as_edges

MAX_ENUMERATION = 22


def _sorted(es: Iterable[Edge]) -> list[Edge]:
    return sorted(es)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True

    def classes(self) -> list[frozenset]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), set()).add(x)
        return sorted((frozenset(c) for c in out.values()), key=lambda c: min(c))


# ------------------------------------------------------------------ basics

def closure(oracle, s, ambient: Iterable[Edge] | None = None) -> frozenset[Edge]:
    """All ``e`` in ``ambient`` with r(S + e) = r(S); ambient defaults to K_n.

    An edge meeting a vertex outside V(S) always raises the rank, so only
    candidates inside K_{V(S)} are tested.
    """
    s = as_edges(s)
    vs = vertices_of(s)
    if ambient is None:
        cands = [e for e in complete_edges(vs)]
    else:
        cands = [e for e in as_edges(ambient) if e[0] in vs and e[1] in vs]
    spanned = getattr(oracle, "spanned", None)
    if spanned is not None:
        inside = set(spanned(s, cands))
    else:
        r = oracle.rank(s)
        inside = {e for e in cands if e in s or oracle.rank(s | {e}) == r}
    if ambient is not None:
        inside |= s & as_edges(ambient)
    else:
        inside |= s
    return frozenset(inside)


def is_flat(oracle, s, ambient: Iterable[Edge] | None = None) -> bool:
    s = as_edges(s)
    return closure(oracle, s, ambient) == s


def find_basis(oracle, s) -> frozenset[Edge]:
    """Greedy basis of ``s`` in canonical edge order."""
    basis: list[Edge] = []
    r = 0
    for e in _sorted(as_edges(s)):
        if oracle.rank(frozenset(basis) | {e}) > r:
            basis.append(e)
            r += 1
    return frozenset(basis)


def fundamental_circuit(oracle, e: Edge, basis) -> frozenset[Edge]:
    b = as_edges(basis)
    if e in b:
        raise ValueError(f"{e} is in the basis")
    r = len(b)
    if oracle.rank(b) != r:
        raise ValueError("basis argument is not independent")
    if oracle.rank(b | {e}) > r:
        raise ValueError(f"{e} is independent of the basis")
    return frozenset([e]) | frozenset(x for x in b if oracle.rank((b - {x}) | {e}) == r)


def cyclic_core(oracle, s) -> frozenset[Edge]:
    """Largest cyclic subset: strip bridges until none remain."""
    cur = as_edges(s)
    while True:
        r = oracle.rank(cur)
        gone = {e for e in cur if oracle.rank(cur - {e}) < r}
        if not gone:
            return cur
        cur = cur - gone


def is_cyclic(oracle, s) -> bool:
    s = as_edges(s)
    r = oracle.rank(s)
    return all(oracle.rank(s - {e}) == r for e in s)


def kfold_detect(oracle, s) -> tuple[bool, int]:
    """(is cyclic, |S| - r(S)); a cyclic set with fold 0 is necessarily empty."""
    s = as_edges(s)
    k = len(s) - oracle.rank(s)
    return is_cyclic(oracle, s), k


def require_kfold(oracle, d_set, min_k: int = 1) -> int:
    cyc, k = kfold_detect(oracle, d_set)
    if not cyc:
        raise PreconditionError("not cyclic: the edge set has bridges, so it is not a k-fold circuit")
    if k < min_k:
        raise PreconditionError(f"not a k-fold circuit with k >= {min_k} (k = {k})")
    return k


# --------------------------------------------------- principal partitions

@dataclass(frozen=True)
class PrincipalPartition:
    host: frozenset[Edge]
    parts: tuple[frozenset[Edge], ...]
    k: int

    @property
    def ell(self) -> int:
        return len(self.parts)

    def part_of(self, e: Edge) -> int:
        for i, a in enumerate(self.parts):
            if e in a:
                return i
        raise KeyError(e)

    def sorted_parts(self) -> list[list[Edge]]:
        return [_sorted(a) for a in self.parts]


def _order_parts(parts) -> tuple[frozenset[Edge], ...]:
    return tuple(sorted((frozenset(a) for a in parts), key=lambda a: min(a)))


def principal_partition(oracle, d_set, validate: bool = True) -> PrincipalPartition:
    """Classes of e ~ f  <=>  r(D - e - f) = r(D) - 1.

    Each element is tested against one representative per existing class
    and joins the first class it relates to; the relation is an equivalence,
    so this needs at most |D| * ell rank queries.
    """
    d_set = as_edges(d_set)
    k = require_kfold(oracle, d_set)
    r = oracle.rank(d_set)
    reps: list[Edge] = []
    classes: list[set[Edge]] = []
    for e in _sorted(d_set):
        for rep, cls in zip(reps, classes):
            if oracle.rank(d_set - {e, rep}) == r - 1:
                cls.add(e)
                break
        else:
            reps.append(e)
            classes.append({e})
    pp = PrincipalPartition(d_set, _order_parts(classes), k)
    if validate:
        check_partition(oracle, pp)
    return pp


def check_partition(oracle, pp: PrincipalPartition) -> None:
    if pp.ell < pp.k:
        raise AssertionError(f"principal partition has {pp.ell} < k = {pp.k} parts")
    for a in pp.parts:
        rest = pp.host - a
        cyc, kk = kfold_detect(oracle, rest)
        if not cyc or kk != pp.k - 1:
            raise AssertionError(f"D minus part {_sorted(a)} is not a {pp.k - 1}-fold circuit")


def technicolour_vertices(pp: PrincipalPartition) -> frozenset[int]:
    """Vertices meeting edges of at least two parts."""
    seen: dict[int, int] = {}
    tech = set()
    for i, a in enumerate(pp.parts):
        for e in a:
            for x in e:
                if seen.setdefault(x, i) != i:
                    tech.add(x)
    return frozenset(tech)


def monochromatic_vertices(pp: PrincipalPartition) -> frozenset[int]:
    return vertices_of(pp.host) - technicolour_vertices(pp)


@dataclass(frozen=True)
class KFoldReport:
    k: int
    partition: PrincipalPartition
    technicolour: frozenset[int]
    trivial: bool
    balanced: bool
    intersection_rank: int
    bound: int
    intersection: frozenset[Edge] = field(repr=False)
    # vertices common to every cl(D - A_i); equals the technicolour set
    closure_vertices: frozenset[int] = frozenset()

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "parts": [[list(e) for e in a] for a in self.partition.sorted_parts()],
            "technicolour": sorted(self.technicolour),
            "trivial": self.trivial,
            "balanced": self.balanced,
            "intersection_rank": self.intersection_rank,
            "bound": self.bound,
            "closure_vertices": sorted(self.closure_vertices),
        }


def balanced_report(oracle, d_set, ambient: Iterable[Edge] | None = None,
                    partition: PrincipalPartition | None = None) -> KFoldReport:
    """Intersect the closures of the (k-1)-fold circuits D - A_i and compare ranks."""
    pp = partition if partition is not None else principal_partition(oracle, d_set)
    flat = None
    common = None
    for a in pp.parts:
        cl = closure(oracle, pp.host - a, ambient)
        flat = cl if flat is None else flat & cl
        vs = vertices_of(cl)
        common = vs if common is None else common & vs
    flat = flat or frozenset()
    ir = oracle.rank(flat)
    bound = pp.ell - pp.k
    if ir > bound:
        raise AssertionError(f"intersection rank {ir} exceeds bound {bound}")
    return KFoldReport(
        k=pp.k,
        partition=pp,
        technicolour=technicolour_vertices(pp),
        trivial=pp.ell == pp.k,
        balanced=ir == bound,
        intersection_rank=ir,
        bound=bound,
        intersection=flat,
        closure_vertices=frozenset(common or ()),
    )


# --------------------------------------------------------------- components

def components(oracle, s) -> list[frozenset[Edge]]:
    """Matroid components of the restriction to ``s`` via fundamental circuits of one basis."""
    s = as_edges(s)
    basis = find_basis(oracle, s)
    uf = _UnionFind(_sorted(s))
    for e in _sorted(s - basis):
        circ = fundamental_circuit(oracle, e, basis)
        for x in circ:
            uf.union(e, x)
    return uf.classes()


def components_bruteforce(oracle, s) -> list[frozenset[Edge]]:
    """Components from the circuit relation over all enumerated circuits."""
    s = as_edges(s)
    uf = _UnionFind(_sorted(s))
    for c in enumerate_circuits(oracle, s):
        c = _sorted(c)
        for x in c[1:]:
            uf.union(c[0], x)
    return uf.classes()


# ---------------------------------------------------------- enumeration

def _guard(s, limit):
    if len(s) > limit:
        raise ValueError(f"enumeration guard: {len(s)} > {limit} elements")


def enumerate_circuits(oracle, s, method: str = "complement",
                       limit: int = MAX_ENUMERATION) -> list[frozenset[Edge]]:
    """All circuits inside ``s`` by exhaustive search.

    ``complement`` (default): every circuit of a cyclic set D of nullity k
    is the cyclic core of D - T for some (k-1)-set T with r(D - T) = r(D),
    so enumerating the C(|D|, k-1) deletions finds them all.
    ``subsets``: plain enumeration by increasing size, skipping supersets
    of circuits already found; only practical for small sets.
    """
    s = as_edges(s)
    _guard(s, limit)
    if method == "subsets":
        return _circuits_by_subsets(oracle, s)
    if method != "complement":
        raise ValueError(f"unknown method {method!r}")
    core = cyclic_core(oracle, s)
    if not core:
        return []
    r = oracle.rank(core)
    k = len(core) - r
    found: set[frozenset[Edge]] = set()
    for t in combinations(_sorted(core), k - 1):
        rest = core - frozenset(t)
        if oracle.rank(rest) != r:
            continue
        found.add(cyclic_core(oracle, rest))
    return sorted(found, key=lambda c: (len(c), _sorted(c)))


def _circuits_by_subsets(oracle, s) -> list[frozenset[Edge]]:
    found: list[frozenset[Edge]] = []
    elems = _sorted(s)
    for size in range(1, len(elems) + 1):
        for combo in combinations(elems, size):
            c = frozenset(combo)
            if any(f <= c for f in found):
                continue
            if oracle.rank(c) == size - 1 and all(oracle.rank(c - {e}) == size - 1 for e in c):
                found.append(c)
    return sorted(found, key=lambda c: (len(c), _sorted(c)))


def kfold_subsets(oracle, s, fold: int, limit: int = MAX_ENUMERATION) -> list[frozenset[Edge]]:
    """All cyclic subsets of ``s`` with nullity exactly ``fold``, built as unions of circuits.

    Elements of one principal-partition part are in series, so every
    (j+1)-fold cyclic set is a j-fold cyclic set plus one circuit; the
    levels are grown that way from the enumerated circuits.
    """
    s = as_edges(s)
    circuits = enumerate_circuits(oracle, s, limit=limit)
    if fold < 1:
        return [frozenset()] if fold == 0 else []
    level = set(circuits)
    for j in range(1, fold):
        nxt = set()
        for x in level:
            for c in circuits:
                if c <= x:
                    continue
                y = x | c
                if len(y) - oracle.rank(y) == j + 1:
                    nxt.add(y)
        level = nxt
    return sorted(level, key=lambda c: (len(c), _sorted(c)))


def partition_bruteforce(oracle, d_set) -> list[frozenset[Edge]]:
    """Principal partition from its definition: complements of the (k-1)-fold circuits in D."""
    d_set = as_edges(d_set)
    k = require_kfold(oracle, d_set)
    subs = kfold_subsets(oracle, d_set, k - 1)
    return list(_order_parts(d_set - b for b in subs))


# ------------------------------------------------------- composition laws

@dataclass
class CompositionReport:
    kind: str
    shared: Edge
    k1: int
    k2: int
    k: int
    predicted_k: int
    predicted_parts: list[list[Edge]]
    parts: list[list[Edge]]
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "shared": list(self.shared),
            "k1": self.k1,
            "k2": self.k2,
            "k": self.k,
            "predicted_k": self.predicted_k,
            "parts": [[list(e) for e in a] for a in self.parts],
            "predicted_parts": [[list(e) for e in a] for a in self.predicted_parts],
            "violations": self.violations,
            "ok": self.ok,
        }


def _shared_edge(d1: frozenset[Edge], d2: frozenset[Edge], e: Edge | None) -> Edge:
    common = d1 & d2
    if len(common) != 1:
        raise PreconditionError(f"the two sides must share exactly one edge, they share {len(common)}")
    (shared,) = common
    if e is not None and tuple(sorted(e)) != shared:
        raise PreconditionError(f"given edge {e} is not the shared edge {shared}")
    if vertices_of(d1) & vertices_of(d2) != set(shared):
        raise PreconditionError("the two sides must meet exactly in the endpoints of the shared edge")
    return shared


def _side_data(oracle, side, e):
    r = oracle.rank(side)
    if oracle.rank(side - {e}) < r:
        raise PreconditionError(f"{e} is a coloop of one side; the composition law does not apply")
    cyc, k = kfold_detect(oracle, side)
    pp = principal_partition(oracle, side) if cyc and k >= 1 else None
    return cyc, k, pp


def _compare(kind, oracle, composite, shared, sides, data1, data2, predict) -> CompositionReport:
    (c1, k1, p1), (c2, k2, p2) = data1, data2
    cyc, k = kfold_detect(oracle, composite)
    violations = []
    r1, r2 = oracle.rank(sides[0]), oracle.rank(sides[1])
    if oracle.rank(composite) != r1 + r2 - 1:
        violations.append(f"rank {oracle.rank(composite)} differs from r1 + r2 - 1 = {r1 + r2 - 1}")
    sides_ok = c1 and c2 and k1 >= 1 and k2 >= 1
    pred_k, pred_parts = predict(k1, k2, p1, p2) if sides_ok else (None, [])
    parts: list[list[Edge]] = []
    if sides_ok != (cyc and k >= 1):
        violations.append(f"composite cyclic={cyc} but sides cyclic=({c1}, {c2})")
    if sides_ok:
        if k != pred_k:
            violations.append(f"fold {k} differs from predicted {pred_k}")
        if cyc and k >= 1:
            got = principal_partition(oracle, composite)
            parts = got.sorted_parts()
            if parts != pred_parts:
                violations.append("principal partition differs from the merge rule")
    return CompositionReport(kind, shared, k1, k2, k, pred_k if pred_k is not None else -1,
                             pred_parts, parts, violations)


def verify_twosum_law(oracle, d1, d2, e: Edge | None = None) -> CompositionReport:
    """Check k = k1 + k2 - 1 and the merged part (A^1 ∪ A^2) - e on (D1 ∪ D2) - e."""
    d1, d2 = as_edges(d1), as_edges(d2)
    shared = _shared_edge(d1, d2, e)
    data1, data2 = _side_data(oracle, d1, shared), _side_data(oracle, d2, shared)
    composite = (d1 | d2) - {shared}

    def predict(k1, k2, p1, p2):
        a1 = p1.parts[p1.part_of(shared)]
        a2 = p2.parts[p2.part_of(shared)]
        parts = [a for a in p1.parts if a != a1] + [a for a in p2.parts if a != a2]
        merged = (a1 | a2) - {shared}
        if merged:
            parts.append(merged)
        return k1 + k2 - 1, [_sorted(a) for a in _order_parts(parts)]

    return _compare("2-sum", oracle, composite, shared, (d1, d2), data1, data2, predict)


def verify_parallel_law(oracle, d1, d2, e: Edge | None = None) -> CompositionReport:
    """Check k = k1 + k2 and the parts A^1 - e, A^2 - e, {e} on D1 ∪ D2."""
    d1, d2 = as_edges(d1), as_edges(d2)
    shared = _shared_edge(d1, d2, e)
    data1, data2 = _side_data(oracle, d1, shared), _side_data(oracle, d2, shared)
    composite = d1 | d2

    def predict(k1, k2, p1, p2):
        a1 = p1.parts[p1.part_of(shared)]
        a2 = p2.parts[p2.part_of(shared)]
        parts = [a for a in p1.parts if a != a1] + [a for a in p2.parts if a != a2]
        parts += [a for a in (a1 - {shared}, a2 - {shared}) if a]
        parts.append(frozenset([shared]))
        return k1 + k2, [_sorted(a) for a in _order_parts(parts)]

    return _compare("parallel", oracle, composite, shared, (d1, d2), data1, data2, predict)
