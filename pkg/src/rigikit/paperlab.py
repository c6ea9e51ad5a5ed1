"""Registry of executable facts about k-fold rigidity circuits.

Each check builds its graphs, runs the oracle and matroid code, and
returns an ``(expected, observed)`` pair of plain JSON values; the check
passes exactly when the two are equal. Expected values are written from
the statements being reproduced, never read back from the code under test.
"""

from __future__ import annotations

import json
import random
import time
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations
from math import comb
from typing import Callable

from . import graphs as G
from . import matroid as M
from .graphs import Edge, Graph, edge
from .matching import dl_bound, k67_matching_instance, matching_number
from .rigidity import (
    DEFAULT_SEED,
    PreconditionError,
    RankOracle,
    almost_cone_conditions,
    bridges,
    is_circuit,
    is_independent,
    is_minimally_rigid,
    is_rigid,
    maxwell_bound,
)

DEFAULT_INSTANCES = 50
LAB_BACKENDS = ("field", "rational")


# ------------------------------------------------------------------ plumbing

@dataclass
class CheckResult:
    name: str
    passed: bool
    expected: object
    observed: object
    elapsed: float
    seed: int
    backend: str
    anchor: str = ""
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "expected": self.expected,
            "observed": self.observed,
            "elapsed": round(self.elapsed, 4),
            "seed": self.seed,
            "backend": self.backend,
            "anchor": self.anchor,
            "error": self.error,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass
class Lab:
    """Per-run settings handed to every check."""

    seed: int = DEFAULT_SEED
    backend: str = "field"
    instances: int = DEFAULT_INSTANCES
    notes: list = field(default_factory=list)

    def oracle(self, g: Graph | int, d: int) -> RankOracle:
        if isinstance(g, Graph):
            return RankOracle.for_graph(g, d, seed=self.seed, backend=self.backend)
        return RankOracle(g, d, seed=self.seed, backend=self.backend)

    def rng(self, *tag) -> random.Random:
        return random.Random(":".join(str(t) for t in (self.seed,) + tag))


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    func: Callable[[Lab], tuple]


REGISTRY: dict[str, Check] = {}


def check(name: str, anchor: str):
    def deco(func):
        if name in REGISTRY:
            raise ValueError(f"duplicate check {name}")
        REGISTRY[name] = Check(name, anchor, func)
        return func
    return deco


def check_names() -> list[str]:
    return list(REGISTRY)


def run_check(name: str, seed: int = DEFAULT_SEED, backend: str = "field",
              instances: int = DEFAULT_INSTANCES) -> CheckResult:
    if name not in REGISTRY:
        raise KeyError(f"unknown check {name!r}")
    if backend not in LAB_BACKENDS:
        raise ValueError(f"checks run on the field or rational backend, not {backend!r}")
    chk = REGISTRY[name]
    lab = Lab(seed, backend, instances)
    t0 = time.perf_counter()
    expected = observed = None
    error = None
    try:
        expected, observed = chk.func(lab)
    except Exception as exc:  # recorded, not raised: one broken check must not hide the rest
        error = f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - t0
    passed = error is None and expected == observed
    return CheckResult(name, passed, expected, observed, elapsed, seed, backend, chk.anchor, error)


def run_all(names=None, seed: int = DEFAULT_SEED, backend: str = "field",
            instances: int = DEFAULT_INSTANCES) -> list[CheckResult]:
    return [run_check(n, seed, backend, instances) for n in (names or check_names())]


def write_junit(results: list[CheckResult], path) -> None:
    suite = ET.Element("testsuite", name="paperlab", tests=str(len(results)),
                       failures=str(sum(not r.passed for r in results)),
                       time=f"{sum(r.elapsed for r in results):.3f}")
    for r in results:
        case = ET.SubElement(suite, "testcase", classname=f"paperlab.{r.backend}",
                             name=r.name, time=f"{r.elapsed:.3f}")
        if not r.passed:
            fail = ET.SubElement(case, "failure", message=r.error or "expected != observed")
            fail.text = json.dumps({"expected": r.expected, "observed": r.observed}, sort_keys=True)
    ET.ElementTree(suite).write(path, encoding="utf-8", xml_declaration=True)


# ------------------------------------------------------------------ fixtures

def load_fixture(name: str) -> tuple[Graph, dict[str, int]]:
    """A figure graph shipped with the package, plus its vertex names."""
    text = resources.files("rigikit").joinpath("fixtures", f"{name}.json").read_text()
    data = json.loads(text)
    return G.graph_from_dict(data), dict(data.get("labels", {}))


def fixture_names() -> list[str]:
    root = resources.files("rigikit").joinpath("fixtures")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def _namer(labels: dict[str, int]):
    inv = {v: k for k, v in labels.items()}

    def fmt(edges) -> list[str]:
        return sorted("-".join(sorted((inv.get(u, str(u)), inv.get(v, str(v))))) for u, v in edges)
    return fmt


def _edges(labels, *pairs) -> frozenset[Edge]:
    return frozenset(edge(labels[a], labels[b]) for a, b in pairs)


def _part_shapes(parts) -> list[list[list[int]]]:
    return sorted(sorted(list(e) for e in a) for a in parts)


# ------------------------------------------------------------------ corpus

def random_kfold_circuit(lab: Lab, d: int, k: int, rng, n: int | None = None) -> Graph:
    """A k-fold R_d-circuit: cyclic core of a random 0/1-extension graph plus k edges."""
    for _ in range(100):
        size = n if n is not None else rng.randint(d + 2, d + 6)
        base = G.random_extension_graph(d, size, rng)
        extra = G.random_non_edges(base, k, rng)
        if len(extra) < k:
            continue
        g = base.add_edges(extra)
        o = lab.oracle(g, d)
        core = M.cyclic_core(o, g.edges)
        if core and len(core) - o.rank(core) == k:
            return G.compact(Graph.from_edges(g.n, core))
    raise RuntimeError("could not generate a k-fold circuit")


def corpus(lab: Lab) -> list[tuple[str, Graph, int]]:
    """Named test graphs with their dimension; cyclic and non-cyclic, d in {1, 2, 3}."""
    out: list[tuple[str, Graph, int]] = []
    add = lambda name, g, d: out.append((name, g, d))
    tri = G.cycle(3)
    add("triangle", tri, 1)
    add("C5", G.cycle(5), 1)
    add("theta222", G.theta(2, 2, 2), 1)
    add("theta123", G.theta(1, 2, 3), 1)
    add("bowtie", Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]), 1)
    add("two-triangles", G.disjoint_union(tri, tri), 1)
    add("K4-d1", G.complete(4), 1)
    add("K23", G.complete_bipartite(2, 3), 1)
    add("W4-d1", G.wheel(4), 1)
    add("path4", Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]), 1)
    add("triangle-pendant", tri.add_edges([(2, 3)]), 1)
    k4 = G.complete(4)
    add("K4", k4, 2)
    for x in "abcd":
        add(f"fig1{x}", load_fixture(f"fig1{x}")[0], 2)
    add("fig7", load_fixture("fig7")[0], 2)
    add("K5-d2", G.complete(5), 2)
    add("W5", G.wheel(5), 2)
    add("K34", G.complete_bipartite(3, 4), 2)
    add("K4-parallel-K4", G.graphical_parallel_connection(k4, k4, (0, 1), (0, 1)), 2)
    add("K4-2sum-K4", G.graphical_two_sum(k4, k4, (0, 1), (0, 1)), 2)
    add("triangle-d2", tri, 2)
    add("K4-minus-e", k4.remove_edges([(0, 1)]), 2)
    k5 = G.complete(5)
    add("K5", k5, 3)
    add("K6", G.complete(6), 3)
    add("B32", G.banana(3), 3)
    add("B32-closed", G.banana_closed(3), 3)
    add("banana-chain-3", G.banana_chain(3, 3), 3)
    add("K55", G.complete_bipartite(5, 5), 3)
    add("two-K5", G.disjoint_union(k5, k5), 3)
    add("K5-parallel-K5", G.graphical_parallel_connection(k5, k5, (0, 1), (0, 1)), 3)
    add("K5-minus-e", k5.remove_edges([(0, 1)]), 3)
    for d in (1, 2, 3):
        rng = lab.rng("corpus", d)
        for k in (1, 2, 3):
            add(f"random-d{d}-k{k}", random_kfold_circuit(lab, d, k, rng), d)
    return out


# ------------------------------------------------------------------ checks

@check("RIGIDITY-BASICS", "rank of small circuits, the theta double circuit and flexible K_{d+2,d+2}")
def _rigidity_basics(lab: Lab):
    exp, obs = {}, {}
    k5 = G.complete(5)
    o = lab.oracle(k5, 3)
    exp["K5-d3"] = {"rank": 9, "edges": 10, "circuit": True}
    obs["K5-d3"] = {"rank": o.rank(k5.edges), "edges": k5.m, "circuit": is_circuit(o, k5)}
    k4 = G.complete(4)
    o = lab.oracle(k4, 2)
    exp["K4-d2"] = {"rank": 5, "circuit": True, "rigid": True}
    obs["K4-d2"] = {"rank": o.rank(k4.edges), "circuit": is_circuit(o, k4), "rigid": is_rigid(o, k4)}
    th = G.theta(2, 2, 2)
    o = lab.oracle(th, 1)
    exp["theta-d1"] = {"rank": 4, "fold": [True, 2]}
    obs["theta-d1"] = {"rank": o.rank(th.edges), "fold": list(M.kfold_detect(o, th.edges))}
    for d in (3, 4):
        kb = G.complete_bipartite(d + 2, d + 2)
        o = lab.oracle(kb, d)
        exp[f"K{d+2}{d+2}-d{d}"] = {"circuit": True, "rigid": d == 3}
        obs[f"K{d+2}{d+2}-d{d}"] = {"circuit": is_circuit(o, kb), "rigid": is_rigid(o, kb)}
    return exp, obs


@check("BANANA-RANK", "r_d(B_{d,d-1}) = d(d+5) - C(d+1,2) - 1 and cl(B) adds back exactly e")
def _banana_rank(lab: Lab):
    exp, obs = {}, {}
    for d in (3, 4, 5):
        b = G.banana(d)
        o = lab.oracle(b, d)
        exp[f"d{d}"] = {
            "vertices": d + 5,
            "edges": 2 * comb(d + 2, 2) - comb(d - 1, 2) - 1,
            "rank": d * (d + 5) - comb(d + 1, 2) - 1,
            "circuit": True,
            "rigid": False,
            "closure_adds": [list(G.banana_edge(d))],
        }
        obs[f"d{d}"] = {
            "vertices": b.n,
            "edges": b.m,
            "rank": o.rank(b.edges),
            "circuit": is_circuit(o, b),
            "rigid": is_rigid(o, b),
            "closure_adds": sorted(list(e) for e in M.closure(o, b.edges) - b.edge_set()),
        }
    return exp, obs


@check("BANANA-CHAIN", "iterated bananas B^(c) are flexible (c-1)-fold R_3-circuits built by 2-sums")
def _banana_chain(lab: Lab):
    exp, obs = {}, {}
    for c in range(2, 6):
        g = G.banana_chain(3, c)
        o = lab.oracle(g, 3)
        steps = G.banana_chain_steps(3, c)
        folds = []
        ok = True
        last = None
        for left, right, e in steps:
            so = lab.oracle(left.union(right), 3)
            rep = M.verify_twosum_law(so, left.edges, right.edges, e)
            folds.append([rep.k1, rep.k2, rep.k])
            ok = ok and rep.ok
            last = left.union(right).remove_edges([e])
        exp[f"c{c}"] = {
            "fold": [True, c - 1],
            "rigid": False,
            "step_folds": [[1, 1, 1]] + [[j, 1, j] for j in range(2, c)],
            "steps_ok": True,
            "final_step_is_chain": True,
        }
        obs[f"c{c}"] = {
            "fold": list(M.kfold_detect(o, g.edges)),
            "rigid": is_rigid(o, g),
            "step_folds": folds,
            "steps_ok": ok,
            "final_step_is_chain": last is not None and last.edge_set() == g.edge_set(),
        }
    return exp, obs


@check("FIG1-PARTITIONS", "principal partitions of the four double R_2-circuits of Figure 1")
def _fig1(lab: Lab):
    exp, obs = {}, {}
    for x in "abcd":
        g, lab_ = load_fixture(f"fig1{x}")
        fmt = _namer(lab_)
        o = lab.oracle(g, 2)
        rep = M.balanced_report(o, g.edges)
        pp = rep.partition
        circuits = M.enumerate_circuits(o, g.edges)
        row = {
            "fold": list(M.kfold_detect(o, g.edges)),
            "parts": pp.ell,
            "circuits": len(circuits),
            "trivial": rep.trivial,
            "brute_force_agrees": list(pp.parts) == M.partition_bruteforce(o, g.edges),
        }
        want = {"fold": [True, 2], "circuits": None, "parts": None, "trivial": None,
                "brute_force_agrees": True}
        if x in "ab":
            want.update(parts=2, circuits=2, trivial=True)
            row["parts_are_the_K4s"] = all(len(a) == 6 and M.is_cyclic(o, a)
                                           and len(a) - o.rank(a) == 1 for a in pp.parts)
            want["parts_are_the_K4s"] = True
        elif x == "c":
            want.update(parts=3, circuits=3, trivial=False)
            row["singletons"] = [fmt(a) for a in pp.parts if len(a) == 1]
            row["technicolour"] = sorted({k for k, v in lab_.items() if v in rep.technicolour})
            want["singletons"] = [["v1-v2"]]
            want["technicolour"] = ["v1", "v2"]
        else:
            want.update(parts=7, circuits=7, trivial=False)
            at_u = frozenset(e for e in g.edges if lab_["u1"] in e or lab_["u2"] in e)
            k4 = frozenset(e for e in g.edges if e not in at_u)
            row["big_part"] = [fmt(a) for a in pp.parts if len(a) > 1]
            row["singletons"] = sorted(fmt(a)[0] for a in pp.parts if len(a) == 1)
            row["balanced"] = rep.balanced
            row["intersection_rank"] = rep.intersection_rank
            want["big_part"] = [fmt(at_u)]
            want["singletons"] = fmt(k4)
            want["balanced"] = True
            want["intersection_rank"] = 5
        exp[x], obs[x] = want, row
    return exp, obs


@check("FIG3-COLOOP", "the coloop hypothesis is needed: a 2-sum of two non-cyclic graphs is a double circuit")
def _fig3(lab: Lab):
    g1, l1 = load_fixture("fig3_g1")
    g2, l2 = load_fixture("fig3_g2")
    e1 = (l1["u"], l1["v"])
    e2 = (l2["u"], l2["v"])
    h1, h2, shared = G.glue(g1, g2, e1, e2)
    whole = h1.union(h2).remove_edges([shared])
    o = lab.oracle(whole.union(h1).union(h2), 2)
    obs = {
        "G1_fold": list(M.kfold_detect(o, h1.edges)),
        "G2_fold": list(M.kfold_detect(o, h2.edges)),
        "uv_bridge_in_G1": shared in bridges(o, h1.edges),
        "sum_fold": list(M.kfold_detect(o, whole.edges)),
        "sum_parts": M.principal_partition(o, whole.edges).ell,
        "components": len(M.components(o, whole.edges)),
    }
    try:
        M.verify_twosum_law(o, h1.edges, h2.edges, shared)
        obs["precondition_error"] = False
    except PreconditionError:
        obs["precondition_error"] = True
    exp = {
        "G1_fold": [False, 1], "G2_fold": [False, 1], "uv_bridge_in_G1": True,
        "sum_fold": [True, 2], "sum_parts": 2, "components": 2, "precondition_error": True,
    }
    return exp, obs


@check("COMPOSITION-LAWS", "fold and partition arithmetic for 2-sums (k1+k2-1) and parallel connections (k1+k2)")
def _composition(lab: Lab):
    exp, obs = {}, {}
    # triple banana: closed double banana 2-summed with K5 along e
    bc = G.banana_closed(3)
    h1, h2, e = G.glue(bc, G.complete(5), G.banana_edge(3), (0, 1))
    o = lab.oracle(h1.union(h2), 3)
    rep = M.verify_twosum_law(o, h1.edges, h2.edges, e)
    exp["triple-banana"] = {"k1": 2, "k2": 1, "k": 2, "ok": True}
    obs["triple-banana"] = {"k1": rep.k1, "k2": rep.k2, "k": rep.k, "ok": rep.ok}
    k4 = G.complete(4)
    h1, h2, e = G.glue(k4, k4, (0, 1), (0, 1))
    o = lab.oracle(h1.union(h2), 2)
    rep = M.verify_parallel_law(o, h1.edges, h2.edges, e)
    exp["K4-parallel-K4"] = {"k": 2, "ok": True,
                             "parts": _part_shapes([h1.edge_set() - {e}, h2.edge_set() - {e}, {e}])}
    obs["K4-parallel-K4"] = {"k": rep.k, "ok": rep.ok,
                             "parts": _part_shapes(M.principal_partition(o, h1.union(h2).edges).parts)}
    rep = M.verify_twosum_law(o, h1.edges, h2.edges, e)
    twosum = h1.union(h2).remove_edges([e])
    exp["K4-2sum-K4"] = {"k": 1, "ok": True, "circuit": True, "components": 1}
    obs["K4-2sum-K4"] = {"k": rep.k, "ok": rep.ok, "circuit": is_circuit(o, twosum),
                         "components": len(M.components(o, twosum.edges))}
    # random circuits glued along a shared edge, d = 2 and 3
    bad = []
    count = 0
    for d in (2, 3):
        rng = lab.rng("composition", d)
        for i in range(4):
            a = random_kfold_circuit(lab, d, rng.randint(1, 2), rng)
            b = random_kfold_circuit(lab, d, rng.randint(1, 2), rng)
            h1, h2, e = G.glue(a, b, rng.choice(a.edges), rng.choice(b.edges))
            o = lab.oracle(h1.union(h2), d)
            for law in (M.verify_twosum_law, M.verify_parallel_law):
                r = law(o, h1.edges, h2.edges, e)
                count += 1
                if not r.ok:
                    bad.append([d, i, r.kind, r.violations])
    exp["random"] = {"instances": 16, "violations": []}
    obs["random"] = {"instances": count, "violations": bad}
    return exp, obs


@check("K67-UNBALANCED", "K_{6,7} is an unbalanced double R_4-circuit with the 7 stars as its partition")
def _k67(lab: Lab):
    g = G.complete_bipartite(6, 7)
    o = lab.oracle(g, 4)
    rep = M.balanced_report(o, g.edges)
    stars = [[(x, y) for x in range(6)] for y in range(6, 13)]
    exp = {"rank": 40, "edges": 42, "fold": [True, 2], "parts": _part_shapes(stars),
           "intersection_rank": 0, "bound": 5, "balanced": False, "technicolour": list(range(6))}
    obs = {"rank": o.rank(g.edges), "edges": g.m, "fold": list(M.kfold_detect(o, g.edges)),
           "parts": _part_shapes(rep.partition.parts), "intersection_rank": rep.intersection_rank,
           "bound": rep.bound, "balanced": rep.balanced, "technicolour": sorted(rep.technicolour)}
    return exp, obs


@check("K67-KFOLD-EXTENSION", "K_{6,7} plus c disjoint copies of K_6 is an unbalanced (2+c)-fold R_4-circuit")
def _k67_ext(lab: Lab):
    exp, obs = {}, {}
    for c in (1, 2):
        g = G.disjoint_union(G.complete_bipartite(6, 7), *[G.complete(6)] * c)
        o = lab.oracle(g, 4)
        rep = M.balanced_report(o, g.edges)
        exp[f"c{c}"] = {"fold": [True, 2 + c], "parts": 7 + c, "intersection_rank": 0,
                        "bound": 5, "balanced": False}
        obs[f"c{c}"] = {"fold": list(M.kfold_detect(o, g.edges)), "parts": rep.partition.ell,
                        "intersection_rank": rep.intersection_rank, "bound": rep.bound,
                        "balanced": rep.balanced}
    return exp, obs


@check("CONE-RANK", "cone rank law r_{d+1}(G*v) = r_d(G) + |V(G)|")
def _cone_rank(lab: Lab):
    k4 = G.complete(4)
    bad = []
    graphs = corpus(lab)
    for name, g, d in graphs:
        lhs = lab.oracle(G.cone(g), d + 1).rank(G.cone(g).edges)
        rhs = lab.oracle(g, d).rank(g.edges) + g.n
        if lhs != rhs:
            bad.append([name, lhs, rhs])
    o2, o3 = lab.oracle(k4, 2), lab.oracle(G.cone(k4), 3)
    exp = {"K4": [9, 5, 4], "instances": len(graphs), "violations": []}
    obs = {"K4": [o3.rank(G.cone(k4).edges), o2.rank(k4.edges), 4], "instances": len(graphs),
           "violations": bad}
    return exp, obs


@check("CONE-KFOLD", "G is a k-fold R_d-circuit iff G*v is a k-fold R_{d+1}-circuit")
def _cone_kfold(lab: Lab):
    bad = []
    graphs = corpus(lab)
    for name, g, d in graphs:
        c = G.cone(g)
        a = M.kfold_detect(lab.oracle(g, d), g.edges)
        b = M.kfold_detect(lab.oracle(c, d + 1), c.edges)
        if a != b:
            bad.append([name, list(a), list(b)])
    return {"instances": len(graphs), "violations": []}, {"instances": len(graphs), "violations": bad}


def _cone_partition(lab: Lab, g: Graph, d: int):
    c = G.cone(g)
    pp = M.principal_partition(lab.oracle(g, d), g.edges)
    cp = M.principal_partition(lab.oracle(c, d + 1), c.edges)
    return c, pp, cp


@check("CONE-PARTITION-TRANSFER", "each part A_i extends to A_i plus the cone edges at monochromatic vertices of A_i")
def _cone_transfer(lab: Lab):
    bad = []
    n = 0
    for name, g, d in corpus(lab):
        o = lab.oracle(g, d)
        cyc, k = M.kfold_detect(o, g.edges)
        if not cyc or k < 1:
            continue
        n += 1
        c, pp, cp = _cone_partition(lab, g, d)
        v = g.n
        mono = M.monochromatic_vertices(pp)
        parts = set(cp.parts)
        for a in pp.parts:
            want = a | {edge(u, v) for u in mono & M.vertices_of(a)}
            if want not in parts:
                bad.append([name, "transfer", sorted(list(e) for e in a)])
        restricted = sorted(sorted(a - set(G.cone_edges(g))) for a in cp.parts)
        if [x for x in restricted if x] != sorted(sorted(a) for a in pp.parts):
            bad.append([name, "restriction"])
        for u in M.technicolour_vertices(pp):
            home = cp.parts[cp.part_of(edge(u, v))]
            if home & g.edge_set():
                bad.append([name, "technicolour-edge-not-new", u])
    return {"cyclic_instances": n >= 25, "violations": []}, {"cyclic_instances": n >= 25, "violations": bad}


@check("CONE-FIG5", "principal partitions of the cones of the Figure 1 double circuits")
def _cone_fig5(lab: Lab):
    exp, obs = {}, {}
    for x in "abcd":
        g, labels = load_fixture(f"fig5{x}")
        fmt = _namer(labels)
        o = lab.oracle(g, 3)
        pp = M.principal_partition(o, g.edges)
        v = labels["v"]
        row = {"fold": list(M.kfold_detect(o, g.edges)), "parts": pp.ell,
               "cone_singletons": sorted(fmt(a)[0] for a in pp.parts if len(a) == 1 and v in next(iter(a)))}
        if x == "a":
            want = {"fold": [True, 2], "parts": 2, "cone_singletons": []}
        elif x == "b":
            want = {"fold": [True, 2], "parts": 3, "cone_singletons": ["v-w"]}
            row["w_v_deleted_is_circuit"] = is_circuit(o, g.edge_set() - _edges(labels, ("w", "v")))
            want["w_v_deleted_is_circuit"] = True
        elif x == "c":
            want = {"fold": [True, 2], "parts": 5, "cone_singletons": ["v-v1", "v-v2"]}
        else:
            want = {"fold": [True, 2], "parts": 11, "cone_singletons": ["p-v", "q-v", "r-v", "s-v"]}
            a1 = _edges(labels, ("u1", "p"), ("u1", "q"), ("u1", "u2"), ("u2", "r"), ("u2", "s"),
                        ("u1", "v"), ("u2", "v"))
            row["A1_extended"] = a1 in pp.parts
            want["A1_extended"] = True
        exp[x], obs[x] = want, row
    return exp, obs


@check("CONE-K67-REMARK", "K_{6,7}*v in d=5: parts A_i + v y_i and the star from v to X")
def _cone_k67(lab: Lab):
    g = G.cone(G.complete_bipartite(6, 7))
    v = 13
    o = lab.oracle(g, 5)
    pp = M.principal_partition(o, g.edges)
    want = [[(x, y) for x in range(6)] + [(y, v)] for y in range(6, 13)] + [[(x, v) for x in range(6)]]
    a8 = frozenset((x, v) for x in range(6))
    rest = g.edge_set() - a8
    exp = {"fold": [True, 2], "parts": _part_shapes(want), "rest_is_K77_circuit": True,
           "vx1_vx2_same_part": True}
    obs = {"fold": list(M.kfold_detect(o, g.edges)), "parts": _part_shapes(pp.parts),
           "rest_is_K77_circuit": is_circuit(o, rest) and len(rest) == 49,
           "vx1_vx2_same_part": pp.part_of((0, v)) == pp.part_of((1, v))}
    return exp, obs


@check("CONE-FIG7-3FOLD", "the 3-fold R_2-circuit of Figure 7, its cone, and the double banana inside the cone")
def _fig7(lab: Lab):
    g, labels = load_fixture("fig7")
    fmt = _namer(labels)
    o = lab.oracle(g, 2)
    pp = M.principal_partition(o, g.edges)
    at_xy = frozenset(e for e in g.edges if labels["x"] in e or labels["y"] in e)
    c = G.cone(g)
    v = g.n
    lab_c = dict(labels, v=v)
    fmt_c = _namer(lab_c)
    oc = lab.oracle(c, 3)
    cp = M.principal_partition(oc, c.edges)
    s_edges = _edges(lab_c, ("a", "v"), ("b", "v"), ("c", "v"))
    gp = c.remove_edges(s_edges)
    m = {labels["z"]: 0, labels["w"]: 1, labels["a"]: 2, labels["b"]: 3, labels["c"]: 4,
         labels["x"]: 5, labels["y"]: 6, v: 7}
    pair_drops = [oc.rank(c.edge_set() - set(p)) == oc.rank(c.edges) for p in combinations(sorted(s_edges), 2)]
    gpa = gp.edge_set() | (s_edges - _edges(lab_c, ("a", "v")))
    # G' - av with bv, cv still present: a double circuit in which bv, cv share a part
    gpa_pp = M.principal_partition(oc, gpa)
    cond = almost_cone_conditions(o, g, [labels["a"], labels["b"], labels["c"]])
    exp = {
        "fold": [True, 3], "parts": 10, "A1": fmt(at_xy), "rigid": True,
        "cone_fold": [True, 3], "cone_parts": 15,
        "cone_A1": fmt_c(at_xy | _edges(lab_c, ("x", "v"), ("y", "v"))),
        "cone_singleton_count": 14,
        "conditions": {"t": 3, "rigid": True, "edge_count": True, "independent_minus_S": True,
                       "each_in_circuit": True},
        "minus_S_is_double_banana": True, "minus_S_rigid": False,
        "pair_deletions_keep_rank": [True, True, True], "triple_deletion_drops_rank": True,
        "bv_cv_same_part_after_av": True, "G'-av_fold": [True, 2],
    }
    obs = {
        "fold": list(M.kfold_detect(o, g.edges)), "parts": pp.ell,
        "A1": [fmt(a) for a in pp.parts if len(a) > 1][0] if pp.ell else None,
        "rigid": is_rigid(o, g),
        "cone_fold": list(M.kfold_detect(oc, c.edges)), "cone_parts": cp.ell,
        "cone_A1": [fmt_c(a) for a in cp.parts if len(a) > 1][0] if cp.ell else None,
        "cone_singleton_count": sum(len(a) == 1 for a in cp.parts),
        "conditions": cond,
        "minus_S_is_double_banana": G.compact(gp).relabel(m, n=8).edge_set() == G.banana(3).edge_set()
        if gp.n == 8 else gp.relabel(m, n=8).edge_set() == G.banana(3).edge_set(),
        "minus_S_rigid": is_rigid(oc, gp),
        "pair_deletions_keep_rank": pair_drops,
        "triple_deletion_drops_rank": oc.rank(gp.edges) < oc.rank(c.edges),
        "bv_cv_same_part_after_av": gpa_pp.part_of(edge(lab_c["b"], v)) == gpa_pp.part_of(edge(lab_c["c"], v)),
        "G'-av_fold": list(M.kfold_detect(oc, gpa)),
    }
    return exp, obs


def _almost_cone(lab: Lab, g: Graph, d: int, S):
    cond = almost_cone_conditions(lab.oracle(g, d), g, S)
    gp = G.almost_cone(g, S)
    return cond, is_minimally_rigid(lab.oracle(gp, d + 1), gp), gp


@check("ALMOST-CONE-T1", "almost-cone with one missing cone edge: K_5 in d=3 gives K_6 - e")
def _almost_t1(lab: Lab):
    g = G.complete(5)
    cond, minrig, gp = _almost_cone(lab, g, 3, [0])
    exp = {"conditions": {"t": 1, "rigid": True, "edge_count": True, "independent_minus_S": True,
                          "each_in_circuit": True},
           "G'_minimally_rigid": True, "G'_is_K6_minus_e": True}
    obs = {"conditions": cond, "G'_minimally_rigid": minrig,
           "G'_is_K6_minus_e": gp.edge_set() == G.complete(6).remove_edges([(0, 5)]).edge_set()}
    return exp, obs


@check("ALMOST-CONE-T2", "almost-cone with two missing cone edges: K_6 - ab, S = {a, c} gives K_7 - {ab, va, vc}")
def _almost_t2(lab: Lab):
    a, b, c = 0, 1, 2
    g = G.complete(6).remove_edges([(a, b)])
    cond, minrig, gp = _almost_cone(lab, g, 3, [a, c])
    v = 6
    want = G.complete(7).remove_edges([(a, b), (a, v), (c, v)])
    exp = {"conditions": {"t": 2, "rigid": True, "edge_count": True, "independent_minus_S": True,
                          "each_in_circuit": True, "neighbourhoods_differ": True},
           "G'_minimally_rigid": True, "G'_shape": True}
    obs = {"conditions": cond, "G'_minimally_rigid": minrig, "G'_shape": gp.edge_set() == want.edge_set()}
    return exp, obs


@check("ALMOST-CONE-NEGATIVE", "K_{6,7} + y1y2 + y3y4 in d=4 with S = {x1, x2}: the almost-cone is R_5-dependent")
def _almost_neg(lab: Lab):
    y = lambda i: 5 + i
    extra = [(y(1), y(2)), (y(3), y(4))]
    g = G.complete_bipartite(6, 7).add_edges(extra)
    o = lab.oracle(g, 4)
    cond = almost_cone_conditions(o, g, [0, 1])
    gp = G.almost_cone(g, [0, 1])
    exp = {"bridges": sorted(list(e) for e in extra), "rank": 42, "cyclic_core_is_K67": True,
           "conditions": {"t": 2, "rigid": True, "edge_count": True, "independent_minus_S": True,
                          "each_in_circuit": True, "neighbourhoods_differ": False},
           "G'_R5_independent": False}
    obs = {"bridges": sorted(list(e) for e in bridges(o, g.edges)), "rank": o.rank(g.edges),
           "cyclic_core_is_K67": M.cyclic_core(o, g.edges) == G.complete_bipartite(6, 7).edge_set(),
           "conditions": cond, "G'_R5_independent": is_independent(lab.oracle(gp, 5), gp)}
    return exp, obs


@check("ADD-TWO-EDGES", "adding at most two edges to an R_d-independent graph gives an R_{d+1}-independent graph")
def _add_two(lab: Lab):
    bad = []
    dependent_in_d = 0
    for d in (1, 2, 3):
        rng = lab.rng("add-two", d)
        for i in range(lab.instances):
            base = G.random_extension_graph(d, rng.randint(d + 2, d + 7), rng)
            drop = rng.randint(0, min(2, base.m - 1))
            base = base.remove_edges(rng.sample(base.edges, drop))
            g = base.add_edges(G.random_non_edges(base, rng.randint(1, 2), rng))
            if not is_independent(lab.oracle(g, d), g):
                dependent_in_d += 1
            if not is_independent(lab.oracle(g, d + 1), g):
                bad.append([d, i, g.to_dict()])
    n = 3 * lab.instances
    return ({"instances": n, "violations": [], "nonvacuous": True},
            {"instances": n, "violations": bad, "nonvacuous": dependent_in_d > 0})


@check("XV-REPLACEMENT", "(d+1)-dimensional X- and V-replacements keep R_d-independent graphs R_{d+1}-independent")
def _xv(lab: Lab):
    bad = []
    count = 0
    for d in (1, 2, 3):
        rng = lab.rng("xv", d)
        for i in range(lab.instances):
            g = G.random_extension_graph(d, rng.randint(d + 4, d + 7), rng)
            if i % 2 == 0:
                pairs = [(e, f) for e, f in combinations(g.edges, 2) if not set(e) & set(f)]
                uv, xy = rng.choice(pairs)
                others = [u for u in range(g.n) if u not in (*uv, *xy)]
                h = G.x_replacement(g, uv, xy, rng.sample(others, d - 1))
            else:
                pairs = [(e, f) for e, f in combinations(g.edges, 2) if len(set(e) & set(f)) == 1]
                xy, yz = rng.choice(pairs)
                others = [u for u in range(g.n) if u not in (*xy, *yz)]
                h = G.v_replacement(g, xy, yz, rng.sample(others, d))
            count += 1
            if h.degree(h.n - 1) != d + 3 or not is_independent(lab.oracle(h, d + 1), h):
                bad.append([d, i, h.to_dict()])
    n = 3 * lab.instances
    return {"instances": n, "violations": []}, {"instances": count, "violations": bad}


@check("SMALL-FLEXIBLE", "closed bananas are flexible double R_d-circuits on d+5 vertices")
def _small_flexible(lab: Lab):
    exp, obs = {}, {}
    for d in (3, 4):
        g = G.banana_closed(d)
        o = lab.oracle(g, d)
        exp[f"d{d}"] = {"vertices": d + 5, "fold": [True, 2], "rigid": False,
                        "closure_of_banana": True}
        obs[f"d{d}"] = {"vertices": g.n, "fold": list(M.kfold_detect(o, g.edges)),
                        "rigid": is_rigid(o, g),
                        "closure_of_banana": M.closure(o, G.banana(d).edges) == g.edge_set()}
    return exp, obs


@check("MATCHING-M2", "matroid matching on K_{6,7} in R_4: nu = 19 while the Dress-Lovász value is at least 20")
def _matching(lab: Lab):
    g, fam, d = k67_matching_instance(2)
    o = lab.oracle(g, d)
    res = matching_number(o, fam)
    cert = dl_bound(o, fam, frozenset(), [fam.pairs])
    missing = sorted(set(fam.pairs) - set(res.witness))
    ys = [p[0][1] for p in missing]
    # one pair removed: the K_{6,6} on the other six y's survives
    single_ok = all(
        is_circuit(o, frozenset(e for e in g.edges if e[1] != p[0][1])) for p in fam.pairs
    )
    two = [(p, q) for p, q in combinations(fam.pairs, 2) if p[0][1] != q[0][1]]
    two_ok = all(is_independent(o, g.edge_set() - set(p) - set(q)) for p, q in two)
    exp = {"pairs": 21, "edges_partitioned": True, "nu": 19, "refuted": 22,
           "refuted_by_size": {"21": 1, "20": 21}, "witness_is_matching": True,
           "witness_missing_distinct_j": True, "dl_empty_flat": 20, "dl_at_least_20": True,
           "single_pair_removal_leaves_K66": True, "distinct_j_removals_independent": True}
    obs = {"pairs": len(fam), "edges_partitioned": fam.ground() == g.edge_set() and 2 * len(fam) == g.m,
           "nu": res.nu, "refuted": res.refuted,
           "refuted_by_size": {str(k): v for k, v in res.refuted_by_size.items()},
           "witness_is_matching": o.rank(fam.ground() - {e for p in missing for e in p}) == 38,
           "witness_missing_distinct_j": len(missing) == 2 and ys[0] != ys[1],
           "dl_empty_flat": cert.value, "dl_at_least_20": cert.value >= 20,
           "single_pair_removal_leaves_K66": single_ok, "distinct_j_removals_independent": two_ok}
    return exp, obs


def _technicolour_pairs_split(lab: Lab, g: Graph, d: int, size: int):
    """Count technicolour tuples of the given size whose cone edges all share one part."""
    c, pp, cp = _cone_partition(lab, g, d)
    v = g.n
    tech = sorted(M.technicolour_vertices(pp))
    tested = same = 0
    for tup in combinations(tech, size):
        tested += 1
        if len({cp.part_of(edge(u, v)) for u in tup}) == 1:
            same += 1
    return tested, same


@check("CONE-D1-STRONG", "for d=1, cone edges at two technicolour vertices lie in different parts")
def _cone_d1(lab: Lab):
    rng = lab.rng("cone-d1")
    bad = []
    tested = 0
    for i in range(lab.instances):
        k = rng.randint(2, 4)
        g = random_kfold_circuit(lab, 1, k, rng, n=rng.randint(k + 3, k + 6))
        t, same = _technicolour_pairs_split(lab, g, 1, 2)
        tested += t
        if same:
            bad.append([i, g.to_dict()])
    return ({"instances": lab.instances, "violations": [], "pairs_tested": True},
            {"instances": lab.instances, "violations": bad, "pairs_tested": tested > 0})


@check("CONE-D2-TRIPLE", "for double R_2-circuits, cone edges at three technicolour vertices never share one part")
def _cone_d2(lab: Lab):
    rng = lab.rng("cone-d2")
    bad = []
    tested = 0
    for i in range(lab.instances):
        g = random_kfold_circuit(lab, 2, 2, rng, n=rng.randint(5, 9))
        t, same = _technicolour_pairs_split(lab, g, 2, 3)
        tested += t
        if same:
            bad.append([i, g.to_dict()])
    return ({"instances": lab.instances, "violations": [], "triples_tested": True},
            {"instances": lab.instances, "violations": bad, "triples_tested": tested > 0})


@check("CONE-ALLSAME-K1", "if every cone edge lies in one part of the cone's partition then k = 1")
def _cone_allsame(lab: Lab):
    bad = []
    n = allsame = 0
    for name, g, d in corpus(lab):
        cyc, k = M.kfold_detect(lab.oracle(g, d), g.edges)
        if not cyc or k < 1:
            continue
        n += 1
        c, pp, cp = _cone_partition(lab, g, d)
        homes = {cp.part_of(e) for e in G.cone_edges(g)}
        if len(homes) == 1:
            allsame += 1
            if k != 1:
                bad.append([name, k])
        elif k == 1:
            bad.append([name, "circuit with split cone edges"])
    return ({"violations": [], "circuits_seen": True},
            {"violations": bad, "circuits_seen": allsame > 0 and n > allsame})


@check("XREP-D4-COUNTEREXAMPLE", "a double R_4-circuit whose degree-6 technicolour vertex sees two non-adjacent edges in one part")
def _xrep(lab: Lab):
    vv = lambda i: i - 1        # v1..v6 -> 0..5
    uu = lambda i: 5 + i        # u1..u6 -> 6..11
    k66 = G.complete_bipartite(6, 6)
    added = [(vv(2), vv(3)), (vv(4), vv(5)), (uu(3), uu(4)), (uu(5), uu(6))]
    h = k66.add_edges(added).remove_edges([(vv(1), uu(1)), (vv(1), uu(2))])
    o = lab.oracle(h, 4)
    dset = h.edge_set() | {(vv(1), uu(1)), (vv(1), uu(2))}
    pp = M.principal_partition(o, dset)
    part = frozenset(edge(*e) for e in added)
    tech = M.technicolour_vertices(pp)
    deg_v1 = sum(1 for e in dset if vv(1) in e)
    nbr_parts = [pp.part_of(edge(vv(1), uu(i))) for i in range(1, 7)]
    exp = {"H_edges": 38, "H_minimally_rigid": True, "D_fold": [True, 2], "part_present": True,
           "v1_technicolour": True, "v1_degree": 6, "u3u4_u5u6_same_part": True,
           "D_minus_part_is_K66": True, "cone_edges_at_v1_distinct_parts": True}
    obs = {"H_edges": h.m, "H_minimally_rigid": is_minimally_rigid(o, h),
           "D_fold": list(M.kfold_detect(o, dset)), "part_present": part in pp.parts,
           "v1_technicolour": vv(1) in tech, "v1_degree": deg_v1,
           "u3u4_u5u6_same_part": pp.part_of((uu(3), uu(4))) == pp.part_of((uu(5), uu(6))),
           "D_minus_part_is_K66": dset - part == k66.edge_set(),
           "cone_edges_at_v1_distinct_parts": len(set(nbr_parts)) == 6}
    return exp, obs


@check("KFOLD-CORPUS-LAWS", "fold bound, minimum degree, technicolour count, and the balancedness guarantees")
def _corpus_laws(lab: Lab):
    viol: dict[str, list] = {k: [] for k in (
        "fold_bound", "min_degree", "ell_at_least_k", "trivial_parts_are_circuits",
        "technicolour_count", "closure_vertices", "intersection_bound",
        "two_technicolour_balanced", "rigid_subcircuits_balanced", "direct_sum")}
    reports = []
    for name, g, d in corpus(lab):
        o = lab.oracle(g, d)
        cyc, k = M.kfold_detect(o, g.edges)
        if not cyc or k < 1:
            continue
        rep = M.balanced_report(o, g.edges)
        pp = rep.partition
        reports.append((name, g, d, rep))
        nv = len(M.vertices_of(g.edges))
        rigid = is_rigid(o, g.edges, M.vertices_of(g.edges))
        bound = maxwell_bound(nv, d) + k
        if g.m > bound or (g.m == bound) != rigid:
            viol["fold_bound"].append(name)
        degs = [sum(1 for e in g.edges if u in e) for u in M.vertices_of(g.edges)]
        if min(degs) < d + 1:
            viol["min_degree"].append(name)
        if pp.ell < k:
            viol["ell_at_least_k"].append(name)
        if rep.trivial and not all(is_circuit(o, a) for a in pp.parts):
            viol["trivial_parts_are_circuits"].append(name)
        lhs = sum(len(M.vertices_of(pp.host - a)) for a in pp.parts)
        if lhs != (pp.ell - 1) * nv + len(rep.technicolour):
            viol["technicolour_count"].append(name)
        if rep.closure_vertices != rep.technicolour:
            viol["closure_vertices"].append(name)
        if rep.intersection_rank > rep.bound:
            viol["intersection_bound"].append(name)
        if len(rep.technicolour) <= 2 and not rep.balanced:
            viol["two_technicolour_balanced"].append(name)
        if k >= 2 and all(is_rigid(o, pp.host - a, M.vertices_of(pp.host - a)) for a in pp.parts) \
                and not rep.balanced:
            viol["rigid_subcircuits_balanced"].append(name)
    # direct sums of pairs of corpus circuits in the same dimension
    by_d: dict[int, list] = {}
    for name, g, d, rep in reports:
        by_d.setdefault(d, []).append((name, g, rep))
    pairs = 0
    for d, items in by_d.items():
        for (n1, g1, r1), (n2, g2, r2) in list(zip(items, items[1:]))[:4]:
            u = G.disjoint_union(g1, g2)
            o = lab.oracle(u, d)
            rep = M.balanced_report(o, u.edges)
            shifted = [frozenset((a + g1.n, b + g1.n) for a, b in p) for p in r2.partition.parts]
            pairs += 1
            if rep.k != r1.k + r2.k or set(rep.partition.parts) != set(r1.partition.parts) | set(shifted) \
                    or (r1.balanced and r2.balanced and not rep.balanced):
                viol["direct_sum"].append([n1, n2])
    exp = {"reports": True, "direct_sums": 12, "violations": {k: [] for k in viol}}
    obs = {"reports": len(reports) >= 25, "direct_sums": pairs, "violations": viol}
    return exp, obs


@check("GLUING-RIGID", "two R_d-rigid graphs sharing at least d vertices have an R_d-rigid union")
def _gluing(lab: Lab):
    bad = []
    for d in (1, 2, 3):
        rng = lab.rng("glue", d)
        for i in range(lab.instances // 5 or 1):
            a = G.random_extension_graph(d, rng.randint(d + 1, d + 5), rng)
            b = G.random_extension_graph(d, rng.randint(d + 1, d + 5), rng)
            share = rng.randint(d, min(a.n, b.n))
            amap = {v: v for v in range(a.n)}
            keep = rng.sample(range(a.n), share)
            bmap = {j: keep[j] if j < share else a.n + j - share for j in range(b.n)}
            u = a.union(b.relabel(bmap, n=a.n + b.n - share))
            o = lab.oracle(u, d)
            if not is_rigid(o, u):
                bad.append([d, i])
    return {"violations": []}, {"violations": bad}


# ------------------------------------------------------------------ coverage

COVERAGE: dict[str, list[str]] = {
    "rigidity matrix, rank, predicates and Maxwell bound": ["RIGIDITY-BASICS", "BANANA-RANK", "KFOLD-CORPUS-LAWS"],
    "closure, flats, components, parallel connection and 2-sum of matroids": [
        "BANANA-RANK", "COMPOSITION-LAWS", "FIG3-COLOOP"],
    "k-fold circuits, pair rule partition, trivial and balanced circuits, direct sums": [
        "FIG1-PARTITIONS", "KFOLD-CORPUS-LAWS", "K67-UNBALANCED"],
    "2-sum and parallel connection of k-fold circuits with partition merge rules": [
        "COMPOSITION-LAWS", "BANANA-CHAIN", "FIG3-COLOOP"],
    "fold bound and minimum degree of k-fold R_d-circuits": ["KFOLD-CORPUS-LAWS"],
    "banana family and its rank": ["BANANA-RANK", "BANANA-CHAIN", "SMALL-FLEXIBLE"],
    "K_{d+2,d+3} is an unbalanced double circuit, extended to k-fold": ["K67-UNBALANCED", "K67-KFOLD-EXTENSION"],
    "technicolour vertices and balancedness guarantees": ["KFOLD-CORPUS-LAWS", "FIG1-PARTITIONS"],
    "matroid matching counterexample": ["MATCHING-M2"],
    "cone rank and k-fold transfer": ["CONE-RANK", "CONE-KFOLD", "CONE-PARTITION-TRANSFER"],
    "cone edges at technicolour vertices": ["CONE-FIG5", "CONE-K67-REMARK", "CONE-D1-STRONG",
                                            "CONE-D2-TRIPLE", "CONE-ALLSAME-K1"],
    "almost coning": ["ALMOST-CONE-T1", "ALMOST-CONE-T2", "ALMOST-CONE-NEGATIVE", "CONE-FIG7-3FOLD"],
    "adding two edges and X/V-replacement": ["ADD-TWO-EDGES", "XV-REPLACEMENT", "XREP-D4-COUNTEREXAMPLE"],
    "small flexible double circuits": ["SMALL-FLEXIBLE"],
    "gluing rigid graphs": ["GLUING-RIGID"],
}
