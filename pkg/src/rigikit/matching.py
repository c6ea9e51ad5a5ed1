"""Matroid matching: exhaustive nu(H) for small pair families and Dress-Lovász certificates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

from .graphs import Edge, Graph, complete_bipartite, edge
from .matroid import closure
from .rigidity import as_edges

MAX_PAIRS = 24

Pair = tuple[Edge, Edge]


@dataclass(frozen=True)
class PairFamily:
    pairs: tuple[Pair, ...]

    def __post_init__(self):
        canon = []
        for p in self.pairs:
            a, b = edge(*p[0]), edge(*p[1])
            if a == b:
                raise ValueError(f"pair {p} repeats an element")
            canon.append((min(a, b), max(a, b)))
        object.__setattr__(self, "pairs", tuple(sorted(canon)))

    def __len__(self) -> int:
        return len(self.pairs)

    def ground(self) -> frozenset[Edge]:
        return frozenset(e for p in self.pairs for e in p)

    def to_dict(self) -> dict:
        return {"pairs": [[list(a), list(b)] for a, b in self.pairs]}

    @classmethod
    def from_dict(cls, data: dict) -> PairFamily:
        return cls(tuple((tuple(a), tuple(b)) for a, b in data["pairs"]))

    @classmethod
    def loads(cls, text: str) -> PairFamily:
        return cls.from_dict(json.loads(text))


def union_of(pairs: Iterable[Pair]) -> frozenset[Edge]:
    return frozenset(e for p in pairs for e in p)


@dataclass
class MatchingResult:
    nu: int
    witness: tuple[Pair, ...]
    # number of candidate families strictly larger than nu shown not to be matchings
    refuted: int
    refuted_by_size: dict[int, int] = field(default_factory=dict)


def is_matching(oracle, pairs: Sequence[Pair]) -> bool:
    u = union_of(pairs)
    return len(u) == 2 * len(pairs) and oracle.rank(u) == 2 * len(pairs)


def _search_size(oracle, pairs: list[Pair], s: int):
    """First s-subset (in lexicographic index order) that is a matching, plus the
    number of s-subsets refuted along the way."""
    n = len(pairs)
    refuted = 0
    chosen: list[int] = []

    def dfs(start: int):
        nonlocal refuted
        need = s - len(chosen)
        if need == 0:
            return tuple(pairs[i] for i in chosen)
        for i in range(start, n - need + 1):
            chosen.append(i)
            if is_matching(oracle, [pairs[j] for j in chosen]):
                hit = dfs(i + 1)
                if hit is not None:
                    return hit
            else:
                # every completion of this prefix is dependent
                refuted += comb(n - i - 1, need - 1)
            chosen.pop()
        return None

    return dfs(0), refuted


def matching_number(oracle, family: PairFamily, limit: int = MAX_PAIRS) -> MatchingResult:
    """Largest sub-family whose union has rank twice its size, searched from the top size down."""
    if len(family) > limit:
        raise ValueError(f"search guard: {len(family)} pairs > {limit}")
    pairs = list(family.pairs)
    refuted = 0
    by_size: dict[int, int] = {}
    for s in range(len(pairs), 0, -1):
        hit, r = _search_size(oracle, pairs, s)
        if hit is not None:
            return MatchingResult(s, hit, refuted, by_size)
        by_size[s] = r
        refuted += r
    return MatchingResult(0, (), refuted, by_size)


@dataclass(frozen=True)
class MatchingCertificate:
    flat: frozenset[Edge]
    parts: tuple[tuple[Pair, ...], ...]
    value: int | None = None

    def to_dict(self) -> dict:
        return {
            "flat": [list(e) for e in sorted(self.flat)],
            "parts": [[[list(a), list(b)] for a, b in part] for part in self.parts],
            "value": self.value,
        }


def dl_bound(oracle, family: PairFamily, flat, parts: Sequence[Sequence[Pair]],
             ambient: Iterable[Edge] | None = None) -> MatchingCertificate:
    """Evaluate r(Z) + sum_i floor((r(Z ∪ H_i) - r(Z)) / 2) after validating Z and the partition."""
    z = as_edges(flat)
    if closure(oracle, z, ambient) != z:
        raise ValueError("Z is not a flat")
    norm = [tuple(PairFamily(tuple(p)).pairs) for p in parts]
    seen = [p for part in norm for p in part]
    if len(seen) != len(set(seen)) or set(seen) != set(family.pairs):
        raise ValueError("parts do not partition the pair family")
    if any(not part for part in norm):
        raise ValueError("empty part in the partition")
    rz = oracle.rank(z)
    value = rz + sum((oracle.rank(z | union_of(part)) - rz) // 2 for part in norm)
    return MatchingCertificate(z, tuple(norm), value)


def k67_matching_instance(m: int) -> tuple[Graph, PairFamily, int]:
    """K_{2m+2,2m+3} in dimension 2m with the pairs (x_{2i-1} y_j, x_{2i} y_j).

    x_1..x_{2m+2} are vertices 0..2m+1 and y_1..y_{2m+3} follow.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    nx, ny = 2 * m + 2, 2 * m + 3
    g = complete_bipartite(nx, ny)
    pairs = []
    for i in range(m + 1):
        for j in range(ny):
            y = nx + j
            pairs.append((edge(2 * i, y), edge(2 * i + 1, y)))
    return g, PairFamily(tuple(pairs)), 2 * m
