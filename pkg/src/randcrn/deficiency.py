"""Linkage classes, stoichiometric rank, deficiency and weak reversibility."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import Complex, Reaction, ReactionNetwork, reaction_vector


@dataclass(frozen=True)
class DeficiencyReport:
    complex_count: int
    linkage_classes: int
    stoich_dim: int
    deficiency: int
    weakly_reversible: bool

    def __post_init__(self):
        assert self.deficiency == self.complex_count - self.linkage_classes - self.stoich_dim
        assert self.deficiency >= 0, self
        assert 2 * self.linkage_classes <= self.complex_count, self


class UnionFind:
    """Disjoint sets over ``0..size-1`` with path halving and union by size."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size
        self.components = size

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True


def _complex_index(g: ReactionNetwork) -> dict[Complex, int]:
    return {c: i for i, c in enumerate(g.complexes)}


def linkage_classes(g: ReactionNetwork) -> tuple[int, list[list[Complex]]]:
    """Connected components of the undirected complex graph."""
    index = _complex_index(g)
    uf = UnionFind(len(index))
    for r in g.reactions:
        uf.union(index[r.source], index[r.product])
    groups: dict[int, list[Complex]] = {}
    for c, i in index.items():
        groups.setdefault(uf.find(i), []).append(c)
    parts = sorted(groups.values(), key=lambda part: part[0].sort_key())
    return uf.components, parts


def integer_rank(rows: Iterable[Sequence[int]]) -> int:
    """Rank over the rationals of an integer matrix, by fraction-free elimination.

    Every intermediate entry is a minor of the input, so each division by the
    previous pivot is exact and Python integers never lose precision.
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    nrows = len(m)
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        prow = m[rank]
        p = prow[col]
        for r in range(rank + 1, nrows):
            row = m[r]
            f = row[col]
            if f:
                for c in range(col + 1, ncols):
                    row[c] = (p * row[c] - f * prow[c]) // prev
            elif p != prev:
                for c in range(col + 1, ncols):
                    row[c] = p * row[c] // prev
            row[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def reaction_vectors(g: ReactionNetwork, reactions: Iterable[Reaction] | None = None) -> list[list[int]]:
    """Reaction vectors restricted to the species that occur, one per reversible pair."""
    species = sorted(g.species_used)
    col = {s: i for i, s in enumerate(species)}
    seen = set()
    vectors = []
    for r in (g.sorted_reactions() if reactions is None else reactions):
        v = [0] * len(species)
        for sign, cplx in ((-1, r.source), (1, r.product)):
            for s, c in cplx.terms:
                v[col[s]] += sign * c
        key = tuple(v)
        if key in seen or tuple(-x for x in v) in seen:
            continue
        seen.add(key)
        vectors.append(v)
    return vectors


def stoich_rank(g: ReactionNetwork) -> int:
    vectors = reaction_vectors(g)
    if not vectors:
        return 0
    # eliminate along the shorter dimension
    if len(vectors) > len(vectors[0]):
        vectors = [list(col) for col in zip(*vectors)]
    return integer_rank(vectors)


def _strongly_connected_count(nodes: int, adj: list[list[int]]) -> int:
    """Number of strongly connected components (iterative Tarjan)."""
    index = [-1] * nodes
    low = [0] * nodes
    on_stack = [False] * nodes
    stack: list[int] = []
    counter = 0
    count = 0
    for root in range(nodes):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(adj[v]):
                work[-1] = (v, i + 1)
                w = adj[v][i]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                count += 1
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    if w == v:
                        break
    return count


def is_weakly_reversible(g: ReactionNetwork) -> bool:
    """Every linkage class strongly connected.

    Strong components refine linkage classes, so the counts agree exactly
    when each linkage class is a single strong component.
    """
    index = _complex_index(g)
    adj: list[list[int]] = [[] for _ in index]
    uf = UnionFind(len(index))
    for r in g.sorted_reactions():
        a, b = index[r.source], index[r.product]
        adj[a].append(b)
        uf.union(a, b)
    return _strongly_connected_count(len(index), adj) == uf.components


def deficiency(g: ReactionNetwork) -> DeficiencyReport:
    ell, _ = linkage_classes(g)
    s = stoich_rank(g)
    n_c = len(g.complexes)
    return DeficiencyReport(n_c, ell, s, n_c - ell - s, is_weakly_reversible(g))


class QuickVerdict(enum.Enum):
    CERTAINLY_POSITIVE = "CertainlyPositive"
    UNKNOWN = "Unknown"


def quick_positive_deficiency(g: ReactionNetwork, n: int | None = None) -> QuickVerdict:
    """A deficiency-zero network on ``n`` species has at most ``2n`` complexes."""
    n = g.n_species if n is None else n
    if len(g.complexes) > 2 * n:
        return QuickVerdict.CERTAINLY_POSITIVE
    return QuickVerdict.UNKNOWN


def has_deficiency_zero(g: ReactionNetwork) -> bool:
    """Deficiency test with the complex-count shortcut applied before rank."""
    if quick_positive_deficiency(g) is QuickVerdict.CERTAINLY_POSITIVE:
        return False
    return deficiency(g).deficiency == 0


def project(g: ReactionNetwork, subset: Iterable[Reaction]) -> ReactionNetwork:
    subset = frozenset(subset)
    missing = subset - g.reactions
    if missing:
        raise ValueError(f"reaction not in network: {next(iter(missing))}")
    return ReactionNetwork(g.n_species, subset)


__all__ = [
    "DeficiencyReport",
    "QuickVerdict",
    "UnionFind",
    "deficiency",
    "has_deficiency_zero",
    "integer_rank",
    "is_weakly_reversible",
    "linkage_classes",
    "project",
    "quick_positive_deficiency",
    "reaction_vector",
    "reaction_vectors",
    "stoich_rank",
]
