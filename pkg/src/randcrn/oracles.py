"""Brute-force reference computations for tests.

Deliberately slow and written without any code shared with
:mod:`randcrn.deficiency`: rank here comes from exhaustive subset search with
:class:`fractions.Fraction` elimination.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .model import EdgeClass, Reaction, ReactionNetwork, classify_edge

MAX_VECTORS = 14


class OracleLimitError(ValueError):
    pass


def _independent(vectors: Sequence[Sequence[int]]) -> bool:
    """Linear independence by Gauss-Jordan over the rationals."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return True
    width = len(rows[0])
    if len(rows) > width:
        return False
    for i in range(len(rows)):
        col = next((c for c in range(width) if rows[i][c] != 0), None)
        if col is None:
            return False
        for j in range(i + 1, len(rows)):
            if rows[j][col] != 0:
                factor = rows[j][col] / rows[i][col]
                rows[j] = [a - factor * b for a, b in zip(rows[j], rows[i])]
    return True


def brute_rank(vectors: Sequence[Sequence[int]]) -> int:
    """Size of the largest linearly independent subset."""
    vectors = [list(v) for v in vectors]
    if len(vectors) > MAX_VECTORS:
        raise OracleLimitError(f"{len(vectors)} vectors exceeds oracle limit {MAX_VECTORS}")
    if not vectors:
        return 0
    if len({len(v) for v in vectors}) != 1:
        raise ValueError("vectors of unequal length")
    for size in range(min(len(vectors), len(vectors[0])), 0, -1):
        if any(_independent(sub) for sub in combinations(vectors, size)):
            return size
    return 0


def one_direction_reactions(g: ReactionNetwork) -> list[Reaction]:
    """Reactions with one member of each reversible pair dropped."""
    kept = []
    for r in sorted(g.reactions, key=lambda r: (str(r.source), str(r.product))):
        if r.reversed() in g.reactions and str(r.product) < str(r.source):
            continue
        kept.append(r)
    return kept


def _vector(r: Reaction, n: int) -> tuple[int, ...]:
    v = [0] * n
    for s, c in r.source.terms:
        v[s - 1] -= c
    for s, c in r.product.terms:
        v[s - 1] += c
    return tuple(v)


def minimally_dependent_subsets(g: ReactionNetwork, max_size: int | None = None) -> list[list[Reaction]]:
    """All subsets of one-direction reactions whose vectors are minimally dependent."""
    reactions = one_direction_reactions(g)
    if len(reactions) > MAX_VECTORS:
        raise OracleLimitError(f"{len(reactions)} reactions exceeds oracle limit {MAX_VECTORS}")
    n = g.n_species
    vec = {r: _vector(r, n) for r in reactions}
    top = len(reactions) if max_size is None else min(max_size, len(reactions))
    found = []
    for size in range(1, top + 1):
        for sub in combinations(reactions, size):
            vs = [vec[r] for r in sub]
            if _independent(vs):
                continue
            if all(_independent(vs[:i] + vs[i + 1:]) for i in range(size)):
                found.append(list(sub))
    return found


def class_counts(subset: Sequence[Reaction]) -> tuple[int, int, int, int, int]:
    """``(i1..i5)``: members of E01, E11, E02, E12, E22 in ``subset``."""
    order = (EdgeClass.E01, EdgeClass.E11, EdgeClass.E02, EdgeClass.E12, EdgeClass.E22)
    classes = [classify_edge(r) for r in subset]
    return tuple(classes.count(c) for c in order)


def satisfies_species_hypothesis(subset: Sequence[Reaction]) -> bool:
    """E02, E12, E22 members involve exactly 2, 3, 4 distinct species."""
    need = {EdgeClass.E02: 2, EdgeClass.E12: 3, EdgeClass.E22: 4}
    for r in subset:
        cls = classify_edge(r)
        if cls in need and len(set(r.source.species) | set(r.product.species)) != need[cls]:
            return False
    return True


def check_inflow_bound(i1: int, i2: int, i3: int, i4: int, i5: int) -> bool:
    """Inflow count bounded by the weighted binary-class counts."""
    return i1 <= 2 * i3 + 3 * i4 + 4 * i5


def no_single_entry_row(vectors: Sequence[Sequence[int]]) -> bool:
    """No coordinate is non-zero in exactly one of the vectors."""
    if not vectors:
        return True
    return all(sum(1 for v in vectors if v[k] != 0) != 1 for k in range(len(vectors[0])))


def reaction_vectors_of(subset: Sequence[Reaction], n: int) -> list[tuple[int, ...]]:
    return [_vector(r, n) for r in subset]
