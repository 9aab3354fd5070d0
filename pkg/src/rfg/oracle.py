"""Brute-force ground truth: exact divisibility by enumerating finite covers.

Pointed transitive covers of degree m are enumerated as coset tables.
Slots (vertex, letter) are filled in a fixed order and a fresh vertex
always receives the next unused label, so every isomorphism class of
pointed covers (equivalently every subgroup of index m) appears once.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Union

from .covers import PermutationCover, act, commutation_defect, separates
from .errors import BudgetExceeded, IdentityElement, NotInduced
from .raag import (
    GeodesicForm,
    SimplicialGraph,
    WordLike,
    as_word,
    normal_form,
    reduce_word,
    spheres,
)


class OmegaMode(enum.Enum):
    SUBGROUP = "subgroup"
    NORMAL = "normal"


def _mode(mode) -> OmegaMode:
    return mode if isinstance(mode, OmegaMode) else OmegaMode(mode)


DEFAULT_GROUP_BUDGET = 5000
DEFAULT_NORMAL_MAX_DEGREE = 6


def enumerate_covers(graph: SimplicialGraph, degree: int) -> Iterator[PermutationCover]:
    """Every pointed transitive cover of the given degree, once up to isomorphism."""
    yield from _covers(graph, degree)


@lru_cache(maxsize=64)
def _covers(graph: SimplicialGraph, m: int) -> tuple:
    if m < 1:
        raise ValueError("degree must be >= 1")
    r = graph.rank
    nletters = 2 * r
    table = [[None] * m for _ in range(nletters)]
    # pairs of letter codes whose generators commute
    partners = [[] for _ in range(nletters)]
    for i, j in graph.edge_indices():
        for x in (2 * i, 2 * i + 1):
            for y in (2 * j, 2 * j + 1):
                partners[x].append(y)
                partners[y].append(x)
    found = []
    used = [1]

    def clash(z, x):
        zx = table[x][z]
        for y in partners[x]:
            zy = table[y][z]
            if zy is None:
                continue
            a = table[y][zx]
            b = table[x][zy]
            if a is not None and b is not None and a != b:
                return True
        return False

    def fill(pos):
        total = m * nletters
        while pos < total:
            v, c = divmod(pos, nletters)
            if v >= used[0]:
                return
            if table[c][v] is None:
                break
            pos += 1
        else:
            if used[0] == m:
                perms = tuple(tuple(table[2 * i]) for i in range(r))
                cover = PermutationCover(graph, m, perms, 0)
                if commutation_defect(cover) is None:
                    found.append(cover)
            return
        inv = table[c ^ 1]
        n = used[0]
        targets = [u for u in range(n) if inv[u] is None]
        if n < m:
            targets.append(n)
        for u in targets:
            table[c][v] = u
            inv[u] = v
            if u == n:
                used[0] += 1
            if not (clash(v, c) or clash(u, c ^ 1)):
                fill(pos + 1)
            if u == n:
                used[0] -= 1
            table[c][v] = None
            inv[u] = None

    if r == 0:
        return (PermutationCover(graph, 1, (), 0),) if m == 1 else ()
    fill(0)
    return tuple(found)


def count_covers(graph: SimplicialGraph, degree: int) -> int:
    return len(_covers(graph, degree))


def image_order(cover: PermutationCover, budget: int = DEFAULT_GROUP_BUDGET) -> Optional[int]:
    """Order of the permutation group generated by the cover, or None past budget."""
    gens = [p for p in cover.perms if p != tuple(range(cover.degree))]
    ident = tuple(range(cover.degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(s[i] for i in g)
                if h not in seen:
                    seen.add(h)
                    if len(seen) > budget:
                        return None
                    nxt.append(h)
        frontier = nxt
    return len(seen)


@dataclass(frozen=True)
class DivisibilityResult:
    value: int
    witness: PermutationCover
    mode: OmegaMode
    # False when a normal-mode search stopped at its degree cap before
    # ruling out smaller quotients
    exact: bool = True


def _moves_basepoint(cover: PermutationCover, word: tuple) -> bool:
    return separates(cover, word)


def exact_divisibility(graph: SimplicialGraph, w: WordLike, mode="subgroup", *,
                       budget: int = DEFAULT_GROUP_BUDGET,
                       max_degree: Optional[int] = None) -> DivisibilityResult:
    """Least index of a subgroup (or order of a quotient) that misses g.

    Subgroup mode scans degrees 2, 3, ... up to ``max_degree`` (default
    |g| + 1) and returns the first separating cover.  Normal mode keeps the
    smallest image group in which g is nontrivial; a quotient of order q
    acts regularly in degree q, so scanning up to the best order found is
    exhaustive.
    """
    mode = _mode(mode)
    word = reduce_word(graph, as_word(graph, w))
    if not word:
        raise IdentityElement("the identity has no divisibility value")
    if mode is OmegaMode.SUBGROUP:
        top = len(word) + 1 if max_degree is None else max_degree
        for m in range(2, top + 1):
            for cover in _covers(graph, m):
                if _moves_basepoint(cover, word):
                    return DivisibilityResult(m, cover, mode)
        raise BudgetExceeded(top, "subgroup degree")

    top = DEFAULT_NORMAL_MAX_DEGREE if max_degree is None else max_degree
    best, best_cover = None, None
    for m in range(2, top + 1):
        if best is not None and m >= best:
            break
        for cover in _covers(graph, m):
            if act(cover, word) == tuple(range(m)):
                continue
            order = image_order(cover, budget)
            if order is not None and (best is None or order < best):
                best, best_cover = order, cover
    if best is None:
        raise BudgetExceeded(top, "normal-mode degree")
    # exhaustive only if every degree below ``best`` was scanned
    return DivisibilityResult(best, best_cover, mode, exact=best <= top + 1)


@dataclass(frozen=True)
class GrowthRow:
    n: int
    value: int
    extremal: GeodesicForm
    witness_index: int
    seconds: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class GrowthTable:
    mode: OmegaMode
    rows: tuple

    def values(self) -> list:
        return [r.value for r in self.rows]


def growth_table(graph: SimplicialGraph, n_max: int, mode="subgroup", *,
                 budget: int = DEFAULT_GROUP_BUDGET, max_degree: Optional[int] = None,
                 max_elements: Optional[int] = None) -> GrowthTable:
    """Residual finiteness growth F(1..n_max) by brute force over balls.

    Row n records the max of D over the ball of radius n; the extremal
    element is the first maximizer in canonical ball order.
    """
    mode = _mode(mode)
    rows = []
    best, best_el, best_idx = 0, None, 0
    seen = 0
    start = time.perf_counter()
    for n, layer in enumerate(spheres(graph, n_max), start=1):
        for word in layer:
            seen += 1
            if max_elements is not None and seen > max_elements:
                raise BudgetExceeded(max_elements, "ball size")
            res = exact_divisibility(graph, word, mode, budget=budget, max_degree=max_degree)
            if res.value > best:
                best, best_el, best_idx = res.value, GeodesicForm(word), res.witness.degree
        rows.append(GrowthRow(n, best, best_el, best_idx, time.perf_counter() - start))
    return GrowthTable(mode, tuple(rows))


def _as_subgraph(graph: SimplicialGraph, sub) -> SimplicialGraph:
    if isinstance(sub, SimplicialGraph):
        names = set(sub.vertices)
        if not names <= set(graph.vertices):
            raise NotInduced(f"{sorted(names - set(graph.vertices))} not in the ambient graph")
        expected = {e for e in graph.edges if e <= names}
        if set(sub.edges) != expected:
            raise NotInduced("subgraph edges differ from the induced edges")
        return sub
    names = list(sub)
    missing = [v for v in names if v not in graph.index]
    if missing:
        raise NotInduced(f"{missing} not in the ambient graph")
    return graph.induced(names)


def subgroup_inequality(graph: SimplicialGraph, sub: Union[SimplicialGraph, Iterable[str]],
                        w: str) -> tuple:
    """(D over A_Λ, D over A_Γ) for a word in the generators of the induced subgraph Λ."""
    lam = _as_subgraph(graph, sub)
    word_sub = normal_form(lam, w).letters
    if not word_sub:
        raise IdentityElement("word is trivial in the subgroup")
    names = [lam.vertices[c >> 1] for c in word_sub]
    word_amb = tuple((graph.index[n] << 1) | (c & 1) for n, c in zip(names, word_sub))
    d_sub = exact_divisibility(lam, word_sub).value
    d_amb = exact_divisibility(graph, word_amb).value
    return d_sub, d_amb


def subgroup_inequality_check(graph: SimplicialGraph, sub, w: str) -> bool:
    d_sub, d_amb = subgroup_inequality(graph, sub, w)
    return d_sub <= d_amb
