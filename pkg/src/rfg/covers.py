"""Finite covers of the Salvetti complex as permutation actions.

A degree-m cover of S_Γ is determined by its 1-skeleton: one permutation
of {0..m-1} per generator, such that the permutations of adjacent
generators commute.  Squares and higher cubes are implicit (a square is
present whenever its four boundary edges are).

Words act on the right, letter by letter: the first letter acts first.
With this convention the basepoint stabilizer is a subgroup whose index
is the size of the basepoint orbit.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import (
    CommutationFailure,
    CompletionCommutationFailure,
    IndexOfIntransitive,
    NotAPartialInjection,
    NotAPermutation,
    UnknownGenerator,
)
from .raag import SimplicialGraph, WordLike, as_word


@dataclass(frozen=True)
class PermutationCover:
    graph: SimplicialGraph
    degree: int
    # perms[i] is the image tuple of generator i
    perms: tuple
    basepoint: int = 0

    def perm(self, name: str) -> tuple:
        return self.perms[self.graph.index_of(name)]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "basepoint": self.basepoint,
            "perms": {v: list(p) for v, p in zip(self.graph.vertices, self.perms)},
        }


def _invert(p: Sequence[int]) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def make_cover(graph: SimplicialGraph, degree: int, perms: Mapping[str, Sequence[int]],
               basepoint: int = 0) -> PermutationCover:
    """Validate permutation data and return the cover.

    ``perms`` maps generator names to image lists; generators not listed act
    trivially.  Raises NotAPermutation or CommutationFailure.
    """
    if not isinstance(degree, int) or degree < 1:
        raise NotAPermutation(f"degree must be a positive integer, got {degree!r}")
    if not isinstance(basepoint, int) or not 0 <= basepoint < degree:
        raise NotAPermutation(f"basepoint {basepoint!r} outside 0..{degree - 1}")
    for name in perms:
        graph.index_of(name)
    full = []
    for v in graph.vertices:
        p = perms.get(v)
        if p is None:
            full.append(tuple(range(degree)))
            continue
        p = tuple(p)
        if len(p) != degree or \
                not all(isinstance(x, int) and not isinstance(x, bool) for x in p) or \
                sorted(p) != list(range(degree)):
            raise NotAPermutation(f"images for {v!r} are not a permutation of 0..{degree - 1}")
        full.append(p)
    cover = PermutationCover(graph, degree, tuple(full), basepoint)
    bad = commutation_defect(cover)
    if bad is not None:
        raise CommutationFailure(*bad)
    return cover


def commutation_defect(cover: PermutationCover):
    """First ((a, b), v) with σ_a σ_b (v) != σ_b σ_a (v), or None."""
    g = cover.graph
    for i, j in g.edge_indices():
        pa, pb = cover.perms[i], cover.perms[j]
        for v in range(cover.degree):
            if pb[pa[v]] != pa[pb[v]]:
                return (g.vertices[i], g.vertices[j]), v
    return None


def trivial_cover(graph: SimplicialGraph) -> PermutationCover:
    return make_cover(graph, 1, {})


def act(cover: PermutationCover, w: WordLike) -> tuple:
    """The permutation v -> v·w, first letter applied first."""
    word = as_word(cover.graph, w)
    table = _letter_table(cover)
    images = []
    for v in range(cover.degree):
        for c in word:
            v = table[c][v]
        images.append(v)
    return tuple(images)


def act_on_basepoint(cover: PermutationCover, w: WordLike) -> int:
    word = as_word(cover.graph, w)
    table = _letter_table(cover)
    v = cover.basepoint
    for c in word:
        v = table[c][v]
    return v


def separates(cover: PermutationCover, w: WordLike) -> bool:
    return act_on_basepoint(cover, w) != cover.basepoint


def _letter_table(cover: PermutationCover) -> list:
    # indexed by letter code: generator permutations and their inverses
    t = cover.__dict__.get("_table")
    if t is None:
        t = []
        for p in cover.perms:
            t.append(p)
            t.append(_invert(p))
        object.__setattr__(cover, "_table", t)
    return t


def orbit(cover: PermutationCover, start: Optional[int] = None) -> set:
    start = cover.basepoint if start is None else start
    table = _letter_table(cover)
    seen = {start}
    todo = deque([start])
    while todo:
        v = todo.popleft()
        for p in table:
            u = p[v]
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


def is_transitive(cover: PermutationCover) -> bool:
    return len(orbit(cover)) == cover.degree


def index(cover: PermutationCover) -> int:
    """Index of the basepoint stabilizer; only meaningful for transitive covers."""
    if not is_transitive(cover):
        raise IndexOfIntransitive(
            f"cover of degree {cover.degree} has basepoint orbit of size {len(orbit(cover))}")
    return cover.degree


# Partial covers

@dataclass(frozen=True)
class PartialCover:
    """Per-generator partial injections on {0..vertex_count-1}.

    ``partials[name][v] = w`` records a directed edge v -> w labelled ``name``;
    ``None`` means undefined.  Generators missing from the map have no edges.
    """

    vertex_count: int
    partials: dict

    def __post_init__(self):
        n = self.vertex_count
        if not isinstance(n, int) or n < 1:
            raise NotAPartialInjection(f"vertex_count must be a positive integer, got {n!r}")
        for name, images in self.partials.items():
            if len(images) != n:
                raise NotAPartialInjection(f"{name!r}: expected {n} entries, got {len(images)}")
            hit = set()
            for v, w in enumerate(images):
                if w is None:
                    continue
                if not isinstance(w, int) or not 0 <= w < n:
                    raise NotAPartialInjection(f"{name!r}: image {w!r} of {v} out of range")
                if w in hit:
                    raise NotAPartialInjection(f"{name!r}: vertex {w} has two preimages")
                hit.add(w)

    def images(self, name: str) -> list:
        return self.partials.get(name) or [None] * self.vertex_count

    def edge_count(self) -> int:
        return sum(w is not None for imgs in self.partials.values() for w in imgs)

    def to_json(self) -> dict:
        return {
            "degree": self.vertex_count,
            "basepoint": 0,
            "perms": {k: list(v) for k, v in self.partials.items()},
        }


def empty_partial(graph: SimplicialGraph, n: int) -> dict:
    return {v: [None] * n for v in graph.vertices}


def restrict(cover: PermutationCover, keep: Sequence[int]) -> PartialCover:
    """The partial cover induced on a vertex subset, renumbered in the order given."""
    pos = {v: i for i, v in enumerate(keep)}
    parts = {}
    for name, p in zip(cover.graph.vertices, cover.perms):
        parts[name] = [pos.get(p[v]) for v in keep]
    return PartialCover(len(keep), parts)


@dataclass(frozen=True)
class LocalIsometryReport:
    # (vertex, (a, ε), (b, δ)) with a before b in generator order
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return bool(self.violations)


def _steppers(graph: SimplicialGraph, pc: PartialCover) -> list:
    """step[c][v]: where letter code c takes vertex v, or None."""
    n = pc.vertex_count
    out = []
    for name in graph.vertices:
        fwd = pc.partials.get(name)
        if fwd is None:
            fwd = [None] * n
        bwd = [None] * n
        for v, w in enumerate(fwd):
            if w is not None:
                bwd[w] = v
        out.append(list(fwd))
        out.append(bwd)
    return out


def check_local_isometry(graph: SimplicialGraph, pc: PartialCover) -> LocalIsometryReport:
    """Report every missing corner.

    At a vertex v where directions a^ε and b^δ are both present for an edge
    {a, b}, the square must close: v·a^ε·b^δ and v·b^δ·a^ε are both defined
    and equal.
    """
    for name in pc.partials:
        graph.index_of(name)
    step = _steppers(graph, pc)
    bad = []
    edges = graph.edge_indices()
    for v in range(pc.vertex_count):
        for i, j in edges:
            for x in (2 * i, 2 * i + 1):
                vx = step[x][v]
                if vx is None:
                    continue
                for y in (2 * j, 2 * j + 1):
                    vy = step[y][v]
                    if vy is None:
                        continue
                    vxy, vyx = step[y][vx], step[x][vy]
                    if vxy is None or vyx is None or vxy != vyx:
                        bad.append((v, (graph.vertices[i], 1 - 2 * (x & 1)),
                                    (graph.vertices[j], 1 - 2 * (y & 1))))
    return LocalIsometryReport(tuple(bad))


def complete_partial(images: Sequence[Optional[int]]) -> list:
    """Close a partial injection into a permutation without adding vertices.

    Each maximal path v_0 -> ... -> v_t gains v_t -> v_0; isolated points
    become fixed points; cycles are untouched.
    """
    n = len(images)
    has_pre = [False] * n
    for w in images:
        if w is not None:
            has_pre[w] = True
    perm = list(images)
    for start in range(n):
        if has_pre[start]:
            continue
        end = start
        while perm[end] is not None:
            end = perm[end]
        perm[end] = start
    return perm


def canonical_complete(graph: SimplicialGraph, pc: PartialCover) -> PermutationCover:
    """Extend a locally isometric partial cover to a cover of the same degree.

    Raises CompletionCommutationFailure if the closed-up permutations fail
    to commute along some edge, which happens only for inputs with missing
    corners.
    """
    for name in pc.partials:
        graph.index_of(name)
    perms = []
    for name in graph.vertices:
        perms.append(tuple(complete_partial(pc.images(name))))
    cover = PermutationCover(graph, pc.vertex_count, tuple(perms), 0)
    bad = commutation_defect(cover)
    if bad is not None:
        raise CompletionCommutationFailure(*bad)
    return cover


def extends(cover: PermutationCover, pc: PartialCover) -> bool:
    """Does the cover restrict to the partial cover on its defined edges?"""
    if cover.degree != pc.vertex_count:
        return False
    for name, images in pc.partials.items():
        try:
            p = cover.perm(name)
        except UnknownGenerator:
            return False
        if any(w is not None and p[v] != w for v, w in enumerate(images)):
            return False
    return True


def path_partial(graph: SimplicialGraph, w: WordLike) -> PartialCover:
    """The word laid out as an unfolded path 0 -> 1 -> ... -> n."""
    word = as_word(graph, w)
    n = len(word) + 1
    parts = {v: [None] * n for v in graph.vertices}
    for u, c in enumerate(word):
        name = graph.vertices[c >> 1]
        if c & 1:
            parts[name][u + 1] = u
        else:
            parts[name][u] = u + 1
    return PartialCover(n, parts)
