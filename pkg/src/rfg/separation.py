"""Separating covers of index at most n+1 for elements of word length n.

The pipeline for a nontrivial element g:

1. ``frame_chain`` rewrites a geodesic for g, up to commuting letters, as
   ``q_1 a_1^e_1 q_2 a_2^e_2 ... q_k a_k^e_k q_{k+1}``.  Each q_i only uses
   generators adjacent to the pivot a_i, the tail only generators adjacent
   to a_k, and consecutive pivots are non-adjacent distinct generators.
2. ``build_partial_cover`` lays the pivot powers out as one path of
   sum|e_i| edges and hangs the q-letters as loops over the segment of
   their pivot.  The result has at most n+1 vertices and has no missing
   corners.
3. ``canonical_complete`` closes it into a cover of the same degree in
   which the lift of g from vertex 0 ends at the last vertex of the path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .covers import (
    PartialCover,
    PermutationCover,
    canonical_complete,
    check_local_isometry,
    is_transitive,
    separates,
)
from .errors import (
    CertificateError,
    FoldingCollapse,
    IdentityElement,
    InternalSearchExhausted,
    NotLocallyIsometric,
)
from .raag import (
    GeodesicForm,
    SimplicialGraph,
    WordLike,
    code_of,
    equal_elements,
    format_word,
    normal_form,
)


@dataclass(frozen=True)
class Block:
    q: tuple          # letter codes, all commuting with the pivot
    pivot: int        # generator index
    exponent: int     # nonzero

    @property
    def letters(self) -> tuple:
        c = code_of(self.pivot, self.exponent)
        return self.q + (c,) * abs(self.exponent)


@dataclass(frozen=True)
class FrameChain:
    blocks: tuple
    tail: tuple

    def word(self) -> tuple:
        out = ()
        for b in self.blocks:
            out += b.letters
        return out + self.tail

    @property
    def path_length(self) -> int:
        return sum(abs(b.exponent) for b in self.blocks)

    def describe(self, graph: SimplicialGraph) -> str:
        parts = []
        for b in self.blocks:
            q = format_word(graph, b.q)
            piv = format_word(graph, (code_of(b.pivot, b.exponent),) * abs(b.exponent))
            parts.append(f"[{q}] {piv}" if q else piv)
        if self.tail:
            parts.append(f"[{format_word(graph, self.tail)}]")
        return " | ".join(parts)


def frame_chain(graph: SimplicialGraph, w: WordLike, *,
                noncommuting_pivots: bool = True) -> FrameChain:
    """Depth-first search for a frame chain of the element ``w``.

    At each step the candidate pivots, in generator order, are generators
    whose first remaining occurrence is preceded only by letters commuting
    with it.  The block takes the longest run of that letter which can be
    shuffled to the front together with the commuting letters in between;
    those letters become the block's q.  Once every remaining letter
    commutes with the last pivot, the rest may become the tail.

    ``noncommuting_pivots=False`` drops the requirement that consecutive
    pivots do not commute; such chains generally have missing corners and
    exist to exercise the failure path.
    """
    form = normal_form(graph, w).letters
    if not form:
        raise IdentityElement("the identity has no frame chain")
    link = graph.link_mask
    rank = graph.rank
    dead = set()

    def search(rem, prev):
        key = (rem, prev)
        if key in dead:
            return None
        for a in range(rank):
            if prev is not None and (a == prev or
                                     (noncommuting_pivots and link[prev] >> a & 1)):
                continue
            mask = link[a]
            i = 0
            while i < len(rem):
                h = rem[i] >> 1
                if h == a or not mask >> h & 1:
                    break
                i += 1
            if i == len(rem) or rem[i] >> 1 != a:
                continue
            x = rem[i]
            q = list(rem[:i])
            e = 1
            pending = []
            j = i + 1
            while j < len(rem):
                y = rem[j]
                h = y >> 1
                if h == a:
                    if y != x:
                        break
                    e += 1
                    q += pending
                    pending = []
                elif mask >> h & 1:
                    pending.append(y)
                else:
                    break
                j += 1
            block = Block(tuple(q), a, e if x & 1 == 0 else -e)
            rest = search(tuple(pending) + rem[j:], a)
            if rest is not None:
                return [block] + rest[0], rest[1]
        if prev is not None and all(link[prev] >> (y >> 1) & 1 for y in rem):
            return [], rem
        dead.add(key)
        return None

    found = search(form, None)
    if found is None:
        raise InternalSearchExhausted(f"no frame chain for {format_word(graph, form)}")
    blocks, tail = found
    return FrameChain(tuple(blocks), tuple(tail))


def chain_problems(graph: SimplicialGraph, chain: FrameChain,
                   element: Optional[tuple] = None) -> list:
    """Names of the frame-chain invariants that fail (empty list if none).

    ``element`` is a geodesic word for g; when given, the chain must
    reassemble to a word of the same length representing the same element.
    """
    link = graph.link_mask
    out = []
    if not chain.blocks:
        out.append("empty-chain")
        return out
    for b in chain.blocks:
        if b.exponent == 0:
            out.append("zero-exponent")
        if any(not link[b.pivot] >> (c >> 1) & 1 for c in b.q):
            out.append("q-not-in-link")
    last = chain.blocks[-1].pivot
    if any(not link[last] >> (c >> 1) & 1 for c in chain.tail):
        out.append("tail-not-in-link")
    for b1, b2 in zip(chain.blocks, chain.blocks[1:]):
        if b1.pivot == b2.pivot or link[b1.pivot] >> b2.pivot & 1:
            out.append("consecutive-pivots-commute")
    if element is not None:
        w = chain.word()
        if len(w) != len(element):
            out.append("not-geodesic")
        elif not equal_elements(graph, w, element):
            out.append("wrong-element")
        if chain.path_length > len(element):
            out.append("path-too-long")
    return out


def build_partial_cover(graph: SimplicialGraph, chain: FrameChain):
    """Quotient of the frames: a path of pivot edges with loops over each segment.

    Returns ``(partial_cover, path)`` where ``path`` lists the vertices that
    the lift of the reassembled word visits, starting at 0.

    The loops of block i sit on every vertex of segment i.  At a junction
    vertex the loop labels of both neighbouring segments meet, so each
    segment's label set is closed under borrowing those labels of its
    neighbours that commute with its own pivot; without this a junction
    could have a missing corner.
    """
    blocks = chain.blocks
    if not blocks:
        raise FoldingCollapse("chain has no blocks")
    link = graph.link_mask
    m = chain.path_length
    n = m + 1
    fwd = [[None] * n for _ in range(graph.rank)]

    bounds = []
    s = 0
    for b in blocks:
        bounds.append((s, s + abs(b.exponent)))
        s += abs(b.exponent)

    def put(gen, v, w):
        cur = fwd[gen][v]
        if cur == w:
            return
        if cur is not None or w in fwd[gen]:
            raise FoldingCollapse(
                f"{graph.vertices[gen]}-edges at vertex {v} would have to be folded")
        fwd[gen][v] = w

    for b, (lo, hi) in zip(blocks, bounds):
        for u in range(lo, hi):
            if b.exponent > 0:
                put(b.pivot, u, u + 1)
            else:
                put(b.pivot, u + 1, u)

    labels = [{c >> 1 for c in b.q} for b in blocks]
    labels[-1] |= {c >> 1 for c in chain.tail}
    changed = True
    while changed:
        changed = False
        for i, b in enumerate(blocks):
            for j in (i - 1, i + 1):
                if 0 <= j < len(blocks):
                    extra = {x for x in labels[j] if link[b.pivot] >> x & 1} - labels[i]
                    if extra:
                        labels[i] |= extra
                        changed = True

    for lab, (lo, hi) in zip(labels, bounds):
        for x in sorted(lab):
            for u in range(lo, hi + 1):
                put(x, u, u)

    path = [0]
    for b, (lo, hi) in zip(blocks, bounds):
        path.extend([lo] * len(b.q))
        path.extend(range(lo + 1, hi + 1))
    path.extend([m] * len(chain.tail))

    parts = {name: fwd[i] for i, name in enumerate(graph.vertices)}
    return PartialCover(n, parts), path


@dataclass(frozen=True)
class SeparationCertificate:
    graph: SimplicialGraph
    element: GeodesicForm
    chain: FrameChain
    partial: PartialCover
    cover: PermutationCover

    @property
    def degree(self) -> int:
        return self.cover.degree


def separating_cover(graph: SimplicialGraph, w: WordLike) -> SeparationCertificate:
    """Certificate that g is missed by a subgroup of index at most |g| + 1."""
    element = normal_form(graph, w)
    if not element.letters:
        raise IdentityElement("the identity is contained in every subgroup")
    chain = frame_chain(graph, element.letters)
    partial, path = build_partial_cover(graph, chain)
    report = check_local_isometry(graph, partial)
    if report:
        raise NotLocallyIsometric(report)
    cover = canonical_complete(graph, partial)
    if cover.degree > element.length + 1:
        raise CertificateError(f"degree {cover.degree} exceeds {element.length + 1}")
    if not separates(cover, element.letters):
        raise CertificateError("cover does not separate the element")
    if not is_transitive(cover):
        raise CertificateError("cover is not transitive")
    return SeparationCertificate(graph, element, chain, partial, cover)


def divisibility_upper(graph: SimplicialGraph, w: WordLike) -> int:
    return separating_cover(graph, w).degree
