"""Right-angled Artin groups: defining graphs, words and geodesic normal forms.

Letters are encoded as small integers so that the hot loops (ball
enumeration, chain search) stay cheap: generator ``i`` is ``2*i`` and its
inverse is ``2*i + 1``.  Flipping the low bit inverts a letter, and ordering
letters by code orders them by generator first, with ``x`` before ``x^-1``.
A word is a plain tuple of letter codes.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

from .errors import (
    DuplicateVertex,
    GraphError,
    SelfLoop,
    UnknownEndpoint,
    UnknownGenerator,
    WordSyntaxError,
)

Word = tuple  # tuple[int, ...] of letter codes
WordLike = Union[str, Sequence[int]]


class Letter(NamedTuple):
    generator: str
    sign: int


def code_of(index: int, sign: int) -> int:
    return 2 * index + (sign < 0)


def gen_of(code: int) -> int:
    return code >> 1


def sign_of(code: int) -> int:
    return -1 if code & 1 else 1


def inverse_word(word: Sequence[int]) -> Word:
    return tuple(c ^ 1 for c in reversed(word))


@dataclass(frozen=True)
class SimplicialGraph:
    vertices: tuple
    edges: frozenset
    index: dict = field(init=False, compare=False, repr=False, hash=False)
    # bit j of link_mask[i] is set iff {v_i, v_j} is an edge
    link_mask: tuple = field(init=False, compare=False, repr=False, hash=False)

    def __post_init__(self):
        index = {v: i for i, v in enumerate(self.vertices)}
        masks = [0] * len(self.vertices)
        for e in self.edges:
            a, b = sorted(e, key=index.__getitem__)
            masks[index[a]] |= 1 << index[b]
            masks[index[b]] |= 1 << index[a]
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "link_mask", tuple(masks))

    @property
    def rank(self) -> int:
        return len(self.vertices)

    def adjacent(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges

    def link(self, x: str) -> frozenset:
        mask = self.link_mask[self.index_of(x)]
        return frozenset(v for j, v in enumerate(self.vertices) if mask >> j & 1)

    def star(self, x: str) -> frozenset:
        return self.link(x) | {x}

    def index_of(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def commute(self, i: int, j: int) -> bool:
        """True if generators ``i`` and ``j`` are distinct and adjacent."""
        return bool(self.link_mask[i] >> j & 1)

    def sorted_edges(self) -> list:
        """Edges as (a, b) pairs with a before b in generator order."""
        out = [tuple(sorted(e, key=self.index.__getitem__)) for e in self.edges]
        return sorted(out, key=lambda ab: (self.index[ab[0]], self.index[ab[1]]))

    def edge_indices(self) -> list:
        return [(self.index[a], self.index[b]) for a, b in self.sorted_edges()]

    def letter(self, code: int) -> Letter:
        return Letter(self.vertices[code >> 1], sign_of(code))

    def induced(self, names: Iterable[str]) -> "SimplicialGraph":
        keep = [v for v in self.vertices if v in set(names)]
        edges = [tuple(e) for e in self.edges if e <= set(keep)]
        return validate_graph(keep, edges)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.sorted_edges()]}

    def __str__(self):
        es = ", ".join(f"{a}-{b}" for a, b in self.sorted_edges())
        return f"Γ({' '.join(self.vertices)}; {es})"


def validate_graph(vertices: Iterable[str], edges: Iterable[Sequence[str]]) -> SimplicialGraph:
    verts = []
    seen = set()
    for v in vertices:
        if not isinstance(v, str) or not v:
            raise GraphError(f"vertex names must be non-empty strings, got {v!r}")
        if v in seen:
            raise DuplicateVertex(v)
        seen.add(v)
        verts.append(v)
    es = set()
    for e in edges:
        e = tuple(e)
        if len(e) != 2:
            raise GraphError(f"edge must have two endpoints, got {e!r}")
        a, b = e
        for x in (a, b):
            if x not in seen:
                raise UnknownEndpoint(x, e)
        if a == b:
            raise SelfLoop(a)
        pair = frozenset((a, b))
        if pair in es:
            raise GraphError(f"duplicate edge {{{a},{b}}}")
        es.add(pair)
    return SimplicialGraph(tuple(verts), frozenset(es))


def graph_from_json(obj: dict) -> SimplicialGraph:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise GraphError("graph JSON must be an object with 'vertices' and 'edges'")
    return validate_graph(obj["vertices"], obj.get("edges", []))


# Fixture graphs; vertex names a, b, c, ...

def _names(n):
    return list(string.ascii_lowercase[:n])


def edgeless_graph(n: int) -> SimplicialGraph:
    return validate_graph(_names(n), [])


def path_graph(n: int) -> SimplicialGraph:
    v = _names(n)
    return validate_graph(v, list(zip(v, v[1:])))


def cycle_graph(n: int) -> SimplicialGraph:
    v = _names(n)
    return validate_graph(v, list(zip(v, v[1:] + v[:1])))


def complete_graph(n: int) -> SimplicialGraph:
    v = _names(n)
    return validate_graph(v, [(a, b) for i, a in enumerate(v) for b in v[i + 1:]])


# Word syntax

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def parse_word(graph: SimplicialGraph, text: str) -> Word:
    """Parse whitespace separated tokens ``x``, ``x^-1``, ``x^k``."""
    out = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise WordSyntaxError(f"bad token {tok!r}")
        name, exp = m.group(1), m.group(2)
        k = 1 if exp is None else int(exp)
        if k == 0:
            raise WordSyntaxError(f"zero exponent in {tok!r}")
        c = code_of(graph.index_of(name), k)
        out.extend([c] * abs(k))
    return tuple(out)


def format_word(graph: SimplicialGraph, word: Sequence[int]) -> str:
    """Inverse of ``parse_word``; runs of a letter are written as powers."""
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        name = graph.vertices[word[i] >> 1]
        k = (j - i) * sign_of(word[i])
        parts.append(name if k == 1 else f"{name}^{k}")
        i = j
    return " ".join(parts)


def as_word(graph: SimplicialGraph, w: WordLike) -> Word:
    if isinstance(w, str):
        return parse_word(graph, w)
    w = tuple(w)
    top = 2 * graph.rank
    for c in w:
        if not isinstance(c, int) or not 0 <= c < top:
            raise UnknownGenerator(str(c))
    return w


# Reduction and normal form

def reduce_word(graph: SimplicialGraph, word: Sequence[int]) -> Word:
    """Delete cancellable pairs until none is left.

    A pair ``x ... x^-1`` cancels when every letter between them commutes
    with ``x``.  Appending letters one at a time to an already reduced
    prefix needs only one backwards scan per letter.
    """
    link = graph.link_mask
    out = []
    for x in word:
        g = x >> 1
        mask = link[g]
        j = len(out) - 1
        while j >= 0:
            h = out[j] >> 1
            if h == g or not mask >> h & 1:
                break
            j -= 1
        if j >= 0 and out[j] == x ^ 1:
            del out[j]
        else:
            out.append(x)
    return tuple(out)


def is_reduced(graph: SimplicialGraph, word: Sequence[int]) -> bool:
    return len(reduce_word(graph, word)) == len(word)


def cancels_with_end(graph: SimplicialGraph, word: Sequence[int], x: int) -> bool:
    """Would appending ``x`` to the reduced word ``word`` shorten it?"""
    g = x >> 1
    mask = graph.link_mask[g]
    for y in reversed(word):
        h = y >> 1
        if h == g:
            return y == x ^ 1
        if not mask >> h & 1:
            return False
    return False


def lex_least_shuffle(graph: SimplicialGraph, word: Sequence[int]) -> Word:
    """Lexicographically least word reachable by commuting adjacent letters.

    Greedy: repeatedly take the smallest letter that every earlier letter
    commutes with.  Two letters of the same generator never commute, so
    the choice is unique.
    """
    link = graph.link_mask
    rest = list(word)
    out = []
    while rest:
        blocked = 0
        best = -1
        best_i = -1
        for i, x in enumerate(rest):
            g = x >> 1
            if not blocked >> g & 1 and (best < 0 or x < best):
                best, best_i = x, i
            blocked |= ~link[g]
        out.append(best)
        del rest[best_i]
    return tuple(out)


@dataclass(frozen=True)
class GeodesicForm:
    letters: tuple

    @property
    def length(self) -> int:
        return len(self.letters)

    def __len__(self):
        return len(self.letters)

    def format(self, graph: SimplicialGraph) -> str:
        return format_word(graph, self.letters)


def normal_form(graph: SimplicialGraph, w: WordLike) -> GeodesicForm:
    word = as_word(graph, w)
    return GeodesicForm(lex_least_shuffle(graph, reduce_word(graph, word)))


def geodesic_length(graph: SimplicialGraph, w: WordLike) -> int:
    return len(reduce_word(graph, as_word(graph, w)))


def is_identity(graph: SimplicialGraph, w: WordLike) -> bool:
    return not reduce_word(graph, as_word(graph, w))


def equal_elements(graph: SimplicialGraph, u: WordLike, v: WordLike) -> bool:
    u, v = as_word(graph, u), as_word(graph, v)
    return is_identity(graph, u + inverse_word(v))


def spheres(graph: SimplicialGraph, n: int) -> Iterator[list]:
    """Yield the canonical forms of length 1, 2, ..., n, one sorted list per radius."""
    letters = range(2 * graph.rank)
    layer = [()]
    for _ in range(n):
        nxt = set()
        for w in layer:
            for x in letters:
                if not cancels_with_end(graph, w, x):
                    nxt.add(lex_least_shuffle(graph, w + (x,)))
        layer = sorted(nxt)
        yield layer


def ball(graph: SimplicialGraph, n: int) -> Iterator[GeodesicForm]:
    """Every nontrivial element of word length <= n, once, by length then lex order."""
    if n < 1:
        raise ValueError("ball radius must be >= 1")
    for layer in spheres(graph, n):
        for w in layer:
            yield GeodesicForm(w)
