"""Random partial covers with no missing corners, for property checks."""

from __future__ import annotations

import random

from .covers import PartialCover, check_local_isometry, restrict
from .oracle import _covers
from .raag import SimplicialGraph


def random_partial(graph: SimplicialGraph, n: int, rng: random.Random,
                   density: float = 0.5) -> PartialCover:
    """Independent random partial injections, one per generator."""
    parts = {}
    for name in graph.vertices:
        targets = list(range(n))
        rng.shuffle(targets)
        parts[name] = [t if rng.random() < density else None for t in targets]
    return PartialCover(n, parts)


def repair(graph: SimplicialGraph, pc: PartialCover) -> PartialCover:
    """Delete edges at missing corners until none remain."""
    parts = {k: list(v) for k, v in pc.partials.items()}
    while True:
        cur = PartialCover(pc.vertex_count, parts)
        report = check_local_isometry(graph, cur)
        if not report:
            return cur
        v, (a, eps), _ = report.violations[0]
        imgs = parts[a]
        if eps > 0:
            imgs[v] = None
        else:
            imgs[imgs.index(v)] = None


def random_locally_isometric(graph: SimplicialGraph, rng: random.Random,
                             max_vertices: int = 6) -> PartialCover:
    """Either a repaired restriction of a genuine cover or a repaired random graph."""
    if rng.random() < 0.5:
        m = rng.randint(1, 4)
        covers = _covers(graph, m)
        if covers:
            cover = rng.choice(covers)
            keep = rng.sample(range(m), rng.randint(1, m))
            return repair(graph, restrict(cover, keep))
    n = rng.randint(1, max_vertices)
    return repair(graph, random_partial(graph, n, rng, rng.uniform(0.2, 0.9)))
