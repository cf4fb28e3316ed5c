from __future__ import annotations

import random

from hypothesis import assume
from hypothesis import strategies as st

from whitney.morphism import PMorphism, paths
from whitney.stratgraph import Edge, StratifiedGraph


@st.composite
def graphs(draw, max_vertices: int = 3, max_edges: int = 3):
    n = draw(st.integers(1, max_vertices))
    vertices = [str(i) for i in range(n)]
    m = draw(st.integers(0, max_edges))
    ends = draw(st.lists(st.tuples(st.sampled_from(vertices), st.sampled_from(vertices)), min_size=m, max_size=m))
    edges = tuple(Edge(f"e{i + 1}", a, b) for i, (a, b) in enumerate(ends))
    return StratifiedGraph(tuple(vertices), edges)


def random_morphism(X: StratifiedGraph, Y: StratifiedGraph, max_len: int, rng: random.Random) -> PMorphism | None:
    """A random morphism with words of length at most ``max_len``, or None if none was found."""
    for _ in range(50):
        vmap = {v: rng.choice(Y.vertices) for v in X.vertices}
        words = {}
        for e in X.edges:
            options = paths(Y, vmap[e.src], vmap[e.dst], max_len)
            if not options:
                break
            words[e.name] = rng.choice(options)
        else:
            return PMorphism(X, Y, vmap, words)
    return None


@st.composite
def morphisms(draw, X: StratifiedGraph, Y: StratifiedGraph, max_len: int = 2):
    f = random_morphism(X, Y, max_len, random.Random(draw(st.integers(0, 2**32 - 1))))
    assume(f is not None)
    return f
