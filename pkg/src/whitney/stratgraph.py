"""Compact cellular stratified spaces of dimension at most one.

A space is a finite graph: vertices are the 0-dimensional strata and each
edge, closed up by its endpoint vertices, is a 1-dimensional stratum. Loops
and parallel edges are allowed. Every edge stores a reference orientation
``src -> dst``; all per-edge data elsewhere in the package is recorded
relative to it.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import TYPE_CHECKING, Iterator, Mapping, NamedTuple

from .errors import InvalidArgument, InvalidParameter

if TYPE_CHECKING:
    from .morphism import PMorphism

__all__ = [
    "Edge",
    "Stratum",
    "StratifiedGraph",
    "Subdivision",
    "Isomorphism",
    "standard_space",
    "point",
    "points",
    "interval",
    "chain",
    "circle",
    "wedge",
    "subdivide",
    "fibre_product",
    "is_isomorphic",
    "pair_name",
    "graphs_up_to",
]

NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")


class Edge(NamedTuple):
    name: str
    src: str
    dst: str

    @property
    def is_loop(self) -> bool:
        return self.src == self.dst


class Stratum(NamedTuple):
    """A stratum named by its dimension (0 = vertex, 1 = open edge)."""

    dim: int
    name: str

    def __str__(self) -> str:
        return ("v:" if self.dim == 0 else "e:") + self.name


def _check_name(name, what: str) -> str:
    if not isinstance(name, str) or not NAME_RE.match(name):
        raise InvalidArgument(f"{what} name {name!r} must match [A-Za-z0-9_]+")
    return name


def _as_edge(item) -> Edge:
    if isinstance(item, Mapping):
        try:
            return Edge(item["name"], item["src"], item["dst"])
        except KeyError as exc:
            raise InvalidArgument(f"edge record is missing field {exc.args[0]!r}") from None
    try:
        name, src, dst = item
    except (TypeError, ValueError):
        raise InvalidArgument(f"cannot read an edge from {item!r}") from None
    return Edge(name, src, dst)


@dataclass(frozen=True)
class StratifiedGraph:
    """A stratified space of dimension <= 1, stored in canonical order.

    Vertices and edges are sorted by name on construction, so two graphs
    built from the same data in any order compare equal.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    basepoint: str | None = None
    _edge_index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _edge_names: tuple = field(default=(), init=False, repr=False, compare=False, hash=False)
    _hash: int = field(default=0, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        vertices = tuple(sorted(_check_name(v, "vertex") for v in self.vertices))
        if len(set(vertices)) != len(vertices):
            raise InvalidArgument("vertex names must be pairwise distinct")
        edges = tuple(sorted((_as_edge(e) for e in self.edges), key=lambda e: e.name))
        vset = set(vertices)
        for e in edges:
            _check_name(e.name, "edge")
            for end in (e.src, e.dst):
                if end not in vset:
                    raise InvalidArgument(f"edge {e.name!r} has endpoint {end!r} which is not a vertex")
        names = [e.name for e in edges]
        if len(set(names)) != len(names):
            raise InvalidArgument("edge names must be pairwise distinct")
        if self.basepoint is not None and self.basepoint not in vset:
            raise InvalidArgument(f"basepoint {self.basepoint!r} is not a vertex")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_edge_index", {e.name: e for e in edges})
        object.__setattr__(self, "_edge_names", tuple(names))
        object.__setattr__(self, "_hash", hash((vertices, edges, self.basepoint)))

    def __hash__(self):
        return self._hash

    @property
    def dimension(self) -> int:
        return 1 if self.edges else 0

    def edge(self, name: str) -> Edge:
        try:
            return self._edge_index[name]
        except KeyError:
            raise InvalidArgument(f"no edge named {name!r}") from None

    def has_edge(self, name: str) -> bool:
        return name in self._edge_index

    @property
    def edge_names(self) -> tuple[str, ...]:
        return self._edge_names

    def strata(self) -> Iterator[Stratum]:
        """All strata, vertices first, each kind in name order."""
        for v in self.vertices:
            yield Stratum(0, v)
        for e in self.edges:
            yield Stratum(1, e.name)

    def stratum_le(self, a: Stratum, b: Stratum) -> bool:
        """The poset of strata: ``a <= b`` iff ``a`` lies in the closure of ``b``."""
        if a == b:
            return True
        if a.dim == 0 and b.dim == 1:
            e = self.edge(b.name)
            return a.name in (e.src, e.dst)
        return False

    def with_basepoint(self, basepoint: str | None) -> StratifiedGraph:
        return StratifiedGraph(self.vertices, self.edges, basepoint)

    # -- serialization -------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"name": e.name, "src": e.src, "dst": e.dst} for e in self.edges],
            "basepoint": self.basepoint,
        }

    @classmethod
    def from_json(cls, doc) -> StratifiedGraph:
        if not isinstance(doc, Mapping):
            raise InvalidArgument("graph document must be a JSON object")
        if "vertices" not in doc:
            raise InvalidArgument("graph document is missing field 'vertices'")
        vertices = doc["vertices"]
        edges = doc.get("edges", [])
        if not isinstance(vertices, list):
            raise InvalidArgument("field 'vertices' must be a list")
        if not isinstance(edges, list):
            raise InvalidArgument("field 'edges' must be a list")
        extra = set(doc) - {"vertices", "edges", "basepoint"}
        if extra:
            raise InvalidArgument(f"unknown graph field {sorted(extra)[0]!r}")
        return cls(tuple(vertices), tuple(edges), doc.get("basepoint"))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False)

    @classmethod
    def loads(cls, text: str) -> StratifiedGraph:
        return cls.from_json(json.loads(text))

    def __str__(self) -> str:
        es = ", ".join(f"{e.name}:{e.src}->{e.dst}" for e in self.edges)
        return f"Graph(V={{{', '.join(self.vertices)}}}, E={{{es}}})"


# -- standard spaces ----------------------------------------------------


@lru_cache(maxsize=None)
def point() -> StratifiedGraph:
    return StratifiedGraph(("pt",))


@lru_cache(maxsize=None)
def points(m: int) -> StratifiedGraph:
    if m < 1:
        raise InvalidParameter("points(m) needs m >= 1")
    return StratifiedGraph(tuple(f"p{i}" for i in range(1, m + 1)))


@lru_cache(maxsize=None)
def interval() -> StratifiedGraph:
    """The closed interval stratified by its endpoints ``0``, ``1`` and interior ``x``."""
    return StratifiedGraph(("0", "1"), (Edge("x", "0", "1"),))


@lru_cache(maxsize=None)
def chain(m: int) -> StratifiedGraph:
    """``[0, m]`` stratified by the integer points; edge ``ei`` runs ``i-1 -> i``."""
    if m < 1:
        raise InvalidParameter("chain(m) needs m >= 1")
    return StratifiedGraph(
        tuple(str(i) for i in range(m + 1)),
        tuple(Edge(f"e{i}", str(i - 1), str(i)) for i in range(1, m + 1)),
    )


@lru_cache(maxsize=None)
def circle() -> StratifiedGraph:
    """The circle stratified by one point ``v`` (also the basepoint) and the loop ``e``."""
    return StratifiedGraph(("v",), (Edge("e", "v", "v"),), "v")


@lru_cache(maxsize=None)
def wedge(m: int) -> StratifiedGraph:
    """A wedge of ``m`` stratified circles glued at their point strata."""
    if m < 1:
        raise InvalidParameter("wedge(m) needs m >= 1")
    return StratifiedGraph(("v",), tuple(Edge(f"e{i}", "v", "v") for i in range(1, m + 1)), "v")


_STANDARD = {"point": point, "interval": interval, "circle": circle}
_STANDARD_M = {"points": points, "chain": chain, "wedge": wedge}


def standard_space(kind: str, m: int | None = None) -> StratifiedGraph:
    """Build a named space: point, points(m), interval, chain(m), circle, wedge(m).

    ``kind`` may carry its parameter inline, e.g. ``"chain3"``.
    """
    if m is None:
        match = re.fullmatch(r"([a-z]+)(\d+)", kind)
        if match and match.group(1) in _STANDARD_M:
            kind, m = match.group(1), int(match.group(2))
    if kind in _STANDARD:
        return _STANDARD[kind]()
    if kind in _STANDARD_M:
        if m is None:
            raise InvalidParameter(f"{kind} needs a parameter m")
        return _STANDARD_M[kind](m)
    raise InvalidParameter(f"unknown standard space {kind!r}")


# -- naming helpers -----------------------------------------------------


def pair_name(a: str, b: str) -> str:
    """Injective name for an ordered pair of names.

    Underscores inside components are doubled and the separator is ``_0``,
    so the pair can always be decoded.
    """
    return a.replace("_", "__") + "_0" + b.replace("_", "__")


def _fresh(base: str, taken: set) -> str:
    name = base
    while name in taken:
        name += "_"
    taken.add(name)
    return name


# -- subdivision --------------------------------------------------------


@dataclass(frozen=True)
class Subdivision:
    """A refinement of ``base`` in which each base edge becomes a directed path.

    ``carrier[x]`` lists the refined edges replacing ``x`` in order from
    ``src(x)`` to ``dst(x)``; ``interior[x]`` lists the inserted vertices.
    """

    base: StratifiedGraph
    refined: StratifiedGraph
    carrier: Mapping[str, tuple[str, ...]]
    interior: Mapping[str, tuple[str, ...]]

    def morphism(self) -> PMorphism:
        """The identity of the underlying space, as a map ``base -> refined``.

        It is prestratified but, as soon as some edge was split, not stratified.
        """
        from .morphism import Letter, PMorphism

        return PMorphism(
            self.base,
            self.refined,
            {v: v for v in self.base.vertices},
            {x: tuple(Letter(r, True) for r in path) for x, path in self.carrier.items()},
        )

    def coarsen(self) -> StratifiedGraph:
        """Rebuild the base graph from the refined graph and the carrier data."""
        dropped = {v for path in self.interior.values() for v in path}
        edges = []
        for x, path in self.carrier.items():
            first, last = self.refined.edge(path[0]), self.refined.edge(path[-1])
            edges.append(Edge(x, first.src, last.dst))
        vertices = tuple(v for v in self.refined.vertices if v not in dropped)
        return StratifiedGraph(vertices, tuple(edges), self.base.basepoint)


def subdivide(X: StratifiedGraph, counts: Mapping[str, int] | None = None) -> Subdivision:
    """Insert ``counts[x]`` interior points into each edge ``x`` (default 0)."""
    counts = dict(counts or {})
    for x, k in counts.items():
        X.edge(x)
        if k < 0:
            raise InvalidParameter(f"subdivision count for {x!r} must be >= 0")
    vnames = set(X.vertices)
    enames = {e.name for e in X.edges if counts.get(e.name, 0) == 0}
    vertices = list(X.vertices)
    edges: list[Edge] = []
    carrier: dict[str, tuple[str, ...]] = {}
    interior: dict[str, tuple[str, ...]] = {}
    for e in X.edges:
        k = counts.get(e.name, 0)
        if k == 0:
            edges.append(e)
            carrier[e.name] = (e.name,)
            interior[e.name] = ()
            continue
        inner = [_fresh(f"{e.name}_p{i}", vnames) for i in range(1, k + 1)]
        stops = [e.src, *inner, e.dst]
        pieces = []
        for i in range(k + 1):
            name = _fresh(f"{e.name}_{i + 1}", enames)
            edges.append(Edge(name, stops[i], stops[i + 1]))
            pieces.append(name)
        vertices.extend(inner)
        carrier[e.name] = tuple(pieces)
        interior[e.name] = tuple(inner)
    refined = StratifiedGraph(tuple(vertices), tuple(edges), X.basepoint)
    return Subdivision(X, refined, carrier, interior)


# -- fibre products -----------------------------------------------------


def fibre_product(f: PMorphism, g: PMorphism) -> tuple[StratifiedGraph, PMorphism, PMorphism]:
    """Stratified fibre product of ``f: X -> Z`` and ``g: Y -> Z``.

    Strata are pairs ``(A, B)`` with ``f(A) = g(B)``. A pair of edges that
    both collapse onto the same vertex would be 2-dimensional and is dropped.
    Returns the product graph and the projections to ``X`` and ``Y``.
    """
    from .morphism import Letter, PMorphism

    if f.target != g.target:
        raise InvalidArgument("fibre_product needs morphisms with a common target")
    if not (f.is_stratified() and g.is_stratified()):
        raise InvalidArgument("fibre_product needs stratified morphisms")
    X, Y = f.source, g.source

    vertices = []
    for a in X.vertices:
        for b in Y.vertices:
            if f.vertex_map[a] == g.vertex_map[b]:
                vertices.append(pair_name(a, b))

    edges: list[Edge] = []
    px_v: dict[str, str] = {}
    py_v: dict[str, str] = {}
    px_w: dict[str, tuple] = {}
    py_w: dict[str, tuple] = {}
    for a in X.vertices:
        for b in Y.vertices:
            if f.vertex_map[a] == g.vertex_map[b]:
                px_v[pair_name(a, b)] = a
                py_v[pair_name(a, b)] = b

    # vertex of X against an edge of Y collapsed onto the same vertex
    for a in X.vertices:
        for B in Y.edges:
            if not g.edge_words[B.name] and g.vertex_map[B.src] == f.vertex_map[a]:
                name = pair_name(a, B.name)
                edges.append(Edge(name, pair_name(a, B.src), pair_name(a, B.dst)))
                px_w[name] = ()
                py_w[name] = (Letter(B.name, True),)
    for A in X.edges:
        wa = f.edge_words[A.name]
        for b in Y.vertices:
            if not wa and f.vertex_map[A.src] == g.vertex_map[b]:
                name = pair_name(A.name, b)
                edges.append(Edge(name, pair_name(A.src, b), pair_name(A.dst, b)))
                px_w[name] = (Letter(A.name, True),)
                py_w[name] = ()
        if not wa:
            continue
        (la,) = wa
        for B in Y.edges:
            wb = g.edge_words[B.name]
            if len(wb) != 1 or wb[0].edge != la.edge:
                continue
            same = wb[0].forward == la.forward
            start = B.src if same else B.dst
            end = B.dst if same else B.src
            name = pair_name(A.name, B.name)
            edges.append(Edge(name, pair_name(A.src, start), pair_name(A.dst, end)))
            px_w[name] = (Letter(A.name, True),)
            py_w[name] = (Letter(B.name, same),)

    P = StratifiedGraph(tuple(vertices), tuple(edges))
    proj_x = PMorphism(P, X, px_v, px_w)
    proj_y = PMorphism(P, Y, py_v, py_w)
    return P, proj_x, proj_y


# -- isomorphism --------------------------------------------------------


@dataclass(frozen=True)
class Isomorphism:
    """A stratification-preserving isomorphism of graphs.

    ``edge_map[x] = (y, reversed)``; ``reversed`` is true when the stored
    orientation of ``x`` goes to the opposite orientation of ``y``.
    """

    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, tuple[str, bool]]


def _between(X: StratifiedGraph) -> dict[frozenset, list[str]]:
    out: dict[frozenset, list[str]] = {}
    for e in X.edges:
        out.setdefault(frozenset((e.src, e.dst)), []).append(e.name)
    return out


def _signature(X: StratifiedGraph) -> dict[str, tuple]:
    loops = {v: 0 for v in X.vertices}
    links: dict[str, list[int]] = {v: [] for v in X.vertices}
    for key, names in _between(X).items():
        if len(key) == 1:
            (v,) = key
            loops[v] = len(names)
        else:
            u, w = sorted(key)
            links[u].append(len(names))
            links[w].append(len(names))
    return {v: (loops[v], tuple(sorted(links[v]))) for v in X.vertices}


def is_isomorphic(X: StratifiedGraph, Y: StratifiedGraph) -> Isomorphism | None:
    """Return the lexicographically least isomorphism ``X -> Y``, or ``None``.

    Edge orientations may be reversed by the isomorphism. Basepoints are
    metadata and are ignored.
    """
    if len(X.vertices) != len(Y.vertices) or len(X.edges) != len(Y.edges):
        return None
    sx, sy = _signature(X), _signature(Y)
    if sorted(sx.values()) != sorted(sy.values()):
        return None
    bx, by = _between(X), _between(Y)

    def count(between, a, b):
        return len(between.get(frozenset((a, b)), ()))

    order = list(X.vertices)
    assignment: dict[str, str] = {}
    used: set[str] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        a = order[i]
        for b in Y.vertices:
            if b in used or sx[a] != sy[b]:
                continue
            if count(bx, a, a) != count(by, b, b):
                continue
            if any(count(bx, a, c) != count(by, b, assignment[c]) for c in order[:i]):
                continue
            assignment[a] = b
            used.add(b)
            if extend(i + 1):
                return True
            del assignment[a]
            used.discard(b)
        return False

    if not extend(0):
        return None

    edge_map: dict[str, tuple[str, bool]] = {}
    free = {key: sorted(names) for key, names in by.items()}
    for e in X.edges:
        key = frozenset((assignment[e.src], assignment[e.dst]))
        target = free[key].pop(0)
        te = Y.edge(target)
        reversed_ = not (te.src == assignment[e.src] and te.dst == assignment[e.dst])
        edge_map[e.name] = (target, reversed_)
    return Isomorphism(dict(assignment), edge_map)


def graphs_up_to(max_vertices: int, max_edges: int) -> list[StratifiedGraph]:
    """All graphs with 1..max_vertices vertices and 0..max_edges edges, one per iso class.

    Vertices are named ``0, 1, ...`` and edges ``e1, e2, ...``; the order is
    by vertex count, then edge count, then generation order.
    """
    from itertools import combinations_with_replacement

    out: list[StratifiedGraph] = []
    for nv in range(1, max_vertices + 1):
        names = [str(i) for i in range(nv)]
        slots = [(a, b) for i, a in enumerate(names) for b in names[i:]]
        for ne in range(max_edges + 1):
            found: list[StratifiedGraph] = []
            for combo in combinations_with_replacement(slots, ne):
                G = StratifiedGraph(
                    tuple(names),
                    tuple(Edge(f"e{i + 1}", a, b) for i, (a, b) in enumerate(combo)),
                )
                if not any(is_isomorphic(G, H) is not None for H in found):
                    found.append(G)
            out.extend(found)
    return out

