"""Homotopy classes of prestratified maps between stratified graphs.

A class is stored as a vertex assignment plus, for every source edge read in
its stored orientation, the word of target edges it runs over. Words are
never reduced: ``e`` followed by ``e~`` is a different class from the
constant map, because preimages of an interior point of ``e`` cannot be
created or cancelled by a homotopy through prestratified maps.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import CompositionError, InvalidArgument
from .stratgraph import StratifiedGraph, chain, interval, point

__all__ = [
    "Letter",
    "Word",
    "PMorphism",
    "identity",
    "compose",
    "is_stratified",
    "enumerate_homs",
    "paths",
    "invert_word",
    "word_to_str",
    "word_from_str",
    "vertex_inclusion",
    "edge_traversal",
    "collapse_to_point",
    "reversal",
    "pinch",
]


class Letter(NamedTuple):
    """One full traversal of a target edge, forwards or backwards."""

    edge: str
    forward: bool = True

    def inverse(self) -> Letter:
        return Letter(self.edge, not self.forward)

    def __str__(self) -> str:
        return self.edge if self.forward else self.edge + "~"


Word = tuple  # tuple[Letter, ...]


def invert_word(word: Sequence[Letter]) -> Word:
    """Reverse a word and flip each letter: the same path run backwards."""
    return tuple(Letter(l.edge, not l.forward) for l in reversed(word))


def word_to_str(word: Sequence[Letter]) -> str:
    return ".".join(map(str, word)) if word else "()"


def word_from_str(text: str) -> Word:
    """Parse ``"e.e~"`` (or space separated) into letters; ``"()"`` is empty."""
    text = text.strip()
    if text in ("", "()"):
        return ()
    tokens = text.replace(".", " ").split()
    return tuple(Letter(t[:-1], False) if t.endswith("~") else Letter(t, True) for t in tokens)


def _as_word(word) -> Word:
    if isinstance(word, str):
        return word_from_str(word)
    return tuple(l if isinstance(l, Letter) else Letter(*l) for l in word)


def _walk(target: StratifiedGraph, start: str, word: Word) -> str:
    here = start
    for letter in word:
        e = target.edge(letter.edge)
        tail, head = (e.src, e.dst) if letter.forward else (e.dst, e.src)
        if tail != here:
            raise InvalidArgument(f"letter {letter} does not start at vertex {here!r}")
        here = head
    return here


class PMorphism:
    """A homotopy class of prestratified maps ``source -> target``.

    ``vertex_map`` sends every source vertex to a target vertex.
    ``edge_words[x]`` is the path traced by the source edge ``x``; an empty
    word means ``x`` is collapsed onto the image of its endpoints.
    """

    __slots__ = ("source", "target", "vertex_map", "edge_words", "_key", "_hash")

    def __init__(
        self,
        source: StratifiedGraph,
        target: StratifiedGraph,
        vertex_map: Mapping[str, str],
        edge_words: Mapping[str, Iterable] | None = None,
        *,
        check: bool = True,
    ):
        edge_words = edge_words or {}
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        self.edge_words = {x: _as_word(w) for x, w in edge_words.items()} if check else dict(edge_words)
        if check:
            self._validate()
        self._key = (
            source,
            target,
            tuple(self.vertex_map[v] for v in source.vertices),
            tuple(self.edge_words[e.name] for e in source.edges),
        )
        self._hash = hash(self._key)

    def _validate(self):
        src, tgt = self.source, self.target
        if set(self.vertex_map) != set(src.vertices):
            raise InvalidArgument("vertex_map must be defined on exactly the source vertices")
        tv = set(tgt.vertices)
        for v, w in self.vertex_map.items():
            if w not in tv:
                raise InvalidArgument(f"vertex {v!r} maps to {w!r}, not a target vertex")
        if set(self.edge_words) != set(src.edge_names):
            raise InvalidArgument("edge_words must be given for exactly the source edges")
        for e in src.edges:
            word = self.edge_words[e.name]
            for letter in word:
                if not tgt.has_edge(letter.edge):
                    raise InvalidArgument(f"edge {e.name!r} uses {letter.edge!r}, not a target edge")
            end = _walk(tgt, self.vertex_map[e.src], word)
            if end != self.vertex_map[e.dst]:
                raise InvalidArgument(
                    f"word of edge {e.name!r} ends at {end!r}, expected {self.vertex_map[e.dst]!r}"
                )

    def __eq__(self, other):
        if not isinstance(other, PMorphism):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        vs = ", ".join(f"{v}->{self.vertex_map[v]}" for v in self.source.vertices)
        ws = ", ".join(f"{x}:{word_to_str(self.edge_words[x])}" for x in self.source.edge_names)
        return f"PMorphism({vs}; {ws})"

    @property
    def space(self) -> StratifiedGraph:
        return self.source

    def word(self, x: str, reverse: bool = False) -> Word:
        """The word of ``x``, optionally read against its stored orientation."""
        w = self.edge_words[x]
        return invert_word(w) if reverse else w

    def complexity(self) -> int:
        """Length of the longest edge word."""
        return max((len(w) for w in self.edge_words.values()), default=0)

    def is_stratified(self) -> bool:
        return all(len(w) <= 1 for w in self.edge_words.values())

    def sort_key(self) -> tuple:
        return (
            self.complexity(),
            self._key[2],
            tuple(tuple((l.edge, not l.forward) for l in w) for w in self._key[3]),
        )

    def then(self, other: PMorphism) -> PMorphism:
        """Diagrammatic composite: ``self`` followed by ``other``."""
        return compose(other, self)

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "vertex_map": {v: self.vertex_map[v] for v in self.source.vertices},
            "edge_words": {
                x: [{"edge": l.edge, "dir": "fwd" if l.forward else "rev"} for l in self.edge_words[x]]
                for x in self.source.edge_names
            },
        }

    @classmethod
    def from_json(cls, doc) -> PMorphism:
        try:
            source = StratifiedGraph.from_json(doc["source"])
            target = StratifiedGraph.from_json(doc["target"])
            vmap = doc["vertex_map"]
            words = {}
            for x, letters in doc.get("edge_words", {}).items():
                word = []
                for item in letters:
                    if item.get("dir") not in ("fwd", "rev"):
                        raise InvalidArgument(f"edge_words[{x!r}]: dir must be 'fwd' or 'rev'")
                    word.append(Letter(item["edge"], item["dir"] == "fwd"))
                words[x] = word
        except KeyError as exc:
            raise InvalidArgument(f"morphism document is missing field {exc.args[0]!r}") from None
        except (TypeError, AttributeError):
            raise InvalidArgument("malformed morphism document") from None
        return cls(source, target, vmap, words)


def identity(X: StratifiedGraph) -> PMorphism:
    return PMorphism(
        X, X, {v: v for v in X.vertices}, {e.name: (Letter(e.name, True),) for e in X.edges}, check=False
    )


def compose(g: PMorphism, f: PMorphism) -> PMorphism:
    """``g o f``: substitute ``g``'s word for every letter of ``f``'s words."""
    if f.target != g.source:
        raise CompositionError("compose(g, f) needs target(f) == source(g)")
    gw = g.edge_words
    inv: dict[str, Word] = {}
    words = {}
    for x, word in f.edge_words.items():
        out: list[Letter] = []
        for letter in word:
            if letter.forward:
                out.extend(gw[letter.edge])
            else:
                if letter.edge not in inv:
                    inv[letter.edge] = invert_word(gw[letter.edge])
                out.extend(inv[letter.edge])
        words[x] = tuple(out)
    vmap = {v: g.vertex_map[w] for v, w in f.vertex_map.items()}
    return PMorphism(f.source, g.target, vmap, words, check=False)


def is_stratified(f: PMorphism) -> bool:
    """Every edge is collapsed or runs once over a single edge."""
    return f.is_stratified()


def _steps(Y: StratifiedGraph) -> dict[str, list[tuple[Letter, str]]]:
    out: dict[str, list[tuple[Letter, str]]] = {v: [] for v in Y.vertices}
    for e in Y.edges:
        out[e.src].append((Letter(e.name, True), e.dst))
        out[e.dst].append((Letter(e.name, False), e.src))
    for v in out:
        out[v].sort(key=lambda s: (s[0].edge, not s[0].forward))
    return out


@lru_cache(maxsize=4096)
def _paths_from(Y: StratifiedGraph, start: str, max_len: int) -> dict[str, tuple[Word, ...]]:
    steps = _steps(Y)
    found: dict[str, list[Word]] = {v: [] for v in Y.vertices}
    layer = [((), start)]
    found[start].append(())
    for _ in range(max_len):
        nxt = []
        for word, here in layer:
            for letter, there in steps[here]:
                w = word + (letter,)
                found[there].append(w)
                nxt.append((w, there))
        layer = nxt
    return {v: tuple(ws) for v, ws in found.items()}


def paths(Y: StratifiedGraph, start: str, end: str, max_len: int) -> tuple[Word, ...]:
    """Directed edge paths ``start -> end`` of length at most ``max_len``, shortest first."""
    return _paths_from(Y, start, max_len)[end]


def enumerate_homs(X: StratifiedGraph, Y: StratifiedGraph, max_len: int) -> list[PMorphism]:
    """All classes ``X -> Y`` whose edge words have length at most ``max_len``."""
    if max_len < 0:
        raise InvalidArgument("word-length bound must be >= 0")
    out = []
    for images in product(Y.vertices, repeat=len(X.vertices)):
        vmap = dict(zip(X.vertices, images))
        choices = [paths(Y, vmap[e.src], vmap[e.dst], max_len) for e in X.edges]
        if any(not c for c in choices):
            continue
        for words in product(*choices):
            out.append(PMorphism(X, Y, vmap, dict(zip(X.edge_names, words)), check=False))
    out.sort(key=PMorphism.sort_key)
    return out


# -- named maps ---------------------------------------------------------


def vertex_inclusion(X: StratifiedGraph, v: str) -> PMorphism:
    """The characteristic map ``point -> X`` of the vertex ``v``."""
    P = point()
    return PMorphism(P, X, {P.vertices[0]: v}, {})


def edge_traversal(X: StratifiedGraph, e: str, forward: bool = True) -> PMorphism:
    """The characteristic map ``interval -> X`` running once over ``e``."""
    I = interval()
    edge = X.edge(e)
    a, b = (edge.src, edge.dst) if forward else (edge.dst, edge.src)
    return PMorphism(I, X, {"0": a, "1": b}, {"x": (Letter(e, forward),)})


def collapse_to_point(X: StratifiedGraph) -> PMorphism:
    P = point()
    return PMorphism(X, P, {v: P.vertices[0] for v in X.vertices}, {e.name: () for e in X.edges})


def reversal() -> PMorphism:
    """``t -> 1 - t`` on the interval."""
    I = interval()
    return PMorphism(I, I, {"0": "1", "1": "0"}, {"x": (Letter("x", False),)})


def pinch(n: int) -> PMorphism:
    """``t -> n t`` from the interval onto ``chain(n)``."""
    C = chain(n)
    return PMorphism(
        interval(), C, {"0": "0", "1": str(n)}, {"x": tuple(Letter(f"e{i}", True) for i in range(1, n + 1))}
    )
