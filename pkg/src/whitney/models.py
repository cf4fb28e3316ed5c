"""Framed 0-tangles on graphs, signed crossings of based maps to the circle,
and the comparison maps between them and maps to the circle.

Both tangles and crossings are recorded as one sign word per edge, read
along the edge's stored orientation. ``+`` means the framing (or crossing
direction) agrees with that orientation. Points in the interior of an edge
cannot pass each other or a vertex, so the word is a complete invariant of
a tangle up to isotopy rel vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

from .equiv import FunctorHandle
from .errors import InvalidArgument
from .morphism import Letter, PMorphism, enumerate_homs
from .presheaf import Presheaf, Representable
from .stratgraph import StratifiedGraph, circle

__all__ = [
    "SignWords",
    "TangleElement",
    "CrossingElement",
    "SignWordPresheaf",
    "flip",
    "tang01",
    "psi11_circle",
    "circle_maps",
    "pontrjagin_thom",
    "collapse",
    "pontrjagin_thom_functor",
    "collapse_functor",
    "psi_to_tang_functor",
    "yoneda_free",
    "yoneda_uniqueness",
]

_FLIP = str.maketrans("+-", "-+")


def flip(word: str) -> str:
    """The same signs read against the orientation: reversed, each sign flipped."""
    return word[::-1].translate(_FLIP)


@dataclass(frozen=True)
class SignWords:
    """One sign word per edge of ``space``, in edge order."""

    space: StratifiedGraph
    words: tuple[str, ...]

    def __post_init__(self):
        if len(self.words) != len(self.space.edges):
            raise InvalidArgument("need exactly one sign word per edge")
        for w in self.words:
            if set(w) - {"+", "-"}:
                raise InvalidArgument(f"sign word {w!r} may only contain '+' and '-'")

    @classmethod
    def on(cls, space: StratifiedGraph, words: Mapping[str, str] | None = None):
        words = words or {}
        unknown = set(words) - set(space.edge_names)
        if unknown:
            raise InvalidArgument(f"no edge named {sorted(unknown)[0]!r}")
        return cls(space, tuple(words.get(x, "") for x in space.edge_names))

    def word(self, x: str) -> str:
        return self.words[self.space.edge_names.index(x)]

    def complexity(self) -> int:
        return max(map(len, self.words), default=0)

    def to_json(self) -> dict:
        return {"space": self.space.to_json(), "words": dict(zip(self.space.edge_names, self.words))}

    @classmethod
    def from_json(cls, doc):
        if not isinstance(doc, Mapping) or "space" not in doc or "words" not in doc:
            raise InvalidArgument("sign-word document needs fields 'space' and 'words'")
        return cls.on(StratifiedGraph.from_json(doc["space"]), doc["words"])

    def __repr__(self):
        body = ", ".join(f"{x}:{w or '()'}" for x, w in zip(self.space.edge_names, self.words))
        return f"{type(self).__name__}({body})"


class TangleElement(SignWords):
    """A framed 0-dimensional tangle, one signed point per letter."""


class CrossingElement(SignWords):
    """Signed crossings of the stratum ``0`` by a based transversal map to the circle."""


@lru_cache(maxsize=None)
def _sign_words(max_len: int) -> tuple[str, ...]:
    out = [""]
    for n in range(1, max_len + 1):
        out.extend("".join(p) for p in product("+-", repeat=n))
    return tuple(out)


class SignWordPresheaf(Presheaf):
    """Sign words per edge; pullback reads the words along each edge word."""

    def __init__(self, name: str, element_type: type[SignWords]):
        super().__init__()
        self.name = name
        self.element_type = element_type

    def _evaluate(self, X, bound):
        make = self.element_type
        return [make(X, ws) for ws in product(_sign_words(bound), repeat=len(X.edges))]

    def complexity(self, a):
        return a.complexity()

    def restrict(self, f, a):
        Y = f.target
        index = {x: i for i, x in enumerate(Y.edge_names)}
        out = []
        for x in f.source.edge_names:
            parts = []
            for letter in f.edge_words[x]:
                w = a.words[index[letter.edge]]
                parts.append(w if letter.forward else flip(w))
            out.append("".join(parts))
        return self.element_type(f.source, tuple(out))

    def amalgamate(self, cover, family):
        X = cover.base
        out = []
        for x in X.edge_names:
            i, name, forward = cover.covering[(1, x)]
            w = family[i].word(name)
            out.append(w if forward else flip(w))
        return self.element_type(X, tuple(out))


@lru_cache(maxsize=None)
def tang01() -> SignWordPresheaf:
    """Framed codimension-1 tangles in graphs."""
    return SignWordPresheaf("tang01", TangleElement)


@lru_cache(maxsize=None)
def psi11_circle() -> SignWordPresheaf:
    """Based transversal maps to the circle up to transversal homotopy rel vertices."""
    return SignWordPresheaf("psi11", CrossingElement)


@lru_cache(maxsize=None)
def circle_maps() -> Representable:
    """The representable presheaf of the stratified circle, shared so caches are reused."""
    return Representable(circle(), "rep(circle)")


def pontrjagin_thom(a: PMorphism) -> TangleElement:
    """Preimage of the cut point of the circle: one signed point per letter."""
    if a.target != circle():
        raise InvalidArgument("pontrjagin_thom expects a map to the circle")
    return TangleElement(
        a.source, tuple("".join("+" if l.forward else "-" for l in a.edge_words[x]) for x in a.source.edge_names)
    )


def collapse(T: SignWords) -> PMorphism:
    """The collapse map of a tangle: each ``+`` runs once round the circle, each ``-`` once back."""
    X = T.space
    words = {x: tuple(Letter("e", s == "+") for s in w) for x, w in zip(X.edge_names, T.words)}
    return PMorphism(X, circle(), {v: "v" for v in X.vertices}, words, check=False)


def pontrjagin_thom_functor() -> FunctorHandle:
    return FunctorHandle(circle_maps(), tang01(), lambda X, a: pontrjagin_thom(a), "pontrjagin_thom")


def collapse_functor() -> FunctorHandle:
    return FunctorHandle(tang01(), circle_maps(), lambda X, T: collapse(T), "collapse")


def psi_to_tang_functor() -> FunctorHandle:
    return FunctorHandle(psi11_circle(), tang01(), lambda X, c: TangleElement(c.space, c.words), "psi_to_tang")


def yoneda_free(P: Presheaf, a) -> FunctorHandle:
    """The transformation ``rep(circle) -> P`` sending ``[f]`` to ``f*a``."""
    return FunctorHandle(circle_maps(), P, lambda X, f: P.restrict(f, a), f"yoneda({P.name}, {a!r})")


def yoneda_uniqueness(P: Presheaf, a, spaces: Sequence[StratifiedGraph], L: int, B: int) -> dict:
    """Refute every alternative to ``yoneda_free(P, a)`` that differs at a single value.

    A transformation ``eta`` with ``eta(id) = a`` must satisfy the
    naturality square for ``f`` at the identity element, which forces
    ``eta_X(f) = f*a``. Each candidate value other than ``f*a`` within ``B``
    is tried and must break that square. Returns counts and any survivor.
    """
    cand = refuted = truncated = 0
    survivors = []
    for X in spaces:
        values = P.evaluate(X, B)
        for f in enumerate_homs(X, circle(), L):
            # f is f*id, so the square for f at id forces eta_X(f) = f*a
            forced = P.restrict(f, a)
            if forced not in values:
                truncated += 1
            matching = [b for b in values if b == forced]
            cand += len(values)
            refuted += len(values) - len(matching)
            if len(matching) > 1:
                survivors.extend((X, f, b) for b in matching[1:])
    return {
        "candidates": cand,
        "refuted": refuted,
        "beyond_bound": truncated,
        "unique": not survivors,
        "survivors": [f"{X}: {f!r} -> {b!r}" for X, f, b in survivors[:5]],
    }
