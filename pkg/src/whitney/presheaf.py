"""Computable presheaves on stratified graphs.

A presheaf assigns to each space a set of elements (its morphisms of that
shape) and to each map ``f: X -> Y`` a restriction ``P(Y) -> P(X)``. The
sets are usually infinite, so evaluation always takes a complexity bound:
``evaluate(X, bound)`` returns every element whose complexity, the longest
per-edge datum, is at most ``bound``.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Sequence

from .errors import InvalidArgument
from .morphism import (
    Letter,
    PMorphism,
    collapse_to_point,
    compose,
    enumerate_homs,
    invert_word,
)
from .site import Cover, amalgamate_checked
from .stratgraph import StratifiedGraph, circle, point, points, wedge

__all__ = ["Presheaf", "Representable", "representable", "Product", "product", "LoopMonoid", "omega1"]


class Presheaf(ABC):
    """Base class for bounded, computable presheaves."""

    name = "presheaf"

    def __init__(self):
        self._cache: dict[tuple[StratifiedGraph, int], tuple] = {}

    def evaluate(self, X: StratifiedGraph, bound: int) -> tuple:
        """Elements over ``X`` of complexity at most ``bound``, in canonical order."""
        if bound < 0:
            raise InvalidArgument("bound must be >= 0")
        key = (X, bound)
        if key not in self._cache:
            self._cache[key] = tuple(self._evaluate(X, bound))
        return self._cache[key]

    __call__ = evaluate

    @abstractmethod
    def _evaluate(self, X: StratifiedGraph, bound: int) -> Sequence: ...

    @abstractmethod
    def restrict(self, f: PMorphism, a): ...

    @abstractmethod
    def amalgamate(self, cover: Cover, family: Sequence): ...

    @abstractmethod
    def complexity(self, a) -> int: ...

    def __repr__(self):
        return self.name


# -- representables -----------------------------------------------------


class Representable(Presheaf):
    """``X -> {prestratified classes X -> X0}``; restriction is precomposition."""

    def __init__(self, X0: StratifiedGraph, name: str | None = None):
        super().__init__()
        self.X0 = X0
        self.name = name or f"rep({X0})"

    def _evaluate(self, X, bound):
        return enumerate_homs(X, self.X0, bound)

    def restrict(self, f, a):
        return compose(a, f)

    def complexity(self, a):
        return a.complexity()

    def amalgamate(self, cover, family):
        # each stratum reads its image off the piece that trivially covers it
        vmap, words = {}, {}
        for S, (i, name, forward) in cover.covering.items():
            a = family[i]
            if S.dim == 0:
                vmap[S.name] = a.vertex_map[name]
            else:
                w = a.edge_words[name]
                words[S.name] = w if forward else invert_word(w)
        try:
            return PMorphism(cover.base, self.X0, vmap, words)
        except InvalidArgument:
            return None


def representable(X0: StratifiedGraph) -> Representable:
    return Representable(X0)


# -- products -----------------------------------------------------------


class Product(Presheaf):
    """Object-wise cartesian product; elements are pairs."""

    def __init__(self, P: Presheaf, Q: Presheaf):
        super().__init__()
        self.P, self.Q = P, Q
        self.name = f"prod({P.name},{Q.name})"

    def _evaluate(self, X, bound):
        return [(a, b) for a in self.P.evaluate(X, bound) for b in self.Q.evaluate(X, bound)]

    def restrict(self, f, a):
        return (self.P.restrict(f, a[0]), self.Q.restrict(f, a[1]))

    def complexity(self, a):
        return max(self.P.complexity(a[0]), self.Q.complexity(a[1]))

    def amalgamate(self, cover, family):
        left = self.P.amalgamate(cover, [a for a, _ in family])
        right = self.Q.amalgamate(cover, [b for _, b in family])
        if left is None or right is None:
            return None
        return (left, right)


def product(P: Presheaf, Q: Presheaf) -> Product:
    return Product(P, Q)


# -- loops ---------------------------------------------------------------


def _lobe(i: int) -> PMorphism:
    return PMorphism(circle(), wedge(2), {"v": "v"}, {"e": (Letter(f"e{i}"),)})


def _pinch_map(order: tuple[int, int]) -> PMorphism:
    return PMorphism(circle(), wedge(2), {"v": "v"}, {"e": tuple(Letter(f"e{i}") for i in order)})


def _flip_circle() -> PMorphism:
    return PMorphism(circle(), circle(), {"v": "v"}, {"e": (Letter("e", False),)})


class LoopMonoid:
    """The monoid with involution carried by ``P(circle)``.

    The product of ``a`` and ``b`` amalgamates them over the two lobes of
    ``wedge(2)`` and pulls back along the pinch map ``circle -> wedge(2)``,
    which runs once around each lobe in the order given by ``order``. The
    unit is the pullback of the unique point element and the involution is
    restriction along the reflection of the circle.
    """

    def __init__(self, P: Presheaf, bound: int, order: tuple[int, int] = (1, 2)):
        for X in (point(), points(2)):
            if len(P.evaluate(X, bound)) != 1:
                raise InvalidArgument(f"{P.name} is not 1-tuply monoidal: |P({X})| != 1")
        self.P = P
        self.bound = bound
        self.carrier = P.evaluate(circle(), bound)
        self._wedge_cover = Cover(wedge(2), [_lobe(1), _lobe(2)], "lobes")
        self._pinch = _pinch_map(order)
        self._flip = _flip_circle()
        (pt_elem,) = P.evaluate(point(), bound)
        self.unit = P.restrict(collapse_to_point(circle()), pt_elem)

    def op(self, a, b):
        glued = amalgamate_checked(self.P, self._wedge_cover, (a, b))
        if glued is None:
            raise InvalidArgument(f"{self.P.name}: loops {a!r} and {b!r} do not amalgamate")
        return self.P.restrict(self._pinch, glued)

    def involution(self, a):
        return self.P.restrict(self._flip, a)

    def defined(self, a, b) -> bool:
        """Whether the product falls inside the bound."""
        return self.P.complexity(a) + self.P.complexity(b) <= self.bound

    def table(self) -> dict[tuple, object]:
        """All products whose complexities sum to at most the bound."""
        return {(a, b): self.op(a, b) for a in self.carrier for b in self.carrier if self.defined(a, b)}


def omega1(P: Presheaf, bound: int, order: tuple[int, int] = (1, 2)) -> LoopMonoid:
    return LoopMonoid(P, bound, order)

