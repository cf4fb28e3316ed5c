"""Covers of stratified graphs and the sheaf condition.

A cover is a finite family of stratified maps into a space such that every
stratum is trivially covered by some member. The sheaf condition is checked
against the family and all pairwise (and self) overlaps, computed as
stratified fibre products.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Iterator, Sequence

from .errors import InvalidArgument
from .morphism import PMorphism, edge_traversal, enumerate_homs, identity, vertex_inclusion
from .stratgraph import StratifiedGraph, Stratum, fibre_product

if TYPE_CHECKING:
    from .presheaf import Presheaf

__all__ = [
    "Cover",
    "SheafReport",
    "trivially_covers",
    "closure_cover",
    "pullback_cover",
    "pullback_battery",
    "amalgamate_checked",
    "sheaf_check",
]


def _preimage(f: PMorphism, S: Stratum) -> list[tuple[Stratum, bool]]:
    """Strata of ``source(f)`` mapping into ``S``, each with its orientation agreement."""
    out = []
    if S.dim == 0:
        for v in f.source.vertices:
            if f.vertex_map[v] == S.name:
                out.append((Stratum(0, v), True))
        for e in f.source.edges:
            if not f.edge_words[e.name] and f.vertex_map[e.src] == S.name:
                out.append((Stratum(1, e.name), True))
    else:
        for e in f.source.edges:
            w = f.edge_words[e.name]
            if len(w) == 1 and w[0].edge == S.name:
                out.append((Stratum(1, e.name), w[0].forward))
    return out


def trivially_covers(f: PMorphism, S: Stratum) -> bool:
    """True iff the preimage of ``S`` under ``f`` is one stratum mapped bijectively onto it."""
    if not f.is_stratified():
        raise InvalidArgument("trivially_covers needs a stratified morphism")
    pre = _preimage(f, S)
    return len(pre) == 1 and pre[0][0].dim == S.dim


class Cover:
    """A generating family of a covering sieve on ``base``.

    ``covering[S]`` records, for each stratum ``S``, the first piece that
    trivially covers it: ``(piece index, preimage stratum name, forward)``.
    """

    def __init__(self, base: StratifiedGraph, pieces: Sequence[PMorphism], label: str = "cover"):
        self.base = base
        self.pieces = tuple(pieces)
        self.label = label
        for i, f in enumerate(self.pieces):
            if f.target != base:
                raise InvalidArgument(f"piece {i} does not map into the base space")
            if not f.is_stratified():
                raise InvalidArgument(f"piece {i} is not stratified")
        self.covering: dict[Stratum, tuple[int, str, bool]] = {}
        for S in base.strata():
            for i, f in enumerate(self.pieces):
                pre = _preimage(f, S)
                if len(pre) == 1 and pre[0][0].dim == S.dim:
                    self.covering[S] = (i, pre[0][0].name, pre[0][1])
                    break
            else:
                raise InvalidArgument(f"no piece trivially covers stratum {S}")
        self._overlaps: dict[tuple[int, int], tuple[StratifiedGraph, PMorphism, PMorphism]] = {}

    def __len__(self):
        return len(self.pieces)

    def overlap(self, i: int, j: int) -> tuple[StratifiedGraph, PMorphism, PMorphism]:
        """``Y_i x_X Y_j`` with its projections to ``Y_i`` and ``Y_j``."""
        if (i, j) not in self._overlaps:
            self._overlaps[i, j] = fibre_product(self.pieces[i], self.pieces[j])
        return self._overlaps[i, j]

    def describe(self) -> dict:
        return {"label": self.label, "pieces": len(self.pieces)}

    def __repr__(self):
        return f"Cover({self.label}, {len(self.pieces)} pieces over {self.base})"


def closure_cover(X: StratifiedGraph) -> Cover:
    """One piece per stratum: vertex inclusions and single edge traversals."""
    pieces = [vertex_inclusion(X, v) for v in X.vertices]
    pieces += [edge_traversal(X, e.name) for e in X.edges]
    return Cover(X, pieces, "closure")


def pullback_cover(C: Cover, g: PMorphism) -> Cover:
    """Pull ``C`` back along a stratified ``g: X' -> base(C)``."""
    if not g.is_stratified():
        raise InvalidArgument("pullback_cover needs a stratified morphism")
    if g.target != C.base:
        raise InvalidArgument("pullback_cover: g must map into the base of the cover")
    pieces = [fibre_product(g, f)[1] for f in C.pieces]
    return Cover(g.source, pieces, f"pullback({C.label})")


def pullback_battery(spaces: Iterable[StratifiedGraph], limit: int | None = None) -> Iterator[Cover]:
    """Pullbacks of closure covers along all stratified maps between ``spaces``.

    Identity maps are skipped. Order is deterministic.
    """
    spaces = list(spaces)
    count = 0
    for X in spaces:
        C = closure_cover(X)
        for Xp in spaces:
            for g in enumerate_homs(Xp, X, 1):
                if g == identity(X):
                    continue
                yield pullback_cover(C, g)
                count += 1
                if limit is not None and count >= limit:
                    return


def amalgamate_checked(P: Presheaf, cover: Cover, family: Sequence) -> object | None:
    """The amalgamation of ``family`` if it exists and restricts back to it, else ``None``."""
    a = P.amalgamate(cover, family)
    if a is None:
        return None
    for f, ai in zip(cover.pieces, family):
        if P.restrict(f, a) != ai:
            return None
    return a


@dataclass
class SheafReport:
    space: StratifiedGraph
    cover: dict
    bound: int
    presheaf: str
    elements: int = 0
    families: int = 0
    injective: bool = True
    surjective: bool = True
    amalgamator_agrees: bool = True
    counterexample: str | None = None

    @property
    def passed(self) -> bool:
        return self.injective and self.surjective and self.amalgamator_agrees

    def to_json(self) -> dict:
        return {
            "presheaf": self.presheaf,
            "space": self.space.to_json(),
            "cover": self.cover,
            "bound": self.bound,
            "elements": self.elements,
            "families": self.families,
            "injective": self.injective,
            "surjective": self.surjective,
            "amalgamator_agrees": self.amalgamator_agrees,
            "counterexample": self.counterexample,
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = (
            f"{status} sheaf {self.presheaf} on {self.space} [{self.cover['label']}, "
            f"{self.cover['pieces']} pieces, bound {self.bound}]: "
            f"{self.elements} elements, {self.families} matching families"
        )
        if self.counterexample:
            line += f"; counterexample: {self.counterexample}"
        return line


def _matching_families(P: Presheaf, C: Cover, bound: int) -> list[tuple]:
    evals = [P.evaluate(f.source, bound) for f in C.pieces]
    n = len(C.pieces)
    checks: list[list[tuple[int, dict, dict]]] = [[] for _ in range(n)]
    for j in range(n):
        for i in range(j + 1):
            O, pi, pj = C.overlap(i, j)
            if not O.vertices:
                continue
            left = {a: P.restrict(pi, a) for a in evals[i]}
            right = left if i == j and pi == pj else {b: P.restrict(pj, b) for b in evals[j]}
            checks[j].append((i, left, right))

    out: list[tuple] = []
    chosen: list = []

    def extend(j: int):
        if j == n:
            out.append(tuple(chosen))
            return
        for b in evals[j]:
            ok = True
            for i, left, right in checks[j]:
                a = b if i == j else chosen[i]
                if left[a] != right[b]:
                    ok = False
                    break
            if ok:
                chosen.append(b)
                extend(j + 1)
                chosen.pop()

    extend(0)
    return out


def sheaf_check(P: Presheaf, X: StratifiedGraph, C: Cover, bound: int) -> SheafReport:
    """Check that ``P(X)`` is exactly the set of matching families for ``C``.

    Every matching family of pieces of complexity at most ``bound`` must be
    the restriction of exactly one element of ``P(X)`` of complexity at most
    ``bound``, and distinct elements must restrict to distinct families. The
    presheaf's own amalgamator must produce that element.

    Restriction along a piece that trivially covers a stratum preserves the
    data on that stratum, so an element of higher complexity never restricts
    to a family within ``bound``: checking at ``bound`` is exhaustive.
    """
    if C.base != X:
        raise InvalidArgument("sheaf_check: cover is not a cover of X")
    report = SheafReport(X, C.describe(), bound, P.name)
    globals_ = P.evaluate(X, bound)
    report.elements = len(globals_)
    preimages: dict[tuple, list] = {}
    for a in globals_:
        fam = tuple(P.restrict(f, a) for f in C.pieces)
        preimages.setdefault(fam, []).append(a)
    for fam, pre in preimages.items():
        if len(pre) > 1:
            report.injective = False
            report.counterexample = f"distinct elements {pre[0]!r} and {pre[1]!r} restrict to the same family"
            break

    families = _matching_families(P, C, bound)
    report.families = len(families)
    famset = set(families)
    for fam in preimages:
        if fam not in famset and max((P.complexity(a) for a in fam), default=0) <= bound:
            report.surjective = False
            report.counterexample = report.counterexample or (
                f"restriction of {preimages[fam][0]!r} is not a matching family"
            )
            break
    for fam in families:
        pre = preimages.get(fam)
        if not pre:
            report.surjective = False
            report.counterexample = report.counterexample or f"matching family {fam!r} has no amalgamation"
            break
        got = P.amalgamate(C, fam)
        if got != pre[0]:
            report.amalgamator_agrees = False
            report.counterexample = report.counterexample or (
                f"amalgamator returned {got!r} for family {fam!r}, expected {pre[0]!r}"
            )
            break
    return report
