"""Natural transformations between presheaves, bounded equivalence checks,
and the consolidated report comparing tangles with maps to the circle."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .morphism import enumerate_homs, vertex_inclusion
from .presheaf import Presheaf
from .site import closure_cover, sheaf_check
from .stratgraph import StratifiedGraph, graphs_up_to, interval, point

__all__ = [
    "FunctorHandle",
    "NaturalityReport",
    "EquivalenceReport",
    "check_naturality",
    "check_equivalence1",
    "identity_functor",
    "tangle_hypothesis_report",
]


class FunctorHandle:
    """A map of presheaves given by its components ``component(X, a)``."""

    def __init__(self, source: Presheaf, target: Presheaf, component: Callable, name: str = "F"):
        self.source = source
        self.target = target
        self.component = component
        self.name = name

    def __call__(self, X: StratifiedGraph, a):
        return self.component(X, a)

    def __repr__(self):
        return f"FunctorHandle({self.name}: {self.source.name} -> {self.target.name})"


def identity_functor(P: Presheaf) -> FunctorHandle:
    return FunctorHandle(P, P, lambda X, a: a, f"id({P.name})")


@dataclass
class NaturalityReport:
    functor: str
    word_bound: int
    bound: int
    spaces: int = 0
    morphisms: int = 0
    squares: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "functor": self.functor,
            "word_bound": self.word_bound,
            "bound": self.bound,
            "spaces": self.spaces,
            "morphisms": self.morphisms,
            "squares": self.squares,
            "failures": self.failures,
            "passed": self.passed,
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = (
            f"{status} naturality of {self.functor} (L={self.word_bound}, B={self.bound}): "
            f"{self.squares} squares over {self.morphisms} morphisms"
        )
        for msg in self.failures[:5]:
            line += f"\n  {msg}"
        return line


def check_naturality(
    F: FunctorHandle,
    spaces: Sequence[StratifiedGraph],
    L: int,
    B: int,
    sources: Sequence[StratifiedGraph] | None = None,
    max_failures: int = 20,
) -> NaturalityReport:
    """Check ``F(f*a) = f*F(a)`` for all ``f: X -> Y`` with words of length at most ``L``.

    ``Y`` ranges over ``spaces``, ``X`` over ``sources`` (default ``spaces``)
    and ``a`` over ``F.source(Y, B)``.
    """
    P, Q = F.source, F.target
    report = NaturalityReport(F.name, L, B, spaces=len(spaces))
    images: dict = {}
    for Y in spaces:
        elems = P.evaluate(Y, B)
        for a in elems:
            images[Y, a] = F(Y, a)
        for X in sources if sources is not None else spaces:
            for f in enumerate_homs(X, Y, L):
                report.morphisms += 1
                for a in elems:
                    report.squares += 1
                    lhs = F(X, P.restrict(f, a))
                    rhs = Q.restrict(f, images[Y, a])
                    if lhs != rhs and len(report.failures) < max_failures:
                        report.failures.append(f"along {f!r} at {a!r}: {lhs!r} != {rhs!r}")
    return report


@dataclass
class EquivalenceReport:
    functor: str
    bound: int
    objects: int = 0
    objects_surjective: bool = True
    hom_pairs: int = 0
    hom_elements: int = 0
    homs_bijective: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.objects_surjective and self.homs_bijective

    def to_json(self) -> dict:
        return {
            "functor": self.functor,
            "bound": self.bound,
            "objects": self.objects,
            "objects_surjective": self.objects_surjective,
            "hom_pairs": self.hom_pairs,
            "hom_elements": self.hom_elements,
            "homs_bijective": self.homs_bijective,
            "failures": self.failures,
            "passed": self.passed,
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = (
            f"{status} 1-equivalence {self.functor} within bound {self.bound}: "
            f"{self.objects} objects, {self.hom_pairs} hom-sets, {self.hom_elements} morphisms"
        )
        for msg in self.failures[:5]:
            line += f"\n  {msg}"
        return line


def check_equivalence1(F: FunctorHandle, B: int, check_sheaves: bool = False) -> EquivalenceReport:
    """Surjectivity on objects and bijectivity on boundary-conditioned hom-sets, within ``B``."""
    P, Q = F.source, F.target
    if check_sheaves:
        for R in (P, Q):
            for X in (point(), interval()):
                rep = sheaf_check(R, X, closure_cover(X), B)
                if not rep.passed:
                    warnings.warn(f"{R.name} fails the sheaf condition on {X}", stacklevel=2)
    report = EquivalenceReport(F.name, B)
    pt, I = point(), interval()
    src_obj = P.evaluate(pt, B)
    tgt_obj = Q.evaluate(pt, B)
    report.objects = len(tgt_obj)
    image = {F(pt, a) for a in src_obj}
    missing = [b for b in tgt_obj if b not in image]
    if missing:
        report.objects_surjective = False
        report.failures.append(f"object {missing[0]!r} of {Q.name} is not hit")

    i0, i1 = vertex_inclusion(I, "0"), vertex_inclusion(I, "1")

    def homs(R, elems):
        out: dict = {}
        for alpha in elems:
            out.setdefault((R.restrict(i0, alpha), R.restrict(i1, alpha)), []).append(alpha)
        return out

    src_homs = homs(P, P.evaluate(I, B))
    tgt_homs = homs(Q, Q.evaluate(I, B))
    for a in src_obj:
        for b in src_obj:
            report.hom_pairs += 1
            alphas = src_homs.get((a, b), [])
            report.hom_elements += len(alphas)
            mapped = [F(I, alpha) for alpha in alphas]
            target = tgt_homs.get((F(pt, a), F(pt, b)), [])
            if len(set(mapped)) != len(mapped):
                report.homs_bijective = False
                report.failures.append(f"hom({a!r}, {b!r}) is not mapped injectively")
            elif set(mapped) != set(target):
                report.homs_bijective = False
                extra = [m for m in mapped if m not in set(target)]
                lost = [t for t in target if t not in set(mapped)]
                witness = f"{extra[0]!r} falls outside the bound" if extra else f"{lost[0]!r} is not hit"
                report.failures.append(f"hom({a!r}, {b!r}): {len(mapped)} vs {len(target)} elements; {witness}")
    return report


# -- consolidated report ------------------------------------------------


@dataclass
class TangleReport:
    max_vertices: int
    max_edges: int
    word_bound: int
    bound: int
    spaces: list[dict] = field(default_factory=list)
    checks: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks) and all(s["passed"] for s in self.spaces)

    def to_json(self) -> dict:
        return {
            "max_vertices": self.max_vertices,
            "max_edges": self.max_edges,
            "word_bound": self.word_bound,
            "bound": self.bound,
            "spaces": self.spaces,
            "checks": self.checks,
            "passed": self.passed,
        }

    def summary(self) -> str:
        lines = [
            f"{'PASS' if self.passed else 'FAIL'} tangle comparison at (0,1): "
            f"{len(self.spaces)} spaces up to {self.max_vertices} vertices and {self.max_edges} edges, "
            f"L={self.word_bound}, B={self.bound}"
        ]
        for s in self.spaces:
            counts = " ".join(f"{k}={v}" for k, v in s["counts"].items())
            mark = "ok " if s["passed"] else "BAD"
            lines.append(f"  {mark} {s['space']}: {counts}")
            lines.extend(f"      {msg}" for msg in s["failures"][:3])
        for c in self.checks:
            mark = "ok " if c["passed"] else "BAD"
            lines.append(f"  {mark} {c['check']}: {c['detail']}")
        return "\n".join(lines)


def tangle_hypothesis_report(max_vertices: int, max_edges: int, L: int, B: int) -> TangleReport:
    """Compare tangles, crossings and maps to the circle on all small graphs.

    Naturality is checked along every morphism from ``point`` and
    ``interval`` into each generated space. Together with naturality along
    characteristic maps (included in that set) and injectivity of the target
    on closure covers (part of the sheaf battery), this implies naturality
    along every morphism between generated spaces with words of length at
    most ``L``.
    """
    from .models import (
        circle_maps,
        collapse,
        collapse_functor,
        pontrjagin_thom,
        pontrjagin_thom_functor,
        psi11_circle,
        psi_to_tang_functor,
        tang01,
    )

    if min(max_vertices, max_edges, L, B) < 1:
        from .errors import InvalidParameter

        raise InvalidParameter("tangle_hypothesis_report needs all bounds >= 1")
    R, T, Psi = circle_maps(), tang01(), psi11_circle()
    report = TangleReport(max_vertices, max_edges, L, B)
    spaces = graphs_up_to(max_vertices, max_edges)
    pt_functor = pontrjagin_thom_functor()
    psi_functor = psi_to_tang_functor()

    for X in spaces:
        maps, tangles, crossings = R.evaluate(X, B), T.evaluate(X, B), Psi.evaluate(X, B)
        failures = []
        pt_image = [pontrjagin_thom(a) for a in maps]
        if len(set(pt_image)) != len(maps) or set(pt_image) != set(tangles):
            failures.append("pontrjagin_thom is not a bijection")
        if any(collapse(pontrjagin_thom(a)) != a for a in maps):
            failures.append("collapse o pontrjagin_thom != id")
        if any(pontrjagin_thom(collapse(t)) != t for t in tangles):
            failures.append("pontrjagin_thom o collapse != id")
        via_psi = [collapse(psi_functor(X, c)) for c in crossings]
        if len(set(via_psi)) != len(crossings) or set(via_psi) != set(maps):
            failures.append("collapse o psi_to_tang is not a bijection")
        report.spaces.append(
            {
                "space": str(X),
                "counts": {"rep_circle": len(maps), "tang01": len(tangles), "psi11": len(crossings)},
                "failures": failures,
                "passed": not failures and len(maps) == len(tangles) == len(crossings),
            }
        )

    sources = [point(), interval()]
    for F in (pt_functor, collapse_functor(), psi_functor):
        nat = check_naturality(F, spaces, L, B, sources=sources)
        report.checks.append(
            {"check": f"naturality {F.name}", "passed": nat.passed, "detail": nat.summary().split(": ", 1)[1]}
        )
    for F in (pt_functor, psi_functor):
        eq = check_equivalence1(F, B)
        report.checks.append(
            {"check": f"1-equivalence {F.name}", "passed": eq.passed, "detail": eq.summary().split(": ", 1)[1]}
        )
    for P in (R, T, Psi):
        bad = []
        for X in spaces:
            rep = sheaf_check(P, X, closure_cover(X), B)
            if not rep.passed:
                bad.append(rep.summary())
        report.checks.append(
            {
                "check": f"sheaf battery {P.name}",
                "passed": not bad,
                "detail": f"closure covers of {len(spaces)} spaces" + (f"; {bad[0]}" if bad else ""),
            }
        )
    return report
