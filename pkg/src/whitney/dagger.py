"""Dagger categories and their correspondence with Whitney 1-categories.

``dagger_category_of(P, bound)`` reads a dagger category off a presheaf:
objects are point elements, morphisms interval elements, composition is
gluing over ``chain(2)`` followed by restriction along ``t -> 2t``, and the
dagger is restriction along ``t -> 1 - t``. ``whitney_category_of(D)`` goes
back: its elements over ``X`` are labellings of vertices by objects and
edges by morphisms.
"""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import CompositionError, InvalidArgument
from .morphism import (
    PMorphism,
    Word,
    collapse_to_point,
    edge_traversal,
    enumerate_homs,
    invert_word,
    paths,
    pinch,
    reversal,
    vertex_inclusion,
    word_to_str,
)
from .presheaf import Presheaf
from .site import amalgamate_checked, closure_cover
from .stratgraph import StratifiedGraph, chain, interval, point

__all__ = [
    "DaggerCategory",
    "FiniteDaggerCategory",
    "FreeDaggerCategory",
    "FreeMorphism",
    "DaggerOfPresheaf",
    "Labelling",
    "Labellings",
    "DaggerReport",
    "RoundtripReport",
    "validate_dagger",
    "dagger_category_of",
    "whitney_category_of",
    "roundtrip_check",
    "load_dagger",
    "trivial_category",
    "discrete_category",
    "cyclic_group",
    "z2",
    "idempotent_monoid",
    "nilpotent_monoid",
    "codiscrete_groupoid",
    "monoid_category",
]


class DaggerCategory(ABC):
    """Interface shared by table-backed, free and presheaf-derived categories.

    ``compose(g, f)`` is ``g o f``. Truncated categories return ``None`` for
    composites beyond their bound; every other category composes totally.
    """

    truncated = False
    kind = "abstract"

    @abstractmethod
    def objects(self) -> tuple: ...

    @abstractmethod
    def hom(self, a, b, bound: int | None = None) -> tuple: ...

    @abstractmethod
    def source(self, f): ...

    @abstractmethod
    def target(self, f): ...

    @abstractmethod
    def compose(self, g, f): ...

    @abstractmethod
    def identity(self, a): ...

    @abstractmethod
    def dagger(self, f): ...

    def complexity(self, f) -> int:
        return 0

    def morphisms(self, bound: int | None = None) -> Iterator:
        obs = self.objects()
        for a in obs:
            for b in obs:
                yield from self.hom(a, b, bound)


# -- finite tables ------------------------------------------------------


class FiniteDaggerCategory(DaggerCategory):
    """A dagger category given by explicit tables of morphism names."""

    kind = "table"

    def __init__(
        self,
        objects: Iterable[str],
        homs: Mapping[tuple[str, str], Iterable[str]],
        composition: Mapping[tuple[str, str], str],
        identities: Mapping[str, str],
        daggers: Mapping[str, str],
        name: str = "table",
    ):
        self.name = name
        self._objects = tuple(objects)
        self._homs = {k: tuple(v) for k, v in homs.items()}
        self._compose = dict(composition)
        self._id = dict(identities)
        self._dagger = dict(daggers)
        self.structural_errors: list[str] = []
        self._ends: dict[str, tuple[str, str]] = {}
        obs = set(self._objects)
        for (a, b), names in self._homs.items():
            if a not in obs or b not in obs:
                self.structural_errors.append(f"hom({a},{b}) names an unknown object")
            for f in names:
                if f in self._ends:
                    self.structural_errors.append(f"morphism {f} lies in two hom-sets")
                self._ends[f] = (a, b)
        for a in self._objects:
            if a not in self._id:
                self.structural_errors.append(f"object {a} has no identity")

    def objects(self):
        return self._objects

    def hom(self, a, b, bound=None):
        return self._homs.get((a, b), ())

    def source(self, f):
        return self._ends[f][0]

    def target(self, f):
        return self._ends[f][1]

    def compose(self, g, f):
        if self.target(f) != self.source(g):
            raise CompositionError(f"{g} o {f}: endpoints do not match")
        return self._compose.get((g, f))

    def identity(self, a):
        return self._id.get(a)

    def dagger(self, f):
        return self._dagger.get(f)

    def to_json(self) -> dict:
        return {
            "kind": "table",
            "objects": list(self._objects),
            "homs": {f"{a}|{b}": list(v) for (a, b), v in self._homs.items()},
            "compose": {f"{g}|{f}": h for (g, f), h in self._compose.items()},
            "id": dict(self._id),
            "dagger": dict(self._dagger),
        }

    @classmethod
    def from_json(cls, doc: Mapping, name: str = "table") -> FiniteDaggerCategory:
        def pairs(key):
            block = doc.get(key, {})
            if not isinstance(block, Mapping):
                raise InvalidArgument(f"field {key!r} must be an object")
            out = {}
            for k, v in block.items():
                parts = k.split("|")
                if len(parts) != 2:
                    raise InvalidArgument(f"field {key!r}: key {k!r} must have the form 'x|y'")
                out[tuple(parts)] = v
            return out

        for key in ("objects", "homs", "compose", "id", "dagger"):
            if key not in doc:
                raise InvalidArgument(f"dagger table is missing field {key!r}")
        if not isinstance(doc["objects"], list):
            raise InvalidArgument("field 'objects' must be a list")
        return cls(doc["objects"], pairs("homs"), pairs("compose"), doc["id"], doc["dagger"], name)


def monoid_category(
    elements: Sequence[str], mult: Mapping[tuple[str, str], str], daggers: Mapping[str, str], name: str = "monoid"
) -> FiniteDaggerCategory:
    """One-object category; ``elements[0]`` is the unit, ``mult[g, f] = g o f``."""
    return FiniteDaggerCategory(("*",), {("*", "*"): elements}, mult, {"*": elements[0]}, daggers, name)


def trivial_category() -> FiniteDaggerCategory:
    return monoid_category(["1"], {("1", "1"): "1"}, {"1": "1"}, "trivial")


def cyclic_group(n: int) -> FiniteDaggerCategory:
    """``Z/n`` with dagger the group inverse (so a dagger groupoid)."""
    names = [f"g{i}" for i in range(n)]
    mult = {(names[i], names[j]): names[(i + j) % n] for i in range(n) for j in range(n)}
    return monoid_category(names, mult, {names[i]: names[-i % n] for i in range(n)}, f"Z/{n}")


def z2() -> FiniteDaggerCategory:
    """``{1, g}`` with ``g o g = 1``; the dagger fixes every morphism."""
    mult = {("1", "1"): "1", ("1", "g"): "g", ("g", "1"): "g", ("g", "g"): "1"}
    return monoid_category(["1", "g"], mult, {"1": "1", "g": "g"}, "Z/2")


def idempotent_monoid() -> FiniteDaggerCategory:
    """``{1, p}`` with ``p o p = p`` and ``p`` self-adjoint: a projection, not invertible."""
    mult = {("1", "1"): "1", ("1", "p"): "p", ("p", "1"): "p", ("p", "p"): "p"}
    return monoid_category(["1", "p"], mult, {"1": "1", "p": "p"}, "projection")


def nilpotent_monoid() -> FiniteDaggerCategory:
    """``{1, a, z}`` with ``a o a = z`` absorbing and every element self-adjoint."""
    names = ["1", "a", "z"]
    mult = {}
    for g in names:
        for f in names:
            mult[g, f] = f if g == "1" else g if f == "1" else "z"
    return monoid_category(names, mult, {n: n for n in names}, "nilpotent")


def discrete_category(objects: Sequence[str]) -> FiniteDaggerCategory:
    return FiniteDaggerCategory(
        objects,
        {(a, a): [f"1{a}"] for a in objects},
        {(f"1{a}", f"1{a}"): f"1{a}" for a in objects},
        {a: f"1{a}" for a in objects},
        {f"1{a}": f"1{a}" for a in objects},
        "discrete",
    )


def codiscrete_groupoid(objects: Sequence[str]) -> FiniteDaggerCategory:
    """Exactly one morphism ``a -> b`` for every pair; dagger is inverse."""
    name = {(a, b): (f"1{a}" if a == b else f"{a}to{b}") for a in objects for b in objects}
    homs = {(a, b): [name[a, b]] for a in objects for b in objects}
    comp = {(name[b, c], name[a, b]): name[a, c] for a in objects for b in objects for c in objects}
    return FiniteDaggerCategory(
        objects, homs, comp, {a: name[a, a] for a in objects}, {name[a, b]: name[b, a] for a, b in name}, "codiscrete"
    )


# -- free dagger categories ---------------------------------------------


class FreeMorphism(NamedTuple):
    src: str
    dst: str
    word: Word

    def __str__(self):
        return f"{self.src}-[{word_to_str(self.word)}]->{self.dst}"


class FreeDaggerCategory(DaggerCategory):
    """The free dagger category on a directed multigraph.

    Morphisms are paths that may run edges backwards; the dagger runs the
    path in reverse. There are no relations, so ``e`` then ``e~`` is not an
    identity.
    """

    kind = "free"

    def __init__(self, graph: StratifiedGraph, name: str | None = None):
        self.graph = graph
        self.name = name or f"free({graph})"

    def objects(self):
        return self.graph.vertices

    def hom(self, a, b, bound=None):
        if bound is None:
            raise InvalidArgument("hom-sets of a free dagger category are infinite; pass a bound")
        return tuple(FreeMorphism(a, b, w) for w in paths(self.graph, a, b, bound))

    def source(self, f):
        return f.src

    def target(self, f):
        return f.dst

    def compose(self, g, f):
        if f.dst != g.src:
            raise CompositionError(f"{g} o {f}: endpoints do not match")
        return FreeMorphism(f.src, g.dst, f.word + g.word)

    def identity(self, a):
        return FreeMorphism(a, a, ())

    def dagger(self, f):
        return FreeMorphism(f.dst, f.src, invert_word(f.word))

    def complexity(self, f):
        return len(f.word)

    def to_json(self) -> dict:
        return {"kind": "free", "graph": self.graph.to_json()}


def load_dagger(doc: Mapping | str) -> DaggerCategory:
    """Read a dagger category JSON document (a mapping or JSON text)."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    if not isinstance(doc, Mapping):
        raise InvalidArgument("dagger document must be a JSON object")
    kind = doc.get("kind")
    if kind == "table":
        return FiniteDaggerCategory.from_json(doc)
    if kind == "free":
        if "graph" not in doc:
            raise InvalidArgument("free dagger document is missing field 'graph'")
        return FreeDaggerCategory(StratifiedGraph.from_json(doc["graph"]))
    raise InvalidArgument(f"field 'kind' must be 'table' or 'free', got {kind!r}")


# -- validation ---------------------------------------------------------


@dataclass
class DaggerReport:
    name: str
    bound: int | None
    morphisms: int = 0
    instances: int = 0
    skipped: int = 0
    violations: list[str] = field(default_factory=list)
    structural: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations and not self.structural

    def to_json(self) -> dict:
        return {
            "category": self.name,
            "bound": self.bound,
            "morphisms": self.morphisms,
            "instances": self.instances,
            "skipped_at_bound": self.skipped,
            "structural_errors": self.structural,
            "violations": self.violations,
            "passed": self.passed,
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = (
            f"{status} dagger axioms for {self.name} (bound {self.bound}): "
            f"{self.morphisms} morphisms, {self.instances} axiom instances"
        )
        if self.skipped:
            line += f", {self.skipped} beyond bound"
        for msg in self.structural[:5] + self.violations[:5]:
            line += f"\n  {msg}"
        return line


def validate_dagger(D: DaggerCategory, bound: int | None = None, max_reports: int = 20) -> DaggerReport:
    """Check every category and dagger axiom instance among morphisms within ``bound``."""
    report = DaggerReport(getattr(D, "name", D.kind), bound)
    report.structural.extend(getattr(D, "structural_errors", []))
    if report.structural:
        return report

    def bad(msg):
        if len(report.violations) < max_reports:
            report.violations.append(msg)
        else:
            report.violations[-1] = f"... and more (last: {msg})"

    def comp(g, f, where):
        h = D.compose(g, f)
        if h is None and not D.truncated:
            report.structural.append(f"composition {g} o {f} is undefined ({where})")
        return h

    obs = D.objects()
    homs = {(a, b): D.hom(a, b, bound) for a in obs for b in obs}
    report.morphisms = sum(len(v) for v in homs.values())
    for a in obs:
        ida = D.identity(a)
        report.instances += 1
        if ida is None or D.source(ida) != a or D.target(ida) != a:
            report.structural.append(f"identity of {a} is missing or has wrong endpoints")
            continue
        if D.dagger(ida) != ida:
            bad(f"id({a})^dagger != id({a})")

    for (a, b), fs in homs.items():
        for f in fs:
            fd = D.dagger(f)
            report.instances += 3
            if fd is None:
                report.structural.append(f"dagger of {f} is undefined")
                continue
            if D.source(fd) != b or D.target(fd) != a:
                bad(f"dagger of {f} does not reverse its endpoints")
            if D.dagger(fd) != f:
                bad(f"({f}^dagger)^dagger != {f}")
            if comp(f, D.identity(a), "right unit") not in (f, None):
                bad(f"{f} o id({a}) != {f}")
            if comp(D.identity(b), f, "left unit") not in (f, None):
                bad(f"id({b}) o {f} != {f}")
    if report.structural:
        return report

    for a in obs:
        for b in obs:
            for c in obs:
                for f in homs[a, b]:
                    for g in homs[b, c]:
                        gf = comp(g, f, "pair")
                        if gf is None:
                            report.skipped += 1
                            continue
                        report.instances += 1
                        if D.source(gf) != a or D.target(gf) != c:
                            report.structural.append(f"{g} o {f} lands in the wrong hom-set")
                            continue
                        rhs = comp(D.dagger(f), D.dagger(g), "dagger")
                        if rhs is None:
                            report.skipped += 1
                        elif D.dagger(gf) != rhs:
                            bad(f"({g} o {f})^dagger != {f}^dagger o {g}^dagger")
                        for d in obs:
                            for h in homs[c, d]:
                                hg = comp(h, g, "triple")
                                left = comp(h, gf, "triple")
                                right = comp(hg, f, "triple") if hg is not None else None
                                if left is None or right is None:
                                    report.skipped += 1
                                    continue
                                report.instances += 1
                                if left != right:
                                    bad(f"({h} o {g}) o {f} != {h} o ({g} o {f})")
                        if report.structural:
                            return report
    return report


# -- from presheaves to dagger categories -------------------------------


class DaggerOfPresheaf(DaggerCategory):
    """Dagger category read off a presheaf, truncated at ``bound``.

    Objects are ``P(point)``, morphisms ``a -> b`` are interval elements
    with endpoint restrictions ``a`` and ``b``. Composites whose complexity
    exceeds ``bound`` are reported as undefined.
    """

    kind = "presheaf"
    truncated = True

    def __init__(self, P: Presheaf, bound: int):
        self.P = P
        self.bound = bound
        self.name = f"D({P.name})"
        I = interval()
        self._i0 = vertex_inclusion(I, "0")
        self._i1 = vertex_inclusion(I, "1")
        self._to_point = collapse_to_point(I)
        self._flip = reversal()
        self._pinch = pinch(2)
        self._chain_cover = closure_cover(chain(2))
        self._composites: dict = {}
        self._ends: dict = {}

    def objects(self):
        return self.P.evaluate(point(), self.bound)

    def hom(self, a, b, bound=None):
        bound = self.bound if bound is None else min(bound, self.bound)
        return tuple(f for f in self.P.evaluate(interval(), bound) if self._endpoints(f) == (a, b))

    def _endpoints(self, f):
        if f not in self._ends:
            self._ends[f] = (self.P.restrict(self._i0, f), self.P.restrict(self._i1, f))
        return self._ends[f]

    def source(self, f):
        return self._endpoints(f)[0]

    def target(self, f):
        return self._endpoints(f)[1]

    def compose(self, g, f):
        key = (g, f)
        if key in self._composites:
            return self._composites[key]
        a, b = self._endpoints(f)
        b2, c = self._endpoints(g)
        if b != b2:
            raise CompositionError(f"{g!r} o {f!r}: endpoints do not match")
        # closure cover of chain(2): vertices 0, 1, 2 then edges e1, e2
        glued = amalgamate_checked(self.P, self._chain_cover, (a, b, c, f, g))
        if glued is None:
            raise CompositionError(f"{self.P.name} does not glue {f!r} and {g!r} over chain(2)")
        h = self.P.restrict(self._pinch, glued)
        result = h if self.P.complexity(h) <= self.bound else None
        self._composites[key] = result
        return result

    def identity(self, a):
        return self.P.restrict(self._to_point, a)

    def dagger(self, f):
        return self.P.restrict(self._flip, f)

    def complexity(self, f):
        return self.P.complexity(f)


def dagger_category_of(P: Presheaf, bound: int, check: bool = False) -> DaggerOfPresheaf:
    """The dagger category of ``P``; with ``check`` a failed sheaf test warns."""
    if check:
        import warnings

        from .site import sheaf_check

        for X in (point(), interval(), chain(2)):
            rep = sheaf_check(P, X, closure_cover(X), min(bound, 2))
            if not rep.passed:
                warnings.warn(f"{P.name} fails the sheaf condition on {X}: {rep.counterexample}", stacklevel=2)
    return DaggerOfPresheaf(P, bound)


# -- from dagger categories to presheaves -------------------------------


@dataclass(frozen=True)
class Labelling:
    """Objects on vertices and morphisms on edges, in stored orientations."""

    space: StratifiedGraph
    objects: tuple
    morphisms: tuple = ()

    def object_at(self, v: str):
        return self.objects[self.space.vertices.index(v)]

    def morphism_at(self, x: str):
        return self.morphisms[self.space.edge_names.index(x)]

    def __repr__(self):
        obs = ", ".join(f"{v}={o}" for v, o in zip(self.space.vertices, self.objects))
        mors = ", ".join(f"{x}={m}" for x, m in zip(self.space.edge_names, self.morphisms))
        return f"Labelling({obs}; {mors})"


class Labellings(Presheaf):
    """Labellings of spaces by a dagger category; pullback composes labels."""

    def __init__(self, D: DaggerCategory):
        super().__init__()
        self.D = D
        self.name = f"W({getattr(D, 'name', D.kind)})"

    def _evaluate(self, X, bound):
        D = self.D
        out = []
        for obs in product(D.objects(), repeat=len(X.vertices)):
            at = dict(zip(X.vertices, obs))
            choices = [D.hom(at[e.src], at[e.dst], bound) for e in X.edges]
            for mors in product(*choices):
                out.append(Labelling(X, obs, mors))
        return out

    def complexity(self, a):
        return max((self.D.complexity(m) for m in a.morphisms), default=0)

    def restrict(self, f, a):
        """Pull back along ``f``; ``None`` if a needed composite is beyond a truncation."""
        D = self.D
        Y = f.target
        obs = tuple(a.object_at(f.vertex_map[v]) for v in f.source.vertices)
        mors = []
        for e in f.source.edges:
            word = f.edge_words[e.name]
            if not word:
                mors.append(D.identity(a.object_at(f.vertex_map[e.src])))
                continue
            acc = None
            for letter in word:
                m = a.morphisms[Y.edge_names.index(letter.edge)]
                if not letter.forward:
                    m = D.dagger(m)
                acc = m if acc is None else D.compose(m, acc)
                if acc is None:
                    return None
            mors.append(acc)
        return Labelling(f.source, obs, tuple(mors))

    def amalgamate(self, cover, family):
        X = cover.base
        obs, mors = [], []
        for v in X.vertices:
            i, name, _ = cover.covering[(0, v)]
            obs.append(family[i].object_at(name))
        D = self.D
        for e in X.edges:
            i, name, forward = cover.covering[(1, e.name)]
            m = family[i].morphism_at(name)
            m = m if forward else D.dagger(m)
            if D.source(m) != obs[X.vertices.index(e.src)] or D.target(m) != obs[X.vertices.index(e.dst)]:
                return None
            mors.append(m)
        return Labelling(X, tuple(obs), tuple(mors))


def whitney_category_of(D: DaggerCategory) -> Labellings:
    return Labellings(D)


def label_functor(W_src: Labellings, W_tgt: Labellings, on_objects, on_morphisms):
    """The natural transformation induced by a dagger functor, applied label-wise."""
    from .equiv import FunctorHandle

    def component(X, a):
        return Labelling(X, tuple(on_objects(o) for o in a.objects), tuple(on_morphisms(m) for m in a.morphisms))

    return FunctorHandle(W_src, W_tgt, component, f"W(F): {W_src.name} -> {W_tgt.name}")


# -- round trips --------------------------------------------------------


@dataclass
class RoundtripReport:
    subject: str
    direction: str
    bound: int
    checks: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    skipped: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "direction": self.direction,
            "bound": self.bound,
            "checks": self.checks,
            "skipped_at_bound": self.skipped,
            "failures": self.failures,
            "passed": self.passed,
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        counts = ", ".join(f"{k}={v}" for k, v in self.checks.items())
        line = f"{status} round trip {self.direction} for {self.subject} (bound {self.bound}): {counts}"
        for msg in self.failures[:5]:
            line += f"\n  {msg}"
        return line


def _roundtrip_category(D: DaggerCategory, bound: int) -> RoundtripReport:
    W = whitney_category_of(D)
    DW = dagger_category_of(W, bound)
    report = RoundtripReport(getattr(D, "name", D.kind), "D -> D(W(D))", bound)
    P, I = point(), interval()

    def on_object(a):
        return Labelling(P, (a,))

    def on_morphism(f):
        return Labelling(I, (D.source(f), D.target(f)), (f,))

    obs = D.objects()
    images = [on_object(a) for a in obs]
    report.checks["objects"] = len(obs)
    if sorted(map(repr, images)) != sorted(map(repr, DW.objects())) or len(set(images)) != len(obs):
        report.failures.append("object map is not a bijection onto D(W(D))(point)")
    homs = {(a, b): D.hom(a, b, bound) for a in obs for b in obs}
    n_homs = 0
    for (a, b), fs in homs.items():
        mapped = [on_morphism(f) for f in fs]
        n_homs += len(fs)
        target = DW.hom(on_object(a), on_object(b))
        if len(set(mapped)) != len(fs) or set(mapped) != set(target):
            report.failures.append(f"hom({a},{b}) is not mapped bijectively")
        if on_morphism(D.identity(a)) != DW.identity(on_object(a)) if a == b else False:
            report.failures.append(f"identity of {a} not preserved")
        for f in fs:
            if on_morphism(D.dagger(f)) != DW.dagger(on_morphism(f)):
                report.failures.append(f"dagger of {f} not preserved")
    for a in obs:
        if on_morphism(D.identity(a)) != DW.identity(on_object(a)):
            report.failures.append(f"identity of {a} not preserved")
    report.checks["morphisms"] = n_homs
    n_comp = 0
    for a in obs:
        for b in obs:
            for c in obs:
                for f in homs[a, b]:
                    for g in homs[b, c]:
                        expected = D.compose(g, f)
                        got = DW.compose(on_morphism(g), on_morphism(f))
                        if got is None or expected is None:
                            if expected is not None and D.complexity(expected) <= bound:
                                report.failures.append(f"{g} o {f} undefined in D(W(D)) within bound")
                            report.skipped += 1
                            continue
                        n_comp += 1
                        if on_morphism(expected) != got:
                            report.failures.append(f"composite {g} o {f} not preserved")
    report.checks["composites"] = n_comp
    return report


def characteristic_labelling(P: Presheaf, X: StratifiedGraph, a) -> Labelling:
    """Label each stratum of ``X`` by the restriction of ``a`` along its characteristic map."""
    obs = tuple(P.restrict(vertex_inclusion(X, v), a) for v in X.vertices)
    mors = tuple(P.restrict(edge_traversal(X, e.name), a) for e in X.edges)
    return Labelling(X, obs, mors)


def _roundtrip_presheaf(
    P: Presheaf, spaces: Sequence[StratifiedGraph], bound: int, word_bound: int, sources: Sequence | None
) -> RoundtripReport:
    D = dagger_category_of(P, bound)
    W = whitney_category_of(D)
    report = RoundtripReport(P.name, "P -> W(D(P))", bound)
    chi_cache: dict = {}

    def chi(X, a):
        key = (X, a)
        if key not in chi_cache:
            chi_cache[key] = characteristic_labelling(P, X, a)
        return chi_cache[key]

    n_elems = 0
    for X in spaces:
        elems = P.evaluate(X, bound)
        labels = [chi(X, a) for a in elems]
        n_elems += len(elems)
        if len(set(labels)) != len(elems) or set(labels) != set(W.evaluate(X, bound)):
            report.failures.append(f"characteristic map on {X} is not a bijection onto labellings")
    report.checks["elements"] = n_elems

    n_sq = 0
    for Xs in sources:
        for Y in spaces:
            for f in enumerate_homs(Xs, Y, word_bound):
                for a in P.evaluate(Y, bound):
                    pulled = P.restrict(f, a)
                    if P.complexity(pulled) > bound:
                        report.skipped += 1
                        continue
                    rhs = W.restrict(f, chi(Y, a))
                    if rhs is None:
                        report.skipped += 1
                        continue
                    n_sq += 1
                    if chi(Xs, pulled) != rhs:
                        if len(report.failures) < 20:
                            report.failures.append(f"naturality fails along {f!r} at {a!r}")
    report.checks["naturality_squares"] = n_sq
    return report


def roundtrip_check(
    subject: DaggerCategory | Presheaf,
    spaces: Sequence[StratifiedGraph] | None = None,
    bound: int = 3,
    word_bound: int | None = None,
    sources: Sequence[StratifiedGraph] | None = None,
) -> RoundtripReport:
    """Check ``D ~ D(W(D))`` for a dagger category or ``P ~ W(D(P))`` for a presheaf.

    For a presheaf, naturality of the characteristic map is checked along
    every morphism ``S -> Y`` with ``Y`` in ``spaces``, ``S`` in ``sources``
    and edge words of length at most ``word_bound`` (default ``bound``).
    The default sources are ``point`` and ``interval``: a labelling is
    determined by its restrictions along characteristic maps, so a square
    for ``f: X -> Y`` commutes iff the squares for every ``f o chi_S`` do.
    Pass ``sources=spaces`` to check all squares directly.
    """
    if isinstance(subject, DaggerCategory):
        return _roundtrip_category(subject, bound)
    if spaces is None:
        from .stratgraph import circle

        spaces = [point(), interval(), chain(2), circle()]
    if sources is None:
        sources = [point(), interval()]
    return _roundtrip_presheaf(subject, spaces, bound, bound if word_bound is None else word_bound, sources)
