import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import crossing_word, pl_compose, realize
from strategies import random_morphism
from whitney.errors import InvalidArgument
from whitney.morphism import Letter, PMorphism, compose, enumerate_homs, identity, word_from_str
from whitney.presheaf import LoopMonoid, omega1, product, representable
from whitney.site import amalgamate_checked, closure_cover, pullback_battery, sheaf_check
from whitney.stratgraph import chain, circle, graphs_up_to, interval, point, points, wedge


class TestRepresentable:
    def test_point_is_terminal(self):
        P = representable(point())
        for X in graphs_up_to(2, 2):
            assert len(P(X, 2)) == 1

    def test_interval_words(self):
        P = representable(circle())
        words = [a.edge_words["x"] for a in P(interval(), 2)]
        assert {"".join(str(l) for l in w) for w in words} == {"", "e", "e~", "ee", "ee~", "e~e", "e~e~"}

    def test_dimension_zero_is_singleton(self):
        P = representable(circle())
        for n in (1, 2, 3):
            assert len(P(points(n), 3)) == 1

    def test_negative_bound(self):
        with pytest.raises(InvalidArgument):
            representable(circle()).evaluate(point(), -1)

    @given(st.integers(0, 10**6))
    @settings(max_examples=60)
    def test_functoriality(self, seed):
        rng = random.Random(seed)
        P = representable(wedge(2))
        spaces = [interval(), circle(), chain(2)]
        X, Y = rng.choice(spaces), rng.choice(spaces)
        f = random_morphism(X, Y, 2, rng)
        g = random_morphism(Y, Y, 1, rng)
        a = random_morphism(Y, wedge(2), 2, rng)
        if None in (f, g, a):
            return
        assert P.restrict(identity(Y), a) == a
        assert P.restrict(f, P.restrict(g, a)) == P.restrict(compose(g, f), a)

    def test_stratified_restriction_keeps_complexity(self):
        P = representable(circle())
        for a in P(chain(2), 3):
            for f in enumerate_homs(interval(), chain(2), 1):
                assert P.complexity(P.restrict(f, a)) <= P.complexity(a)


class TestProduct:
    def test_unit_law(self):
        P = representable(circle())
        Q = product(P, representable(point()))
        for X in (interval(), circle(), chain(2)):
            assert len(Q(X, 2)) == len(P(X, 2))
            assert [a for a, _ in Q(X, 2)] == list(P(X, 2))

    def test_count(self):
        P, Q = representable(circle()), representable(interval())
        R = product(P, Q)
        for X in (interval(), circle()):
            assert len(R(X, 2)) == len(P(X, 2)) * len(Q(X, 2))

    def test_product_is_a_sheaf(self):
        R = product(representable(circle()), representable(interval()))
        for X in (interval(), chain(2), circle()):
            assert sheaf_check(R, X, closure_cover(X), 2).passed
        for C in pullback_battery([interval(), chain(2)], limit=10):
            assert sheaf_check(R, C.base, C, 2).passed


class TestLoopMonoid:
    def setup_method(self):
        self.P = representable(circle())
        self.M = omega1(self.P, 4)

    def word(self, a):
        return "".join(str(l) for l in a.edge_words["e"])

    def test_carrier_and_unit(self):
        assert len(self.M.carrier) == 31
        assert self.word(self.M.unit) == ""

    def test_operation_is_concatenation(self):
        for a in self.M.carrier:
            for b in self.M.carrier:
                if self.M.defined(a, b):
                    assert self.word(self.M.op(a, b)) == self.word(a) + self.word(b)

    def test_operation_matches_pl_realization(self):
        # glue the two loops on the lobes of wedge(2) and precompose with the pinch, concretely
        for a in self.M.carrier[:7]:
            for b in self.M.carrier[:7]:
                glued = {"e1": [(l.edge, l.forward) for l in a.edge_words["e"]],
                         "e2": [(l.edge, l.forward) for l in b.edge_words["e"]]}
                pinch = realize({"v": "v"}, {"e": [("e1", True), ("e2", True)]})
                g = realize({"v": "v"}, glued)
                h = pl_compose(g, pinch, {"e": "v"}, {"e1": "v", "e2": "v"})
                expected = tuple(Letter(e, fwd) for e, fwd in crossing_word(h["edges"]["e"]))
                assert self.M.op(a, b).edge_words["e"] == expected

    def test_unit_laws(self):
        for a in self.M.carrier:
            assert self.M.op(a, self.M.unit) == a == self.M.op(self.M.unit, a)

    def test_involution(self):
        for a in self.M.carrier:
            r = self.M.involution(a)
            assert self.M.involution(r) == a
            assert r.edge_words["e"] == tuple(Letter(l.edge, not l.forward) for l in reversed(a.edge_words["e"]))

    def test_involution_is_anti_homomorphism(self):
        for a in self.M.carrier:
            for b in self.M.carrier:
                if self.M.defined(a, b):
                    lhs = self.M.involution(self.M.op(a, b))
                    assert lhs == self.M.op(self.M.involution(b), self.M.involution(a))

    def test_other_pinch_order_gives_opposite_operation(self):
        N = LoopMonoid(self.P, 4, order=(2, 1))
        for a in self.M.carrier:
            for b in self.M.carrier:
                if self.M.defined(a, b):
                    assert N.op(a, b) == self.M.op(b, a)

    def test_needs_singleton_on_points(self):
        with pytest.raises(InvalidArgument, match="1-tuply"):
            omega1(representable(interval()), 2)
        with pytest.raises(InvalidArgument):
            omega1(representable(points(2)), 2)

    def test_table(self):
        M = omega1(self.P, 2)
        assert len(M.table()) == sum(1 for a in M.carrier for b in M.carrier if M.defined(a, b))


def test_amalgamation_on_chain2_is_the_carrier_element():
    P = representable(circle())
    C = closure_cover(chain(2))
    (pt,) = P(point(), 0)
    for a in P(interval(), 2):
        for b in P(interval(), 2):
            glued = P.amalgamate(C, [pt, pt, pt, a, b])
            assert glued.edge_words["e1"] == a.edge_words["x"]
            assert glued.edge_words["e2"] == b.edge_words["x"]


def test_amalgamate_rejects_inconsistent_vertex_data():
    P = representable(interval())
    C = closure_cover(interval())
    pts = P(point(), 0)
    constant = PMorphism(interval(), interval(), {"0": "0", "1": "0"}, {"x": word_from_str("()")})
    # vertex pieces send 0 -> 0 and 1 -> 1 but the edge stays put: no valid map patches these
    assert P.amalgamate(C, [pts[0], pts[1], constant]) is None
    # this one patches to a valid map, which does not restrict back to the edge piece
    assert P.amalgamate(C, [pts[1], pts[1], constant]) is not None
    assert amalgamate_checked(P, C, [pts[1], pts[1], constant]) is None
