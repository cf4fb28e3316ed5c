"""
From dagger categories to presheaves and back
=============================================

Labelling the vertices of a graph with objects and its edges with
morphisms gives a presheaf. Points and intervals of that presheaf recover
the dagger category we started from.
"""

from whitney.dagger import codiscrete_groupoid, roundtrip_check, validate_dagger, whitney_category_of
from whitney.stratgraph import circle

D = codiscrete_groupoid(["a", "b"])
print(validate_dagger(D).summary())

W = whitney_category_of(D)
# a loop is labelled by an object and an endomorphism of it
for labelling in W(circle(), 0):
    print(labelling)

print(roundtrip_check(D, bound=2).summary())
