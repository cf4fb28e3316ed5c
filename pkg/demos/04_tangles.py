"""
Tangles and maps to the circle
==============================

Cutting a map to the circle at one point leaves a signed point on the
source for each time the map passes the cut. Gluing back by collapse
inverts this, and both directions commute with pullback.
"""

from whitney.equiv import check_equivalence1, tangle_hypothesis_report
from whitney.models import circle_maps, collapse, pontrjagin_thom, pontrjagin_thom_functor
from whitney.stratgraph import interval

for a in circle_maps()(interval(), 2):
    T = pontrjagin_thom(a)
    assert collapse(T) == a
    print(a, "->", T)

print(check_equivalence1(pontrjagin_thom_functor(), 3).summary())

# small bounds keep this quick; the acceptance suite runs (3, 3, 2, 3)
print(tangle_hypothesis_report(2, 2, 1, 2).summary())
