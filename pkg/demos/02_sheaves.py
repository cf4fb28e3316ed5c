"""
Checking the sheaf condition
============================

A presheaf is a sheaf on a graph when compatible data on the pieces of a
cover glue in exactly one way. Here we glue maps to the circle over the
closure cover of a path of two edges, and then over a few pulled-back
covers.
"""

from whitney import chain, circle, closure_cover, pullback_battery, representable, sheaf_check

P = representable(circle())
X = chain(2)
C = closure_cover(X)
print(len(C), "pieces:", [str(p.source) for p in C.pieces])
print(sheaf_check(P, X, C, 2).summary())

for cover in pullback_battery([X, circle()], limit=4):
    print(sheaf_check(P, cover.base, cover, 2).summary())
