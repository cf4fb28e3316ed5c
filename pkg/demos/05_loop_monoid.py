"""
The loop monoid
===============

Values on the circle multiply by gluing two loops onto a figure eight and
pulling back along the map that runs round both lobes. For tangles this
is concatenation of sign words, and reflecting the circle reverses a word
and flips its signs.
"""

from whitney.models import tang01
from whitney.presheaf import omega1

M = omega1(tang01(), 2)
for a in M.carrier:
    print(f"{a.word('e') or '()':>3}  reflected {M.involution(a).word('e') or '()':>3}")

plus, minus = M.carrier[1], M.carrier[2]
print(M.op(plus, minus).word("e"), M.op(minus, plus).word("e"))
