"""
Maps from graphs to the circle
==============================

A map between graphs sends vertices to vertices and each edge to a word of
edge traversals. Words are never reduced: going round and straight back
(e then e~) is a different map from standing still.
"""

from whitney import circle, chain, compose, enumerate_homs, interval, pinch
from whitney.morphism import PMorphism, word_from_str

# every map from the interval to the circle with words of length <= 2
for f in enumerate_homs(interval(), circle(), 2):
    print(f)

# composition substitutes words letter by letter
there_and_back = PMorphism(chain(2), circle(), {"0": "v", "1": "v", "2": "v"},
                           {"e1": word_from_str("e"), "e2": word_from_str("e~")})
print(compose(there_and_back, pinch(2)))
