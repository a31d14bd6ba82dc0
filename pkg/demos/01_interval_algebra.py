"""
Sets of probabilities
=====================

Probabilities here are sets: finite unions of closed subintervals of [0, 1]
with exact rational endpoints.
"""

from subprob.intervals import interval, one_minus, parse_set, point, union, intersect, convex_hull

# a point and an interval, joined into one set
V = union(point("1/4"), interval("0.6", "0.7"))
print("V         =", V)

# overlapping pieces merge
print("merged    =", union(interval("0.2", "0.5"), interval("0.4", "0.9")))

# reflection x -> 1 - x, used for the inverse experiment
print("1 - V     =", one_minus(V))
print("1 - (1-V) =", one_minus(one_minus(V)))

# the text format reads back to the same set
W = parse_set("{1/4} u [3/5, 7/10]")
print("parsed == V:", W == V)

print("V & [0.5, 1] =", intersect(V, interval("0.5", 1)))
print("hull of V    =", convex_hull(V))
