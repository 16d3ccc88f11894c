"""
Spectral labelings of the digit tree
====================================

Build a labeled tree, validate it, read off its frequency set and render it.
"""
import itertools

from cantor_spectra import (
    build_system,
    canonical_labeling,
    enumerate_labelings,
    expand,
    labeling_from_child_sets,
    lambda_of_labeling,
    validate_labeling,
)

s = build_system(2, 3, [0, 2, 4, 6])

# a hand-drawn labeling: only the listed vertices deviate from the default rule
drawn = labeling_from_child_sets(
    s,
    3,
    {
        (): (0, 2, 5, 7),
        (0,): (0, 3, 5, 6),
        (2,): (0, 1, 6, 7),
        (5,): (1, 2, 3, 4),
        (7,): (0, 1, 3, 6),
        (0, 5): (2, 4, 5, 7),
        (5, 2): (1, 4, 6, 7),
    },
)
print("valid:", validate_labeling(drawn))

# every stabilizing path spells out an integer
S = lambda_of_labeling(drawn)
print(len(S), "frequencies, e.g.")
for k in (0, 5, 296, 405):
    print(f"  {k:4d} {expand(k, s.N)}  in set: {k in S}")

# a broken sibling set is reported with its vertex
bad = labeling_from_child_sets(s, 2, {(2,): (0, 2, 4, 6)})
print("\nbroken tree:", validate_labeling(bad))

# how many labelings are there at small depth?
four = build_system(2, 2, [0, 2])
for depth in (1, 2, 3):
    print(f"N=4 depth {depth}: {sum(1 for _ in enumerate_labelings(four, depth))} labelings")
print("first three for N=8, depth 1:")
for tree in itertools.islice(enumerate_labelings(s, 1), 3):
    print("  root children", tree.child_sets()[()])

# DOT output renders with graphviz: dot -Tsvg tree.dot > tree.svg
print("\n" + canonical_labeling(four, 2).to_dot())
