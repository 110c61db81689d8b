"""
Group models, word lengths, and ball enumeration
================================================

Three built-in families: free groups on reduced words, free-abelian
lattices, and cyclic groups.  Every element has a unique normal form, a
word length, and a place in a canonical ball ordering (shorter first,
lexicographic within a length).
"""

from rdmap import CyclicGroup, FreeAbelianGroup, FreeGroup

# Free group on two generators: elements are reduced words, uppercase
# letters are inverses, and products cancel automatically.
F2 = FreeGroup(2)
print("free(2) identity:", repr(F2.identity()))
print('"ab" * "Ba" =', repr(F2.multiply("ab", "Ba")))
print('inverse("ab") =', repr(F2.inverse("ab")))
print('length("aBa") =', F2.length("aBa"))

# The ball of radius 1 fixes the generator order used everywhere else.
print("ball(1):", F2.ball(1))

# Ball sizes grow exponentially; the closed form lets us ask for sizes
# far beyond what we would ever enumerate.
for n in range(7):
    print(f"  |ball({n})| = {F2.ball_size(n)}")
print("  |ball(40)| =", F2.ball_size(40), "(closed form only)")

# The lattice Z^2 under the taxicab length.
Z2 = FreeAbelianGroup(2)
print("\nfree-abelian(2): (1,2) + (3,-1) =", Z2.multiply((1, 2), (3, -1)))
print("length((3,-4)) =", Z2.length((3, -4)))
print("ball(1):", Z2.ball(1))

# Cyclic group of order 5: going around the short way defines the length.
C5 = CyclicGroup(5)
print("\ncyclic(5) lengths:", {x: C5.length(x) for x in range(5)})
print("ball(2) reaches everything:", C5.ball(2))

# Enumeration is capped to keep exponential families honest; asking for a
# huge free-group ball raises instead of silently truncating.
try:
    F2.ball(12)
except Exception as exc:
    print("\nball(12) refused:", exc)
