"""Tree monomials, shuffle compositions, and where the signs come from.

Run:  python demos/01_trees_and_compositions.py
"""

from operadgb import (
    Element,
    Generator,
    ShuffleSurjection,
    canonical_form,
    compose,
    corolla,
    divisor_occurrences,
    enumerate_shuffle_surjections,
    format_element,
    format_tree,
    ns_compose,
    substitute,
)

M = Element.monomial

print(__doc__)

# Two binary operations; monomials of the free shuffle operad are planar
# trees with leaves labelled 1..n, children ordered by their smallest leaf.
c = Generator("c", 2)
b = Generator("b", 2)

tree = canonical_form(
    (c, [(b, [(c, [1, 3]), 5]), (c, [(b, [2, 7]), (c, [4, 6])])])
)
print("a 7-leaf monomial:", format_tree(tree))

# Shuffle surjections drive compositions: blocks partition the inputs with
# increasing minima.  Type (2,2) admits exactly three of them.
print("\nshuffle surjections of type (2,2):")
for phi in enumerate_shuffle_surjections([2, 2]):
    print("   ", phi.blocks)

# Divisors are connected subtrees, standardised by relabelling their leaves
# along smallest descendants.  The same monomial can occur in two places.
pattern = canonical_form((c, [(b, [1, 4]), (c, [2, 3])]))
occs = divisor_occurrences(tree, pattern)
print(f"\n{format_tree(pattern)} occurs {len(occs)} times inside the monomial above")

# Substituting the pattern itself back in is the identity.
for occ in occs:
    assert substitute(tree, occ, M(pattern)) == M(tree)

# Odd operations remember the order of their vertices.  For a ternary
# generator of odd degree, regrafting the same three corollas two ways
# produces opposite signs:
mu = Generator("mu", 3, homdeg=1)
Mm = M(corolla(mu))
lhs = ns_compose(ns_compose(Mm, 3, Mm), 1, Mm)
rhs = ns_compose(ns_compose(Mm, 1, Mm), 5, Mm)
print("\n(mu o3 mu) o1 mu =", format_element(lhs))
print("(mu o1 mu) o5 mu =", format_element(rhs))
assert lhs == rhs.scale(-1)
print("equal up to the Koszul sign, as they must be")
