"""Division, overlaps, and truncated completion on the built-in operads.

Run:  python demos/02_groebner_bases.py
"""

import math

from operadgb import builtins as B
from operadgb import (
    buchberger,
    format_element,
    format_tree,
    hilbert,
    is_groebner,
    leading_term,
    normal_monomials,
    reduce_element,
    s_polynomials,
)

print(__doc__)

# The odd partial-associative operad: completion discovers one extra
# relation in three generators, so the quadratic relations alone are not
# confluent for this ordering.
p = B.odd_assoc(1)
gb = buchberger(p, arity_bound=7)
print("odd-associative basis:")
for e in gb.elements:
    print("   lead", format_tree(leading_term(gb.order, e)[0]), "  :", format_element(e))

# Noncommutative Rota-Baxter: the two defining relations are already a
# basis; the operator relation overlaps itself exactly once and the
# six-term S-polynomial reduces to zero.
p = B.ncrb()
gb = buchberger(p, arity_bound=4, weight_bound=9)
ok, cert = is_groebner(gb)
print("\nncRB is a basis:", ok)
rb_rel = [e for e in gb.elements if e.arity == 2][0]
((scm, s),) = s_polynomials(rb_rel, rb_rel, gb.order, 4, 9, ns=True)
print("overlap:", format_tree(scm.multiple))
print("S-polynomial:", format_element(s))
print("reduces to:", format_element(reduce_element(s, gb)))

# Batalin-Vilkovisky: the commutative product, the odd square-zero
# operator and the third-order identity force exactly one extra element,
# and the quotient has dimensions 2^n n!.
p = B.bv()
gb = buchberger(p, arity_bound=4, weight_bound=8)
print("\nBV basis leading terms:")
for e in gb.elements:
    print("   ", format_tree(leading_term(gb.order, e)[0]))
for n in (1, 2, 3, 4):
    total = len(normal_monomials(gb, n))
    print(f"dim BV({n}) = {total}  (2^n n! = {2**n * math.factorial(n)})")

# Graded dimensions split by the number of odd letters:
print("\nBV(3) by degree:", hilbert(gb, 3)["character"])
