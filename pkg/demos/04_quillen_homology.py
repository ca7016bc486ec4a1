"""Deforming the resolution: homology tables and minimal-model generators.

Run:  python demos/04_quillen_homology.py
"""

from operadgb import builtins as B
from operadgb import buchberger, format_tree
from operadgb.perturb import PerturbedComplex, expand_in_generators, quillen_homology

print(__doc__)

# The deformed differential returns whole relations where the plain one
# only saw their leading terms.  On the smallest operator generator it
# reads off the differential of the minimal model:
gb = buchberger(B.ncrb(), arity_bound=5, weight_bound=9)
pc = PerturbedComplex(gb)
(nu2,) = [g for g in pc.mc.resolution_generators(2, 4) if g.marks]
print("d(nu_2) =")
for c, expr in expand_in_generators(pc, pc.D((nu2.tree, nu2.marks))):
    print(f"   {str(c):>3s} * {expr}")

# Quillen homology: one class in each of two degrees per arity for the
# noncommutative Rota-Baxter operad.
table, _ = quillen_homology(gb, 5, 9)
print("\nncRB homology (arity, degree) -> dim:")
for (n, d), v in table.rows():
    print(f"   ({n}, {d}) -> {v}")

# For BV the table reproduces the bracket-operad character: in arity n the
# class count at degree n+k-3 is the coefficient of t^(1-k) in
# (2 + 1/t)(3 + 1/t)...(n-1 + 1/t), plus one unary class in each odd
# degree 2k-1.
gb_bv = buchberger(B.bv(), arity_bound=4, weight_bound=8)
for n, cap in ((1, 5), (2, 5), (3, 6), (4, 7)):
    t, _ = quillen_homology(gb_bv, n, cap, arities=[n])
    print(f"BV arity {n}:", {d: v for (a, d), v in t.rows()})
