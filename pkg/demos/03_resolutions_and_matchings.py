"""Marked-tree resolutions of monomial quotients and their critical cells.

Run:  python demos/03_resolutions_and_matchings.py
"""

from operadgb import builtins as B
from operadgb import buchberger, format_tree
from operadgb.morse import build_matching, critical_cells, homology_oracle, matching_is_acyclic
from operadgb.resolution import MarkedComplex

print(__doc__)

# Replace the Rota-Baxter operad by its leading terms.  The resolution of
# the monomial quotient is spanned by trees with marked occurrences of the
# leading terms; free generators are the fully covered ("indecomposable")
# marked trees.
p = B.ncrb()
gb = buchberger(p, arity_bound=4, weight_bound=9)
mc = MarkedComplex(gb.leading_terms(), p.generators, ns=True)

print("free generators in arity 3 (weight cap 6):")
for g in mc.resolution_generators(3, 6):
    tag = f"deg {g.degree}, {len(g.marks)} marks" if g.marks else "corolla"
    print(f"   {format_tree(g.tree):32s} {tag}")

# Every divisible tree spans an acyclic stratum (the complex of a simplex);
# the quotient survives in degree zero.
trees = mc.tree_strata(3, 6)
divisible = [t for t in trees if mc.divisors(t)]
assert all(mc.tree_complex_acyclic(t) for t in divisible)
print(f"\nall {len(divisible)} divisible strata in arity 3 are acyclic")

# A staircase numbering of the divisors yields a matching whose critical
# cells carry the homology; the exact-rank tables agree.
tower = [t for t in trees if format_tree(t) == "P(mul(P(mul(P(1),2)),3))"][0]
m = build_matching(mc, tower)
assert matching_is_acyclic(mc, m)
print("matching on the operator tower:", len(m.edges), "edges,",
      len(m.critical), "critical cell(s)")

for n in (2, 3, 4):
    rep = critical_cells(mc, n, 2 * n)
    oracle = homology_oracle(gb.leading_terms(), p.generators, n, 2 * n, ns=True)
    counts = {}
    for c in rep.cells:
        counts[c.degree] = counts.get(c.degree, 0) + 1
    print(f"arity {n}: critical cells by degree {counts} == ranks {dict((d, v) for (a, d), v in oracle.rows())}")
