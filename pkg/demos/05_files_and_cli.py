"""Presentation files, the operad of a commutative algebra, and verdicts.

Run:  python demos/05_files_and_cli.py
"""

from operadgb import buchberger, normal_monomials, parse_presentation
from operadgb.algebra import algebra_to_operad
from operadgb.koszul import pbw_koszul_check
from operadgb.parser import format_presentation

print(__doc__)

text = """\
field Q
name demo
gen m 2
order path_lex m
rel m(m(1,2),3) - m(1,m(2,3))
rel m(m(1,3),2) - m(1,m(2,3))
"""
p = parse_presentation(text)
print("parsed presentation round-trips:",
      parse_presentation(format_presentation(p)) == p)

gb = buchberger(p, arity_bound=5)
print("dimensions of the commutative-associative quotient:",
      [len(normal_monomials(gb, n)) for n in (2, 3, 4, 5)])

# A graded commutative algebra with degree-one generators defines an
# operad whose arity-n part is the degree-(n-1) part of the algebra.
ops = algebra_to_operad(["x", "y"], [{(0, 1): 1}])  # k[x,y]/(xy)
gb2 = buchberger(ops, arity_bound=5)
print("k[x,y]/(xy) operad dims:", [len(normal_monomials(gb2, n)) for n in (2, 3, 4, 5)])
print("verdict:", pbw_koszul_check(ops, 5).verdict)

print("""
The same computations run from the command line, e.g.:

    operadgb gb --builtin ncrb --arity 4 --weight 9
    operadgb hilbert --builtin bv --arity 4 --weight 8
    operadgb homology --builtin ncrb --arity 5 --weight 9
    operadgb minmodel --builtin ncrb --arity 3 --weight 9
    operadgb check-pbw --builtin grav --arity 5
    operadgb from-algebra --gens x,y --rel 'x*y' --print-file

Every subcommand emits a deterministic JSON report (see --out).
""")
