"""Machine-readable reports for the command line tools.

Reports are plain JSON-compatible dictionaries with deterministic key
order; rationals are rendered as strings so nothing is lost.  The same
dictionaries drive the human-readable table rendering.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .groebner import GroebnerBasis, CertificateEntry
from .orders import leading_term
from .parser import format_element_file
from .resolution import HomologyTable, ResolutionGenerator
from .trees import Element, format_tree


def frac(x) -> str:
    return str(Fraction(x))


def element_doc(e: Element) -> dict:
    return {
        "arity": e.arity,
        "terms": [
            {"monomial": format_tree(m), "coefficient": frac(c)}
            for m, c in sorted(e.terms.items(), key=lambda mc: format_tree(mc[0]))
        ],
        "pretty": format_element_file(e),
    }


def presentation_doc(p) -> dict:
    return {
        "name": p.name,
        "nonsymmetric": p.nonsymmetric,
        "generators": [
            {"name": g.name, "arity": g.arity, "deg": g.homdeg, "weight": g.weight}
            for g in p.generators
        ],
        "order": {
            "kind": p.order.kind,
            "precedence": list(p.order.precedence),
            "weights": dict(p.order.order_weights or {}),
        },
        "params": {k: frac(v) for k, v in sorted(p.params.items())},
        "relations": [element_doc(r) for r in p.relations],
    }


def gb_doc(gb: GroebnerBasis, certificate: list[CertificateEntry] | None = None) -> dict:
    doc = {
        "arity_bound": gb.arity_bound,
        "weight_bound": gb.weight_bound,
        "size": len(gb.elements),
        "elements": [
            {
                "leading": format_tree(leading_term(gb.order, e)[0]),
                "element": element_doc(e),
            }
            for e in gb.elements
        ],
    }
    if certificate is not None:
        doc["certificate"] = [
            {
                "pair": [c.i, c.j],
                "multiple": format_tree(c.scm.multiple),
                "overlap_u": sorted(c.scm.occ_u.vertices),
                "overlap_v": sorted(c.scm.occ_v.vertices),
                "reduces_to_zero": c.ok,
                **({} if c.ok else {"remainder": element_doc(c.remainder)}),
            }
            for c in certificate
        ]
        doc["is_groebner"] = all(c.ok for c in certificate)
    return doc


def hilbert_doc(tables: dict) -> dict:
    out = {}
    for n, h in sorted(tables.items()):
        out[str(n)] = {
            "total": h["total"],
            "by_degree": {str(d): c for d, c in sorted(h["character"].items())},
            "by_degree_weight": {
                f"{d},{w}": c for (d, w), c in sorted(h["by_homdeg_weight"].items())
            },
        }
    return out


def generators_doc(gens: list[ResolutionGenerator]) -> list:
    return [
        {
            "tree": format_tree(g.tree),
            "marks": list(g.marks),
            "degree": g.degree,
            "weight": g.weight,
        }
        for g in gens
    ]


def homology_doc(table: HomologyTable) -> dict:
    return {
        "dims": {f"{n},{d}": v for (n, d), v in table.rows()},
    }


def render_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_homology_text(table: HomologyTable) -> str:
    lines = ["arity  degree  dim"]
    for (n, d), v in table.rows():
        lines.append(f"{n:5d}  {d:6d}  {v:3d}")
    return "\n".join(lines)
