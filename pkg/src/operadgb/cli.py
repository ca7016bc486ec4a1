"""Command line interface.

Subcommands mirror the library layers: ``gb`` (completion and
certificate), ``normal``/``hilbert`` (monomial bases and graded counts),
``resolve`` (free generators of the monomial resolution), ``homology``
(critical cells and exact ranks for monomial quotients, the deformed
differential in general), ``minmodel`` (generator tables with the induced
differential expanded in generator composites), ``check-pbw`` and
``from-algebra``.  Reports are deterministic JSON documents.
"""

from __future__ import annotations

import sys
from fractions import Fraction

import click

from . import builtins as builtin_mod
from . import reports
from .algebra import algebra_to_operad
from .groebner import buchberger, is_groebner, normal_monomials, hilbert
from .koszul import pbw_koszul_check, PBW_KOSZUL, NOT_QUADRATIC
from .morse import critical_cells, homology_oracle
from .parser import parse_presentation, format_presentation
from .perturb import PerturbedComplex, expand_in_generators, quillen_homology
from .resolution import MarkedComplex
from .trees import format_tree


def _load(builtin: str | None, file: str | None, params: tuple[str, ...],
          order_spec: str | None = None):
    kw = {}
    for spec in params:
        key, _, val = spec.partition("=")
        kw[key.strip()] = Fraction(val.strip())
    if builtin:
        fixed = {}
        if builtin in ("rb", "ncrb") and "lambda" in kw:
            fixed["lam"] = kw["lambda"]
        if builtin == "odd-assoc" and "k" in kw:
            fixed["k"] = int(kw["k"])
        if builtin == "grav" and "arity" in kw:
            fixed["max_arity"] = int(kw["arity"])
        p = builtin_mod.builtin(builtin, **fixed)
    elif file:
        with open(file, "r", encoding="utf-8") as fh:
            p = parse_presentation(fh.read())
    else:
        raise click.UsageError("pass --builtin NAME or --file PATH")
    if order_spec:
        p = _override_order(p, order_spec)
    return p


def _override_order(p, spec: str):
    """--order 'kind:g1>g2>...' replaces the presentation's order."""
    from .groebner import Presentation
    from .orders import KINDS, MonomialOrder

    kind, _, chain = spec.partition(":")
    kind = kind.strip()
    if kind not in KINDS:
        raise click.UsageError(f"order kind must be one of {KINDS}")
    prec = tuple(x.strip() for x in chain.split(">") if x.strip()) or tuple(
        g.name for g in p.generators
    )
    return Presentation(
        p.generators, p.relations, MonomialOrder(kind, prec), p.params,
        name=p.name, nonsymmetric=p.nonsymmetric,
    )


def _emit(doc: dict, out: str | None):
    text = reports.render_report(doc)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _common(f):
    f = click.option("--builtin", "builtin_name", default=None, help="built-in presentation")(f)
    f = click.option("--file", "file_path", default=None, help="presentation file")(f)
    f = click.option("--param", "params", multiple=True, help="name=value (exact rational)")(f)
    f = click.option("--order", "order_spec", default=None,
                     help="override order: 'kind:g1>g2>...'")(f)
    f = click.option("--arity", default=4, show_default=True, help="arity bound")(f)
    f = click.option("--weight", default=None, type=int, help="weight bound")(f)
    f = click.option("--out", default=None, help="write the JSON report here")(f)
    f = click.option("--seed", default=0, show_default=True, help="seed for sampled checks")(f)
    return f


@click.group()
def main():
    """Groebner bases, resolutions and homology for shuffle operads."""


@main.command()
@_common
def gb(builtin_name, file_path, params, order_spec, arity, weight, out, seed):
    """Complete the presentation and certify it."""
    p = _load(builtin_name, file_path, params, order_spec)
    basis = buchberger(p, arity, weight)
    ok, cert = is_groebner(basis)
    doc = {
        "subcommand": "gb",
        "presentation": reports.presentation_doc(p),
        "groebner": reports.gb_doc(basis, cert),
    }
    _emit(doc, out)
    sys.exit(0 if ok else 1)


@main.command()
@_common
@click.option("--per-arity-weight", default=None, type=int, help="cap for normal monomials")
def normal(builtin_name, file_path, params, order_spec, arity, weight, out, seed, per_arity_weight):
    """List normal monomials per arity."""
    p = _load(builtin_name, file_path, params, order_spec)
    basis = buchberger(p, arity, weight)
    doc = {"subcommand": "normal", "presentation": reports.presentation_doc(p), "normal": {}}
    for n in range(1, arity + 1):
        try:
            monos = normal_monomials(basis, n, per_arity_weight)
        except ValueError as ex:
            raise click.ClickException(str(ex)) from None
        doc["normal"][str(n)] = [format_tree(t) for t in monos]
    _emit(doc, out)


@main.command(name="hilbert")
@_common
@click.option("--per-arity-weight", default=None, type=int)
def hilbert_cmd(builtin_name, file_path, params, order_spec, arity, weight, out, seed, per_arity_weight):
    """Graded dimension tables of the quotient."""
    p = _load(builtin_name, file_path, params, order_spec)
    basis = buchberger(p, arity, weight)
    try:
        tables = {n: hilbert(basis, n, per_arity_weight) for n in range(1, arity + 1)}
    except ValueError as ex:
        raise click.ClickException(str(ex)) from None
    doc = {
        "subcommand": "hilbert",
        "presentation": reports.presentation_doc(p),
        "hilbert": reports.hilbert_doc(tables),
    }
    _emit(doc, out)


@main.command()
@_common
@click.option("--max-weight", default=None, type=int, help="generator weight cap")
def resolve(builtin_name, file_path, params, order_spec, arity, weight, out, seed, max_weight):
    """Free generators of the monomial resolution, by arity."""
    p = _load(builtin_name, file_path, params, order_spec)
    basis = buchberger(p, arity, weight)
    mc = MarkedComplex(basis.leading_terms(), p.generators, ns=p.nonsymmetric)
    doc = {"subcommand": "resolve", "presentation": reports.presentation_doc(p), "generators": {}}
    for n in range(1, arity + 1):
        cap = max_weight if max_weight is not None else 2 * n
        doc["generators"][str(n)] = reports.generators_doc(mc.resolution_generators(n, cap))
    _emit(doc, out)


@main.command()
@_common
@click.option("--max-weight", default=None, type=int)
@click.option("--monomial", is_flag=True, help="homology of the monomial replacement")
def homology(builtin_name, file_path, params, order_spec, arity, weight, out, seed, max_weight, monomial):
    """Quillen homology tables (critical cells + exact ranks)."""
    p = _load(builtin_name, file_path, params, order_spec)
    basis = buchberger(p, arity, weight)
    doc = {"subcommand": "homology", "presentation": reports.presentation_doc(p)}
    caps = {n: (max_weight if max_weight is not None else 2 * n) for n in range(1, arity + 1)}
    if monomial:
        dims = {}
        cells = {}
        for n in range(1, arity + 1):
            table = homology_oracle(
                basis.leading_terms(), p.generators, n, caps[n], ns=p.nonsymmetric
            )
            dims.update({f"{a},{d}": v for (a, d), v in table.rows()})
            mc = MarkedComplex(basis.leading_terms(), p.generators, ns=p.nonsymmetric)
            rep = critical_cells(mc, n, caps[n])
            cells[str(n)] = reports.generators_doc(rep.cells)
        doc["homology"] = {"dims": dims, "critical_cells": cells, "weight_caps": caps}
    else:
        table, _ = quillen_homology(basis, arity, max(caps.values()))
        doc["homology"] = {**reports.homology_doc(table), "weight_cap": max(caps.values())}
    _emit(doc, out)


@main.command()
@_common
@click.option("--max-weight", default=None, type=int)
def minmodel(builtin_name, file_path, params, order_spec, arity, weight, out, seed, max_weight):
    """Minimal-model generator table with induced differentials."""
    p = _load(builtin_name, file_path, params, order_spec)
    basis = buchberger(p, arity, weight)
    cap = max_weight if max_weight is not None else 2 * arity
    table, values = quillen_homology(basis, arity, cap)
    pc = PerturbedComplex(basis)
    doc = {
        "subcommand": "minmodel",
        "presentation": reports.presentation_doc(p),
        "generators": reports.homology_doc(table),
        "weight_cap": cap,
        "differentials": {},
    }
    for n in range(1, arity + 1):
        for g in pc.mc.resolution_generators(n, cap):
            val = pc.D((g.tree, g.marks))
            if not val:
                continue
            key = f"{format_tree(g.tree)};{len(g.marks)}"
            doc["differentials"][key] = [
                {"coefficient": reports.frac(c), "composite": expr}
                for c, expr in expand_in_generators(pc, val)
            ]
    _emit(doc, out)


@main.command(name="check-pbw")
@_common
def check_pbw(builtin_name, file_path, params, order_spec, arity, weight, out, seed):
    """Quadratic-basis Koszulness verdict."""
    p = _load(builtin_name, file_path, params, order_spec)
    rep = pbw_koszul_check(p, arity, weight)
    doc = {
        "subcommand": "check-pbw",
        "presentation": reports.presentation_doc(p),
        "verdict": rep.verdict,
    }
    if rep.witness is not None:
        doc["witness"] = reports.element_doc(rep.witness)
    if rep.diagonal:
        doc["diagonal"] = {f"{n},{d}": v for (n, d), v in sorted(rep.diagonal.items())}
    _emit(doc, out)
    sys.exit(0 if rep.verdict == PBW_KOSZUL or rep.verdict == NOT_QUADRATIC else 2)


@main.command(name="from-algebra")
@click.option("--gens", "gens_spec", required=True, help="comma-separated generator names")
@click.option("--rel", "alg_rels", multiple=True,
              help="algebra relation, e.g. 'x*x' or 'x*y - 2*y*y'")
@click.option("--out", default=None)
@click.option("--print-file", is_flag=True, help="print the presentation file")
def from_algebra(gens_spec, alg_rels, out, print_file):
    """Presentation of the operad attached to a commutative algebra."""
    names = [s.strip() for s in gens_spec.split(",") if s.strip()]
    index = {n: i for i, n in enumerate(names)}
    rels = []
    for spec in alg_rels:
        rels.append(_parse_algebra_relation(spec, index))
    p = algebra_to_operad(names, rels)
    if print_file:
        sys.stdout.write(format_presentation(p))
        return
    doc = {"subcommand": "from-algebra", "presentation": reports.presentation_doc(p)}
    _emit(doc, out)


def _parse_algebra_relation(spec: str, index: dict) -> dict:
    import re

    out: dict = {}
    for sign, chunk in re.findall(r"([+-]?)\s*([^+-]+)", spec):
        chunk = chunk.strip()
        if not chunk:
            continue
        coeff = Fraction(-1 if sign == "-" else 1)
        factors = []
        for factor in chunk.split("*"):
            factor = factor.strip()
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coeff *= Fraction(factor)
            else:
                m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?", factor)
                if not m or m.group(1) not in index:
                    raise click.UsageError(f"bad factor {factor!r} in {spec!r}")
                factors.extend([index[m.group(1)]] * int(m.group(2) or 1))
        word = tuple(sorted(factors))
        out[word] = out.get(word, Fraction(0)) + coeff
    return {w: c for w, c in out.items() if c}


if __name__ == "__main__":
    main()
