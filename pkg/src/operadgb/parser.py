"""Line-oriented presentation files.

Example::

    # noncommutative Rota-Baxter
    field Q
    name ncrb
    nonsymmetric
    param lambda = 1
    gen mul 2
    gen P 1 deg=0 weight=1
    order path_lex P > mul
    rel mul(mul(1,2),3) - mul(1,mul(2,3))
    rel P(mul(P(1),2)) + P(mul(1,P(2))) + lambda*P(mul(1,2)) - mul(P(1),P(2))

Relations are prefix applications of generator names with integer leaves;
leaf labels must use 1..n exactly once per monomial.  Monomials are
canonicalised on input and any reordering sign is folded into the
coefficient.  Coefficients are exact rationals, optionally multiplied by a
declared parameter.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .groebner import Presentation
from .orders import KINDS, MonomialOrder
from .trees import Element, Generator, canonical_form_signed, format_tree


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int = 0):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+/\d+|\d+|[(),*+\-])")


def _tokenize(text: str, line_no: int):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", line_no, pos + 1)
            break
        out.append((m.group(1), m.start(1) + 1))
        pos = m.end()
    return out


class _ExprParser:
    def __init__(self, tokens, line_no, gens: dict, params: dict):
        self.toks = tokens
        self.i = 0
        self.line = line_no
        self.gens = gens
        self.params = params

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def next(self):
        if self.i >= len(self.toks):
            raise ParseError("unexpected end of relation", self.line)
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, want):
        tok, col = self.next()
        if tok != want:
            raise ParseError(f"expected {want!r}, got {tok!r}", self.line, col)

    def parse_element(self) -> Element:
        terms = []
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.next()[0] == "-" else 1
        terms.append(self.parse_term(sign))
        while self.peek() in ("+", "-"):
            sign = -1 if self.next()[0] == "-" else 1
            terms.append(self.parse_term(sign))
        if self.i != len(self.toks):
            tok, col = self.toks[self.i]
            raise ParseError(f"trailing input {tok!r}", self.line, col)
        total = terms[0]
        for t in terms[1:]:
            if t.arity != total.arity:
                raise ParseError("monomials of different arities in one relation", self.line)
            total = total + t
        return total

    def parse_term(self, sign: int) -> Element:
        coeff = Fraction(sign)
        while True:
            tok = self.peek()
            if tok is None:
                raise ParseError("missing monomial", self.line)
            if re.fullmatch(r"\d+(/\d+)?", tok):
                coeff *= Fraction(self.next()[0])
                self.expect("*")
                continue
            if tok in self.params:
                coeff *= self.params[tok]
                self.next()
                self.expect("*")
                continue
            break
        raw, col = self.parse_application()
        leaves = sorted(self._leaves(raw))
        if leaves != list(range(1, len(leaves) + 1)):
            raise ParseError(
                f"leaf labels must be 1..n exactly once, got {leaves}", self.line, col
            )
        try:
            mono, csign = canonical_form_signed(raw)
        except ValueError as ex:
            raise ParseError(str(ex), self.line, col) from None
        return Element.monomial(mono, coeff * csign)

    def parse_application(self):
        tok, col = self.next()
        if tok.isdigit():
            return int(tok), col
        gen = self.gens.get(tok)
        if gen is None:
            raise ParseError(f"unknown generator {tok!r}", self.line, col)
        self.expect("(")
        args = []
        while True:
            sub, _ = self.parse_application()
            args.append(sub)
            nxt, ncol = self.next()
            if nxt == ")":
                break
            if nxt != ",":
                raise ParseError(f"expected ',' or ')', got {nxt!r}", self.line, ncol)
        if len(args) != gen.arity:
            raise ParseError(
                f"generator {gen.name!r} has arity {gen.arity}, got {len(args)} arguments",
                self.line,
                col,
            )
        return (gen, [a if isinstance(a, int) else a for a in args]), col

    @staticmethod
    def _leaves(raw):
        if isinstance(raw, int):
            return [raw]
        out = []
        for c in raw[1]:
            out.extend(_ExprParser._leaves(c))
        return out


def parse_presentation(text: str) -> Presentation:
    gens: dict[str, Generator] = {}
    gen_list: list[Generator] = []
    params: dict[str, Fraction] = {}
    order: MonomialOrder | None = None
    rel_lines: list[tuple[int, list]] = []
    name = ""
    nonsymmetric = False

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "field":
            if rest not in ("Q", "QQ"):
                raise ParseError(f"only the rational field is supported, got {rest!r}", line_no)
        elif head == "name":
            name = rest
        elif head == "nonsymmetric":
            nonsymmetric = True
        elif head == "param":
            m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(-?\d+(?:/\d+)?)", rest)
            if not m:
                raise ParseError("expected 'param name = rational'", line_no)
            params[m.group(1)] = Fraction(m.group(2))
        elif head == "gen":
            m = re.fullmatch(
                r"([A-Za-z_][A-Za-z_0-9]*)\s+(\d+)((?:\s+(?:deg|weight)=-?\d+)*)", rest
            )
            if not m:
                raise ParseError("expected 'gen name arity [deg=d] [weight=w]'", line_no)
            gname, ar = m.group(1), int(m.group(2))
            deg, weight = 0, 1
            for opt in re.findall(r"(deg|weight)=(-?\d+)", m.group(3) or ""):
                if opt[0] == "deg":
                    deg = int(opt[1])
                else:
                    weight = int(opt[1])
            if gname in gens:
                raise ParseError(f"duplicate generator {gname!r}", line_no)
            g = Generator(gname, ar, deg, weight)
            gens[gname] = g
            gen_list.append(g)
        elif head == "order":
            bits = rest.split()
            if not bits or bits[0] not in KINDS:
                raise ParseError(f"order kind must be one of {KINDS}", line_no)
            kind = bits[0]
            chain = " ".join(bits[1:])
            weights = None
            if "weights" in chain:
                chain, _, wpart = chain.partition("weights")
                weights = {}
                for m in re.finditer(r"([A-Za-z_][A-Za-z_0-9]*)=(-?\d+)", wpart):
                    weights[m.group(1)] = int(m.group(2))
            prec = tuple(x.strip() for x in chain.split(">") if x.strip())
            order = MonomialOrder(kind, prec, weights)
        elif head == "rel":
            rel_lines.append((line_no, _tokenize(rest, line_no)))
        else:
            raise ParseError(f"unknown declaration {head!r}", line_no)

    if order is None:
        order = MonomialOrder("path_lex", tuple(g.name for g in gen_list))
    relations = []
    for line_no, toks in rel_lines:
        ep = _ExprParser(toks, line_no, gens, params)
        e = ep.parse_element()
        if e.is_zero():
            raise ParseError("relation is zero after canonicalisation", line_no)
        try:
            e.check_homogeneous(weights=False)
        except ValueError as ex:
            raise ParseError(str(ex), line_no) from None
        relations.append(e)
    return Presentation(
        tuple(gen_list), tuple(relations), order, params, name=name, nonsymmetric=nonsymmetric
    )


def format_element_file(e: Element) -> str:
    bits = []
    for mono, c in sorted(e.terms.items(), key=lambda mc: format_tree(mc[0])):
        body = format_tree(mono)
        if c == 1:
            frag = body
        elif c == -1:
            frag = f"- {body}"
            bits.append(frag)
            continue
        else:
            frag = f"{'-' if c < 0 else ''}{abs(c)}*{body}"
            if c < 0:
                bits.append(f"- {abs(c)}*{body}")
                continue
        bits.append(frag)
    out = ""
    for i, frag in enumerate(bits):
        if frag.startswith("- "):
            out += (" " if out else "") + frag
        else:
            out += (" + " if out else "") + frag
    return out


def format_presentation(p: Presentation) -> str:
    lines = ["field Q"]
    if p.name:
        lines.append(f"name {p.name}")
    if p.nonsymmetric:
        lines.append("nonsymmetric")
    for k, v in sorted(p.params.items()):
        lines.append(f"param {k} = {v}")
    for g in p.generators:
        opts = ""
        if g.homdeg:
            opts += f" deg={g.homdeg}"
        if g.weight != 1:
            opts += f" weight={g.weight}"
        lines.append(f"gen {g.name} {g.arity}{opts}")
    o = p.order
    line = f"order {o.kind} {' > '.join(o.precedence)}"
    if o.order_weights:
        line += " weights " + " ".join(f"{k}={v}" for k, v in sorted(o.order_weights.items()))
    lines.append(line)
    for r in p.relations:
        lines.append(f"rel {format_element_file(r)}")
    return "\n".join(lines) + "\n"
