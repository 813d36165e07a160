"""Text grammar for polynomials and its canonical printer.

    poly    := ["-"] term (("+" | "-") term)*
    term    := factor ("*" factor)*
    factor  := uint | "g" ["^" uint] | ident ["^" uint]

``g`` is the extension generator of GF(p^e); integers are reduced mod p.
This accepts a superset of the documented ``coeff ("*" varpow)*`` form.
Printing is canonical: terms in descending graded-lex order, each nonzero
base-p digit of a coefficient on its own, so ``format_poly`` output always
re-parses to the identical polynomial.
"""

from __future__ import annotations

import re
from typing import Sequence

from .errors import ParseError
from .field import FieldElem, FieldSpec
from .poly import Polynomial, PolyRing, grlex_key

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """(kind, text, byte offset) triples; kind in {int, ident, op, end}."""
    tokens = []
    pos = 0
    raw = text.encode("utf-8")
    while pos < len(text):
        if text[pos:].isspace():
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        offset = len(text[:start].encode("utf-8"))
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), offset))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), offset))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^":
                raise ParseError("unexpected character", offset, ch)
            tokens.append(("op", ch, offset))
        pos = m.end()
    tokens.append(("end", "", len(raw)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.ring = ring
        self.field = ring.field
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_uint(self) -> int:
        kind, text, off = self.take()
        if kind != "int":
            raise ParseError("expected an unsigned integer exponent", off, text)
        return int(text)

    def poly(self) -> Polynomial:
        F = self.field
        acc: dict[tuple[int, ...], int] = {}
        sign = 1
        kind, text, off = self.peek()
        if kind == "end":
            raise ParseError("empty polynomial", off, text)
        if (kind, text) == ("op", "-"):
            self.take()
            sign = -1
        elif (kind, text) == ("op", "+"):
            self.take()
        while True:
            exps, code = self.term()
            if sign < 0:
                code = F.neg(code)
            acc[exps] = F.add(acc.get(exps, 0), code)
            kind, text, off = self.peek()
            if kind == "end":
                break
            if kind == "op" and text in "+-":
                self.take()
                sign = 1 if text == "+" else -1
                continue
            raise ParseError("expected '+', '-' or end of input", off, text)
        return Polynomial(self.ring, {k: v for k, v in acc.items() if v})

    def term(self) -> tuple[tuple[int, ...], int]:
        F = self.field
        exps = [0] * self.ring.nvars
        code = 1
        while True:
            kind, text, off = self.take()
            if kind == "int":
                code = F.mul(code, int(text) % F.p)
            elif kind == "ident" and text == "g":
                if F.e == 1:
                    raise ParseError(f"{F} has no extension generator", off, text)
                k = 1
                if self.peek()[:2] == ("op", "^"):
                    self.take()
                    k = self.expect_uint()
                code = F.mul(code, F.pow(F.p, k))
            elif kind == "ident":
                try:
                    idx = self.ring.index(text)
                except KeyError:
                    raise ParseError(f"unknown variable (ring has {list(self.ring.names)})",
                                     off, text) from None
                k = 1
                if self.peek()[:2] == ("op", "^"):
                    self.take()
                    k = self.expect_uint()
                exps[idx] += k
            else:
                raise ParseError("expected a coefficient or variable", off, text)
            if self.peek()[:2] == ("op", "*"):
                self.take()
                continue
            return tuple(exps), code


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    return _Parser(text, ring).poly()


def parse_constant(text: str, field: FieldSpec) -> FieldElem:
    f = parse_poly(text, PolyRing(field, ()))
    return f.constant_term()


def identifiers(text: str) -> list[str]:
    """Variable names in order of first appearance (``g`` excluded)."""
    seen: list[str] = []
    for kind, tok, _ in _tokenize(text):
        if kind == "ident" and tok != "g" and tok not in seen:
            seen.append(tok)
    return seen


def _coeff_factors(field: FieldSpec, code: int) -> list[list[str]]:
    """One factor list per nonzero base-p digit, highest power of g first."""
    out = []
    digits = field.digits(code)
    for i in reversed(range(field.e)):
        d = digits[i]
        if not d:
            continue
        parts = []
        if d != 1:
            parts.append(str(d))
        if i == 1:
            parts.append("g")
        elif i > 1:
            parts.append(f"g^{i}")
        out.append(parts)
    return out


def _monomial_factors(names: Sequence[str], exps: Sequence[int]) -> list[str]:
    out = []
    for name, e in zip(names, exps):
        if e == 1:
            out.append(name)
        elif e > 1:
            out.append(f"{name}^{e}")
    return out


def format_constant(field: FieldSpec, code: int) -> str:
    if code == 0:
        return "0"
    return " + ".join("*".join(parts) or "1" for parts in _coeff_factors(field, code))


def format_poly(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    pieces = []
    for exps in sorted(f.terms, key=grlex_key, reverse=True):
        mono = _monomial_factors(f.ring.names, exps)
        for parts in _coeff_factors(f.field, f.terms[exps]):
            pieces.append("*".join(parts + mono) or "1")
    return " + ".join(pieces)
