"""Canonical text rendering and parsing of coefficients, tensors and wedges.

Grammar (whitespace is free between tokens)::

    expr    := term (('+' | '-') term)*
    term    := ['-'] [coeff '*'] body
    coeff   := integer | [integer ['*']] 'q' ['^' int] | '(' laurent ')'
    body    := '(' chain ')' | chain
    chain   := 'vac(' int ')' | factor (sep factor)* [tail]
    sep     := '^' (wedge) | '(x)' (tensor)
    tail    := '|' 'vac(' int ')' | sep '...'
    factor  := 'v' int | 'v[' int ']' | 'z' ['^' int] '*' 'v[' int ']'

``v<m>`` is a flat index.  ``z^j*v[i]`` needs a rank and means flat i - n j.
A trailing ``...`` continues the last factor downwards by one at a time, and
``vac(t)`` is the vacuum tail starting at flat t.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeff import LaurentQ, ONE, parse_laurent
from .errors import LetterOutOfRange, ParseError
from .fock import Basis, TensorVector, _Acc

WEDGE, TENSOR = "wedge", "tensor"
FORMATS = ("text", "structured", "z-form")

# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------


def format_factor(basis: Basis, m: int, zform: bool = False) -> str:
    if not zform or basis.n is None:
        return f"v{m}"
    letter, e = basis.unflatten(m)
    if e == 0:
        return f"v[{letter}]"
    if e == 1:
        return f"z*v[{letter}]"
    return f"z^{e}*v[{letter}]"


def _chain(basis, prefix, tail, sep, fmt, tail_slots=2):
    zform = fmt == "z-form"
    if tail is None:
        return sep.join(format_factor(basis, m, zform) for m in prefix)
    if fmt == "text":
        vals = tuple(prefix) + tuple(tail - k for k in range(tail_slots))
        return sep.join(format_factor(basis, m) for m in vals) + sep + "..."
    head = sep.join(format_factor(basis, m, zform) for m in prefix)
    return f"{head} | vac({tail})" if head else f"vac({tail})"


def format_tensor_key(key: tuple, tail=None, basis: Basis = Basis(None), fmt: str = "z-form") -> str:
    return _chain(basis, key, tail, " (x) ", fmt)


def format_wedge_term(w, basis: Basis = Basis(None), fmt: str = "text") -> str:
    return _chain(basis, w.prefix, w.tail, " ^ ", fmt)


def format_coeff(c: LaurentQ) -> str:
    s = str(c)
    return f"({s})" if len(c.terms) > 1 else s


def _combine(rendered: list) -> str:
    """Join (coefficient, body, single) triples as a signed sum."""
    if not rendered:
        return "0"
    parts = []
    for k, (c, body) in enumerate(rendered):
        body = body if len(rendered) == 1 and c == ONE else f"({body})"
        if c.is_monomial():
            (e, v), = c.items()
            sign = "-" if v < 0 else "+"
            mag = LaurentQ.monomial(e, abs(v))
            text = body if mag == ONE else f"{mag} * {body}"
        else:
            sign = "+"
            text = f"({c}) * {body}"
        if k == 0:
            parts.append(("-" + text) if sign == "-" else text)
        else:
            parts.append(f" {sign} {text}")
    return "".join(parts)


def _record(kind, c, prefix, tail) -> str:
    # one tab-separated line: kind, coefficient, comma-separated prefix, tail ("-" if finite)
    return f"{kind}\t{c}\t{','.join(map(str, prefix))}\t{'-' if tail is None else tail}"


def _parse_records(text: str) -> list:
    out = []
    offset = 0
    for line in text.splitlines(keepends=True):
        fields = line.rstrip("\n").split("\t")
        if fields == ["zero"] or not line.strip():
            offset += len(line)
            continue
        if len(fields) != 4 or fields[0] not in (WEDGE, TENSOR):
            raise ParseError("malformed structured record", offset)
        kind, c, csv, tail = fields
        try:
            coeff = parse_laurent(c)
            prefix = tuple(int(v) for v in csv.split(",")) if csv else ()
            t = None if tail == "-" else int(tail)
        except ValueError:
            raise ParseError("malformed structured record", offset) from None
        out.append(ParsedTerm(coeff, kind, prefix, t))
        offset += len(line)
    return out


def format_wedge_vector(v, fmt: str = "text") -> str:
    if fmt == "structured":
        lines = [_record("wedge", c, w.prefix, w.tail) for w, c in v.sorted_terms()]
        return "\n".join(lines) if lines else "zero"
    return _combine([(c, format_wedge_term(w, v.basis, fmt)) for w, c in v.sorted_terms()])


def format_tensor_vector(x: TensorVector, fmt: str = "z-form") -> str:
    items = sorted(x.items(), reverse=True)
    if fmt == "structured":
        lines = [_record("tensor", c, k, x.tail) for k, c in items]
        return "\n".join(lines) if lines else "zero"
    return _combine([(c, format_tensor_key(k, x.tail, x.basis, fmt)) for k, c in items])


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

@dataclass
class ParsedTerm:
    coeff: LaurentQ
    kind: str
    prefix: tuple
    tail: int | None


class _Parser:
    def __init__(self, text: str, basis: Basis):
        self.s = text
        self.p = 0
        self.basis = basis

    # -- low level ----------------------------------------------------------
    def ws(self):
        while self.p < len(self.s) and self.s[self.p].isspace():
            self.p += 1

    def peek(self, tok: str) -> bool:
        self.ws()
        return self.s.startswith(tok, self.p)

    def eat(self, tok: str) -> bool:
        if self.peek(tok):
            self.p += len(tok)
            return True
        return False

    def expect(self, tok: str):
        if not self.eat(tok):
            self.fail(f"expected {tok!r}")

    def fail(self, msg):
        raise ParseError(msg, self.p)

    def integer(self) -> int:
        self.ws()
        start = self.p
        if self.p < len(self.s) and self.s[self.p] in "+-":
            self.p += 1
        digits = self.p
        while self.p < len(self.s) and self.s[self.p].isdigit():
            self.p += 1
        if self.p == digits:
            self.p = start
            self.fail("expected an integer")
        return int(self.s[start:self.p])

    def at_end(self) -> bool:
        self.ws()
        return self.p >= len(self.s)

    # -- grammar ------------------------------------------------------------
    def expr(self) -> list:
        terms = [self.term(self.eat("-"))]
        while not self.at_end():
            if self.eat("+"):
                terms.append(self.term(False))
            elif self.eat("-"):
                terms.append(self.term(True))
            else:
                self.fail("expected '+', '-' or end of input")
        return terms

    def term(self, negative: bool) -> ParsedTerm:
        c = self.coeff()
        if negative:
            c = -c
        kind, prefix, tail = self.body()
        return ParsedTerm(c, kind, prefix, tail)

    def coeff(self) -> LaurentQ:
        self.ws()
        start = self.p
        if self.peek("("):
            depth, k = 0, self.p
            while k < len(self.s):
                depth += {"(": 1, ")": -1}.get(self.s[k], 0)
                if depth == 0:
                    break
                k += 1
            rest = self.s[k + 1:].lstrip()
            inner = self.s[self.p + 1:k]
            if k < len(self.s) and rest.startswith("*") and "v" not in inner and "vac" not in inner:
                try:
                    c = parse_laurent(inner)
                except (ValueError, ParseError):
                    self.fail("malformed coefficient")
                self.p = k + 1
                self.expect("*")
                return c
            return ONE
        k = self.p
        while k < len(self.s) and self.s[k].isdigit():
            k += 1
        num = int(self.s[self.p:k]) if k > self.p else None
        j = k
        while j < len(self.s) and self.s[j].isspace():
            j += 1
        if j < len(self.s) and self.s[j] == "*":
            j2 = j + 1
            while j2 < len(self.s) and self.s[j2].isspace():
                j2 += 1
            if j2 < len(self.s) and self.s[j2] == "q":
                j = j2
        if j < len(self.s) and self.s[j] == "q":
            self.p = j + 1
            e = 1
            if self.eat("^"):
                e = self.integer()
            self.expect("*")
            return LaurentQ.monomial(e, 1 if num is None else num)
        if num is not None:
            self.p = k
            self.expect("*")
            return LaurentQ.const(num)
        self.p = start
        return ONE

    def body(self):
        if self.eat("("):
            out = self.chain()
            self.expect(")")
            return out
        return self.chain()

    def chain(self):
        if self.peek("vac("):
            self.p += 4
            t = self.integer()
            self.expect(")")
            return WEDGE, (), t
        factors = [self.factor()]
        kind = None
        tail = None
        while True:
            if self.peek("(x)"):
                sep, k2 = "(x)", TENSOR
            elif self.peek("^"):
                sep, k2 = "^", WEDGE
            else:
                break
            if kind is not None and kind != k2:
                self.fail("mixed '^' and '(x)' separators")
            kind = k2
            self.p += len(sep)
            if self.eat("..."):
                tail = factors[-1] - 1
                break
            factors.append(self.factor())
        if tail is None and self.eat("|"):
            if not self.eat("vac("):
                self.fail("expected 'vac('")
            tail = self.integer()
            self.expect(")")
        return kind or WEDGE, tuple(factors), tail

    def factor(self) -> int:
        self.ws()
        at = self.p
        if self.eat("z"):
            e = self.integer() if self.eat("^") else 1
            self.expect("*")
            if not self.eat("v["):
                self.fail("expected 'v[' after the z-power")
            return self.letter(e, at)
        if self.eat("v["):
            return self.letter(0, at)
        if self.eat("v"):
            return self.integer()
        self.fail("expected a factor")

    def letter(self, e: int, at: int) -> int:
        i = self.integer()
        self.expect("]")
        if self.basis.n is None:
            if e:
                raise ParseError("z-powers need a rank (--n)", at)
            return i
        try:
            return self.basis.flatten(i, e)
        except LetterOutOfRange as exc:
            raise ParseError(str(exc), at) from None


def parse_terms(text: str, basis: Basis = Basis(None)) -> list[ParsedTerm]:
    head = text.lstrip()
    if head.startswith((WEDGE + "\t", TENSOR + "\t")) or head.rstrip() == "zero":
        return _parse_records(text)
    p = _Parser(text, basis)
    if p.at_end():
        raise ParseError("empty expression", p.p)
    if p.eat("0") and p.at_end():
        return []
    p.p = 0
    return p.expr()


def _common_shape(terms):
    tails = {t.tail is None for t in terms}
    if len(tails) > 1:
        raise ParseError("cannot mix finite and semi-infinite terms", 0)
    if terms[0].tail is None:
        lengths = {len(t.prefix) for t in terms}
        if len(lengths) > 1:
            raise ParseError("finite terms of different lengths", 0)
        return lengths.pop(), None
    charges = {t.tail + len(t.prefix) for t in terms}
    if len(charges) > 1:
        raise ParseError("terms with different charges", 0)
    depth = max(len(t.prefix) for t in terms)
    return depth, charges.pop() - depth


def parse_tensor_vector(text: str, basis: Basis = Basis(None), depth: int | None = None) -> TensorVector:
    """Parse an expression as a tensor vector (wedge separators are read as (x))."""
    terms = parse_terms(text, basis)
    if not terms:
        raise ParseError("zero has no tensor shape", 0)
    d, tail = _common_shape(terms)
    acc = _Acc()
    for t in terms:
        x = TensorVector(basis, len(t.prefix), t.tail, {t.prefix: t.coeff})
        if t.tail is not None:
            x = x.truncate(d)
        for k, c in x.items():
            acc.add(k, c)
    out = TensorVector._raw(basis, d, tail, acc.result())
    if depth is not None and tail is not None and depth > d:
        out = out.truncate(depth)
    return out


def parse_wedge_vector(text: str, basis: Basis = Basis(None)):
    """Parse and straighten: every term denotes the q-wedge of its factors in order."""
    from .wedge import WedgeVector, straighten_tensor
    total = WedgeVector(basis)
    for t in parse_terms(text, basis):
        total = total + straighten_tensor(basis, t.prefix, t.tail).scale(t.coeff)
    return total


def parse_partition(text: str) -> tuple:
    p = _Parser(text, Basis(None))
    p.expect("[")
    parts = []
    if not p.eat("]"):
        parts.append(p.integer())
        while p.eat(","):
            parts.append(p.integer())
        p.expect("]")
    if not p.at_end():
        p.fail("trailing input after partition")
    return tuple(parts)


def format_partition(parts) -> str:
    return "[" + ",".join(str(x) for x in parts) + "]"


def parse_generator(text: str):
    """``e[i] f[i] k[i]`` (sl_infinity), ``E[i] F[i] K[i] Kinv[i]``, graded ``E[i;d] F[i;d] H[i;d]``."""
    from .uqaction import Generator
    p = _Parser(text, Basis(None))
    p.ws()
    names = ("Kinv", "kinv", "E", "F", "K", "H", "e", "f", "k", "h")
    for name in names:
        if p.s.startswith(name + "[", p.p):
            p.p += len(name) + 1
            break
    else:
        p.fail("expected a generator name")
    i = p.integer()
    d = p.integer() if p.eat(";") else None
    p.expect("]")
    if not p.at_end():
        p.fail("trailing input after generator")
    kind = name[0].upper() + name[1:]
    if d is not None and kind not in ("E", "F", "H"):
        raise ParseError("only E, F and H have graded pieces", 0)
    return Generator(kind, i, d, sl_inf=name[0].islower())
