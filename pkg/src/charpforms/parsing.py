"""Text syntax for towers, series rings, extensions and expressions.

Towers::

    GF(4)((t))             Frac GF(3)[b1,b2]((t))((s)) P=24

Series rings (the last bracket group ends with the distinguished variable)::

    GF(5)[[u]][[X,T]] D=12

Extensions, applied in order over a tower::

    etale x: x^2 + x + w        radicial a: b      (a^p = b)

Expressions: integers, generator names, ``+ - * /``, parentheses,
``dlog(...)``, ``O(t^N)``, and ``^``.  ``x ^ n`` with a signed integer literal
n is a power (unless x is a form); otherwise ``^`` is the wedge product.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .extensions import ExtensionField, etale_extension, radicial_extension
from .forms import DifferentialForm, as_form, dlog
from .series import SeriesRing, TruncatedSeries
from .tower import FieldElement, FieldTower, FiniteField, RationalFunctions, make_tower

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"

_TOWER_RE = re.compile(
    rf"""^\s*(?:GF\((?P<q>\d+)\)|Frac\s*GF\((?P<p>\d+)\)\s*\[(?P<vars>[^\]]*)\])
        (?P<layers>(?:\s*\(\(\s*{_NAME}\s*\)\))*)
        (?:\s+P\s*=\s*(?P<prec>\d+))?\s*$""", re.X)

_RING_RE = re.compile(
    rf"""^\s*GF\((?P<q>\d+)\)(?P<groups>(?:\s*\[\[[^\]]*\]\])+)\s*(?:D\s*=\s*(?P<D>\d+))?\s*$""", re.X)


def _names(text: str, what: str) -> list[str]:
    names = [v.strip() for v in text.split(",")]
    for v in names:
        if not re.fullmatch(_NAME, v):
            raise ParseError(f"bad {what} name {v!r}")
    return names


def parse_tower(text: str, default_precision: int | None = None) -> FieldTower:
    m = _TOWER_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse tower {text!r}; expected e.g. 'GF(4)((t))' or 'Frac GF(2)[b]'")
    layers = re.findall(rf"\(\(\s*({_NAME})\s*\)\)", m.group("layers"))
    if default_precision is not None:
        prec = default_precision
    else:
        prec = int(m.group("prec")) if m.group("prec") else 16
    try:
        if m.group("q"):
            q = int(m.group("q"))
            from .finite_field import prime_power
            p, _ = prime_power(q)
            return make_tower(p, FiniteField(q), layers, prec)
        p = int(m.group("p"))
        return make_tower(p, RationalFunctions(tuple(_names(m.group("vars"), "variable"))), layers, prec)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_tower(tower: FieldTower) -> str:
    return str(tower)


def parse_ring(text: str, default_D: int = 12) -> SeriesRing:
    m = _RING_RE.match(text)
    if not m:
        raise ParseError(f"cannot parse series ring {text!r}; expected e.g. 'GF(5)[[u]][[X,T]] D=12'")
    groups = [_names(g, "variable") for g in re.findall(r"\[\[([^\]]*)\]\]", m.group("groups"))]
    D = int(m.group("D")) if m.group("D") else default_D
    coeff = [v for g in groups[:-1] for v in g]
    names = coeff + groups[-1]
    try:
        return SeriesRing.over(int(m.group("q")), names, D, n_coeff=len(coeff))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_extension(text: str, base):
    """One extension descriptor over ``base``."""
    m = re.fullmatch(rf"\s*(etale|radicial)\s+({_NAME})\s*:\s*(.+?)\s*", text)
    if not m:
        raise ParseError(f"cannot parse extension {text!r}; expected 'etale x: <poly>' or 'radicial a: <b>'")
    kind, name, rest = m.groups()
    try:
        if kind == "radicial":
            return radicial_extension(base, name, rest)
        coeffs = parse_polynomial(rest, base, name)
        return etale_extension(base, name, coeffs)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from None


# -- expression parser -------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),]))")


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class Context:
    """Binds names and literals for the parser."""

    def integer(self, n: int):
        raise NotImplementedError

    def name(self, name: str, pos: int):
        raise NotImplementedError

    def call(self, fn: str, args: list, pos: int):
        raise ParseError(f"unknown function {fn!r}", pos)

    def big_o(self, var: str, n: int, pos: int):
        raise ParseError("O(...) is not allowed here", pos)


class FieldContext(Context):
    def __init__(self, field):
        self.field = field
        self.gens = _field_gens(field)

    def integer(self, n):
        return self.field(n)

    def name(self, name, pos):
        if name in self.gens:
            return self.gens[name]
        raise ParseError(f"unbound variable {name!r}", pos)

    def call(self, fn, args, pos):
        if fn == "dlog":
            if len(args) != 1 or isinstance(args[0], DifferentialForm):
                raise ParseError("dlog takes one field element", pos)
            try:
                return dlog(self.field(args[0]))
            except ZeroDivisionError:
                raise ParseError("dlog of zero", pos) from None
        if fn == "d":
            from .forms import d
            if len(args) != 1:
                raise ParseError("d takes one argument", pos)
            return d(args[0] if isinstance(args[0], DifferentialForm) else as_form(self.field(args[0]), self.field))
        return super().call(fn, args, pos)

    def big_o(self, var, n, pos):
        tower = self.field
        while isinstance(tower, ExtensionField):
            tower = tower.base
        if not isinstance(tower, FieldTower) or var not in tower.laurent_vars:
            raise ParseError(f"{var!r} is not a Laurent variable", pos)
        return self.field(tower.big_o(n, var))


def _field_gens(field) -> dict:
    if isinstance(field, FieldTower):
        return field.gens()
    gens = _field_gens(field.base)
    out = {k: field(v) for k, v in gens.items()}
    out[field.name] = field.gen
    return out


class SeriesContext(Context):
    def __init__(self, ring: SeriesRing):
        self.ring = ring
        self.gens = {n: ring.gen(n) for n in ring.names}
        if ring.field.e > 1:
            self.gens["w"] = ring.constant(ring.field.generator)

    def integer(self, n):
        return self.ring.constant(self.ring.field.from_int(n))

    def name(self, name, pos):
        if name in self.gens:
            return self.gens[name]
        raise ParseError(f"unbound variable {name!r}", pos)


class _Parser:
    def __init__(self, text: str, ctx: Context):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.ctx = ctx

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.pos)
        return t

    def parse(self):
        if self.tok.kind == "end":
            raise ParseError("empty expression", 0)
        value = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return value

    def _apply(self, fn, pos):
        try:
            return fn()
        except ParseError:
            raise
        except (ValueError, TypeError, ZeroDivisionError, ArithmeticError) as exc:
            raise ParseError(str(exc), pos) from None

    def expr(self):
        value = self.term()
        while self.tok.text in ("+", "-"):
            op = self.next()
            rhs = self.term()
            value = self._apply(lambda: value + rhs if op.text == "+" else value - rhs, op.pos)
        return value

    def term(self):
        value = self.unary()
        while self.tok.text in ("*", "/"):
            op = self.next()
            rhs = self.unary()
            if op.text == "*":
                value = self._apply(lambda: value * rhs, op.pos)
            else:
                if isinstance(rhs, DifferentialForm):
                    raise ParseError("cannot divide by a form", op.pos)
                value = self._apply(lambda: value / rhs, op.pos)
        return value

    def unary(self):
        if self.tok.text == "-":
            op = self.next()
            value = self.unary()
            return self._apply(lambda: -value, op.pos)
        if self.tok.text == "+":
            self.next()
            return self.unary()
        return self.power()

    def _signed_int_ahead(self) -> int | None:
        j = self.i
        sign = 1
        paren = False
        if self.tokens[j].text == "(":
            paren = True
            j += 1
        if self.tokens[j].text in ("-", "+"):
            sign = -1 if self.tokens[j].text == "-" else 1
            j += 1
        if self.tokens[j].kind != "num":
            return None
        n = sign * int(self.tokens[j].text)
        j += 1
        if paren:
            if self.tokens[j].text != ")":
                return None
            j += 1
        if self.tokens[j].text == "^":
            return None  # x^2^3 style: leave to the general path
        self._skip_to = j
        return n

    def power(self):
        base = self.atom()
        if self.tok.text != "^":
            return base
        op = self.next()
        n = self._signed_int_ahead()
        if n is not None and not isinstance(base, DifferentialForm):
            self.i = self._skip_to
            return self._apply(lambda: base ** n, op.pos)
        rhs = self.unary()
        if not isinstance(base, DifferentialForm) and not isinstance(rhs, DifferentialForm):
            raise ParseError("'^' between non-forms needs an integer exponent", op.pos)
        if isinstance(base, DifferentialForm):
            return self._apply(lambda: base.wedge(rhs), op.pos)
        return self._apply(lambda: rhs.wedge(base), op.pos)

    def atom(self):
        t = self.next()
        if t.kind == "num":
            return self.ctx.integer(int(t.text))
        if t.text == "(":
            value = self.expr()
            self.expect(")")
            return value
        if t.kind == "name":
            if self.tok.text == "(":
                if t.text == "O":
                    return self._big_o(t)
                self.next()
                args = [self.expr()]
                while self.tok.text == ",":
                    self.next()
                    args.append(self.expr())
                self.expect(")")
                return self.ctx.call(t.text, args, t.pos)
            return self.ctx.name(t.text, t.pos)
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)

    def _big_o(self, t: Token):
        self.expect("(")
        var = self.next()
        if var.kind != "name":
            raise ParseError("O(...) needs a variable", var.pos)
        n = 1
        if self.tok.text == "^":
            self.next()
            sign = 1
            if self.tok.text in ("-", "+"):
                sign = -1 if self.next().text == "-" else 1
            num = self.next()
            if num.kind != "num":
                raise ParseError("O(t^N) needs an integer N", num.pos)
            n = sign * int(num.text)
        self.expect(")")
        return self.ctx.big_o(var.text, n, t.pos)


def parse_expression(text: str, context):
    """Parse ``text`` over a field (tower or extension), a series ring, or a Context."""
    if isinstance(context, SeriesRing):
        context = SeriesContext(context)
    elif not isinstance(context, Context):
        context = FieldContext(context)
    return _Parser(text, context).parse()


def parse_element(text: str, field) -> FieldElement:
    value = parse_expression(text, field)
    if isinstance(value, DifferentialForm):
        if value.degree:
            raise ParseError("expected a field element, got a form")
        return value.coefficient(())
    return value


def parse_form(text: str, field) -> DifferentialForm:
    value = parse_expression(text, field)
    if isinstance(value, DifferentialForm):
        return value
    return as_form(value, field)


def parse_series(text: str, ring: SeriesRing) -> TruncatedSeries:
    value = parse_expression(text, ring)
    if not isinstance(value, TruncatedSeries):  # pragma: no cover - contexts only build series
        raise ParseError("expected a series")
    return value


# -- polynomials in a fresh variable ------------------------------------------------------

class _Poly:
    """Univariate polynomial with field coefficients, for extension descriptors."""

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = list(coeffs)

    def _lift(self, other):
        if isinstance(other, _Poly):
            return other
        return _Poly(self.field, [self.field(other)])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + [self.field.zero] * (n - len(self.coeffs))
        b = o.coeffs + [self.field.zero] * (n - len(o.coeffs))
        return _Poly(self.field, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return _Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        out = [self.field.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(o.coeffs):
                out[i + j] = out[i + j] + x * y
        return _Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        out = _Poly(self.field, [self.field.one])
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other):
        if isinstance(other, _Poly):
            raise ValueError("cannot divide by a polynomial")
        inv = self.field(other).inv()
        return _Poly(self.field, [c * inv for c in self.coeffs])


class _PolyContext(FieldContext):
    def __init__(self, field, var):
        super().__init__(field)
        self.var = var

    def name(self, name, pos):
        if name == self.var:
            return _Poly(self.field, [self.field.zero, self.field.one])
        return super().name(name, pos)


def parse_polynomial(text: str, field, var: str) -> list:
    """Coefficients (low -> high) of a polynomial in ``var`` over ``field``."""
    value = _Parser(text, _PolyContext(field, var)).parse()
    if not isinstance(value, _Poly):
        value = _Poly(field, [field(value)])
    coeffs = list(value.coeffs)
    while len(coeffs) > 1 and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


class _SeriesCoefficients:
    """Lets _Poly take coefficients in a series ring."""

    def __init__(self, ring: SeriesRing):
        self.ring = ring

    @property
    def zero(self):
        return self.ring.zero()

    @property
    def one(self):
        return self.ring.one()

    def __call__(self, x):
        if isinstance(x, TruncatedSeries):
            return x
        return self.ring.constant(self.ring.field.from_int(x))


class _SeriesPolyContext(SeriesContext):
    def __init__(self, ring, var):
        super().__init__(ring)
        if var in self.gens:
            raise ParseError(f"polynomial variable {var!r} clashes with a ring variable")
        self.var = var
        self.coeffs = _SeriesCoefficients(ring)

    def name(self, name, pos):
        if name == self.var:
            return _Poly(self.coeffs, [self.coeffs.zero, self.coeffs.one])
        return super().name(name, pos)


def parse_series_polynomial(text: str, ring: SeriesRing, var: str) -> list:
    """Coefficients (low -> high) of a polynomial in ``var`` with series coefficients."""
    ctx = _SeriesPolyContext(ring, var)
    value = _Parser(text, ctx).parse()
    if not isinstance(value, _Poly):
        value = _Poly(ctx.coeffs, [ctx.coeffs(value)])
    coeffs = list(value.coeffs)
    while len(coeffs) > 1 and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs
