"""Characteristic-p fields with a finite p-basis.

A :class:`FieldTower` is a base field (a finite field, or a rational function
field over the prime field) followed by zero or more Laurent-series layers.
Its p-basis is the list of base variables followed by the Laurent variables,
in that order.  Elements are immutable.

Laurent layers hold finitely many terms plus an optional big-O tag: an element
with ``prec = N`` is only known modulo ``O(t^N)``.  ``prec = None`` means exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import flint

from .errors import InsufficientPrecision, NotAPthPower, TowerMismatch
from .finite_field import GaloisField, is_prime, prime_power


# -- base descriptors ---------------------------------------------------------------

@dataclass(frozen=True)
class FiniteField:
    """GF(q) = F_p[name]/(modulus); the default modulus is the smallest irreducible."""

    q: int
    modulus: tuple[int, ...] | None = None
    name: str = "w"

    def __post_init__(self):
        p, e = prime_power(self.q)
        if self.modulus is not None:
            object.__setattr__(self, "modulus", tuple(int(c) % p for c in self.modulus))

    @property
    def variables(self) -> tuple[str, ...]:
        return ()


@dataclass(frozen=True)
class RationalFunctions:
    """F_p(b_1, ..., b_s); the b_i form the p-basis."""

    variables: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ValueError("a rational function field needs at least one variable")


def _pmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class FieldTower:
    p: int
    base: FiniteField | RationalFunctions
    laurent_vars: tuple[str, ...] = ()
    default_precision: int = 16

    def __post_init__(self):
        object.__setattr__(self, "laurent_vars", tuple(self.laurent_vars))
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        if isinstance(self.base, FiniteField):
            bp, _ = prime_power(self.base.q)
            if bp != self.p:
                raise ValueError(f"GF({self.base.q}) does not have characteristic {self.p}")
            self.gf  # validates the modulus
        elif not isinstance(self.base, RationalFunctions):
            raise TypeError(f"unknown base descriptor {self.base!r}")
        names = list(self.base.variables) + list(self.laurent_vars)
        if isinstance(self.base, FiniteField) and self.gf.e > 1:
            names.append(self.base.name)
        if len(set(names)) != len(names):
            raise ValueError(f"variable names are not distinct: {names}")
        if self.default_precision < 1:
            raise ValueError("default precision must be positive")

    # -- structure ---------------------------------------------------------------

    @cached_property
    def gf(self) -> GaloisField:
        if not isinstance(self.base, FiniteField):
            raise AttributeError("rational function base has no finite field")
        p, e = prime_power(self.base.q)
        return GaloisField(p, e, self.base.modulus)

    @cached_property
    def poly_ring(self):
        if not isinstance(self.base, RationalFunctions):
            raise AttributeError("finite base has no polynomial ring")
        return flint.nmod_mpoly_ctx.get(self.base.variables, modulus=self.p)

    @property
    def is_finite_base(self) -> bool:
        return isinstance(self.base, FiniteField)

    @property
    def height(self) -> int:
        return len(self.laurent_vars)

    @property
    def pbasis(self) -> tuple[str, ...]:
        return tuple(self.base.variables) + self.laurent_vars

    @property
    def rank(self) -> int:
        return len(self.pbasis)

    @cached_property
    def parent(self) -> "FieldTower":
        if not self.laurent_vars:
            raise ValueError("the base level has no parent")
        return FieldTower(self.p, self.base, self.laurent_vars[:-1], self.default_precision)

    @cached_property
    def base_tower(self) -> "FieldTower":
        return FieldTower(self.p, self.base, (), self.default_precision)

    def levels(self) -> list["FieldTower"]:
        """All towers from the base up to self."""
        out = [self]
        while out[-1].height:
            out.append(out[-1].parent)
        return out[::-1]

    def contains(self, other) -> bool:
        """True when elements of ``other`` coerce into self."""
        return other == self or (isinstance(other, FieldTower) and other.is_ancestor_of(self))

    def is_ancestor_of(self, other: "FieldTower") -> bool:
        return (isinstance(other, FieldTower) and self.p == other.p and self.base == other.base
                and self.default_precision == other.default_precision
                and len(self.laurent_vars) < len(other.laurent_vars)
                and other.laurent_vars[:len(self.laurent_vars)] == self.laurent_vars)

    def with_precision(self, n: int) -> "FieldTower":
        return FieldTower(self.p, self.base, self.laurent_vars, n)

    def __str__(self):
        if self.is_finite_base:
            s = f"GF({self.base.q})"
        else:
            s = f"Frac GF({self.p})[{','.join(self.base.variables)}]"
        return s + "".join(f"(({v}))" for v in self.laurent_vars)

    # -- element construction ------------------------------------------------------

    def __call__(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.tower == self:
                return x
            if self.contains(x.tower):
                return self.embed(x)
            raise TowerMismatch(f"cannot coerce an element of {x.tower} into {self}")
        if isinstance(x, int):
            return self._from_int(x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def _from_int(self, n: int) -> "FieldElement":
        if self.height:
            c = self.parent._from_int(n)
            return LaurentElement(self, ((0, c),) if not c.is_zero() else (), None)
        if self.is_finite_base:
            return GFElement(self, self.gf.from_int(n))
        R = self.poly_ring
        return RationalElement._make(self, R.constant(n % self.p), R.constant(1))

    @property
    def zero(self) -> "FieldElement":
        return self._from_int(0)

    @property
    def one(self) -> "FieldElement":
        return self._from_int(1)

    def embed(self, x: "FieldElement") -> "FieldElement":
        if x.tower == self:
            return x
        if not x.tower.is_ancestor_of(self):
            raise TowerMismatch(f"{x.tower} is not a sub-level of {self}")
        y = self.parent.embed(x)
        return LaurentElement(self, ((0, y),) if not y.is_zero() else (), None)

    def gen(self, name: str) -> "FieldElement":
        if name in self.laurent_vars:
            j = self.laurent_vars.index(name)
            level = FieldTower(self.p, self.base, self.laurent_vars[:j + 1], self.default_precision)
            t = LaurentElement(level, ((1, level.parent.one),), None)
            return self.embed(t)
        base = self.base_tower
        if self.is_finite_base and name == self.base.name and self.gf.e > 1:
            return self.embed(GFElement(base, self.gf.generator))
        if not self.is_finite_base and name in self.base.variables:
            R = self.poly_ring
            return self.embed(RationalElement._make(base, R.gens()[self.base.variables.index(name)], R.constant(1)))
        raise KeyError(f"{name!r} is not a generator of {self}")

    def gens(self) -> dict[str, "FieldElement"]:
        names = list(self.pbasis)
        if self.is_finite_base and self.gf.e > 1:
            names.insert(0, self.base.name)
        return {n: self.gen(n) for n in names}

    def pbasis_element(self, i: int) -> "FieldElement":
        return self.gen(self.pbasis[i])

    def laurent(self, terms, prec: int | None = None) -> "LaurentElement":
        """Element sum c*t^e of the top layer from {e: c} (c coerced into the parent)."""
        if not self.height:
            raise ValueError("the base level has no Laurent variable")
        items = terms.items() if isinstance(terms, dict) else terms
        return LaurentElement._make(self, {e: self.parent(c) for e, c in items}, prec)

    def big_o(self, n: int, var: str | None = None) -> "FieldElement":
        """The element O(var^n) (var defaults to the top Laurent variable)."""
        var = var or self.laurent_vars[-1]
        j = self.laurent_vars.index(var)
        level = FieldTower(self.p, self.base, self.laurent_vars[:j + 1], self.default_precision)
        return self.embed(LaurentElement(level, (), n))

    def partial(self, x: "FieldElement", i: int) -> "FieldElement":
        return self(x).partial(i)


def make_tower(p: int, base, laurent_vars: Iterable[str] = (), default_precision: int = 16) -> FieldTower:
    """Validate and build a tower (base: FiniteField/RationalFunctions, or a q / name list)."""
    if isinstance(base, int):
        base = FiniteField(base)
    elif isinstance(base, (list, tuple)) and all(isinstance(v, str) for v in base):
        base = RationalFunctions(tuple(base))
    return FieldTower(p, base, tuple(laurent_vars), default_precision)


# -- elements ----------------------------------------------------------------------

class FieldElement:
    __slots__ = ("tower",)

    # subclasses implement: _add, _neg, _mul, inv, is_zero, is_exact, frobenius,
    # p_th_root, partial, p_components, _key, _fmt

    def _pair(self, other):
        if isinstance(other, int):
            return self, self.tower(other)
        if not isinstance(other, FieldElement):
            return None
        if other.tower == self.tower:
            return self, other
        if self.tower.contains(other.tower):
            return self, self.tower(other)
        if other.tower.contains(self.tower):
            return other.tower(self), other
        raise TowerMismatch(f"elements of {self.tower} and {other.tower} do not mix")

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return pair[0]._add(pair[1])

    __radd__ = __add__

    def __neg__(self):
        return self._neg()

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return pair[0]._add(pair[1]._neg())

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return pair[1]._add(pair[0]._neg())

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return pair[0]._mul(pair[1])

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return pair[0]._mul(pair[1].inv())

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        return pair[1]._mul(pair[0].inv())

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result, base = self.tower.one, self
        while n:
            if n & 1:
                result = result._mul(base)
            n >>= 1
            if n:
                base = base._mul(base)
        return result

    def __eq__(self, other):
        try:
            pair = self._pair(other)
        except TowerMismatch:
            return False
        if pair is None:
            return NotImplemented
        return pair[0]._key() == pair[1]._key()

    def __hash__(self):
        return hash(self._key())

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return self._fmt()

    def __repr__(self):
        return f"<{self.tower}: {self._fmt()}>"

    @property
    def p(self) -> int:
        return self.tower.p

    @property
    def precision(self) -> int | None:
        return None


class GFElement(FieldElement):
    __slots__ = ("code",)

    def __init__(self, tower: FieldTower, code: int):
        self.tower = tower
        self.code = code

    def _key(self):
        return ("gf", self.code)

    def _add(self, o):
        return GFElement(self.tower, self.tower.gf.add(self.code, o.code))

    def _neg(self):
        return GFElement(self.tower, self.tower.gf.neg(self.code))

    def _mul(self, o):
        return GFElement(self.tower, self.tower.gf.mul(self.code, o.code))

    def inv(self, precision: int | None = None):
        return GFElement(self.tower, self.tower.gf.inv(self.code))

    def is_zero(self) -> bool:
        return self.code == 0

    def is_exact(self) -> bool:
        return True

    def frobenius(self):
        return GFElement(self.tower, self.tower.gf.frobenius(self.code))

    def p_th_root(self):
        return GFElement(self.tower, self.tower.gf.root(self.code))

    def partial(self, i: int):
        raise IndexError("a finite field has an empty p-basis")

    def p_components(self) -> dict:
        return {(): self.p_th_root()} if self.code else {}

    def trace(self, sub_degree: int = 1) -> "GFElement":
        return GFElement(self.tower, self.tower.gf.trace(self.code, sub_degree))

    def _fmt(self):
        return self.tower.gf.format(self.code, self.tower.base.name)


def _poly_key(f):
    return frozenset(_terms(f))


class RationalElement(FieldElement):
    """num/den with gcd cancelled and den monic in the lex order of its ring."""

    __slots__ = ("num", "den")

    def __init__(self, tower, num, den):
        self.tower = tower
        self.num = num
        self.den = den

    @classmethod
    def _make(cls, tower, num, den):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return cls(tower, num, tower.poly_ring.constant(1))
        if not den.is_constant():
            g = num.gcd(den)
            if not g.is_one():
                num, den = num / g, den / g
        lc = int(den.leading_coefficient())
        if lc != 1:
            inv = pow(lc, -1, tower.p)
            num, den = num * inv, den * inv
        return cls(tower, num, den)

    def _key(self):
        return ("rat", _poly_key(self.num), _poly_key(self.den))

    def _add(self, o):
        if self.den == o.den:
            return RationalElement._make(self.tower, self.num + o.num, self.den)
        return RationalElement._make(self.tower, self.num * o.den + o.num * self.den, self.den * o.den)

    def _neg(self):
        return RationalElement(self.tower, -self.num, self.den)

    def _mul(self, o):
        return RationalElement._make(self.tower, self.num * o.num, self.den * o.den)

    def inv(self, precision: int | None = None):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RationalElement._make(self.tower, self.den, self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_exact(self) -> bool:
        return True

    def _frob_poly(self, f):
        p = self.p
        return f.context().from_dict({tuple(e * p for e in m): c for m, c in _terms(f)})

    def frobenius(self):
        return RationalElement(self.tower, self._frob_poly(self.num), self._frob_poly(self.den))

    def p_components(self) -> dict:
        p, R = self.p, self.tower.poly_ring
        if not self.num:
            return {}
        # clear the denominator by a p-th power: x = num*den^(p-1) / den^p
        top = self.num * self.den ** (p - 1)
        buckets: dict[tuple, dict] = {}
        for m, c in _terms(top):
            theta = tuple(e % p for e in m)
            buckets.setdefault(theta, {})[tuple(e // p for e in m)] = c
        return {theta: RationalElement._make(self.tower, R.from_dict(d), self.den)
                for theta, d in buckets.items()}

    def p_th_root(self):
        comps = self.p_components()
        zero = (0,) * len(self.tower.base.variables)
        if any(theta != zero for theta in comps):
            raise NotAPthPower(f"{self} is not a p-th power")
        return comps.get(zero, self.tower.zero)

    def partial(self, i: int):
        n = len(self.tower.base.variables)
        if not 0 <= i < n:
            raise IndexError(f"p-basis index {i} out of range")
        dn, dd = _poly_diff(self.num, i, self.p), _poly_diff(self.den, i, self.p)
        return RationalElement._make(self.tower, dn * self.den - self.num * dd, self.den ** 2)

    def _fmt(self):
        num = _format_poly(self.num, self.tower.base.variables)
        if self.den.is_one():
            return num
        den = _format_poly(self.den, self.tower.base.variables)
        if " " in num:
            num = f"({num})"
        if any(ch in den for ch in " *"):
            den = f"({den})"
        return f"{num}/{den}"


def _terms(f):
    """(exponents, coefficient) pairs of a polynomial as plain ints, lex-descending."""
    return [(tuple(int(e) for e in m), int(c)) for m, c in f.terms()]


def _poly_diff(f, i, p):
    out = {}
    for m, c in _terms(f):
        e = m[i] % p
        if e:
            mm = list(m)
            mm[i] -= 1
            out[tuple(mm)] = c * e
    return f.context().from_dict(out)


def _format_poly(f, names) -> str:
    if not f:
        return "0"
    parts = []
    for m, c in _terms(f):
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mono = "*".join(factors)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


class LaurentElement(FieldElement):
    """sum c_e t^e (+ O(t^prec)); coefficients live one level down."""

    __slots__ = ("terms", "prec")

    def __init__(self, tower, terms: tuple, prec: int | None):
        self.tower = tower
        self.terms = terms
        self.prec = prec

    @classmethod
    def _make(cls, tower, acc: dict, prec):
        # an inexact zero coefficient such as O(t1^3) is kept: it records what is unknown
        items = sorted((e, c) for e, c in acc.items()
                       if (not c.is_zero() or not c.is_exact()) and (prec is None or e < prec)) if acc else []
        return cls(tower, tuple(items), prec)

    @property
    def var(self) -> str:
        return self.tower.laurent_vars[-1]

    @property
    def precision(self) -> int | None:
        return self.prec

    @property
    def valuation(self) -> int | None:
        """Lowest stored exponent (the precision for an O(t^N) zero, None for exact 0)."""
        if self.terms:
            return self.terms[0][0]
        return self.prec

    def coefficient(self, e: int) -> FieldElement:
        for ee, c in self.terms:
            if ee == e:
                return c
        return self.tower.parent.zero

    def truncate(self, n: int) -> "LaurentElement":
        return LaurentElement._make(self.tower, dict(self.terms), _pmin(self.prec, n))

    def drop_precision(self) -> "LaurentElement":
        """The stored Laurent polynomial with the big-O tag removed (all layers)."""
        return LaurentElement._make(self.tower, {
            e: c.drop_precision() if isinstance(c, LaurentElement) else c for e, c in self.terms}, None)

    def _key(self):
        return ("laurent", tuple((e, c._key()) for e, c in self.terms), self.prec)

    def _add(self, o):
        acc = dict(self.terms)
        for e, c in o.terms:
            acc[e] = acc[e]._add(c) if e in acc else c
        return LaurentElement._make(self.tower, acc, _pmin(self.prec, o.prec))

    def _neg(self):
        return LaurentElement(self.tower, tuple((e, c._neg()) for e, c in self.terms), self.prec)

    def _mul(self, o):
        if (not self.terms and self.prec is None) or (not o.terms and o.prec is None):
            return LaurentElement(self.tower, (), None)
        prec = None
        if self.prec is not None:
            prec = self.prec + o.valuation
        if o.prec is not None:
            prec = _pmin(prec, o.prec + self.valuation)
        acc: dict = {}
        for ex, cx in self.terms:
            for ey, cy in o.terms:
                e = ex + ey
                if prec is not None and e >= prec:
                    break
                prod = cx._mul(cy)
                acc[e] = acc[e]._add(prod) if e in acc else prod
        return LaurentElement._make(self.tower, acc, prec)

    def inv(self, precision: int | None = None):
        """Inverse; x * x.inv(N) = 1 + O(t^N) unless x is an exact monomial."""
        if not self.terms:
            if self.prec is None:
                raise ZeroDivisionError("inverse of zero")
            raise InsufficientPrecision(f"cannot invert {self}: no known terms")
        if precision is not None and precision < 1:
            raise ValueError("inverse precision must be positive")
        v, c = self.terms[0]
        if c.is_zero():
            raise InsufficientPrecision(f"cannot invert {self}: leading coefficient {c} is unknown")
        c_inv = c.inv()
        if len(self.terms) == 1 and self.prec is None and c_inv.is_exact():
            return LaurentElement(self.tower, ((-v, c_inv),), None)
        n = precision if precision is not None else self.tower.default_precision
        if self.prec is not None:
            n = min(n, self.prec - v)
        # y_0 = c^-1,  y_k = -c^-1 * sum_{i=1..k} a_i y_{k-i}
        a = {e - v: ce for e, ce in self.terms[1:]}
        ys = [c_inv]
        neg_c_inv = c_inv._neg()
        for k in range(1, n):
            s = None
            for i in range(1, k + 1):
                ai = a.get(i)
                if ai is not None:
                    prod = ai._mul(ys[k - i])
                    s = prod if s is None else s._add(prod)
            ys.append(neg_c_inv._mul(s) if s is not None else self.tower.parent.zero)
        return LaurentElement._make(self.tower, {k - v: y for k, y in enumerate(ys)}, n - v)

    def is_zero(self) -> bool:
        return all(c.is_zero() for _, c in self.terms)

    def is_exact(self) -> bool:
        return self.prec is None and all(c.is_exact() for _, c in self.terms)

    def frobenius(self):
        p = self.p
        return LaurentElement(self.tower, tuple((p * e, c.frobenius()) for e, c in self.terms),
                              None if self.prec is None else p * self.prec)

    def p_th_root(self):
        if not self.is_exact():
            raise InsufficientPrecision(f"p-th root of the truncated element {self} is undecidable")
        p = self.p
        out = []
        for e, c in self.terms:
            if e % p:
                raise NotAPthPower(f"{self} has a term {self.var}^{e} with exponent prime to p")
            out.append((e // p, c.p_th_root()))
        return LaurentElement(self.tower, tuple(out), None)

    def partial(self, i: int):
        r = self.tower.rank
        if not 0 <= i < r:
            raise IndexError(f"p-basis index {i} out of range")
        if i == r - 1:
            p = self.p
            acc = {e - 1: c._mul(self.tower.parent._from_int(e)) for e, c in self.terms if e % p}
            return LaurentElement._make(self.tower, acc, None if self.prec is None else self.prec - 1)
        return LaurentElement._make(self.tower, {e: c.partial(i) for e, c in self.terms}, self.prec)

    def p_components(self) -> dict:
        p = self.p
        buckets: dict[tuple, dict] = {}
        for e, c in self.terms:
            i = e % p
            f = (e - i) // p
            for theta, ct in c.p_components().items():
                buckets.setdefault(theta + (i,), {})[f] = ct
        out = {}
        for theta, d in buckets.items():
            out[theta] = LaurentElement._make(self.tower, d, _component_precision(self.prec, theta[-1], p))
        return out

    def _fmt(self):
        var = self.var
        parts = []
        for e, c in self.terms:
            cs = c._fmt()
            mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                if " " in cs or "/" in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        if self.prec is not None:
            parts.append(f"O({var}^{self.prec})")
        return " + ".join(parts) if parts else "0"


def _component_precision(prec, i, p):
    if prec is None:
        return None
    return -((i - prec) // p)  # ceil((prec - i) / p)


# -- p-basis decomposition ---------------------------------------------------------

@dataclass(frozen=True)
class PComponentDecomposition:
    """x = sum_theta (x_theta)^p b^theta over the tower's p-basis."""

    tower: FieldTower
    components: dict = field(hash=False)
    precision: int | None = None

    def zero_theta(self) -> tuple[int, ...]:
        return (0,) * self.tower.rank

    def get(self, theta) -> FieldElement:
        theta = tuple(theta)
        if theta in self.components:
            return self.components[theta]
        z = self.tower.zero
        if self.tower.height and self.precision is not None:
            return z + self.tower.big_o(_component_precision(self.precision, theta[-1], self.tower.p))
        return z

    def reassemble(self) -> FieldElement:
        total = self.tower.zero
        basis = [self.tower.pbasis_element(i) for i in range(self.tower.rank)]
        for theta, x in self.components.items():
            mono = self.tower.one
            for b, k in zip(basis, theta):
                if k:
                    mono = mono * b ** k
            total = total + x.frobenius() * mono
        if self.precision is not None:
            total = total + self.tower.big_o(self.precision)
        return total

    def __eq__(self, other):
        return (isinstance(other, PComponentDecomposition) and self.tower == other.tower
                and self.components == other.components and self.precision == other.precision)


def p_component_decompose(x: FieldElement) -> PComponentDecomposition:
    return PComponentDecomposition(x.tower, x.p_components(), x.precision)


def pth_power_part(x: FieldElement) -> FieldElement:
    """The theta = 0 summand x_0^p of x; x minus it lies in the span of b^theta, theta != 0."""
    dec = p_component_decompose(x)
    return dec.get(dec.zero_theta()).frobenius()


def frobenius(x: FieldElement) -> FieldElement:
    return x.frobenius()


def p_th_root(x: FieldElement) -> FieldElement:
    return x.p_th_root()


def partial_derivative(x: FieldElement, v: str | int) -> FieldElement:
    """d x / d v for a p-basis element v (given by name or index)."""
    i = v if isinstance(v, int) else _pbasis_index(x.tower, v)
    return x.partial(i)


def _pbasis_index(tower, name):
    try:
        return tower.pbasis.index(name)
    except ValueError:
        raise ValueError(f"{name!r} is not in the p-basis {tower.pbasis}") from None


def field_trace_finite(x: GFElement, down_to: int) -> GFElement:
    """Tr_{GF(q)/GF(down_to)}(x) for the finite base field of x's tower."""
    if not isinstance(x, GFElement):
        raise TypeError("field_trace_finite needs a finite field element")
    gf = x.tower.gf
    p, d = prime_power(down_to)
    if p != gf.p or gf.e % d:
        raise ValueError(f"GF({down_to}) is not a subfield of GF({gf.q})")
    return x.trace(d)


def theta_indices(tower: FieldTower):
    return itertools.product(range(tower.p), repeat=tower.rank)
