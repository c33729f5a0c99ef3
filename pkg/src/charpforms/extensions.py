"""Finite extensions k' = k[x]/(f) of the two generating kinds.

* ``etale``: f separable; the p-basis of k' is that of k.
* ``radicial``: f = x^p - b for a p-basis element b of k; in k' the new root
  a replaces b in the p-basis, at the same position.

Elements are coefficient vectors over the basis 1, x, ..., x^(n-1).  The base
can be a :class:`~charpforms.tower.FieldTower` or another extension, so
composite extensions are built as explicit chains.
"""

from __future__ import annotations

from functools import cached_property

from .errors import TowerMismatch
from .tower import FieldElement, FieldTower

ETALE = "etale"
RADICIAL = "radicial"


# -- polynomials over a field, as coefficient lists low -> high ------------------------

def _ptrim(a):
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def _pdivmod(a, b):
    a = _ptrim(a)
    b = _ptrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = b[-1].inv()
    zero = b[0] - b[0]
    q = [zero] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv_lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - c * bc
        a = _ptrim(a[:-1])
    return q, a


def _psub(a, b):
    if not a or not b:
        return _ptrim(a) if a else _ptrim([-c for c in b])
    n = max(len(a), len(b))
    zero = a[0] - a[0]
    a = list(a) + [zero] * (n - len(a))
    b = list(b) + [zero] * (n - len(b))
    return _ptrim([x - y for x, y in zip(a, b)])


def _pmul(a, b):
    if not a or not b:
        return []
    zero = a[0] - a[0]
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _ptrim(out)


def _pgcd(a, b):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return a


def _pderiv(a):
    return _ptrim([c * i for i, c in enumerate(a)][1:])


def _generator_names(field) -> tuple:
    if isinstance(field, FieldTower):
        return tuple(field.gens())
    return field.names


def _is_finite(field) -> bool:
    if isinstance(field, FieldTower):
        return field.is_finite_base and field.height == 0
    return isinstance(field, ExtensionField) and field.kind == ETALE and _is_finite(field.base)


def _field_size(field) -> int:
    if isinstance(field, FieldTower):
        return field.base.q
    return _field_size(field.base) ** field.degree


def _field_elements(field):
    if isinstance(field, FieldTower):
        from .tower import GFElement
        return [GFElement(field, c) for c in range(field.base.q)]
    from itertools import product
    base = _field_elements(field.base)
    return [ExtElement(field, tuple(cs)) for cs in product(base, repeat=field.degree)]


class ExtensionField:
    """k' = k[name]/(minpoly) with minpoly monic, coefficients listed low -> high."""

    def __init__(self, base, name: str, minpoly, kind: str = ETALE, index: int | None = None):
        if kind not in (ETALE, RADICIAL):
            raise ValueError(f"unknown extension kind {kind!r}")
        coeffs = [base(c) for c in minpoly]
        if len(coeffs) < 2 or coeffs[-1] != base.one:
            raise ValueError("the minimal polynomial must be monic of degree >= 1")
        taken = set(base.pbasis) | set(_generator_names(base))
        if name in taken:
            raise ValueError(f"generator name {name!r} is already used")
        self.base = base
        self.name = name
        self.kind = kind
        self.minpoly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.index = index
        if kind == RADICIAL:
            p = base.p
            if index is None or not 0 <= index < base.rank:
                raise ValueError("a radicial extension needs the index of a p-basis element")
            expected = [-base.pbasis_element(index)] + [base.zero] * (p - 1) + [base.one]
            if self.degree != p or list(coeffs) != expected:
                raise ValueError(f"a radicial extension is cut out by x^{p} - {base.pbasis[index]}")
        else:
            g = _pgcd(list(coeffs), _pderiv(coeffs))
            if len(g) != 1:
                raise ValueError("the minimal polynomial is not separable")
            if _is_finite(base) and not self._irreducible_over_finite():
                raise ValueError("the minimal polynomial is reducible")

    # -- structure ---------------------------------------------------------------

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def rank(self) -> int:
        return self.base.rank

    @property
    def height(self) -> int:
        return 0

    @cached_property
    def pbasis(self) -> tuple[str, ...]:
        names = list(self.base.pbasis)
        if self.kind == RADICIAL:
            names[self.index] = self.name
        return tuple(names)

    @property
    def names(self) -> tuple[str, ...]:
        return _generator_names(self.base) + (self.name,)

    def _key(self):
        return (self.base, self.name, self.kind, self.index, tuple(c._key() for c in self.minpoly))

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and self._key() == other._key()

    def __hash__(self):
        return hash((self.name, self.kind, self.degree))

    def __str__(self):
        return f"{self.base}[{self.name}]/({format_polynomial(self.minpoly, self.name)})"

    def __repr__(self):
        return f"ExtensionField({self})"

    def contains(self, other) -> bool:
        return other == self or self.base.contains(other)

    def is_finite(self) -> bool:
        return _is_finite(self)

    # -- elements ------------------------------------------------------------------

    def __call__(self, x) -> "ExtElement":
        if isinstance(x, ExtElement) and x.tower == self:
            return x
        if isinstance(x, int) or (isinstance(x, FieldElement) and self.base.contains(x.tower)):
            c = self.base(x)
            return ExtElement(self, (c,) + (self.base.zero,) * (self.degree - 1))
        raise TowerMismatch(f"cannot coerce {x!r} into {self}")

    @property
    def zero(self) -> "ExtElement":
        return self(0)

    @property
    def one(self) -> "ExtElement":
        return self(1)

    @property
    def gen(self) -> "ExtElement":
        z, o = self.base.zero, self.base.one
        if self.degree == 1:
            return self(-self.minpoly[0])
        return ExtElement(self, (z, o) + (z,) * (self.degree - 2))

    def element(self, coeffs) -> "ExtElement":
        coeffs = [self.base(c) for c in coeffs]
        if len(coeffs) > self.degree:
            x = self.zero
            g = self.gen
            for c in reversed(coeffs):
                x = x * g + c
            return x
        coeffs += [self.base.zero] * (self.degree - len(coeffs))
        return ExtElement(self, tuple(coeffs))

    def pbasis_element(self, i: int) -> "ExtElement":
        if self.kind == RADICIAL and i == self.index:
            return self.gen
        return self(self.base.pbasis_element(i))

    def elements(self):
        """All elements (finite fields only)."""
        if not _is_finite(self):
            raise ValueError("only finite fields can be enumerated")
        return _field_elements(self)

    @property
    def size(self) -> int:
        if not _is_finite(self):
            raise ValueError("infinite field")
        return _field_size(self)

    # -- arithmetic helpers ----------------------------------------------------------

    def _reduce(self, prod: list) -> tuple:
        n, f = self.degree, self.minpoly
        prod = list(prod)
        for k in range(len(prod) - 1, n - 1, -1):
            c = prod[k]
            if c.is_zero():
                continue
            for i in range(n):
                prod[k - n + i] = prod[k - n + i] - c * f[i]
        prod = prod[:n] + [self.base.zero] * (n - len(prod[:n]))
        return tuple(prod)

    @cached_property
    def power_sums(self) -> list:
        """s_k = Tr(x^k) for 0 <= k < n via Newton's identities."""
        n, f = self.degree, self.minpoly
        s = [self.base(n)]
        for k in range(1, n):
            acc = self.base(k) * f[n - k]
            for i in range(1, k):
                acc = acc + f[n - i] * s[k - i]
            s.append(-acc)
        return s

    def trace(self, x: "ExtElement") -> FieldElement:
        """Tr_{k'/k}(x)."""
        x = self(x)
        total = self.base.zero
        for c, s in zip(x.coeffs, self.power_sums):
            total = total + c * s
        return total

    def _theta_partial(self, i: int) -> "ExtElement":
        cached = self.__dict__.setdefault("_dtheta", {})
        if i not in cached:
            f = self.minpoly
            fv = self.element([c.partial(i) for c in f])  # f with differentiated coefficients, at x
            fprime = self.element([c * j for j, c in enumerate(f)][1:])
            cached[i] = -(fv / fprime)
        return cached[i]

    def _irreducible_over_finite(self) -> bool:
        q = _field_size(self.base)
        n = self.degree
        f = list(self.minpoly)
        x = [self.base.zero, self.base.one]
        power = x
        for _ in range(n // 2):
            power = _ppowmod(power, q, f)
            if len(_pgcd(f, _psub(power, x))) > 1:
                return False
        return True


def _ppowmod(a, e, f):
    result = [a[0] - a[0] + 1]
    base = _pdivmod(a, f)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base), f)[1]
        base = _pdivmod(_pmul(base, base), f)[1]
        e >>= 1
    return result


class ExtElement(FieldElement):
    __slots__ = ("coeffs",)

    def __init__(self, field: ExtensionField, coeffs: tuple):
        self.tower = field
        self.coeffs = coeffs

    def _key(self):
        return ("ext", tuple(c._key() for c in self.coeffs))

    def _add(self, o):
        return ExtElement(self.tower, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    def _neg(self):
        return ExtElement(self.tower, tuple(-a for a in self.coeffs))

    def _mul(self, o):
        a = [c for c in self.coeffs]
        b = [c for c in o.coeffs]
        zero = self.tower.base.zero
        prod = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                if not y.is_zero():
                    prod[i + j] = prod[i + j] + x * y
        return ExtElement(self.tower, self.tower._reduce(prod))

    def inv(self, precision: int | None = None):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        field = self.tower
        if field.kind == RADICIAL:
            # y^p lies in the base, so 1/y = y^(p-1) / y^p
            yp = self ** field.p
            return (self ** (field.p - 1)) * field(yp.coeffs[0].inv(precision))
        # extended Euclid: s * y + t * f = g with g a nonzero constant
        f = list(field.minpoly)
        r0, r1 = f, _ptrim(list(self.coeffs))
        s0, s1 = [], [field.base.one]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        if not r1:
            raise ZeroDivisionError(f"{self} is not invertible modulo the minimal polynomial")
        g = r1[0]
        return field.element(s1) * field(g.inv())

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def is_exact(self) -> bool:
        return all(c.is_exact() for c in self.coeffs)

    @property
    def precision(self):
        precs = [c.precision for c in self.coeffs if c.precision is not None]
        return min(precs) if precs else None

    def frobenius(self):
        return self ** self.p

    def p_th_root(self):
        field = self.tower
        if _is_finite(field):
            return self ** (field.size // field.p)
        comps = self.p_components()
        zero = (0,) * field.rank
        if any(t != zero for t in comps):
            from .errors import NotAPthPower
            raise NotAPthPower(f"{self} is not a p-th power")
        return comps.get(zero, field.zero)

    def p_components(self) -> dict:
        field = self.tower
        if _is_finite(field):
            return {(): self.p_th_root()} if not self.is_zero() else {}
        if field.kind == ETALE:
            raise NotImplementedError("p-components over an etale extension of a non-perfect field")
        # x = sum_j c_j a^j and c_j = sum_theta y^p b^theta with b = a^p
        out: dict = {}
        idx = field.index
        a = field.gen
        for j, c in enumerate(field_coeffs(self)):
            for theta, y in c.p_components().items():
                piece = field(y) * a ** theta[idx]
                key = theta[:idx] + (j,) + theta[idx + 1:]
                out[key] = out[key] + piece if key in out else piece
        return {k: v for k, v in out.items() if not v.is_zero()}

    def partial(self, i: int):
        field = self.tower
        if not 0 <= i < field.rank:
            raise IndexError(f"p-basis index {i} out of range")
        cs = self.coeffs
        if field.kind == RADICIAL and i == field.index:
            # base coefficients depend on b = a^p only
            return field.element([c * j for j, c in enumerate(cs)][1:])
        own = field.element([c.partial(i) for c in cs])
        if field.kind == RADICIAL:
            return own
        slope = field.element([c * j for j, c in enumerate(cs)][1:])
        return own + slope * field._theta_partial(i)

    def _fmt(self):
        name = self.tower.name
        parts = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = str(c)
            mono = "" if j == 0 else (name if j == 1 else f"{name}^{j}")
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                if " " in cs or "/" in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts) if parts else "0"


def format_polynomial(coeffs, var: str) -> str:
    """sum c_i var^i, highest degree first."""
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c.is_zero():
            continue
        cs = str(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        else:
            parts.append(f"({cs})*{mono}" if " " in cs or "/" in cs else f"{cs}*{mono}")
    return " + ".join(parts) if parts else "0"


def field_coeffs(x: ExtElement) -> tuple:
    """Coordinates of x over 1, a, ..., a^(n-1)."""
    return x.coeffs


def etale_extension(base, name: str, minpoly) -> ExtensionField:
    return ExtensionField(base, name, minpoly, ETALE)


def radicial_extension(base, name: str, over: str) -> ExtensionField:
    """k(a) with a^p = b for the p-basis element named ``over``."""
    idx = list(base.pbasis).index(over)
    p = base.p
    minpoly = [-base.pbasis_element(idx)] + [0] * (p - 1) + [1]
    return ExtensionField(base, name, minpoly, RADICIAL, idx)


def regular_trace(x: ExtElement) -> FieldElement:
    """Trace of the multiplication-by-x matrix on the basis 1, a, ..., a^(n-1)."""
    field = x.tower
    total = field.base.zero
    basis = [field.gen ** j for j in range(field.degree)]
    for j, v in enumerate(basis):
        total = total + (x * v).coeffs[j]
    return total
