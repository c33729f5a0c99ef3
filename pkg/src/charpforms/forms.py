"""Absolute differential forms in the dlog basis.

A degree-i form over a field with p-basis b_0, ..., b_{r-1} is stored as a map
from sorted index tuples S (|S| = i) to coefficients, meaning

    sum_S c_S * dlog(b_{S[0]}) ^ ... ^ dlog(b_{S[-1]}).

Any object with the field protocol works as the ground field: ``p``, ``rank``,
``pbasis``, ``pbasis_element(i)``, ``zero``, ``one``, ``contains`` and
``__call__`` for coercion, with elements providing ``partial(i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .tower import FieldElement, p_component_decompose


def _merge_sign(s: tuple, u: tuple) -> int | None:
    """Sign of the shuffle that sorts s + u, or None when they overlap."""
    if set(s) & set(u):
        return None
    inversions = sum(1 for a in s for b in u if a > b)
    return -1 if inversions % 2 else 1


class DifferentialForm:
    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field, degree: int, coeffs: dict | None = None):
        if degree < 0:
            raise ValueError(f"negative degree {degree}")
        clean = {}
        for s, c in (coeffs or {}).items():
            s = tuple(s)
            if len(s) != degree or list(s) != sorted(set(s)) or (s and not 0 <= s[0] <= s[-1] < field.rank):
                raise ValueError(f"bad basis index {s} for a degree-{degree} form")
            c = field(c)
            if not c.is_zero() or not c.is_exact():  # an inexact zero still records what is unknown
                clean[s] = c
        self.field = field
        self.degree = degree
        self.coeffs = clean

    # -- construction ------------------------------------------------------------

    @classmethod
    def zero(cls, field, degree: int) -> "DifferentialForm":
        return cls(field, degree, {})

    @classmethod
    def basis(cls, field, indices: Iterable[int], coefficient=1) -> "DifferentialForm":
        """coefficient * dlog(b_i1) ^ ... for indices in any order (sign applied)."""
        indices = list(indices)
        if len(set(indices)) != len(indices):
            return cls.zero(field, len(indices))
        inversions = sum(1 for i in range(len(indices)) for j in range(i + 1, len(indices))
                         if indices[i] > indices[j])
        c = field(coefficient)
        if inversions % 2:
            c = -c
        return cls(field, len(indices), {tuple(sorted(indices)): c})

    @classmethod
    def top(cls, field, coefficient) -> "DifferentialForm":
        """coefficient * dlog(b_0) ^ ... ^ dlog(b_{r-1})."""
        return cls(field, field.rank, {tuple(range(field.rank)): coefficient})

    # -- arithmetic --------------------------------------------------------------

    def _coerce_form(self, other) -> "DifferentialForm | None":
        if isinstance(other, DifferentialForm):
            if other.field != self.field:
                if self.field.contains(other.field):
                    return DifferentialForm(self.field, other.degree, other.coeffs)
                from .errors import TowerMismatch
                raise TowerMismatch("forms over different fields")
            return other
        if isinstance(other, int):
            return DifferentialForm(self.field, 0, {(): other})
        if isinstance(other, FieldElement):
            fld = self.field if self.field.contains(other.tower) else other.tower
            return DifferentialForm(fld, 0, {(): other})
        return None

    def _check_degree(self, other):
        if other.degree != self.degree:
            raise ValueError(f"cannot add forms of degrees {self.degree} and {other.degree}")

    def __add__(self, other):
        other = self._coerce_form(other)
        if other is None:
            return NotImplemented
        if other.field != self.field:
            return other + self
        self._check_degree(other)
        acc = dict(self.coeffs)
        for s, c in other.coeffs.items():
            acc[s] = acc[s] + c if s in acc else c
        return DifferentialForm(self.field, self.degree, acc)

    __radd__ = __add__

    def __neg__(self):
        return DifferentialForm(self.field, self.degree, {s: -c for s, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce_form(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce_form(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, (int, FieldElement, DifferentialForm)):
            return NotImplemented
        return self.wedge(other)

    __rmul__ = __mul__

    def wedge(self, other) -> "DifferentialForm":
        other = self._coerce_form(other)
        if other is None:
            raise TypeError("wedge needs forms or field elements")
        if other.field != self.field:
            return DifferentialForm(other.field, self.degree, self.coeffs).wedge(other)
        degree = self.degree + other.degree
        if degree > self.field.rank:
            return DifferentialForm(self.field, degree)
        acc: dict = {}
        for s, c in self.coeffs.items():
            for u, e in other.coeffs.items():
                sign = _merge_sign(s, u)
                if sign is None:
                    continue
                key = tuple(sorted(s + u))
                term = c * e if sign > 0 else -(c * e)
                acc[key] = acc[key] + term if key in acc else term
        return DifferentialForm(self.field, degree, acc)

    def __xor__(self, other):
        return self.wedge(other)

    def __rxor__(self, other):
        other = self._coerce_form(other)
        if other is None:
            return NotImplemented
        return other.wedge(self)

    def __eq__(self, other):
        if isinstance(other, (int, FieldElement)):
            if self.degree:
                return False
            other = self._coerce_form(other)
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        if other.field != self.field or other.degree != self.degree:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs.values())

    def coefficient(self, indices) -> FieldElement:
        return self.coeffs.get(tuple(indices), self.field.zero)

    def truncate(self, n: int) -> "DifferentialForm":
        return DifferentialForm(self.field, self.degree, {s: c.truncate(n) for s, c in self.coeffs.items()})

    def map_coefficients(self, fn, field=None) -> "DifferentialForm":
        field = field or self.field
        return DifferentialForm(field, self.degree, {s: fn(c) for s, c in self.coeffs.items()})

    # -- printing ----------------------------------------------------------------

    def __str__(self):
        if not self.coeffs:
            return "0"
        names = self.field.pbasis
        parts = []
        for s in sorted(self.coeffs):
            c = self.coeffs[s]
            cs = str(c)
            basis = " ^ ".join(f"dlog({names[i]})" for i in s)
            if not basis:
                parts.append(cs)
            elif cs == "1":
                parts.append(basis)
            else:
                if " " in cs or "/" in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{basis}")
        return " + ".join(parts)

    def __repr__(self):
        return f"<{self.degree}-form over {self.field}: {self}>"


def as_form(x, field=None) -> DifferentialForm:
    """Promote a field element (or int, given a field) to a degree-0 form."""
    if isinstance(x, DifferentialForm):
        return x
    if field is None:
        field = x.tower
    return DifferentialForm(field, 0, {(): x})


# -- d and dlog ------------------------------------------------------------------------

def _gradient(x: FieldElement, field) -> list[FieldElement]:
    """[b_i * dx/db_i]: the dlog-coordinates of dx."""
    return [field.pbasis_element(i) * x.partial(i) for i in range(field.rank)]


def d(omega) -> DifferentialForm:
    """Exterior derivative; d(c dlog b_S) = sum_i b_i dc/db_i dlog b_i ^ dlog b_S."""
    omega = as_form(omega)
    field = omega.field
    degree = omega.degree + 1
    if degree > field.rank:
        return DifferentialForm(field, degree)
    acc: dict = {}
    for s, c in omega.coeffs.items():
        for i in range(field.rank):
            if i in s:
                continue
            term = field.pbasis_element(i) * c.partial(i)
            if term.is_zero():
                continue
            if sum(1 for j in s if j < i) % 2:
                term = -term
            key = tuple(sorted(s + (i,)))
            acc[key] = acc[key] + term if key in acc else term
    return DifferentialForm(field, degree, acc)


def dlog(x: FieldElement, precision: int | None = None) -> DifferentialForm:
    """dx / x in the dlog basis."""
    if x.is_zero():
        raise ZeroDivisionError("dlog of zero")
    field = x.tower
    inv = x.inv(precision) if precision is not None else x.inv()
    return DifferentialForm(field, 1, {(i,): g * inv for i, g in enumerate(_gradient(x, field))})


def express_in_basis(terms, field=None) -> DifferentialForm:
    """sum of x * dlog(y_1) ^ ... ^ dlog(y_i) over (x, [y_1, ..., y_i]) pairs, in dlog-basis coordinates."""
    total = None
    for x, ys in terms:
        fld = field or (x.tower if isinstance(x, FieldElement) else ys[0].tower)
        form = as_form(fld(x), fld)
        for y in ys:
            if fld(y).is_zero():
                raise ZeroDivisionError("dlog of zero")
            form = form.wedge(dlog(fld(y)))
        total = form if total is None else total + form
    if total is None:
        raise ValueError("express_in_basis needs at least one term")
    return total


# -- top degree ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuotientFormTop:
    """Class of rep * dlog(b_0) ^ ... ^ dlog(b_{r-1}) modulo exact forms; rep has only a theta = 0 part."""

    field: object
    rep: FieldElement

    def form(self) -> DifferentialForm:
        return DifferentialForm.top(self.field, self.rep)

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __add__(self, other: "QuotientFormTop") -> "QuotientFormTop":
        return reduce_mod_exact(self.form() + other.form())

    def __eq__(self, other):
        return isinstance(other, QuotientFormTop) and self.field == other.field and self.rep == other.rep

    def __hash__(self):
        return hash(self.rep)

    def __str__(self):
        return str(self.form())


def _top_coefficient(omega: DifferentialForm) -> FieldElement:
    r = omega.field.rank
    if omega.degree != r or r < 1:
        raise ValueError(f"expected a top-degree form (degree {r} >= 1), got degree {omega.degree}")
    return omega.coefficient(range(r))


def theta_zero_part(x: FieldElement) -> FieldElement:
    """x_0^p, the k^p-part of x in the decomposition over the monomials b^theta."""
    dec = p_component_decompose(x)
    return dec.get(dec.zero_theta()).frobenius()


def reduce_mod_exact(omega: DifferentialForm) -> QuotientFormTop:
    """Normal form of a top-degree form modulo d of (r-1)-forms: keep the theta = 0 part."""
    lam = _top_coefficient(omega)
    return QuotientFormTop(omega.field, theta_zero_part(lam))


def cartier_inverse_top(omega: DifferentialForm) -> QuotientFormTop:
    """lambda dlog(b) -> class of lambda^p dlog(b)."""
    lam = _top_coefficient(omega)
    return QuotientFormTop(omega.field, lam.frobenius())


def exact_primitive(field, theta: tuple, i: int) -> DifferentialForm:
    """omega = b^theta * dlog of all p-basis elements except b_i (an (r-1)-form).

    Its derivative is (-1)^i * theta[i] * b^theta * dlog(b) with 0-based i.
    """
    r = field.rank
    mono = field.one
    for j, k in enumerate(theta):
        if k:
            mono = mono * field.pbasis_element(j) ** k
    rest = tuple(j for j in range(r) if j != i)
    return DifferentialForm(field, r - 1, {rest: mono})


def basis_forms(field, degree: int):
    for s in combinations(range(field.rank), degree):
        yield s
