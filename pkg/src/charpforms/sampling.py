"""Random elements, forms and series for property checks."""

from __future__ import annotations

import random
from itertools import combinations

from .extensions import ExtElement, ExtensionField
from .forms import DifferentialForm
from .series import SeriesRing, TruncatedSeries, all_monomials
from .tower import FieldTower, GFElement, RationalElement


def random_poly(tower: FieldTower, rng: random.Random, max_deg: int = 2, density: float = 0.5):
    R = tower.poly_ring
    n = len(tower.base.variables)
    terms = {}
    for exps in _exponents(n, max_deg):
        if rng.random() < density:
            terms[exps] = rng.randrange(tower.p)
    return R.from_dict(terms)


def _exponents(n, max_deg):
    if n == 0:
        yield ()
        return
    for e in range(max_deg + 1):
        for rest in _exponents(n - 1, max_deg - e):
            yield (e,) + rest


def random_element(tower, rng: random.Random, low: int = -3, high: int = 3, max_deg: int = 2,
                   density: float = 0.6, nonzero: bool = False):
    """A random exact element: Laurent polynomials with exponents in [low, high]."""
    if isinstance(tower, ExtensionField):
        x = ExtElement(tower, tuple(random_element(tower.base, rng, low, high, max_deg, density)
                                    for _ in range(tower.degree)))
    elif tower.height:
        terms = {}
        for e in range(low, high + 1):
            if rng.random() < density:
                terms[e] = random_element(tower.parent, rng, low, high, max_deg, density)
        x = tower.laurent(terms)
    elif tower.is_finite_base:
        x = GFElement(tower, rng.randrange(tower.base.q))
    else:
        num = random_poly(tower, rng, max_deg, density)
        den = random_poly(tower, rng, max_deg, density)
        if not den:
            den = tower.poly_ring.constant(1)
        x = RationalElement._make(tower, num, den)
    if nonzero and x.is_zero():
        return random_element(tower, rng, low, high, max_deg, density, nonzero)
    return x


def random_polynomial_element(tower: FieldTower, rng: random.Random, max_deg: int = 3, density: float = 0.5):
    """Like random_element but with polynomial (denominator-free) base coefficients."""
    if tower.height:
        terms = {e: random_polynomial_element(tower.parent, rng, max_deg, density)
                 for e in range(-max_deg, max_deg + 1) if rng.random() < density}
        return tower.laurent(terms)
    if tower.is_finite_base:
        return GFElement(tower, rng.randrange(tower.base.q))
    return RationalElement._make(tower, random_poly(tower, rng, max_deg, density),
                                  tower.poly_ring.constant(1))


def random_form(field, degree: int, rng: random.Random, **kw) -> DifferentialForm:
    coeffs = {}
    for s in combinations(range(field.rank), degree):
        if rng.random() < 0.8:
            coeffs[s] = random_element(field, rng, **kw)
    return DifferentialForm(field, degree, coeffs)


def random_series(ring: SeriesRing, rng: random.Random, density: float = 0.3, in_ideal: bool = False,
                  max_degree: int | None = None) -> TruncatedSeries:
    terms = {}
    for exps in all_monomials(ring):
        if in_ideal and not any(exps):
            continue
        if max_degree is not None and sum(exps) > max_degree:
            continue
        if rng.random() < density:
            terms[exps] = rng.randrange(ring.field.q)
    return ring.from_terms(terms)


def random_regular_series(ring: SeriesRing, rng: random.Random, k: int, density: float = 0.15,
                          max_degree: int | None = None) -> TruncatedSeries:
    """A series that is exactly k-regular: residue along T is a unit times T^k."""
    terms = {}
    t = ring.t_index
    for exps in all_monomials(ring):
        if max_degree is not None and sum(exps) > max_degree:
            continue
        on_axis = all(e == 0 for i, e in enumerate(exps) if i != t)
        if on_axis and exps[t] < k:
            continue
        if rng.random() < density:
            terms[exps] = rng.randrange(ring.field.q)
    axis = tuple(k if i == t else 0 for i in range(ring.nvars))
    terms[axis] = rng.randrange(1, ring.field.q)
    return ring.from_terms(terms)


def random_laurent_polynomial(tower: FieldTower, rng: random.Random, low: int = -6, high: int = 3,
                              density: float = 0.5):
    return random_element(tower, rng, low, high, density=density)


__all__ = [
    "random_element", "random_form", "random_series", "random_regular_series",
    "random_polynomial_element", "random_laurent_polynomial",
]
