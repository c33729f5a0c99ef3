"""Weierstrass division, preparation and regularization, plus two series solvers.

Series live in A[[X, T]] with A = F_q or F_q[[u, ...]], truncated by total
degree D (see :mod:`charpforms.series`).  Inputs are taken as exact
polynomials: division is carried out to full accuracy and the results are
reported modulo total degree D.

The division g = q f + r iterates q <- E^-1 * S(g - q * P) where f = P + T^k E,
deg_T P < k, and S(h) = (h - trunc_k h) / T^k.  Each pass raises the
(m, X)-adic order of the error, so it is run in the ring with weight k on the
variables of (m, X) and weight 1 on T, where the map does not lower degree;
weighted degree < k*D covers every monomial of total degree < D.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import NotSimpleRoot, TruncationTooSmall
from .series import SeriesRing, TruncatedSeries


class NotRegular(ValueError):
    """The series is not k-regular for any k below the truncation."""


def regularity_order(f: TruncatedSeries) -> int | None:
    """k with f = unit * T^k modulo (m_A, X), or None if undetermined below D."""
    line = f.reduce_mod_ideal()
    for k, c in enumerate(line):
        if c:
            return k
    return None


def _check_regular(f: TruncatedSeries, k: int | None) -> int:
    order = regularity_order(f)
    if order is None:
        raise NotRegular(f"{f} is not regular below degree {f.ring.D}")
    if k is not None and k != order:
        raise NotRegular(f"f is {order}-regular, not {k}-regular")
    return order


def _weighted_ring(ring: SeriesRing, k: int, extra: int = 0) -> SeriesRing:
    weights = tuple(1 if i == ring.t_index else k for i in range(ring.nvars))
    return ring.with_bound(k * ring.D + extra, weights)


SCHEDULES = ("fixed-point", "neumann")


def weierstrass_divide(g: TruncatedSeries, f: TruncatedSeries, k: int | None = None,
                       schedule: str = "fixed-point"):
    """(q, r) with g = q f + r, deg_T r < k, both modulo total degree D.

    ``schedule`` picks the iteration order: ``fixed-point`` re-solves for q
    each pass, ``neumann`` sums the correction series term by term.
    """
    ring = f.ring
    if g.ring != ring:
        raise ValueError("g and f must live in the same ring")
    k = _check_regular(f, k)
    if k == 0:
        return g * f.inv(), ring.zero()
    if schedule not in SCHEDULES:
        raise ValueError(f"unknown schedule {schedule!r}; expected one of {SCHEDULES}")
    W = _weighted_ring(ring, k)
    Wx = _weighted_ring(ring, k, extra=k)  # room for the T^k shift
    gx, fx = Wx.convert(g), Wx.convert(f)
    P = fx.t_truncate(k)
    E = fx.t_shift_down(k, W)
    M = E.inv()

    def step(h):  # h in W -> M * S(h * P) in W
        hp = Wx.convert(h) * P
        return M * hp.t_shift_down(k, W)

    q0 = M * gx.t_shift_down(k, W)
    # each pass lowers (bound - weighted order) + T-degree of the error by at least k,
    # so 2D + 1 passes always suffice
    passes = 2 * ring.D + 1
    if schedule == "fixed-point":
        q = q0
        for _ in range(passes):
            nxt = q0 - step(q)
            if nxt == q:
                break
            q = nxt
        else:  # pragma: no cover - the map contracts, so this is unreachable
            raise AssertionError("Weierstrass iteration did not converge")
    else:
        q, term = q0, q0
        for _ in range(passes):
            term = -step(term)
            if term.is_zero():
                break
            q = q + term
        else:  # pragma: no cover
            raise AssertionError("Neumann series did not terminate")
    r = (gx - Wx.convert(q) * P).t_truncate(k)
    return ring.convert(q), ring.convert(r)


@dataclass
class PreparedFactorization:
    """f = unit * poly with poly = T^k + sum_{i<k} p_i T^i distinguished."""

    unit: TruncatedSeries
    poly: TruncatedSeries
    order: int
    truncation: int

    def coefficients(self) -> list[TruncatedSeries]:
        """p_0, ..., p_{k-1}, 1 as series in the variables other than T."""
        ring = self.poly.ring
        out = []
        for i in range(self.order + 1):
            c = self.poly.t_shift_down(i).t_truncate(1)
            out.append(c)
        return out

    def is_distinguished(self) -> bool:
        """Every lower coefficient p_i lies in (m_A, X)."""
        return all(c.constant_code == 0 for c in self.coefficients()[:-1])


def weierstrass_prepare(f: TruncatedSeries, schedule: str = "fixed-point") -> PreparedFactorization:
    ring = f.ring
    k = _check_regular(f, None)
    tk = ring.monomial(tuple(k if i == ring.t_index else 0 for i in range(ring.nvars)))
    q, r = weierstrass_divide(tk, f, k, schedule)
    poly = tk - r
    unit = q.inv()
    if unit * poly != f:
        raise AssertionError("preparation failed to reproduce f")  # pragma: no cover
    return PreparedFactorization(unit, poly, k, ring.D)


def substitute_regularizing(f: TruncatedSeries, exponents) -> TruncatedSeries:
    """c(f) with c(X_i) = X_i + T^{N_i} (exponent 0 or None leaves X_i alone)."""
    ring = f.ring
    out = f
    for name, n in zip(ring.x_vars, exponents):
        if n:
            t_n = ring.monomial(tuple(n if i == ring.t_index else 0 for i in range(ring.nvars)))
            out = out.substitute(name, ring.gen(name) + t_n)
    return out


def regularize(f: TruncatedSeries, max_base: int | None = None):
    """Exponents (N_1, ..., N_n) and k with f(X + T^N) k-regular.

    The schedule tries N_i = B^(i) for B = 2, 3, ... (so (1, B, B^2, ...)), up
    to the truncation order.  Returns the identity (all zeros) if f is already
    regular.
    """
    ring = f.ring
    n = len(ring.x_vars)
    k = regularity_order(f)
    if k is not None:
        return (0,) * n, k
    if f.set_coeff_vars_zero().is_zero():
        raise ValueError("f vanishes modulo the maximal ideal of A")
    if n == 0:
        raise TruncationTooSmall(f"{f} is not regular below degree {ring.D} and has no X variables")
    top = max_base if max_base is not None else ring.D
    for base in range(2, top + 1):
        exps = tuple(base ** i for i in range(n))
        k = regularity_order(substitute_regularizing(f, exps))
        if k is not None:
            return exps, k
    raise TruncationTooSmall(f"no regularizing exponents with base <= {top} at truncation {ring.D}")


# -- Artin-Schreier -----------------------------------------------------------------

def artin_schreier_solve(a: TruncatedSeries, order: int | None = None) -> TruncatedSeries:
    """b in the maximal ideal with b - b^p = a modulo degree ``order``.

    b = a + a^p + a^(p^2) + ... stopping once the powers pass the order.
    """
    ring = a.ring
    M = ring.D if order is None else order
    if M > ring.D:
        raise ValueError(f"order {M} exceeds the truncation {ring.D}")
    if a.constant_code:
        raise ValueError("a must lie in the maximal ideal (zero constant term)")
    b, power = ring.zero(), a
    while not power.is_zero():
        v = power.valuation()
        if v is None or v >= M:
            break
        b = b + power
        power = power.frobenius()
    return _truncate_total(b, M)


def _truncate_total(x: TruncatedSeries, M: int) -> TruncatedSeries:
    if M >= x.ring.D:
        return x
    small = x.ring.with_bound(M)
    return x.ring.convert(small.convert(x))


def wp_series(b: TruncatedSeries) -> TruncatedSeries:
    return b - b.frobenius()


# -- Hensel lifting ------------------------------------------------------------------

def evaluate_poly(coeffs, x: TruncatedSeries) -> TruncatedSeries:
    """sum c_i x^i by Horner; coefficients may be series or field codes."""
    ring = x.ring
    acc = ring.zero()
    for c in reversed(list(coeffs)):
        c = c if isinstance(c, TruncatedSeries) else ring.constant(ring.field.from_int(c))
        acc = acc * x + c
    return acc


def derivative_poly(coeffs):
    out = []
    for i, c in enumerate(coeffs):
        if i:
            out.append(c * i if isinstance(c, TruncatedSeries) else c * i)
    return out


@dataclass
class HenselResult:
    root: TruncatedSeries
    valuations: list = field(default_factory=list)


def hensel_lift(coeffs, x0: TruncatedSeries, order: int | None = None, history: bool = False):
    """Newton's method x <- x - g(x)/g'(x) until g(x) = 0 modulo degree ``order``.

    Each step at least doubles the valuation of g(x) (asserted).  Raises
    NotSimpleRoot if g'(x0) is not a unit.
    """
    ring = x0.ring
    M = ring.D if order is None else order
    if M > ring.D:
        raise ValueError(f"order {M} exceeds the truncation {ring.D}")
    dcoeffs = derivative_poly(coeffs)
    if not evaluate_poly(coeffs, x0).in_maximal_ideal():
        raise ValueError("g(x0) is not in the maximal ideal")
    if not evaluate_poly(dcoeffs, x0).is_unit():
        raise NotSimpleRoot("g'(x0) is not a unit")
    x = x0
    vals = []
    while True:
        gx = _truncate_total(evaluate_poly(coeffs, x), M)
        v = gx.valuation()
        v = M if v is None else v
        if vals:
            assert v >= min(2 * vals[-1], M), f"Newton step did not double the valuation ({vals[-1]} -> {v})"
        vals.append(v)
        if v >= M:
            break
        x = x - gx * evaluate_poly(dcoeffs, x).inv()
    x = _truncate_total(x, M)
    return HenselResult(x, vals) if history else x


# -- p-th roots of principal units ------------------------------------------------------

@dataclass
class RootAttempt:
    u: TruncatedSeries
    v: TruncatedSeries | None

    @property
    def success(self) -> bool:
        return self.v is not None


@dataclass
class CongruenceReport:
    N: int
    attempts: list

    @property
    def successes(self) -> int:
        return sum(a.success for a in self.attempts)

    @property
    def all_passed(self) -> bool:
        return all(a.success for a in self.attempts)


def pth_root_series(u: TruncatedSeries) -> TruncatedSeries | None:
    """v with v^p = u modulo the truncation, or None if no such v exists.

    In characteristic p, v^p only has exponents divisible by p, so a root
    exists exactly when every other coefficient of u vanishes (the residue
    field is perfect, so the remaining coefficients have p-th roots).
    """
    ring = u.ring
    p = ring.p
    terms = u.terms()
    if any(e % p for exps in terms for e in exps):
        return None
    root = {tuple(e // p for e in exps): ring.field.root(c) for exps, c in terms.items()}
    v = ring.from_terms(root)
    if v.frobenius() != u:  # pragma: no cover - guaranteed by construction
        return None
    return v


def random_principal_unit(ring: SeriesRing, N: int, rng: random.Random, density: float = 0.5) -> TruncatedSeries:
    """1 + (random element of m^N)."""
    from .series import all_monomials
    terms = {(0,) * ring.nvars: 1}
    for exps in all_monomials(ring):
        if sum(exps) >= N and rng.random() < density:
            terms[exps] = rng.randrange(ring.field.q)
    return ring.from_terms(terms)


def unit_group_congruence_check(ring: SeriesRing, N: int, samples: int = 100, seed: int = 0,
                                units=None) -> CongruenceReport:
    """Try to write sampled u in 1 + m^N as p-th powers modulo the truncation."""
    rng = random.Random(seed)
    if units is None:
        units = [random_principal_unit(ring, N, rng) for _ in range(samples)]
    return CongruenceReport(N, [RootAttempt(u, pth_root_series(u)) for u in units])
