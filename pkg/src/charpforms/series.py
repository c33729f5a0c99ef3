"""Truncated multivariate power series over a finite field.

A :class:`SeriesRing` fixes the variables, integer weights and a bound: a
series is known modulo the monomials of weighted degree >= bound.  With unit
weights this is truncation by total degree, the user-facing model.  Weighted
rings are used internally where a different grading contracts.

Coefficients of GF(p^e) are stored as their F_p-coordinate vectors, so a
series is a dense integer array of shape ``box + (e,)`` and products are
convolutions.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product as iproduct

import numpy as np
from scipy.signal import fftconvolve

from .finite_field import GaloisField


# below this many monomials in one factor, shifted sums beat an FFT
_SPARSE_TERMS = 24


class SeriesRing:
    """F_q[[v_1, ..., v_n]] modulo weighted degree >= bound.

    The first ``n_coeff`` variables generate the maximal ideal of the
    coefficient ring A (e.g. ``u`` in F_q[[u]]); the last one is the
    distinguished variable T; the rest are the X variables.
    """

    def __init__(self, field: GaloisField, names, bound: int, n_coeff: int = 0, weights=None):
        names = tuple(names)
        if not names:
            raise ValueError("a series ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"variable names are not distinct: {names}")
        if bound < 1:
            raise ValueError("the truncation order must be positive")
        if not 0 <= n_coeff < len(names):
            raise ValueError("the distinguished variable cannot be a coefficient variable")
        weights = tuple(weights) if weights is not None else (1,) * len(names)
        if len(weights) != len(names) or min(weights) < 1:
            raise ValueError("weights must be positive, one per variable")
        self.field = field
        self.names = names
        self.bound = bound
        self.n_coeff = n_coeff
        self.weights = weights

    @classmethod
    def over(cls, q: int, names, D: int, n_coeff: int = 0) -> "SeriesRing":
        from .finite_field import prime_power
        p, e = prime_power(q)
        return cls(GaloisField(p, e), names, D, n_coeff)

    # -- structure ---------------------------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def D(self) -> int:
        return self.bound

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def t_index(self) -> int:
        return self.nvars - 1

    @property
    def coeff_vars(self) -> tuple[str, ...]:
        return self.names[:self.n_coeff]

    @property
    def x_vars(self) -> tuple[str, ...]:
        return self.names[self.n_coeff:-1]

    @property
    def t_var(self) -> str:
        return self.names[-1]

    def _key(self):
        return (self.field, self.names, self.bound, self.n_coeff, self.weights)

    def __eq__(self, other):
        return isinstance(other, SeriesRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __str__(self):
        base = f"GF({self.field.q})"
        if self.n_coeff:
            base += f"[[{','.join(self.coeff_vars)}]]"
        rest = ",".join(self.names[self.n_coeff:])
        s = f"{base}[[{rest}]] D={self.bound}"
        if any(w != 1 for w in self.weights):
            s += f" weights={self.weights}"
        return s

    def __repr__(self):
        return f"SeriesRing({self})"

    def with_bound(self, bound: int, weights=None) -> "SeriesRing":
        return SeriesRing(self.field, self.names, bound, self.n_coeff,
                          self.weights if weights is None else weights)

    @cached_property
    def box(self) -> tuple[int, ...]:
        return tuple(-(-self.bound // w) for w in self.weights)

    @cached_property
    def mask(self) -> np.ndarray:
        grids = np.indices(self.box)
        wdeg = sum(w * g for w, g in zip(self.weights, grids))
        return (wdeg < self.bound)[..., None]

    @cached_property
    def total_degree(self) -> np.ndarray:
        return sum(np.indices(self.box))

    # -- element construction ------------------------------------------------------

    def _empty(self) -> np.ndarray:
        return np.zeros(self.box + (self.field.e,), dtype=np.int64)

    def zero(self) -> "TruncatedSeries":
        return TruncatedSeries(self, self._empty())

    def one(self) -> "TruncatedSeries":
        return self.constant(1)

    def constant(self, code: int) -> "TruncatedSeries":
        return self.monomial((0,) * self.nvars, code)

    def monomial(self, exps, code: int = 1) -> "TruncatedSeries":
        arr = self._empty()
        exps = tuple(exps)
        if self._fits(exps):
            arr[exps] = self.field.to_vector(code)
        return TruncatedSeries(self, arr)

    def gen(self, name: str) -> "TruncatedSeries":
        i = self.names.index(name)
        return self.monomial(tuple(1 if j == i else 0 for j in range(self.nvars)))

    def from_terms(self, terms: dict) -> "TruncatedSeries":
        """Series from {exponent tuple: field code}; terms beyond the bound are dropped."""
        arr = self._empty()
        for exps, code in terms.items():
            exps = tuple(exps)
            if self._fits(exps):
                arr[exps] = (arr[exps] + self.field.to_vector(code)) % self.p
        return TruncatedSeries(self, arr)

    def _fits(self, exps) -> bool:
        return all(e >= 0 for e in exps) and sum(w * e for w, e in zip(self.weights, exps)) < self.bound

    def convert(self, x: "TruncatedSeries") -> "TruncatedSeries":
        """Re-truncate x into this ring (same variables); stored terms are taken as exact."""
        if x.ring.names != self.names or x.ring.field != self.field:
            raise ValueError("series rings differ in variables or coefficients")
        arr = self._empty()
        sl = tuple(slice(0, min(a, b)) for a, b in zip(self.box, x.ring.box))
        arr[sl] = x.data[sl]
        return TruncatedSeries(self, arr * self.mask)

    # -- arithmetic on arrays ---------------------------------------------------------

    def _clean(self, arr) -> np.ndarray:
        return (arr % self.p) * self.mask

    def _fold_field_axis(self, arr) -> np.ndarray:
        """Reduce the coefficient axis of length 2e-1 modulo the field's modulus."""
        e, m, p = self.field.e, self.field.modulus, self.p
        for j in range(arr.shape[-1] - 1, e - 1, -1):
            top = arr[..., j]
            if not top.any():
                continue
            for i in range(e):
                if m[i]:
                    arr[..., j - e + i] -= top * m[i]
            arr[..., j] = 0
        return arr[..., :e] % p

    def _mul_arrays(self, a, b) -> np.ndarray:
        support_a, support_b = a.any(axis=-1), b.any(axis=-1)
        na, nb = int(support_a.sum()), int(support_b.sum())
        if min(na, nb) <= _SPARSE_TERMS:
            small, support, big = (a, support_a, b) if na <= nb else (b, support_b, a)
            return self._sparse_mul(small, support, big)
        bound = (self.p - 1) ** 2 * int(np.prod(self.box)) * self.field.e
        if bound < 2 ** 45:
            full = np.rint(fftconvolve(a, b)).astype(np.int64)
        else:  # pragma: no cover - exact fallback for very large rings
            full = _direct_convolve(a, b)
        full %= self.p
        full = self._fold_field_axis(full)
        sl = tuple(slice(0, n) for n in self.box)
        return self._clean(full[sl])

    def _sparse_mul(self, small, support, big) -> np.ndarray:
        """Product as a sum of shifted copies of ``big``, one per monomial of ``small``."""
        e = self.field.e
        out = np.zeros(self.box + (2 * e - 1,), dtype=np.int64)
        for idx in zip(*np.nonzero(support)):
            dst = tuple(slice(i, None) for i in idx)
            src = tuple(slice(0, n - i) for i, n in zip(idx, self.box))
            for j, c in enumerate(small[idx]):
                if c:
                    out[dst + (slice(j, j + e),)] += int(c) * big[src]
        out %= self.p
        return self._clean(self._fold_field_axis(out))


def _direct_convolve(a, b):
    shape = tuple(x + y - 1 for x, y in zip(a.shape, b.shape))
    out = np.zeros(shape, dtype=object)
    for idx in zip(*np.nonzero(a)):
        sl = tuple(slice(i, i + n) for i, n in zip(idx, b.shape))
        out[sl] += int(a[idx]) * b.astype(object)
    return out.astype(np.int64)


class TruncatedSeries:
    __slots__ = ("ring", "data")

    def __init__(self, ring: SeriesRing, data: np.ndarray):
        self.ring = ring
        self.data = data

    # -- access ------------------------------------------------------------------

    def terms(self) -> dict:
        """{exponent tuple: field code} for the nonzero coefficients."""
        r = self.ring
        out = {}
        nz = np.nonzero(self.data.any(axis=-1))
        weights = [r.p ** i for i in range(r.field.e)]
        for idx in zip(*nz):
            vec = self.data[idx]
            out[tuple(int(i) for i in idx)] = int(sum(int(c) * w for c, w in zip(vec, weights)))
        return out

    def coefficient(self, exps) -> int:
        exps = tuple(exps)
        if not self.ring._fits(exps):
            raise IndexError(f"monomial {exps} is beyond the truncation")
        vec = self.data[exps]
        return int(sum(int(c) * self.ring.p ** i for i, c in enumerate(vec)))

    @property
    def constant_code(self) -> int:
        return self.coefficient((0,) * self.ring.nvars)

    def is_zero(self) -> bool:
        return not self.data.any()

    def is_unit(self) -> bool:
        return self.constant_code != 0

    def valuation(self) -> int | None:
        """Lowest total degree of a nonzero term (None for zero)."""
        nz = self.data.any(axis=-1)
        if not nz.any():
            return None
        return int(self.ring.total_degree[nz].min())

    def in_maximal_ideal(self) -> bool:
        return self.constant_code == 0

    # -- arithmetic ----------------------------------------------------------------

    def _other(self, other):
        if isinstance(other, int):
            return self.ring.constant(self.ring.field.from_int(other))
        if isinstance(other, TruncatedSeries):
            if other.ring != self.ring:
                raise ValueError(f"series from {other.ring} and {self.ring} do not mix")
            return other
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return TruncatedSeries(self.ring, (self.data + other.data) % self.ring.p)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.ring, (-self.data) % self.ring.p)

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return TruncatedSeries(self.ring, (self.data - other.data) % self.ring.p)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return TruncatedSeries(self.ring, self.ring._mul_arrays(self.data, other.data))

    __rmul__ = __mul__

    def scale(self, code: int) -> "TruncatedSeries":
        return self * self.ring.constant(code)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inv(self) -> "TruncatedSeries":
        """Inverse of a unit by Newton iteration (doubling the known weighted degree)."""
        c0 = self.constant_code
        if c0 == 0:
            raise ZeroDivisionError(f"{self} is not a unit")
        ring = self.ring
        y = ring.constant(ring.field.inv(c0))
        two = ring.constant(ring.field.from_int(2))
        known = 1
        while known < ring.bound:
            y = y * (two - self * y)
            known *= 2
        return y

    def __truediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def frobenius(self) -> "TruncatedSeries":
        """x^p: exponents times p, coefficients raised to the p-th power."""
        ring = self.ring
        out = {}
        for exps, code in self.terms().items():
            out[tuple(ring.p * e for e in exps)] = ring.field.frobenius(code)
        return ring.from_terms(out)

    def __eq__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return bool(np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.ring, self.data.tobytes()))

    # -- views along T -------------------------------------------------------------

    def t_degree(self) -> int | None:
        nz = self.data.any(axis=tuple(i for i in range(self.data.ndim) if i != self.ring.t_index))
        idx = np.nonzero(nz)[0]
        return int(idx[-1]) if idx.size else None

    def t_truncate(self, k: int) -> "TruncatedSeries":
        """Terms of T-degree < k."""
        arr = self.data.copy()
        sl = [slice(None)] * arr.ndim
        sl[self.ring.t_index] = slice(k, None)
        arr[tuple(sl)] = 0
        return TruncatedSeries(self.ring, arr)

    def t_shift_down(self, k: int, target: SeriesRing | None = None) -> "TruncatedSeries":
        """Sum over T-degree >= k of c T^(i-k), re-truncated into ``target``."""
        target = target or self.ring
        ti = self.ring.t_index
        sl = [slice(None)] * self.data.ndim
        sl[ti] = slice(k, None)
        moved = self.data[tuple(sl)]
        arr = target._empty()
        fit = tuple(slice(0, min(a, b)) for a, b in zip(target.box + (target.field.e,), moved.shape))
        arr[fit] = moved[fit]
        return TruncatedSeries(target, arr * target.mask)

    def t_shift_up(self, k: int) -> "TruncatedSeries":
        return self * self.ring.monomial(tuple(k if i == self.ring.t_index else 0 for i in range(self.ring.nvars)))

    def reduce_mod_ideal(self) -> list[int]:
        """Image modulo (m_A, X): the T-coefficients (field codes) of the residue series."""
        ring = self.ring
        sl = tuple(0 for _ in range(ring.nvars - 1))
        line = self.data[sl]
        return [int(sum(int(c) * ring.p ** i for i, c in enumerate(v))) for v in line]

    def set_coeff_vars_zero(self) -> "TruncatedSeries":
        arr = self.data.copy()
        for i in range(self.ring.n_coeff):
            sl = [slice(None)] * arr.ndim
            sl[i] = slice(1, None)
            arr[tuple(sl)] = 0
        return TruncatedSeries(self.ring, arr)

    def substitute(self, var: str, value: "TruncatedSeries") -> "TruncatedSeries":
        """Replace ``var`` by ``value`` (Horner in the variable)."""
        ring = self.ring
        i = ring.names.index(var)
        n = ring.box[i]
        result = ring.zero()
        for a in range(n - 1, -1, -1):
            sl = [slice(None)] * self.data.ndim
            sl[i] = slice(a, a + 1)
            piece = np.zeros_like(self.data)
            piece_sl = list(sl)
            piece_sl[i] = slice(0, 1)
            piece[tuple(piece_sl)] = self.data[tuple(sl)]
            result = result * value + TruncatedSeries(ring, piece)
        return result

    # -- printing -------------------------------------------------------------------

    def __str__(self):
        terms = self.terms()
        if not terms:
            return "0"
        ring = self.ring
        parts = []
        for exps in sorted(terms, key=lambda m: (sum(m), tuple(-e for e in m))):
            code = terms[exps]
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(ring.names, exps) if e]
            cs = ring.field.format(code)
            if not factors:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(factors))
            else:
                if " " in cs:
                    cs = f"({cs})"
                parts.append("*".join([cs] + factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"<{self.ring}: {self}>"


def all_monomials(ring: SeriesRing):
    for exps in iproduct(*(range(n) for n in ring.box)):
        if ring._fits(exps):
            yield exps
