"""Finite fields GF(p^e) on integer codes.

An element of GF(p^e) = F_p[w]/(m(w)) is stored as the integer whose base-p
digits are its coefficients in 1, w, ..., w^(e-1).  All arithmetic is table
driven for the small fields used here.
"""

from __future__ import annotations

from functools import cached_property, lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


# -- dense univariate polynomials over F_p, lists low -> high ------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pmod(out, m, p)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(modulus: list[int] | tuple[int, ...], p: int) -> bool:
    """Rabin-style test: no factor of degree <= e/2 divides the modulus."""
    m = _trim([c % p for c in modulus])
    e = len(m) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    x = [0, 1]
    power = x
    for _ in range(e // 2):
        # power <- power^p mod m
        acc = [1]
        base = power
        k = p
        while k:
            if k & 1:
                acc = _pmulmod(acc, base, m, p)
            base = _pmulmod(base, base, m, p)
            k >>= 1
        power = acc
        diff = list(power) + [0] * max(0, 2 - len(power))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(m, diff, p)) > 1:
            return False
    return True


@lru_cache(maxsize=None)
def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree e (by digit code)."""
    if e == 1:
        return (0, 1)
    for code in range(p ** e):
        low = [(code // p ** i) % p for i in range(e)]
        cand = low + [1]
        if cand[0] and is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")


class GaloisField:
    """GF(p^e) with elements encoded as integers in range(q)."""

    def __init__(self, p: int, e: int = 1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be positive")
        if modulus is None:
            modulus = default_modulus(p, e)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if e > 1 and not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.e = e
        self.q = p ** e
        self.modulus = modulus

    def __repr__(self):
        return f"GaloisField({self.p}, {self.e}, {self.modulus})"

    def __eq__(self, other):
        return isinstance(other, GaloisField) and (self.p, self.e, self.modulus) == (
            other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    # -- encoding ---------------------------------------------------------------

    def to_vector(self, a: int) -> list[int]:
        return [(a // self.p ** i) % self.p for i in range(self.e)]

    def from_vector(self, vec) -> int:
        vec = _pmod(list(vec), list(self.modulus), self.p)
        return sum(c * self.p ** i for i, c in enumerate(vec))

    @property
    def generator(self) -> int:
        """Code of the root w of the modulus (w itself when e > 1)."""
        if self.e == 1:
            return (-self.modulus[0]) % self.p
        return self.p

    # -- tables -------------------------------------------------------------------

    @cached_property
    def _add_table(self):
        if self.e == 1 or self.q > 1024:
            return None
        q, vec = self.q, [self.to_vector(a) for a in range(self.q)]
        p = self.p
        return [[sum(((x + y) % p) * p ** i for i, (x, y) in enumerate(zip(vec[a], vec[b])))
                 for b in range(q)] for a in range(q)]

    @cached_property
    def _exp_log(self):
        q = self.q
        m = list(self.modulus)
        for g in range(2, q) if q > 2 else [1]:
            exp = [0] * (q - 1)
            cur = [1]
            gv = self.to_vector(g)
            seen = set()
            ok = True
            for k in range(q - 1):
                code = sum(c * self.p ** i for i, c in enumerate(cur))
                if code in seen:
                    ok = False
                    break
                seen.add(code)
                exp[k] = code
                cur = _pmulmod(cur, gv, m, self.p)
            if ok:
                log = [0] * q
                for k, c in enumerate(exp):
                    log[c] = k
                return exp, log
        raise AssertionError("no primitive element")

    # -- arithmetic ----------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        t = self._add_table
        if t is not None:
            return t[a][b]
        return self.from_vector([x + y for x, y in zip(self.to_vector(a), self.to_vector(b))])

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_vector([-x for x in self.to_vector(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._exp_log
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.e == 1:
            return pow(a, -1, self.p)
        exp, log = self._exp_log
        return exp[(-log[a]) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if n == 0 else 0
        if self.e == 1:
            return pow(a, n % (self.p - 1), self.p)
        exp, log = self._exp_log
        return exp[(log[a] * n) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        return n % self.p

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def root(self, a: int) -> int:
        """The unique p-th root (GF(q) is perfect)."""
        return self.pow(a, self.q // self.p)

    def trace(self, a: int, sub_degree: int = 1) -> int:
        """Tr_{GF(q)/GF(p^sub_degree)}(a), as a code of GF(q) lying in the subfield."""
        if self.e % sub_degree:
            raise ValueError(f"GF({self.p}^{sub_degree}) is not a subfield of GF({self.q})")
        qs = self.p ** sub_degree
        total, cur = 0, a
        for _ in range(self.e // sub_degree):
            total = self.add(total, cur)
            cur = self.pow(cur, qs)
        return total

    def elements(self) -> range:
        return range(self.q)

    def format(self, a: int, name: str = "w") -> str:
        if self.e == 1:
            return str(a)
        vec = self.to_vector(a)
        parts = []
        for i in range(self.e - 1, -1, -1):
            c = vec[i]
            if not c:
                continue
            mono = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"
