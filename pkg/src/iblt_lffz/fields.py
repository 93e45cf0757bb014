"""Small finite fields and prime utilities used by the constructions."""

from __future__ import annotations

import functools
import itertools
from math import isqrt

# Primitive polynomials over GF(2), degree ell, as bit masks (bit i = x^i).
# Primitivity is re-verified by check_primitive and by the test suite.
PRIMITIVE_POLY_GF2 = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: (1 << 14) | (1 << 10) | (1 << 6) | (1 << 1) | 1,
    15: (1 << 15) | (1 << 1) | 1,
    16: (1 << 16) | (1 << 12) | (1 << 3) | (1 << 1) | 1,
}


def is_prime(x: int) -> bool:
    if x < 2:
        return False
    if x < 4:
        return True
    if x % 2 == 0:
        return False
    for p in range(3, isqrt(x) + 1, 2):
        if x % p == 0:
            return False
    return True


def primes() -> "itertools.count":
    """Yields 2, 3, 5, 7, ..."""
    yield 2
    for cand in itertools.count(3, 2):
        if is_prime(cand):
            yield cand


def smallest_primes(k: int) -> list:
    return list(itertools.islice(primes(), k))


def next_prime_at_least(x: int) -> int:
    for p in primes():
        if p >= x:
            return p
    raise AssertionError


def factorize(x: int) -> dict:
    """Prime factorization by trial division; fine for the sizes here."""
    out = {}
    d = 2
    while d * d <= x:
        while x % d == 0:
            out[d] = out.get(d, 0) + 1
            x //= d
        d += 1
    if x > 1:
        out[x] = out.get(x, 0) + 1
    return out


def prime_power(q: int):
    """(p, e) with q = p^e, or None if q is not a prime power."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    return next(iter(fac.items()))


class GF2m:
    """GF(2^ell) via exp/log tables over a primitive polynomial."""

    def __init__(self, ell: int):
        if ell not in PRIMITIVE_POLY_GF2:
            raise ValueError(f"no primitive polynomial on file for ell={ell}")
        self.ell = ell
        self.poly = PRIMITIVE_POLY_GF2[ell]
        self.order = (1 << ell) - 1
        self.exp = [0] * (2 * self.order)
        self.log = [0] * (1 << ell)
        x = 1
        for i in range(self.order):
            self.exp[i] = x
            self.log[x] = i
            x <<= 1
            if x >> ell:
                x ^= self.poly
        if x != 1:
            raise AssertionError(f"polynomial {self.poly:#b} is not primitive")
        for i in range(self.order, 2 * self.order):
            self.exp[i] = self.exp[i - self.order]

    def alpha_pow(self, i: int) -> int:
        return self.exp[i % self.order]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def bits(self, x: int) -> list:
        """Coefficient vector [x^0 coeff, ..., x^(ell-1) coeff]."""
        return [(x >> j) & 1 for j in range(self.ell)]


def check_primitive(ell: int) -> bool:
    """Verify the tabulated polynomial: x must have order exactly 2^ell - 1."""
    poly = PRIMITIVE_POLY_GF2[ell]
    order = (1 << ell) - 1

    def pow_x(e):
        # square-and-multiply in GF(2)[x] mod poly
        result, base = 1, 2
        while e:
            if e & 1:
                result = _gf2_mulmod(result, base, poly, ell)
            base = _gf2_mulmod(base, base, poly, ell)
            e >>= 1
        return result

    if pow_x(order) != 1:
        return False
    return all(pow_x(order // p) != 1 for p in factorize(order))


def _gf2_mulmod(a: int, b: int, poly: int, ell: int) -> int:
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a >> ell:
            a ^= poly
    return acc


class PrimePowerField:
    """GF(p^e) with elements encoded as base-p integers (coeff of x^j in
    digit j).  Sized for the small fields the block designs need."""

    def __init__(self, p: int, e: int):
        if not is_prime(p) or e < 1:
            raise ValueError(f"bad prime power p={p} e={e}")
        self.p = p
        self.e = e
        self.size = p ** e
        self.modulus = self._find_irreducible()
        self._inv = None

    def _to_poly(self, a: int) -> list:
        digits = []
        for _ in range(self.e + 1):
            digits.append(a % self.p)
            a //= self.p
        return digits

    def _find_irreducible(self) -> list:
        """Monic irreducible of degree e over GF(p), smallest by encoding."""
        if self.e == 1:
            return [0, 1]
        for low in range(self.size):
            cand = self._to_poly(low)
            cand[self.e] = 1
            if self._is_irreducible(cand):
                return cand
        raise AssertionError("no irreducible polynomial found")

    def _poly_mulmod_generic(self, fa, fb, mod):
        p = self.p
        deg_mod = len(mod) - 1
        while len(mod) > 1 and mod[-1] == 0:
            mod = mod[:-1]
            deg_mod -= 1
        prod = [0] * (len(fa) + len(fb) - 1)
        for i, ai in enumerate(fa):
            if ai:
                for j, bj in enumerate(fb):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        # reduce: mod is monic
        for i in range(len(prod) - 1, deg_mod - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(deg_mod):
                    prod[i - deg_mod + j] = (prod[i - deg_mod + j]
                                             - c * mod[j]) % p
        return prod[:deg_mod] + [0] * max(0, deg_mod - len(prod))

    def _is_irreducible(self, f) -> bool:
        # f irreducible of degree e iff x^(p^e) == x mod f and
        # gcd-free of x^(p^(e/r)) - x for prime r | e; smallness permits
        # the direct check: no root-generated factor, test via powers.
        p, e = self.p, self.e

        def xpow(exp):
            result = [1]
            base = [0, 1]
            while exp:
                if exp & 1:
                    result = self._poly_mulmod_generic(result, base, f)
                base = self._poly_mulmod_generic(base, base, f)
                exp >>= 1
            return result

        def is_x(poly):
            return (len(poly) > 1 and poly[1] == 1
                    and all(c == 0 for i, c in enumerate(poly) if i != 1))

        if not is_x(xpow(p ** e)):
            return False
        for r in factorize(e):
            if is_x(xpow(p ** (e // r))):
                return False
        return True

    def add(self, a: int, b: int) -> int:
        p, out, mult = self.p, 0, 1
        for _ in range(self.e):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p, out, mult = self.p, 0, 1
        for _ in range(self.e):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        fa, fb = self._to_poly(a)[:self.e], self._to_poly(b)[:self.e]
        prod = self._poly_mulmod_generic(fa, fb, self.modulus)
        out, mult = 0, 1
        for c in prod[:self.e]:
            out += c * mult
            mult *= self.p
        return out

    def pow(self, a: int, e: int) -> int:
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self._inv is None:
            self._inv = {}
            for x in range(1, self.size):
                if x not in self._inv:
                    for y in range(1, self.size):
                        if self.mul(x, y) == 1:
                            self._inv[x] = y
                            self._inv[y] = x
                            break
        return self._inv[a]

    def subfield_elements(self, q: int) -> list:
        """Elements fixed by x -> x^q, i.e. the copy of GF(q) inside."""
        return [x for x in range(self.size) if self.pow(x, q) == x]


@functools.lru_cache(maxsize=None)
def gf2m(ell: int) -> GF2m:
    return GF2m(ell)


@functools.lru_cache(maxsize=None)
def prime_power_field(p: int, e: int) -> PrimePowerField:
    return PrimePowerField(p, e)
