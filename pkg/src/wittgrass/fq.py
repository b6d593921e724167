"""
Finite fields F_{p^r} with a fixed modulus table.

Elements are polynomials over the prime field modulo a deterministic
irreducible polynomial, so results are reproducible bit-for-bit across
runs and machines.  The table below was generated once by scanning monic
polynomials with nonzero constant term in lexicographic order (coefficient
tuples read low degree to high, as base-p integers) and keeping the first
irreducible one; it is frozen here and re-verified by the test suite.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

# (p, r) -> coefficients of the modulus, low degree first, monic.
# r = 1 uses the formal modulus x (arithmetic is plain mod-p).
MODULI = {
    (2, 1): (0, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 0, 1, 1),
    (2, 4): (1, 0, 0, 1, 1),
    (2, 5): (1, 0, 0, 1, 0, 1),
    (2, 6): (1, 0, 0, 0, 0, 1, 1),
    (3, 1): (0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 0, 2, 1),
    (3, 4): (1, 0, 1, 1, 1),
    (3, 5): (1, 0, 0, 0, 2, 1),
    (3, 6): (1, 0, 0, 0, 1, 1, 1),
    (5, 1): (0, 1),
    (5, 2): (1, 1, 1),
    (5, 3): (1, 0, 1, 1),
    (5, 4): (1, 0, 1, 1, 1),
    (5, 5): (1, 0, 0, 0, 4, 1),
    (5, 6): (1, 0, 0, 0, 1, 1, 1),
    (7, 1): (0, 1),
    (7, 2): (1, 0, 1),
    (11, 1): (0, 1),
    (13, 1): (0, 1),
}

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Write q = p^r or raise ValueError."""
    for p in _SMALL_PRIMES:
        if q % p == 0:
            r = 0
            m = q
            while m % p == 0:
                m //= p
                r += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, r
    if is_prime(q):
        return q, 1
    raise ValueError(f"{q} is not a prime power")


class FqElem:
    """Element of F_{p^r}: an immutable coefficient tuple over F_p."""

    __slots__ = ("field", "coords")

    def __init__(self, field: "Fq", coords: tuple[int, ...]):
        self.field = field
        self.coords = coords

    def __add__(self, other):
        f = self.field
        return FqElem(f, tuple((a + b) % f.p for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        f = self.field
        return FqElem(f, tuple((a - b) % f.p for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        f = self.field
        return FqElem(f, tuple((-a) % f.p for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            f = self.field
            return FqElem(f, tuple((a * other) % f.p for a in self.coords))
        return self.field._mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        f = self.field
        if e < 0:
            return self.inverse() ** (-e)
        acc, base = f.one, self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of 0 in F_q")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        return self * other.inverse()

    def frobenius(self):
        """x -> x^p."""
        return self ** self.field.p

    def pth_root(self):
        """Unique p-th root (the field is perfect)."""
        return self ** (self.field.q // self.field.p) if self.field.r > 1 else self

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        return isinstance(other, FqElem) and self.coords == other.coords and self.field is other.field

    def __hash__(self):
        return hash((id(self.field), self.coords))

    def __repr__(self):
        if self.field.r == 1:
            return str(self.coords[0])
        return f"Fq{self.field.q}{list(self.coords)}"

    def as_int(self) -> int:
        """Base-p packing of the coefficient vector (enumeration order)."""
        v = 0
        for c in reversed(self.coords):
            v = v * self.field.p + c
        return v


class Fq:
    """The field F_{p^r} with the fixed modulus from MODULI."""

    def __init__(self, p: int, r: int):
        if (p, r) not in MODULI:
            raise ValueError(f"no modulus on file for (p, r) = ({p}, {r})")
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus = MODULI[(p, r)]
        # reduction table: x^(r+k) mod m for k = 0..r-1, as coeff tuples
        self._red = []
        if r > 1:
            xr = [(-c) % p for c in self.modulus[:r]]
            cur = xr[:]
            for _ in range(r - 1):
                self._red.append(tuple(cur))
                carry = cur[-1]
                cur = [0] + cur[:-1]
                if carry:
                    cur = [(a + carry * b) % p for a, b in zip(cur, xr)]
            self._red.append(tuple(cur))
        self.zero = FqElem(self, (0,) * r)
        self.one = FqElem(self, (1,) + (0,) * (r - 1))
        self.gen = FqElem(self, ((0, 1) + (0,) * r)[:r]) if r > 1 else self.one

    def _mul(self, a: FqElem, b: FqElem) -> FqElem:
        p, r = self.p, self.r
        if r == 1:
            return FqElem(self, ((a.coords[0] * b.coords[0]) % p,))
        prod = [0] * (2 * r - 1)
        ac, bc = a.coords, b.coords
        for i in range(r):
            ai = ac[i]
            if ai:
                for j in range(r):
                    prod[i + j] += ai * bc[j]
        out = [c % p for c in prod[:r]]
        for k in range(r, 2 * r - 1):
            c = prod[k] % p
            if c:
                red = self._red[k - r]
                for j in range(r):
                    out[j] = (out[j] + c * red[j]) % p
        return FqElem(self, tuple(out))

    def elem(self, value) -> FqElem:
        """Coerce an int (prime-field value) or coefficient sequence."""
        if isinstance(value, FqElem):
            if value.field is not self:
                raise ValueError("element of a different field")
            return value
        if isinstance(value, int):
            return FqElem(self, ((value % self.p),) + (0,) * (self.r - 1))
        coords = tuple(int(c) % self.p for c in value)
        if len(coords) != self.r:
            raise ValueError("coefficient vector of wrong length")
        return FqElem(self, coords)

    def from_int(self, v: int) -> FqElem:
        """Inverse of FqElem.as_int."""
        coords = []
        for _ in range(self.r):
            coords.append(v % self.p)
            v //= self.p
        return FqElem(self, tuple(coords))

    def elements(self):
        """All q elements, in as_int order."""
        for coords in itertools.product(range(self.p), repeat=self.r):
            yield FqElem(self, coords)

    def __repr__(self):
        return f"Fq({self.p}^{self.r})"

    def __eq__(self, other):
        return isinstance(other, Fq) and (self.p, self.r) == (other.p, other.r)

    def __hash__(self):
        return hash((self.p, self.r))


@lru_cache(maxsize=None)
def GF(q: int) -> Fq:
    """The field with q elements (q a prime power on file)."""
    p, r = factor_prime_power(q)
    return Fq(p, r)
