"""
The two coefficient rings behind lattice enumeration.

Both W_h(F_q) (mixed characteristic) and F_q[t]/t^h (equal characteristic)
are finite chain rings of length h with residue field F_q; every lattice
computation here only uses that shared interface:

    valuation, units, uniformizer powers, digit expansions, exact division
    by the uniformizer, and enumeration of residue classes.

Point counts must agree between the two kinds, which the test suite checks
on the full small grid.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .fq import FqElem, GF
from .witt import PrecisionError, WittRing, witt_ring


class MixedRing:
    """W_h(F_{p^r}) exposed through the chain-ring interface."""

    kind = "mixed"

    def __init__(self, p: int, r: int, h: int):
        self.w = witt_ring(p, r, h)
        self.p = p
        self.r = r
        self.h = h
        self.q = p**r
        self.field = self.w.field
        self.zero = self.w.zero_val
        self.one = self.w.one_val
        self._unif = [self.w.from_int(p**k) for k in range(h + 1)]
        self._teich_table = {x.coords: self.w.teich(x) for x in self.field.elements()}
        self._residue_cache: dict[int, tuple] = {}

    # arithmetic ----------------------------------------------------------
    def add(self, a, b):
        return self.w.add(a, b)

    def sub(self, a, b):
        return self.w.sub(a, b)

    def neg(self, a):
        return self.w.neg(a)

    def mul(self, a, b):
        return self.w.mul(a, b)

    def valuation(self, a):
        return self.w.valuation(a)

    def is_unit(self, a):
        return self.w.is_unit(a)

    def inv_unit(self, a):
        return self.w.inv_unit(a)

    def unif_pow(self, k: int):
        return self._unif[k]

    def mul_unif(self, a, k: int):
        if k == 0:
            return a
        return self.w.smul(self.p**k, a)

    def shift_down(self, a, k: int):
        """a / pi^k within W_h (top digits lost; a must be divisible)."""
        if k == 0:
            return a
        pk = self.p**k
        if self.r == 1:
            if a % pk:
                raise ValueError("not divisible by pi^k")
            return a // pk
        if any(c % pk for c in a):
            raise ValueError("not divisible by pi^k")
        return tuple(c // pk for c in a)

    def residue(self, a) -> FqElem:
        return self.w.residue(a)

    def lift(self, x: FqElem):
        """Multiplicative digit lift (Teichmueller)."""
        return self._teich_table[x.coords]

    def digits(self, a):
        return self.w.teich_digits(a)

    def from_digits(self, digits):
        return self.w.from_teich_digits(digits)

    def sigma(self, a):
        return self.w.sigma(a)

    def residues_mod(self, k: int) -> tuple:
        """All q^k canonical representatives of R / pi^k (digits < k)."""
        if k <= 0:
            return (self.zero,)
        cached = self._residue_cache.get(k)
        if cached is not None:
            return cached
        field_elems = tuple(self.field.elements())
        out = []
        for digs in itertools.product(field_elems, repeat=k):
            val = self.zero
            for i, d in enumerate(digs):
                if d:
                    val = self.add(val, self.mul_unif(self.lift(d), i))
            out.append(val)
        out = tuple(out)
        self._residue_cache[k] = out
        return out

    def divmod_unif(self, a, k: int):
        """(quotient, remainder) with remainder the canonical digit-<k part."""
        if k <= 0:
            return a, self.zero
        digs = self.digits(a)
        rem = self.zero
        for i, d in enumerate(digs[:k]):
            if d:
                rem = self.add(rem, self.mul_unif(self.lift(d), i))
        quo = self.shift_down(self.sub(a, rem), k)
        return quo, rem

    def __repr__(self):
        return f"W_{self.h}(F_{self.q})"


class EqualCharRing:
    """F_q[t]/t^h; elements are coefficient tuples of FqElems."""

    kind = "equal"

    def __init__(self, p: int, r: int, h: int):
        self.p = p
        self.r = r
        self.h = h
        self.q = p**r
        self.field = GF(self.q)
        self.zero = (self.field.zero,) * h
        self.one = (self.field.one,) + (self.field.zero,) * (h - 1)
        self._residue_cache: dict[int, tuple] = {}

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        h = self.h
        z = self.field.zero
        out = [z] * h
        for i, ai in enumerate(a):
            if ai:
                for j in range(h - i):
                    bj = b[j]
                    if bj:
                        out[i + j] = out[i + j] + ai * bj
        return tuple(out)

    def valuation(self, a):
        for i, c in enumerate(a):
            if c:
                return i
        return self.h

    def is_unit(self, a):
        return bool(a[0])

    def inv_unit(self, a):
        if not a[0]:
            raise ZeroDivisionError("not a unit in F_q[t]/t^h")
        inv0 = a[0].inverse()
        out = [inv0] + [self.field.zero] * (self.h - 1)
        for k in range(1, self.h):
            acc = self.field.zero
            for j in range(k):
                acc = acc + a[k - j] * out[j]
            out[k] = -(inv0 * acc)
        return tuple(out)

    def unif_pow(self, k: int):
        z = self.field.zero
        if k >= self.h:
            return self.zero
        return tuple(self.field.one if i == k else z for i in range(self.h))

    def mul_unif(self, a, k: int):
        if k == 0:
            return a
        z = self.field.zero
        return (z,) * min(k, self.h) + a[: max(0, self.h - k)]

    def shift_down(self, a, k: int):
        if k == 0:
            return a
        if any(a[:k]):
            raise ValueError("not divisible by pi^k")
        return a[k:] + (self.field.zero,) * k

    def residue(self, a) -> FqElem:
        return a[0]

    def lift(self, x: FqElem):
        return (x,) + (self.field.zero,) * (self.h - 1)

    def digits(self, a):
        return a

    def from_digits(self, digits):
        z = self.field.zero
        digits = tuple(digits)[: self.h]
        return digits + (z,) * (self.h - len(digits))

    def sigma(self, a):
        raise NotImplementedError("Frobenius twisting is a mixed-characteristic feature")

    def residues_mod(self, k: int) -> tuple:
        if k <= 0:
            return (self.zero,)
        cached = self._residue_cache.get(k)
        if cached is not None:
            return cached
        z = self.field.zero
        tail = (z,) * (self.h - k)
        out = tuple(
            tuple(digs) + tail
            for digs in itertools.product(tuple(self.field.elements()), repeat=k)
        )
        self._residue_cache[k] = out
        return out

    def divmod_unif(self, a, k: int):
        if k <= 0:
            return a, self.zero
        z = self.field.zero
        rem = a[:k] + (z,) * (self.h - k)
        quo = a[k:] + (z,) * k
        return quo, rem

    def __repr__(self):
        return f"F_{self.q}[t]/t^{self.h}"


@lru_cache(maxsize=None)
def make_ring(kind: str, q: int, h: int):
    """Coefficient ring of the given kind over F_q, length h."""
    from .fq import factor_prime_power

    p, r = factor_prime_power(q)
    if kind == "mixed":
        return MixedRing(p, r, h)
    if kind == "equal":
        return EqualCharRing(p, r, h)
    raise ValueError(f"unknown ring kind {kind!r} (want 'mixed' or 'equal')")
