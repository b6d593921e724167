"""
Truncated Witt vectors W_h(F_{p^r}) and bounded-precision p-adic windows.

W_h(F_{p^r}) is, for a perfect field, the unramified extension of Z/p^h of
degree r.  We therefore carry elements internally as polynomials over
Z/p^h modulo a fixed monic lift of the field modulus (a plain integer for
r = 1): ring operations are exact integer arithmetic, and the Witt
coordinates / Teichmueller digits are recovered by digit peeling.  The
coordinate form (x_0, ..., x_{h-1}) remains the canonical external datum;
x = sum_i p^i [x_i^{1/p^i}], i.e. Teichmueller digits are the p^i-th roots
of the Witt coordinates.

Everything is immutable; the per-(p, r, h) ring objects are the only shared
state and are write-once caches.
"""

from __future__ import annotations

from functools import lru_cache

from .fq import Fq, FqElem, GF, factor_prime_power


class PrecisionError(ArithmeticError):
    """An operation would need p-adic digits beyond the available precision."""


@lru_cache(maxsize=None)
def witt_ring(p: int, r: int, h: int) -> "WittRing":
    return WittRing(p, r, h)


class WittRing:
    """Arithmetic backend for W_h(F_{p^r}).

    Elements ("vals") are ints mod p^h when r == 1, else r-tuples of ints
    mod p^h (coefficients w.r.t. the residue-modulus lift).
    """

    def __init__(self, p: int, r: int, h: int):
        if h < 1:
            raise ValueError("Witt length h must be >= 1")
        self.p = p
        self.r = r
        self.h = h
        self.q = p**r
        self.ph = p**h
        self.field = GF(p**r)
        if r == 1:
            self.zero_val = 0
            self.one_val = 1
        else:
            self.zero_val = (0,) * r
            self.one_val = (1,) + (0,) * (r - 1)
            mod = self.field.modulus
            xr = [(-c) % self.ph for c in mod[:r]]
            red = []
            cur = xr[:]
            for _ in range(r - 1):
                red.append(tuple(cur))
                carry = cur[-1]
                cur = [0] + cur[:-1]
                if carry:
                    cur = [(a + carry * b) % self.ph for a, b in zip(cur, xr)]
            red.append(tuple(cur))
            self._red = red
        self._teich_cache: dict[tuple, object] = {}
        self._sigma_pows = None  # lazily built: powers of the Frobenius root

    # -- basic ring operations ------------------------------------------

    def add(self, a, b):
        if self.r == 1:
            return (a + b) % self.ph
        return tuple((x + y) % self.ph for x, y in zip(a, b))

    def sub(self, a, b):
        if self.r == 1:
            return (a - b) % self.ph
        return tuple((x - y) % self.ph for x, y in zip(a, b))

    def neg(self, a):
        if self.r == 1:
            return (-a) % self.ph
        return tuple((-x) % self.ph for x in a)

    def mul(self, a, b):
        if self.r == 1:
            return (a * b) % self.ph
        r, ph = self.r, self.ph
        prod = [0] * (2 * r - 1)
        for i in range(r):
            ai = a[i]
            if ai:
                for j in range(r):
                    prod[i + j] += ai * b[j]
        out = [c % ph for c in prod[:r]]
        for k in range(r, 2 * r - 1):
            c = prod[k] % ph
            if c:
                red = self._red[k - r]
                for j in range(r):
                    out[j] = (out[j] + c * red[j]) % ph
        return tuple(out)

    def smul(self, c: int, a):
        if self.r == 1:
            return (c * a) % self.ph
        return tuple((c * x) % self.ph for x in a)

    def pow(self, a, e: int):
        acc, base = self.one_val, a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def from_int(self, n: int):
        if self.r == 1:
            return n % self.ph
        return (n % self.ph,) + (0,) * (self.r - 1)

    # -- valuation and units --------------------------------------------

    def valuation(self, a) -> int:
        """p-adic valuation; h for the zero element."""
        if self.r == 1:
            if a == 0:
                return self.h
            v, p = 0, self.p
            while a % p == 0:
                a //= p
                v += 1
            return v
        best = self.h
        for c in a:
            if c:
                v, p = 0, self.p
                while c % p == 0:
                    c //= p
                    v += 1
                if v < best:
                    best = v
                    if best == 0:
                        return 0
        return best

    def is_unit(self, a) -> bool:
        return self.valuation(a) == 0

    def inv_unit(self, a):
        """Inverse of a unit, by Newton iteration from the residue inverse."""
        if not self.is_unit(a):
            raise ZeroDivisionError("not a unit in W_h")
        if self.r == 1:
            return pow(a, -1, self.ph)
        x = self.lift_residue(self.residue(a).inverse())
        k = 1
        while k < self.h:
            x = self.mul(x, self.sub(self.smul(2, self.one_val), self.mul(a, x)))
            k *= 2
        return x

    # -- residues, digits, Teichmueller ---------------------------------

    def residue(self, a) -> FqElem:
        if self.r == 1:
            return self.field.elem(a % self.p)
        return self.field.elem(tuple(c % self.p for c in a))

    def lift_residue(self, x: FqElem):
        """The obvious coefficient lift of x (not the Teichmueller lift)."""
        if self.r == 1:
            return x.coords[0] % self.ph
        return tuple(c % self.ph for c in x.coords)

    def teich(self, x: FqElem):
        """Teichmueller lift: the (q-1)-st root of unity with residue x."""
        key = x.coords
        cached = self._teich_cache.get(key)
        if cached is not None:
            return cached
        if not x:
            val = self.zero_val
        else:
            val = self.pow(self.lift_residue(x), self.q ** (self.h - 1))
        self._teich_cache[key] = val
        return val

    def divide_exact_p(self, a, k: int):
        """a / p^k as an element of W_{h-k}; a must be divisible by p^k."""
        if k == 0:
            return a, self
        if k > self.h:
            raise PrecisionError("division exceeds available precision")
        ring = witt_ring(self.p, self.r, self.h - k) if self.h > k else None
        if ring is None:
            raise PrecisionError("no precision left after division")
        pk = self.p**k
        if self.r == 1:
            if a % pk:
                raise ValueError("element not divisible by p^k")
            return (a // pk) % ring.ph, ring
        if any(c % pk for c in a):
            raise ValueError("element not divisible by p^k")
        return tuple((c // pk) % ring.ph for c in a), ring

    def reduce_to(self, a, m: int):
        """Ring map W_h -> W_m for m <= h."""
        if m > self.h:
            raise ValueError("cannot extend precision by reduction")
        ring = witt_ring(self.p, self.r, m)
        if self.r == 1:
            return a % ring.ph, ring
        return tuple(c % ring.ph for c in a), ring

    def teich_digits(self, a) -> tuple[FqElem, ...]:
        """Digits d_i of the expansion a = sum p^i [d_i]."""
        out = []
        val, ring = a, self
        for i in range(self.h):
            d = ring.residue(val)
            out.append(d)
            if i == self.h - 1:
                break
            val = ring.sub(val, ring.teich(d))
            val, ring = ring.divide_exact_p(val, 1)
        return tuple(out)

    def from_teich_digits(self, digits):
        val = self.zero_val
        pi = 1
        for d in digits[: self.h]:
            val = self.add(val, self.smul(pi, self.teich(d)))
            pi *= self.p
        return val

    def coords_of(self, a) -> tuple[FqElem, ...]:
        """Witt coordinates x_i = d_i^{p^i} (d = Teichmueller digits)."""
        out = []
        for i, d in enumerate(self.teich_digits(a)):
            out.append(d ** (self.p**i))
        return tuple(out)

    def from_coords(self, coords):
        digits = []
        for i, x in enumerate(coords):
            d = x
            for _ in range(i):
                d = d.pth_root()
            digits.append(d)
        return self.from_teich_digits(digits)

    # -- Frobenius -------------------------------------------------------

    def _frobenius_root(self):
        """Powers of S, the Hensel root of the modulus lifting x -> x^p."""
        if self._sigma_pows is not None:
            return self._sigma_pows
        r = self.r
        mod = self.field.modulus
        gen = (self.zero_val[:1] + (1,) + self.zero_val[2:]) if r > 1 else None

        def f_of(s):
            acc = self.from_int(mod[-1])
            for c in reversed(mod[:-1]):
                acc = self.add(self.mul(acc, s), self.from_int(c))
            return acc

        def fprime_of(s):
            acc = self.from_int(0)
            n = len(mod) - 1
            for k in range(n, 0, -1):
                acc = self.add(self.mul(acc, s), self.from_int(k * mod[k]))
            return acc

        s = self.pow(gen, self.p)
        for _ in range(self.h.bit_length() + 1):
            fs = f_of(s)
            if fs == self.zero_val:
                break
            s = self.sub(s, self.mul(fs, self.inv_unit(fprime_of(s))))
        assert f_of(s) == self.zero_val
        pows = [self.one_val, s]
        for _ in range(r - 2):
            pows.append(self.mul(pows[-1], s))
        self._sigma_pows = pows
        return pows

    def sigma(self, a):
        """The Witt-vector Frobenius (x_i) -> (x_i^p), as a ring map."""
        if self.r == 1:
            return a
        pows = self._frobenius_root()
        out = self.zero_val
        for c, sk in zip(a, pows):
            if c:
                out = self.add(out, self.smul(c, sk))
        return out

    def elements(self):
        """All q^h elements (coefficient enumeration order)."""
        if self.r == 1:
            yield from range(self.ph)
        else:
            import itertools

            for t in itertools.product(range(self.ph), repeat=self.r):
                yield t


class WittVector:
    """An element of W_h(F_{p^r}) with Witt-coordinate access."""

    __slots__ = ("ring", "val")

    def __init__(self, ring: WittRing, val):
        self.ring = ring
        self.val = val

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_coords(cls, coords, p=None, h=None):
        coords = tuple(coords)
        if not coords:
            raise ValueError("empty coordinate vector")
        field = coords[0].field
        h = len(coords) if h is None else h
        ring = witt_ring(field.p, field.r, h)
        return cls(ring, ring.from_coords(coords))

    @classmethod
    def from_int(cls, n: int, p: int, h: int, r: int = 1):
        ring = witt_ring(p, r, h)
        return cls(ring, ring.from_int(n))

    @classmethod
    def zero(cls, p, h, r=1):
        ring = witt_ring(p, r, h)
        return cls(ring, ring.zero_val)

    @classmethod
    def one(cls, p, h, r=1):
        ring = witt_ring(p, r, h)
        return cls(ring, ring.one_val)

    # -- structure --------------------------------------------------------

    @property
    def h(self) -> int:
        return self.ring.h

    @property
    def coords(self) -> tuple[FqElem, ...]:
        return self.ring.coords_of(self.val)

    @property
    def teich_digits(self) -> tuple[FqElem, ...]:
        return self.ring.teich_digits(self.val)

    def valuation(self) -> int:
        return self.ring.valuation(self.val)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.val)

    def reduce(self, m: int) -> "WittVector":
        val, ring = self.ring.reduce_to(self.val, m)
        return WittVector(ring, val)

    def _check_compatible(self, other: "WittVector"):
        if self.ring is not other.ring:
            raise ValueError(
                "Witt vectors from different rings "
                f"(W_{self.ring.h}(F_{self.ring.q}) vs W_{other.ring.h}(F_{other.ring.q}))"
            )

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        self._check_compatible(other)
        return WittVector(self.ring, self.ring.add(self.val, other.val))

    def __sub__(self, other):
        self._check_compatible(other)
        return WittVector(self.ring, self.ring.sub(self.val, other.val))

    def __neg__(self):
        return WittVector(self.ring, self.ring.neg(self.val))

    def __mul__(self, other):
        if isinstance(other, int):
            return WittVector(self.ring, self.ring.smul(other, self.val))
        self._check_compatible(other)
        return WittVector(self.ring, self.ring.mul(self.val, other.val))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return WittVector(self.ring, self.ring.pow(self.val, e))

    def inverse(self) -> "WittVector":
        return WittVector(self.ring, self.ring.inv_unit(self.val))

    def frobenius(self) -> "WittVector":
        return WittVector(self.ring, self.ring.sigma(self.val))

    def __eq__(self, other):
        return (
            isinstance(other, WittVector)
            and self.ring is other.ring
            and self.val == other.val
        )

    def __hash__(self):
        return hash((id(self.ring), self.val))

    def __bool__(self):
        return self.val != self.ring.zero_val

    def __repr__(self):
        return f"W{self.h}({', '.join(map(repr, self.coords))})"

    def to_json(self):
        """Coordinates as strings (stable CLI serialization)."""
        return [
            str(c.coords[0]) if self.ring.r == 1 else list(map(str, c.coords))
            for c in self.coords
        ]


# -- the spec-level operations -------------------------------------------


def witt_add(a: WittVector, b: WittVector) -> WittVector:
    return a + b


def witt_mul(a: WittVector, b: WittVector) -> WittVector:
    return a * b


def teichmuller(x: FqElem, h: int) -> WittVector:
    ring = witt_ring(x.field.p, x.field.r, h)
    return WittVector(ring, ring.teich(x))


def frobenius_sigma(a: WittVector) -> WittVector:
    return a.frobenius()


def det_components(A) -> tuple[FqElem, ...]:
    """Witt coordinates of det(A) for a square matrix of WittVectors."""
    n = len(A)
    for row in A:
        if len(row) != n:
            raise ValueError("matrix is not square")
    det = _det(A)
    return det.coords


def _det(A):
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    acc = None
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in A[1:]]
        term = A[0][j] * _det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


# -- bounded-precision p-adic numbers --------------------------------------


class PadicWindow:
    """p^shift * body, known modulo p^(shift + prec), prec = body ring length.

    Arithmetic tracks worst-case precision; an operation that would consult
    digits beyond the window raises PrecisionError instead of fabricating
    zeros.
    """

    __slots__ = ("ring", "val", "shift")

    def __init__(self, ring: WittRing, val, shift: int = 0):
        self.ring = ring
        self.val = val
        self.shift = shift

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_witt(cls, w: WittVector, shift: int = 0) -> "PadicWindow":
        return cls(w.ring, w.val, shift)

    @classmethod
    def from_int(cls, n: int, p: int, h: int, r: int = 1, shift: int = 0):
        ring = witt_ring(p, r, h)
        return cls(ring, ring.from_int(n), shift)

    @classmethod
    def uniformizer_power(cls, k: int, p: int, h: int, r: int = 1):
        """p^k known to relative precision h."""
        ring = witt_ring(p, r, h)
        return cls(ring, ring.one_val, k)

    # -- structure ---------------------------------------------------------

    @property
    def prec(self) -> int:
        """Relative precision (number of known digits of the body)."""
        return self.ring.h

    @property
    def abs_prec(self) -> int:
        """The value is known modulo p^abs_prec."""
        return self.shift + self.ring.h

    def valuation(self) -> int:
        """Exact valuation; PrecisionError if the value could be 0."""
        v = self.ring.valuation(self.val)
        if v >= self.ring.h:
            raise PrecisionError("valuation beyond window (value may be zero)")
        return self.shift + v

    def is_zero_at_precision(self) -> bool:
        return self.ring.valuation(self.val) >= self.ring.h

    def _truncated(self, shift: int, abs_prec: int):
        """Body re-expressed at the given shift, truncated to abs_prec."""
        down = self.shift - shift
        if down < 0:
            raise ValueError("cannot lower precision window start")
        prec = abs_prec - shift
        if prec <= 0:
            raise PrecisionError("no digits left at requested precision")
        if prec > self.ring.h + down:
            raise PrecisionError("requested precision exceeds window")
        big = witt_ring(self.ring.p, self.ring.r, prec)
        if self.ring.r == 1:
            val = (self.val * self.ring.p**down) % big.ph
        else:
            pd = self.ring.p**down
            val = tuple((c * pd) % big.ph for c in self.val)
        return big, val

    # -- arithmetic ---------------------------------------------------------

    def _binop(self, other, op):
        shift = min(self.shift, other.shift)
        abs_prec = min(self.abs_prec, other.abs_prec)
        ra, va = self._truncated(shift, abs_prec)
        rb, vb = other._truncated(shift, abs_prec)
        assert ra is rb
        return PadicWindow(ra, op(ra)(va, vb), shift)

    def __add__(self, other):
        return self._binop(other, lambda r: r.add)

    def __sub__(self, other):
        return self._binop(other, lambda r: r.sub)

    def __neg__(self):
        return PadicWindow(self.ring, self.ring.neg(self.val), self.shift)

    def __mul__(self, other):
        if isinstance(other, int):
            return PadicWindow(self.ring, self.ring.smul(other, self.val), self.shift)
        prec = min(self.prec, other.prec)
        ring = witt_ring(self.ring.p, self.ring.r, prec)
        va, _ = self.ring.reduce_to(self.val, prec)
        vb, _ = other.ring.reduce_to(other.val, prec)
        return PadicWindow(ring, ring.mul(va, vb), self.shift + other.shift)

    __rmul__ = __mul__

    def unit_split(self) -> "PadicWindow":
        """Normalize so the body is a unit (shift absorbs the valuation)."""
        v = self.ring.valuation(self.val)
        if v >= self.ring.h:
            raise PrecisionError("cannot normalize: value may be zero")
        if v == 0:
            return self
        val, ring = self.ring.divide_exact_p(self.val, v)
        return PadicWindow(ring, val, self.shift + v)

    def inverse(self) -> "PadicWindow":
        u = self.unit_split()
        return PadicWindow(u.ring, u.ring.inv_unit(u.val), -u.shift)

    def __truediv__(self, other):
        return self * other.inverse()

    def eq_at_common_precision(self, other) -> bool:
        """Compare at the full common precision; error if none overlaps."""
        shift = min(self.shift, other.shift)
        abs_prec = min(self.abs_prec, other.abs_prec)
        _, va = self._truncated(shift, abs_prec)
        _, vb = other._truncated(shift, abs_prec)
        return va == vb

    def __repr__(self):
        return f"p^{self.shift}*{self.val!r} (mod p^{self.abs_prec})"


def pw_matmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for t in range(1, k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def verify_famous_identity(p: int, h: int) -> bool:
    """Check the 2x2 unipotent factorization of the Weyl element over W_h.

    [[0,-1],[1,0]] = [[1,-1/p],[0,1]] [[1,0],[p,1]] [[1,-1/p],[0,1]] [[1/p,0],[0,p]]
    compared entrywise at the full precision the four factors support.
    """
    if h < 2:
        raise ValueError("need h >= 2 for a meaningful precision window")

    def exact(n, shift=0):
        return PadicWindow.from_int(n, p, h, shift=shift)

    one, zero = exact(1), exact(0)
    minus_inv_pi = exact(-1, shift=-1)
    inv_pi = exact(1, shift=-1)
    pi = exact(1, shift=1)

    upper = [[one, minus_inv_pi], [zero, one]]
    lower = [[one, zero], [pi, one]]
    torus = [[inv_pi, zero], [zero, pi]]
    rhs = pw_matmul(pw_matmul(pw_matmul(upper, lower), upper), torus)
    lhs = [[zero, exact(-1)], [one, zero]]
    ok = True
    for i in range(2):
        for j in range(2):
            ok = ok and lhs[i][j].eq_at_common_precision(rhs[i][j])
    return ok
