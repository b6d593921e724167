"""
Exact polynomial helpers: Z[q] polynomials and Laurent data in a formal
half-power unit u with u^2 = q.
"""

from __future__ import annotations

from fractions import Fraction


class QPoly:
    """Integer polynomial in q, dense coefficient tuple (constant first)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def const(cls, n: int) -> "QPoly":
        return cls((n,))

    @classmethod
    def q_power(cls, k: int, c: int = 1) -> "QPoly":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return QPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return QPoly(-x for x in self.coeffs)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if not self or not other:
            return QPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        acc, base = QPoly((1,)), self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other):
        return self.coeffs == _coerce(other).coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def at_minus_q(self) -> "QPoly":
        """P(-q)."""
        return QPoly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mon = "q" if i == 1 else f"q^{i}"
                if c == 1:
                    parts.append(mon)
                elif c == -1:
                    parts.append(f"-{mon}")
                else:
                    parts.append(f"{c}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_list(self):
        return list(self.coeffs)


def _coerce(x) -> QPoly:
    if isinstance(x, QPoly):
        return x
    if isinstance(x, int):
        return QPoly((x,))
    raise TypeError(f"cannot coerce {x!r} to QPoly")


ONE = QPoly((1,))
ZERO = QPoly()
Q = QPoly((0, 1))


class Laurent:
    """Sparse Laurent polynomial in u (u^2 = q), exact coefficients.

    Coefficients are ints or Fractions; keys are u-exponents.
    """

    __slots__ = ("c",)

    def __init__(self, c=None):
        self.c = {k: v for k, v in (c or {}).items() if v}

    @classmethod
    def term(cls, coeff, exp: int) -> "Laurent":
        return cls({exp: coeff}) if coeff else cls()

    @classmethod
    def from_qpoly(cls, p: QPoly, u_shift: int = 0) -> "Laurent":
        return cls({2 * i + u_shift: v for i, v in enumerate(p.coeffs) if v})

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        return isinstance(other, Laurent) and self.c == other.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def __add__(self, other):
        out = dict(self.c)
        for k, v in other.c.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return Laurent(out)

    def __neg__(self):
        return Laurent({k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Laurent({k: v * other for k, v in self.c.items()})
        out = {}
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                k = k1 + k2
                w = out.get(k, 0) + v1 * v2
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return Laurent(out)

    __rmul__ = __mul__

    def bar(self) -> "Laurent":
        """u -> u^{-1}."""
        return Laurent({-k: v for k, v in self.c.items()})

    def shift(self, d: int) -> "Laurent":
        return Laurent({k + d: v for k, v in self.c.items()})

    def coeff(self, k: int):
        return self.c.get(k, 0)

    @property
    def min_exp(self):
        return min(self.c) if self.c else None

    @property
    def max_exp(self):
        return max(self.c) if self.c else None

    def exact_div(self, other: "Laurent") -> "Laurent":
        """Exact division; raises if the quotient is not Laurent."""
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self:
            return Laurent()
        num = dict(self.c)
        lo_d, hi_d = other.min_exp, other.max_exp
        lead = other.c[hi_d]
        out = {}
        # repeatedly kill the top term
        guard = 0
        while num:
            guard += 1
            if guard > 10000:
                raise ArithmeticError("division does not terminate")
            hi_n = max(num)
            k = hi_n - hi_d
            cf = Fraction(num[hi_n], 1) / lead
            out[k] = out.get(k, 0) + cf
            for kd, vd in other.c.items():
                kk = kd + k
                w = num.get(kk, 0) - cf * vd
                if w:
                    num[kk] = w
                else:
                    num.pop(kk, None)
        return Laurent(out)

    def as_qpoly(self, u_shift: int = 0) -> QPoly:
        """Interpret self * u^{-u_shift} as a polynomial in q = u^2."""
        coeffs = {}
        for k, v in self.c.items():
            e = k - u_shift
            if e < 0 or e % 2:
                raise ValueError(f"not a q-polynomial after shift {u_shift}: {self!r}")
            frac = Fraction(v)
            if frac.denominator != 1:
                raise ValueError(f"non-integer coefficient {v}")
            coeffs[e // 2] = int(frac)
        if not coeffs:
            return QPoly()
        return QPoly(tuple(coeffs.get(i, 0) for i in range(max(coeffs) + 1)))

    def map_coeffs(self, f) -> "Laurent":
        return Laurent({k: f(v) for k, v in self.c.items()})

    def __repr__(self):
        if not self.c:
            return "0"
        return " + ".join(f"{v}*u^{k}" for k, v in sorted(self.c.items()))


L_ONE = Laurent({0: 1})
L_U = Laurent({1: 1})
