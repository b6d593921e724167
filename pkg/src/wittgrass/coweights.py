"""
Integer coweights of GL_n and the dominance order.

Coweights are plain int tuples (m_1, ..., m_n); dominant means weakly
decreasing.  rho is the half sum of positive roots, so (rho, mu) is a
half-integer: we keep 2*(rho, mu) as the primitive to stay in Z.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

Coweight = tuple[int, ...]


def is_dominant(mu) -> bool:
    return all(mu[i] >= mu[i + 1] for i in range(len(mu) - 1))


def dominant_sort(mu) -> Coweight:
    return tuple(sorted(mu, reverse=True))


def dual(mu) -> Coweight:
    """-w0(mu): negate and reverse."""
    return tuple(-m for m in reversed(mu))


def dominance_leq(lam, mu) -> bool:
    """lam <= mu: mu - lam is a nonnegative sum of simple roots.

    Equivalent for GL_n to: all partial sums of lam are <= those of mu,
    with equal total sum.  Both arguments may be non-dominant; the order
    compared is the one on the weight lattice (not orbits), so this is
    the raw partial-sum criterion.
    """
    if len(lam) != len(mu):
        raise ValueError("coweights of different rank")
    s = 0
    for a, b in zip(lam, mu):
        s += b - a
        if s < 0:
            return False
    return s == 0


def pairing_2rho(mu) -> int:
    """(2 rho, mu) as an integer."""
    n = len(mu)
    return sum((n - 1 - 2 * i) * m for i, m in enumerate(mu))


def pairing_rho_doubled(mu) -> int:
    """2*(rho, mu), same as pairing_2rho (kept for call-site clarity)."""
    return pairing_2rho(mu)


def parity(mu) -> int:
    """(-1)^(2 rho, mu)."""
    return -1 if pairing_2rho(mu) % 2 else 1


def pairing_rho(mu) -> Fraction:
    return Fraction(pairing_2rho(mu), 2)


def add(a, b) -> Coweight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b) -> Coweight:
    return tuple(x - y for x, y in zip(a, b))


def neg(a) -> Coweight:
    return tuple(-x for x in a)


def total(mu) -> int:
    """Kottwitz index of mu: the coordinate sum."""
    return sum(mu)


def weyl_orbit(mu):
    """The W = S_n orbit of mu, as a sorted tuple of distinct coweights."""
    return tuple(sorted(set(itertools.permutations(mu))))


def dominant_weights_below(mu) -> tuple[Coweight, ...]:
    """All dominant lam <= mu with the same coordinate sum (finite set)."""
    mu = tuple(mu)
    n = len(mu)
    tot = sum(mu)
    out = []

    def rec(prefix, remaining, hi):
        k = len(prefix)
        if k == n - 1:
            last = remaining
            if last <= (prefix[-1] if prefix else hi):
                cand = prefix + (last,)
                if dominance_leq(cand, mu):
                    out.append(cand)
            return
        lo = -(abs(tot) + sum(abs(m) for m in mu))  # loose but finite
        top = prefix[-1] if prefix else hi
        # partial-sum bound: sum(prefix) + v <= sum(mu[:k+1]) forces v small;
        # v >= ceil(remaining / slots) keeps the tail weakly decreasing.
        slots = n - k
        vmax = min(top, sum(mu[: k + 1]) - sum(prefix))
        vmin = -(-remaining // slots)  # ceil
        for v in range(vmax, vmin - 1, -1):
            rec(prefix + (v,), remaining - v, hi)

    rec((), tot, mu[0] if n else 0)
    return tuple(sorted(set(out), reverse=True))


def weights_of_rep(mu) -> tuple[Coweight, ...]:
    """All weights of the irreducible representation with highest weight mu."""
    out = []
    for lam in dominant_weights_below(mu):
        out.extend(weyl_orbit(lam))
    return tuple(sorted(set(out)))


def minuscule(n: int, i: int) -> Coweight:
    """omega_i = (1,...,1,0,...,0) with i ones."""
    return (1,) * i + (0,) * (n - i)


def quasi_minuscule(n: int) -> Coweight:
    """The highest coroot theta = (1, 0, ..., 0, -1)."""
    if n < 2:
        raise ValueError("need n >= 2")
    return (1,) + (0,) * (n - 2) + (-1,)
