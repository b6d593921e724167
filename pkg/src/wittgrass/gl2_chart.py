"""
The explicit rank-2 chart: U = Spec k[x,y,z]/(x^2 - yz) inside the degree-2
Schubert space, its defining matrix equations over W_3, the unique solution
of (x, y, z) on the open locus, the factorization X = A g, and the global
torsor count |V_{2,3}| = |Gr_2bar| * |GL_2(W_3)|.

Digit conventions: an entry a of X in W_3(F_q) is expanded as
a = [a_0] + p [a_1] + p^2 [a_2] (Teichmueller digits).  The membership
equations live on these digits; the equivalence with the coordinate form
(det components (0, 0, unit)) is part of the test suite.

p = 2 is excluded from the chart computations (the lift of -1 is not -1
there); the torsor count and the equal-characteristic comparison do not
build the chart and run at p = 2 as well.
"""

from __future__ import annotations

import itertools
import random

from .fq import FqElem, GF
from .lattice import count_cell, count_leq
from .rings import MixedRing, make_ring
from .witt import PrecisionError


def _require_odd(ring):
    if ring.p == 2:
        raise ValueError(
            "the chart computations assume p > 2 (Teichmueller lift of -1)"
        )


def chart_ring(q: int) -> MixedRing:
    return make_ring("mixed", q, 3)


def chart_matrix(ring, x: FqElem, y: FqElem, z: FqElem):
    """A = [[p + [x], -[y]], [[z], p - [x]]] over W_3."""
    _require_odd(ring)
    if x * x != y * z:
        raise ValueError("(x, y, z) is not on the chart: x^2 != yz")
    p_val = ring.unif_pow(1)
    return (
        (ring.add(p_val, ring.lift(x)), ring.neg(ring.lift(y))),
        (ring.lift(z), ring.sub(p_val, ring.lift(x))),
    )


def entry_digits(ring, X):
    """Teichmueller digit matrix [[a, b], [c, d]] -> digits[i][j][k]."""
    return tuple(tuple(ring.digits(X[i][j]) for j in range(2)) for i in range(2))


def _f_mat_mul(m1, m2):
    z = m1[0][0].field.zero
    out = []
    for i in range(2):
        row = []
        for j in range(2):
            acc = z
            for k in range(2):
                acc = acc + m1[i][k] * m2[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _f_adj(m):
    (a, b), (c, d) = m
    return ((d, -b), (-c, a))


def det_valuation_exactly_two(ring, X) -> bool:
    det = ring.sub(
        ring.mul(X[0][0], X[1][1]), ring.mul(X[0][1], X[1][0])
    )
    return ring.valuation(det) == 2


def v23_membership(ring, X) -> bool:
    """Membership in the degree-2 matrix space: digit equations plus the
    top-digit unit condition."""
    dg = entry_digits(ring, X)
    m0 = ((dg[0][0][0], dg[0][1][0]), (dg[1][0][0], dg[1][1][0]))
    m1 = ((dg[0][0][1], dg[0][1][1]), (dg[1][0][1], dg[1][1][1]))
    f = m0[0][0].field
    # digit 0 of det: a0 d0 - b0 c0 = 0
    if m0[0][0] * m0[1][1] != m0[0][1] * m0[1][0]:
        return False
    # digit 1: M1 adj(M0) + M0 adj(M1) = 0
    s1 = _f_mat_mul(m1, _f_adj(m0))
    s2 = _f_mat_mul(m0, _f_adj(m1))
    for i in range(2):
        for j in range(2):
            if s1[i][j] + s2[i][j]:
                return False
    # digit 2 of det must be a unit
    det = ring.sub(ring.mul(X[0][0], X[1][1]), ring.mul(X[0][1], X[1][0]))
    return ring.valuation(det) == 2


def v23_membership_via_det(ring, X) -> bool:
    """The coordinate form of the same condition: det components (0,0,unit)."""
    det = ring.sub(ring.mul(X[0][0], X[1][1]), ring.mul(X[0][1], X[1][0]))
    digs = ring.digits(det)
    return (not digs[0]) and (not digs[1]) and bool(digs[2])


def solve_xyz(ring, X):
    """The unique chart coordinates of X, or None when a1 d1 - b1 c1 is
    not a unit (outside the chart section)."""
    _require_odd(ring)
    dg = entry_digits(ring, X)
    a0, a1 = dg[0][0][0], dg[0][0][1]
    b0, b1 = dg[0][1][0], dg[0][1][1]
    c0, c1 = dg[1][0][0], dg[1][0][1]
    d0, d1 = dg[1][1][0], dg[1][1][1]
    u = b1 * c1 - a1 * d1
    if not u:
        return None
    uinv = u.inverse()
    m1 = ((a1, b1), (c1, d1))
    adj0 = ((d0, -b0), (-c0, a0))
    prod = _f_mat_mul(m1, adj0)
    x = uinv * prod[0][0]
    y = -(uinv * prod[0][1])
    z = uinv * prod[1][0]
    # the two matrix identities the solution must satisfy
    sol = ((x, -y), (z, -x))
    if x * x != y * z:
        raise AssertionError("chart solution violates x^2 = yz")
    t1 = _f_mat_mul(adj0, sol)
    if any(t1[i][j] for i in range(2) for j in range(2)):
        raise AssertionError("chart solution violates the degree-0 equation")
    adj1 = ((d1, -b1), (-c1, a1))
    t2 = _f_mat_mul(adj1, sol)
    for i in range(2):
        for j in range(2):
            if t2[i][j] + adj0[i][j]:
                raise AssertionError("chart solution violates the degree-1 equation")
    return (x, y, z)


def factor_check(ring, X) -> bool:
    """Recover g with X = A g as g = p^{-2} adj(A) X and verify
    integrality and invertibility at the available precision (h = 3: two
    digits of integrality, residue invertibility).

    The factorization is X = A g, so the integral quotient is the left
    one, adj(A) X / p^2 (the source text displays the product on the
    other side, which conjugates g out of the integral group).
    """
    _require_odd(ring)
    sol = solve_xyz(ring, X)
    if sol is None:
        raise ValueError("X is outside the chart; no factorization to check")
    A = chart_matrix(ring, *sol)
    adjA = (
        (A[1][1], ring.neg(A[0][1])),
        (ring.neg(A[1][0]), A[0][0]),
    )
    prod = [[None, None], [None, None]]
    for i in range(2):
        for j in range(2):
            acc = ring.zero
            for k in range(2):
                acc = ring.add(acc, ring.mul(adjA[i][k], X[k][j]))
            if ring.valuation(acc) < 2:
                return False
            prod[i][j] = ring.shift_down(acc, 2)  # known mod p
    g0 = tuple(tuple(ring.residue(prod[i][j]) for j in range(2)) for i in range(2))
    det0 = g0[0][0] * g0[1][1] - g0[0][1] * g0[1][0]
    return bool(det0)


# ---------------------------------------------------------------------------
# randomized suites (seeded)
# ---------------------------------------------------------------------------


def random_chart_point(ring, rng):
    f = ring.field
    while True:
        x = f.from_int(rng.randrange(f.q))
        y = f.from_int(rng.randrange(f.q))
        z = f.from_int(rng.randrange(f.q))
        if x * x == y * z:
            return (x, y, z)


def random_gl2(ring, rng):
    while True:
        m = tuple(
            tuple(
                ring.from_digits(
                    [ring.field.from_int(rng.randrange(ring.q)) for _ in range(3)]
                )
                for _ in range(2)
            )
            for _ in range(2)
        )
        det = ring.sub(ring.mul(m[0][0], m[1][1]), ring.mul(m[0][1], m[1][0]))
        if ring.is_unit(det):
            return m


def _mat_mul_ring(ring, m1, m2):
    out = []
    for i in range(2):
        row = []
        for j in range(2):
            acc = ring.zero
            for k in range(2):
                acc = ring.add(acc, ring.mul(m1[i][k], m2[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def b3_suite(q: int, trials: int = 1000, seed: int = 42) -> dict:
    """Randomized verification of the chart identities on orbit samples.

    Each trial: a chart point (x,y,z), a random g in GL_2(W_3), and
    X = A(x,y,z) g; checks membership (both routes agree and hold),
    exact recovery of (x,y,z), and the factorization.
    """
    ring = chart_ring(q)
    _require_odd(ring)
    rng = random.Random(seed)
    failures = []
    skipped = 0
    for t in range(trials):
        pt = random_chart_point(ring, rng)
        A = chart_matrix(ring, *pt)
        g = random_gl2(ring, rng)
        X = _mat_mul_ring(ring, A, g)
        ok_mem = v23_membership(ring, X)
        ok_det = v23_membership_via_det(ring, X)
        sol = solve_xyz(ring, X)
        if sol is None:
            # outside the section (a1 d1 - b1 c1 not a unit): the unit
            # locus is not right-invariant, so this is expected sometimes
            skipped += 1
            if not (ok_mem and ok_det):
                failures.append({"trial": t, "membership": ok_mem,
                                 "membership_det": ok_det, "skipped": True})
            continue
        ok_sol = sol == pt
        ok_fac = factor_check(ring, X)
        if not (ok_mem and ok_det and ok_sol and ok_fac):
            failures.append(
                {"trial": t, "point": [repr(c) for c in pt],
                 "membership": ok_mem, "membership_det": ok_det,
                 "solve": ok_sol, "factor": ok_fac}
            )
    # a non-member sanity point: the identity matrix
    ident = ((ring.one, ring.zero), (ring.zero, ring.one))
    ident_rejected = not v23_membership(ring, ident)
    solved = trials - skipped
    return {
        "q": q,
        "trials": trials,
        "seed": seed,
        "failures": failures,
        "skipped_outside_section": skipped,
        "solved": solved,
        "identity_rejected": ident_rejected,
        "pass": not failures and ident_rejected and solved > 0,
    }


# ---------------------------------------------------------------------------
# global counts
# ---------------------------------------------------------------------------


def gl2_w3_order(q: int) -> int:
    return q**8 * (q * q - 1) * (q * q - q)


def count_v23(q: int) -> int:
    """|V_{2,3}(F_q)| by digit-level enumeration with the level-2 count in
    closed form (the top digit enters the determinant affinely)."""
    ring = chart_ring(q)
    f = ring.field
    els = list(f.elements())
    total = 0
    # level 0: a0 d0 = b0 c0
    for a0, b0, c0, d0 in itertools.product(els, repeat=4):
        if a0 * d0 != b0 * c0:
            continue
        lvl0 = (a0, b0, c0, d0)
        any_unit_coeff = any(lvl0)
        for a1, b1, c1, d1 in itertools.product(els, repeat=4):
            # level 1: polarized determinant vanishes
            if a0 * d1 + a1 * d0 != b0 * c1 + b1 * c0:
                continue
            # level 2: det digit 2 = t + a2 d0 + a0 d2 - b2 c0 - b0 c2
            X = (
                (ring.from_digits([a0, a1]), ring.from_digits([b0, b1])),
                (ring.from_digits([c0, c1]), ring.from_digits([d0, d1])),
            )
            det = ring.sub(
                ring.mul(X[0][0], X[1][1]), ring.mul(X[0][1], X[1][0])
            )
            t = ring.digits(det)[2]
            if any_unit_coeff:
                total += q**4 - q**3
            else:
                total += q**4 if t else 0
    return total


def stabilizer_order(ring, X) -> int:
    """|{g in GL_2(W_3) : X g = X}| for X with det of valuation exactly 2.

    Solutions are g = 1 + k with X k = 0; the kernel of X per column has
    order q^{v(det X)} and lies inside p W_3^2 (each elementary divisor
    exponent is at most 2), so 1 + k is always invertible.
    """
    from .lattice import smith_exponents

    es = smith_exponents(ring, X)
    if sum(es) != 2 or any(e > 2 for e in es):
        raise ValueError("X does not have determinant of valuation exactly 2")
    return ring.q ** (2 * sum(es))


def quotient_count_check(q: int) -> dict:
    """The torsor count identity for the level space over the degree-2
    Schubert space:

        sum_{A in V_{2,3}(F_q)} |Stab(A)| = |Gr_2bar(F_q)| * |GL_2(W_3(F_q))|

    (the left side counts pairs (A, g) with A g = A, i.e. the level space;
    over F_q the torsor is trivial, so the product formula is exact).
    Every A in V_{2,3} has |Stab(A)| = q^4, so the raw matrix count is the
    product divided by q^4; both are reported.
    """
    gr = count_leq((2, 0), q)
    gl = gl2_w3_order(q)
    v = count_v23(q)
    pairs = v * q**4
    return {
        "q": q,
        "gr2bar": gr,
        "gl2_w3": gl,
        "v23": v,
        "stabilizer_order": q**4,
        "level_space": pairs,
        "product": gr * gl,
        "pass": pairs == gr * gl,
    }


def equal_char_compare(q: int) -> dict:
    """Cell-by-cell agreement of the degree-2 space between W_3(F_q) and
    F_q[t]/t^3 coefficients."""
    cells = {}
    ok = True
    for mu in ((2, 0), (1, 1)):
        a = count_cell(mu, q, "mixed")
        b = count_cell(mu, q, "equal")
        cells[str(mu)] = {"mixed": a, "equal": b}
        ok = ok and a == b
    ta = count_leq((2, 0), q, "mixed")
    tb = count_leq((2, 0), q, "equal")
    return {
        "q": q,
        "cells": cells,
        "total_mixed": ta,
        "total_equal": tb,
        "pass": ok and ta == tb,
    }
