"""
Root-datum combinatorics for GL_n and the Satake-side identities.

Counts come from the lattice module; this module turns them into the
spherical-function data: the transform of basis elements, the triangular
expansion against Weyl characters with its inverse-Kostka coefficients,
Kostka-Foulkes polynomials, leading-coefficient checks for the
semi-infinite intersections, and the commutativity sign.

Half q-powers are tracked in the formal unit u with u^2 = q; every solve
that has to be exact is done per-q in Fractions (the q-parity within one
component is constant, so those values are honest rationals) and the
polynomial answers are then reconstructed by exact interpolation over a
q grid.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .coweights import (
    add,
    dominance_leq,
    dominant_sort,
    dominant_weights_below,
    dual,
    pairing_2rho,
    parity,
    quasi_minuscule,
    weyl_orbit,
)
from .lattice import convolution_fiber_count, count_mv, count_mv_leq
from .qpoly import Laurent, QPoly

DEFAULT_Q_GRID = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25)


class RootDatum:
    """Type-A root datum: GL_n coweights with the standard pairings."""

    def __init__(self, n: int):
        self.n = n
        self.rho_tilde = tuple(range(n - 1, -1, -1))  # rho + (n-1)/2 * (1..1)

    def dominance_leq(self, lam, mu) -> bool:
        return dominance_leq(lam, mu)

    def pairing_2rho(self, mu) -> int:
        return pairing_2rho(mu)

    def parity(self, mu) -> int:
        return parity(mu)

    def dual(self, mu):
        return dual(mu)

    def positive_roots(self):
        n = self.n
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                r = [0] * n
                r[i], r[j] = 1, -1
                out.append(tuple(r))
        return tuple(out)


def dominance_lt(lam, mu) -> bool:
    return lam != mu and dominance_leq(lam, mu)


# ---------------------------------------------------------------------------
# weight and tensor multiplicities
# ---------------------------------------------------------------------------


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def weight_multiplicities(mu) -> dict:
    """Freudenthal's recursion: dominant weight -> multiplicity in V_mu."""
    mu = tuple(mu)
    n = len(mu)
    if not all(mu[i] >= mu[i + 1] for i in range(n - 1)):
        raise ValueError("mu must be dominant")
    rho = tuple(range(n - 1, -1, -1))
    doms = sorted(dominant_weights_below(mu), key=pairing_2rho, reverse=True)
    positive = RootDatum(n).positive_roots()
    mults = {mu: 1}
    norm_mu = _dot(add(mu, rho), add(mu, rho))
    for lam in doms:
        if lam == mu:
            continue
        den = norm_mu - _dot(add(lam, rho), add(lam, rho))
        num = 0
        for alpha in positive:
            k = 1
            while True:
                nu = tuple(l + k * a for l, a in zip(lam, alpha))
                nud = dominant_sort(nu)
                if not dominance_leq(nud, mu):
                    break
                m = mults.get(nud, 0)
                if m:
                    num += 2 * m * _dot(nu, alpha)
                k += 1
        val = Fraction(num, den)
        if val.denominator != 1:
            raise AssertionError("Freudenthal recursion produced a non-integer")
        if val:
            mults[lam] = int(val)
    return mults


def weight_multiplicity(mu, lam) -> int:
    """dim V_mu(lam)."""
    mu, lam = tuple(mu), tuple(lam)
    if sum(mu) != sum(lam):
        return 0
    return weight_multiplicities(mu).get(dominant_sort(lam), 0)


def all_weights_with_mult(mu):
    """(weight, multiplicity) over the full weight system of V_mu."""
    out = []
    for lam, m in weight_multiplicities(tuple(mu)).items():
        for w in weyl_orbit(lam):
            out.append((w, m))
    return out


def tensor_multiplicity(mu_seq, lam) -> int:
    """Multiplicity of V_lam inside V_{mu_1} ⊗ ... ⊗ V_{mu_m}."""
    mu_seq = [tuple(m) for m in mu_seq]
    lam = tuple(lam)
    if not mu_seq:
        return 1 if not any(lam) else 0
    n = len(mu_seq[0])
    rho = tuple(range(n - 1, -1, -1))
    state = {mu_seq[0]: 1}
    for mu in mu_seq[1:]:
        wts = all_weights_with_mult(mu)
        new: dict = {}
        for nu, m in state.items():
            base = add(nu, rho)
            for wt, wm in wts:
                cand = add(base, wt)
                if len(set(cand)) != n:
                    continue
                srt = tuple(sorted(cand, reverse=True))
                # parity of the sorting permutation
                perm = sorted(range(n), key=lambda i: -cand[i])
                sign = 1
                seen = [False] * n
                for i in range(n):
                    if seen[i]:
                        continue
                    j, c = i, 0
                    while not seen[j]:
                        seen[j] = True
                        j = perm[j]
                        c += 1
                    if c % 2 == 0:
                        sign = -sign
                target = tuple(s - r for s, r in zip(srt, rho))
                new[target] = new.get(target, 0) + sign * m * wm
        state = {k: v for k, v in new.items() if v}
    return state.get(lam, 0)


# ---------------------------------------------------------------------------
# the transform of basis functions, and the triangular expansions
# ---------------------------------------------------------------------------


def satake_transform(mu, q, kind="mixed") -> dict:
    """Sat(1_{K mu K}) as {lam: Laurent in u}, u^2 = q.

    Value at lam is q^{-(rho,lam)} |S_lam ∩ Gr_mu(F_q)|, over the full
    weight support.
    """
    mu = tuple(mu)
    out = {}
    for lam_dom in dominant_weights_below(mu):
        for lam in weyl_orbit(lam_dom):
            c = count_mv(lam, mu, q, kind)
            if c:
                out[lam] = Laurent.term(c, -pairing_2rho(lam))
    return out


def transform_is_weyl_invariant(mu, q, kind="mixed") -> bool:
    """W-invariance of the transform after evaluating u^2 = q.

    Values at lam and w(lam) differ formally by an even power of u, so the
    comparison is between count(lam) q^{(M - (2rho,lam))/2} across each
    orbit (M an orbit-wide normalizer).
    """
    mu = tuple(mu)
    for lam_dom in dominant_weights_below(mu):
        orbit = weyl_orbit(lam_dom)
        big = max(pairing_2rho(l) for l in orbit)
        ref = None
        for lam in orbit:
            e = big - pairing_2rho(lam)
            if e % 2:
                return False
            val = count_mv(lam, mu, q, kind) * q ** (e // 2)
            if ref is None:
                ref = val
            elif val != ref:
                return False
    return True


def _normalized_transform_values(mu, q, kind="mixed") -> dict:
    """{lam dominant: q^{-(rho,mu)-(rho,lam)} count_mv(lam, mu, q)} in Q."""
    mu = tuple(mu)
    out = {}
    for lam in dominant_weights_below(mu):
        c = count_mv(lam, mu, q, kind)
        e = pairing_2rho(lam) + pairing_2rho(mu)
        if e % 2:
            raise AssertionError("parity mismatch within one component")
        out[lam] = Fraction(c, q ** (e // 2))
    return out


def _triangular_solve_against_characters(values: dict, mu) -> dict:
    """Solve values(lam) = sum_nu c_nu dim V_nu(lam) for {c_nu}, nu <= mu."""
    doms = sorted(dominant_weights_below(mu), key=pairing_2rho, reverse=True)
    coeffs: dict = {}
    for nu in doms:
        acc = values.get(nu, Fraction(0))
        for nu2 in doms:
            if nu2 == nu or nu2 not in coeffs:
                continue
            m = weight_multiplicity(nu2, nu)
            if m:
                acc -= coeffs[nu2] * m
        coeffs[nu] = acc
    return coeffs


def interpolate_polynomial(points):
    """Exact Lagrange interpolation; returns Fraction coefficients."""

    def poly_mul(a, b):
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    pts = list(points)
    coeffs = [Fraction(0)] * len(pts)
    for xi, yi in pts:
        basis = [Fraction(1)]
        den = Fraction(1)
        for xj, _ in pts:
            if xj == xi:
                continue
            basis = poly_mul(basis, [Fraction(-xj), Fraction(1)])
            den *= Fraction(xi - xj)
        scale = Fraction(yi) / den
        for i, c in enumerate(basis):
            coeffs[i] += scale * c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def lusztig_kato_expand(mu, q_grid=None, kind="mixed") -> dict:
    """The triangular expansion of q^{-(rho,mu)} Sat(1_{K mu K}) in the
    character basis: {nu: P_{mu nu} as a QPoly in v = q^{-1}}.

    Unitriangular with zero constant term off the top; coefficients may be
    negative (this matrix is inverse to the Kostka-Foulkes one).
    """
    mu = tuple(mu)
    doms = dominant_weights_below(mu)
    deg_cap = (pairing_2rho(mu) - min(pairing_2rho(d) for d in doms)) // 2 + 1
    grid = list(q_grid) if q_grid else list(DEFAULT_Q_GRID[: deg_cap + 2])
    per_q = {}
    for q in grid:
        vals = _normalized_transform_values(mu, q, kind)
        per_q[q] = _triangular_solve_against_characters(vals, mu)
    out = {}
    for nu in doms:
        pts = [(Fraction(1, q), per_q[q][nu]) for q in grid]
        coeffs = interpolate_polynomial(pts)
        ints = []
        for c in coeffs:
            if c.denominator != 1:
                raise AssertionError(
                    f"expansion coefficient for {nu} is not a polynomial in 1/q"
                )
            ints.append(int(c))
        out[nu] = QPoly(ints)
    return out


def kostka_foulkes(mu, lam, q_grid=None, kind="mixed") -> QPoly:
    """K_{mu lam}(t), by solving characters against the normalized
    transform values (Hall-Littlewood data) and interpolating in t."""
    mu, lam = tuple(mu), tuple(lam)
    if sum(mu) != sum(lam):
        return QPoly()
    lam = dominant_sort(lam)
    if not dominance_leq(lam, mu):
        return QPoly()
    doms = dominant_weights_below(mu)
    deg_cap = (pairing_2rho(mu) - pairing_2rho(lam)) // 2 + 1
    grid = list(q_grid) if q_grid else list(DEFAULT_Q_GRID[: deg_cap + 2])
    pts = []
    for q in grid:
        # solve chi_mu(..) = sum_nu K(t=1/q) G_nu(..) triangularly
        targets = {d: Fraction(weight_multiplicity(mu, d)) for d in doms}
        coeffs: dict = {}
        for nu in sorted(doms, key=pairing_2rho, reverse=True):
            acc = targets.get(nu, Fraction(0))
            gvals = _normalized_transform_values(nu, q, kind)
            for nu2 in doms:
                if nu2 == nu or nu2 not in coeffs:
                    continue
                g2 = _normalized_transform_values(nu2, q, kind)
                if nu in g2:
                    acc -= coeffs[nu2] * g2[nu]
            # G_nu(nu) = q^{-(rho,nu)-(rho,nu)} q^{(2rho,nu)} = 1
            coeffs[nu] = acc
        pts.append((Fraction(1, q), coeffs[lam]))
    coeffs = interpolate_polynomial(pts)
    ints = []
    for c in coeffs:
        if c.denominator != 1:
            raise AssertionError("Kostka-Foulkes solve gave non-polynomial data")
        ints.append(int(c))
    poly = QPoly(ints)
    if any(c < 0 for c in poly.to_list()):
        raise AssertionError("Kostka-Foulkes polynomial has a negative coefficient")
    return poly


# ---------------------------------------------------------------------------
# leading-coefficient checks
# ---------------------------------------------------------------------------


def fit_count_polynomial(counts):
    """Exact interpolation of {q: count}; returns integer coefficients."""
    pts = [(Fraction(q), Fraction(c)) for q, c in sorted(counts.items())]
    coeffs = interpolate_polynomial(pts)
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise AssertionError("count data does not interpolate integrally")
        out.append(int(c))
    return QPoly(out)


def mv_leading_check(lam, mu, q_grid=None, kind="mixed") -> dict:
    """Check deg |S_lam ∩ Gr_{<=mu}| = (rho, lam+mu) with leading
    coefficient dim V_mu(lam); returns a report dict."""
    lam, mu = tuple(lam), tuple(mu)
    e = pairing_2rho(lam) + pairing_2rho(mu)
    if e % 2:
        raise ValueError("lam and mu are in different components")
    expected_deg = e // 2
    grid = list(q_grid) if q_grid else list(DEFAULT_Q_GRID[: expected_deg + 2])
    counts = {q: count_mv_leq(lam, mu, q, kind) for q in grid}
    poly = fit_count_polynomial(counts)
    mult = weight_multiplicity(mu, lam)
    ok = poly.degree == expected_deg and poly.coeff(expected_deg) == mult
    if mult == 0:
        ok = poly.degree == -1
    return {
        "lambda": list(lam),
        "mu": list(mu),
        "counts": {q: counts[q] for q in grid},
        "poly": poly.to_list(),
        "expected_degree": expected_deg,
        "leading": poly.coeff(expected_deg),
        "weight_multiplicity": mult,
        "pass": ok,
    }


def semismall_report(mu_seq, q_grid=None, kind="mixed") -> dict:
    """Degree bound (rho, |mu|-lam) for the composite fibers over pi^lam,
    with the coefficient at the bound equal to the tensor multiplicity."""
    mu_seq = [tuple(m) for m in mu_seq]
    total = tuple(sum(m[i] for m in mu_seq) for i in range(len(mu_seq[0])))
    rows = []
    all_ok = True
    for lam in dominant_weights_below(total):
        bound2 = pairing_2rho(total) - pairing_2rho(lam)
        if bound2 % 2:
            raise AssertionError("parity violation in the fiber degree bound")
        bound = bound2 // 2
        grid = list(q_grid) if q_grid else list(DEFAULT_Q_GRID[: bound + 2])
        counts = {q: convolution_fiber_count(mu_seq, lam, q, kind) for q in grid}
        poly = fit_count_polynomial(counts)
        mult = tensor_multiplicity(mu_seq, lam)
        ok = poly.degree <= bound and poly.coeff(bound) == mult
        all_ok = all_ok and ok
        rows.append(
            {
                "lambda": list(lam),
                "degree_bound": bound,
                "poly": poly.to_list(),
                "coeff_at_bound": poly.coeff(bound),
                "tensor_multiplicity": mult,
                "pass": ok,
            }
        )
    return {"mu_seq": [list(m) for m in mu_seq], "rows": rows, "pass": all_ok}


# ---------------------------------------------------------------------------
# the commutativity sign
# ---------------------------------------------------------------------------


def commutativity_sign(mu, nu, lam) -> int:
    """(-1)^{(rho, mu+nu-lam) + (2rho,mu)(2rho,nu)}."""
    mu, nu, lam = tuple(mu), tuple(nu), tuple(lam)
    beta = tuple(m + x - l for m, x, l in zip(mu, nu, lam))
    if sum(beta) != 0:
        raise ValueError("lam must lie in the component of mu+nu")
    two_rho_beta = pairing_2rho(beta)
    if two_rho_beta % 2:
        raise AssertionError("(rho, mu+nu-lam) is not an integer")
    e = two_rho_beta // 2 + pairing_2rho(mu) * pairing_2rho(nu)
    return -1 if e % 2 else 1
