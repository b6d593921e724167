"""
Sigma-conjugacy data and affine Deligne-Lusztig point counts for GL_n.

The isocrystal invariants (Newton point, defect) come from the Newton
polygon of the characteristic polynomial of the sigma-norm.  Point counts
enumerate window lattices over W_h(F_{p^r}) with the twisted condition
inv(b sigma(L), L) <= mu; counting is of lattices with a fixed Kottwitz
index (0 by default), so each coset point appears exactly once.

Two counting paths: a plain window scan (any n, used as the oracle at
small q), and a digit-DFS for n = 2 that peels Teichmueller digits of the
off-diagonal Iwasawa coordinate.  Witt carries only propagate upward, so
once a digit position clears every constraint threshold the remaining
digits are free and are counted in closed form; that keeps r <= 5 grids
exact without enumerating ~q^3 solutions one by one.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .coweights import dominance_leq, pairing_2rho
from .lattice import (
    _compositions,
    _stratum_full,
    identity_matrix,
    mat_adjugate,
    mat_mul,
    smith_exponents,
)
from .rings import MixedRing, make_ring
from .witt import PrecisionError


class SigmaClass:
    """A representative b in GL_n(W_h(F_{p^r})[1/p]): p^shift * integral."""

    def __init__(self, n, p, shift, int_rows, r=1, h=None):
        self.n = n
        self.p = p
        self.r = r
        self.shift = shift
        self.int_rows = tuple(tuple(row) for row in int_rows)  # integer entries
        self.h = h

    @classmethod
    def identity(cls, n, p, r=1):
        return cls(n, p, 0, [[1 if i == j else 0 for j in range(n)] for i in range(n)], r)

    @classmethod
    def diagonal(cls, p, powers, r=1):
        n = len(powers)
        shift = min(powers)
        rows = [
            [p ** (powers[i] - shift) if i == j else 0 for j in range(n)]
            for i in range(n)
        ]
        return cls(n, p, shift, rows, r)

    @classmethod
    def superbasic_gl2(cls, p, det_valuation=1, r=1):
        """[[0, p^ceil(v/2)], [p^floor(v/2), 0]]: slopes (v/2, v/2)."""
        v = det_valuation
        return cls(2, p, 0, [[0, p ** ((v + 1) // 2)], [p ** (v // 2), 0]], r)

    def det_valuation(self) -> int:
        det = _int_det(self.int_rows)
        v = 0
        while det % self.p == 0:
            det //= self.p
            v += 1
        return v + self.n * self.shift

    def to_json(self):
        return {"n": self.n, "p": self.p, "r": self.r, "shift": self.shift,
                "matrix": [list(r) for r in self.int_rows]}


def _int_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * _int_det(minor)
        acc += term if j % 2 == 0 else -term
    return acc


def _int_to_ring(ring, x):
    if ring.r == 1:
        return x % ring.w.ph if isinstance(ring, MixedRing) else None
    return (x % ring.w.ph,) + (0,) * (ring.r - 1)


def _ring_matrix(ring, rows):
    out = []
    for row in rows:
        out.append(tuple(_int_to_ring(ring, x) for x in row))
    return tuple(out)


# ---------------------------------------------------------------------------
# Newton point and defect
# ---------------------------------------------------------------------------


def _char_poly_valuations(ring, M, max_val):
    """Valuations of char-poly coefficients c_k (k = 0..n), c_n = 1.

    c_k = (-1)^{n-k} e_{n-k}(eigenvalues); e_j = sum of principal j-minors.
    Returns a list of valuations (ring.h meaning 'beyond precision').
    """
    n = len(M)
    vals = [None] * (n + 1)
    vals[n] = 0
    for j in range(1, n + 1):
        acc = ring.zero
        for rows in itertools.combinations(range(n), j):
            sub = [[M[i][k] for k in rows] for i in rows]
            from .lattice import mat_det

            acc = ring.add(acc, mat_det(ring, sub))
        vals[n - j] = ring.valuation(acc)
    return vals


def newton_point(b: SigmaClass, r=None, window_h=None):
    """Slopes of b: Newton polygon of char(Nm_r b), divided by r.

    r defaults to the field degree of b; passing a multiple must give the
    same point (tested), which certifies the computation.
    """
    n, p = b.n, b.p
    r = r or b.r
    need = n * (abs(b.det_valuation()) + 2) + 4
    h = window_h or max(need, 6)
    ring = make_ring("mixed", p**b.r, h)
    B = _ring_matrix(ring, b.int_rows)
    acc = B
    cur = B
    for _ in range(r - 1):
        cur = tuple(tuple(ring.sigma(x) for x in row) for row in cur)
        acc = mat_mul(ring, acc, cur)
    vals = _char_poly_valuations(ring, acc, h)
    det_v = vals[0]
    if det_v >= ring.h:
        raise PrecisionError("norm determinant valuation exceeds precision")
    # lower convex hull of (k, v(c_k) + k*r*shift-correction)
    pts = []
    for k, v in enumerate(vals):
        vv = v + (n - k) * r * b.shift
        pts.append((k, vv if v < ring.h else None))
    hull = _lower_hull(pts, ring.h + n * r * abs(b.shift))
    slopes = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        s = Fraction(y1 - y2, x2 - x1)  # root valuation on this segment
        for _ in range(x2 - x1):
            slopes.append(s / r)
    slopes.sort(reverse=True)
    return tuple(slopes)


def _lower_hull(pts, infinity):
    """Lower convex hull over known points; unknown ones must be above it."""
    known = [(x, y) for x, y in pts if y is not None]
    hull = []
    for x, y in known:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (x - x2) >= (y - y2) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append((x, y))
    for x, y in pts:
        if y is None:
            # the unknown coefficient is divisible by p^infinity-ish; its
            # point lies at or above `infinity`, which must clear the hull
            for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
                if x1 <= x <= x2:
                    hull_y = Fraction(y1) + Fraction(y2 - y1, x2 - x1) * (x - x1)
                    if Fraction(infinity) < hull_y:
                        raise PrecisionError(
                            "Newton polygon is not certified at this precision"
                        )
    return hull


def defect(b: SigmaClass) -> int:
    """n - sum_j m_j where slope p_j/q_j (lowest terms) occurs m_j q_j times."""
    nu = newton_point(b)
    groups: dict = {}
    for s in nu:
        groups[s] = groups.get(s, 0) + 1
    total = 0
    for s, cnt in groups.items():
        qj = Fraction(s).denominator
        if cnt % qj:
            raise AssertionError("slope multiplicities violate isocrystal periods")
        total += cnt // qj
    return b.n - total


def mazur_admissible(mu, b: SigmaClass) -> bool:
    """Nonemptiness gate: equal Kottwitz index and nu_b <= mu."""
    mu = tuple(mu)
    nu = newton_point(b)
    if sum(mu) != b.det_valuation():
        return False
    s = Fraction(0)
    for m, x in zip(mu, nu):
        s += Fraction(m) - x
        if s < 0:
            return False
    return s == 0


def rapoport_dimension(mu, b: SigmaClass):
    """<rho, mu - nu_b> - def(b)/2 (must be a nonnegative integer when
    admissible)."""
    mu = tuple(mu)
    if not mazur_admissible(mu, b):
        raise ValueError("(mu, b) is not admissible")
    nu = newton_point(b)
    n = b.n
    two_rho = [n - 1 - 2 * i for i in range(n)]
    val = sum(Fraction(c) * (Fraction(m) - x) for c, m, x in zip(two_rho, mu, nu))
    val = val / 2 - Fraction(defect(b), 2)
    if val.denominator != 1:
        raise AssertionError("dimension formula is not integral")
    return int(val)


# ---------------------------------------------------------------------------
# point counting
# ---------------------------------------------------------------------------


def default_window(mu, b: SigmaClass) -> int:
    return max(abs(mu[0]), abs(mu[-1])) + 1


def count_points_brute(mu, b: SigmaClass, r, window, mode="leq", kottwitz=0):
    """Window scan over all canonical forms (any n; oracle path)."""
    mu = tuple(mu)
    n = b.n
    if sum(mu) != b.det_valuation():
        return 0
    s = window
    h = 2 * (2 * s * n + abs(b.det_valuation()) + 2) + 4
    ring = make_ring("mixed", b.p**r, h)
    B = _ring_matrix(ring, b.int_rows)
    total = n * s + kottwitz
    count = 0
    for pivots in _compositions(total, n, 2 * s):
        for mat, _ in _stratum_full(ring, pivots):
            K = mat_mul(ring, B, tuple(
                tuple(ring.sigma(x) for x in row) for row in mat
            ))
            C = mat_mul(ring, mat_adjugate(ring, mat), K)
            try:
                es = smith_exponents(ring, C)
            except PrecisionError:
                raise
            inv = tuple(
                sorted((e - sum(pivots) + b.shift for e in es), reverse=True)
            )
            if mode == "leq":
                ok = dominance_leq(inv, mu)
            else:
                ok = inv == mu
            if ok:
                count += 1
    return count


def _teich_table(ring):
    return [ring.lift(x) for x in ring.field.elements()]


def count_points_gl2(mu, b: SigmaClass, r, window, mode="leq", kottwitz=0):
    """Digit-DFS count for n = 2 (production path; must match the brute
    scan, which the tests check at small q)."""
    mu = tuple(mu)
    if b.n != 2:
        raise ValueError("fast path is rank-2 only")
    if sum(mu) != b.det_valuation():
        return 0
    if mode == "eq":
        hi = count_points_gl2(mu, b, r, window, "leq", kottwitz)
        if mu[0] == mu[1]:
            return hi
        inner = (mu[0] - 1, mu[1] + 1)
        if inner[0] < inner[1]:
            return hi
        return hi - count_points_gl2(inner, b, r, window, "leq", kottwitz)

    p, s = b.p, window
    total = 0
    for a in range(-s, s + 1):
        bb = kottwitz - a
        if not -s <= bb <= s:
            continue
        total += _stratum_count_gl2(mu, b, r, s, a, bb)
    return total


def _stratum_count_gl2(mu, b, r, s, a, bb):
    p = b.p
    mB = b.shift
    (B11i, B12i), (B21i, B22i) = b.int_rows
    # term shifts (powers of p multiplying integral data)
    shifts = {
        "n11_0": mB, "n11_c": mB - bb - s,
        "n12_0": mB + bb - a, "n12_sc": mB - a - s,
        "n12_c": mB - a - s, "n12_cs": mB - a - bb - 2 * s,
        "n21_0": mB + a - bb,
        "n22_0": mB, "n22_sc": mB - bb - s,
    }
    E = max(0, -min(shifts.values()))
    t = mu[1] + E
    # window: iwasawa pivots in [-s, s], entry valuation >= -s; stored
    # digit positions of c~ = p^s c run from 0 to a+s
    lo_pos = 0
    hi_pos = a + s
    if hi_pos < lo_pos:
        hi_pos = lo_pos
    H = max(t + 2, hi_pos + 2, 4)
    ring = make_ring("mixed", p**r, H)

    def iv(x):
        return _int_to_ring(ring, x)

    def term(name, base):
        sh = E + shifts[name]
        return ring.mul_unif(iv(base), sh)

    # entry structure: value0, coeff_c, coeff_sigma_c, coeff_c_sigma_c
    entries = [
        [term("n11_0", B11i), term("n11_c", -B21i), None, None],
        [term("n12_0", B12i), term("n12_c", -B22i), term("n12_sc", B11i),
         term("n12_cs", -B21i)],
        [term("n21_0", B21i), None, None, None],
        [term("n22_0", B22i), None, term("n22_sc", B21i), None],
    ]
    lin_omegas = []
    cross_vals = []
    for ent in entries:
        vs = [ring.valuation(c) for c in (ent[1], ent[2]) if c is not None]
        lin_omegas.append(min(vs) if vs else ring.h)
        cross_vals.append(ring.valuation(ent[3]) if ent[3] is not None else ring.h)
    digit_pairs = [
        (ring.lift(x), ring.lift(x.frobenius()))
        for x in ring.field.elements()
        if x
    ]
    q = ring.q

    count = 0
    init_vals = [e[0] for e in entries]

    def horizons(pos, vc):
        # future digits at stored positions >= pos contribute valuation
        # >= pos + v(C_lin) to linear terms and >= pos + v(C3) + min(vc, pos)
        # to the cross term (carries only propagate upward)
        out = []
        for lo_lin, lo_cross in zip(lin_omegas, cross_vals):
            h1 = pos + lo_lin
            h2 = pos + lo_cross + min(vc, pos)
            out.append(min(h1, h2))
        return out

    def rec(pos, vals, c_cur, sc_cur, vc):
        nonlocal count
        if pos >= hi_pos:
            if all(ring.valuation(v) >= t for v in vals):
                count += 1
            return
        hs = horizons(pos, vc)
        for val, hz in zip(vals, hs):
            lim = min(t, hz)
            if lim > 0 and ring.valuation(val) < lim:
                return
        if all(hz >= t for hz in hs):
            count += q ** (hi_pos - pos)
            return
        rec(pos + 1, vals, c_cur, sc_cur, vc)  # digit 0
        for tg, tgs in digit_pairs:
            dgc = ring.mul_unif(tg, pos)
            dgs = ring.mul_unif(tgs, pos)
            new_vals = []
            for (v0, ent) in zip(vals, entries):
                nv = v0
                if ent[1] is not None:
                    nv = ring.add(nv, ring.mul(ent[1], dgc))
                if ent[2] is not None:
                    nv = ring.add(nv, ring.mul(ent[2], dgs))
                if ent[3] is not None:
                    cross = ring.add(
                        ring.add(ring.mul(dgc, sc_cur), ring.mul(c_cur, dgs)),
                        ring.mul(dgc, dgs),
                    )
                    nv = ring.add(nv, ring.mul(ent[3], cross))
                new_vals.append(nv)
            rec(pos + 1, new_vals, ring.add(c_cur, dgc), ring.add(sc_cur, dgs),
                min(vc, pos))

    rec(lo_pos, init_vals, ring.zero, ring.zero, ring.h)
    return count


def count_points(mu, b: SigmaClass, r, window=None, mode="leq", kottwitz=0):
    """|X_{<=mu}(b)(F_{p^r})| (or = mu) within the window, Kottwitz-fixed."""
    mu = tuple(mu)
    window = window if window is not None else default_window(mu, b)
    if b.n == 2:
        return count_points_gl2(mu, b, r, window, mode, kottwitz)
    return count_points_brute(mu, b, r, window, mode, kottwitz)


def estimate_dimension(counts: dict, p: int, threshold=0.2):
    """Least-squares slope of log_p(count) against r; report dict."""
    rs = sorted(counts)
    ys = []
    for r in rs:
        c = counts[r]
        if c <= 0:
            raise ValueError("cannot fit dimension through a zero count")
        ys.append(float(np.log(c) / np.log(p)))
    xs = np.array(rs, dtype=float)
    ys = np.array(ys)
    if len(rs) == 1:
        slope, resid = 0.0, 0.0
    else:
        A = np.vstack([xs, np.ones_like(xs)]).T
        sol, *_ = np.linalg.lstsq(A, ys, rcond=None)
        slope = float(sol[0])
        resid = float(np.max(np.abs(A @ sol - ys)))
    return {
        "slope": slope,
        "dimension": int(round(slope)),
        "residual": resid,
        "reliable": resid <= threshold,
        "counts": {int(r): int(counts[r]) for r in rs},
    }


# ---------------------------------------------------------------------------
# convolution counts and the norm reduction
# ---------------------------------------------------------------------------


def _window_lattices(ring, n, s, kottwitz, b_shift=0):
    """(mat, pivots) for p^s L over the two-sided window, kottwitz fixed."""
    total = n * s + kottwitz
    if total < 0:
        return
    for pivots in _compositions(total, n, 2 * s):
        yield from ((mat, pivots) for mat, _ in _stratum_full(ring, pivots))


def _window_data(ring, n, s, kottwitz):
    """Window lattices with precomputed adjugate and sigma image."""
    out = []
    for mat, pivots in _window_lattices(ring, n, s, kottwitz):
        adj = mat_adjugate(ring, mat)
        sig = tuple(tuple(ring.sigma(x) for x in row) for row in mat)
        out.append((mat, sum(pivots), adj, sig))
    return out


def _relative_leq_pre(ring, adj_base, pivsum_base, K, shift, mu):
    """inv(span(K)*p^shift, base) <= mu with the base adjugate given."""
    C = mat_mul(ring, adj_base, K)
    try:
        es = smith_exponents(ring, C)
    except PrecisionError:
        return False, None
    inv = tuple(sorted((e - pivsum_base + shift for e in es), reverse=True))
    return dominance_leq(inv, mu), inv


def _relative_leq(ring, Mbase, pivots_base, K, shift, mu):
    """inv(span(K)*p^shift, span(Mbase)) <= mu, integral matrices."""
    return _relative_leq_pre(
        ring, mat_adjugate(ring, Mbase), sum(pivots_base), K, shift, mu
    )


def _leq_forms(ring, mu_star):
    """Canonical integral forms of relative position <= mu_star (>= 0)."""
    from .lattice import inv_vs_standard

    out = []
    n = len(mu_star)
    for pivots in _compositions(sum(mu_star), n, mu_star[0] if n else 0):
        for mat, _ in _stratum_full(ring, pivots):
            if dominance_leq(inv_vs_standard(ring, mat, pivots), mu_star):
                out.append(mat)
    return out


def _relative_candidates(ring, A, g, mu, s, forms_cache):
    """Window-normalized canonical forms of the lattices M with
    inv(p^g span(A), M) <= mu; M is returned as p^s M (integral).

    M = p^g span(A) * D with D of type <= mu* = (-mu_n..-mu_1); D is
    normalized to p^{-mu_1} E with E integral of type <= mu_1 + mu*.
    """
    from .lattice import hermite_form

    n = len(A)
    mu = tuple(mu)
    mu_star = tuple(mu[0] - mu[n - 1 - i] for i in range(n))
    key = mu_star
    if key not in forms_cache:
        forms_cache[key] = _leq_forms(ring, mu_star)
    shift = s + g - mu[0]
    out = []
    seen = set()
    for E in forms_cache[key]:
        prod = mat_mul(ring, A, E)
        cols = [[prod[i][j] for i in range(n)] for j in range(n)]
        try:
            mat, pivots = hermite_form(ring, cols)
        except PrecisionError:
            continue
        if shift >= 0:
            mat2 = tuple(
                tuple(ring.mul_unif(x, shift) for x in row) for row in mat
            )
            piv2 = tuple(v + shift for v in pivots)
        else:
            if any(ring.valuation(x) < -shift for row in mat for x in row):
                continue  # outside the window
            mat2 = tuple(
                tuple(ring.shift_down(x, -shift) for x in row) for row in mat
            )
            piv2 = tuple(v + shift for v in pivots)
        if any(v < 0 or v > 2 * s for v in piv2):
            continue
        if mat2 in seen:
            continue
        seen.add(mat2)
        out.append((mat2, sum(piv2)))
    return out


def convolution_count(mu_seq, b: SigmaClass, r, window=None, frob_power=1,
                      kottwitz=0):
    """Points of the convolution variant: tuples (L_1..L_d) with steps
    inv(L_{i+1}, L_i) <= mu_i and inv(b sigma^f(L_1), L_d) <= mu_d."""
    mu_seq = [tuple(m) for m in mu_seq]
    if not mu_seq:
        ident = tuple(
            tuple(1 if i == j else 0 for j in range(b.n)) for i in range(b.n)
        )
        return 1 if (b.int_rows == ident and b.shift == 0) else 0
    if len(mu_seq) == 1:
        return count_points(mu_seq[0], b, r, window, "leq", kottwitz)
    n = b.n
    s = window if window is not None else max(
        abs(x) for m in mu_seq for x in m
    ) + 1
    h = 2 * (2 * s * n + abs(b.det_valuation()) + sum(
        abs(x) for m in mu_seq for x in m
    )) + 6
    ring = make_ring("mixed", b.p**r, h)
    B = _ring_matrix(ring, b.int_rows)
    d = len(mu_seq)

    def sigma_mat(M, power):
        out = M
        for _ in range(power % r):
            out = tuple(tuple(ring.sigma(x) for x in row) for row in out)
        return out

    # Chains are built constructively: successors of L_i are the lattices
    # at relative position <= mu_i from it, intersected with the window.
    count = 0
    forms_cache: dict = {}
    base = _window_data(ring, n, s, kottwitz)
    from .coweights import dual as _dual

    for (M1, ps1, adj1, sig1) in base:
        # tails of partial chains; multiplicity matters (distinct paths to
        # the same tail are distinct points), so keep a list
        tails = [(M1, ps1)]
        for i in range(1, d):
            # successors M with inv(M, L_i) <= mu_i, i.e.
            # inv(L_i, M) <= -w0(mu_i)
            nxt = []
            for (Mi, psi) in tails:
                nxt.extend(
                    _relative_candidates(ring, Mi, -s, _dual(mu_seq[i - 1]),
                                         s, forms_cache)
                )
            tails = nxt
            if not tails:
                break
        if not tails:
            continue
        Kclose = mat_mul(ring, B, sigma_mat(M1, frob_power))
        for (Md, psd) in tails:
            ok, _ = _relative_leq(ring, Md, _psd_pivots(ring, Md), Kclose,
                                  b.shift, mu_seq[-1])
            if ok:
                count += 1
    return count


def _psd_pivots(ring, M):
    return tuple(ring.valuation(M[i][i]) for i in range(len(M)))


def res_extension_count(mu_seq, b_components, r, window=None):
    """Points of the restriction-of-scalars variant for an unramified
    degree-d extension: tuples (L_0..L_{d-1}) with
    inv(b_i sigma(L_{i-1}), L_i) <= mu_i, L_0 of Kottwitz index 0."""
    mu_seq = [tuple(m) for m in mu_seq]
    d = len(mu_seq)
    bs = list(b_components)
    if d != len(bs):
        raise ValueError("need one coweight per embedding")
    n = bs[0].n
    p = bs[0].p
    s = window if window is not None else max(
        abs(x) for m in mu_seq for x in m
    ) + 1
    # per-component Kottwitz indices, anchored at kappa(L_0) = 0:
    # sum(mu_i) = v(det b_i) + kappa(L_{i-1}) - kappa(L_i)
    kappas = [0]
    for i in range(1, d):
        kappas.append(kappas[-1] + bs[i].det_valuation() - sum(mu_seq[i]))
    if kappas[-1] + bs[0].det_valuation() - sum(mu_seq[0]) != kappas[0]:
        return 0
    h = 2 * (2 * s * n + sum(abs(x) for m in mu_seq for x in m)
             + sum(abs(b.det_valuation()) for b in bs)) + 6
    ring = make_ring("mixed", p**r, h)
    Bs = [_ring_matrix(ring, b.int_rows) for b in bs]
    base = _window_data(ring, n, s, kappas[0])
    forms_cache: dict = {}
    count = 0
    for (M0, ps0, adj0, sig0) in base:
        # successors: L_i determined up to position <= mu_i from
        # b_i sigma(L_{i-1}); build the tuple constructively
        partial = [(M0, sig0)]
        for i in range(1, d):
            nxt = []
            for (Mprev, sigprev) in partial:
                K = mat_mul(ring, Bs[i], sigprev)
                for (Mi, psi) in _relative_candidates(
                    ring, K, bs[i].shift - s, mu_seq[i], s, forms_cache
                ):
                    sigi = tuple(tuple(ring.sigma(x) for x in row) for row in Mi)
                    nxt.append((Mi, sigi))
            partial = nxt
            if not partial:
                break
        if not partial:
            continue
        # closing condition: inv(b_0 sigma(L_{d-1}), L_0) <= mu_0
        adjM0 = adj0
        for (Md, sigd) in partial:
            K0 = mat_mul(ring, Bs[0], sigd)
            ok, _ = _relative_leq_pre(ring, adjM0, ps0, K0, bs[0].shift,
                                      mu_seq[0])
            if ok:
                count += 1
    return count


def norm_reduce(b_components, mu_seq, r, window=None):
    """Compute Nm b = b_0 ... b_{d-1} and verify the reduction identity
    |X^{Res}_{<=mu}(b)| = |X^H_{<=mu_seq}(Nm b)| by counting both sides."""
    bs = list(b_components)
    d = len(bs)
    n = bs[0].n
    p = bs[0].p
    rows = bs[0].int_rows
    shift = bs[0].shift
    for b2 in bs[1:]:
        rows = tuple(
            tuple(sum(rows[i][k] * b2.int_rows[k][j] for k in range(n))
                  for j in range(n))
            for i in range(n)
        )
        shift += b2.shift
    nm = SigmaClass(n, p, shift, rows, bs[0].r)
    w = window if window is not None else max(
        abs(x) for m in mu_seq for x in m
    ) + 1
    left = res_extension_count(mu_seq, bs, r, w)
    right = convolution_count(
        [tuple(m) for m in mu_seq], nm, r, w, frob_power=d, kottwitz=0
    )
    # both sides must have saturated their windows for the comparison to
    # be about the actual sets (only guaranteed when Nm b is basic with
    # irreducible isocrystal); report stability so callers can tell
    left2 = res_extension_count(mu_seq, bs, r, w + 1)
    right2 = convolution_count(
        [tuple(m) for m in mu_seq], nm, r, w + 1, frob_power=d, kottwitz=0
    )
    stable = left == left2 and right == right2
    return {
        "norm": nm.to_json(),
        "mu_seq": [list(m) for m in mu_seq],
        "left": left,
        "right": right,
        "window_stable": stable,
        "match": left == right,
    }
