"""
Independent oracles used to fix expected values before trusting the
implementation paths.  Everything here is deliberately written against a
different algorithm than the production code.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


# -- Witt vectors over F_p: the ghost-component integer model ---------------


def ghost_value(coords, p, h):
    """The integer mod p^h represented by Witt coordinates over F_p.

    w_{h-1}(a) = sum_i p^i a_i^{p^(h-1-i)} on any integer lifts.
    """
    return sum(p**i * pow(int(a), p ** (h - 1 - i), p**h) for i, a in enumerate(coords)) % p**h


def ghost_inverse(n, p, h):
    """Witt coordinates over F_p of the integer n mod p^h, by digit
    peeling (over the prime field the p-power twists are invisible)."""
    n %= p**h
    coords = []
    for _ in range(h):
        d = n % p
        t = pow(d, p ** (h - 1), p**h) if d else 0
        coords.append(d)
        n = (n - t) // p
    return tuple(coords)


# -- Smith form via determinantal divisors -----------------------------------


def smith_exponents_int(mat, p, h):
    """Divisors of an integer matrix mod p^h by minor-gcd valuations."""
    n = len(mat)
    ph = p**h

    def vp(x):
        x %= ph
        if x == 0:
            return h
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v

    import itertools as it

    def minors(k):
        best = h
        for rows in it.combinations(range(n), k):
            for cols in it.combinations(range(n), k):
                sub = [[mat[i][j] for j in cols] for i in rows]
                d = _int_det(sub) % ph
                best = min(best, vp(d))
        return best

    out = []
    prev = 0
    for k in range(1, n + 1):
        mk = minors(k)
        out.append(mk - prev)
        prev = mk
    return out


def _int_det(m):
    k = len(m)
    if k == 1:
        return m[0][0]
    acc = 0
    for j in range(k):
        sub = [row[:j] + row[j + 1 :] for row in m[1:]]
        t = m[0][j] * _int_det(sub)
        acc += t if j % 2 == 0 else -t
    return acc


# -- Kostant partition function / Weyl multiplicity --------------------------


def kostant_partition(beta, n):
    """Number of ways to write beta as a nonnegative sum of positive roots."""
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            r = [0] * n
            r[i], r[j] = 1, -1
            roots.append(tuple(r))

    def rec(target, idx):
        if idx == len(roots):
            return 1 if not any(target) else 0
        total = 0
        r = roots[idx]
        cap = 0
        # crude bound on the coefficient of this root
        cap = sum(abs(t) for t in target)
        for c in range(cap + 1):
            t2 = tuple(x - c * y for x, y in zip(target, r))
            total += rec(t2, idx + 1)
            if all(y >= 0 for y in r) and c > cap:
                break
        return total

    return rec(tuple(beta), 0)


def weight_multiplicity_kostant(mu, lam):
    """dim V_mu(lam) by the alternating Kostant sum."""
    n = len(mu)
    rho = tuple(range(n - 1, -1, -1))
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        w_mu_rho = tuple((mu[perm[i]] + rho[perm[i]]) for i in range(n))
        beta = tuple(w - l - r for w, l, r in zip(w_mu_rho, lam, rho))
        if sum(beta) != 0:
            continue
        total += sign * kostant_partition(beta, n)
    return total


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, c = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            c += 1
        if c % 2 == 0:
            sign = -sign
    return sign


def clebsch_gordan_gl2(mu, nu, lam):
    """Multiplicity of V_lam in V_mu ⊗ V_nu for GL_2 (classical)."""
    a = mu[0] - mu[1]
    b = nu[0] - nu[1]
    c = lam[0] - lam[1]
    if sum(lam) != sum(mu) + sum(nu):
        return 0
    lo, hi = abs(a - b), a + b
    return 1 if (lo <= c <= hi and (c - lo) % 2 == 0) else 0


# -- Iwahori-Matsumoto length -------------------------------------------------


def im_translation_length(lam):
    """l(t_lam) = sum over positive roots of |<alpha, lam>|."""
    n = len(lam)
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            total += abs(lam[i] - lam[j])
    return total


# -- classical KL recursion (mu-coefficient form) -----------------------------


class KLClassical:
    """P_{y,w} via the original descent recursion (independent of the
    R-polynomial inversion used in the package)."""

    def __init__(self, group):
        self.g = group
        self.memo = {}

    def mu(self, z, w):
        from wittgrass.qpoly import QPoly

        d = self.g.length(w) - self.g.length(z)
        if d <= 0 or d % 2 == 0:
            return 0
        return self.p(z, w).coeff((d - 1) // 2)

    def p(self, y, w):
        from wittgrass.qpoly import QPoly
        from wittgrass.weyl import bruhat_interval

        g = self.g
        key = (y, w)
        if key in self.memo:
            return self.memo[key]
        if y == w:
            res = QPoly((1,))
        elif not g.bruhat_leq(y, w):
            res = QPoly()
        else:
            s = min(g.left_descents(w))
            v = g.left_mul(s, w)  # sw < w
            sy = g.left_mul(s, y)
            c = 1 if g.length(sy) < g.length(y) else 0
            first = QPoly((0, 1)) ** (1 - c) * self.p(sy, v)
            second = QPoly((0, 1)) ** c * self.p(y, v)
            res = first + second
            for z in bruhat_interval(g, v):
                if z == v or not g.bruhat_leq(y, z):
                    continue
                if g.length(g.left_mul(s, z)) > g.length(z):
                    continue
                m = self.mu(z, v)
                if m:
                    e = (g.length(w) - g.length(z)) // 2
                    res = res - QPoly((m,)) * QPoly((0, 1)) ** e * self.p(y, z)
        self.memo[key] = res
        return res


# -- charge statistic ---------------------------------------------------------


def charge_standard_word(word):
    """Charge of a word containing each of 1..m exactly once."""
    m = len(word)
    pos = {v: i for i, v in enumerate(word)}
    c = 0
    total = 0
    for k in range(1, m):
        if pos[k + 1] > pos[k]:
            c += 1
        total += c
    return total


def kostka_foulkes_charge(mu, lam):
    """K_{mu lam}(t) by the charge statistic (multiplicity-free content)."""
    from wittgrass.qpoly import QPoly

    mu = tuple(mu)
    lam = tuple(lam)
    if any(c != 1 for c in lam):
        raise ValueError("charge oracle implemented for content (1,...,1) only")
    n = sum(mu)
    rows = [list(range(0)) for _ in mu]
    coeffs: dict = {}

    def fill(cells, used):
        if len(used) == n:
            word = []
            for r in range(len(mu) - 1, -1, -1):
                word.extend(cells[r])
            ch = charge_standard_word(word)
            coeffs[ch] = coeffs.get(ch, 0) + 1
            return
        v = len(used) + 1
        for r in range(len(mu)):
            if len(cells[r]) >= mu[r]:
                continue
            col = len(cells[r])
            if cells[r] and cells[r][-1] > v:
                continue
            if r > 0 and (len(cells[r - 1]) <= col or cells[r - 1][col] >= v):
                continue
            cells[r].append(v)
            fill(cells, used | {v})
            cells[r].pop()

    fill([[] for _ in mu], frozenset())
    if not coeffs:
        return QPoly()
    return QPoly(tuple(coeffs.get(i, 0) for i in range(max(coeffs) + 1)))


# -- Bruhat subword oracle ----------------------------------------------------


def bruhat_leq_subword(group, y, w):
    """y <= w iff some subword of a reduced word of w multiplies to y."""
    ky, kw = group.kottwitz(y), group.kottwitz(w)
    if ky != kw:
        return False
    wa = group.mul(w, group.omega_power(-kw)) if kw else w
    ya = group.mul(y, group.omega_power(-ky)) if ky else y
    word = group.word(wa)
    for mask in range(1 << len(word)):
        u = group.identity
        for i in range(len(word)):
            if mask >> i & 1:
                u = group.right_mul(u, word[i])
        if u == ya:
            return True
    return False


def double_coset_longest_bfs(group, left_gens, right_gens, x):
    """The full double coset by BFS; returns its unique longest element."""
    seen = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for u in frontier:
            for i in left_gens:
                v = group.left_mul(i, u)
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
            for i in right_gens:
                v = group.right_mul(u, i)
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    best = max(seen, key=lambda u: (group.length(u),))
    # uniqueness of the maximum
    tops = [u for u in seen if group.length(u) == group.length(best)]
    assert len(tops) == 1, "double coset has no unique longest element"
    return best
