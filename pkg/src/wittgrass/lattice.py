"""
Lattices over a finite chain ring in a bounded window of F^n.

A lattice is stored as scale + canonical basis matrix: L = pi^{-s} * span
of the columns of an upper-triangular matrix over the ring, pivot of row i
at (i, i) equal to pi^{a_i}, entries above a pivot reduced modulo it.
Uniqueness of this form over a chain ring makes equality and dedup cheap.

Counting kernels enumerate the canonical forms stratified by the pivot
valuation vector (= the semi-infinite / Iwasawa type).  Within a stratum,
row operations that provably change a single stored entry are quotiented
out and accounted by exact multiplicities, which keeps e.g. the GL_3
windows at a few q^4 representatives instead of q^9.  The unreduced
enumeration is kept as a cross-check (the test suite compares the two on
the full small grid).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

from .coweights import dominance_leq, dominant_sort
from .rings import make_ring
from .witt import PrecisionError


class Lattice:
    __slots__ = ("ring", "n", "scale", "mat")

    def __init__(self, ring, n, scale, mat):
        self.ring = ring
        self.n = n
        self.scale = scale
        self.mat = mat

    @classmethod
    def standard(cls, ring, n):
        return cls(ring, n, 0, identity_matrix(ring, n))

    @classmethod
    def from_columns(cls, ring, cols, scale=0):
        n = len(cols)
        mat, pivots = hermite_form(ring, [list(c) for c in cols])
        return cls(ring, n, scale, mat)._normalized()

    @classmethod
    def pi_power(cls, ring, mu):
        """The lattice spanned by pi^{mu_i} e_i."""
        n = len(mu)
        shift = max(0, -min(mu))
        mat = [[ring.zero] * n for _ in range(n)]
        for i, m in enumerate(mu):
            mat[i][i] = ring.unif_pow(m + shift)
        return cls(ring, n, shift, tuple(tuple(r) for r in mat))._normalized()

    def _normalized(self):
        ring, mat, scale = self.ring, [list(r) for r in self.mat], self.scale
        while scale > 0 and all(
            ring.valuation(x) >= 1 for row in mat for x in row
        ):
            mat = [[ring.shift_down(x, 1) for x in row] for row in mat]
            scale -= 1
        return Lattice(ring, self.n, scale, tuple(tuple(r) for r in mat))

    def pivots(self):
        return tuple(self.ring.valuation(self.mat[i][i]) for i in range(self.n))

    def iwasawa_type(self):
        s = self.scale
        return tuple(v - s for v in self.pivots())

    def kottwitz_index(self):
        return sum(self.pivots()) - self.n * self.scale

    def key(self):
        return (self.ring.kind, self.ring.q, self.n, self.scale, self.mat)

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Lattice(scale={self.scale}, pivots={self.pivots()})"


# ---------------------------------------------------------------------------
# matrix helpers over a chain ring
# ---------------------------------------------------------------------------


def identity_matrix(ring, n):
    return tuple(
        tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n)
    )


def mat_mul(ring, A, B):
    n, m = len(A), len(B[0])
    k = len(B)
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            acc = ring.zero
            for t in range(k):
                a = Ai[t]
                if a != ring.zero:
                    acc = ring.add(acc, ring.mul(a, B[t][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_det(ring, A):
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return ring.sub(ring.mul(A[0][0], A[1][1]), ring.mul(A[0][1], A[1][0]))
    acc = ring.zero
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in A[1:]]
        term = ring.mul(A[0][j], mat_det(ring, minor))
        acc = ring.add(acc, term) if j % 2 == 0 else ring.sub(acc, term)
    return acc


def mat_adjugate(ring, A):
    n = len(A)
    if n == 1:
        return ((ring.one,),)
    out = [[ring.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                row[:j] + row[j + 1 :]
                for k, row in enumerate(A)
                if k != i
            ]
            c = mat_det(ring, minor)
            out[j][i] = c if (i + j) % 2 == 0 else ring.neg(c)
    return tuple(tuple(r) for r in out)


def hermite_form(ring, cols):
    """Canonical upper-triangular column form of the span of cols.

    Returns (matrix as row tuples, pivot valuations).  Raises
    PrecisionError when the span is not full rank at this precision.
    """
    n = len(cols)
    cols = [list(c) for c in cols]
    placed: list = [None] * n
    free = list(range(len(cols)))
    for i in range(n - 1, -1, -1):
        best, bestv = None, ring.h
        for idx in free:
            v = ring.valuation(cols[idx][i])
            if v < bestv:
                best, bestv = idx, v
        if best is None or bestv >= ring.h:
            raise PrecisionError(
                "column span is not full rank within the ring precision"
            )
        piv = cols[best]
        free.remove(best)
        u = ring.shift_down(piv[i], bestv)  # unit
        uinv = ring.inv_unit(u)
        piv = [ring.mul(uinv, x) for x in piv]
        piv[i] = ring.unif_pow(bestv)  # clean the pivot entry exactly
        for idx in free:
            t = cols[idx][i]
            if t != ring.zero:
                # t is divisible by pi^{bestv} by minimality of the pivot
                qq = ring.shift_down(t, bestv)
                cols[idx] = [
                    ring.sub(x, ring.mul(qq, y)) for x, y in zip(cols[idx], piv)
                ]
                cols[idx][i] = ring.zero
        placed[i] = piv
    # entries above each pivot reduced modulo the pivot
    pivots = [ring.valuation(placed[i][i]) for i in range(n)]
    for j in range(1, n):
        for i in range(j - 1, -1, -1):
            quo, rem = ring.divmod_unif(placed[j][i], pivots[i])
            if quo != ring.zero:
                placed[j] = [
                    ring.sub(x, ring.mul(quo, y)) for x, y in zip(placed[j], placed[i])
                ]
            placed[j][i] = rem
    mat = tuple(tuple(placed[j][i] for j in range(n)) for i in range(n))
    return mat, tuple(pivots)


def smith_exponents(ring, M):
    """Elementary divisor exponents (ascending) over the chain ring."""
    n = len(M)
    m = len(M[0])
    work = [list(r) for r in M]
    out = []
    top = min(n, m)
    for step in range(top):
        bi = bj = None
        bv = ring.h
        for i in range(step, n):
            for j in range(step, m):
                v = ring.valuation(work[i][j])
                if v < bv:
                    bi, bj, bv = i, j, v
        if bv >= ring.h:
            raise PrecisionError(
                "Smith form needs divisors beyond the ring precision"
            )
        work[step], work[bi] = work[bi], work[step]
        for row in work:
            row[step], row[bj] = row[bj], row[step]
        u = ring.shift_down(work[step][step], bv)
        uinv = ring.inv_unit(u)
        work[step] = [ring.mul(uinv, x) for x in work[step]]
        work[step][step] = ring.unif_pow(bv)
        for i in range(step + 1, n):
            t = work[i][step]
            if t != ring.zero:
                qq = ring.shift_down(t, bv)
                work[i] = [
                    ring.sub(x, ring.mul(qq, y)) for x, y in zip(work[i], work[step])
                ]
        for j in range(step + 1, m):
            t = work[step][j]
            if t != ring.zero:
                qq = ring.shift_down(t, bv)
                for i in range(step, n):
                    work[i][j] = ring.sub(work[i][j], ring.mul(qq, work[i][step]))
        out.append(bv)
    return out


def relative_position(L1: Lattice, L2: Lattice):
    """inv(L1, L2): elementary-divisor type of L1 relative to L2 (dominant).

    inv(pi L, L) = (1, ..., 1); inv(L, L) = 0.
    """
    if L1.n != L2.n or L1.ring is not L2.ring:
        raise ValueError("lattices not comparable (different rank or ring)")
    ring, n = L1.ring, L1.n
    B1, B2 = L1.mat, L2.mat
    det2 = sum(L2.pivots())
    C = mat_mul(ring, mat_adjugate(ring, B2), B1)
    es = smith_exponents(ring, C)
    shift = (L2.scale - L1.scale) - det2
    vals = sorted((e + shift for e in es), reverse=True)
    return tuple(vals)


def inv_vs_standard(ring, mat, pivots):
    """inv of the integral lattice spanned by mat against the unit lattice.

    mat is upper triangular with the given pivot valuations; fast paths for
    n <= 3 use determinantal divisors.
    """
    n = len(mat)
    if n == 1:
        return (pivots[0],)
    if n == 2:
        e1 = min(pivots[0], pivots[1], ring.valuation(mat[0][1]))
        return (pivots[0] + pivots[1] - e1, e1)
    if n == 3:
        a0, a1, a2 = pivots
        v01 = ring.valuation(mat[0][1])
        v02 = ring.valuation(mat[0][2])
        v12 = ring.valuation(mat[1][2])
        e1 = min(a0, a1, a2, v01, v02, v12)
        cross = ring.sub(
            ring.mul(mat[0][1], mat[1][2]), ring.mul_unif(mat[0][2], a1)
        )
        m2 = min(
            a0 + a1,
            a0 + a2,
            a1 + a2,
            a0 + v12,
            a2 + v01,
            ring.valuation(cross),
        )
        d = a0 + a1 + a2
        return (d - m2, m2 - e1, e1)
    es = smith_exponents(ring, mat)
    return tuple(sorted(es, reverse=True))


# ---------------------------------------------------------------------------
# stratified counting sweeps
# ---------------------------------------------------------------------------


def _stratum_reduced(ring, pivots):
    """Yield (matrix, multiplicity) over a transversal of the stratum.

    Entries e_{i, n-1} are reduced mod pi^{min(a_i, a_{n-1})} (the last row
    has no entries beyond its pivot, so those row operations move a single
    stored entry); for n = 3 the entry e_{02} is further reduced by the
    submodule generated by pi^{max(0, a0-a1)} e_{12}.  Multiplicities make
    the counts exact; soundness is cross-checked against the plain
    enumeration in the tests.
    """
    n = len(pivots)
    if n == 1:
        yield ((ring.unif_pow(pivots[0]),),), 1
        return
    piv_entries = [ring.unif_pow(a) for a in pivots]
    if n == 2:
        a0, a1 = pivots
        m01 = min(a0, a1)
        mult = ring.q ** (a0 - m01)
        for e in ring.residues_mod(m01):
            yield ((piv_entries[0], e), (ring.zero, piv_entries[1])), mult
        return
    if n == 3:
        a0, a1, a2 = pivots
        m12 = min(a1, a2)
        mult12 = ring.q ** (a1 - m12)
        base01 = ring.q**a0
        gap01 = max(0, a0 - a1)
        for e12 in ring.residues_mod(m12):
            v12 = ring.valuation(e12)
            m02 = min(a0, a2, gap01 + v12)
            mult02 = ring.q ** (a0 - m02)
            mult = mult12 * mult02
            for e02 in ring.residues_mod(m02):
                for e01 in ring.residues_mod(a0):
                    yield (
                        (piv_entries[0], e01, e02),
                        (ring.zero, piv_entries[1], e12),
                        (ring.zero, ring.zero, piv_entries[2]),
                    ), mult
        return
    # generic n: only the last-column reduction
    ranges = []
    for i in range(n):
        row = []
        for j in range(i + 1, n):
            m = min(pivots[i], pivots[j]) if j == n - 1 else pivots[i]
            row.append(m)
        ranges.append(row)
    mult = 1
    for i in range(n):
        for jdx, j in enumerate(range(i + 1, n)):
            mult *= ring.q ** (pivots[i] - ranges[i][jdx])
    slots = [(i, j, ranges[i][j - i - 1]) for i in range(n) for j in range(i + 1, n)]
    pools = [ring.residues_mod(m) for (_, _, m) in slots]
    for combo in itertools.product(*pools):
        mat = [[ring.zero] * n for _ in range(n)]
        for i in range(n):
            mat[i][i] = piv_entries[i]
        for (i, j, _), e in zip(slots, combo):
            mat[i][j] = e
        yield tuple(tuple(r) for r in mat), mult


def _stratum_full(ring, pivots):
    """Plain enumeration of every canonical form in the stratum."""
    n = len(pivots)
    piv_entries = [ring.unif_pow(a) for a in pivots]
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pools = [ring.residues_mod(pivots[i]) for (i, j) in slots]
    for combo in itertools.product(*pools):
        mat = [[ring.zero] * n for _ in range(n)]
        for i in range(n):
            mat[i][i] = piv_entries[i]
        for (i, j), e in zip(slots, combo):
            mat[i][j] = e
        yield tuple(tuple(r) for r in mat), 1


def stratum_inv_counts(ring, pivots, reduced=True):
    """{inv: count} over the Iwasawa stratum with the given pivot vector."""
    out: dict = {}
    gen = _stratum_reduced if reduced else _stratum_full
    for mat, mult in gen(ring, tuple(pivots)):
        inv = inv_vs_standard(ring, mat, tuple(pivots))
        out[inv] = out.get(inv, 0) + mult
    return out


def _compositions(total, n, cap):
    """All (a_0..a_{n-1}) with entries in [0, cap] summing to total."""
    if n == 1:
        if 0 <= total <= cap:
            yield (total,)
        return
    for a in range(min(cap, total), -1, -1):
        for rest in _compositions(total - a, n - 1, cap):
            yield (a,) + rest


_window_cache: dict = {}


def window_table(n, total, cap, q, kind="mixed", threads=1):
    """{(pivot vector, inv): count} over the full window of strata.

    Covers every integral lattice with pivot valuations in [0, cap] and
    Kottwitz index `total`.  Memoized; safe for concurrent readers.
    """
    key = (n, total, cap, q, kind)
    cached = _window_cache.get(key)
    if cached is not None:
        return cached
    h = total + 2
    ring = make_ring(kind, q, h)
    strata = list(_compositions(total, n, cap))

    def one(pivots):
        return pivots, stratum_inv_counts(ring, pivots)

    results = []
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(one, strata))
    else:
        results = [one(p) for p in strata]
    table: dict = {}
    for pivots, counts in results:
        for inv, c in counts.items():
            table[(pivots, inv)] = table.get((pivots, inv), 0) + c
    _window_cache[key] = table
    return table


def _shift_nonneg(*coweights):
    """Common central shift making all coweights nonnegative."""
    lo = min(min(c) for c in coweights)
    c = max(0, -lo)
    return tuple(tuple(x + c for x in cw) for cw in coweights), c


def count_cell(mu, q, kind="mixed", threads=1) -> int:
    """|Gr_mu(F_q)|: lattices at exact relative position mu."""
    mu = tuple(mu)
    if not all(mu[i] >= mu[i + 1] for i in range(len(mu) - 1)):
        raise ValueError("mu must be dominant")
    (mu2,), _ = _shift_nonneg(mu)
    n = len(mu2)
    table = window_table(n, sum(mu2), mu2[0] if n else 0, q, kind, threads)
    return sum(c for (piv, inv), c in table.items() if inv == mu2)


def count_mv(lam, mu, q, kind="mixed", threads=1) -> int:
    """|S_lam ∩ Gr_mu(F_q)|."""
    lam, mu = tuple(lam), tuple(mu)
    if sum(lam) != sum(mu):
        return 0
    if not dominance_leq(dominant_sort(lam), mu):
        return 0
    (lam2, mu2), _ = _shift_nonneg(lam, mu)
    n = len(mu2)
    table = window_table(n, sum(mu2), mu2[0], q, kind, threads)
    return sum(
        c for (piv, inv), c in table.items() if piv == lam2 and inv == mu2
    )


def count_mv_leq(lam, mu, q, kind="mixed", threads=1) -> int:
    """|S_lam ∩ Gr_{<=mu}(F_q)|."""
    lam, mu = tuple(lam), tuple(mu)
    if sum(lam) != sum(mu):
        return 0
    if not dominance_leq(dominant_sort(lam), mu):
        return 0
    (lam2, mu2), _ = _shift_nonneg(lam, mu)
    n = len(mu2)
    table = window_table(n, sum(mu2), mu2[0], q, kind, threads)
    return sum(
        c
        for (piv, inv), c in table.items()
        if piv == lam2 and dominance_leq(inv, mu2)
    )


def count_leq(mu, q, kind="mixed", threads=1) -> int:
    """|Gr_{<=mu}(F_q)|."""
    mu = tuple(mu)
    (mu2,), _ = _shift_nonneg(mu)
    n = len(mu2)
    table = window_table(n, sum(mu2), mu2[0], q, kind, threads)
    return sum(
        c for (piv, inv), c in table.items() if dominance_leq(inv, mu2)
    )


# ---------------------------------------------------------------------------
# streaming enumeration (actual Lattice objects)
# ---------------------------------------------------------------------------


def enumerate_lattices_leq(mu, ring):
    """Stream the lattices with inv(L, standard) <= mu, deduplicated by
    construction (each canonical form appears exactly once)."""
    mu = tuple(mu)
    n = len(mu)
    if not all(mu[i] >= mu[i + 1] for i in range(n - 1)):
        raise ValueError("mu must be dominant")
    shift = max(0, -mu[-1])
    mu2 = tuple(m + shift for m in mu)
    if sum(mu2) + 2 > ring.h:
        raise PrecisionError("ring precision too small for this window")
    for pivots in _compositions(sum(mu2), n, mu2[0]):
        for mat, _ in _stratum_full(ring, pivots):
            inv = inv_vs_standard(ring, mat, pivots)
            if dominance_leq(inv, mu2):
                yield Lattice(ring, n, shift, mat)._normalized()


def iwasawa_type(L: Lattice):
    return L.iwasawa_type()


def kottwitz_index(L: Lattice) -> int:
    return L.kottwitz_index()


# ---------------------------------------------------------------------------
# chains (Demazure words) and convolution fibers
# ---------------------------------------------------------------------------


def _step_forms(ring, mu):
    """Canonical matrices at exact relative position mu (integral, mu >= 0)."""
    n = len(mu)
    out = []
    for pivots in _compositions(sum(mu), n, mu[0] if mu else 0):
        for mat, _ in _stratum_full(ring, pivots):
            if inv_vs_standard(ring, mat, pivots) == tuple(mu):
                out.append(mat)
    return out


def _canonical_product(ring, B, H):
    prod = mat_mul(ring, B, H)
    mat, _ = hermite_form(ring, [[prod[i][j] for i in range(len(prod))] for j in range(len(prod))])
    return mat


def enumerate_chains(mu_seq, q, kind="mixed"):
    """Stream chains L_m ⊂ ... ⊂ L_0 = standard with inv(L_i, L_{i-1}) = mu_i.

    Steps are translated to nonnegative coweights internally; the stream
    yields tuples of basis matrices (relative to the standard lattice of
    the internal ring).
    """
    mu_seq = [tuple(m) for m in mu_seq]
    shifts = [max(0, -m[-1]) for m in mu_seq]
    mu_adj = [tuple(x + s for x in m) for m, s in zip(mu_seq, shifts)]
    n = len(mu_seq[0]) if mu_seq else 0
    h = sum(sum(m) for m in mu_adj) + 2
    ring = make_ring(kind, q, max(h, 3))
    if not mu_seq:
        yield ()
        return
    steps = [_step_forms(ring, m) for m in mu_adj]

    def rec(i, current, acc):
        if i == len(steps):
            yield tuple(acc)
            return
        for H in steps[i]:
            nxt = _canonical_product(ring, current, H)
            acc.append(nxt)
            yield from rec(i + 1, nxt, acc)
            acc.pop()

    yield from rec(0, identity_matrix(ring, n), [])


def count_chains(mu_seq, q, kind="mixed") -> int:
    return sum(1 for _ in enumerate_chains(mu_seq, q, kind))


def convolution_fiber_count_leq(mu_seq, lam, q, kind="mixed") -> int:
    """Fiber count over pi^lam of the closed convolution space: chains
    with stepwise positions <= mu_i (componentwise closure)."""
    mu_seq = [tuple(m) for m in mu_seq]
    total = 0
    lower = []
    for m in mu_seq:
        lower.append([d for d in dominant_weights_below_cached(m)])
    for combo in itertools.product(*lower):
        total += convolution_fiber_count(list(combo), lam, q, kind)
    return total


@lru_cache(maxsize=None)
def dominant_weights_below_cached(mu):
    from .coweights import dominant_weights_below

    return dominant_weights_below(tuple(mu))


def convolution_fiber_count(mu_seq, lam, q, kind="mixed") -> int:
    """|m^{-1}(pi^lam) ∩ Gr_{mu_seq}(F_q)|: chains with exact steps mu_i
    whose composite lattice is pi^lam (after matching central shifts)."""
    mu_seq = [tuple(m) for m in mu_seq]
    lam = tuple(lam)
    n = len(lam)
    if sum(sum(m) for m in mu_seq) != sum(lam):
        return 0
    shifts = [max(0, -m[-1]) for m in mu_seq]
    mu_adj = [tuple(x + s for x in m) for m, s in zip(mu_seq, shifts)]
    lam_adj = tuple(x + sum(shifts) for x in lam)
    if min(lam_adj) < 0:
        return 0
    h = sum(sum(m) for m in mu_adj) + 2
    ring = make_ring(kind, q, max(h, 3))
    steps = [_step_forms(ring, m) for m in mu_adj]
    target = [[ring.unif_pow(v) if i == j else ring.zero for j in range(n)]
              for i, v in enumerate(lam_adj)]
    target = tuple(tuple(r) for r in target)

    def contains_target(B, remaining_sum):
        # prune: target ⊆ current lattice is necessary (steps are >= 0)
        pivots = [ring.valuation(B[i][i]) for i in range(n)]
        Badj = mat_adjugate(ring, B)
        C = mat_mul(ring, Badj, target)
        d = sum(pivots)
        return all(ring.valuation(x) >= d for row in C for x in row)

    count = 0

    def rec(i, current):
        nonlocal count
        if i == len(steps):
            if current == target:
                count += 1
            return
        rem = sum(sum(m) for m in mu_adj[i:])
        for H in steps[i]:
            nxt = _canonical_product(ring, current, H)
            if contains_target(nxt, rem):
                rec(i + 1, nxt)

    rec(0, identity_matrix(ring, n))
    return count
