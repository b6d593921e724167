import random

import pytest

from oracles import ghost_inverse, ghost_value
from wittgrass.fq import GF
from wittgrass.witt import (
    PadicWindow,
    PrecisionError,
    WittVector,
    det_components,
    frobenius_sigma,
    teichmuller,
    verify_famous_identity,
    witt_add,
    witt_mul,
    witt_ring,
)

# the fixed test grid for the randomized ring-axiom checks
GRID = [(2, 1, 3), (2, 2, 4), (2, 3, 8), (3, 1, 5), (3, 2, 4), (3, 6, 8),
        (5, 1, 3), (5, 2, 4), (5, 6, 8)]


def rand_val(ring, rng):
    if ring.r == 1:
        return rng.randrange(ring.ph)
    return tuple(rng.randrange(ring.ph) for _ in range(ring.r))


@pytest.mark.parametrize("p,r,h", GRID)
def test_ring_axioms_random(p, r, h):
    ring = witt_ring(p, r, h)
    rng = random.Random(1000 * p + 10 * r + h)
    for _ in range(1000):
        a, b, c = (rand_val(ring, rng) for _ in range(3))
        assert ring.add(ring.add(a, b), c) == ring.add(a, ring.add(b, c))
        assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
        assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
        assert ring.add(a, b) == ring.add(b, a)
        assert ring.mul(a, b) == ring.mul(b, a)
        assert ring.add(a, ring.zero_val) == a
        assert ring.mul(a, ring.one_val) == a


@pytest.mark.parametrize("p,h", [(2, 3), (3, 3), (3, 5)])
def test_ghost_isomorphism_all_elements(p, h):
    """W_h(F_p) <-> Z/p^h via ghost components, exhaustively (p^h <= 243)."""
    ring = witt_ring(p, 1, h)
    ph = p**h
    for n in range(ph):
        coords = [c.coords[0] for c in ring.coords_of(n)]
        assert ghost_value(coords, p, h) == n
        assert ghost_inverse(n, p, h) == tuple(coords)
    # ring maps commute with the ghost identification on sampled pairs
    rng = random.Random(7)
    for _ in range(300):
        a, b = rng.randrange(ph), rng.randrange(ph)
        assert ring.add(a, b) == (a + b) % ph
        assert ring.mul(a, b) == (a * b) % ph


def test_spec_seed_values():
    F2, F3 = GF(2), GF(3)
    two = teichmuller(F2.one, 3) + teichmuller(F2.one, 3)
    assert [c.coords[0] for c in two.coords] == [0, 1, 0]
    four = two * two
    assert [c.coords[0] for c in four.coords] == [0, 0, 1]
    # [1] + [2] over W_2(F_3): the lift of 2 is -1, so the sum is 0
    # (the ghost oracle mod 9: 1 + 8 = 9 = 0)
    s = teichmuller(F3.one, 2) + teichmuller(F3.elem(2), 2)
    assert ghost_value([c.coords[0] for c in s.coords], 3, 2) == (1 + 8) % 9
    assert [c.coords[0] for c in s.coords] == [0, 0]


def test_additive_identity_and_teichmuller():
    f = GF(9)
    rng = random.Random(3)
    els = list(f.elements())
    for _ in range(20):
        x, y = rng.choice(els), rng.choice(els)
        tx, ty = teichmuller(x, 4), teichmuller(y, 4)
        assert witt_mul(tx, ty) == teichmuller(x * y, 4)
        assert witt_add(tx, WittVector.zero(3, 4, 2)) == tx
    assert teichmuller(f.zero, 4) == WittVector.zero(3, 4, 2)
    assert teichmuller(f.one, 4) == WittVector.one(3, 4, 2)
    x = rng.choice(els)
    assert frobenius_sigma(teichmuller(x, 4)) == teichmuller(x.frobenius(), 4)


@pytest.mark.parametrize("p,r,h", [(2, 3, 4), (3, 2, 5), (5, 2, 3)])
def test_frobenius_ring_automorphism(p, r, h):
    ring = witt_ring(p, r, h)
    rng = random.Random(17)
    for _ in range(50):
        a, b = rand_val(ring, rng), rand_val(ring, rng)
        sa = ring.sigma(a)
        assert ring.sigma(ring.add(a, b)) == ring.add(sa, ring.sigma(b))
        assert ring.sigma(ring.mul(a, b)) == ring.mul(sa, ring.sigma(b))
        t = a
        for _ in range(r):
            t = ring.sigma(t)
        assert t == a
        # coordinatewise p-th power on Teichmueller digits
        assert all(
            y == x**p for x, y in zip(ring.teich_digits(a), ring.teich_digits(sa))
        )


@pytest.mark.parametrize("p,r,h", [(2, 1, 4), (3, 2, 4), (5, 1, 3)])
def test_verschiebung_frobenius_relation(p, r, h):
    ring = witt_ring(p, r, h)
    rng = random.Random(23)
    for _ in range(30):
        a = rand_val(ring, rng)
        pa = ring.smul(p, a)
        ca, cpa = ring.coords_of(a), ring.coords_of(pa)
        assert not any(cpa[0].coords)
        assert all(cpa[i + 1] == ca[i] ** p for i in range(h - 1))


def test_reduction_is_ring_map():
    ring = witt_ring(3, 2, 6)
    rng = random.Random(5)
    for _ in range(50):
        a, b = rand_val(ring, rng), rand_val(ring, rng)
        for m in (1, 3, 5):
            am, low = ring.reduce_to(a, m)
            bm, _ = ring.reduce_to(b, m)
            assert low.add(am, bm) == ring.reduce_to(ring.add(a, b), m)[0]
            assert low.mul(am, bm) == ring.reduce_to(ring.mul(a, b), m)[0]


def test_mismatched_arguments_error():
    a = WittVector.from_int(1, 2, 3)
    b = WittVector.from_int(1, 2, 4)
    c = WittVector.from_int(1, 3, 3)
    with pytest.raises(ValueError):
        witt_add(a, b)
    with pytest.raises(ValueError):
        witt_mul(a, c)


def test_det_components():
    p = 3
    P = WittVector.from_int(p, p, 3)
    Z = WittVector.zero(p, 3)
    I = WittVector.one(p, 3)
    assert [c.coords[0] for c in det_components([[I, Z], [Z, I]])] == [1, 0, 0]
    assert [c.coords[0] for c in det_components([[P, Z], [Z, P]])] == [0, 0, 1]
    f = GF(9)
    rng = random.Random(11)
    els = [x for x in f.elements() if x]
    for _ in range(20):
        x, y = rng.choice(els), rng.choice(els)
        m = [[teichmuller(x, 3), WittVector.zero(3, 3, 2)],
             [WittVector.zero(3, 3, 2), teichmuller(y, 3)]]
        comps = det_components(m)
        assert comps[0] == x * y
        assert all(not c for c in comps[1:])
    with pytest.raises(ValueError):
        det_components([[I, Z]])


@pytest.mark.parametrize("p,h", [(2, 4), (3, 3), (5, 5)])
def test_famous_identity(p, h):
    assert verify_famous_identity(p, h)


def test_famous_identity_precondition():
    with pytest.raises(ValueError):
        verify_famous_identity(3, 1)


class TestPadicWindow:
    def test_precision_tracking(self):
        a = PadicWindow.from_int(1, 3, 4, shift=-1)  # 1/3 known mod 3^3
        b = PadicWindow.from_int(2, 3, 4)            # 2 known mod 3^4
        s = a + b
        assert s.abs_prec == 3
        prod = a * b
        assert prod.prec == 4 and prod.shift == -1
        # declared precision never exceeds what operands justify
        assert s.abs_prec <= min(a.abs_prec, b.abs_prec)

    def test_fails_loudly_beyond_precision(self):
        a = PadicWindow.from_int(0, 3, 2)
        with pytest.raises(PrecisionError):
            a.valuation()
        with pytest.raises(PrecisionError):
            a.inverse()
        hi = PadicWindow.from_int(1, 3, 3, shift=5)
        with pytest.raises(PrecisionError):
            hi._truncated(-5, -2)  # no digits left at that precision

    def test_inverse(self):
        a = PadicWindow.from_int(6, 3, 4)  # 2*3
        inv = a.inverse()
        assert inv.shift == -1
        one = a * inv
        assert one.eq_at_common_precision(PadicWindow.from_int(1, 3, 4))
