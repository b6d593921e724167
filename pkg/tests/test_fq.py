import random

import pytest

from wittgrass.fq import GF, MODULI, factor_prime_power


def poly_is_irreducible(mod, p):
    """Check irreducibility by brute root/factor search (degree <= 6)."""
    r = len(mod) - 1
    if r == 1:
        return True

    def polmul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    def reduce_mod(f):
        f = list(f)
        while len(f) > r and any(f):
            d = len(f) - 1
            c = f[d]
            if c:
                for j in range(r + 1):
                    f[d - r + j] = (f[d - r + j] - c * mod[j]) % p
            f.pop()
        return tuple((f + [0] * r)[:r])

    # f irreducible iff x^{p^r} = x mod f and gcd-free at proper divisors;
    # brute force: no monic factor of degree <= r//2
    import itertools

    for d in range(1, r // 2 + 1):
        for coeffs in itertools.product(range(p), repeat=d):
            g = list(coeffs) + [1]
            # trial division
            rem = list(mod)
            while len(rem) - 1 >= d and any(rem):
                lead = rem[-1]
                shift = len(rem) - 1 - d
                for j in range(d + 1):
                    rem[shift + j] = (rem[shift + j] - lead * g[j]) % p
                while rem and rem[-1] == 0:
                    rem.pop()
            if not any(rem):
                return False
    return True


@pytest.mark.parametrize("p,r", sorted(MODULI))
def test_moduli_table_irreducible(p, r):
    mod = MODULI[(p, r)]
    assert len(mod) == r + 1 and mod[-1] == 1
    if r > 1:
        assert mod[0] != 0
        assert poly_is_irreducible(mod, p)


@pytest.mark.parametrize("q", [4, 8, 9, 25, 27])
def test_field_axioms_random(q):
    f = GF(q)
    rng = random.Random(q)
    els = list(f.elements())
    assert len(els) == q
    for _ in range(200):
        a, b, c = (rng.choice(els) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        assert a + f.zero == a and a * f.one == a
        if a:
            assert a * a.inverse() == f.one


@pytest.mark.parametrize("q", [4, 9, 8, 27, 25])
def test_frobenius_orbit(q):
    f = GF(q)
    for x in f.elements():
        assert x ** f.q == x
        y = x
        for _ in range(f.r):
            y = y.frobenius()
        assert y == x
        assert x.pth_root() ** f.p == x


def test_prime_power_factorization():
    assert factor_prime_power(8) == (2, 3)
    assert factor_prime_power(7) == (7, 1)
    with pytest.raises(ValueError):
        factor_prime_power(6)


def test_int_roundtrip():
    f = GF(9)
    for v in range(9):
        assert f.from_int(v).as_int() == v
