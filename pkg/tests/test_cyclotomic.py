from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewmorita.cyclotomic import ONE, ZERO, Cyc, cyclotomic_polynomial, totient, zeta

CONDUCTORS = [1, 3, 4, 5, 8, 12]
fracs = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@st.composite
def cycs(draw, n=None):
    n = n if n is not None else draw(st.sampled_from(CONDUCTORS))
    return Cyc.from_coeffs(n, draw(st.lists(fracs, min_size=totient(n), max_size=totient(n))))


@given(cycs(), cycs(), cycs())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(cycs())
@settings(max_examples=60, deadline=None)
def test_inverse(a):
    if a:
        assert a * a.inverse() == ONE
        assert a / a == ONE
    else:
        with pytest.raises(ZeroDivisionError):
            a.inverse()


@given(cycs())
@settings(max_examples=40, deadline=None)
def test_json_roundtrip_and_hash(a):
    b = Cyc.from_json(a.to_json())
    assert a == b and hash(a) == hash(b)


@given(cycs(12), st.sampled_from([1, 5, 7, 11]))
@settings(max_examples=40, deadline=None)
def test_galois_is_a_ring_map(a, k):
    b = a * a + ONE
    assert b.galois(k) == a.galois(k) * a.galois(k) + ONE


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15])
def test_roots_of_unity(n):
    z = zeta(n)
    assert z ** n == ONE
    for k in range(1, n):
        assert z ** k != ONE
    val = ZERO
    for k, coef in enumerate(cyclotomic_polynomial(n)):
        val = val + z ** k * coef
    assert val == ZERO


@pytest.mark.parametrize("n", [1, 2, 6, 8, 12, 30])
def test_product_of_cyclotomic_polynomials(n):
    prod = [1]
    for d in (d for d in range(1, n + 1) if n % d == 0):
        phi = cyclotomic_polynomial(d)
        new = [0] * (len(prod) + len(phi) - 1)
        for i, x in enumerate(prod):
            for j, y in enumerate(phi):
                new[i + j] += x * y
        prod = new
    assert prod == [-1] + [0] * (n - 1) + [1]


@pytest.mark.parametrize("n,coeffs", [
    (1, (-1, 1)),
    (2, (1, 1)),
    (4, (1, 0, 1)),
    (6, (1, -1, 1)),
    (12, (1, 0, -1, 0, 1)),
])
def test_cyclotomic_polynomial_values(n, coeffs):
    assert tuple(cyclotomic_polynomial(n)) == coeffs


@pytest.mark.parametrize("n,phi", [(1, 1), (2, 1), (6, 2), (9, 6), (12, 4), (30, 8)])
def test_totient(n, phi):
    assert totient(n) == phi


def test_equality_across_conductors():
    assert zeta(4) ** 2 == -ONE
    assert zeta(6) == -(zeta(3) ** 2)
    assert zeta(2) == Cyc.rational(-1)
    assert zeta(12) ** 4 == zeta(3)
    assert Cyc.rational(Fraction(1, 2)) + zeta(3) + zeta(3) ** 2 == Cyc.rational(Fraction(-1, 2))


def test_conjugate_and_from_json_forms():
    assert zeta(5).conjugate() == zeta(5) ** 4
    assert Cyc.from_json({"zeta": 3, "power": 2}) == zeta(3) ** 2
    assert Cyc.from_json("3/4") == Cyc.rational(Fraction(3, 4))
    assert Cyc.from_json(-2) == Cyc.rational(-2)


def test_str():
    assert str(Cyc.rational(Fraction(-2, 3))) == "-2/3"
    assert str(ZERO) == "0"


@given(cycs())
@settings(max_examples=60, deadline=None)
def test_minimal_conductor_is_the_same_number(a):
    m = a.minimal()
    assert m == a and m.n <= a.n and a.n % m.n == 0


@pytest.mark.parametrize("x,n", [
    (zeta(4) ** 2, 1),
    (zeta(6), 3),
    (zeta(12) ** 3, 4),
    (zeta(12) + zeta(12) ** 11, 12),
    (zeta(5) + zeta(5) ** 4, 5),
])
def test_json_uses_the_smallest_conductor(x, n):
    assert x.to_json()["conductor"] == n
