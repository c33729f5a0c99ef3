import pytest
from hypothesis import given, strategies as st

from charpforms.finite_field import GaloisField, default_modulus, is_irreducible, is_prime, prime_power


def test_primes_and_prime_powers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    with pytest.raises(ValueError):
        prime_power(12)


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4)])
def test_default_modulus_is_irreducible(p, e):
    assert is_irreducible(default_modulus(p, e), p)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        GaloisField(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(ValueError):
        GaloisField(4, 1)


def test_f4_generator_relation():
    F = GaloisField(2, 2)
    w = F.generator
    assert F.mul(w, w) == F.add(w, 1)
    # the square root of w is w^2 = w + 1 (enumerate all squares)
    squares = {F.mul(x, x): x for x in F.elements()}
    assert F.root(w) == squares[w] == F.add(w, 1)


def test_trace_examples():
    F = GaloisField(2, 2)
    assert F.trace(1) == 0
    assert F.trace(F.generator) == 1
    assert all(F.trace(x, 2) == x for x in F.elements())
    with pytest.raises(ValueError):
        GaloisField(2, 3).trace(1, 2)


@pytest.mark.parametrize("q", [4, 8, 9, 25])
def test_wp_image_is_trace_kernel(q):
    p, e = prime_power(q)
    F = GaloisField(p, e)
    image = {F.sub(x, F.pow(x, p)) for x in F.elements()}
    assert image == {a for a in F.elements() if F.trace(a) == 0}
    assert len(image) == q // p


fields = st.sampled_from([GaloisField(2, 3), GaloisField(3, 2), GaloisField(5, 2), GaloisField(7, 1)])


@given(fields, st.data())
def test_field_axioms(F, data):
    el = st.integers(0, F.q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    assert F.from_vector(F.to_vector(a)) == a
