import pytest
from hypothesis import given

from charpforms.parsing import parse_ring, parse_series
from charpforms.sampling import random_series
from charpforms.series import SeriesRing, all_monomials

from conftest import rng_from, seeds

RINGS = ["GF(5)[[u]][[X,T]] D=7", "GF(4)[[T]] D=12", "GF(2)[[u]][[X1,X2,T]] D=6", "GF(9)[[X,T]] D=6"]


def naive_product(x, y):
    """Schoolbook product on term dictionaries, truncated by the ring."""
    ring = x.ring
    F = ring.field
    acc = {}
    for ea, ca in x.terms().items():
        for eb, cb in y.terms().items():
            e = tuple(i + j for i, j in zip(ea, eb))
            acc[e] = F.add(acc.get(e, 0), F.mul(ca, cb))
    return ring.from_terms({e: c for e, c in acc.items() if ring._fits(e)})


def test_ring_validation():
    with pytest.raises(ValueError):
        SeriesRing.over(4, ("X", "X"), 5)
    with pytest.raises(ValueError):
        SeriesRing.over(4, ("T",), 0)
    with pytest.raises(ValueError):
        SeriesRing.over(6, ("T",), 5)


def test_truncation_and_inverse():
    R = parse_ring("GF(5)[[t]] D=6")
    t = R.gen("t")
    assert (t ** 6).is_zero()
    inv = (1 - t).inv()
    assert inv == R.from_terms({(i,): 1 for i in range(6)})
    with pytest.raises(ZeroDivisionError):
        t.inv()


def test_valuation_and_frobenius():
    R = parse_ring("GF(4)[[X,T]] D=8")
    x = parse_series("w*X*T + T^3", R)
    assert x.valuation() == 2 and x.in_maximal_ideal()
    assert x.frobenius() == parse_series("(w+1)*X^2*T^2 + T^6", R)


@pytest.mark.parametrize("name", RINGS)
@given(seed=seeds)
def test_ring_axioms(name, seed):
    R = parse_ring(name)
    rng = rng_from(seed)
    x, y, z = (random_series(R, rng) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert (x + y).frobenius() == x.frobenius() + y.frobenius()
    if x.is_unit():
        assert x * x.inv() == R.one()


@pytest.mark.parametrize("name", RINGS)
@given(seed=seeds)
def test_products_match_schoolbook(name, seed):
    """Both the sparse and the dense product paths agree with the naive product."""
    R = parse_ring(name)
    rng = rng_from(seed)
    dense = random_series(R, rng, density=0.6)
    sparse = random_series(R, rng, density=0.05)
    other = random_series(R, rng, density=0.6)
    assert dense * other == naive_product(dense, other)
    assert sparse * other == naive_product(sparse, other)


@pytest.mark.parametrize("name", RINGS)
@given(seed=seeds)
def test_print_parse_roundtrip(name, seed):
    R = parse_ring(name)
    x = random_series(R, rng_from(seed))
    assert parse_series(str(x), R) == x


def test_monomial_count():
    R = parse_ring("GF(2)[[X,T]] D=4")
    assert len(list(all_monomials(R))) == 10
