import pytest
from hypothesis import given

from charpforms.errors import NotSimpleRoot, TruncationTooSmall
from charpforms.parsing import parse_ring, parse_series, parse_series_polynomial
from charpforms.sampling import random_regular_series, random_series
from charpforms.weierstrass import (NotRegular, artin_schreier_solve, evaluate_poly, hensel_lift,
                                    pth_root_series, regularity_order, regularize,
                                    substitute_regularizing, weierstrass_divide, weierstrass_prepare,
                                    wp_series)

from conftest import rng_from, seeds

RINGS = ["GF(5)[[u]][[T]] D=8", "GF(2)[[u]][[X,T]] D=7", "GF(4)[[X1,X2,T]] D=6", "GF(3)[[T]] D=10"]


def S(text, ring="GF(5)[[u]][[T]] D=10"):
    R = parse_ring(ring)
    return parse_series(text, R)


def test_regularity_order_examples():
    assert regularity_order(S("T^3")) == 3
    assert regularity_order(S("T^2 - u")) == 2
    assert regularity_order(S("u*T")) is None


def test_division_examples():
    f = S("T^2 - u")
    q, r = weierstrass_divide(S("T^3"), f)
    assert (q, r) == (S("T"), S("u*T"))
    q, r = weierstrass_divide(f, f)
    assert q == f.ring.one() and r.is_zero()
    g = S("1 + u + u^3*T")
    q, r = weierstrass_divide(g, f)
    assert q.is_zero() and r == g
    with pytest.raises(NotRegular):
        weierstrass_divide(g, S("u*T"))
    with pytest.raises(NotRegular):
        weierstrass_divide(g, f, k=3)


def test_preparation_examples():
    prep = weierstrass_prepare(S("T^4"))
    assert prep.unit == prep.unit.ring.one() and prep.poly == S("T^4")
    prep = weierstrass_prepare(S("T^2 - u"))
    assert prep.unit == prep.unit.ring.one() and prep.poly == S("T^2 - u")
    f = S("(1 + T)*(T - u)")
    prep = weierstrass_prepare(f)
    assert prep.order == 1 and prep.is_distinguished()
    assert prep.unit * prep.poly == f
    # the unit is 1 + T up to terms in the maximal ideal of A
    assert prep.unit.set_coeff_vars_zero() == S("1 + T").set_coeff_vars_zero()


def test_regularize_examples():
    R = "GF(3)[[X1,X2,T]] D=8"
    exps, k = regularize(S("X1 + T^2", R))
    assert exps == (0, 0) and k == 2
    exps, k = regularize(S("X1", R))
    assert k == 1 and regularity_order(substitute_regularizing(S("X1", R), exps)) == 1
    exps, k = regularize(S("X1*X2", R))
    assert exps == (1, 2) and k == 3
    with pytest.raises(ValueError):
        regularize(S("u*X", "GF(3)[[u]][[X,T]] D=6"))
    with pytest.raises(TruncationTooSmall):
        regularize(S("X1^3*X2^3", "GF(3)[[X1,X2,T]] D=8"))


def test_artin_schreier_examples():
    R = "GF(2)[[t]] D=16"
    assert artin_schreier_solve(S("0", R)).is_zero()
    b = artin_schreier_solve(S("t", R))
    assert b == S("t + t^2 + t^4 + t^8", R)
    assert wp_series(b) == S("t", R)
    with pytest.raises(ValueError):
        artin_schreier_solve(S("1 + t", R))


def test_hensel_examples():
    R = parse_ring("GF(5)[[t]] D=12")
    g = parse_series_polynomial("X^2 - (1+2*t)*X + t^2", R, "X")
    res = hensel_lift(g, parse_series("1", R), history=True)
    x = res.root
    assert evaluate_poly(g, x).is_zero()
    assert (x - R.one()).in_maximal_ideal()
    assert all(b >= min(2 * a, 12) for a, b in zip(res.valuations, res.valuations[1:]))
    y = hensel_lift(g, R.zero())
    assert x * y == parse_series("t^2", R)
    assert x + y == parse_series("1 + 2*t", R)
    c = parse_series("2 + t", R)
    assert hensel_lift([-c, R.one()], c) == c
    with pytest.raises(NotSimpleRoot):
        hensel_lift(parse_series_polynomial("X^2", R, "X"), R.zero())


def test_pth_root_examples():
    R = parse_ring("GF(4)[[t]] D=12")
    assert pth_root_series(R.one()) == R.one()
    assert pth_root_series(parse_series("1 + t^2", R)) == parse_series("1 + t", R)
    # odd exponents obstruct p-th roots in equal characteristic
    assert pth_root_series(parse_series("1 + t^3", R)) is None


@pytest.mark.parametrize("name", RINGS)
@given(seed=seeds)
def test_division_identity_and_schedules(name, seed):
    R = parse_ring(name)
    rng = rng_from(seed)
    k = rng.randrange(1, 4)
    f = random_regular_series(R, rng, k, max_degree=4)
    g = random_series(R, rng, density=0.3)
    q, r = weierstrass_divide(g, f)
    assert q * f + r == g
    assert r.t_degree() is None or r.t_degree() < k
    assert weierstrass_divide(g, f, schedule="neumann") == (q, r)


@pytest.mark.parametrize("name", RINGS)
@given(seed=seeds)
def test_division_is_stable_under_more_precision(name, seed):
    R = parse_ring(name)
    big = R.with_bound(R.D + 3)
    rng = rng_from(seed)
    f = random_regular_series(R, rng, rng.randrange(1, 3), max_degree=3)
    g = random_series(R, rng, density=0.3)
    q, r = weierstrass_divide(g, f)
    Q, Rr = weierstrass_divide(big.convert(g), big.convert(f))
    assert R.convert(Q) == q and R.convert(Rr) == r


@pytest.mark.parametrize("name", RINGS)
@given(seed=seeds)
def test_preparation_soundness(name, seed):
    R = parse_ring(name)
    rng = rng_from(seed)
    f = random_regular_series(R, rng, rng.randrange(1, 4), max_degree=4)
    prep = weierstrass_prepare(f)
    assert prep.unit * prep.poly == f
    assert prep.unit.is_unit() and prep.is_distinguished()


@pytest.mark.parametrize("name", RINGS)
@given(seed=seeds)
def test_artin_schreier_inverts_wp(name, seed):
    R = parse_ring(name)
    a = random_series(R, rng_from(seed), in_ideal=True)
    b = artin_schreier_solve(a)
    assert wp_series(b) == a and b.in_maximal_ideal()
