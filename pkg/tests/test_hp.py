import pytest
from hypothesis import given

from charpforms.errors import DecisionUnavailable, InsufficientPrecision, TowerMismatch
from charpforms.forms import DifferentialForm, d
from charpforms.hp import classify_top, hp1_class, hp_class, replay, wedge_dlog_t, wp, wp_map
from charpforms.parsing import parse_element, parse_form, parse_tower
from charpforms.sampling import random_element, random_form

from conftest import rng_from, seeds

DECIDABLE = ["GF(4)((t))", "GF(2)((t1))((t2))", "GF(9)((t))", "GF(3)((t1))((t2))", "GF(4)((t1))((t2))((t3))"]


def top(T, text):
    return DifferentialForm.top(T, parse_element(text, T))


def test_hp_class_examples():
    T = parse_tower("GF(4)((t))")
    assert hp_class(top(T, "t^-1")) == 0
    assert hp_class(top(T, "w + t^-2")) == 1
    assert hp_class(top(T, "1")) == 0
    assert hp_class(parse_form("w*dlog(t)", T)) == 1


def test_reduction_log_for_folded_term():
    T = parse_tower("GF(4)((t))")
    rep = classify_top(top(T, "w + t^-2"))
    rules = [step.rule for step in rep.log]
    assert rules == ["fold-p-power", "drop-nonzero-theta"]
    assert rep.value == T.gen("w")
    assert replay(parse_element("w + t^-2", T), rep.log) == rep.value


def test_wp_map_examples():
    k = parse_tower("Frac GF(2)[b]")
    b = k.gen("b")
    assert wp_map(k.zero, k).is_zero()
    assert wp_map(k.one, k).is_zero()
    assert wp_map(b).rep == b * b
    F3 = parse_tower("Frac GF(3)[b]")
    assert wp_map(F3(2)).is_zero()


def test_rational_base_is_undecided():
    k = parse_tower("Frac GF(2)[b]((t))")
    omega = top(k, "b^2 + b*t^-2 + b^2*t^-2 + t")
    with pytest.raises(DecisionUnavailable) as info:
        hp_class(omega)
    rep = info.value.representative
    assert rep.value == k.gen("b") ** 2 and not rep.decided
    with pytest.raises(DecisionUnavailable):
        hp1_class(parse_tower("Frac GF(2)[b]").gen("b"))


def test_precision_needed_at_constant_term():
    T = parse_tower("GF(4)((t))")
    with pytest.raises(InsufficientPrecision):
        hp_class(DifferentialForm.top(T, T.gen("t").inv() + T.big_o(0)))
    assert hp_class(DifferentialForm.top(T, T.gen("w") + T.big_o(1))) == 1


def test_hp1_examples():
    F4 = parse_tower("GF(4)")
    assert hp1_class(F4.gen("w")).decided_value == 1
    assert hp1_class(F4.one).decided_value == 0
    assert wp(F4.gen("w")) == F4.one
    T = parse_tower("GF(2)((t))")
    rep = hp1_class(T.gen("t").inv())
    assert not rep.decided and rep.value == T.gen("t").inv()
    assert hp1_class(T.gen("t") ** -2 + T.gen("t").inv() + 1).decided_value == 1


def test_wedge_dlog_t_examples():
    k = parse_tower("GF(4)((t1))")
    K = parse_tower("GF(4)((t1))((t2))")
    zero = DifferentialForm.zero(k, 1)
    assert wedge_dlog_t(zero, K).is_zero()
    lam = k.gen("w")
    assert hp_class(wedge_dlog_t(DifferentialForm.top(k, lam), K)) == hp1_class(parse_tower("GF(4)").gen("w")).decided_value
    with pytest.raises(TowerMismatch):
        wedge_dlog_t(zero, parse_tower("GF(4)((s))"))


@pytest.mark.parametrize("name", DECIDABLE)
@given(seed=seeds)
def test_class_is_additive_and_kills_wp_and_exact(name, seed):
    T = parse_tower(name)
    rng = rng_from(seed)
    lam, mu = random_element(T, rng), random_element(T, rng)
    a, b = DifferentialForm.top(T, lam), DifferentialForm.top(T, mu)
    assert hp_class(a + b) == (hp_class(a) + hp_class(b)) % T.p
    eta = random_form(T, T.rank - 1, rng)
    assert hp_class(DifferentialForm.top(T, wp(mu)) + d(eta)) == 0
    assert hp_class(a + d(eta)) == hp_class(a)


@pytest.mark.parametrize("name", DECIDABLE)
@given(seed=seeds)
def test_positive_tail_is_irrelevant(name, seed):
    T = parse_tower(name)
    rng = rng_from(seed)
    lam = random_element(T, rng)
    t = T.gen(T.laurent_vars[-1])
    tail = random_element(T, rng) * t ** 4
    before = hp_class(DifferentialForm.top(T, lam))
    assert hp_class(DifferentialForm.top(T, lam + tail)) == before
    assert hp_class(DifferentialForm.top(T, lam + T.big_o(1))) == before


@pytest.mark.parametrize("name", DECIDABLE)
@given(seed=seeds)
def test_log_replays_to_representative(name, seed):
    T = parse_tower(name)
    lam = random_element(T, rng_from(seed))
    rep = classify_top(DifferentialForm.top(T, lam))
    assert (replay(lam, rep.log) - rep.value).is_zero()
    # the representative is a constant with the same class
    assert hp_class(DifferentialForm.top(T, rep.value)) == rep.decided_value


@pytest.mark.parametrize("name", DECIDABLE)
def test_every_class_is_attained(name):
    T = parse_tower(name)
    values = {hp_class(DifferentialForm.top(T, T(c))) for c in _constants(T)}
    assert values == set(range(T.p))


def _constants(T):
    k = T
    while k.height:
        k = k.parent
    from charpforms.tower import GFElement
    return [GFElement(k, c) for c in range(k.base.q)]


@pytest.mark.parametrize("inner,outer", [("GF(4)((t1))", "GF(4)((t1))((t2))"),
                                         ("GF(3)((t1))", "GF(3)((t1))((t2))"),
                                         ("GF(2)((t1))((t2))", "GF(2)((t1))((t2))((t3))")])
@given(seed=seeds)
def test_wedge_roundtrip(inner, outer, seed):
    k, K = parse_tower(inner), parse_tower(outer)
    c = DifferentialForm.top(k, random_element(k, rng_from(seed)))
    assert hp_class(wedge_dlog_t(c, K)) == hp_class(c)
    rep = classify_top(c)
    assert wedge_dlog_t(rep, K).decided_value == rep.decided_value


@pytest.mark.parametrize("name", ["GF(4)", "GF(9)", "GF(4)((t))", "GF(3)((t1))((t2))"])
@given(seed=seeds)
def test_hp1_kills_wp(name, seed):
    T = parse_tower(name)
    rng = rng_from(seed)
    x = random_element(T, rng)
    assert hp1_class(wp(x)).decided_value == 0
