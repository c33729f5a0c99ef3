"""Named property suites, runnable from the command line and from tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .forms import DifferentialForm, d, dlog, exact_primitive, reduce_mod_exact
from .hp import hp_class, wedge_dlog_t, wp
from .sampling import random_element, random_form
from .tower import FieldTower, p_component_decompose


@dataclass
class CheckResult:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, example=None):
        self.trials += 1
        if not ok:
            self.failures.append(example)

    def as_dict(self) -> dict:
        return {"property": self.name, "trials": self.trials, "failures": len(self.failures),
                "passed": self.passed}


def exact_preimage(lam, tower) -> DifferentialForm:
    """An (r-1)-form eta with d(eta) = (lambda - lambda_0^p) dlog(b), built from the primitives.

    For each theta != 0 pick i with theta(i) != 0; b^theta dlog(b) is
    d(b^theta * omega_i) up to the unit (-1)^i * theta(i).
    """
    dec = p_component_decompose(lam)
    total = DifferentialForm.zero(tower, tower.rank - 1)
    for theta, x in dec.components.items():
        if not any(theta):
            continue
        i = next(j for j, k in enumerate(theta) if k)
        unit = tower((-1) ** i * theta[i])
        total = total + exact_primitive(tower, theta, i) * (x.frobenius() / unit)
    return total


def check_top_degree_normal_form(tower: FieldTower, trials: int, rng: random.Random) -> list[CheckResult]:
    r = tower.rank
    exact = CheckResult("exact forms reduce to zero")
    normal = CheckResult("representative is the theta = 0 part")
    for _ in range(trials):
        eta = random_form(tower, r - 1, rng)
        exact.record(reduce_mod_exact(d(eta)).is_zero(), eta)
    for _ in range(trials):
        lam = random_element(tower, rng)
        rep = reduce_mod_exact(DifferentialForm.top(tower, lam)).rep
        # oracle: lambda dlog(b) - rep dlog(b) is d of an explicit form, and rep is a p-th power
        eta = exact_preimage(lam, tower)
        ok = d(eta) + DifferentialForm.top(tower, rep) == DifferentialForm.top(tower, lam)
        ok = ok and rep.p_th_root().frobenius() == rep
        normal.record(ok, lam)
    return [exact, normal]


def check_d_squared(tower, trials, rng) -> list[CheckResult]:
    res = CheckResult("d(d(omega)) = 0")
    for _ in range(trials):
        deg = rng.randrange(tower.rank + 1)
        res.record(d(d(random_form(tower, deg, rng))).is_zero())
    return [res]


def check_dlog(tower, trials, rng) -> list[CheckResult]:
    mult = CheckResult("dlog(xy) = dlog(x) + dlog(y)")
    frob = CheckResult("dlog(x^p) = 0")
    for _ in range(trials):
        x = random_element(tower, rng, nonzero=True)
        y = random_element(tower, rng, nonzero=True)
        mult.record((dlog(x * y) - dlog(x) - dlog(y)).is_zero(), (x, y))
        frob.record(dlog(x.frobenius()).is_zero(), x)
    return [mult, frob]


def check_frobenius(tower, trials, rng) -> list[CheckResult]:
    hom = CheckResult("Frobenius is a ring map")
    root = CheckResult("p-th root inverts Frobenius")
    dec = CheckResult("decomposition reassembles")
    for _ in range(trials):
        x, y = random_element(tower, rng), random_element(tower, rng)
        hom.record((x + y).frobenius() == x.frobenius() + y.frobenius()
                   and (x * y).frobenius() == x.frobenius() * y.frobenius())
        root.record(x.frobenius().p_th_root() == x, x)
        dec.record(p_component_decompose(x).reassemble() == x, x)
    return [hom, root, dec]


def check_hp_roundtrip(tower, trials, rng) -> list[CheckResult]:
    if not tower.is_finite_base or not tower.height:
        raise ValueError("the H_p round trip needs a Laurent tower over a finite field")
    k = tower.parent
    rt = CheckResult("class of omega ^ dlog(t) equals class of omega")
    add = CheckResult("class is additive")
    van = CheckResult("wp-images and exact forms have class 0")
    for _ in range(trials):
        lam, mu = random_element(tower, rng), random_element(tower, rng)
        top = DifferentialForm.top(tower, lam)
        other = DifferentialForm.top(tower, mu)
        add.record(hp_class(top + other) == (hp_class(top) + hp_class(other)) % tower.p, (lam, mu))
        eta = random_form(tower, tower.rank - 1, rng)
        van.record(hp_class(DifferentialForm.top(tower, wp(mu)) + d(eta)) == 0, mu)
        c = DifferentialForm.top(k, random_element(k, rng))
        rt.record(hp_class(wedge_dlog_t(c, tower)) == hp_class(c), c)
    return [rt, add, van]


SUITES: dict[str, Callable] = {
    "top-degree-normal-form": check_top_degree_normal_form,
    "d-squared": check_d_squared,
    "dlog": check_dlog,
    "frobenius": check_frobenius,
    "hp-roundtrip": check_hp_roundtrip,
}


def run_suite(name: str, tower, trials: int = 100, seed: int = 0) -> list[CheckResult]:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; available: {', '.join(SUITES)}") from None
    return fn(tower, trials, random.Random(seed))


def wp_image(field_elements) -> set:
    """{x - x^p} over an explicitly enumerated finite field."""
    return {wp(x) for x in field_elements}


def all_gf_elements(tower: FieldTower):
    from .tower import GFElement
    return [GFElement(tower, c) for c in range(tower.base.q)]


__all__ = ["SUITES", "run_suite", "CheckResult", "exact_preimage", "wp_image", "all_gf_elements"]
