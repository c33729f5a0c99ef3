"""The groups H_p^1 and H_p^{r+1} and their decision algorithm.

For a top-degree form lambda * dlog(b_1) ^ ... ^ dlog(b_r) the class lives in
k / (wp(k) + k_{>0}), where wp(x) = x - x^p and k_{>0} is the k^p-span of the
monomials b^theta with theta != 0.  Over an iterated Laurent tower on a finite
field this group is Z/p, and the reduction below computes the class one layer
at a time:

* terms of positive t-valuation are wp-images and are dropped;
* a*t^-n with p not dividing n lies in k_{>0} and is dropped;
* for n = p*s, write a = a0^p + a_{>0}; the a_{>0} part lies in k_{>0} and
  a0^p t^-ps = (a0 t^-s)^p is replaced by a0 t^-s (they differ by a wp-image);
* the constant term is handed down to the next layer;
* at GF(q) the class is the trace to F_p.

Every step is recorded as a :class:`ReductionStep`, so a log can be replayed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DecisionUnavailable, InsufficientPrecision, TowerMismatch
from .forms import DifferentialForm, QuotientFormTop, as_form, reduce_mod_exact, theta_zero_part
from .tower import FieldElement, FieldTower, GFElement, LaurentElement, p_component_decompose

DROP_TAIL = "drop-positive-tail"
DROP_THETA = "drop-nonzero-theta"
FOLD = "fold-p-power"
KEEP = "keep-residual"

RULE_NOTES = {
    DROP_TAIL: "positive valuation: the Artin-Schreier map is onto the maximal ideal",
    DROP_THETA: "component with theta != 0: an exact form",
    FOLD: "(a0 t^-s)^p replaced by a0 t^-s: the difference is a wp-image",
    KEEP: "not a wp-image in general: retained",
}


@dataclass(frozen=True)
class ReductionStep:
    rule: str
    layer: str
    removed: FieldElement
    added: FieldElement | None = None

    def as_dict(self) -> dict:
        return {"rule": self.rule, "layer": self.layer, "removed": str(self.removed),
                "added": None if self.added is None else str(self.added)}

    def __str__(self):
        s = f"[{self.layer}] {self.rule}: - {self.removed}"
        if self.added is not None:
            s += f" + {self.added}"
        return s


@dataclass(eq=False)
class HpRepresentative:
    """A reduced class representative.

    ``degree`` is 0 for H_p^1 and the p-rank for the top group.  ``value`` is
    the reduced coefficient, an element of the top level of ``tower``.
    """

    tower: FieldTower
    degree: int
    value: FieldElement
    decided_value: int | None = None
    log: list[ReductionStep] = field(default_factory=list)
    undecided_reason: str | None = None

    @property
    def decided(self) -> bool:
        return self.decided_value is not None

    def form(self) -> DifferentialForm:
        if self.degree == 0:
            return as_form(self.value, self.tower)
        return DifferentialForm.top(self.tower, self.value)

    def __str__(self):
        return str(self.form())

    def __eq__(self, other):
        if not isinstance(other, HpRepresentative) or other.tower != self.tower or other.degree != self.degree:
            return NotImplemented
        if self.decided and other.decided:
            return self.decided_value == other.decided_value
        return self.value == other.value


def wp(x: FieldElement) -> FieldElement:
    """The Artin-Schreier map x - x^p."""
    return x - x.frobenius()


def wp_map(lam, field_=None) -> QuotientFormTop:
    """Reduced class of (lambda - lambda^p) * dlog(b) in Omega^r / d Omega^(r-1)."""
    fld = field_ or lam.tower
    return reduce_mod_exact(DifferentialForm.top(fld, wp(fld(lam))))


# -- the reduction -----------------------------------------------------------------

def _check_precision(x: LaurentElement):
    if x.prec is not None and x.prec < 1:
        raise InsufficientPrecision(
            f"the constant {x.var}-coefficient of {x} is unknown (precision {x.prec} < 1)")


def _split_layer(x: LaurentElement, log: list, keep_theta: bool):
    """One layer of the reduction.

    Returns (constant coefficient, residual terms {exp: coeff}).  With
    ``keep_theta`` the theta != 0 pieces are kept as residual instead of
    dropped (the H_p^1 variant).
    """
    tower, p, var = x.tower, x.p, x.var
    _check_precision(x)
    tail = {e: c for e, c in x.terms if e > 0}
    if tail or x.prec is not None:
        log.append(ReductionStep(DROP_TAIL, var, tower.laurent(tail, x.prec)))
    work = {e: c for e, c in x.terms if e <= 0}
    residual: dict = {}
    while True:
        negative = [e for e in work if e < 0]
        if not negative:
            break
        e = min(negative)
        c = work.pop(e)
        n = -e
        if n % p:
            rule = KEEP if keep_theta else DROP_THETA
            log.append(ReductionStep(rule, var, tower.laurent({e: c})))
            residual[e] = c
            continue
        s = n // p
        dec = p_component_decompose(c)
        c0 = dec.get(dec.zero_theta())
        rest = c - c0.frobenius()
        if not rest.is_zero():
            rule = KEEP if keep_theta else DROP_THETA
            log.append(ReductionStep(rule, var, tower.laurent({e: rest})))
            residual[e] = rest
        if not c0.is_zero() or not c0.is_exact():
            assert -s > e, "loop variant: the folded exponent must increase"
            log.append(ReductionStep(FOLD, var, tower.laurent({e: c0.frobenius()}), tower.laurent({-s: c0})))
            work[-s] = work[-s] + c0 if -s in work else c0
    const = work.get(0, tower.parent.zero)
    return const, residual


def _reduce(x: FieldElement, log: list, keep_theta: bool):
    """Reduce down to the base.  Returns (base element, residual at the input's tower)."""
    tower = x.tower
    if not tower.height:
        return x, tower.zero
    const, residual = _split_layer(x, log, keep_theta)
    base, inner = _reduce(const, log, keep_theta)
    res = tower.laurent(residual) + tower.embed(inner) if residual or not inner.is_zero() else tower.zero
    return base, res


def _replayed(tower, log):
    total = tower.zero
    for step in log:
        if step.rule == KEEP:
            continue
        total = total - tower(step.removed)
        if step.added is not None:
            total = total + tower(step.added)
    return total


def replay(x: FieldElement, log: list[ReductionStep]) -> FieldElement:
    """Apply a reduction log to its input; the result equals the reported representative."""
    return x + _replayed(x.tower, log)


def _top_coefficient(omega) -> tuple[FieldTower, FieldElement]:
    if isinstance(omega, HpRepresentative):
        return omega.tower, omega.value
    if isinstance(omega, FieldElement):
        return omega.tower, omega
    r = omega.field.rank
    if omega.degree != r:
        raise ValueError(f"expected a top-degree form (degree {r}), got degree {omega.degree}")
    return omega.field, omega.coefficient(range(r))


def classify_top(omega) -> HpRepresentative:
    """Reduce a top-degree form (or its coefficient) and decide its class when possible."""
    tower, lam = _top_coefficient(omega)
    if not isinstance(tower, FieldTower):
        raise TypeError("the decision algorithm runs over field towers")
    log: list = []
    base, _ = _reduce(lam, log, keep_theta=False)
    if tower.is_finite_base:
        decided = int(base.trace().code)
        return HpRepresentative(tower, tower.rank, tower(base), decided, log)
    # rational base: keep the theta = 0 part and stop
    base_rep = theta_zero_part(base)
    dropped = base - base_rep
    if not dropped.is_zero():
        log.append(ReductionStep(DROP_THETA, "base", dropped))
    return HpRepresentative(tower, tower.rank, tower(base_rep), None, log,
                            "no decision procedure over a rational function field")


def hp_class(omega) -> int:
    """The class of a top-degree form in H_p^{r+1} = Z/p, via the trace identification.

    Raises DecisionUnavailable over rational-function bases; the exception
    carries the reduced representative.
    """
    rep = classify_top(omega)
    if rep.decided_value is None:
        raise DecisionUnavailable(rep.undecided_reason, rep)
    return rep.decided_value


def hp1_class(a: FieldElement) -> HpRepresentative:
    """Class of a in k / wp(k).

    Decided by the trace over finite fields and, over Laurent towers, whenever
    the reduction leaves no residual terms.  A nonzero residual is reported as
    an undecided nonzero representative.
    """
    tower = a.tower
    if not isinstance(tower, FieldTower):
        raise TypeError("hp1_class runs over field towers")
    if not tower.is_finite_base:
        raise DecisionUnavailable("no decision procedure for H_p^1 over a rational function field",
                                  HpRepresentative(tower, 0, a, None, [], "rational base"))
    log: list = []
    base, residual = _reduce(a, log, keep_theta=True)
    value = tower(base) + residual
    if not residual.is_zero():
        return HpRepresentative(tower, 0, value, None, log,
                                "nonzero, undecided: terms that are not wp-images remain")
    return HpRepresentative(tower, 0, value, int(base.trace().code), log)


def wedge_dlog_t(c, target: FieldTower):
    """Send the class of omega over k to the class of omega ^ dlog(t) over k((t)).

    Accepts a top-degree form over k (returns the form over k((t))) or an
    HpRepresentative (returns the representative over k((t))).
    """
    source = c.tower if isinstance(c, HpRepresentative) else c.field
    if not isinstance(target, FieldTower) or not target.height or target.parent != source:
        raise TowerMismatch(f"{target} is not a Laurent layer directly over {source}")
    dt = DifferentialForm.basis(target, [target.rank - 1])
    if isinstance(c, HpRepresentative):
        if c.degree != source.rank:
            raise ValueError("only top-degree classes can be wedged with dlog(t)")
        return HpRepresentative(target, target.rank, target(c.value), c.decided_value, list(c.log),
                                c.undecided_reason)
    if c.degree != source.rank:
        raise ValueError("only top-degree forms can be wedged with dlog(t)")
    lifted = DifferentialForm(target, c.degree, c.coeffs)
    return lifted.wedge(dt)
