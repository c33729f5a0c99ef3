"""Trace maps on differential forms for etale and radicial extensions.

For an etale extension the dlog basis is shared and the trace acts on
coefficients through the field trace.  For a radicial extension k(a)/k with
a^p = b, write each coefficient as sum_j c_j a^j with c_j in k; only c_0
survives, and only on basis forms that contain dlog(a), which becomes dlog(b).
"""

from __future__ import annotations

from .errors import TowerMismatch
from .extensions import ETALE, RADICIAL, ExtensionField, field_coeffs
from .forms import DifferentialForm, QuotientFormTop, as_form, reduce_mod_exact


def _check_over(omega: DifferentialForm, field, what: str):
    if omega.field != field:
        raise TowerMismatch(f"{what}: form lives over {omega.field}, expected {field}")


def lift_form(omega, ext: ExtensionField) -> DifferentialForm:
    """The image of a form over k in the forms over k'."""
    omega = as_form(omega, ext.base)
    _check_over(omega, ext.base, "lift_form")
    coeffs = omega.coeffs
    if ext.kind == RADICIAL:
        # dlog(b) = dlog(a^p) = 0
        coeffs = {s: c for s, c in coeffs.items() if ext.index not in s}
    return DifferentialForm(ext, omega.degree, {s: ext(c) for s, c in coeffs.items()})


def trace_form(omega, ext: ExtensionField) -> DifferentialForm:
    """Tr_{k'/k} on forms of any degree."""
    omega = as_form(omega, ext)
    _check_over(omega, ext, "trace_form")
    if ext.kind == ETALE:
        return DifferentialForm(ext.base, omega.degree, {s: ext.trace(c) for s, c in omega.coeffs.items()})
    out = {}
    for s, c in omega.coeffs.items():
        if ext.index in s:
            out[s] = field_coeffs(c)[0]
    return DifferentialForm(ext.base, omega.degree, out)


def trace_hp(c, ext: ExtensionField) -> QuotientFormTop:
    """Trace on top-degree classes: trace the representative, then reduce over k."""
    if isinstance(c, QuotientFormTop):
        c = c.form()
    elif hasattr(c, "form") and not isinstance(c, DifferentialForm):
        c = c.form()
    if c.degree != ext.rank:
        raise ValueError(f"trace_hp needs a top-degree form (degree {ext.rank})")
    return reduce_mod_exact(trace_form(c, ext))


def compose_traces(omega, *exts: ExtensionField) -> DifferentialForm:
    """Trace down a chain of extensions, innermost last: exts = (top, ..., bottom)."""
    for ext in exts:
        omega = trace_form(omega, ext)
    return omega
