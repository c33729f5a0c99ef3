"""
Traces along etale and radicial extensions
==========================================
"""

# %%
from charpforms import DifferentialForm, d, dlog, lift_form, reduce_mod_exact, trace_form, trace_hp
from charpforms.parsing import parse_element, parse_extension, parse_tower

k = parse_tower("Frac GF(2)[b]")
ka = parse_extension("radicial a: b", k)
a = ka.gen
print(ka, "p-basis", ka.pbasis)

# %%
# Only the a^0 coordinate survives, and dlog(a) turns into dlog(b).
omega = DifferentialForm.top(ka, parse_element("b + a + b*a", ka))
print(trace_form(omega, ka))

# %%
# Lifting kills dlog(b) because b = a^2 is a square upstairs.
print(lift_form(dlog(k.gen("b")), ka).is_zero())

# %%
# An etale extension shares the dlog basis and traces coefficients.
F = parse_tower("GF(2)((t))")
E = parse_extension("etale x: x^2 + x + 1", F)
x = E.gen
eta = DifferentialForm.top(E, x * parse_element("t^-2", E))
print(trace_form(eta, E), "|", trace_hp(eta, E))

# %%
# The trace commutes with d.
zeta = DifferentialForm(E, 0, {(): x * parse_element("t^3 + t^-1", E)})
print(trace_form(d(zeta), E) == d(trace_form(zeta, E)))
