"""
Top-degree forms and their classes
==================================

Build a two-layer Laurent tower over GF(4), write down a few top-degree
forms and watch the layer-by-layer reduction decide their class in Z/2.
"""

# %%
from charpforms import DifferentialForm, classify_top, d, dlog, hp_class, reduce_mod_exact, wp
from charpforms.parsing import parse_element, parse_form, parse_tower

K = parse_tower("GF(4)((t1))((t2))")
print(K, "rank", K.rank, "p-basis", K.pbasis)

# %%
# Forms live in the dlog basis.  Wedge signs follow the order of the p-basis.
t1, t2, w = K.gen("t1"), K.gen("t2"), K.gen("w")
omega = dlog(t2).wedge(dlog(t1 + t1 ** 2))
print(omega)

# %%
# Modulo exact forms a top-degree form keeps only its p-th power part.
lam = parse_element("w*t1^-2*t2^-4 + t1^-1 + t2^3 + w", K)
print(reduce_mod_exact(DifferentialForm.top(K, lam)))

# %%
# The class decision records every step; replaying the log gives back the representative.
rep = classify_top(DifferentialForm.top(K, lam))
for step in rep.log:
    print(step)
print("class:", rep.decided_value)

# %%
# wp-images and exact forms never change the class.
eta = parse_form("t1^-3*t2 * dlog(t1)", K)
noise = DifferentialForm.top(K, wp(t1 ** -5 + w * t2)) + d(eta)
print(hp_class(DifferentialForm.top(K, lam) + noise) == rep.decided_value)
