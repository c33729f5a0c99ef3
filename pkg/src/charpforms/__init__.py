"""Exact computations with differential forms and Kato's groups H_p in characteristic p.

The kernel covers fields with a finite p-basis (finite fields, rational
function fields over F_p, iterated truncated Laurent series), forms in the
dlog basis, the decision algorithm for H_p over Laurent towers, traces along
etale and radicial extensions, and Weierstrass division over truncated
power series.
"""

from .errors import (DecisionUnavailable, InsufficientPrecision, NotAPthPower, NotSimpleRoot, ParseError,
                     TowerMismatch, TruncationTooSmall)
from .extensions import ExtensionField, etale_extension, radicial_extension, regular_trace
from .finite_field import GaloisField
from .forms import (DifferentialForm, QuotientFormTop, cartier_inverse_top, d, dlog, express_in_basis,
                    reduce_mod_exact)
from .hp import HpRepresentative, ReductionStep, classify_top, hp1_class, hp_class, replay, wedge_dlog_t, wp, wp_map
from .parsing import parse_element, parse_extension, parse_form, parse_ring, parse_series, parse_tower
from .series import SeriesRing, TruncatedSeries
from .tower import (FieldElement, FieldTower, FiniteField, PComponentDecomposition, RationalFunctions,
                    field_trace_finite, frobenius, make_tower, p_component_decompose, p_th_root,
                    partial_derivative)
from .trace import compose_traces, lift_form, trace_form, trace_hp
from .weierstrass import (NotRegular, PreparedFactorization, artin_schreier_solve, hensel_lift, regularity_order,
                          regularize, unit_group_congruence_check, weierstrass_divide, weierstrass_prepare)

__version__ = "0.1.0"
