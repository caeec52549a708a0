"""Truncated Lie-Butcher series: characters, exponentials, Magnus map.

With a single generating field the node grading doubles as the grading in
the time step, so a series truncated at degree n encodes an integrator's
expansion through order n in the step size.  Characters (multiplicative on
shuffles) represent flows; infinitesimal characters (vanishing on shuffles)
represent vector fields.  The concatenation exponential produces the
frozen-field Euler flow, the Grossman-Larson exponential the exact flow,
and the Magnus-type map chi links the two: exp_concat(a) = exp_gl(chi(a)).
"""

from __future__ import annotations

from collections import namedtuple
from fractions import Fraction

from .postlie import gl_product, triangleright
from .series import Series, concat, shuffle
from .trees import EMPTY_FOREST, LEAF, enumerate_forests

__all__ = [
    "Defect",
    "FieldSeries",
    "MethodCharacter",
    "exact_flow_character",
    "exp_concat",
    "exp_gl",
    "field_generator",
    "first_defect",
    "is_character",
    "is_inf_character",
    "lie_euler_character",
    "lie_midpoint_character",
    "lie_midpoint_field",
    "log_gl",
    "magnus_chi",
    "order_of_agreement",
]

Defect = namedtuple("Defect", ["degree", "forest", "lhs", "rhs"])


def field_generator(trunc: int | None = None) -> Series:
    """The one-node-tree series h*[]; degree k doubles as the power h^k."""
    return Series.of(LEAF, 1, trunc)


def _bound(a: Series) -> int:
    return a.trunc if a.trunc is not None else a.max_degree()


def _eval_on(a: Series, s: Series) -> Fraction:
    return sum((c * a.coeff(f) for f, c in s.terms.items()), Fraction(0))


def is_inf_character(a: Series) -> bool:
    """True iff a kills the empty forest and every shuffle of non-empty forests.

    Checked for all pairs with total degree up to the truncation (or the
    support degree when the series is exact).
    """
    if a.coeff(EMPTY_FOREST) != 0:
        return False
    n = _bound(a)
    for p in range(1, n):
        for u in enumerate_forests(p):
            su = Series.of(u)
            for q in range(1, n - p + 1):
                for v in enumerate_forests(q):
                    if _eval_on(a, shuffle(su, Series.of(v))) != 0:
                        return False
    return True


def is_character(a: Series) -> bool:
    """True iff a is multiplicative on shuffles for all forest pairs in range."""
    n = _bound(a)
    for p in range(0, n + 1):
        for u in enumerate_forests(p):
            au = a.coeff(u)
            su = Series.of(u)
            for q in range(0, n - p + 1):
                for v in enumerate_forests(q):
                    if _eval_on(a, shuffle(su, Series.of(v))) != au * a.coeff(v):
                        return False
    return True


class FieldSeries:
    """A vector-field series: zero constant term, vanishing on shuffles."""

    def __init__(self, series: Series, validate: bool = True):
        if series.coeff(EMPTY_FOREST) != 0:
            raise ValueError("a field series must have zero constant term")
        if validate and not is_inf_character(series):
            raise ValueError("series does not vanish on shuffles")
        self.series = series

    @property
    def trunc(self) -> int | None:
        return self.series.trunc

    def __eq__(self, other):
        return isinstance(other, FieldSeries) and self.series == other.series

    def __repr__(self):
        return f"FieldSeries({self.series!r})"


class MethodCharacter:
    """A flow series: constant term 1, multiplicative on shuffles."""

    def __init__(self, series: Series, validate: bool = True):
        if series.coeff(EMPTY_FOREST) != 1:
            raise ValueError("a character must have constant term 1")
        if validate and not is_character(series):
            raise ValueError("series is not multiplicative on shuffles")
        self.series = series

    @property
    def trunc(self) -> int | None:
        return self.series.trunc

    def __eq__(self, other):
        return isinstance(other, MethodCharacter) and self.series == other.series

    def __repr__(self):
        return f"MethodCharacter({self.series!r})"


def _as_series(a) -> Series:
    if isinstance(a, (FieldSeries, MethodCharacter)):
        return a.series
    return a


def _series_exp(a: Series, n: int, product) -> Series:
    if a.coeff(EMPTY_FOREST) != 0:
        raise ValueError("exponential requires a zero constant term")
    x = a.truncated(n)
    out = Series.unit(n)
    power = Series.unit(n)
    kfac = 1
    for k in range(1, n + 1):
        power = product(power, x)
        if not power:
            break
        kfac *= k
        out = out + power * Fraction(1, kfac)
    return out


def exp_concat(a, n: int, validate: bool = True) -> MethodCharacter:
    """Concatenation exponential, truncated at degree n (frozen-field flow)."""
    return MethodCharacter(_series_exp(_as_series(a), n, concat), validate=validate)


def exp_gl(a, n: int, validate: bool = True) -> MethodCharacter:
    """Grossman-Larson exponential, truncated at degree n (exact flow)."""
    return MethodCharacter(_series_exp(_as_series(a), n, gl_product), validate=validate)


def log_gl(c, validate: bool = True) -> FieldSeries:
    """Grossman-Larson logarithm; inverse of exp_gl up to the truncation."""
    s = _as_series(c)
    if s.coeff(EMPTY_FOREST) != 1:
        raise ValueError("logarithm requires constant term 1")
    n = _bound(s)
    x = (s - Series.unit(s.trunc)).truncated(n)
    out = Series.zero(n)
    power = Series.unit(n)
    for k in range(1, n + 1):
        power = gl_product(power, x)
        if not power:
            break
        out = out + power * Fraction((-1) ** (k + 1), k)
    return FieldSeries(out, validate=validate)


def magnus_chi(a, n: int, validate: bool = True) -> FieldSeries:
    """The map chi with exp_concat(a) = exp_gl(chi(a)), computed as log o exp.

    Truncating chi at degree m and re-exponentiating recovers exp_concat(a)
    through degree m, which is the backward-error reading of the frozen
    Euler flow.
    """
    return log_gl(exp_concat(a, n, validate=False), validate=validate)


def lie_euler_character(n: int, validate: bool = True) -> MethodCharacter:
    """Series of the method stepping along the frozen exponential flow."""
    return exp_concat(field_generator(n), n, validate=validate)


def lie_midpoint_field(n: int) -> FieldSeries:
    """Stage series K solving K = exp_concat(K/2) |> h[].

    Fixed-point iteration; the degree-k component is stationary after k
    rounds, so exactly n rounds pin everything below the truncation.
    """
    hgen = field_generator(n)
    k = Series.zero(n)
    half = Fraction(1, 2)
    for _ in range(n):
        k = triangleright(exp_concat(k * half, n, validate=False).series, hgen)
    return FieldSeries(k)


def lie_midpoint_character(n: int, validate: bool = True) -> MethodCharacter:
    """Series of the midpoint method, exp_concat of the solved stage."""
    return exp_concat(lie_midpoint_field(n), n, validate=validate)


def exact_flow_character(n: int, validate: bool = True) -> MethodCharacter:
    """exp_gl of the generating field: the benchmark exact-flow series."""
    return exp_gl(field_generator(n), n, validate=validate)


def first_defect(a, b) -> Defect | None:
    """First coefficient disagreement in canonical order, or None."""
    sa, sb = _as_series(a), _as_series(b)
    if sa.trunc is None or sa.trunc != sb.trunc:
        raise ValueError("series must share a finite truncation degree")
    for d in range(0, sa.trunc + 1):
        for f in enumerate_forests(d):
            ca, cb = sa.coeff(f), sb.coeff(f)
            if ca != cb:
                return Defect(d, f, ca, cb)
    return None


def order_of_agreement(a, b) -> int:
    """Largest p with all coefficients of degree <= p equal (p <= trunc)."""
    defect = first_defect(a, b)
    if defect is None:
        return _as_series(a).trunc
    return defect.degree - 1
