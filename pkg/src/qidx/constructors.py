"""Series constructors: Pochhammer products, theta and partial-fraction sums,
the bilateral f-function family, and generalized Lambert sums.

Parameters are specialized to monomials u * q^e where the unit u is a sign or
a symbolic unit monomial (an invertible generator of the coefficient ring).
Every reciprocal 1/(1-v)^s goes through one three-case expansion:

  ord(v) > 0   geometric/binomial expansion in v,
  ord(v) < 0   flipped expansion in v^-1 (series in positive powers of q),
  ord(v) = 0   exact constants for u = -1, an error for u = +1 or symbolic.

Bilateral sums enumerate a finite window of indices; the first excluded term
on each side provably exceeds the truncation order.  Every such constructor
takes a ``pad`` argument adding extra window terms, so tests can double the
window and check the result does not move.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Sequence, Tuple, Union

from .errors import (
    ConstraintViolationError,
    DivergentTailError,
    NegativeOrderArgumentError,
    PoleError,
    SymbolicNonUnitError,
)
from .exactalg import (
    MONO_ONE,
    LaurentPoly,
    Monomial,
    Scalar,
    mono_inv,
    mono_mul,
    mono_pow,
    mono_str,
)
from .qring import QSeries, RATIONAL, SYMBOLIC, CoeffRing

_LOOP_LIMIT = 200_000


@dataclass(frozen=True)
class Unit:
    """An invertible coefficient: sign times a symbolic unit monomial."""

    sign: int = 1
    mono: Monomial = MONO_ONE

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("unit sign must be +1 or -1")

    @property
    def symbolic(self) -> bool:
        return self.mono != MONO_ONE

    def is_plus_one(self) -> bool:
        return self.sign == 1 and self.mono == MONO_ONE

    def is_minus_one(self) -> bool:
        return self.sign == -1 and self.mono == MONO_ONE

    def mul(self, other: "Unit") -> "Unit":
        return Unit(self.sign * other.sign, mono_mul(self.mono, other.mono))

    def inv(self) -> "Unit":
        return Unit(self.sign, mono_inv(self.mono))

    def pow(self, k: int) -> "Unit":
        s = self.sign if k % 2 else 1
        return Unit(s, mono_pow(self.mono, k))

    def value(self) -> Union[int, LaurentPoly]:
        """The unit as a coefficient-ring element."""
        if self.mono == MONO_ONE:
            return self.sign
        return LaurentPoly.monomial(self.mono, self.sign)

    def __str__(self):
        if self.mono == MONO_ONE:
            return "+1" if self.sign == 1 else "-1"
        body = mono_str(self.mono)
        return body if self.sign == 1 else "-" + body


@dataclass(frozen=True)
class SpecMonomial:
    """A parameter specialization u * q^e."""

    unit: Unit
    qexp: int

    @classmethod
    def signed(cls, sign: int, e: int) -> "SpecMonomial":
        return cls(Unit(sign), e)

    @classmethod
    def symbolic(cls, var: int, e: int, sign: int = 1) -> "SpecMonomial":
        mono = tuple(1 if i == var else 0 for i in range(4))
        return cls(Unit(sign, mono), e)

    @classmethod
    def one(cls) -> "SpecMonomial":
        return cls(Unit(), 0)

    @property
    def ord(self) -> int:
        return self.qexp

    def mul(self, other: "SpecMonomial") -> "SpecMonomial":
        return SpecMonomial(self.unit.mul(other.unit), self.qexp + other.qexp)

    def inv(self) -> "SpecMonomial":
        return SpecMonomial(self.unit.inv(), -self.qexp)

    def pow(self, k: int) -> "SpecMonomial":
        return SpecMonomial(self.unit.pow(k), self.qexp * k)

    def times_qpow(self, k: int) -> "SpecMonomial":
        return SpecMonomial(self.unit, self.qexp + k)

    def __str__(self):
        u = str(self.unit)
        if self.qexp == 0:
            return u
        q = "q" if self.qexp == 1 else f"q^{self.qexp}"
        if u == "+1":
            return q
        if u == "-1":
            return "-" + q
        return f"{u}*{q}"


@dataclass(frozen=True)
class AffineWeight:
    """Term weight W(r) = u*r + v with exact rational u, v."""

    u: Scalar = 0
    v: Scalar = 1

    def __call__(self, r: int) -> Scalar:
        return self.u * r + self.v


W_ONE = AffineWeight(0, 1)
W_R = AffineWeight(1, 0)


def infer_ring(*xs: Optional[SpecMonomial]) -> CoeffRing:
    for x in xs:
        if x is not None and x.unit.symbolic:
            return SYMBOLIC
    return RATIONAL


def _dict_to_series(acc: dict, ring: CoeffRing, order: int) -> QSeries:
    acc = {e: c for e, c in acc.items() if e <= order and c}
    if not acc:
        return QSeries.zero(ring, order)
    lo = min(acc)
    return QSeries.make(ring, lo, [acc.get(e, 0) for e in range(lo, order + 1)], order)


def one_minus(x: SpecMonomial, ring: CoeffRing, order: int) -> QSeries:
    """The two-term series 1 - u*q^e."""
    acc = {0: 1}
    acc[x.qexp] = acc.get(x.qexp, 0) - x.unit.value()
    return _dict_to_series(acc, ring, order)


def term_series(
    v: SpecMonomial, s: int, order: int, ring: Optional[CoeffRing] = None
) -> QSeries:
    """Expand v/(1-v)^s exactly, for s in {1, 2}."""
    if s not in (1, 2):
        raise ValueError("s must be 1 or 2")
    if ring is None:
        ring = infer_ring(v)
    g = v.qexp
    u = v.unit
    if g == 0:
        if u.symbolic:
            raise SymbolicNonUnitError(
                f"term {v}/(1-{v})^{s} has a non-Laurent constant coefficient"
            )
        if u.sign == 1:
            raise PoleError(f"term {v}/(1-{v})^{s} hits the pole at 1")
        c = Fraction(-1, 2) if s == 1 else Fraction(-1, 4)
        return QSeries.const(ring, c, order)
    acc: dict = {}
    if g > 0:
        # v/(1-v)^s = sum_{k>=1} C(k+s-2, s-1) v^k
        k = 1
        sign, mono = u.sign, u.mono
        while k * g <= order:
            w = k if s == 2 else 1
            acc[k * g] = (w * sign) if mono == MONO_ONE else LaurentPoly.monomial(
                mono, w * sign
            )
            k += 1
            sign *= u.sign
            mono = mono_mul(mono, u.mono)
    else:
        # flipped: v/(1-v) = -1 - sum_{k>=1} v^-k; v/(1-v)^2 = sum_{k>=1} k v^-k
        ui = u.inv()
        if s == 1:
            acc[0] = -1
        k = 1
        sign, mono = ui.sign, ui.mono
        step = -g
        while k * step <= order:
            w = k if s == 2 else -1
            acc[k * step] = (w * sign) if mono == MONO_ONE else LaurentPoly.monomial(
                mono, w * sign
            )
            k += 1
            sign *= ui.sign
            mono = mono_mul(mono, ui.mono)
    return _dict_to_series(acc, ring, order)


def recip_series(
    v: SpecMonomial, s: int, order: int, ring: Optional[CoeffRing] = None
) -> QSeries:
    """Expand 1/(1-v)^s exactly, for s in {1, 2}."""
    if s not in (1, 2):
        raise ValueError("s must be 1 or 2")
    if ring is None:
        ring = infer_ring(v)
    g = v.qexp
    u = v.unit
    if g == 0:
        if u.symbolic:
            raise SymbolicNonUnitError(f"1/(1-{v})^{s} is not Laurent in q")
        if u.sign == 1:
            raise PoleError(f"1/(1-{v})^{s} hits the pole at 1")
        return QSeries.const(ring, Fraction(1, 2 ** s), order)
    acc: dict = {}
    if g > 0:
        # 1/(1-v)^s = sum_{k>=0} C(k+s-1, s-1) v^k
        k = 0
        sign, mono = 1, MONO_ONE
        while k * g <= order:
            w = comb(k + s - 1, s - 1)
            acc[k * g] = (w * sign) if mono == MONO_ONE else LaurentPoly.monomial(
                mono, w * sign
            )
            k += 1
            sign *= u.sign
            mono = mono_mul(mono, u.mono)
    else:
        # 1/(1-v)^s = (-1)^s sum_{j>=s} C(j-1, s-1) v^-j
        ui = u.inv()
        outer = -1 if s == 1 else 1
        j = s
        sign, mono = ui.pow(s).sign, ui.pow(s).mono
        step = -g
        while j * step <= order:
            w = outer * comb(j - 1, s - 1)
            acc[j * step] = (w * sign) if mono == MONO_ONE else LaurentPoly.monomial(
                mono, w * sign
            )
            j += 1
            sign *= ui.sign
            mono = mono_mul(mono, ui.mono)
    return _dict_to_series(acc, ring, order)


def times_spec_monomial(qs: QSeries, x: SpecMonomial, weight: Scalar = 1) -> QSeries:
    """Multiply a series by weight * u * q^e."""
    c = x.unit.value()
    if weight != 1:
        c = c * weight
    return qs.scale(c).shifted(x.qexp)


# ---------------------------------------------------------------------------
# Pochhammer products
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _poch_inf_cached(x: SpecMonomial, m: int, order: int, symbolic: bool) -> QSeries:
    ring = SYMBOLIC if symbolic else RATIONAL
    result = QSeries.const(ring, 1, order)
    e = x.qexp
    i = 0
    while e + m * i <= order:
        result = result * one_minus(x.times_qpow(m * i), ring, order)
        if result.is_zero():
            break
        i += 1
    return result


def poch_inf(
    x: SpecMonomial, m: int, order: int, ring: Optional[CoeffRing] = None
) -> QSeries:
    """The infinite product of (1 - x*q^{m*i}) for i >= 0, truncated."""
    if m < 1:
        raise ConstraintViolationError("base scale must be a positive integer")
    if x.qexp < 0:
        raise NegativeOrderArgumentError(
            f"infinite product needs ord(x) >= 0, got ord = {x.qexp}"
        )
    if ring is None:
        ring = infer_ring(x)
    return _poch_inf_cached(x, m, order, ring.symbolic)


def poch_fin(
    x: SpecMonomial, n: int, m: int, order: int, ring: Optional[CoeffRing] = None
) -> QSeries:
    """The finite product of (1 - x*q^{m*i}) for 0 <= i < n."""
    if m < 1:
        raise ConstraintViolationError("base scale must be a positive integer")
    if n < 0:
        raise ConstraintViolationError("factor count must be nonnegative")
    if x.qexp < 0:
        raise NegativeOrderArgumentError(
            f"finite product needs ord(x) >= 0, got ord = {x.qexp}"
        )
    if ring is None:
        ring = infer_ring(x)
    result = QSeries.const(ring, 1, order)
    for i in range(n):
        if x.qexp + m * i > order:
            break
        result = result * one_minus(x.times_qpow(m * i), ring, order)
    return result


# ---------------------------------------------------------------------------
# bilateral sums
# ---------------------------------------------------------------------------


def theta_sum(
    z: SpecMonomial,
    m: int,
    order: int,
    ring: Optional[CoeffRing] = None,
    pad: int = 0,
) -> QSeries:
    """The alternating bilateral sum of z^n * q^{m(n^2-n)/2}."""
    if m < 1:
        raise ConstraintViolationError("base scale must be a positive integer")
    if ring is None:
        ring = infer_ring(z)
    e = z.qexp
    acc: dict = {}

    def expo(n):
        return m * (n * n - n) // 2 + n * e

    def add_term(n):
        ex = expo(n)
        if ex > order:
            return
        u = z.unit.pow(n)
        c = u.sign if n % 2 == 0 else -u.sign
        val = c if u.mono == MONO_ONE else LaurentPoly.monomial(u.mono, c)
        acc[ex] = acc.get(ex, 0) + val

    for direction in (1, -1):
        n = 0 if direction == 1 else -1
        extra = pad
        guard = 0
        while True:
            past_vertex = expo(n) >= expo(n - direction) and abs(n) > 0
            if expo(n) > order and past_vertex:
                if extra <= 0:
                    break
                extra -= 1
            add_term(n)
            n += direction
            guard += 1
            if guard > _LOOP_LIMIT:
                raise DivergentTailError("theta window failed to close")
    return _dict_to_series(acc, ring, order)


def phi_minus(m: int, order: int, ring: Optional[CoeffRing] = None) -> QSeries:
    """The bilateral sum of (-1)^n q^{m n^2}."""
    if m < 1:
        raise ConstraintViolationError("base scale must be a positive integer")
    if ring is None:
        ring = RATIONAL
    acc = {0: 1}
    n = 1
    while m * n * n <= order:
        acc[m * n * n] = 2 if n % 2 == 0 else -2
        n += 1
    return _dict_to_series(acc, ring, order)


def pf_sum(
    z: SpecMonomial,
    m: int,
    order: int,
    cleared: bool = True,
    ring: Optional[CoeffRing] = None,
    pad: int = 0,
) -> QSeries:
    """The partial-fraction bilateral sum over n of
    (-1)^n q^{m(n^2+n)/2} * (1-z) / (1 - z q^{mn}).

    With ``cleared`` (the identity-contract form) each term carries the
    factor (1-z) and the n = 0 term is the exact constant 1.  With
    ``cleared=False`` the bare sum of reciprocals is returned instead.
    """
    if m < 1:
        raise ConstraintViolationError("base scale must be a positive integer")
    if z.unit.symbolic:
        if z.qexp != 0:
            raise ConstraintViolationError(
                "symbolic partial-fraction argument needs ord(z) = 0"
            )
    elif z.qexp < 0:
        raise ConstraintViolationError(
            f"partial-fraction argument needs ord(z) >= 0, got {z.qexp}"
        )
    if ring is None:
        ring = infer_ring(z)
    e = z.qexp
    om = one_minus(z, ring, order) if cleared else None
    total = QSeries.zero(ring, order)

    def term(n: int) -> QSeries:
        base = m * (n * n + n) // 2
        if cleared and n == 0:
            return QSeries.const(ring, 1, order)
        r = recip_series(SpecMonomial(z.unit, e + m * n), 1, order - base, ring)
        if cleared:
            r = r * om
        if n % 2:
            r = -r
        return r.shifted(base)

    def min_order(n: int) -> int:
        base = m * (n * n + n) // 2
        g = e + m * n
        return base + (0 if g >= 0 else -g)

    for direction in (1, -1):
        n = 0 if direction == 1 else -1
        extra = pad
        guard = 0
        while True:
            if min_order(n) > order and (e + m * n) * direction > 0:
                if extra <= 0:
                    break
                extra -= 1
            total = total + term(n)
            n += direction
            guard += 1
            if guard > _LOOP_LIMIT:
                raise DivergentTailError("partial-fraction window failed to close")
    return total


def _check_f_args(a: SpecMonomial, m: int, name: str):
    if m < 1:
        raise ConstraintViolationError("base scale must be a positive integer")
    if not 0 < a.qexp < m:
        raise ConstraintViolationError(
            f"{name} needs 0 < ord < m, got ord = {a.qexp} with m = {m}"
        )


def _check_pole_guard(b: SpecMonomial, m: int, name: str):
    """An argument whose order is divisible by m must carry unit -1."""
    if b.qexp % m == 0:
        if b.unit.symbolic:
            raise SymbolicNonUnitError(
                f"{name} has a symbolic unit at an order divisible by {m}"
            )
        if b.unit.sign == 1:
            raise PoleError(f"{name} = {b} hits a pole of the sum")


def jordan_kronecker(
    a: SpecMonomial,
    b: SpecMonomial,
    m: int,
    order: int,
    ring: Optional[CoeffRing] = None,
    pad: int = 2,
) -> QSeries:
    """The bilateral sum of a^n / (1 - b q^{mn}).

    Requires 0 < ord(a) < m; ord(b) may be any integer whose pole guard
    holds (unit -1 whenever ord(b) is divisible by m).
    """
    _check_f_args(a, m, "first argument")
    _check_pole_guard(b, m, "second argument")
    if ring is None:
        ring = infer_ring(a, b)
    al, be = a.qexp, b.qexp
    total = QSeries.zero(ring, order)

    def min_order(n: int) -> int:
        g = be + m * n
        return al * n + (0 if g >= 0 else -g)

    for direction in (1, -1):
        n = 0 if direction == 1 else -1
        extra = pad
        guard = 0
        while True:
            if min_order(n) > order and (be + m * n) * direction > 0:
                if extra <= 0:
                    break
                extra -= 1
            r = recip_series(SpecMonomial(b.unit, be + m * n), 1, order - al * n, ring)
            total = total + times_spec_monomial(r, a.pow(n))
            n += direction
            guard += 1
            if guard > _LOOP_LIMIT:
                raise DivergentTailError("bilateral window failed to close")
    return total


def jk_partial_a(
    a: SpecMonomial,
    b: SpecMonomial,
    m: int,
    order: int,
    ring: Optional[CoeffRing] = None,
    pad: int = 2,
) -> QSeries:
    """The bilateral sum of b^n q^{mn} / (1 - a q^{mn})^2."""
    _check_f_args(a, m, "first argument")
    _check_f_args(b, m, "second argument")
    if ring is None:
        ring = infer_ring(a, b)
    al, be = a.qexp, b.qexp
    total = QSeries.zero(ring, order)

    def min_order(n: int) -> int:
        g = al + m * n
        return (be + m) * n + (0 if g >= 0 else -2 * g)

    for direction in (1, -1):
        n = 0 if direction == 1 else -1
        extra = pad
        guard = 0
        while True:
            if min_order(n) > order and (al + m * n) * direction > 0:
                if extra <= 0:
                    break
                extra -= 1
            shift = (be + m) * n
            r = recip_series(SpecMonomial(a.unit, al + m * n), 2, order - shift, ring)
            total = total + times_spec_monomial(r, SpecMonomial(b.unit.pow(n), shift))
            n += direction
            guard += 1
            if guard > _LOOP_LIMIT:
                raise DivergentTailError("bilateral window failed to close")
    return total


def n_weighted_sum(
    a: SpecMonomial,
    x: SpecMonomial,
    m: int,
    order: int,
    ring: Optional[CoeffRing] = None,
    pad: int = 2,
) -> QSeries:
    """The bilateral sum of n * a^n / (1 - x q^{mn})."""
    _check_f_args(a, m, "first argument")
    if x.qexp <= 0:
        raise ConstraintViolationError(
            f"second argument needs positive order, got {x.qexp}"
        )
    _check_pole_guard(x, m, "second argument")
    if ring is None:
        ring = infer_ring(a, x)
    al, xi = a.qexp, x.qexp
    total = QSeries.zero(ring, order)

    def min_order(n: int) -> int:
        g = xi + m * n
        return al * n + (0 if g >= 0 else -g)

    for direction in (1, -1):
        n = direction
        extra = pad
        guard = 0
        while True:
            if min_order(n) > order and (xi + m * n) * direction > 0:
                if extra <= 0:
                    break
                extra -= 1
            r = recip_series(SpecMonomial(x.unit, xi + m * n), 1, order - al * n, ring)
            total = total + times_spec_monomial(r, a.pow(n), weight=n)
            n += direction
            guard += 1
            if guard > _LOOP_LIMIT:
                raise DivergentTailError("bilateral window failed to close")
    return total


def generalized_lambert(
    M: SpecMonomial,
    x: SpecMonomial,
    s: int,
    W: AffineWeight,
    r0: int,
    m: int,
    order: int,
    ring: Optional[CoeffRing] = None,
    pad: int = 2,
) -> QSeries:
    """The one-sided Lambert sum of W(r) * M^r * x q^{mr} / (1 - x q^{mr})^s
    over r >= r0."""
    if m < 1:
        raise ConstraintViolationError("base scale must be a positive integer")
    if r0 not in (0, 1):
        raise ConstraintViolationError("lower summation index must be 0 or 1")
    mu, xi = M.qexp, x.qexp
    if mu + m <= 0:
        raise DivergentTailError(
            f"term order slope ord(M) + m = {mu + m} is not positive"
        )
    # a pole inside the summation range is an error unless its weight vanishes
    if xi % m == 0:
        rstar = -xi // m
        if rstar >= r0 and W(rstar) != 0:
            v = SpecMonomial(x.unit, 0)
            if x.unit.symbolic:
                raise SymbolicNonUnitError(
                    f"Lambert term at r = {rstar} has unit argument {v}"
                )
            if x.unit.sign == 1:
                raise PoleError(f"Lambert term at r = {rstar} hits the pole at 1")
    if ring is None:
        ring = infer_ring(M, x)
    total = QSeries.zero(ring, order)

    def min_order(r: int) -> int:
        g = xi + m * r
        if g > 0:
            t = g
        elif g == 0:
            t = 0
        else:
            t = 0 if s == 1 else -g
        return mu * r + t

    r = r0
    extra = pad
    guard = 0
    while True:
        if min_order(r) > order and xi + m * r > 0:
            if extra <= 0:
                break
            extra -= 1
        w = W(r)
        if w != 0:
            t = term_series(SpecMonomial(x.unit, xi + m * r), s, order - mu * r, ring)
            total = total + times_spec_monomial(t, M.pow(r), weight=w)
        r += 1
        guard += 1
        if guard > _LOOP_LIMIT:
            raise DivergentTailError("Lambert tail failed to close")
    return total


def l_func(
    b: SpecMonomial,
    m: int,
    order: int,
    ring: Optional[CoeffRing] = None,
    pad: int = 2,
) -> QSeries:
    """l(b): the difference of the two one-sided Lambert sums of b and 1/b."""
    if b.qexp <= 0:
        raise ConstraintViolationError(
            f"Lambert difference needs positive order, got {b.qexp}"
        )
    _check_pole_guard(b, m, "argument")
    if ring is None:
        ring = infer_ring(b)
    pos = generalized_lambert(SpecMonomial.one(), b, 1, W_ONE, 0, m, order, ring, pad)
    neg = generalized_lambert(
        SpecMonomial.one(), b.inv(), 1, W_ONE, 1, m, order, ring, pad
    )
    return pos - neg


def char_lambert(
    table: Sequence[int], s: int, order: int, ring: Optional[CoeffRing] = None
) -> QSeries:
    """The Lambert sum of table[r mod k] * q^r / (1 - q^r)^s over r >= 1."""
    k = len(table)
    if k < 1:
        raise ConstraintViolationError("character table must be non-empty")
    if any(v not in (-1, 0, 1) for v in table):
        raise ConstraintViolationError("character table entries must be -1, 0 or +1")
    if ring is None:
        ring = RATIONAL
    total = QSeries.zero(ring, order)
    for j in range(1, k + 1):
        chi = table[j % k]
        if chi == 0:
            continue
        g = generalized_lambert(
            SpecMonomial.one(),
            SpecMonomial.signed(1, j),
            s,
            W_ONE,
            0,
            k,
            order,
            ring,
        )
        total = total + (g if chi == 1 else -g)
    return total


def jk_product_form(
    a: SpecMonomial,
    b: SpecMonomial,
    m: int,
    order: int,
    ring: Optional[CoeffRing] = None,
) -> QSeries:
    """The product representation of the bilateral f-sum, computed by series
    division: (q)^2 (ab) (1/(ab) q) / ((a)(q/a)(b)(q/b)), all in base q^m."""
    _check_f_args(a, m, "first argument")
    _check_f_args(b, m, "second argument")
    ab = a.mul(b)
    if ab.qexp > m:
        raise ConstraintViolationError(
            f"needs ord(a) + ord(b) <= m, got {ab.qexp} with m = {m}"
        )
    if ab.qexp == m and ab.unit.is_plus_one():
        raise ConstraintViolationError(
            "ord(a) + ord(b) = m with unit(ab) = +1 makes the numerator vanish"
        )
    if ring is None:
        ring = infer_ring(a, b)
    qm = SpecMonomial.signed(1, m)
    num = (
        poch_inf(qm, m, order, ring) ** 2
        * poch_inf(ab, m, order, ring)
        * poch_inf(ab.inv().times_qpow(m), m, order, ring)
    )
    den = (
        poch_inf(a, m, order, ring)
        * poch_inf(a.inv().times_qpow(m), m, order, ring)
        * poch_inf(b, m, order, ring)
        * poch_inf(b.inv().times_qpow(m), m, order, ring)
    )
    return num * den.inv()
