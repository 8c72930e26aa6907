"""Truncated Laurent series in q with an explicit knowledge window.

A QSeries stores exact coefficients for every exponent in [offset, order]
(both inclusive).  Exponents below the offset are exactly zero; exponents
above the order are unknown.  ``offset <= order + 1`` always holds, with the
empty window encoding the zero series known through ``order``.

Coefficients live in one of two rings (see ``exactalg``): plain rationals,
or Laurent polynomials in the four unit symbols.  In both cases scalar
entries are stored as int/Fraction; symbolic entries as LaurentPoly.

Multiplication uses exact big-integer packing: each coefficient array is
scaled to a common denominator, packed into one large integer with fixed-
width signed digits, and multiplied once.  This keeps full products of
order a few hundred comfortably fast in pure Python.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import (
    NonUnitLeadingError,
    OrderExceededError,
    RingMismatchError,
)
from .exactalg import (
    MONO_ONE,
    LaurentPoly,
    mono_inv,
    mono_mul,
    normalize_scalar,
)


class CoeffRing:
    """Tag object naming the coefficient ring of a series."""

    __slots__ = ("name", "symbolic")

    def __init__(self, name: str, symbolic: bool):
        self.name = name
        self.symbolic = symbolic

    def __repr__(self):
        return f"<ring {self.name}>"

    def coerce(self, c):
        if isinstance(c, LaurentPoly):
            if not self.symbolic:
                raise RingMismatchError(
                    "symbolic coefficient in a rational-ring series"
                )
            cv = c.constant_value()
            return c if cv is None else cv
        if isinstance(c, (int, Fraction)):
            return normalize_scalar(c)
        raise TypeError(f"unsupported coefficient type: {type(c).__name__}")

    def inv_coeff(self, c):
        """Invert a coefficient; NonUnitLeadingError if it is not a unit."""
        if isinstance(c, LaurentPoly):
            if not self.symbolic:
                raise RingMismatchError("symbolic coefficient in rational ring")
            u = c.as_unit()
            if u is None:
                raise NonUnitLeadingError(
                    f"leading coefficient is not a single-term unit: {c}"
                )
            mono, cc = u
            return LaurentPoly.monomial(mono_inv(mono), Fraction(1, 1) / cc)
        if c == 0:
            raise NonUnitLeadingError("leading coefficient is zero")
        return normalize_scalar(Fraction(1, 1) / Fraction(c))


RATIONAL = CoeffRing("rational", symbolic=False)
SYMBOLIC = CoeffRing("symbolic", symbolic=True)


def _check_same_ring(x: "QSeries", y: "QSeries"):
    if x.ring is not y.ring:
        raise RingMismatchError(
            f"cannot combine series over {x.ring.name} and {y.ring.name}"
        )


# ---------------------------------------------------------------------------
# packed exact convolution
# ---------------------------------------------------------------------------


def _pack(arr: List[int], width: int) -> int:
    v = 0
    shift = 0
    for a in arr:
        if a:
            v += a << shift
        shift += width
    return v


def _unpack(v: int, count: int, width: int) -> List[int]:
    mask = (1 << width) - 1
    half = 1 << (width - 1)
    out = []
    for _ in range(count):
        d = v & mask
        if d >= half:
            d -= 1 << width
        v = (v - d) >> width
        out.append(d)
    return out


def _parts_of(qs: "QSeries") -> Tuple[int, dict]:
    """Split a coefficient window into {monomial: scaled int array}.

    Returns (den, parts) where every stored value times 1/den is exact.
    Rational-mode series always land in the single key MONO_ONE.
    """
    n = len(qs.coeffs)
    den = 1
    for c in qs.coeffs:
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
        elif isinstance(c, LaurentPoly):
            for cc in c.terms.values():
                if isinstance(cc, Fraction):
                    den = den * cc.denominator // math.gcd(den, cc.denominator)
    parts: dict = {}
    for i, c in enumerate(qs.coeffs):
        if not c:
            continue
        if isinstance(c, LaurentPoly):
            for mono, cc in c.terms.items():
                row = parts.get(mono)
                if row is None:
                    row = parts[mono] = [0] * n
                row[i] = cc * den if den > 1 else cc
        else:
            row = parts.get(MONO_ONE)
            if row is None:
                row = parts[MONO_ONE] = [0] * n
            row[i] = c * den if den > 1 else c
    if den > 1:
        for row in parts.values():
            for i, v in enumerate(row):
                if v and not isinstance(v, int):
                    row[i] = int(v)
    return den, parts


def _mul_windows(x: "QSeries", y: "QSeries", out_len: int):
    """Multiply two coefficient windows, returning (den, cols) where cols is
    a list of {monomial: int} dicts of length out_len."""
    dx, px = _parts_of(x)
    dy, py = _parts_of(y)
    den = dx * dy
    cols: List[dict] = [dict() for _ in range(out_len)]
    if not px or not py:
        return den, cols
    ax = max(max(abs(v) for v in row) for row in px.values())
    ay = max(max(abs(v) for v in row) for row in py.values())
    if ax == 0 or ay == 0:
        return den, cols
    lmin = min(len(x.coeffs), len(y.coeffs))
    pairs_per_key = min(len(px), len(py))
    width = (lmin * ax * ay * pairs_per_key).bit_length() + 2
    if width < 3:
        width = 3
    packed_x = {m: _pack(row, width) for m, row in px.items()}
    packed_y = {m: _pack(row, width) for m, row in py.items()}
    acc: dict = {}
    for m1, v1 in packed_x.items():
        for m2, v2 in packed_y.items():
            key = mono_mul(m1, m2)
            prod = v1 * v2
            if key in acc:
                acc[key] += prod
            else:
                acc[key] = prod
    for key, v in acc.items():
        row = _unpack(v, out_len, width)
        for i, d in enumerate(row):
            if d:
                cols[i][key] = cols[i].get(key, 0) + d
    return den, cols


def _col_to_coeff(col: dict, den: int, symbolic: bool):
    if not col:
        return 0
    if den == 1:
        if len(col) == 1 and MONO_ONE in col:
            return col[MONO_ONE]
        return LaurentPoly._raw(dict(col))
    if len(col) == 1 and MONO_ONE in col:
        return normalize_scalar(Fraction(col[MONO_ONE], den))
    terms = {}
    for mono, v in col.items():
        c = normalize_scalar(Fraction(v, den))
        if c != 0:
            terms[mono] = c
    return LaurentPoly._raw(terms)


# ---------------------------------------------------------------------------
# the series type
# ---------------------------------------------------------------------------


class QSeries:
    """Truncated Laurent series over a tagged coefficient ring."""

    __slots__ = ("ring", "offset", "coeffs", "order")

    def __init__(self, ring: CoeffRing, offset: int, coeffs: list, order: int):
        # Internal constructor: prefer the make/zero/const/monomial helpers.
        self.ring = ring
        self.offset = offset
        self.coeffs = coeffs
        self.order = order

    @classmethod
    def make(cls, ring: CoeffRing, offset: int, coeffs: list, order: int) -> "QSeries":
        """Canonical constructor: validates the window, trims leading zeros."""
        if len(coeffs) != order - offset + 1:
            raise ValueError(
                f"window [{offset},{order}] needs {order - offset + 1} "
                f"coefficients, got {len(coeffs)}"
            )
        coeffs = [ring.coerce(c) for c in coeffs]
        k = 0
        while k < len(coeffs) and not coeffs[k]:
            k += 1
        if k:
            coeffs = coeffs[k:]
            offset += k
        return cls(ring, offset, coeffs, order)

    @classmethod
    def zero(cls, ring: CoeffRing, order: int) -> "QSeries":
        return cls(ring, order + 1, [], order)

    @classmethod
    def const(cls, ring: CoeffRing, c, order: int) -> "QSeries":
        if order < 0:
            return cls.zero(ring, order)
        return cls.make(ring, 0, [c] + [0] * order, order)

    @classmethod
    def monomial(cls, ring: CoeffRing, c, exp: int, order: int) -> "QSeries":
        if exp > order:
            return cls.zero(ring, order)
        return cls.make(ring, exp, [c] + [0] * (order - exp), order)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, n: int):
        """The exact coefficient of q^n; OrderExceededError above the order."""
        if n > self.order:
            raise OrderExceededError(
                f"coefficient of q^{n} requested but series is only known "
                f"through q^{self.order}"
            )
        if n < self.offset:
            return 0
        return self.coeffs[n - self.offset]

    def _get(self, n: int):
        if n < self.offset or n > self.order:
            return 0
        return self.coeffs[n - self.offset]

    def nonzero_items(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.offset + i, c

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        _check_same_ring(self, other)
        order = min(self.order, other.order)
        lo = min(self.offset, other.offset)
        if lo > order:
            return QSeries.zero(self.ring, order)
        out = [0] * (order - lo + 1)
        for src in (self, other):
            for i, c in enumerate(src.coeffs):
                e = src.offset + i
                if e > order:
                    break
                if c:
                    prev = out[e - lo]
                    out[e - lo] = c if prev == 0 else prev + c
        return QSeries.make(self.ring, lo, out, order)

    def __neg__(self):
        return QSeries(self.ring, self.offset, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        _check_same_ring(self, other)
        if not self.coeffs or not other.coeffs:
            if not self.coeffs:
                order = self.order + other.offset
            else:
                order = other.order + self.offset
            return QSeries.zero(self.ring, order)
        out_offset = self.offset + other.offset
        order = min(self.order + other.offset, other.order + self.offset)
        out_len = order - out_offset + 1
        nnz_self = sum(1 for c in self.coeffs if c)
        nnz_other = sum(1 for c in other.coeffs if c)
        if min(nnz_self, nnz_other) <= 2:
            sp, dn = (self, other) if nnz_self <= nnz_other else (other, self)
            out = [0] * out_len
            for i, ci in enumerate(sp.coeffs):
                if not ci:
                    continue
                top = min(len(dn.coeffs), out_len - i)
                for j in range(top):
                    cj = dn.coeffs[j]
                    if cj:
                        prev = out[i + j]
                        t = ci * cj
                        out[i + j] = t if isinstance(prev, int) and prev == 0 else prev + t
            return QSeries.make(self.ring, out_offset, out, order)
        den, cols = _mul_windows(self, other, out_len)
        symbolic = self.ring.symbolic
        coeffs = [_col_to_coeff(col, den, symbolic) for col in cols]
        return QSeries.make(self.ring, out_offset, coeffs, order)

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply every coefficient by a scalar or unit polynomial."""
        c = self.ring.coerce(c)
        if c == 0:
            return QSeries.zero(self.ring, self.order)
        if c == 1:
            return self
        return QSeries.make(
            self.ring, self.offset, [c * cc for cc in self.coeffs], self.order
        )

    def shifted(self, k: int) -> "QSeries":
        """Multiply by q^k (shift the window by k)."""
        return QSeries(self.ring, self.offset + k, self.coeffs, self.order + k)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result = QSeries.const(self.ring, 1, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inv(self) -> "QSeries":
        """Multiplicative inverse; requires an invertible lowest coefficient."""
        if not self.coeffs:
            raise NonUnitLeadingError("cannot invert the zero series")
        o = self.offset
        rel = self.coeffs
        u = self.ring.inv_coeff(rel[0])
        n = len(rel)
        b = [u]
        for k in range(1, n):
            acc = 0
            for i in range(1, k + 1):
                ri = rel[i]
                if ri:
                    bi = b[k - i]
                    if bi:
                        acc = acc + ri * bi
            if isinstance(acc, (int, Fraction)) and acc == 0:
                b.append(0)
            else:
                c = -acc if u == 1 else -(u * acc)
                b.append(c if isinstance(c, LaurentPoly) else normalize_scalar(c))
        return QSeries.make(self.ring, -o, b, self.order - 2 * o)

    # -- comparison ---------------------------------------------------------

    def eq_upto(self, other: "QSeries", k: int):
        """Compare coefficients for all exponents <= k.

        Returns (True, None) or (False, (exponent, own, other)) for the first
        mismatching exponent.  OrderExceededError if k exceeds either order.
        """
        _check_same_ring(self, other)
        if k > self.order or k > other.order:
            raise OrderExceededError(
                f"comparison up to q^{k} exceeds known orders "
                f"({self.order}, {other.order})"
            )
        lo = min(self.offset, other.offset)
        for e in range(lo, k + 1):
            a = self._get(e)
            b = other._get(e)
            if a != b:
                return False, (e, a, b)
        return True, None

    def truncate(self, k: int) -> "QSeries":
        """Forget all coefficients above q^k."""
        if k >= self.order:
            return self
        if k < self.offset:
            return QSeries.zero(self.ring, k)
        return QSeries(self.ring, self.offset, self.coeffs[: k - self.offset + 1], k)

    # -- symbolic-coefficient helpers ----------------------------------------

    def euler(self, var: int) -> "QSeries":
        """Apply the Euler operator of one unit symbol to every coefficient."""
        out = []
        for c in self.coeffs:
            if isinstance(c, LaurentPoly):
                out.append(c.euler(var))
            else:
                out.append(0)
        return QSeries.make(self.ring, self.offset, out, self.order)

    def subst_unit(self, var: int, sign: int) -> "QSeries":
        """Substitute one unit symbol by +-1 in every coefficient."""
        out = []
        for c in self.coeffs:
            if isinstance(c, LaurentPoly):
                out.append(c.subst_unit(var, sign))
            else:
                out.append(c)
        return QSeries.make(self.ring, self.offset, out, self.order)

    def to_rational(self) -> "QSeries":
        """Reinterpret a symbolic series with constant coefficients."""
        out = []
        for c in self.coeffs:
            if isinstance(c, LaurentPoly):
                cv = c.constant_value()
                if cv is None:
                    raise RingMismatchError(
                        "series has genuinely symbolic coefficients"
                    )
                out.append(cv)
            else:
                out.append(c)
        return QSeries.make(RATIONAL, self.offset, out, self.order)

    # -- presentation ---------------------------------------------------------

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"QSeries[{self.ring.name}, window {self.offset}..{self.order}]({self})"


def format_coeff(c) -> Tuple[str, bool]:
    """Render one coefficient; returns (body-without-sign, is_negative)."""
    if isinstance(c, LaurentPoly):
        cv = c.constant_value()
        if cv is None:
            return "(" + str(c) + ")", False
        c = cv
    if c < 0:
        return str(-c), True
    return str(c), False


def format_series(qs: QSeries) -> str:
    tail = f"O(q^{qs.order + 1})"
    parts: List[str] = []
    for e, c in qs.nonzero_items():
        body, neg = format_coeff(c)
        if e == 0:
            term = body
        else:
            qpart = "q" if e == 1 else f"q^{e}"
            term = qpart if body == "1" else f"{body}*{qpart}"
        if not parts:
            parts.append("-" + term if neg else term)
        else:
            parts.append(("- " if neg else "+ ") + term)
    if not parts:
        return "0 + " + tail
    return " ".join(parts) + " + " + tail
