"""Truncated Laurent expansion in u around u = 0.

A USeries holds exact coefficients of u^-1, u^0, ..., u^order for a
function of X1 = exp(u/(2n)) and Y1 = exp(v); coefficients are RatFunc
values in Y1 only.  At most a simple pole at u = 0 is representable;
anything worse raises PoleOrderError.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .scalars import LaurentPoly, PoleOrderError, RatFunc, rf


class USeries:
    """Coefficients of u^-1 .. u^order, each a RatFunc in Y1."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        if order < 0:
            raise ValueError("series order must be >= 0")
        coeffs = [rf(c) for c in coeffs]
        if len(coeffs) != order + 2:
            raise ValueError("need exactly order + 2 coefficients (from u^-1)")
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, order):
        return cls(order, [RatFunc.zero()] * (order + 2))

    def coeff(self, k):
        """Coefficient of u^k, for -1 <= k <= order."""
        if k < -1 or k > self.order:
            raise IndexError(f"u^{k} not tracked at order {self.order}")
        return self.coeffs[k + 1]

    def has_pole(self):
        return bool(self.coeffs[0])

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return USeries(order, self.coeffs[: order + 2])

    def __eq__(self, other):
        if not isinstance(other, USeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def __add__(self, other):
        order = min(self.order, other.order)
        return USeries(
            order,
            [self.coeff(k) + other.coeff(k) for k in range(-1, order + 1)],
        )

    def __sub__(self, other):
        order = min(self.order, other.order)
        return USeries(
            order,
            [self.coeff(k) - other.coeff(k) for k in range(-1, order + 1)],
        )

    def __mul__(self, other):
        p1, p2 = self.has_pole(), other.has_pole()
        if p1 and p2:
            raise PoleOrderError("product of two simple poles leaves the model")
        order = min(self.order - (1 if p2 else 0), other.order - (1 if p1 else 0))
        if order < 0:
            raise ValueError("truncation orders too small for a product")
        out = []
        for m in range(-1, order + 1):
            total = RatFunc.zero()
            for i in range(-1, self.order + 1):
                j = m - i
                if -1 <= j <= other.order:
                    total = total + self.coeff(i) * other.coeff(j)
            out.append(total)
        return USeries(order, out)

    def __str__(self):
        parts = [f"u^{k}: {self.coeff(k)}" for k in range(-1, self.order + 1)]
        return "; ".join(parts)

    __repr__ = __str__


def _exp_series(poly, n, upto):
    """u-series of poly(X1 -> exp(u/(2n))), coefficients LaurentPoly in Y1.

    Terms must not involve X2 or Y2.
    """
    inv_fact = [Fraction(1, factorial(k)) for k in range(upto + 1)]
    out = [LaurentPoly.zero() for _ in range(upto + 1)]
    for exps, c in poly.terms.items():
        if exps[1] or exps[3]:
            raise ValueError("expansion requires a function of X1 and Y1 only")
        rate = Fraction(exps[0], 2 * n) if exps[0] else Fraction(0)
        ymono = LaurentPoly.monomial((0, 0, exps[2], 0), c)
        power = Fraction(1)
        for k in range(upto + 1):
            if k:
                power *= rate
                if not power:
                    break
            out[k] = out[k] + ymono.scale(power * inv_fact[k])
    return out


def expand_in_u(f, n, order):
    """Expand a RatFunc of X1, Y1 as a Laurent series in u at u = 0.

    Substitutes X1 = exp(u/(2n)) and returns the exact coefficients of
    u^-1 .. u^order as rational functions in Y1.  Raises PoleOrderError
    when f has a pole of order > 1 at u = 0 (i.e. at X1 = 1).
    """
    f = rf(f)
    if f.is_zero():
        return USeries.zero(order)
    # A nonzero combination sum_a c_a(Y1) exp(a*u/(2n)) with t distinct
    # rates vanishes at u = 0 to order at most t - 1 (Vandermonde), which
    # bounds how far we must look for the leading coefficient.
    t_num = len(f.num.exponents_of(0))
    t_den = len(f.den.exponents_of(0))
    upto = order + max(t_num, t_den) + 1
    nser = _exp_series(f.num, n, upto)
    dser = _exp_series(f.den, n, upto)
    ord_d = next(k for k, c in enumerate(dser) if c)
    ord_n = next(k for k, c in enumerate(nser) if c)
    pole = ord_d - ord_n
    if pole > 1:
        raise PoleOrderError(f"pole of order {pole} at u = 0")
    # f = u^(-pole) * (N~ / D~) with regular series N~, D~
    top = order + 1  # highest needed index in the regular quotient
    nreg = [rf(nser[ord_n + i]) if ord_n + i <= upto else RatFunc.zero()
            for i in range(top + 1)]
    dreg = [rf(dser[ord_d + i]) if ord_d + i <= upto else RatFunc.zero()
            for i in range(top + 1)]
    inv0 = dreg[0].inverse()
    inv = [inv0]
    for i in range(1, top + 1):
        acc = RatFunc.zero()
        for j in range(1, i + 1):
            acc = acc + dreg[j] * inv[i - j]
        inv.append(-(acc * inv0))
    quot = []
    for m in range(top + 1):
        acc = RatFunc.zero()
        for i in range(m + 1):
            acc = acc + nreg[i] * inv[m - i]
        quot.append(acc)
    coeffs = []
    for m in range(-1, order + 1):
        idx = m + pole
        coeffs.append(quot[idx] if 0 <= idx <= top else RatFunc.zero())
    return USeries(order, coeffs)
