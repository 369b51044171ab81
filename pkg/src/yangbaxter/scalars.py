"""Exact scalar arithmetic for the symbolic tensor engine.

All symbolic coefficients live in one Laurent ring in four formal
exponentials,

    X1 = exp(u/(2n)),   X2 = exp(u'/(2n)),   Y1 = exp(v),   Y2 = exp(v'),

with exact rational exponents and exact rational coefficients:

    LaurentPoly = sparse map {exponent 4-tuple: Fraction}
    RatFunc     = quotient of two LaurentPolys, denominator nonzero

Rational-function equality and zero tests are decided by cross
multiplication of expanded numerators, never by floating point and never
by gcd canonicalization.  Exponents may be arbitrary exact rationals
(stored as int whenever integral), which is a superset of every finite
lattice (1/(2nL))*Z the matrix builders draw from, so substitutions and
gauge factors never require re-registering a lattice.

Values are immutable after construction and safe to share between
workers; every operation returns a fresh value.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

NVARS = 4
VAR_NAMES = ("X1", "X2", "Y1", "Y2")
VAR_INDEX = {name: i for i, name in enumerate(VAR_NAMES)}

_ZERO_EXPS = (0, 0, 0, 0)


class LatticeError(ValueError):
    """A substitution cannot be carried out exactly in the exponent lattice."""


class PoleOrderError(ValueError):
    """A series expansion met a pole of order > 1 at u = 0."""


def _norm(e):
    """Store integral exponents as int (canonical, faster to hash)."""
    if isinstance(e, Fraction) and e.denominator == 1:
        return e.numerator
    return e


class LaurentPoly:
    """Sparse Laurent polynomial in X1, X2, Y1, Y2 over Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for exps, c in terms.items():
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c:
                    self.terms[tuple(_norm(e) for e in exps)] = c

    @classmethod
    def _make(cls, terms):
        # internal: terms already normalized and zero-free
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def zero(cls):
        return cls._make({})

    @classmethod
    def const(cls, c):
        c = c if isinstance(c, Fraction) else Fraction(c)
        return cls._make({_ZERO_EXPS: c} if c else {})

    @classmethod
    def monomial(cls, exps, coeff=1):
        return cls({tuple(exps): coeff})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == LaurentPoly.const(other).terms
        return NotImplemented

    __hash__ = None

    def __neg__(self):
        return LaurentPoly._make({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        big, small = self.terms, other.terms
        if len(big) < len(small):
            big, small = small, big
        out = dict(big)
        for e, c in small.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly._make(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                key = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3])
                cur = out.get(key)
                cur = ca * cb if cur is None else cur + ca * cb
                if cur:
                    out[key] = cur
                elif key in out:
                    del out[key]
        return LaurentPoly._make(out)

    __rmul__ = __mul__

    def scale(self, c):
        c = c if isinstance(c, Fraction) else Fraction(c)
        if not c:
            return LaurentPoly.zero()
        return LaurentPoly._make({e: c * v for e, v in self.terms.items()})

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("LaurentPoly powers must be nonnegative integers")
        out = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def shift(self, exps):
        """Multiply by the monomial with the given exponent vector."""
        e0, e1, e2, e3 = exps
        return LaurentPoly._make(
            {(a + e0, b + e1, c + e2, d + e3): v for (a, b, c, d), v in self.terms.items()}
        )

    def substitute(self, mapping):
        """Simultaneously substitute monomials (or zero) for variables.

        mapping: {var index: None | (Fraction coeff, exponent 4-tuple)}.
        None sets the variable to zero.  Raises LatticeError when the
        substitution is not exact: zero into a negative power, or a
        coefficient != 1 raised to a fractional exponent.
        """
        out = {}
        for exps, c in self.terms.items():
            coeff = c
            new = list(exps)
            for var in mapping:
                new[var] = 0
            dead = False
            for var, target in mapping.items():
                e = exps[var]
                if not e:
                    continue
                if target is None:
                    if e > 0:
                        dead = True
                        break
                    raise LatticeError(
                        "negative power of a symbol substituted by zero"
                    )
                tc, texps = target
                if tc != 1:
                    if isinstance(e, int):
                        coeff = coeff * tc**e
                    else:
                        raise LatticeError(
                            "non-unit coefficient substituted into a fractional exponent"
                        )
                for w in range(NVARS):
                    te = texps[w]
                    if te:
                        new[w] = _norm(new[w] + te * e)
            if dead:
                continue
            key = tuple(new)
            cur = out.get(key)
            cur = coeff if cur is None else cur + coeff
            if cur:
                out[key] = cur
            elif key in out:
                del out[key]
        return LaurentPoly._make(out)

    def evaluate(self, logs):
        """Numeric value with variable i set to exp(logs[i])."""
        total = 0j
        for exps, c in self.terms.items():
            z = 0j
            for e, lg in zip(exps, logs):
                if e:
                    z += float(e) * lg
            total += float(c) * cmath.exp(z)
        return total

    def exponents_of(self, var):
        return {e[var] for e in self.terms}

    def uses_var(self, var):
        return any(e[var] for e in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=lambda e: tuple(Fraction(x) for x in e)):
            c = self.terms[exps]
            factors = []
            for name, e in zip(VAR_NAMES, exps):
                if e == 0:
                    continue
                if e == 1:
                    factors.append(name)
                elif isinstance(e, int):
                    factors.append(f"{name}^{e}")
                else:
                    factors.append(f"{name}^({e})")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly({self})"


_ONE_POLY = LaurentPoly.const(1)


class RatFunc:
    """Quotient of LaurentPolys with nonzero denominator.

    The representation is not canonical; equality and zero tests go
    through cross multiplication, which is exact.  Light normalization is
    applied on construction: common monomial content is cancelled,
    monomial denominators are absorbed into the numerator (this is a
    Laurent ring), and the denominator is made monic.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, (int, Fraction)):
            num = LaurentPoly.const(num)
        if den is None:
            den = _ONE_POLY
        elif isinstance(den, (int, Fraction)):
            den = LaurentPoly.const(den)
        if not den.terms:
            raise ZeroDivisionError("RatFunc with zero denominator")
        if not num.terms:
            self.num = num
            self.den = _ONE_POLY
            return
        # cancel common monomial content of num and den
        mins = None
        for e in num.terms:
            mins = e if mins is None else tuple(map(min, mins, e))
        for e in den.terms:
            mins = tuple(map(min, mins, e))
        if any(mins):
            neg = tuple(-m for m in mins)
            num = num.shift(neg)
            den = den.shift(neg)
        # absorb a monomial denominator entirely
        if len(den.terms) == 1:
            ((exps, c),) = den.terms.items()
            num = num.shift(tuple(-e for e in exps)).scale(1 / c)
            den = _ONE_POLY
        else:
            lead = max(den.terms, key=lambda e: tuple(Fraction(x) for x in e))
            c = den.terms[lead]
            if c != 1:
                num = num.scale(1 / c)
                den = den.scale(1 / c)
            if num.terms == den.terms:
                num, den = _ONE_POLY, _ONE_POLY
        self.num = num
        self.den = den

    @classmethod
    def zero(cls):
        return cls(LaurentPoly.zero())

    def is_zero(self):
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.den.terms == other.den.terms:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out.num = -self.num
        out.den = self.den
        return out

    def __add__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.den.terms == other.den.terms:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc.zero()
            out = RatFunc.__new__(RatFunc)
            out.num = self.num.scale(other)
            out.den = self.den
            return out
        if isinstance(other, LaurentPoly):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFunc(other) * self.inverse()

    def inverse(self):
        if not self.num.terms:
            raise ZeroDivisionError("inverting the zero rational function")
        return RatFunc(self.den, self.num)

    def __pow__(self, k):
        if not isinstance(k, int):
            raise ValueError("RatFunc powers must be integers")
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k)

    def substitute(self, assignment):
        """Exact substitution of monomials (or zero) for named symbols.

        assignment: {"X1": RatFunc, ...}; each value must be zero or a
        single monomial with rational coefficient.  Raises LatticeError
        for non-monomial values or when the substituted denominator
        vanishes.
        """
        mapping = {}
        for name, value in assignment.items():
            var = VAR_INDEX[name]
            if isinstance(value, (int, Fraction)):
                value = RatFunc(value)
            if value.den != _ONE_POLY or len(value.num.terms) > 1:
                raise LatticeError(
                    f"substitution for {name} must be a monomial or zero"
                )
            if not value.num.terms:
                mapping[var] = None
            else:
                ((exps, c),) = value.num.terms.items()
                mapping[var] = (c, exps)
        den = self.den.substitute(mapping)
        if not den.terms:
            raise LatticeError("substitution annihilates a denominator")
        return RatFunc(self.num.substitute(mapping), den)

    def evaluate(self, logs):
        """Numeric value with variable i set to exp(logs[i])."""
        return self.num.evaluate(logs) / self.den.evaluate(logs)

    def __str__(self):
        if self.den == _ONE_POLY:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


def rf(value):
    """Coerce a number or polynomial to RatFunc."""
    if isinstance(value, RatFunc):
        return value
    return RatFunc(value)


def monomial_rf(x1=0, x2=0, y1=0, y2=0, coeff=1):
    return RatFunc(LaurentPoly.monomial((x1, x2, y1, y2), coeff))


X1 = monomial_rf(x1=1)
X2 = monomial_rf(x2=1)
Y1 = monomial_rf(y1=1)
Y2 = monomial_rf(y2=1)
ONE = rf(1)
ZERO = RatFunc.zero()


def q_power(n, exponent):
    """q**exponent as a monomial in X1, where q = exp(u/2) = X1**n."""
    e = Fraction(exponent)
    return monomial_rf(x1=_norm(n * e))


def ratfunc_is_zero(f):
    """True iff f is identically zero (exact, by expanded numerator)."""
    return rf(f).is_zero()


def substitute(f, assignment):
    """Exact substitution of monomials for symbols; see RatFunc.substitute."""
    return rf(f).substitute(assignment)


def log_point(u, uprime, v, vprime, n):
    """Per-variable logarithms for numeric evaluation at a sample point.

    X1, X2 are 2n-th roots in u, u', so their logs are u/(2n), u'/(2n);
    evaluating monomials through these logs keeps fractional powers
    single-valued.
    """
    return (u / (2 * n), uprime / (2 * n), v, vprime)
