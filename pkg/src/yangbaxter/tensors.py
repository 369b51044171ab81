"""Sparse exact tensor algebra on Mat_n (x) Mat_n and Mat_n (x) Mat_n (x) Mat_n.

Coefficients are stored in dicts keyed by 1-based matrix-unit indices:

    Tensor2.coeffs[(i, j, k, l)]        coefficient of e_ij (x) e_kl
    Tensor3.coeffs[(i, j, k, l, m, p)]  coefficient of e_ij (x) e_kl (x) e_mp

which is printed as t_{ik}^{jl} (lower indices rows, upper columns).
Scalars are pluggable: Fraction for constant matrices, RatFunc for the
symbolic spectral matrices, complex for numeric sampling.  Any type with
+, -, *, / by int and truthiness for exact zero works; zero coefficients
are never stored.

Tensors are immutable after construction; all operations are pure, so
instances can be shared freely between parallel workers.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import monomial_rf, rf


def _prune(d):
    return {k: v for k, v in d.items() if v}


class Tensor2:
    """Sparse element of Mat_n (x) Mat_n over a generic scalar."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs=None):
        self.n = n
        self.coeffs = _prune(coeffs) if coeffs else {}

    @classmethod
    def identity(cls, n, one=Fraction(1)):
        """1 (x) 1."""
        return cls(n, {(i, i, j, j): one for i in range(1, n + 1) for j in range(1, n + 1)})

    @classmethod
    def perm(cls, n, one=Fraction(1)):
        """P = sum e_ij (x) e_ji, the permutation (Casimir) tensor."""
        return cls(n, {(i, j, j, i): one for i in range(1, n + 1) for j in range(1, n + 1)})

    @classmethod
    def perm_diag(cls, n, one=Fraction(1)):
        """P^0 = sum e_ii (x) e_ii, the diagonal part of P."""
        return cls(n, {(i, i, i, i): one for i in range(1, n + 1)})

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, Tensor2):
            return NotImplemented
        return self.n == other.n and (self - other).is_zero()

    __hash__ = None

    def __neg__(self):
        return Tensor2(self.n, {k: -v for k, v in self.coeffs.items()})

    def __add__(self, other):
        if not isinstance(other, Tensor2) or self.n != other.n:
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
        return Tensor2(self.n, out)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return Tensor2(self.n)
        return Tensor2(self.n, {k: c * v for k, v in self.coeffs.items()})

    def mul(self, other):
        """Componentwise matrix product, e_ij e_kl = delta_jk e_il per leg."""
        if self.n != other.n:
            raise ValueError("tensor size mismatch")
        by_rows = {}
        for (a, b, c, d), cb in other.coeffs.items():
            by_rows.setdefault((a, c), []).append((b, d, cb))
        out = {}
        for (i, j, k, l), ca in self.coeffs.items():
            for b, d, cb in by_rows.get((j, l), ()):
                key = (i, b, k, d)
                cur = out.get(key)
                prod = ca * cb
                out[key] = prod if cur is None else cur + prod
        return Tensor2(self.n, out)

    def flip21(self):
        """Swap the two legs: coefficient of e_ij (x) e_kl moves to e_kl (x) e_ij."""
        return Tensor2(self.n, {(k, l, i, j): v for (i, j, k, l), v in self.coeffs.items()})

    def embed(self, legs):
        """Place the tensor on the named legs of a 3-fold product (12, 13, 23)."""
        n = self.n
        out = {}
        if legs == 12:
            for (i, j, k, l), v in self.coeffs.items():
                for m in range(1, n + 1):
                    out[(i, j, k, l, m, m)] = v
        elif legs == 13:
            for (i, j, k, l), v in self.coeffs.items():
                for m in range(1, n + 1):
                    out[(i, j, m, m, k, l)] = v
        elif legs == 23:
            for (i, j, k, l), v in self.coeffs.items():
                for m in range(1, n + 1):
                    out[(m, m, i, j, k, l)] = v
        else:
            raise ValueError("legs must be one of 12, 13, 23")
        return Tensor3(n, out)

    def project_traceless(self, legs):
        """Apply M -> M - (tr M / n) 1 on each selected leg (1 and/or 2)."""
        out = self
        for leg in legs:
            src = out.coeffs
            acc = dict(src)
            for key, v in src.items():
                r, s = (key[0], key[1]) if leg == 1 else (key[2], key[3])
                if r != s:
                    continue
                frac = v / self.n
                for m in range(1, self.n + 1):
                    nk = (m, m) + key[2:] if leg == 1 else key[:2] + (m, m)
                    cur = acc.get(nk)
                    acc[nk] = -frac if cur is None else cur - frac
            out = Tensor2(self.n, acc)
        return out

    def map_scalars(self, fn):
        return Tensor2(self.n, {k: fn(v) for k, v in self.coeffs.items()})

    def substitute(self, assignment):
        """Entrywise exact substitution for symbolic tensors."""
        return self.map_scalars(lambda v: rf(v).substitute(assignment))

    def evaluate(self, logs):
        """Entrywise numeric evaluation; scalars become complex."""
        return self.map_scalars(lambda v: _to_complex(v, logs))

    def transpose_legs(self):
        return self.flip21()

    def lex_witness(self):
        """Lexicographically least nonzero coefficient (index, value)."""
        if not self.coeffs:
            return None
        key = min(self.coeffs)
        return key, self.coeffs[key]

    def max_abs(self):
        """Largest coefficient magnitude (numeric tensors)."""
        return max((abs(v) for v in self.coeffs.values()), default=0.0)

    def pretty(self):
        lines = []
        for (i, j, k, l) in sorted(self.coeffs):
            lines.append(f"t_{{{i},{k}}}^{{{j},{l}}} = {self.coeffs[(i, j, k, l)]}")
        return "\n".join(lines)

    def __repr__(self):
        return f"Tensor2(n={self.n}, nnz={len(self.coeffs)})"


class Tensor3:
    """Sparse element of Mat_n (x) Mat_n (x) Mat_n over a generic scalar."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs=None):
        self.n = n
        self.coeffs = _prune(coeffs) if coeffs else {}

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.n == other.n and (self - other).is_zero()

    __hash__ = None

    def __neg__(self):
        return Tensor3(self.n, {k: -v for k, v in self.coeffs.items()})

    def __add__(self, other):
        if not isinstance(other, Tensor3) or self.n != other.n:
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
        return Tensor3(self.n, out)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return Tensor3(self.n)
        return Tensor3(self.n, {k: c * v for k, v in self.coeffs.items()})

    def mul(self, other):
        if self.n != other.n:
            raise ValueError("tensor size mismatch")
        by_rows = {}
        for (a, b, c, d, e, f), cb in other.coeffs.items():
            by_rows.setdefault((a, c, e), []).append((b, d, f, cb))
        out = {}
        for (i, j, k, l, m, p), ca in self.coeffs.items():
            for b, d, f, cb in by_rows.get((j, l, p), ()):
                key = (i, b, k, d, m, f)
                cur = out.get(key)
                prod = ca * cb
                out[key] = prod if cur is None else cur + prod
        return Tensor3(self.n, out)

    def project_traceless(self, legs):
        """Apply M -> M - (tr M / n) 1 on each selected leg (subset of 1,2,3)."""
        out = self
        for leg in legs:
            base = 2 * (leg - 1)
            src = out.coeffs
            acc = dict(src)
            for key, v in src.items():
                if key[base] != key[base + 1]:
                    continue
                frac = v / self.n
                for m in range(1, self.n + 1):
                    nk = key[:base] + (m, m) + key[base + 2:]
                    cur = acc.get(nk)
                    acc[nk] = -frac if cur is None else cur - frac
            out = Tensor3(self.n, acc)
        return out

    def map_scalars(self, fn):
        return Tensor3(self.n, {k: fn(v) for k, v in self.coeffs.items()})

    def lex_witness(self):
        if not self.coeffs:
            return None
        key = min(self.coeffs)
        return key, self.coeffs[key]

    def max_abs(self):
        """Largest coefficient magnitude (numeric tensors)."""
        return max((abs(v) for v in self.coeffs.values()), default=0.0)

    def pretty(self):
        lines = []
        for (i, j, k, l, m, p) in sorted(self.coeffs):
            c = self.coeffs[(i, j, k, l, m, p)]
            lines.append(f"t_{{{i},{k},{m}}}^{{{j},{l},{p}}} = {c}")
        return "\n".join(lines)

    def __repr__(self):
        return f"Tensor3(n={self.n}, nnz={len(self.coeffs)})"


def _to_complex(v, logs):
    if isinstance(v, (int, float, complex, Fraction)):
        return complex(v)
    return v.evaluate(logs)


def embed(t, legs):
    return t.embed(legs)


def mul2(a, b):
    return a.mul(b)


def mul3(a, b):
    return a.mul(b)


def flip21(t):
    return t.flip21()


def project_traceless(t, legs):
    return t.project_traceless(legs)


def weight_contract(t, w1, w2):
    """sum_ij w1_i w2_j coeff(i, i, j, j); w1, w2 are length-n vectors."""
    total = None
    for (i, j, k, l), v in t.coeffs.items():
        if i != j or k != l:
            continue
        piece = w1[i - 1] * w2[k - 1] * v
        total = piece if total is None else total + piece
    return Fraction(0) if total is None else total


def gauge_conjugate(t, phi, n):
    """exp(-Phi^2 u) t exp(Phi^1 u) for a diagonal Phi = diag(phi).

    The coefficient at e_ij (x) e_kl picks up exp((phi_j - phi_k) u),
    realized as the monomial X1^(2n(phi_j - phi_k)).  Entries are promoted
    to RatFunc when needed.
    """
    phi = [Fraction(x) for x in phi]
    if len(phi) != n:
        raise ValueError("Phi must have one diagonal entry per row")
    out = {}
    for (i, j, k, l), v in t.coeffs.items():
        rate = phi[j - 1] - phi[k - 1]
        if rate:
            v = monomial_rf(x1=2 * n * rate) * rf(v)
        out[(i, j, k, l)] = v
    return Tensor2(t.n, out)


def weight_zero_ok(t):
    """Check the index rule i + k = j + l (resp. i+k+m = j+l+p) on support."""
    if isinstance(t, Tensor2):
        return all(i + k == j + l for (i, j, k, l) in t.coeffs)
    return all(i + k + m == j + l + p for (i, j, k, l, m, p) in t.coeffs)


def variables_used(t):
    """Names of the formal symbols actually appearing in a symbolic tensor."""
    from .scalars import VAR_NAMES, RatFunc

    used = set()
    for v in t.coeffs.values():
        if not isinstance(v, RatFunc):
            continue
        for poly in (v.num, v.den):
            for idx, name in enumerate(VAR_NAMES):
                if name not in used and poly.uses_var(idx):
                    used.add(name)
    return used
