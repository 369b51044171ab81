"""Belavin-Drinfeld triples for sl(n) and their combinatorics.

Covers validation and exhaustive enumeration of triples, the root
ordering alpha < beta under iteration of T, orientation labels, the
adjacency exponents of the quantum formula, compatible cyclic
permutations and the resulting associative structures, the closed
formula for s0, and the exact rational linear systems for the
continuous datum s and the gauge freedom Phi.

Roots e_i - e_j are encoded as pairs (i, j); simple roots are indexed
1..n-1 with alpha_a = e_a - e_{a+1}.  A positive root (i, j), i < j, is
the segment with simple summands a = i..j-1.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

SCHEMA_VERSION = 1


class Root(NamedTuple):
    i: int
    j: int

    @property
    def positive(self):
        return self.i < self.j

    @property
    def length(self):
        return abs(self.j - self.i)

    def simples(self):
        """Simple-root indices of a positive segment."""
        if not self.positive:
            raise ValueError("simples() is defined for positive roots")
        return range(self.i, self.j)

    def weights(self, n):
        """Coordinate vector of e_i - e_j in Z^n."""
        w = [Fraction(0)] * n
        w[self.i - 1] += 1
        w[self.j - 1] -= 1
        return w


def simple_root(a):
    return Root(a, a + 1)


def root_inner(a, b):
    """Inner product of two simple roots alpha_a, alpha_b of A_{n-1}."""
    if a == b:
        return 2
    if abs(a - b) == 1:
        return -1
    return 0


@dataclass(frozen=True, order=True)
class BDTriple:
    """A triple (Gamma_1, Gamma_2, T), stored as sorted (a, T(a)) pairs."""

    n: int
    pairs: tuple

    @classmethod
    def make(cls, n, mapping):
        pairs = tuple(sorted((int(a), int(b)) for a, b in dict(mapping).items()))
        return cls(n, pairs)

    @property
    def gamma1(self):
        return tuple(a for a, _ in self.pairs)

    @property
    def gamma2(self):
        return tuple(sorted(b for _, b in self.pairs))

    @property
    def t_map(self):
        return dict(self.pairs)

    @property
    def is_trivial(self):
        return not self.pairs

    def sort_key(self):
        return (len(self.pairs), self.gamma1, tuple(b for _, b in self.pairs))

    def inverse(self):
        """The dual triple (Gamma_2, Gamma_1, T^-1)."""
        return BDTriple.make(self.n, {b: a for a, b in self.pairs})

    def to_json(self, provenance=None):
        doc = {
            "schema_version": SCHEMA_VERSION,
            "n": self.n,
            "gamma1": list(self.gamma1),
            "gamma2": list(self.gamma2),
            "t_map": {str(a): b for a, b in self.pairs},
        }
        if provenance is not None:
            doc["provenance"] = provenance
        return doc

    @classmethod
    def from_json(cls, doc):
        return cls.make(doc["n"], {int(a): b for a, b in doc["t_map"].items()})


def validate_triple(t):
    """Check the triple axioms; returns a list of violations (empty = valid).

    (a) T preserves the inner product on Gamma_1;
    (b) T is nilpotent (every T-orbit leaves Gamma_1).
    Structural defects (indices out of range, non-bijective map) are
    reported the same way rather than raised.
    """
    issues = []
    tm = t.t_map
    g1 = t.gamma1
    for a, b in t.pairs:
        if not (1 <= a <= t.n - 1 and 1 <= b <= t.n - 1):
            issues.append(f"index out of range in pair ({a},{b})")
    if len(set(tm.values())) != len(tm):
        issues.append("T is not injective")
    for a, b in itertools.combinations(g1, 2):
        if root_inner(a, b) != root_inner(tm[a], tm[b]):
            issues.append(
                f"inner product not preserved on ({a},{b}): "
                f"({a},{b}) -> ({tm[a]},{tm[b]})"
            )
    for a in g1:
        x = a
        for _ in range(t.n):
            if x not in tm:
                break
            x = tm[x]
        else:
            issues.append(f"T is not nilpotent: orbit of {a} never leaves Gamma_1")
    return issues


def is_valid(t):
    return not validate_triple(t)


def enumerate_triples(n, bound=6):
    """All valid BD triples for sl(n), canonically ordered.

    Exhaustive search over subset pairs and bijections; n is capped by
    `bound` because the search is exponential.
    """
    if n > bound:
        raise ValueError(f"enumeration bound exceeded: n={n} > {bound}")
    simples = range(1, n)
    found = []
    for size in range(0, n):
        for g1 in itertools.combinations(simples, size):
            for g2 in itertools.combinations(simples, size):
                for image in itertools.permutations(g2):
                    t = BDTriple.make(n, dict(zip(g1, image)))
                    if is_valid(t):
                        found.append(t)
    found.sort(key=BDTriple.sort_key)
    return found


def _res(x, n):
    """Residue of x modulo n, in {1, ..., n}."""
    r = x % n
    return r if r else n


def enumerate_cg_triples(n):
    """Generalized Cremmer-Gervais triples, one per m coprime to n.

    Gamma_1 = Gamma \\ {alpha_{n-m}}, Gamma_2 = Gamma \\ {alpha_m},
    T(alpha_i) = alpha_{Res(i+m)}.
    """
    out = []
    for m in range(1, n + 1):
        if _gcd(m, n) != 1:
            continue
        mapping = {
            i: _res(i + m, n)
            for i in range(1, n)
            if i != n - m
        }
        out.append((m, BDTriple.make(n, mapping)))
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _step(t, seg, left):
    """One application of T to a positive segment; None when it leaves Gamma_1.

    seg is a Root, left its current left-end simple index (tracks
    orientation).  Returns (segment, left) after mapping every simple
    summand through T.
    """
    tm = t.t_map
    summands = list(seg.simples())
    if any(a not in tm for a in summands):
        return None
    image = sorted(tm[a] for a in summands)
    lo = image[0]
    if image != list(range(lo, lo + len(summands))):
        raise RuntimeError("image of a segment is not a segment; invalid triple?")
    return Root(lo, lo + len(summands)), tm[left]


def t_orbit(t, alpha):
    """Yield (k, T^k alpha, C) for k = 1, 2, ... while T^k is defined.

    C is the orientation label of T^k on alpha: 0 when the left endpoint
    maps to the left endpoint, 1 when the segment is reversed.  For
    length-1 segments C is stored as 0 (the sign exponent |alpha|-1
    vanishes there anyway).
    """
    seg, left = alpha, alpha.i
    for k in range(1, t.n + 1):
        nxt = _step(t, seg, left)
        if nxt is None:
            return
        seg, left = nxt
        if alpha.length == 1:
            c = 0
        elif left == seg.i:
            c = 0
        elif left == seg.j - 1:
            c = 1
        else:
            raise RuntimeError("orientation tracker left the segment endpoints")
        yield k, seg, c


def positive_roots(n):
    return [Root(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def prec_pairs(t):
    """All (alpha, beta, k, C) with T^k alpha = beta, k >= 1."""
    out = []
    for alpha in positive_roots(t.n):
        for k, beta, c in t_orbit(t, alpha):
            out.append((alpha, beta, k, c))
    return out


def prec_order(t, alpha, beta):
    """The k >= 1 with T^k alpha = beta, or None when alpha !< beta."""
    for k, img, _ in t_orbit(t, alpha):
        if img == beta:
            return k
    return None


def orientation_C(t, alpha, beta):
    """Orientation label of the pair alpha < beta (0 preserve, 1 reverse)."""
    for _, img, c in t_orbit(t, alpha):
        if img == beta:
            return c
    raise ValueError(f"{alpha} does not precede {beta}")


def is_orientation_preserving(t):
    return all(c == 0 for (_, _, _, c) in prec_pairs(t))


def _adjacent(a, b):
    """a lessdot b: segment a lies immediately left-adjacent to segment b."""
    return a.j == b.i


def adjacency_exponent(t, alpha, beta):
    """The combinatorial exponent in the quantum formula for alpha < beta.

    1/2([a<.b] + [b<.a]) + [exists gamma strictly between with a<.gamma]
    + [exists gamma with gamma<.a], where <. is left-adjacency of
    segments; always equal to 1 - (alpha (x) beta) s.
    """
    chain = {}
    for k, img, _ in t_orbit(t, alpha):
        chain[k] = img
    k = next((k for k, img in chain.items() if img == beta), None)
    if k is None:
        raise ValueError(f"{alpha} does not precede {beta}")
    between = [chain[a] for a in range(1, k)]
    exponent = Fraction(int(_adjacent(alpha, beta)) + int(_adjacent(beta, alpha)), 2)
    exponent += int(any(_adjacent(alpha, g) for g in between))
    exponent += int(any(_adjacent(g, alpha) for g in between))
    return exponent


@dataclass(frozen=True, order=True)
class AssocStructure:
    """A triple together with a compatible cyclic permutation tilde T.

    tilde_t[i-1] is the image of i; the permutation must be a single
    n-cycle with T(alpha_a) = alpha_b implying tilde_t: a -> b, a+1 -> b+1.
    """

    triple: BDTriple
    tilde_t: tuple

    @property
    def n(self):
        return self.triple.n

    def apply(self, i):
        return self.tilde_t[i - 1]

    def orbit_distance(self, i, j):
        """O(i, j): least k >= 0 with tilde_T^k(i) = j."""
        x = i
        for k in range(self.n):
            if x == j:
                return k
            x = self.apply(x)
        raise RuntimeError("tilde T is not a single n-cycle")

    def to_json(self, provenance=None):
        doc = self.triple.to_json()
        doc["tilde_t"] = list(self.tilde_t)
        if provenance is not None:
            doc["provenance"] = provenance
        return doc

    @classmethod
    def from_json(cls, doc):
        return make_structure(BDTriple.from_json(doc), tuple(doc["tilde_t"]))


def _is_n_cycle(images):
    n = len(images)
    x, seen = 1, 0
    for _ in range(n):
        x = images[x - 1]
        seen += 1
        if x == 1:
            break
    return x == 1 and seen == n


def tilde_t_constraints(t):
    """Partial map forced on tilde T by the triple, or None on conflict."""
    forced = {}
    for a, b in t.pairs:
        for src, dst in ((a, b), (a + 1, b + 1)):
            if forced.get(src, dst) != dst:
                return None
            forced[src] = dst
    if len(set(forced.values())) != len(forced):
        return None
    return forced


def compatible_permutations(t):
    """All associative structures on the triple (empty iff none exist).

    The forced partial map is decomposed into chains; every n-cycle
    extension arranges the chains in a circle, so the count is
    (#chains - 1)! and reaches (n-1)! for the trivial triple.
    """
    forced = tilde_t_constraints(t)
    if forced is None:
        return []
    n = t.n
    has_pred = set(forced.values())
    chains = []
    for start in range(1, n + 1):
        if start in has_pred:
            continue
        chain = [start]
        while chain[-1] in forced:
            chain.append(forced[chain[-1]])
        chains.append(chain)
    covered = sum(len(c) for c in chains)
    if covered != n:
        # the forced map already contains a cycle
        if covered == 0 and len(forced) == n and _is_n_cycle(
            tuple(forced[i] for i in range(1, n + 1))
        ):
            return [make_structure(t, tuple(forced[i] for i in range(1, n + 1)))]
        return []
    out = []
    first, rest = chains[0], chains[1:]
    for arrangement in itertools.permutations(rest):
        order = list(first)
        for chain in arrangement:
            order.extend(chain)
        images = [0] * n
        for idx, node in enumerate(order):
            images[node - 1] = order[(idx + 1) % n]
        out.append(make_structure(t, tuple(images)))
    out.sort(key=lambda s: s.tilde_t)
    return out


def make_structure(t, tilde_t):
    """Validate and build an associative structure."""
    tilde_t = tuple(int(x) for x in tilde_t)
    if sorted(tilde_t) != list(range(1, t.n + 1)):
        raise ValueError("tilde T must be a permutation of 1..n")
    if not _is_n_cycle(tilde_t):
        raise ValueError("tilde T must be a single n-cycle")
    forced = tilde_t_constraints(t)
    if forced is None:
        raise ValueError("triple admits no compatible permutation")
    for src, dst in forced.items():
        if tilde_t[src - 1] != dst:
            raise ValueError(f"tilde T conflicts with T at {src}")
    return AssocStructure(t, tilde_t)


def is_associative(t):
    return bool(compatible_permutations(t))


class SWedge:
    """Antisymmetric rational n x n array: the h-wedge-h datum.

    entries[i][j] (1-based accessor get(i, j)) is the coefficient of
    e_ii (x) e_jj; the diagonal is zero.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n, upper=None):
        rows = [[Fraction(0)] * n for _ in range(n)]
        if upper:
            for (i, j), val in upper.items():
                if i == j:
                    raise ValueError("diagonal entries of s must vanish")
                val = Fraction(val)
                rows[i - 1][j - 1] += val
                rows[j - 1][i - 1] -= val
        self.n = n
        self.rows = tuple(tuple(r) for r in rows)

    def get(self, i, j):
        return self.rows[i - 1][j - 1]

    def upper_items(self):
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                yield (i, j), self.get(i, j)

    def __eq__(self, other):
        return isinstance(other, SWedge) and self.rows == other.rows

    __hash__ = None

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("size mismatch")
        return SWedge(
            self.n,
            {(i, j): self.get(i, j) + other.get(i, j) for (i, j), _ in self.upper_items()},
        )

    def scale(self, c):
        return SWedge(self.n, {(i, j): c * v for (i, j), v in self.upper_items()})

    def __str__(self):
        entries = ", ".join(
            f"s_{i}{j}={v}" for (i, j), v in self.upper_items() if v
        )
        return f"SWedge(n={self.n}, {entries or '0'})"

    __repr__ = __str__

    def to_json(self):
        return {f"{i},{j}": str(v) for (i, j), v in self.upper_items() if v}

    @classmethod
    def from_json(cls, n, doc):
        upper = {}
        for key, v in doc.items():
            i, j = key.split(",")
            upper[(int(i), int(j))] = Fraction(v)
        return cls(n, upper)


def s0_from_structure(a):
    """The closed-form datum s0: entries 1/2 - O(i,j)/n off the diagonal."""
    n = a.n
    upper = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            upper[(i, j)] = Fraction(1, 2) - Fraction(a.orbit_distance(i, j), n)
    return SWedge(n, upper)


def check_s0_identities(s0, a):
    """Verify [(e_i - e_{~T i}) (x) 1] s0 = 1/2 [(e_i + e_{~T i}) (x) 1] P'.

    P' is the traceless projection of P^0; the identity must hold for
    every i and every component j.
    """
    n = a.n
    for i in range(1, n + 1):
        ti = a.apply(i)
        for j in range(1, n + 1):
            lhs = s0.get(i, j) - s0.get(ti, j)
            rhs = (
                Fraction(int(i == j) + int(ti == j), 2) - Fraction(1, n)
            )
            if lhs != rhs:
                return False
    return True


def _row_reduce(rows, rhs):
    """Exact Gaussian elimination over Fraction.

    Returns (pivots, rows, rhs) in echelon form; rows are mutated copies.
    """
    rows = [list(r) for r in rows]
    rhs = list(rhs)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        rhs[r], rhs[pivot] = rhs[pivot], rhs[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        rhs[r] = rhs[r] * inv
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[r])]
                rhs[k] = rhs[k] - f * rhs[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots, rows, rhs


def solve_linear(rows, rhs, ncols):
    """Particular solution and nullspace basis of an exact linear system.

    Returns (particular | None, basis); entries are Fractions.
    """
    if not rows:
        basis = []
        for c in range(ncols):
            v = [Fraction(0)] * ncols
            v[c] = Fraction(1)
            basis.append(v)
        return [Fraction(0)] * ncols, basis
    pivots, red, rrhs = _row_reduce(rows, rhs)
    rank = len(pivots)
    for k in range(rank, len(red)):
        if rrhs[k]:
            return None, []
    particular = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        particular[c] = rrhs[r]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return particular, basis


def _s_system_rows(t):
    """Rows of the linear system for s (unknowns s_ij, i < j, row-major)."""
    n = t.n
    unknowns = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    col = {u: c for c, u in enumerate(unknowns)}
    rows, rhs = [], []
    for a, b in t.pairs:
        x = [Fraction(0)] * n  # alpha_a - alpha_b as a weight vector
        x[a - 1] += 1
        x[a] -= 1
        x[b - 1] -= 1
        x[b] += 1
        y = [Fraction(0)] * n  # alpha_a + alpha_b
        y[a - 1] += 1
        y[a] -= 1
        y[b - 1] += 1
        y[b] -= 1
        for j in range(1, n + 1):
            row = [Fraction(0)] * len(unknowns)
            for i in range(1, n + 1):
                if i == j or not x[i - 1]:
                    continue
                if i < j:
                    row[col[(i, j)]] += x[i - 1]
                else:
                    row[col[(j, i)]] -= x[i - 1]
            rows.append(row)
            rhs.append(Fraction(y[j - 1], 2))
    return unknowns, rows, rhs


def s_in_solution_space(t, s):
    """Membership test for the affine solution space of the s-system."""
    unknowns, rows, rhs = _s_system_rows(t)
    vec = [s.get(i, j) for (i, j) in unknowns]
    for row, b in zip(rows, rhs):
        if sum(c * v for c, v in zip(row, vec)) != b:
            return False
    return True


def solve_s_system(t):
    """Affine solution space of the s-system: (particular, basis).

    The system is always solvable for a valid triple; an inconsistent
    system indicates an internal error.
    """
    unknowns, rows, rhs = _s_system_rows(t)
    particular, basis = solve_linear(rows, rhs, len(unknowns))
    if particular is None:
        raise RuntimeError("s-system inconsistent for a valid triple")

    def to_swedge(vec):
        return SWedge(t.n, {u: v for u, v in zip(unknowns, vec) if v})

    return to_swedge(particular), [to_swedge(v) for v in basis]


def phi_space(t):
    """Rational basis of {Phi diagonal : (alpha, Phi) = (T alpha, Phi)}."""
    n = t.n
    rows = []
    for a, b in t.pairs:
        row = [Fraction(0)] * n
        row[a - 1] += 1
        row[a] -= 1
        row[b - 1] -= 1
        row[b] += 1
        rows.append(row)
    _, basis = solve_linear(rows, [Fraction(0)] * len(rows), n)
    return [tuple(v) for v in basis]


def phi_coboundary(phi, n):
    """The wedge Phi (x) 1 - 1 (x) Phi, entries phi_i - phi_j."""
    phi = [Fraction(x) for x in phi]
    return SWedge(
        n,
        {
            (i, j): phi[i - 1] - phi[j - 1]
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
        },
    )


def phi_from_s(a, s):
    """Recover Phi with s - s0 = Phi^1 - Phi^2, normalized to phi_1 = 0.

    Raises ValueError when s - s0 is not such a coboundary or Phi fails
    the admissibility constraint (alpha, Phi) = (T alpha, Phi).
    """
    n = a.n
    s0 = s0_from_structure(a)
    d = s + s0.scale(-1)
    phi = [Fraction(0)] * n
    for j in range(2, n + 1):
        phi[j - 1] = d.get(j, 1)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and d.get(i, j) != phi[i - 1] - phi[j - 1]:
                raise ValueError("s - s0 is not of the form Phi^1 - Phi^2")
    for a_, b_ in a.triple.pairs:
        if phi[a_ - 1] - phi[a_] != phi[b_ - 1] - phi[b_]:
            raise ValueError("Phi violates (alpha, Phi) = (T alpha, Phi)")
    return tuple(phi)


def tilde_t_from_s(s):
    """Reconstruct tilde T from the diagonal data of a liftable r-matrix.

    Uses t'_ij = t_ij - t_1j - t_i1 on indices 2..n (t = s + P^0/2); all
    values must be +-1/2 and transitively ordered, else ValueError.
    """
    n = s.n
    if n < 2:
        raise ValueError("need n >= 2")
    half = Fraction(1, 2)

    def tprime(i, j):
        return s.get(i, j) - s.get(1, j) - s.get(i, 1)

    for i in range(2, n + 1):
        for j in range(2, n + 1):
            if i != j and tprime(i, j) not in (half, -half):
                raise ValueError(f"t'_{i}{j} = {tprime(i, j)} is not +-1/2")
    order = sorted(
        range(2, n + 1),
        key=lambda a: sum(1 for b in range(2, n + 1) if b != a and tprime(b, a) == half),
    )
    for idx, a in enumerate(order):
        for b in order[idx + 1:]:
            if tprime(a, b) != half:
                raise ValueError("t' values are not transitively ordered")
    cycle = [1] + order
    images = [0] * n
    for idx, node in enumerate(cycle):
        images[node - 1] = cycle[(idx + 1) % n]
    return tuple(images)


def triple_flags(t):
    """Summary flags used by the CLI listing."""
    perms = compatible_permutations(t)
    return {
        "valid": is_valid(t),
        "orientation_preserving": is_orientation_preserving(t),
        "associative": bool(perms),
        "compatible_permutations": len(perms),
    }


def canonical_json(doc):
    return json.dumps(doc, sort_keys=True, indent=2)
