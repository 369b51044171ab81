"""Shared fixtures and independent dense oracles.

The dense helpers re-implement the tensor products with plain nested
loops over full index ranges, deliberately avoiding the sparse engine,
so that engine results can be cross-checked against a second code path.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from yangbaxter.triples import (
    BDTriple,
    compatible_permutations,
    enumerate_cg_triples,
)
from yangbaxter.tensors import Tensor2, Tensor3


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def reversing5():
    """The orientation-reversing n=5 triple: T(a1)=a4, T(a2)=a3."""
    return BDTriple.make(5, {1: 4, 2: 3})


def cg_structure(n, m=1):
    for mm, t in enumerate_cg_triples(n):
        if mm == m:
            perms = compatible_permutations(t)
            assert len(perms) == 1
            return perms[0]
    raise ValueError(f"no CG triple with m={m}")


def trivial_structures(n):
    return compatible_permutations(BDTriple.make(n, {}))


def random_sparse_tensor2(n, rng, nnz=4):
    coeffs = {}
    for _ in range(nnz):
        key = tuple(rng.randint(1, n) for _ in range(4))
        coeffs[key] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    return Tensor2(n, coeffs)


# --- dense oracles (independent of the sparse engine) ---------------------


def dense2(t):
    n = t.n
    grid = [[[[Fraction(0) for _ in range(n)] for _ in range(n)]
             for _ in range(n)] for _ in range(n)]
    for (i, j, k, l), v in t.coeffs.items():
        grid[i - 1][j - 1][k - 1][l - 1] = v
    return grid


def dense2_mul(a, b, n):
    out = [[[[Fraction(0) for _ in range(n)] for _ in range(n)]
            for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    for x in range(n):
                        for y in range(n):
                            out[i][j][k][l] += a[i][x][k][y] * b[x][j][y][l]
    return out


def dense2_from_grid(grid, n):
    coeffs = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if grid[i][j][k][l]:
                        coeffs[(i + 1, j + 1, k + 1, l + 1)] = grid[i][j][k][l]
    return Tensor2(n, coeffs)


def dense3_embed(t, legs, n):
    """Dense 6-index array embedding of a Tensor2 on the given legs."""
    out = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                for l in range(1, n + 1):
                    for m in range(1, n + 1):
                        for p in range(1, n + 1):
                            if legs == 12:
                                v = t.coeffs.get((i, j, k, l), Fraction(0)) if m == p else Fraction(0)
                            elif legs == 13:
                                v = t.coeffs.get((i, j, m, p), Fraction(0)) if k == l else Fraction(0)
                            else:
                                v = t.coeffs.get((k, l, m, p), Fraction(0)) if i == j else Fraction(0)
                            if v:
                                out[(i, j, k, l, m, p)] = v
    return out


def dense3_mul(a, b, n):
    out = {}
    for (i, x, k, y, m, z), va in a.items():
        for jj in range(1, n + 1):
            for ll in range(1, n + 1):
                for pp in range(1, n + 1):
                    vb = b.get((x, jj, y, ll, z, pp))
                    if vb:
                        key = (i, jj, k, ll, m, pp)
                        out[key] = out.get(key, Fraction(0)) + va * vb
    return {k: v for k, v in out.items() if v}


def dense3_to_tensor(d, n):
    return Tensor3(n, d)


def dense_numeric_aybe(r, n, point):
    """Dense complex AYBE residual, written from scratch with plain loops.

    Evaluates the base matrix at each slot argument and assembles
    r12(-u',v) r13(u+u',v+v') - r23(u+u',v') r12(u,v) + r13(u,v+v') r23(u',v')
    without touching the sparse engine, for cross-checking it.
    """
    u, up, v, vp = point

    def dense_at(uu, vv):
        grid = [[[[0j for _ in range(n)] for _ in range(n)]
                 for _ in range(n)] for _ in range(n)]
        logs = (uu / (2 * n), 0j, vv, 0j)
        for (i, j, k, l), val in r.coeffs.items():
            grid[i - 1][j - 1][k - 1][l - 1] = val.evaluate(logs)
        return grid

    A = dense_at(-up, v)
    B = dense_at(u + up, v + vp)
    C = dense_at(u + up, vp)
    D = dense_at(u, v)
    E = dense_at(u, v + vp)
    F = dense_at(up, vp)
    out = {}
    rng_n = range(n)
    for i in rng_n:
        for j in rng_n:
            for k in rng_n:
                for l in rng_n:
                    for m in rng_n:
                        for p in rng_n:
                            acc = 0j
                            for t in rng_n:
                                acc += A[i][t][k][l] * B[t][j][m][p]
                                acc -= C[k][t][m][p] * D[i][j][t][l]
                                acc += E[i][j][m][t] * F[k][l][t][p]
                            if acc != 0:
                                out[(i + 1, j + 1, k + 1, l + 1, m + 1, p + 1)] = acc
    return out
