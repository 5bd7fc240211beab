"""Independent reference computations used by the tests.

Nothing here imports the package's linear algebra: matrices are sympy
matrices and combinatorial objects are built from itertools and Python sets.
"""

from __future__ import annotations

from itertools import combinations

import sympy as sp


def to_sympy(M) -> sp.Matrix:
    return sp.Matrix(M.rows, M.cols, lambda r, c: sp.Rational(M[r, c].numerator, M[r, c].denominator))


def sl2_module(n: int):
    """E, F, H on L_n written directly from the action formulas."""
    size = n + 1
    E = sp.zeros(size)
    F = sp.zeros(size)
    H = sp.zeros(size)
    for i in range(size):
        H[i, i] = n - 2 * i
        if i >= 1:
            E[i - 1, i] = i
        if i < n:
            F[i + 1, i] = n - i
    return E, F, H


def algebra_dim(generators) -> int:
    """Dimension of the unital algebra generated by sympy matrices.

    Words are enumerated by length; stop once a length adds nothing new.
    """
    n = generators[0].rows
    words = [sp.eye(n)]
    span = sp.Matrix([list(words[0])])
    rank = 1
    frontier = words
    while frontier:
        fresh = []
        for W in frontier:
            for G in generators:
                P = W * G
                trial = span.col_join(sp.Matrix([list(P)]))
                r = trial.rank()
                if r > rank:
                    span, rank = trial, r
                    fresh.append(P)
        frontier = fresh
    return rank


def johnson(D: int, k: int, x0: frozenset):
    """Vertices, adjacency and dual adjacency of J(D,k) from set operations."""
    verts = [frozenset(c) for c in combinations(range(D), k)]
    N = len(verts)
    A = sp.zeros(N)
    for r, x in enumerate(verts):
        for c, y in enumerate(verts):
            if len(x & y) == k - 1:
                A[r, c] = 1
    Astar = sp.zeros(N)
    for r, x in enumerate(verts):
        dist = len(x0 - x) + len(x - x0)
        Astar[r, r] = (D - 1) * (1 - sp.Rational(D * dist, 2 * k * (D - k)))
    return verts, A, Astar


def eigen_multiplicities(M: sp.Matrix) -> dict:
    return {ev: mult for ev, mult in M.eigenvals().items()}
