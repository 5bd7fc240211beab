"""Johnson graphs and the dimensions of their Terwilliger algebras.

Vertices of J(D,k) are the k-subsets of {0..D-1} as bitmasks, in increasing
order. Block structures are computed three ways (case-by-case index sets,
Ito's index sets, the slice decomposition) and must agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, comb, floor

from .checks import VerificationReport
from .errors import IdentityViolation, InvalidAnchor, OutOfRange, SizeCapExceeded
from .exactarith import RepMatrix, SpanBasis, span_closure
from .latticedecomp import (
    build_subset_lattice,
    p_index_set,
    popcount,
    slice_decomposition_profile,
    split_by_anchor,
    to_mask,
)

DEFAULT_CLOSURE_CAP = 130


def _check_dk(D: int, k: int) -> None:
    if D < 2 or not 1 <= k <= D - 1:
        raise OutOfRange(f"need D >= 2 and 1 <= k <= D-1, got D={D}, k={k}")


def johnson_vertices(D: int, k: int) -> list[int]:
    return [x for x in range(1 << D) if popcount(x) == k]


def default_anchor(k: int) -> int:
    return (1 << k) - 1


def random_anchor(D: int, k: int, seed: int) -> int:
    """A k-subset drawn from a generator seeded by ``(seed, D, k)``."""
    rng = random.Random(f"{seed}:{D}:{k}")
    return to_mask(rng.sample(range(D), k), D)


def _anchor_mask(D: int, k: int, x0) -> int:
    mask = default_anchor(k) if x0 is None else to_mask(x0, D)
    if popcount(mask) != k:
        raise InvalidAnchor(f"anchor must have {k} elements")
    return mask


@dataclass(frozen=True)
class JohnsonOps:
    D: int
    k: int
    anchor: int
    vertices: tuple
    adjacency: RepMatrix
    dual_adjacency: RepMatrix
    dual_idempotents: tuple


def johnson_operators(D: int, k: int, x0=None) -> JohnsonOps:
    """Adjacency, dual adjacency and dual primitive idempotents relative to ``x0``."""
    _check_dk(D, k)
    mask = _anchor_mask(D, k, x0)
    verts = johnson_vertices(D, k)
    index = {x: i for i, x in enumerate(verts)}
    N = len(verts)
    adj = {}
    for x in verts:
        for y in verts:
            if popcount(x & y) == k - 1:
                adj[(index[y], index[x])] = 1
    adjacency = RepMatrix.from_entries(N, N, adj)
    dual = RepMatrix.diag(
        [
            (D - 1) * (1 - Fraction(D * (popcount(mask & ~x) + popcount(x & ~mask)), 2 * k * (D - k)))
            for x in verts
        ]
    )
    idempotents = tuple(
        RepMatrix.diag([1 if popcount(x & mask) == k - i else 0 for x in verts]) for i in range(k + 1)
    )
    ops = JohnsonOps(D, k, mask, tuple(verts), adjacency, dual, idempotents)
    _assert_johnson_invariants(ops)
    return ops


def _assert_johnson_invariants(ops: JohnsonOps) -> None:
    A = ops.adjacency
    N = A.rows
    if A != A.transpose() or any(A[i, i] for i in range(N)):
        raise IdentityViolation("adjacency must be symmetric with zero diagonal")
    valency = ops.k * (ops.D - ops.k)
    if any(sum(row) != valency for row in A):
        raise IdentityViolation("adjacency rows must sum to k(D-k)")
    total = RepMatrix.zeros(N)
    for i, Ei in enumerate(ops.dual_idempotents):
        total = total + Ei
        for j, Ej in enumerate(ops.dual_idempotents):
            if Ei @ Ej != (Ei if i == j else RepMatrix.zeros(N)):
                raise IdentityViolation("dual idempotents are not orthogonal idempotents")
    if total != RepMatrix.identity(N):
        raise IdentityViolation("dual idempotents do not sum to the identity")


def terwilliger_algebra(D: int, k: int, x0=None, cap: int = DEFAULT_CLOSURE_CAP) -> SpanBasis:
    _check_dk(D, k)
    if comb(D, k) > cap:
        raise SizeCapExceeded(f"C({D},{k}) = {comb(D, k)} exceeds the closure cap {cap}")
    ops = johnson_operators(D, k, x0)
    return span_closure([ops.adjacency, ops.dual_adjacency], include_identity=True)[1]


def terwilliger_dim_bruteforce(D: int, k: int, x0=None, cap: int = DEFAULT_CLOSURE_CAP) -> int:
    return terwilliger_algebra(D, k, x0, cap).rank


def hahn_image_on_slice(D: int, k: int, x0=None) -> tuple[RepMatrix, RepMatrix, VerificationReport]:
    """``A`` and ``B`` acting on the k-subsets, as installed by the anchor split."""
    mask = _anchor_mask(D, k, x0)
    split = split_by_anchor(build_subset_lattice(D), mask)
    report = VerificationReport()
    report.extend(split.report)
    idx = johnson_vertices(D, k)
    inside = set(idx)
    A, B = split.anchored.A, split.anchored.B
    leaks = any(B[r, c] for c in idx for r in range(B.rows) if r not in inside)
    report.add("slice is B-invariant", not leaks)
    return A.submatrix(idx, idx), B.submatrix(idx, idx), report


def compare_T_and_H_image(D: int, k: int, x0=None, cap: int = DEFAULT_CLOSURE_CAP):
    """Both generated algebras plus the affine relations tying the generators together."""
    _check_dk(D, k)
    if comb(D, k) > cap:
        raise SizeCapExceeded(f"C({D},{k}) = {comb(D, k)} exceeds the closure cap {cap}")
    ops = johnson_operators(D, k, x0)
    A, B, report = hahn_image_on_slice(D, k, ops.anchor)
    I = RepMatrix.identity(A.rows)
    report.add_equal(
        "adjacency = B - D/2 - (D-2k)^2/4",
        ops.adjacency,
        B - (Fraction(D, 2) + Fraction((D - 2 * k) ** 2, 4)) * I,
    )
    report.add_equal(
        "dual adjacency = D(D-1)/(k(D-k)) (A - (D-2k)^2/(4D))",
        ops.dual_adjacency,
        Fraction(D * (D - 1), k * (D - k)) * (A - Fraction((D - 2 * k) ** 2, 4 * D) * I),
    )
    T = span_closure([ops.adjacency, ops.dual_adjacency], include_identity=True)[1]
    Himg = span_closure([A, B], include_identity=True)[1]
    return T, Himg, report


def verify_T_equals_H_image(D: int, k: int, x0=None, cap: int = DEFAULT_CLOSURE_CAP) -> bool:
    T, Himg, report = compare_T_and_H_image(D, k, x0, cap)
    return report.passed and T == Himg


# ---------------------------------------------------------------------------
# binomial toolkit


@lru_cache(maxsize=None)
def s_ell(ell: int, n: int) -> int:
    """``sum_{i=0}^{floor(n/2)} C(n-2i, ell)``."""
    if ell < 0 or n < 0:
        raise OutOfRange("ell and n must be nonnegative")
    return sum(comb(n - 2 * i, ell) for i in range(n // 2 + 1))


def _s_main(ell: int, n: int) -> Fraction:
    total = Fraction(comb(n + 1, ell + 1), 2)
    total += Fraction(1, 4) * sum(Fraction(-1, 2) ** i * comb(n + 1, ell - i) for i in range(ell))
    return total


def s_closed(ell: int, n: int, rounded: bool = False) -> int:
    """Closed forms for ``s_ell(n)``.

    Default: the main term plus ``(-1)^ell / 2^(ell+1)`` for even ``n``.
    With ``rounded``: the ceiling (even ``ell``) or floor (odd ``ell``) of the main term.
    """
    if ell < 0 or n < 0:
        raise OutOfRange("ell and n must be nonnegative")
    main = _s_main(ell, n)
    if rounded:
        value = Fraction(ceil(main) if ell % 2 == 0 else floor(main))
    else:
        value = main + (Fraction((-1) ** ell, 2 ** (ell + 1)) if n % 2 == 0 else 0)
    if value.denominator != 1:
        raise IdentityViolation(f"closed form for s_{ell}({n}) is not an integer: {value}")
    return value.numerator


def verify_binomial_identities(n_max: int, ell_max: int = 6) -> VerificationReport:
    report = VerificationReport()
    for n in range(n_max + 1):
        lhs = sum((n - 2 * i) ** 2 for i in range(n // 2 + 1))
        report.add(f"Σ(n-2i)^2 = C(n+2,3) n={n}", lhs == comb(n + 2, 3))
        lhs = sum((n - i) ** 2 for i in range(n + 1))
        report.add(f"Σ(n-i)^2 = C(n+2,3)+C(n+1,3) n={n}", lhs == comb(n + 2, 3) + comb(n + 1, 3))
        for ell in range(ell_max + 1):
            tag = f"n={n} ell={ell}"
            report.add(f"hockey stick {tag}", sum(comb(i, ell) for i in range(n + 1)) == comb(n + 1, ell + 1))
            report.add(
                f"s_(l+1)(n+1)+s_(l+1)(n)=C(n+2,l+2) {tag}",
                s_ell(ell + 1, n + 1) + s_ell(ell + 1, n) == comb(n + 2, ell + 2),
            )
            report.add(
                f"s_(l+1)(n+1)-s_(l+1)(n)=s_l(n) {tag}",
                s_ell(ell + 1, n + 1) - s_ell(ell + 1, n) == s_ell(ell, n),
            )
            report.add(f"s closed form {tag}", s_ell(ell, n) == s_closed(ell, n))
            report.add(f"s rounded closed form {tag}", s_ell(ell, n) == s_closed(ell, n, rounded=True))
    return report


# ---------------------------------------------------------------------------
# dimension formula and block structures


def _floor_poly(n: int) -> int:
    """``floor(C(n,4)/2 + C(n,3)/4 - C(n,2)/8 + C(n,1)/16)``."""
    return floor(
        Fraction(comb(n, 4), 2) + Fraction(comb(n, 3), 4) - Fraction(comb(n, 2), 8) + Fraction(comb(n, 1), 16)
    )


def formula_case(D: int, k: int) -> str:
    _check_dk(D, k)
    if 3 * k < D:
        return "i"
    if 2 * k < D:
        return "ii"
    if 2 * k == D:
        return "iii"
    if 3 * k <= 2 * D:
        return "iv"
    return "v"


def terwilliger_dim_formula(D: int, k: int) -> int:
    case = formula_case(D, k)
    if case == "i":
        return comb(k + 3, 4) + _floor_poly(k + 4)
    if case == "ii":
        return comb(k + 3, 4) + _floor_poly(k + 4) - _floor_poly(3 * k - D + 3)
    if case == "iii":
        return _floor_poly(D // 2 + 4)
    if case == "iv":
        return comb(D - k + 3, 4) + _floor_poly(D - k + 4) - _floor_poly(2 * D - 3 * k + 3)
    return comb(D - k + 3, 4) + _floor_poly(D - k + 4)


def _box(D: int):
    return ((i, j) for i in range(D + 1) for j in range(D + 1))


def proposition_index_sets(D: int, k: int) -> dict:
    """The index sets and block-size rules for ``1 <= k <= D/2``.

    Returns ``{"I": [...], "II": [...], "III": [...]}`` as lists of
    ``((i, j), block_size)``. For ``k = D/2`` everything is under ``"I"``.
    """
    _check_dk(D, k)
    if 2 * k > D:
        raise OutOfRange("index sets are stated for k <= D/2")
    h = Fraction(k, 2)
    sets = {"I": [], "II": [], "III": []}
    if 2 * k == D:
        for i, j in _box(D):
            if 0 <= i <= j <= Fraction(D, 4):
                sets["I"].append(((i, j), D // 2 - 2 * j + 1))
        return sets
    for i, j in _box(D):
        if 0 <= i <= j <= h:
            sets["I"].append(((i, j), k - 2 * j + 1))
    if 3 * k < D:
        for i, j in _box(D):
            if (0 <= j < i <= h) or (h < i <= k and 0 <= j <= k - i):
                sets["II"].append(((i, j), k - i - j + 1))
        return sets
    if 5 * k < 2 * D:
        for i, j in _box(D):
            if (
                (0 <= j < i <= h)
                or (h < i <= D - 2 * k and 0 <= j <= k - i)
                or (D - 2 * k < i <= Fraction(D - k, 2) and 2 * k - D + i <= j <= k - i)
            ):
                sets["II"].append(((i, j), k - i - j + 1))
    else:
        for i, j in _box(D):
            if (
                (0 <= j < i <= D - 2 * k)
                or (D - 2 * k < i <= h and 2 * k - D + i <= j < i)
                or (h < i <= Fraction(D - k, 2) and 2 * k - D + i <= j <= k - i)
            ):
                sets["II"].append(((i, j), k - i - j + 1))
    for i, j in _box(D):
        if 0 <= j < 2 * k - D + i <= Fraction(3 * k - D, 2):
            sets["III"].append(((i, j), D - k - 2 * i + 1))
    return sets


@dataclass(frozen=True)
class ItoIndexSets:
    I: tuple
    I_I: tuple
    I_II: tuple
    I_III: tuple


def ito_index_sets(D: int, k: int) -> ItoIndexSets:
    _check_dk(D, k)
    full = tuple(
        (i, j)
        for i, j in _box(D)
        if i <= Fraction(k, 2) and j <= min(Fraction(k), Fraction(D - k, 2)) and i + j <= k
    )
    return ItoIndexSets(
        full,
        tuple(p for p in full if p[1] <= p[0]),
        tuple(p for p in full if 0 < p[1] - p[0] <= D - 2 * k),
        tuple(p for p in full if D - 2 * k < p[1] - p[0]),
    )


def ito_blocks(D: int, k: int) -> tuple:
    _check_dk(D, k)
    if 2 * k > D:
        k = D - k
    if 2 * k == D:
        return tuple(
            sorted((D // 2 - 2 * i + 1 for i in range(D // 4 + 1) for _ in range(i + 1)), reverse=True)
        )
    s = ito_index_sets(D, k)
    sizes = [k - 2 * i + 1 for i, _ in s.I_I]
    sizes += [k - i - j + 1 for i, j in s.I_II]
    sizes += [D - k - 2 * j + 1 for _, j in s.I_III]
    return tuple(sorted(sizes, reverse=True))


def blocks_report(D: int, k: int) -> tuple[tuple, VerificationReport]:
    """Block sizes from the case-wise index sets, cross-checked two other ways."""
    _check_dk(D, k)
    kk = min(k, D - k)
    sets = proposition_index_sets(D, kk)
    blocks = tuple(sorted((size for part in sets.values() for _, size in part), reverse=True))
    report = VerificationReport()
    if 2 * kk < D:
        pairs = [p for part in sets.values() for p, _ in part]
        report.add("index sets partition P(k)", sorted(pairs) == sorted(p_index_set(D, kk)))
        ito = ito_index_sets(D, kk)
        for name, I_part in (("I", ito.I_I), ("II", ito.I_II), ("III", ito.I_III)):
            swapped = sorted((j, i) for i, j in I_part)
            report.add(f"(i,j)->(j,i) maps I_{name} onto P_{name}", swapped == sorted(p for p, _ in sets[name]))
    report.add("matches Ito block list", blocks == ito_blocks(D, kk), f"{ito_blocks(D, kk)}")
    profile = slice_decomposition_profile(D, kk)
    report.add("matches slice profile", blocks == profile.block_dims, f"{profile.block_dims}")
    return blocks, report


def terwilliger_blocks(D: int, k: int) -> tuple:
    blocks, report = blocks_report(D, k)
    report.raise_if_failed()
    return blocks
