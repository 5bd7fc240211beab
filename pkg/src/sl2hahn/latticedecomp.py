"""Weight-space modules of ``L_m ⊗ L_n`` and the subset-lattice module.

Subsets of ``{0, ..., D-1}`` are encoded as bitmasks, and the lattice basis
is ordered by bitmask value.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable

from .checks import VerificationReport
from .errors import IdentityViolation, InvalidAnchor, OutOfRange, SizeCapExceeded
from .exactarith import RepMatrix, eigenspace_basis, rank
from .hahn import (
    HahnRep,
    build_vd,
    canonical_b,
    check_hahn_relations,
    classify_hahn_rep,
    intertwiner_from_vd,
    natural_images,
    vd_irreducible,
)
from .sl2rep import Sl2Action, build_tensor_rep, casimir_matrix, casimir_scalar, tensor_actions, weight_space

DEFAULT_LATTICE_CAP = 12


# ---------------------------------------------------------------------------
# weight spaces of L_m ⊗ L_n


@dataclass(frozen=True)
class WeightModuleDescriptor:
    m: int
    n: int
    ell: int
    a: Fraction
    b: Fraction
    d: int

    @property
    def dim(self) -> int:
        return self.d + 1

    @property
    def weight(self) -> int:
        return self.m + self.n - 2 * self.ell

    @property
    def key(self) -> tuple:
        """Canonical isomorphism-class label ``(a, b, d)``."""
        return (self.a, canonical_b(self.b, self.d), self.d)


def _check_mnl(m: int, n: int, ell: int) -> None:
    if m < 0 or n < 0:
        raise OutOfRange("m and n must be nonnegative")
    if not 0 <= ell <= m + n:
        raise OutOfRange(f"ell={ell} outside [0, {m + n}]")


def weight_module_descriptor(m: int, n: int, ell: int) -> WeightModuleDescriptor:
    _check_mnl(m, n, ell)
    mn, nn = min(m, ell), min(n, ell)
    a = Fraction(nn - mn) + Fraction(m - n, 2)
    b = -Fraction(m + n, 2) - 1
    d = mn + nn - ell
    return WeightModuleDescriptor(m, n, ell, a, b, d)


def iso_orbit(m: int, n: int, ell: int) -> frozenset:
    """The triples whose weight-space modules are isomorphic to this one."""
    _check_mnl(m, n, ell)
    return frozenset(
        {(m, n, ell), (m + n - ell, ell, n), (ell, m + n - ell, m), (n, m, m + n - ell)}
    )


@lru_cache(maxsize=None)
def _natural(m: int, n: int):
    rep = build_tensor_rep(m, n)
    return rep, natural_images(rep)


def weight_module(m: int, n: int, ell: int) -> tuple[HahnRep, tuple]:
    """The Hahn action on the weight space for ``m+n-2ell`` and its echelon basis."""
    _check_mnl(m, n, ell)
    rep, h = _natural(m, n)
    basis = weight_space(rep, m + n - 2 * ell)
    return h.restrict(basis), basis


def verify_weight_module(m: int, n: int, ell: int) -> VerificationReport:
    """Build the isomorphism from ``V_d(a,b)`` onto the weight space and check it.

    The seed is the first echelon basis vector, i.e. the weight vector
    ``v_{ell - min(n,ell)} ⊗ v_{min(n,ell)}``.
    """
    desc = weight_module_descriptor(m, n, ell)
    h, basis = weight_module(m, n, ell)
    report = VerificationReport()
    report.add("dimension", h.dim == desc.dim, f"{h.dim} vs {desc.dim}")
    report.add("V_d(a,b) irreducible", vd_irreducible(desc.a, desc.b, desc.d))
    p, A, B = build_vd(desc.a, desc.b, desc.d)
    report.add("alpha scalar", h.alpha.scalar_value() == p.eta)
    report.add("beta scalar", h.beta.scalar_value() == p.eta_star)
    try:
        key = classify_hahn_rep(h)
    except ValueError as exc:
        report.add("classification", False, str(exc))
    else:
        report.add("classification", key == desc.key, f"{key} vs {desc.key}")
    seed = [0] * h.dim
    seed[0] = 1
    try:
        M = intertwiner_from_vd(p, h.A, h.B, seed)
    except ValueError as exc:
        report.add("intertwiner built", False, str(exc))
        return report
    report.add("intertwiner built", True)
    report.add_equal("M A = A M", M @ A, h.A @ M)
    report.add_equal("M B = B M", M @ B, h.B @ M)
    report.add("intertwiner invertible", rank(M) == desc.dim)
    return report


# ---------------------------------------------------------------------------
# the subset lattice


def popcount(x: int) -> int:
    return bin(x).count("1")


def to_mask(subset, D: int) -> int:
    """Bitmask of an iterable of elements (an int is taken as a mask already)."""
    if isinstance(subset, int):
        mask = subset
        if mask < 0 or mask >> D:
            raise InvalidAnchor(f"mask {mask} is not a subset of a {D}-set")
        return mask
    mask = 0
    for e in subset:
        if not 0 <= e < D:
            raise InvalidAnchor(f"element {e} not in {{0..{D - 1}}}")
        mask |= 1 << e
    return mask


def mask_elements(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


@dataclass(frozen=True)
class SubsetLatticeRep:
    D: int
    action: Sl2Action
    anchor: int | None = None
    A: RepMatrix | None = None
    B: RepMatrix | None = None

    @property
    def E(self):
        return self.action.E

    @property
    def F(self):
        return self.action.F

    @property
    def H(self):
        return self.action.H

    @property
    def Lambda(self):
        return self.action.Lambda

    @property
    def size(self) -> int:
        return 1 << self.D

    def slice_indices(self, k: int) -> list[int]:
        return [x for x in range(self.size) if popcount(x) == k]


def _same_size_neighbours(x: int, D: int):
    """Subsets ``y`` with ``|y| = |x|`` and ``|x ∩ y| = |x| - 1``."""
    for out in range(D):
        if x >> out & 1:
            for into in range(D):
                if not x >> into & 1:
                    yield (x & ~(1 << out)) | (1 << into)


def lattice_lambda_formula(D: int) -> RepMatrix:
    """Casimir on the lattice from its closed form rather than from E, F, H."""
    entries = {}
    for x in range(1 << D):
        entries[(x, x)] = D + Fraction((D - 2 * popcount(x)) ** 2, 2)
        for y in _same_size_neighbours(x, D):
            entries[(y, x)] = 2
    return RepMatrix.from_entries(1 << D, 1 << D, entries)


def build_subset_lattice(D: int, cap: int = DEFAULT_LATTICE_CAP) -> SubsetLatticeRep:
    if D < 0:
        raise OutOfRange("D must be nonnegative")
    if D > cap:
        raise SizeCapExceeded(f"D={D} exceeds the lattice size cap {cap}")
    size = 1 << D
    E, F = {}, {}
    for x in range(size):
        for e in range(D):
            bit = 1 << e
            if x & bit:
                E[(x ^ bit, x)] = 1
            else:
                F[(x | bit, x)] = 1
    Em = RepMatrix.from_entries(size, size, E)
    Fm = RepMatrix.from_entries(size, size, F)
    Hm = RepMatrix.diag([D - 2 * popcount(x) for x in range(size)])
    Lam = casimir_matrix(Em, Fm, Hm)
    if Lam != lattice_lambda_formula(D):
        raise IdentityViolation(f"lattice Casimir disagrees with its closed form for D={D}")
    return SubsetLatticeRep(D, Sl2Action(Em, Fm, Hm, Lam))


def iota_map(D: int, x0) -> list[int]:
    """Index of ``(x \\ x0) ⊗ (x ∩ x0)`` in the tensor basis, for each subset ``x``.

    Both factors relabel their elements in increasing order.
    """
    mask = to_mask(x0, D)
    inside = mask_elements(mask)
    outside = [e for e in range(D) if not mask >> e & 1]
    width = len(inside)
    result = []
    for x in range(1 << D):
        left = sum(1 << pos for pos, e in enumerate(outside) if x >> e & 1)
        right = sum(1 << pos for pos, e in enumerate(inside) if x >> e & 1)
        result.append((left << width) | right)
    return result


def iota_matrix(D: int, x0) -> RepMatrix:
    perm = iota_map(D, x0)
    return RepMatrix.from_entries(len(perm), len(perm), {(t, x): 1 for x, t in enumerate(perm)})


def anchored_AB(D: int, x0) -> tuple[RepMatrix, RepMatrix]:
    """Closed-form actions of ``A`` and ``B`` on the lattice anchored at ``x0``."""
    mask = to_mask(x0, D)
    size = 1 << D
    A = RepMatrix.diag(
        [Fraction(D, 4) - Fraction(popcount(mask & ~x) + popcount(x & ~mask), 2) for x in range(size)]
    )
    entries = {}
    for x in range(size):
        entries[(x, x)] = Fraction(D, 2) + Fraction((D - 2 * popcount(x)) ** 2, 4)
        for y in _same_size_neighbours(x, D):
            entries[(y, x)] = 1
    return A, RepMatrix.from_entries(size, size, entries)


@dataclass(frozen=True)
class AnchorSplit:
    report: VerificationReport
    anchored: SubsetLatticeRep
    outer: SubsetLatticeRep  # lattice on Ω \ x0
    inner: SubsetLatticeRep  # lattice on x0
    natural: HahnRep  # ♮-images transported back to the lattice basis


def split_by_anchor(rep: SubsetLatticeRep, x0, cap: int = DEFAULT_LATTICE_CAP) -> AnchorSplit:
    """Check that ``ι(x0)`` intertwines X with Δ(X), and install ``A``, ``B``.

    The closed-form ``A``, ``B`` are compared with the ♮-images of the
    tensor product pulled back through ``ι(x0)``.
    """
    D = rep.D
    mask = to_mask(x0, D)
    k = popcount(mask)
    outer = build_subset_lattice(D - k, cap)
    inner = build_subset_lattice(k, cap)
    tensor = tensor_actions(outer.action, inner.action)
    P = iota_matrix(D, mask)
    Pt = P.transpose()
    report = VerificationReport()
    for name in ("E", "F", "H", "Lambda"):
        report.add_equal(f"ι X = Δ(X) ι for X={name}", P @ getattr(rep.action, name), getattr(tensor.delta, name) @ P)
    nat = natural_images(tensor)
    pulled = HahnRep(*(Pt @ M @ P for M in (nat.A, nat.B, nat.C, nat.alpha, nat.beta)))
    A, B = anchored_AB(D, mask)
    report.add_equal("closed-form A = pulled-back ♮(A)", A, pulled.A)
    report.add_equal("closed-form B = pulled-back ♮(B)", B, pulled.B)
    anchored = replace(rep, anchor=mask, A=A, B=B)
    return AnchorSplit(report, anchored, outer, inner, pulled)


def multiplicity_m(i: int, n: int) -> int:
    """Multiplicity of ``L_{n-2i}`` in the lattice module on an ``n``-set."""
    if n < 0 or not 0 <= i <= n // 2:
        raise OutOfRange(f"need 0 <= i <= n/2, got i={i}, n={n}")
    value = Fraction(n - 2 * i + 1, n - i + 1) * comb(n, i)
    if value.denominator != 1 or value < 0:
        raise IdentityViolation(f"m_{i}({n}) = {value} is not a nonnegative integer")
    return value.numerator


def lattice_decomposition(
    D: int, cap: int = DEFAULT_LATTICE_CAP, spectrum_cap: int = 8
) -> tuple[tuple[tuple[int, int], ...], VerificationReport]:
    """Summands ``(D-2i, m_i(D))`` of the lattice module, with checks.

    The dimension count is always checked. For ``D <= spectrum_cap`` the
    Casimir eigenspace dimensions are also measured, one ``|x| = k`` slice
    at a time (the Casimir preserves subset size, which is checked too).
    """
    if D < 0:
        raise OutOfRange("D must be nonnegative")
    if D > cap:
        raise SizeCapExceeded(f"D={D} exceeds the lattice size cap {cap}")
    table = tuple((D - 2 * i, multiplicity_m(i, D)) for i in range(D // 2 + 1))
    report = VerificationReport()
    total = sum(mult * (hw + 1) for hw, mult in table)
    report.add("Σ m_i(D)(D-2i+1) = 2^D", total == 1 << D, f"{total} vs {1 << D}")
    if D <= spectrum_cap:
        rep = build_subset_lattice(D, cap)
        L = rep.Lambda
        size_preserving = all(
            not L[r, c] or popcount(r) == popcount(c) for r in range(rep.size) for c in range(rep.size)
        )
        report.add("Casimir preserves subset size", size_preserving)
        observed = {hw: 0 for hw, _ in table}
        for k in range(D + 1):
            idx = rep.slice_indices(k)
            block = L.submatrix(idx, idx)
            for hw in observed:
                observed[hw] += len(eigenspace_basis(block, casimir_scalar(hw)))
        for hw, mult in table:
            report.add(
                f"Casimir eigenspace for L_{hw}",
                observed[hw] == mult * (hw + 1),
                f"{observed[hw]} vs {mult * (hw + 1)}",
            )
        report.add("eigenspaces fill the space", sum(observed.values()) == 1 << D)
    return table, report


# ---------------------------------------------------------------------------
# slices


def p_index_set(D: int, k: int) -> list[tuple[int, int]]:
    """Pairs ``(i, j)`` with ``0 <= i <= (D-k)/2`` and ``0 <= j <= min(D-k-i, k-i, k/2)``."""
    if not 0 <= k <= D:
        raise OutOfRange(f"need 0 <= k <= D, got k={k}, D={D}")
    pairs = []
    for i in range((D - k) // 2 + 1):
        top = min(D - k - i, k - i, k // 2)
        pairs.extend((i, j) for j in range(top + 1))
    return pairs


@dataclass(frozen=True)
class ProfileEntry:
    class_key: tuple
    multiplicity: int
    dim: int
    index_pairs: tuple


@dataclass(frozen=True)
class DecompositionProfile:
    D: int
    k: int
    entries: tuple

    @property
    def index_pairs(self) -> tuple:
        return tuple(e.index_pairs for e in self.entries)

    @property
    def total_dim(self) -> int:
        return sum(e.multiplicity * e.dim for e in self.entries)

    @property
    def block_dims(self) -> tuple:
        """Dimensions of the distinct classes, largest first."""
        return tuple(sorted((e.dim for e in self.entries), reverse=True))

    @property
    def wedderburn_dim(self) -> int:
        return sum(e.dim ** 2 for e in self.entries)


def slice_decomposition_profile(D: int, k: int) -> DecompositionProfile:
    """Isomorphism classes, multiplicities and dimensions in the ``|x| = k`` slice.

    Summands indexed by ``P(k)`` are grouped by canonical class key; only the
    pairs ``(i, j)``, ``(j, i)`` for ``k = D/2`` may share a class.
    """
    groups: dict[tuple, list] = {}
    for i, j in p_index_set(D, k):
        desc = weight_module_descriptor(D - k - 2 * i, k - 2 * j, k - i - j)
        mult = multiplicity_m(i, D - k) * multiplicity_m(j, k)
        groups.setdefault(desc.key, []).append(((i, j), mult, desc.dim))
    entries = []
    for key, members in groups.items():
        pairs = tuple(p for p, _, _ in members)
        dims = {dim for _, _, dim in members}
        if len(dims) != 1:
            raise IdentityViolation(f"class {key} has members of different dimensions")
        if len(pairs) > 1:
            swapped = len(pairs) == 2 and pairs[0] == pairs[1][::-1] and 2 * k == D
            if not swapped:
                raise IdentityViolation(f"unexpected isomorphic summands {pairs} for D={D}, k={k}")
        entries.append(ProfileEntry(key, sum(m for _, m, _ in members), dims.pop(), pairs))
    profile = DecompositionProfile(D, k, tuple(entries))
    if profile.total_dim != comb(D, k):
        raise IdentityViolation(f"slice dimension {profile.total_dim} != C({D},{k})")
    return profile


def verify_anchor_split(D: int, anchors: Iterable) -> VerificationReport:
    rep = build_subset_lattice(D)
    report = VerificationReport()
    for x0 in anchors:
        split = split_by_anchor(rep, x0)
        report.extend(split.report, prefix=f"x0={sorted(mask_elements(to_mask(x0, D)))}: ")
        report.extend(check_hahn_relations(split.natural), prefix="x0 relations: ")
    return report
