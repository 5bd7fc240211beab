"""The universal Hahn algebra on explicit modules.

The algebra has generators ``A, B, C`` with ``[A,B] = C`` and two central
elements ``alpha = [C,A] + 2A^2 + B`` and ``beta = [B,C] + 4BA + 2C``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .checks import VerificationReport
from .errors import NonRationalParameter, OutOfRange, PreconditionViolated, ShapeMismatch
from .exactarith import (
    RepMatrix,
    as_rational,
    commutator,
    eigenspace_basis,
    format_rational,
    rational_sqrt,
    restrict,
)
from .sl2rep import TensorRep


@dataclass(frozen=True)
class HahnRep:
    A: RepMatrix
    B: RepMatrix
    C: RepMatrix
    alpha: RepMatrix
    beta: RepMatrix

    @property
    def dim(self) -> int:
        return self.A.rows

    def restrict(self, basis: Sequence[Sequence]) -> "HahnRep":
        """The same action on an invariant subspace given by an RREF basis."""
        return HahnRep(*(restrict(M, basis) for M in (self.A, self.B, self.C, self.alpha, self.beta)))


def alpha_expr(A: RepMatrix, B: RepMatrix, C: RepMatrix) -> RepMatrix:
    return commutator(C, A) + 2 * (A @ A) + B


def beta_expr(A: RepMatrix, B: RepMatrix, C: RepMatrix) -> RepMatrix:
    return commutator(B, C) + 4 * (B @ A) + 2 * C


def hahn_from_AB(A: RepMatrix, B: RepMatrix) -> HahnRep:
    """Complete a pair ``(A, B)`` by ``C = [A,B]`` and the two central expressions."""
    C = commutator(A, B)
    return HahnRep(A, B, C, alpha_expr(A, B, C), beta_expr(A, B, C))


def natural_images(rep: TensorRep) -> HahnRep:
    """Images of ``A, B, C, alpha, beta`` under the map into ``U(sl2) ⊗ U(sl2)``."""
    one, two = rep.first, rep.second
    dH = rep.dH
    A = (one.H - two.H) / 4
    B = rep.dLambda / 2
    C = rep.E_F() - rep.F_E()
    alpha = (one.Lambda + two.Lambda) / 2 + (dH @ dH) / 8
    beta = ((one.Lambda - two.Lambda) @ dH) / 2
    return HahnRep(A, B, C, alpha, beta)


def check_hahn_relations(h: HahnRep) -> VerificationReport:
    """Check ``[A,B]=C``, that ``alpha``/``beta`` match their defining
    expressions, and that both commute with ``A``, ``B``, ``C``.

    Failures are recorded, not raised.
    """
    report = VerificationReport()
    report.add_equal("[A,B]=C", commutator(h.A, h.B), h.C)
    report.add_equal("[C,A]+2A^2+B=alpha", alpha_expr(h.A, h.B, h.C), h.alpha)
    report.add_equal("[B,C]+4BA+2C=beta", beta_expr(h.A, h.B, h.C), h.beta)
    zero = RepMatrix.zeros(h.dim)
    for cname, Z in (("alpha", h.alpha), ("beta", h.beta)):
        for gname, X in (("A", h.A), ("B", h.B), ("C", h.C)):
            report.add_equal(f"[{cname},{gname}]=0", commutator(Z, X), zero)
    return report


@dataclass(frozen=True)
class VdParams:
    a: Fraction
    b: Fraction
    d: int
    theta: tuple
    theta_star: tuple
    phi: tuple  # phi[0] is φ_1
    eta: Fraction
    eta_star: Fraction

    def phi_at(self, i: int) -> Fraction:
        """``φ_i`` for ``1 <= i <= d``; zero outside that range."""
        if 1 <= i <= self.d:
            return self.phi[i - 1]
        return Fraction(0)

    @property
    def key(self) -> tuple:
        return (self.a, self.b, self.d)


def vd_params(a, b, d: int) -> VdParams:
    if d < 0:
        raise OutOfRange(f"d must be nonnegative, got {d}")
    a, b = as_rational(a), as_rational(b)
    theta = tuple((a + d) / 2 - i for i in range(d + 1))
    theta_star = tuple((b + i) * (b + i + 1) for i in range(d + 1))
    phi = tuple(i * (i - d - 1) * (a - b - i) for i in range(1, d + 1))
    eta = (a * a + d * (d + 2)) / 2 + b * (b + d + 1)
    eta_star = 2 * a * b * (b + d + 1)
    return VdParams(a, b, d, theta, theta_star, phi, eta, eta_star)


def build_vd(a, b, d: int) -> tuple[VdParams, RepMatrix, RepMatrix]:
    """``V_d(a,b)``: A upper bidiagonal, B lower bidiagonal on ``v_0..v_d``."""
    p = vd_params(a, b, d)
    size = d + 1
    A = {(i, i): p.theta[i] for i in range(size)}
    A.update({(i - 1, i): p.phi_at(i) for i in range(1, size)})
    B = {(i, i): p.theta_star[i] for i in range(size)}
    B.update({(i + 1, i): 1 for i in range(d)})
    return p, RepMatrix.from_entries(size, size, A), RepMatrix.from_entries(size, size, B)


def vd_irreducible(a, b, d: int) -> bool:
    a, b = as_rational(a), as_rational(b)
    forbidden = set(range(1, d + 1))
    return (a - b) not in forbidden and (-a - b) not in forbidden


def canonical_b(b, d: int) -> Fraction:
    """Pick the root in ``{b, -b-d-1}`` that is at most ``-(d+1)/2``."""
    b = as_rational(b)
    other = -b - d - 1
    return min(b, other)


def classify_module(A: RepMatrix, B: RepMatrix, eta) -> tuple[Fraction, Fraction, int]:
    """Canonical ``(a, b, d)`` of an irreducible module given by ``(A, B)``.

    ``eta`` is the scalar by which ``alpha`` acts. ``b`` is the root of
    ``x^2 + (d+1)x + (a^2 + d(d+2))/2 - eta`` lying at or below ``-(d+1)/2``.
    """
    if not A.is_square() or A.shape != B.shape:
        raise ShapeMismatch("A and B must be square of the same size")
    eta = as_rational(eta)
    d = A.rows - 1
    if d < 0:
        raise ShapeMismatch("empty module")
    a = 2 * A.trace() / (d + 1)
    const = (a * a + d * (d + 2)) / 2 - eta
    disc = (d + 1) ** 2 - 4 * const
    root = rational_sqrt(disc)
    if root is None:
        raise NonRationalParameter(f"discriminant {format_rational(disc)} is not a rational square")
    b = (-(d + 1) - root) / 2
    return a, b, d


def classify_hahn_rep(h: HahnRep) -> tuple[Fraction, Fraction, int]:
    """Classify using the scalar by which ``alpha`` acts; it must be scalar."""
    eta = h.alpha.scalar_value()
    if eta is None:
        raise PreconditionViolated("alpha does not act as a scalar")
    return classify_module(h.A, h.B, eta)


def intertwiner_from_vd(
    p: VdParams, targetA: RepMatrix, targetB: RepMatrix, seed: Sequence
) -> RepMatrix:
    """Matrix of the homomorphism ``V_d(a,b) -> target`` sending ``v_0`` to ``seed``.

    The image of ``v_{i+1}`` is ``(B - θ*_i)`` applied to the image of ``v_i``.
    The universal-property hypotheses on ``seed`` and on the spectrum of
    ``targetA`` are checked exactly first.
    """
    seed = tuple(as_rational(v) for v in seed)
    if not targetA.is_square() or targetA.shape != targetB.shape or len(seed) != targetA.rows:
        raise ShapeMismatch("target operators and seed have inconsistent sizes")
    target = hahn_from_AB(targetA, targetB)
    Av = targetA.apply(seed)
    if Av != tuple(p.theta[0] * v for v in seed):
        raise PreconditionViolated("seed is not an A-eigenvector for θ_0")
    if p.d >= 1:
        I = RepMatrix.identity(targetA.rows)
        lhs = ((targetA - p.theta[1] * I) @ (targetB - p.theta_star[0] * I)).apply(seed)
        if lhs != tuple(p.phi[0] * v for v in seed):
            raise PreconditionViolated("(A-θ_1)(B-θ*_0) does not act on seed as φ_1")
    if target.alpha.apply(seed) != tuple(p.eta * v for v in seed):
        raise PreconditionViolated("alpha does not act on seed as η")
    if target.beta.apply(seed) != tuple(p.eta_star * v for v in seed):
        raise PreconditionViolated("beta does not act on seed as η*")
    if eigenspace_basis(targetA, (p.a - p.d) / 2 - 1):
        raise PreconditionViolated("(a-d)/2 - 1 is an eigenvalue of A on the target")
    columns = [seed]
    for i in range(p.d):
        prev = columns[-1]
        Bv = targetB.apply(prev)
        columns.append(tuple(x - p.theta_star[i] * y for x, y in zip(Bv, prev)))
    return RepMatrix.from_columns(columns)
