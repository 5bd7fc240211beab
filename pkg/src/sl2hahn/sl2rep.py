"""Finite-dimensional sl2 modules as explicit matrices.

``L_n`` has basis ``v_0..v_n`` with ``E v_i = i v_{i-1}``,
``F v_i = (n-i) v_{i+1}`` and ``H v_i = (n-2i) v_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .checks import VerificationReport
from .errors import IdentityViolation, OutOfRange
from .exactarith import RepMatrix, as_rational, commutator, eigenspace_basis, kron


@dataclass(frozen=True)
class Sl2Action:
    """Images of E, F, H and the Casimir element on some module."""

    E: RepMatrix
    F: RepMatrix
    H: RepMatrix
    Lambda: RepMatrix
    n: int | None = None

    @property
    def dim(self) -> int:
        return self.H.rows

    def relations(self) -> VerificationReport:
        rep = VerificationReport()
        rep.add_equal("[H,E]=2E", commutator(self.H, self.E), 2 * self.E)
        rep.add_equal("[H,F]=-2F", commutator(self.H, self.F), -2 * self.F)
        rep.add_equal("[E,F]=H", commutator(self.E, self.F), self.H)
        return rep


def casimir_matrix(E: RepMatrix, F: RepMatrix, H: RepMatrix) -> RepMatrix:
    """``EF + FE + H^2/2``."""
    return E @ F + F @ E + (H @ H) / 2


def build_Ln(n: int) -> Sl2Action:
    if n < 0:
        raise OutOfRange(f"highest weight must be nonnegative, got {n}")
    size = n + 1
    E = RepMatrix.from_entries(size, size, {(i - 1, i): i for i in range(1, size)})
    F = RepMatrix.from_entries(size, size, {(i + 1, i): n - i for i in range(n)})
    H = RepMatrix.diag([n - 2 * i for i in range(size)])
    return Sl2Action(E, F, H, casimir_matrix(E, F, H), n)


@dataclass(frozen=True)
class TensorRep:
    """The module ``V ⊗ W`` with basis ``v_i ⊗ w_j`` in i-major order.

    ``first`` holds the operators ``X⊗1``, ``second`` holds ``1⊗X`` and
    ``delta`` holds the comultiplication images ``X⊗1 + 1⊗X``.
    """

    left: Sl2Action
    right: Sl2Action
    first: Sl2Action
    second: Sl2Action
    delta: Sl2Action

    @property
    def m(self):
        return self.left.n

    @property
    def n(self):
        return self.right.n

    @property
    def dim(self) -> int:
        return self.delta.dim

    @property
    def dE(self):
        return self.delta.E

    @property
    def dF(self):
        return self.delta.F

    @property
    def dH(self):
        return self.delta.H

    @property
    def dLambda(self):
        return self.delta.Lambda

    def E_F(self) -> RepMatrix:
        """``E⊗F``."""
        return self.first.E @ self.second.F

    def F_E(self) -> RepMatrix:
        """``F⊗E``."""
        return self.first.F @ self.second.E


def tensor_actions(left: Sl2Action, right: Sl2Action) -> TensorRep:
    """Tensor two modules and pull back along the comultiplication.

    The Casimir image is computed from the definition and also from its
    expansion ``Λ⊗1 + 1⊗Λ + H⊗H + 2(E⊗F + F⊗E)``; the two must agree.
    """
    I_l = RepMatrix.identity(left.dim)
    I_r = RepMatrix.identity(right.dim)

    def lift1(X):
        return kron(X, I_r)

    def lift2(X):
        return kron(I_l, X)

    first = Sl2Action(lift1(left.E), lift1(left.F), lift1(left.H), lift1(left.Lambda))
    second = Sl2Action(lift2(right.E), lift2(right.F), lift2(right.H), lift2(right.Lambda))
    dE = first.E + second.E
    dF = first.F + second.F
    dH = first.H + second.H
    dLambda = casimir_matrix(dE, dF, dH)
    expanded = (
        first.Lambda
        + second.Lambda
        + first.H @ second.H
        + 2 * (first.E @ second.F + first.F @ second.E)
    )
    if dLambda != expanded:
        raise IdentityViolation("Casimir of the tensor product disagrees with its expansion")
    delta = Sl2Action(dE, dF, dH, dLambda)
    return TensorRep(left, right, first, second, delta)


def build_tensor_rep(m: int, n: int) -> TensorRep:
    return tensor_actions(build_Ln(m), build_Ln(n))


def comultiplication_identities(rep: TensorRep) -> VerificationReport:
    """The five identities relating the Casimir of a tensor product to the factors."""
    one, two = rep.first, rep.second
    L = rep.dLambda
    EF = rep.E_F()
    FE = rep.F_E()
    I = RepMatrix.identity(rep.dim)
    report = VerificationReport()
    report.add_equal(
        "Casimir expansion",
        L,
        one.Lambda + two.Lambda + one.H @ two.H + 2 * (EF + FE),
    )
    # [E⊗F, 1⊗H] = E⊗[F,H] = 2E⊗F fixes these signs
    report.add_equal("[ΔΛ,1⊗H]/4 = E⊗F - F⊗E", commutator(L, two.H) / 4, EF - FE)
    report.add_equal("[ΔΛ,H⊗1]/4 = F⊗E - E⊗F", commutator(L, one.H) / 4, FE - EF)
    report.add_equal(
        "[ΔΛ,E⊗F]/2",
        commutator(L, EF) / 2,
        EF @ (two.H - one.H - 2 * I) - one.H @ (two.E @ two.F) + (one.E @ one.F) @ two.H,
    )
    report.add_equal(
        "[ΔΛ,F⊗E]/2",
        commutator(L, FE) / 2,
        FE @ (one.H - two.H - 2 * I) + one.H @ (two.F @ two.E) - (one.F @ one.E) @ two.H,
    )
    for name, X in (("ΔE", rep.dE), ("ΔF", rep.dF), ("ΔH", rep.dH)):
        report.add_equal(f"ΔΛ commutes with {name}", L @ X, X @ L)
    return report


def weight_space(rep: TensorRep, theta) -> tuple:
    """Echelon basis of the ``Δ(H)``-eigenspace for ``theta``."""
    return eigenspace_basis(rep.dH, as_rational(theta))


def casimir_scalar(n: int) -> Fraction:
    return Fraction(n * (n + 2), 2)


def clebsch_gordan_spectrum(rep: TensorRep) -> dict:
    """Observed multiplicity of each predicted Casimir eigenvalue.

    Returns ``{eigenvalue: (predicted, observed)}``.
    """
    m, n = rep.m, rep.n
    out = {}
    for p in range(min(m, n) + 1):
        top = m + n - 2 * p
        lam = casimir_scalar(top)
        observed = len(eigenspace_basis(rep.dLambda, lam))
        out[lam] = (top + 1, observed)
    return out


def clebsch_gordan_summands(m: int, n: int, verify: bool = True) -> tuple[int, ...]:
    """Highest weights ``m+n, m+n-2, ..., |m-n|`` of the summands of ``L_m ⊗ L_n``.

    With ``verify`` the Casimir spectrum of the actual tensor product is
    checked against the prediction; the predicted eigenspaces must fill the space.
    """
    if m < 0 or n < 0:
        raise OutOfRange("highest weights must be nonnegative")
    summands = tuple(m + n - 2 * p for p in range(min(m, n) + 1))
    if verify:
        rep = build_tensor_rep(m, n)
        spectrum = clebsch_gordan_spectrum(rep)
        total = sum(obs for _, obs in spectrum.values())
        if any(pred != obs for pred, obs in spectrum.values()) or total != rep.dim:
            raise IdentityViolation(f"Clebsch-Gordan spectrum mismatch for ({m},{n}): {spectrum}")
    return summands
