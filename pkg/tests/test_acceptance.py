"""The nine acceptance criteria, each checked exactly (zero tolerance).

Every test records a one-line verdict in ``RESULTS``; the conftest hook
prints them as PASS/FAIL lines at the end of the run. Running this file
directly also prints them.
"""

from fractions import Fraction
from math import comb

from sl2hahn.exactarith import RepMatrix
from sl2hahn.hahn import check_hahn_relations, classify_hahn_rep, natural_images
from sl2hahn.johnson import (
    blocks_report,
    default_anchor,
    random_anchor,
    terwilliger_dim_bruteforce,
    terwilliger_dim_formula,
    verify_binomial_identities,
    verify_T_equals_H_image,
)
from sl2hahn.latticedecomp import (
    build_subset_lattice,
    iso_orbit,
    lattice_decomposition,
    slice_decomposition_profile,
    split_by_anchor,
    verify_weight_module,
    weight_module,
    weight_module_descriptor,
)
from sl2hahn.sl2rep import build_Ln, build_tensor_rep, casimir_scalar, clebsch_gordan_spectrum

RESULTS: dict = {}
SEED = 2024


def record(number: int, title: str, failures: list) -> None:
    status = "PASS" if not failures else "FAIL"
    detail = "" if not failures else f" ({len(failures)} failures, first: {failures[0]})"
    RESULTS[number] = f"{status} criterion {number}: {title}{detail}"
    assert not failures, RESULTS[number]


def test_criterion_1_hahn_homomorphism():
    failures = []
    for m in range(5):
        for n in range(5):
            report = check_hahn_relations(natural_images(build_tensor_rep(m, n)))
            failures += [(m, n, c.name) for c in report.failures()]
    record(1, "Hahn relations and central images on L_m⊗L_n, m,n ≤ 4", failures)


def test_criterion_2_casimir_scalars():
    failures = []
    for n in range(13):
        L = build_Ln(n)
        if L.Lambda != casimir_scalar(n) * RepMatrix.identity(n + 1) or not L.relations().passed:
            failures.append(n)
    record(2, "Casimir acts as n(n+2)/2 on L_n, n ≤ 12", failures)


def test_criterion_3_clebsch_gordan():
    failures = []
    for m in range(7):
        for n in range(7):
            spectrum = clebsch_gordan_spectrum(build_tensor_rep(m, n))
            mismatched = {lam: v for lam, v in spectrum.items() if v[0] != v[1]}
            if mismatched or sum(obs for _, obs in spectrum.values()) != (m + 1) * (n + 1):
                failures.append((m, n, mismatched))
    record(3, "Casimir spectra of L_m⊗L_n, m,n ≤ 6", failures)


def test_criterion_4_weight_space_isomorphisms():
    failures = []
    for m in range(6):
        for n in range(6):
            for ell in range(m + n + 1):
                report = verify_weight_module(m, n, ell)
                dim = min(m, ell) + min(n, ell) - ell + 1
                h, _ = weight_module(m, n, ell)
                if not report.passed or h.dim != dim:
                    failures.append((m, n, ell, [c.name for c in report.failures()]))
    record(4, "intertwiner V_d(a,b) → weight space built and invertible, m,n ≤ 5", failures)


def test_criterion_5_isomorphism_criterion():
    triples = [(m, n, l) for m in range(6) for n in range(6) for l in range(m + n + 1)]
    classes = {t: classify_hahn_rep(weight_module(*t)[0]) for t in triples}
    failures = []
    for s in triples:
        if classes[s] != weight_module_descriptor(*s).key:
            failures.append((s, "classification differs from descriptor"))
        orbit = iso_orbit(*s)
        for t in triples:
            if (classes[s] == classes[t]) != (t in orbit):
                failures.append((s, t))
    record(5, "equal canonical parameters iff same orbit, all triples with m,n ≤ 5", failures)


def test_criterion_6_terwilliger_dimensions():
    failures = []
    for D in range(2, 9):
        for k in range(1, D):
            brute = terwilliger_dim_bruteforce(D, k)
            formula = terwilliger_dim_formula(D, k)
            blocks, report = blocks_report(D, k)
            profile = slice_decomposition_profile(D, min(k, D - k)).wedderburn_dim
            values = (brute, formula, sum(b * b for b in blocks), profile)
            if len(set(values)) != 1 or not report.passed:
                failures.append((D, k, values))
    named = {(2, 1): 4, (4, 2): 11, (7, 2): 16, (8, 4): 46}
    for (D, k), want in named.items():
        if terwilliger_dim_bruteforce(D, k) != want:
            failures.append((D, k, "named value", want))
    record(6, "closure = formula = Σ block² = profile, 2 ≤ D ≤ 8", failures)


def _second_anchor(D: int, k: int) -> int:
    seed = SEED
    while True:
        x0 = random_anchor(D, k, seed)
        if x0 != default_anchor(k):
            return x0
        seed += 1


def test_criterion_7_T_equals_H_image():
    failures = []
    for D in range(2, 8):
        for k in range(1, D):
            for x0 in (default_anchor(k), _second_anchor(D, k)):
                if not verify_T_equals_H_image(D, k, x0):
                    failures.append((D, k, x0))
    record(7, "T(x0) equals the Hahn image on every slice, D ≤ 7, two anchors", failures)


def test_criterion_8_binomial_layer():
    report = verify_binomial_identities(40, 6)
    record(8, "binomial sums, closed forms and recurrences, ℓ ≤ 6, n ≤ 40", [c.name for c in report.failures()])


def test_criterion_9_lattice_layer():
    failures = []
    for D in range(7):
        rep = build_subset_lattice(D)
        for mask in range(1 << D):
            split = split_by_anchor(rep, mask)
            failures += [(D, mask, c.name) for c in split.report.failures()]
    for D in range(11):
        _, report = lattice_decomposition(D, spectrum_cap=6)
        failures += [(D, c.name) for c in report.failures()]
        total = sum(
            Fraction(D - 2 * i + 1, D - i + 1) * comb(D, i) * (D - 2 * i + 1) for i in range(D // 2 + 1)
        )
        if total != 2 ** D:
            failures.append((D, "Σ m_i(D)(D-2i+1)", total))
    record(9, "ι(x0) intertwines on all anchors D ≤ 6, Σ m_i = 2^D for D ≤ 10, anchored A,B formulas", failures)


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion")]
    for t in tests:
        try:
            t()
        except AssertionError:
            pass
    for n in sorted(RESULTS):
        print(RESULTS[n])
    sys.exit(0 if all(r.startswith("PASS") for r in RESULTS.values()) else 1)
