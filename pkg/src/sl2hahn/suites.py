"""Verification suites run by the command line front end.

Each suite turns library checks into :class:`CheckRecord` rows.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from math import comb

from .errors import OutOfRange
from .hahn import check_hahn_relations, classify_hahn_rep, natural_images
from .johnson import (
    DEFAULT_CLOSURE_CAP,
    blocks_report,
    compare_T_and_H_image,
    default_anchor,
    random_anchor,
    terwilliger_dim_bruteforce,
    terwilliger_dim_formula,
    verify_binomial_identities,
)
from .latticedecomp import (
    iso_orbit,
    lattice_decomposition,
    mask_elements,
    verify_anchor_split,
    verify_weight_module,
    weight_module,
    weight_module_descriptor,
)
from .report import CheckRecord, make_record
from .sl2rep import (
    build_Ln,
    build_tensor_rep,
    casimir_scalar,
    clebsch_gordan_spectrum,
    comultiplication_identities,
)

SUITES = ("sl2", "hahn", "decomp", "johnson")
ANCHOR_SPLIT_D_MAX = 6
T_EQUALS_H_D_MAX = 7


@dataclass(frozen=True)
class RunConfig:
    m_max: int = 4
    n_max: int = 4
    d_max: int = 8
    seed: int = 0
    cap: int = DEFAULT_CLOSURE_CAP
    timing: bool = True

    def validate(self) -> None:
        for name in ("m_max", "n_max", "d_max", "seed"):
            if getattr(self, name) < 0:
                raise OutOfRange(f"{name.replace('_', '-')} must be nonnegative")
        if self.cap < 1:
            raise OutOfRange("cap must be at least 1")

    def echo(self) -> dict:
        return asdict(self)


class _Recorder:
    def __init__(self, config: RunConfig):
        self.config = config
        self.records: list[CheckRecord] = []

    def run(self, check_id: str, params: dict, fn):
        """``fn`` returns ``(expected, actual, passed)``."""
        start = time.perf_counter()
        try:
            expected, actual, passed = fn()
        except Exception as exc:  # a crash inside a check is a failed check
            expected, actual, passed = "no error", f"{type(exc).__name__}: {exc}", False
        millis = round((time.perf_counter() - start) * 1000) if self.config.timing else 0
        self.records.append(make_record(check_id, params, expected, actual, passed, millis))


def _report_outcome(report):
    """Expected: how many identities were checked; actual: how many hold,
    followed by the names of any that fail."""
    total = len(report.checks)
    failed = [c.name for c in report.failures()]
    actual = str(total - len(failed)) + ("" if not failed else " (failed: " + "; ".join(failed) + ")")
    return total, actual, report.passed


def suite_sl2(config: RunConfig) -> list[CheckRecord]:
    rec = _Recorder(config)
    top = config.m_max + config.n_max
    for n in range(top + 1):
        def casimir(n=n):
            L = build_Ln(n)
            want = casimir_scalar(n)
            got = L.Lambda.scalar_value()
            return want, got if got is not None else "not scalar", got == want and L.relations().passed
        rec.run("sl2.casimir", {"n": n}, casimir)
    for m in range(config.m_max + 1):
        for n in range(config.n_max + 1):
            rec.run("sl2.comultiplication", {"m": m, "n": n},
                    lambda m=m, n=n: _report_outcome(comultiplication_identities(build_tensor_rep(m, n))))

            def cg_check(m=m, n=n):
                spectrum = clebsch_gordan_spectrum(build_tensor_rep(m, n))
                lams = sorted(spectrum)
                want = tuple(spectrum[x][0] for x in lams)
                got = tuple(spectrum[x][1] for x in lams)
                return want, got, want == got and sum(got) == (m + 1) * (n + 1)
            rec.run("sl2.clebsch_gordan", {"m": m, "n": n}, cg_check)
    return rec.records


def suite_hahn(config: RunConfig) -> list[CheckRecord]:
    rec = _Recorder(config)
    for m in range(config.m_max + 1):
        for n in range(config.n_max + 1):
            rec.run("hahn.relations", {"m": m, "n": n},
                    lambda m=m, n=n: _report_outcome(check_hahn_relations(natural_images(build_tensor_rep(m, n)))))
    return rec.records


def _triples(config: RunConfig):
    for m in range(config.m_max + 1):
        for n in range(config.n_max + 1):
            for ell in range(m + n + 1):
                yield m, n, ell


def suite_decomp(config: RunConfig) -> list[CheckRecord]:
    rec = _Recorder(config)
    triples = list(_triples(config))
    for m, n, ell in triples:
        desc = weight_module_descriptor(m, n, ell)

        def weight(m=m, n=n, ell=ell, desc=desc):
            report = verify_weight_module(m, n, ell)
            failed = [c.name for c in report.failures()]
            return desc.key, (desc.key if not failed else "failed: " + "; ".join(failed)), report.passed
        rec.run("decomp.weight_module", {"m": m, "n": n, "l": ell}, weight)

    # isomorphism criterion: classes computed from the matrices vs orbits
    classes = {}
    for t in triples:
        try:
            classes[t] = classify_hahn_rep(weight_module(*t)[0])
        except ValueError as exc:
            classes[t] = f"unclassified: {exc}"
    in_range = set(triples)
    for t in triples:
        def orbit(t=t):
            by_orbit = sorted(iso_orbit(*t) & in_range)
            by_class = sorted(u for u in triples if classes[u] == classes[t])
            return by_orbit, by_class, by_orbit == by_class
        rec.run("decomp.iso_criterion", {"m": t[0], "n": t[1], "l": t[2]}, orbit)

    for D in range(config.d_max + 1):
        def lattice(D=D):
            table, report = lattice_decomposition(D)
            return 1 << D, sum(mult * (hw + 1) for hw, mult in table), report.passed
        rec.run("decomp.lattice", {"D": D}, lattice)
    for D in range(1, min(config.d_max, ANCHOR_SPLIT_D_MAX) + 1):
        for k in range(D + 1):
            anchors = {default_anchor(k)}
            if 0 < k < D:
                anchors.add(random_anchor(D, k, config.seed))
            for x0 in sorted(anchors):
                rec.run("decomp.anchor_split", {"D": D, "anchor": _anchor_label(x0)},
                        lambda D=D, x0=x0: _report_outcome(verify_anchor_split(D, [x0])))
    return rec.records


def _anchor_label(mask: int) -> str:
    return "{" + ",".join(str(e) for e in mask_elements(mask)) + "}"


def suite_johnson(config: RunConfig) -> list[CheckRecord]:
    rec = _Recorder(config)
    for D in range(2, config.d_max + 1):
        for k in range(1, D):
            params = {"D": D, "k": k}

            def dim(D=D, k=k):
                formula = terwilliger_dim_formula(D, k)
                blocks, report = blocks_report(D, k)
                values = [formula, sum(b * b for b in blocks)]
                if comb(D, k) <= config.cap:
                    values.append(terwilliger_dim_bruteforce(D, k, cap=config.cap))
                return formula, tuple(values), report.passed and len(set(values)) == 1
            rec.run("johnson.dim", params, dim)
            if D <= T_EQUALS_H_D_MAX and comb(D, k) <= config.cap:
                for x0 in sorted({default_anchor(k), random_anchor(D, k, config.seed)}):
                    def t_eq_h(D=D, k=k, x0=x0):
                        T, Himg, report = compare_T_and_H_image(D, k, x0, config.cap)
                        return T.rank, Himg.rank, report.passed and T == Himg
                    rec.run("johnson.T_equals_H_image", {**params, "anchor": _anchor_label(x0)}, t_eq_h)
    rec.run("johnson.binomial", {"n_max": 40, "l_max": 6},
            lambda: _report_outcome(verify_binomial_identities(40, 6)))
    return rec.records


SUITE_FUNCS = {"sl2": suite_sl2, "hahn": suite_hahn, "decomp": suite_decomp, "johnson": suite_johnson}


def run_suite(name: str, config: RunConfig) -> list[CheckRecord]:
    names = SUITES if name == "all" else (name,)
    records = []
    for s in names:
        records.extend(SUITE_FUNCS[s](config))
    return sorted(records, key=CheckRecord.sort_key)
