"""Acceptance checks shared by ``liestoch verify`` and the test suite.

Each ``criterion_k`` returns a :class:`Criterion` holding individual
:class:`Check` results; nothing here raises on a failed comparison.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, sqrt

import numpy as np

from . import moments as mom
from .enumeration import enumerate_table, golden_table, table_checksums
from .moments import MomentSpec, chiral_first_moment, closed_form, direct_contraction, exact_moment
from .ratfunc import PoleError, laurent_coefficients
from .sampler import EnsembleSpec, draw, symplectic_form
from .spectra import catalan, empirical_moment, law_fit, reduced_spectrum, sample_spectra, summarize
from .targets import CHIRAL_FORMS, CLOSED_FORMS, MONTE_CARLO_CII, target

__all__ = ["Check", "Criterion", "CRITERIA", "run_criteria"]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"  [{'PASS' if self.passed else 'FAIL'}] {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class Criterion:
    number: int
    title: str
    time_limit: float
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def within_time(self) -> bool:
        return self.seconds <= self.time_limit

    @property
    def passed(self) -> bool:
        return self.within_time and all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def summary_line(self) -> str:
        failed = len(self.failures)
        status = "PASS" if self.passed else "FAIL"
        extra = f", {failed} failed" if failed else ""
        late = "" if self.within_time else f", over the {self.time_limit:.0f}s limit"
        return (f"criterion {self.number} [{status}] {self.title} "
                f"({len(self.checks)} checks{extra}, {self.seconds:.1f}s{late})")

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "time_limit": self.time_limit,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def _timed(number, title, limit, body, **kwargs) -> Criterion:
    crit = Criterion(number, title, limit)
    t0 = time.perf_counter()
    crit.checks = list(body(**kwargs))
    crit.seconds = time.perf_counter() - t0
    return crit


def _double_factorial_odd(m: int) -> int:
    out = 1
    for k in range(1, m + 1, 2):
        out *= k
    return out


# ---------------------------------------------------------------------------
# 1. count tables

TABLE_CASES = [("FU", n) for n in (2, 3, 4)] + [("FO", n) for n in (2, 3, 4)] + \
    [("FAI", n) for n in (2, 3, 4)] + [("FAII", n) for n in (2, 3, 4)] + \
    [("FAIII", n) for n in (1, 2, 3)] + [("FBDI", n) for n in (1, 2)]


def _caption_total(family: str, n: int):
    if family == "FU":
        return factorial(n) ** 2
    if family == "FO":
        return _double_factorial_odd(2 * n - 1) ** 2
    if family == "FAIII":
        return factorial(2 * n)
    return None


def _table_checks():
    for family, n in TABLE_CASES:
        t = enumerate_table(family, n)
        golden = golden_table(family, n)
        got = t.as_lists()
        if golden == got:
            yield Check(f"{family}_{n} cells", True, f"{len(got)}x{len(got[0])} table equal")
        else:
            diffs = [(r, c, got[r][c], golden[r][c]) for r in range(len(got)) for c in range(len(got[0]))
                     if got[r][c] != golden[r][c]]
            negated = all(g == -w for _, _, g, w in diffs) and len(diffs) == sum(
                1 for row in golden for v in row if v)
            note = "; enumerated table is the exact negative of the reference" if negated else ""
            yield Check(f"{family}_{n} cells", False,
                        f"{len(diffs)} cells differ, first (row {diffs[0][0]}, col {diffs[0][1]}) "
                        f"enumerated {diffs[0][2]} vs reference {diffs[0][3]}{note}")
        report = table_checksums(t)
        yield Check(f"{family}_{n} column sums", report["ok"], "; ".join(report["failures"]) or "closed-form column sums hold")
        expected = _caption_total(family, n)
        if expected is not None:
            yield Check(f"{family}_{n} total", t.total() == expected, f"{t.total()} vs {expected}")


def criterion_1() -> Criterion:
    return _timed(1, "count tables reproduce cell for cell", 60, _table_checks)


# ---------------------------------------------------------------------------
# 2. closed forms

def _compare_forms(label, got, want):
    ok = got == want
    detail = f"{got.factored()}" if ok else f"reconstructed {got.factored()} vs target {want.factored()}"
    return Check(label, ok, detail)


def _closed_form_checks():
    for (ens, q, n) in CLOSED_FORMS:
        letter = "m" if q == "trace" else "s"
        label = f"{letter}_{n}^{ens}"
        got = closed_form(ens, n, quantity=q)
        yield _compare_forms(label, got, target(ens, q, n))
    for (ens, q, n) in CHIRAL_FORMS:
        if ens == "CII":
            continue
        letter = "mu" if q == "shifted" else "m"
        variant = "shifted" if q == "shifted" else "reduced"
        for alpha in (Fraction(0), Fraction(1, 2)):
            got = closed_form(ens, n, quantity="trace", variant=variant, alpha=alpha)
            yield _compare_forms(f"{letter}_{n}^{ens} at alpha={alpha}", got, target(ens, q, n, alpha=alpha))


def criterion_2() -> Criterion:
    return _timed(2, "closed-form moments equal the target formulas", 300, _closed_form_checks)


# ---------------------------------------------------------------------------
# 3. table route against literal contraction

ORACLE_ENSEMBLES = ("U", "O", "AI", "AII", "AIII", "BDI")


def _oracle_cases():
    for ens in ORACLE_ENSEMBLES:
        for q in ("trace", "singular"):
            for n in (1, 2):
                if q == "singular" and ens in mom.SYMMETRIC and n == 2:
                    continue
                for N in range(1, 5):
                    if ens in mom.CHIRAL:
                        for a in range(N + 1):
                            yield ens, q, n, {"a": a, "b": N - a}
                    else:
                        yield ens, q, n, {"N": N}


def _value_or_pole(fn):
    try:
        return fn()
    except PoleError:
        return "pole"


def _oracle_checks():
    groups = {}
    for ens, q, n, kw in _oracle_cases():
        e = _value_or_pole(lambda: exact_moment(MomentSpec(ens, n, q, "full", **kw)))
        d = _value_or_pole(lambda: direct_contraction(ens, n, quantity=q, **kw))
        g = groups.setdefault((ens, q, n), {"cases": 0, "poles": 0, "bad": []})
        g["cases"] += 1
        g["poles"] += e == "pole"
        if e != d:
            g["bad"].append(f"{kw}: tables {e} vs contraction {d}")
    for (ens, q, n), g in groups.items():
        detail = f"{g['cases']} cases, {g['poles']} poles on both routes"
        if g["bad"]:
            detail += "; mismatches: " + "; ".join(g["bad"][:3])
        yield Check(f"{ens} {q} n={n}", not g["bad"], detail)


def criterion_3() -> Criterion:
    return _timed(3, "table route equals literal contraction", 600, _oracle_checks)


# ---------------------------------------------------------------------------
# 4. large-N signatures

def _catalan_checks():
    for n in (1, 2, 3):
        T = mom.asymptotic_coefficients("U", n, 2 * n, quantity="singular")
        ok = all(t == 0 for t in T[:-1]) and T[-1] == catalan(n)
        yield Check(f"T^U_{n},j for j <= {2 * n}", ok, f"{[str(t) for t in T]}, want zeros then {catalan(n)}")
    for n in (1, 2):
        T = mom.asymptotic_coefficients("O", n, 2 * n, quantity="singular")
        yield Check(f"T^O_{n},{2 * n}", T[-1] == 2 ** n * catalan(n), f"{T[-1]} vs {2 ** n * catalan(n)}")
    for n in (1, 2):
        f = closed_form("AI", 2 * n, quantity="trace")
        T = laurent_coefficients(f, n, 2 * n)
        yield Check(f"T^AI_{n},{2 * n} from m_{2 * n}^AI", T[-1] == catalan(n), f"{T[-1]} vs {catalan(n)}")


def criterion_4() -> Criterion:
    return _timed(4, "Catalan leading coefficients", 60, _catalan_checks)


# ---------------------------------------------------------------------------
# 5. Monte Carlo against exact moments

MC_SEED = 20240501


def _mc_checks(samples: int = 1000, seed: int = MC_SEED, tolerance: float = 5.0):
    cases = [
        ("U", 50, None, None, 2),
        ("O", 50, None, None, 2),
        ("AI", 50, None, None, 2),
        ("AII", 25, None, None, 2),
        ("AIII", 50, 30, 20, 1),
        ("BDI", 50, 30, 20, 1),
    ]
    for i, (fam, N, a, b, n) in enumerate(cases):
        spec = EnsembleSpec(fam, N, a=a, b=b, seed=seed, stream=i)
        mean, se = empirical_moment(sample_spectra(spec, samples, singulars=False), n)
        exact = float(exact_moment(MomentSpec(fam, n, variant="reduced", N=None if a is not None else N, a=a, b=b)))
        z = (mean - exact) / se
        yield Check(f"{fam} side {spec.side} m_{n}", abs(z) <= tolerance,
                    f"empirical {mean:.6f} +- {se:.6f}, exact {exact:.6f}, z = {z:+.2f}")
    c = MONTE_CARLO_CII
    spec = EnsembleSpec("CII", c["N"], a=c["a"], b=c["b"], seed=seed, stream=len(cases))
    mean, se = empirical_moment(sample_spectra(spec, samples, singulars=False), 1)
    alpha = spec.alpha
    want = float(target("CII", "trace", 1, alpha=alpha, N=c["N"]))
    derived = float(chiral_first_moment("CII", c["N"], alpha))
    z = (mean - want) / se
    yield Check(f"CII side {spec.side} m_1 (target formula)", abs(z) <= tolerance,
                f"empirical {mean:.6f} +- {se:.6f}, target {want:.6f}, z = {z:+.2f}; "
                f"diagonal-variance value {derived:.6f}, z = {(mean - derived) / se:+.2f}")


def criterion_5(samples: int = 1000) -> Criterion:
    return _timed(5, f"Monte Carlo moments within 5 SE ({samples} samples)", 300, _mc_checks, samples=samples)


# ---------------------------------------------------------------------------
# 6. macroscopic laws

LAW_SEED = 20240502


def _moment_lines(fit, tolerance, exact4=None):
    out = []
    ok = True
    for k in ("2", "4"):
        m = fit["moments"][k]
        z = m["difference"] / m["se"] if m["se"] > 0 else 0.0
        ok &= abs(z) <= tolerance
        out.append(f"<x^{k}> {m['empirical']:.4e} vs {m['predicted']:.4e} (z = {z:+.2f})")
    if exact4 is not None:
        m = fit["moments"]["4"]
        out.append(f"exact finite-size <x^4> {exact4:.4e} (z = {(m['empirical'] - exact4) / m['empirical_se']:+.2f})")
    return ok, "; ".join(out)


def _law_checks(samples: int = 100, seed: int = LAW_SEED, radius_tol: float = 0.10, se_tol: float = 3.0):
    side = 100
    summaries = {}
    for i, (fam, N) in enumerate([("O", side), ("U", side), ("S", side // 2), ("AI", side), ("AII", side // 2)]):
        spec = EnsembleSpec(fam, N, seed=seed, stream=i)
        summaries[fam] = summarize(sample_spectra(spec, samples), fam)
    disc = {"O": sqrt(2 / side), "U": 1 / sqrt(side), "S": 1 / sqrt(2 * (side // 2))}
    for fam, want in disc.items():
        fit = law_fit(summaries[fam], "ginibre_disc")
        rel = fit["radius"] / want - 1
        yield Check(f"{fam} disc radius", abs(rel) <= radius_tol,
                    f"{fit['radius']:.5f} vs {want:.5f} ({rel:+.1%}); mean real eigenvalues {fit['real_axis_count_mean']:.1f}")
    exact4 = {
        "AI": float(target("AI", "trace", 4, N=side)) / (side - 1),
        "AII": float(target("AII", "trace", 4, N=side // 2)) / (side - 1),
        "U": float(target("U", "singular", 2, N=side)) / (side - 1),
        "O": float(target("O", "singular", 2, N=side)) / (side - 1),
    }
    for fam in ("AI", "AII"):
        fit = law_fit(summaries[fam], "semicircle")
        want = 2 / sqrt(side)
        rel = fit["radius"] / want - 1
        yield Check(f"{fam} semicircle radius", abs(rel) <= radius_tol, f"{fit['radius']:.5f} vs {want:.5f} ({rel:+.1%})")
        ok, detail = _moment_lines(fit, se_tol, exact4[fam])
        yield Check(f"{fam} semicircle even moments", ok, detail)
    for fam in ("U", "O"):
        fit = law_fit(summaries[fam], "quarter_circle")
        ok, detail = _moment_lines(fit, se_tol, exact4[fam])
        yield Check(f"{fam} quarter-circle singular moments", ok, f"radius {fit['radius']:.5f}; " + detail)


def criterion_6(samples: int = 100) -> Criterion:
    return _timed(6, f"macroscopic laws at side 100 ({samples} samples)", 600, _law_checks, samples=samples)


# ---------------------------------------------------------------------------
# 7. structural invariants

def _structural_checks(samples: int = 5):
    cases = [("O", 20, {}), ("U", 20, {}), ("S", 10, {}), ("AI", 20, {}), ("AII", 10, {}),
             ("AIII", 20, {"a": 12, "b": 8}), ("BDI", 20, {"a": 12, "b": 8}), ("CII", 10, {"a": 6, "b": 4})]
    for i, (fam, N, kw) in enumerate(cases):
        spec = EnsembleSpec(fam, N, seed=7, stream=i, **kw)
        worst = {"bistochastic": 0.0, "symmetry": 0.0, "pf": 0.0, "structure": 0.0}
        for U, M in draw(spec, samples, keep_unitary=True):
            worst["bistochastic"] = max(worst["bistochastic"], M.row_sum_dev, M.col_sum_dev)
            worst["symmetry"] = max(worst["symmetry"], M.symmetry_residual())
            worst["pf"] = max(worst["pf"], reduced_spectrum(M, symmetric=spec.symmetric).pf_residual)
            if fam == "S":
                J = symplectic_form(N)
                worst["structure"] = max(worst["structure"], float(np.abs(U @ J @ U.T - J).max()))
            elif fam == "AII":
                worst["structure"] = max(worst["structure"], float(np.abs(U + U.T).max()))
            elif fam in ("AIII", "BDI", "CII"):
                worst["structure"] = max(worst["structure"], float(np.abs(U @ U - np.eye(U.shape[0])).max()))
        yield Check(f"{fam} bistochastic", worst["bistochastic"] <= 1e-10, f"max deviation {worst['bistochastic']:.2e}")
        if spec.symmetric:
            yield Check(f"{fam} symmetric", worst["symmetry"] <= 1e-12, f"max |M - M^T| {worst['symmetry']:.2e}")
        yield Check(f"{fam} PF residual", worst["pf"] < 1e-8, f"max {worst['pf']:.2e}")
        if fam == "S":
            yield Check("S symplectic", worst["structure"] < 1e-8, f"max |U J U^T - J| {worst['structure']:.2e}")
        elif fam == "AII":
            yield Check("AII antisymmetric", worst["structure"] < 1e-12, f"max |U + U^T| {worst['structure']:.2e}")
        elif fam in ("AIII", "BDI", "CII"):
            yield Check(f"{fam} involution", worst["structure"] < 1e-10, f"max |U^2 - I| {worst['structure']:.2e}")


def criterion_7() -> Criterion:
    return _timed(7, "structural invariants of sampled matrices", 60, _structural_checks)


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6, 7: criterion_7}


def run_criteria(selected=None, quick: bool = False, report=None) -> list:
    """Run the chosen criteria (all by default); ``quick`` shrinks the Monte Carlo runs.

    ``report`` is called with each finished :class:`Criterion`.
    """
    out = []
    for k in selected or sorted(CRITERIA):
        if quick and k == 5:
            crit = criterion_5(samples=200)
        elif quick and k == 6:
            crit = criterion_6(samples=30)
        else:
            crit = CRITERIA[k]()
        out.append(crit)
        if report is not None:
            report(crit)
    return out
