"""Reduced spectra of sampled stochastic matrices and their empirical laws."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from math import comb, sqrt

import numpy as np

from .sampler import EnsembleSpec, StochasticMatrix, draw

__all__ = [
    "SpectrumSample",
    "SpectralSummary",
    "reduced_spectrum",
    "reduced_singulars",
    "empirical_moment",
    "jackknife",
    "summarize",
    "law_fit",
    "sample_spectra",
    "histogram",
    "write_histogram_csv",
    "catalan",
]

PF_FLAG = 1e-6
DEGENERACY_TOL = 1e-8
REAL_AXIS_TOL = 1e-8


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


@dataclass
class SpectrumSample:
    eigenvalues: np.ndarray
    singular_values: np.ndarray | None = None
    pf_residual: float = 0.0
    pf_removed: bool = True
    flagged: bool = False
    degenerate: bool = False
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        ev = self.eigenvalues
        out = dict(self.meta)
        if np.iscomplexobj(ev):
            out["eigenvalues"] = [[float(z.real), float(z.imag)] for z in ev]
        else:
            out["eigenvalues"] = [float(x) for x in ev]
        if self.singular_values is not None:
            out["singular_values"] = [float(x) for x in self.singular_values]
        out.update(pf_residual=self.pf_residual, pf_removed=self.pf_removed, flagged=self.flagged,
                   degenerate=self.degenerate)
        return out


def _entries(M) -> np.ndarray:
    return M.entries if isinstance(M, StochasticMatrix) else np.asarray(M, dtype=float)


def _remove_closest_to_one(values: np.ndarray):
    if values.size == 0:
        return values, 0.0, False
    dist = np.abs(values - 1)
    i = int(np.argmin(dist))
    degenerate = int((dist < DEGENERACY_TOL).sum()) > 1
    return np.delete(values, i), float(dist[i]), degenerate


def reduced_spectrum(M, symmetric: bool = False, meta: dict | None = None) -> SpectrumSample:
    """Eigenvalues with the Perron-Frobenius eigenvalue (the one closest to 1) removed.

    Symmetric matrices use the Hermitian solver and return real eigenvalues.
    """
    A = _entries(M)
    ev = np.linalg.eigvalsh(A) if symmetric else np.linalg.eigvals(A)
    reduced, residual, degenerate = _remove_closest_to_one(ev)
    return SpectrumSample(
        eigenvalues=reduced,
        pf_residual=residual,
        flagged=residual > PF_FLAG,
        degenerate=degenerate,
        meta=dict(meta or {}),
    )


def reduced_singulars(M) -> np.ndarray:
    """Singular values with the one closest to 1 removed (``M M^T`` is bistochastic)."""
    sv = np.linalg.svd(_entries(M), compute_uv=False)
    reduced, _, _ = _remove_closest_to_one(sv)
    return reduced


def jackknife(per_sample: np.ndarray, statistic=np.mean):
    """Jackknife estimate and standard error of ``statistic`` over the first axis."""
    x = np.asarray(per_sample, dtype=float)
    n = x.shape[0]
    if n < 2:
        raise ValueError("need at least two samples")
    full = statistic(x)
    total = x.sum(axis=0)
    if statistic is np.mean:
        leave_one = (total[None, ...] - x) / (n - 1)
    else:
        leave_one = np.array([statistic(np.delete(x, i, axis=0)) for i in range(n)])
    mean_lo = leave_one.mean(axis=0)
    se = np.sqrt((n - 1) / n * ((leave_one - mean_lo) ** 2).sum(axis=0))
    return full, se


def _per_sample_moment(s: SpectrumSample, n: int, kind: str) -> float:
    if kind == "trace":
        return float(np.real(np.sum(s.eigenvalues ** n)))
    if kind == "singular":
        if s.singular_values is None:
            raise ValueError("sample has no singular values")
        return float(np.sum(s.singular_values ** (2 * n)))
    raise ValueError("kind must be 'trace' or 'singular'")


def empirical_moment(samples, n: int, kind: str = "trace"):
    """Sample mean of the reduced ``tr M^n`` (or ``tr (M M^T)^n``) and its jackknife SE."""
    values = np.array([_per_sample_moment(s, n, kind) for s in samples])
    mean, se = jackknife(values)
    return float(mean), float(se)


def sample_spectra(spec: EnsembleSpec, count: int, singulars: bool = True):
    """Draw ``count`` matrices and return their reduced spectra."""
    out = []
    for i, M in enumerate(draw(spec, count)):
        s = reduced_spectrum(M, symmetric=spec.symmetric, meta={**spec.to_json(), "index": i, "checks": M.checks()})
        if singulars:
            s.singular_values = reduced_singulars(M)
        out.append(s)
    return out


# ---------------------------------------------------------------------------
# summaries and law fits

def histogram(values: np.ndarray, bins="fd"):
    """Density histogram (unit mass); Freedman-Diaconis bins by default."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return np.zeros(0), np.zeros(1)
    density, edges = np.histogram(values, bins=bins, density=True)
    return density, edges


def write_histogram_csv(path, density: np.ndarray, edges: np.ndarray) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["bin_left", "bin_right", "density"])
        for lo, hi, d in zip(edges[:-1], edges[1:], density):
            w.writerow([repr(float(lo)), repr(float(hi)), repr(float(d))])


@dataclass
class SpectralSummary:
    ensemble: str
    samples: int
    empirical_moments: dict
    disc_radius_estimate: float | None
    real_axis_count_mean: float | None
    histogram: tuple
    eigen_per_sample: list = field(repr=False, default_factory=list)
    singular_per_sample: list = field(repr=False, default_factory=list)

    def to_json(self) -> dict:
        return {
            "ensemble": self.ensemble,
            "samples": self.samples,
            "empirical_moments": {
                f"{kind}_{n}": {"mean": m, "se": se} for (kind, n), (m, se) in sorted(self.empirical_moments.items())
            },
            "disc_radius_estimate": self.disc_radius_estimate,
            "real_axis_count_mean": self.real_axis_count_mean,
        }


def _disc_radius(moduli: np.ndarray) -> float:
    # uniform disc: P(|z| < r) = (r / R)^2
    return float(np.quantile(moduli, 0.95) / sqrt(0.95))


def summarize(samples, ensemble: str, max_moment: int = 4, bins="fd") -> SpectralSummary:
    if len(samples) < 2:
        raise ValueError("need at least two samples")
    eig = [np.asarray(s.eigenvalues) for s in samples]
    sing = [s.singular_values for s in samples if s.singular_values is not None]
    moments = {}
    for n in range(1, max_moment + 1):
        moments[("trace", n)] = empirical_moment(samples, n, "trace")
        if len(sing) == len(samples):
            moments[("singular", n)] = empirical_moment(samples, n, "singular")
    pooled = np.concatenate(eig) if eig else np.zeros(0)
    disc = real_count = None
    if np.iscomplexobj(pooled) and pooled.size:
        disc = _disc_radius(np.abs(pooled))
        scale = max(float(np.abs(pooled).max()), np.finfo(float).tiny)
        real_count = float(np.mean([(np.abs(e.imag) < REAL_AXIS_TOL * scale).sum() for e in eig]))
    values = pooled.real if np.iscomplexobj(pooled) else pooled
    return SpectralSummary(ensemble, len(samples), moments, disc, real_count, histogram(values, bins), eig, sing)


def _even_moment_check(per_sample_values: list, law: str) -> dict:
    """Fit ``X^2 = 4 <x^2>`` and compare ``<x^4>`` and ``<x^6>`` with the Catalan values.

    Every statistic is a pooled per-eigenvalue average; standard errors come
    from the jackknife over samples.
    """
    counts = np.array([len(v) for v in per_sample_values], dtype=float)
    sums = np.array([[np.sum(np.asarray(v) ** (2 * k)) for k in (1, 2, 3)] for v in per_sample_values])
    data = np.column_stack([counts, sums])

    def stats(d):
        c = d[:, 0].sum()
        m2, m4, m6 = (d[:, 1:].sum(axis=0) / c)
        X2 = 4 * m2
        return np.array([X2, m4 - catalan(2) * X2 ** 2 / 16, m6 - catalan(3) * X2 ** 3 / 64, m2, m4, m6])

    est, se = jackknife(data, stats)
    X = sqrt(est[0])
    report = {
        "law": law,
        "radius": X,
        "radius_se": float(se[0] / (2 * X)) if X > 0 else float("nan"),
        "moments": {
            str(2 * k): {
                "empirical": float(est[2 + k]),
                "empirical_se": float(se[2 + k]),
                "predicted": float(catalan(k) * est[0] ** k / 4 ** k),
                "difference": float(est[k - 1]) if k > 1 else 0.0,
                "se": float(se[k - 1]) if k > 1 else 0.0,
            }
            for k in (1, 2, 3)
        },
    }
    return report


def law_fit(summary: SpectralSummary, law: str) -> dict:
    """Fit one of ``ginibre_disc``, ``semicircle``, ``quarter_circle`` to the summary's data."""
    if law == "ginibre_disc":
        if summary.disc_radius_estimate is None:
            raise ValueError("disc fit needs complex spectra")
        return {
            "law": law,
            "radius": summary.disc_radius_estimate,
            "real_axis_count_mean": summary.real_axis_count_mean,
        }
    if law == "semicircle":
        values = [np.real(e) for e in summary.eigen_per_sample]
    elif law == "quarter_circle":
        if not summary.singular_per_sample:
            raise ValueError("quarter-circle fit needs singular values")
        values = summary.singular_per_sample
    else:
        raise ValueError(f"unknown law {law!r}")
    if sum(len(v) for v in values) < 10 or len(values) < 2:
        raise ValueError("not enough data for a law fit")
    return _even_moment_check(values, law)
