"""Sampling spectra of random bistochastic matrices.

Run with ``python demos/spectra.py``.  Draws a few hundred matrices per
ensemble and compares the pooled reduced spectra with the limiting laws.
"""
import numpy as np

from liestoch.moments import chiral_first_moment, cii_first_moment
from liestoch.sampler import EnsembleSpec
from liestoch.spectra import empirical_moment, law_fit, sample_spectra, summarize

SIDE = 60

# Complex spectra fill a disc; its radius shrinks like one over the root of the side.
for family, N, predicted in [("U", SIDE, 1 / np.sqrt(SIDE)), ("O", SIDE, np.sqrt(2 / SIDE)),
                             ("S", SIDE // 2, 1 / np.sqrt(SIDE))]:
    summary = summarize(sample_spectra(EnsembleSpec(family, N, seed=1), 60), family)
    print(f"{family}: disc radius {summary.disc_radius_estimate:.4f} (predicted {predicted:.4f}), "
          f"mean real eigenvalues {summary.real_axis_count_mean:.1f}")

# Symmetric families give real spectra following a semicircle.
for family, N in [("AI", SIDE), ("AII", SIDE // 2)]:
    fit = law_fit(summarize(sample_spectra(EnsembleSpec(family, N, seed=2), 60), family), "semicircle")
    m4 = fit["moments"]["4"]
    print(f"{family}: semicircle radius {fit['radius']:.4f} vs {2 / np.sqrt(SIDE):.4f}; "
          f"<x^4> {m4['empirical']:.3e} vs {m4['predicted']:.3e}")

# Quaternionic chiral matrices: sampling against the first-moment formula.
spec = EnsembleSpec("CII", 10, a=7, b=3, seed=3)
mean, se = empirical_moment(sample_spectra(spec, 500, singulars=False), 1)
print(f"\nCII m_1 sampled {mean:.4f} +- {se:.4f}; "
      f"diagonal-variance value {float(chiral_first_moment('CII', 10, spec.alpha)):.4f}; "
      f"reference formula {float(cii_first_moment(10, spec.alpha)):.4f}")
