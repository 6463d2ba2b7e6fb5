"""Closed-form target values used by the acceptance checks.

Each entry maps ``(ensemble, quantity, n)`` to a function of ``N`` (and of
``alpha`` for chiral ensembles) built with :class:`RationalFunction`
arithmetic, so it can be compared exactly with a reconstructed closed form.
Moments are reduced; ``shifted`` entries are the chiral moments of
``M - alpha^2``.
"""
from __future__ import annotations

from fractions import Fraction

from .ratfunc import RationalFunction

__all__ = ["CLOSED_FORMS", "CHIRAL_FORMS", "target", "MONTE_CARLO_CII"]


def _N() -> RationalFunction:
    return RationalFunction.variable()


CLOSED_FORMS = {
    ("U", "trace", 2): lambda N: 1 / (N + 1),
    ("U", "trace", 3): lambda N: 2 / ((N + 1) * (N + 2)),
    ("U", "trace", 4): lambda N: (N ** 2 + 12 * N + 6) / (N * (N + 1) * (N + 2) * (N + 3)),
    ("U", "trace", 5): lambda N: 34 / ((N + 1) * (N + 2) * (N + 3) * (N + 4)),
    ("U", "singular", 1): lambda N: (N - 1) / (N + 1),
    ("U", "singular", 2): lambda N: 2 * (N - 1) * (N + 4) / ((N + 3) * (N + 2) * (N + 1)),
    ("U", "singular", 3): lambda N: (5 * N ** 4 + 60 * N ** 3 + 217 * N ** 2 - 46 * N - 256)
    / ((N + 5) * (N + 4) * (N + 3) * (N + 2) * (N + 1) ** 2),
    ("O", "trace", 2): lambda N: 2 / (N + 2),
    ("O", "trace", 3): lambda N: 8 / ((N + 2) * (N + 4)),
    ("O", "trace", 4): lambda N: 4 * (N ** 2 + 23 * N + 36) / ((N + 1) * (N + 2) * (N + 4) * (N + 6)),
    ("O", "trace", 5): lambda N: 16 * (29 * N + 24) / ((N + 1) * (N + 2) * (N + 4) * (N + 6) * (N + 8)),
    ("O", "singular", 1): lambda N: (2 * N - 2) / (N + 2),
    ("O", "singular", 2): lambda N: (4 * N - 4) * (2 * N ** 2 + 17 * N + 12) / ((N + 1) * (N + 2) * (N + 4) * (N + 6)),
    ("AI", "trace", 1): lambda N: (N - 1) / (N + 1),
    ("AI", "trace", 2): lambda N: (N - 1) * (N + 5) / ((N + 1) * (N + 3)),
    ("AI", "trace", 3): lambda N: (3 * N ** 2 + 22 * N - 29) / ((N + 1) * (N + 3) * (N + 5)),
    ("AI", "trace", 4): lambda N: 2 * (N ** 4 + 20 * N ** 3 + 146 * N ** 2 + 92 * N - 323)
    / ((N + 1) * (N + 2) * (N + 3) * (N + 5) * (N + 7)),
    ("AII", "trace", 1): lambda N: N * 0 - 1,
    ("AII", "trace", 2): lambda N: N * 0 + 1,
    ("AII", "trace", 3): lambda N: -3 / (2 * N + 1),
    ("AII", "trace", 4): lambda N: (2 * N + 5) / ((2 * N + 1) * (N + 1)),
    ("S", "trace", 2): lambda N: 2 / (2 * N + 1),
    ("S", "singular", 1): lambda N: (2 * N ** 2 + N + 1) / ((N - 1) * (2 * N + 1)),
}

CHIRAL_FORMS = {
    ("AIII", "trace", 1): lambda N, a: (N ** 2 * a ** 2 - 1) / (N + 1),
    ("AIII", "trace", 2): lambda N, a: (a ** 4 * N ** 3 + (2 * a ** 2 + 1) * N ** 2 - (4 * a ** 2 - 3) * N - 3)
    / ((N + 1) * (N + 3)),
    ("AIII", "shifted", 1): lambda N, a: (a ** 2 - 1) / (N + 1),
    ("BDI", "trace", 1): lambda N, a: (N ** 2 * a ** 2 + N - 2) / (N + 2),
    ("BDI", "shifted", 1): lambda N, a: -(a ** 2 - 1) * (N - 2) / (N + 2),
    ("CII", "trace", 1): lambda N, a: (4 * N ** 3 * a ** 2 - 4 * N ** 2 - N + 1) / ((N - 1) * (2 * N + 1)),
    ("CII", "shifted", 1): lambda N, a: (a ** 2 - 1) * (4 * N ** 2 + N - 1) / ((N - 1) * (2 * N + 1)),
}

# chiral quaternionic case (N = a + b, side 2N) checked by sampling only
MONTE_CARLO_CII = {"N": 20, "a": 10, "b": 10}


def target(ensemble: str, quantity: str, n: int, alpha=None, N=None):
    """Target value: symbolic in ``N`` when ``N`` is omitted."""
    x = _N() if N is None else Fraction(N)
    if (ensemble, quantity, n) in CLOSED_FORMS:
        return CLOSED_FORMS[ensemble, quantity, n](x)
    if (ensemble, quantity, n) in CHIRAL_FORMS:
        if alpha is None:
            raise ValueError(f"{ensemble} target needs alpha")
        return CHIRAL_FORMS[ensemble, quantity, n](x, Fraction(alpha))
    raise KeyError((ensemble, quantity, n))
