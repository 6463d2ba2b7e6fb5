"""Characters of S_n, zonal spherical functions and Jack polynomial values.

All scalar results are exact: integers or :class:`fractions.Fraction`.  The
Jack helpers only use ``+``, ``*`` and division by integers on their ``N``,
``a``, ``b`` arguments, so they also accept :class:`~liestoch.ratfunc.RationalFunction`
values for symbolic evaluation.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod

import numpy as np

from . import _batch
from .permcore import Matching, Partition

__all__ = [
    "partitions",
    "character",
    "character_table",
    "dim",
    "class_size",
    "coset_type_representative",
    "zonal_spherical",
    "jack_one_N",
    "power_sum_signature",
    "jack_signature",
]


@lru_cache(maxsize=None)
def _partitions_desc(n: int, largest: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_desc(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _partitions(n: int) -> tuple:
    return tuple(Partition(p) for p in sorted(_partitions_desc(n, n)))


def partitions(n: int) -> list:
    """Partitions of ``n`` in lexicographically increasing order.

    For ``n = 4``: ``[1,1,1,1], [2,1,1], [2,2], [3,1], [4]``.  This is the
    column order of every count table.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return list(_partitions(n))


# ---------------------------------------------------------------------------
# Murnaghan-Nakayama on beta-sets

def _beta_set(lam: tuple) -> tuple:
    L = len(lam)
    return tuple(lam[i] + (L - 1 - i) for i in range(L))


def _from_beta(beta: tuple) -> tuple:
    L = len(beta)
    parts = sorted((b - (L - 1 - i) for i, b in enumerate(sorted(beta, reverse=True))), reverse=True)
    return tuple(p for p in parts if p > 0)


@lru_cache(maxsize=None)
def _mn(lam: tuple, mu: tuple) -> int:
    if not mu:
        return 1 if not lam else 0
    r = mu[0]
    rest = mu[1:]
    beta = _beta_set(lam)
    bset = set(beta)
    total = 0
    for b in beta:
        t = b - r
        if t < 0 or t in bset:
            continue
        height = sum(1 for c in beta if t < c < b)
        new_beta = tuple(sorted((bset - {b}) | {t}, reverse=True))
        total += (-1) ** height * _mn(_from_beta(new_beta), rest)
    return total


def character(lam, mu) -> int:
    """Irreducible character of ``S_n`` labelled ``lam`` on the class of cycle type ``mu``."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.weight != mu.weight:
        raise ValueError(f"weight mismatch: {lam} vs {mu}")
    return _mn(tuple(lam), tuple(mu))


def character_table(n: int) -> np.ndarray:
    """Rows: irreps, columns: classes, both in :func:`partitions` order."""
    parts = partitions(n)
    return np.array([[character(l, m) for m in parts] for l in parts], dtype=object)


@lru_cache(maxsize=None)
def _dim(lam: tuple) -> int:
    n = sum(lam)
    conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
    hooks = prod(lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i]))
    return factorial(n) // hooks


def dim(lam) -> int:
    """Dimension of the irrep ``lam`` (hook length formula)."""
    return _dim(tuple(Partition(lam)))


def class_size(mu) -> int:
    mu = Partition(mu)
    z = prod(j ** a * factorial(a) for j, a in mu.multiplicities().items())
    return factorial(mu.weight) // z


# ---------------------------------------------------------------------------
# zonal spherical functions of (S_2n, H_n)

def coset_type_representative(mu) -> Matching:
    """A matching whose union with the trivial matching has component half-sizes ``mu``."""
    mu = Partition(mu)
    blocks = []
    start = 1
    for L in mu:
        pts = list(range(start, start + 2 * L))
        # shift by one around the component: {2,3},{4,5},...,{2L,1}
        for r in range(L):
            blocks.append((pts[2 * r + 1], pts[(2 * r + 2) % (2 * L)]))
        start += 2 * L
    return Matching(tuple(blocks))


_omega_lock = threading.Lock()


@lru_cache(maxsize=None)
def _cycle_type_histogram(mu: tuple) -> dict:
    """Cycle types of ``tau * xi`` over ``xi`` in ``H_n``, for ``tau`` of coset type ``mu``."""
    n = sum(mu)
    tau = np.array(coset_type_representative(Partition(mu)).canonical_rep.zero_based, dtype=_batch.DTYPE)
    H = _batch.hyperoctahedral_array(n)
    keys = _batch.cycle_type_keys(_batch.compose(tau, H))
    idx = _batch.keys_to_index(keys, 2 * n)
    counts = np.bincount(idx, minlength=len(partitions(2 * n)))
    return {partitions(2 * n)[i]: int(c) for i, c in enumerate(counts) if c}


@lru_cache(maxsize=None)
def _omega(lam: tuple, mu: tuple) -> Fraction:
    n = sum(lam)
    hist = _cycle_type_histogram(mu)
    two_lam = tuple(2 * p for p in lam)
    total = sum(c * _mn(two_lam, tuple(rho)) for rho, c in hist.items())
    return Fraction(total, 2 ** n * factorial(n))


def zonal_spherical(lam, coset_type) -> Fraction:
    """Zonal spherical function ``omega_lam`` at any permutation of the given coset type.

    Normalised so that ``omega_lam`` equals 1 on ``H_n``:
    ``omega_lam(tau) = |H_n|^-1 sum_{xi in H_n} chi_{2 lam}(tau xi)``.
    """
    lam, mu = Partition(lam), Partition(coset_type)
    if lam.weight != mu.weight:
        raise ValueError(f"weight mismatch: {lam} vs {mu}")
    with _omega_lock:
        return _omega(tuple(lam), tuple(mu))


# ---------------------------------------------------------------------------
# Jack polynomial values

def jack_one_N(lam, gamma: int, N):
    """``J^gamma_lam(1^N)`` as a product of shifted rising factorials.

    Equals ``prod over cells (i, j) of (N - i + gamma*j)`` with 0-based ``i, j``,
    a polynomial in ``N``; valid at negative and symbolic ``N``.
    """
    if gamma not in (1, 2):
        raise ValueError("gamma must be 1 or 2")
    lam = Partition(lam)
    out = 1
    for i, part in enumerate(lam):
        for j in range(part):
            out = out * (N + (gamma * j - i))
    if isinstance(out, int):
        return Fraction(out)
    return out


def power_sum_signature(mu, a, b):
    """``p_mu`` at the point with ``a`` coordinates equal to 1 and ``b`` equal to -1."""
    out = 1
    for part in Partition(mu):
        out = out * ((a + b) if part % 2 == 0 else (a - b))
    return out


def jack_signature(lam, gamma: int, a, b):
    """``J^gamma_lam(1^a, (-1)^b)`` from the power-sum expansions of ``J^1`` and ``J^2``."""
    lam = Partition(lam)
    n = lam.weight
    total = 0
    if gamma == 1:
        for mu in partitions(n):
            coeff = class_size(mu) * character(lam, mu)
            if coeff:
                total = total + coeff * power_sum_signature(mu, a, b)
        result = total * Fraction(1, dim(lam))
    elif gamma == 2:
        for mu in partitions(n):
            coeff = 2 ** (n - len(mu)) * class_size(mu) * zonal_spherical(lam, mu)
            if coeff:
                total = total + coeff * power_sum_signature(mu, a, b)
        result = Fraction(total) if isinstance(total, int) else total
    else:
        raise ValueError("gamma must be 1 or 2")
    return result
