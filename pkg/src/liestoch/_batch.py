"""Vectorised permutation kernels.

Every array here holds zero-based permutations row-wise, shape ``(B, k)``.
Composition ``(a*b)[x] = a[b[x]]`` is ``np.take_along_axis(a, b, 1)``.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .permcore import Partition

DTYPE = np.int8


def all_permutations(k: int, first: int | None = None) -> np.ndarray:
    """All permutations of ``range(k)`` in lexicographic order.

    With ``first`` given, only those whose image of 0 is ``first``.
    """
    if k == 0:
        return np.zeros((1, 0), dtype=DTYPE)
    if first is not None:
        rest = all_permutations(k - 1)
        rest = rest + (rest >= first)
        head = np.full((rest.shape[0], 1), first, dtype=DTYPE)
        return np.hstack([head, rest.astype(DTYPE)])
    return np.vstack([all_permutations(k, f) for f in range(k)])


def all_matchings(k: int, partner_of_zero: int | None = None) -> np.ndarray:
    """All perfect matchings of ``range(k)`` as fixed-point-free involutions.

    Rows follow the lexicographic block order used by :func:`permcore.matchings`.
    """
    if k == 0:
        return np.zeros((1, 0), dtype=DTYPE)
    partners = range(1, k) if partner_of_zero is None else [partner_of_zero]
    blocks = []
    for j in partners:
        rest_pts = np.array([x for x in range(1, k) if x != j], dtype=DTYPE)
        sub = all_matchings(k - 2)
        out = np.empty((sub.shape[0], k), dtype=DTYPE)
        out[:, 0] = j
        out[:, j] = 0
        out[:, rest_pts] = rest_pts[sub]
        blocks.append(out)
    return np.vstack(blocks)


def compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise ``a * b``; either side may be a single permutation."""
    a2 = np.atleast_2d(a)
    b2 = np.atleast_2d(b)
    if a2.shape[0] == 1 and b2.shape[0] > 1:
        return a2[0][b2]
    if b2.shape[0] == 1 and a2.shape[0] > 1:
        return a2[:, b2[0]]
    return np.take_along_axis(a2, b2, axis=1)


def inverse(p: np.ndarray) -> np.ndarray:
    p2 = np.atleast_2d(p)
    inv = np.empty_like(p2)
    rows = np.arange(p2.shape[0])[:, None]
    inv[rows, p2] = np.arange(p2.shape[1], dtype=p2.dtype)
    return inv


def conjugate_involution(sigma: np.ndarray, inv: np.ndarray) -> np.ndarray:
    """Row-wise ``sigma * inv * sigma^-1``."""
    return compose(compose(sigma, inv), inverse(sigma))


def cycle_lengths(p: np.ndarray) -> np.ndarray:
    """Length of the cycle through each point."""
    p2 = np.atleast_2d(p)
    k = p2.shape[1]
    ident = np.arange(k)
    lengths = np.zeros(p2.shape, dtype=np.int16)
    cur = p2.copy()
    for step in range(1, k + 1):
        hit = (cur == ident) & (lengths == 0)
        lengths[hit] = step
        if step < k:
            cur = np.take_along_axis(p2, cur, axis=1)
    return lengths


def _key_from_counts(counts: np.ndarray, base: int) -> np.ndarray:
    weights = base ** np.arange(counts.shape[1], dtype=np.int64)
    return counts.astype(np.int64) @ weights


def cycle_type_keys(p: np.ndarray) -> np.ndarray:
    """Integer key encoding the cycle type of each row (see :func:`partition_key`)."""
    lengths = cycle_lengths(p)
    k = lengths.shape[1]
    counts = np.stack([(lengths == L).sum(axis=1) // L for L in range(1, k + 1)], axis=1)
    return _key_from_counts(counts, k + 1)


def coset_type_keys(m1: np.ndarray, m2: np.ndarray) -> np.ndarray:
    """Key of the coset type of each pair of matchings (as involutions).

    Each component of ``m1 U m2`` with ``2L`` vertices is two ``L``-cycles of ``m1*m2``.
    """
    lengths = cycle_lengths(compose(m1, m2))
    k = lengths.shape[1]
    h = k // 2
    counts = np.stack([(lengths == L).sum(axis=1) // (2 * L) for L in range(1, h + 1)], axis=1)
    return _key_from_counts(counts, h + 1)


def partition_key(lam: Partition, k: int) -> int:
    """Key of ``lam`` as a cycle type in ``S_k`` (coset types: pass ``k = weight``)."""
    mult = lam.multiplicities()
    return sum(mult.get(L, 0) * (k + 1) ** (L - 1) for L in range(1, k + 1))


@lru_cache(maxsize=None)
def key_lookup(n: int) -> dict:
    from .symmfunc import partitions

    return {partition_key(lam, n): i for i, lam in enumerate(partitions(n))}


def keys_to_index(keys: np.ndarray, n: int) -> np.ndarray:
    lookup = key_lookup(n)
    uniq, inv = np.unique(keys, return_inverse=True)
    return np.array([lookup[int(u)] for u in uniq], dtype=np.int64)[inv]


def orbit_counts(generators: list, k: int) -> np.ndarray:
    """Number of orbits on ``range(k)`` of the group generated, row by row.

    Min-label propagation along each generator and its inverse; each
    generator is either one permutation or a ``(B, k)`` batch.
    """
    gens = [np.atleast_2d(g) for g in generators]
    B = max(g.shape[0] for g in gens)
    gens = [np.broadcast_to(g, (B, k)) for g in gens]
    invs = [inverse(g) for g in gens]
    labels = np.broadcast_to(np.arange(k), (B, k)).copy()
    while True:
        new = labels
        for g, gi in zip(gens, invs):
            new = np.minimum(new, np.take_along_axis(labels, g, axis=1))
            new = np.minimum(new, np.take_along_axis(labels, gi, axis=1))
        new = np.take_along_axis(new, new, axis=1)
        if np.array_equal(new, labels):
            break
        labels = new
    return (labels == np.arange(k)).sum(axis=1)


def signs(p: np.ndarray) -> np.ndarray:
    lengths = cycle_lengths(p)
    ncycles = (1.0 / lengths).sum(axis=1).round().astype(np.int64)
    return np.where((p.shape[-1] - ncycles) % 2 == 0, 1, -1)


@lru_cache(maxsize=None)
def hyperoctahedral_array(n: int) -> np.ndarray:
    """``H_n`` as a ``(2^n n!, 2n)`` array."""
    perms = all_permutations(n).astype(np.int64)
    flips = np.array(np.meshgrid(*[[0, 1]] * n, indexing="ij")).reshape(n, -1).T if n else np.zeros((1, 0), int)
    out = np.empty((perms.shape[0] * flips.shape[0], 2 * n), dtype=DTYPE)
    row = 0
    for p in perms:
        for f in flips:
            a = 2 * p + f
            b = 2 * p + 1 - f
            out[row, 0::2] = a
            out[row, 1::2] = b
            row += 1
    return out
