"""Exact spectral moments of the induced stochastic ensembles.

Two independent routes:

* :func:`exact_moment` multiplies count tables by Weingarten values;
* :func:`direct_contraction` sums the Weingarten expansion literally over
  every index string and every (pair of) permutations or matchings.

Closed forms in the dimension ``N`` are recovered by exact rational
reconstruction from pointwise values (:func:`closed_form`).

Conventions: ``N`` is the matrix side for U, O, AI, AIII and BDI and the
half-side for S and AII (their matrices are ``2N x 2N``).  Chiral ensembles
take ``a + b = N``.  ``trace`` quantity ``n`` means ``<Tr M^n>`` and
``singular`` means ``<Tr (M M^T)^n>``.  The ``reduced`` variant drops the
Perron-Frobenius eigenvalue (subtracts 1), ``shifted`` (chiral only) is
``<tr (M - alpha^2)^n>`` over the reduced spectrum.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from . import _batch
from .enumeration import BudgetExceeded, enumerate_table
from .ratfunc import PoleError, RationalFunction, ReconstructionError, laurent_coefficients, reconstruct_rational
from .symmfunc import partitions
from .weingarten import wg_aiii, wg_bdi, wg_o, wg_u

__all__ = [
    "ENSEMBLES",
    "MomentSpec",
    "exact_moment",
    "direct_contraction",
    "closed_form",
    "asymptotic_coefficients",
    "cii_first_moment",
    "cii_first_shifted_moment",
    "chiral_first_moment",
    "chiral_first_shifted_moment",
    "ray_signature",
]

ENSEMBLES = ("U", "O", "S", "AI", "AII", "AIII", "BDI")
CHIRAL = ("AIII", "BDI")
SYMMETRIC = ("AI", "AII", "AIII", "BDI")
QUANTITIES = ("trace", "singular")
VARIANTS = ("full", "reduced", "shifted")

DEFAULT_ORACLE_BUDGET = 2 * 10 ** 9


@dataclass(frozen=True)
class MomentSpec:
    ensemble: str
    n: int
    quantity: str = "trace"
    variant: str = "full"
    N: object = None
    a: object = None
    b: object = None

    def __post_init__(self):
        if self.ensemble not in ENSEMBLES:
            raise ValueError(f"unknown ensemble {self.ensemble!r}; expected one of {ENSEMBLES}")
        if self.quantity not in QUANTITIES:
            raise ValueError(f"quantity must be one of {QUANTITIES}")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.ensemble in CHIRAL:
            if self.a is None or self.b is None:
                raise ValueError(f"{self.ensemble} needs a and b")
            if isinstance(self.a, int) and isinstance(self.b, int):
                if self.a < 0 or self.b < 0 or self.a + self.b < 1:
                    raise ValueError(f"invalid signature a={self.a}, b={self.b}")
            if self.N is not None and self.N != self.a + self.b:
                raise ValueError("N must equal a + b")
            object.__setattr__(self, "N", self.a + self.b)
        elif self.N is None:
            raise ValueError(f"{self.ensemble} needs N")
        if self.variant == "shifted":
            if self.ensemble not in CHIRAL:
                raise ValueError("shifted moments are defined for chiral ensembles only")
            if self.quantity != "trace":
                raise ValueError("shifted moments are trace moments")

    @property
    def alpha(self):
        if self.ensemble not in CHIRAL:
            raise AttributeError("alpha is defined for chiral ensembles")
        return (self.a - self.b) * _inv(self.N)


def _inv(x):
    return Fraction(1, x) if isinstance(x, int) else 1 / x


def _scalar(x):
    return x if isinstance(x, RationalFunction) else Fraction(x)


def _trivial_chiral(spec: MomentSpec) -> bool:
    return spec.ensemble in CHIRAL and isinstance(spec.a, int) and (spec.a == 0 or spec.b == 0)


def _apply_variant(spec: MomentSpec, full_of):
    """``full_of(quantity, n)`` returns the full moment; build the requested variant."""
    if spec.variant == "full":
        return full_of(spec.quantity, spec.n)
    if spec.variant == "reduced":
        return full_of(spec.quantity, spec.n) - 1
    alpha2 = spec.alpha * spec.alpha
    total = (spec.N - 1) * (-alpha2) ** spec.n
    for k in range(1, spec.n + 1):
        total = total + comb(spec.n, k) * (-alpha2) ** (spec.n - k) * (full_of("trace", k) - 1)
    return total


# ---------------------------------------------------------------------------
# table route

@lru_cache(maxsize=None)
def _table(family: str, n: int, budget):
    return enumerate_table(family, n, budget=budget)


def _table_full(ensemble: str, quantity: str, n: int, N, a, b, budget):
    q, order = _effective_pair(ensemble, quantity, n)
    N = _scalar(N)
    total = 0 * N
    if ensemble == "U":
        if q == "trace":
            for m, lam, c in _table("FU", order, budget).items():
                total = total + c * wg_u(lam, N) * N ** m
        else:
            for (m, k), lam, c in _table("GU", order, budget).items():
                total = total + c * wg_u(lam, N) * N ** (m + k)
    elif ensemble == "O":
        if q == "trace":
            for m, lam, c in _table("FO", order, budget).items():
                total = total + c * wg_o(lam, N) * N ** m
        else:
            for (m, k), lam, c in _table("GO", order, budget).items():
                total = total + c * wg_o(lam, N) * N ** (m + k)
    elif ensemble == "AI":
        for m, lam, c in _table("FAI", order, budget).items():
            total = total + c * wg_o(lam, N + 1) * N ** m
    elif ensemble == "AII":
        for m, lam, c in _table("FAII", order, budget).items():
            total = total + c * wg_o(lam, 1 - 2 * N) * (2 * N) ** m
        total = (-1) ** order * total
    elif ensemble == "AIII":
        for m, lam, c in _table("FAIII", order, budget).items():
            total = total + c * wg_aiii(lam, a, b) * N ** m
    elif ensemble == "BDI":
        for m, lam, c in _table("FBDI", order, budget).items():
            total = total + c * wg_bdi(lam, a, b) * N ** m
    else:
        return _oracle_full(ensemble, quantity, n, N, a, b, DEFAULT_ORACLE_BUDGET)
    return total


def _effective_pair(ensemble, quantity, n):
    if quantity == "singular" and ensemble in SYMMETRIC:
        return "trace", 2 * n
    return quantity, n


def exact_moment(spec: MomentSpec, budget: int | None = None):
    """Exact moment from count tables and Weingarten values.

    Returns a :class:`~fractions.Fraction`, or a :class:`RationalFunction`
    when ``spec.N`` is symbolic.  The symplectic ensemble has no table route
    and is evaluated by :func:`direct_contraction` (integer ``N`` only).
    """
    if _trivial_chiral(spec):
        return _trivial_chiral_moment(spec)

    def full_of(quantity, n):
        return _table_full(spec.ensemble, quantity, n, spec.N, spec.a, spec.b, budget)

    return _apply_variant(spec, full_of)


def _trivial_chiral_moment(spec: MomentSpec):
    # U = +-I, so M = I: every eigenvalue is 1
    N = spec.N
    if spec.variant == "full":
        return Fraction(N)
    if spec.variant == "reduced":
        return Fraction(N - 1)
    alpha2 = spec.alpha * spec.alpha
    return (N - 1) * (1 - alpha2) ** spec.n


# ---------------------------------------------------------------------------
# literal contraction route

def _strings(alphabet: int, length: int) -> np.ndarray:
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*[np.arange(alphabet)] * length, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _cyclic_next(idx: np.ndarray) -> np.ndarray:
    return np.roll(idx, -1, axis=1)


def _interleave(*cols) -> np.ndarray:
    return np.stack(cols, axis=2).reshape(cols[0].shape[0], -1)


def _perm_masks(row: np.ndarray, col: np.ndarray, perms: np.ndarray) -> np.ndarray:
    """``mask[s, p] = prod_k [col[s, perms[p, k]] == row[s, k]]``."""
    out = np.ones((row.shape[0], perms.shape[0]), dtype=bool)
    for k in range(perms.shape[1]):
        out &= col[:, perms[:, k]] == row[:, [k]]
    return out


def _matching_masks(s: np.ndarray, invs: np.ndarray) -> np.ndarray:
    """``Delta`` of each string against each matching (given as involutions)."""
    return _perm_masks(s, s, invs)


def _symplectic_form(N: int) -> np.ndarray:
    J = np.zeros((2 * N, 2 * N), dtype=np.int64)
    J[np.arange(N), np.arange(N) + N] = 1
    J[np.arange(N) + N, np.arange(N)] = -1
    return J


@lru_cache(maxsize=None)
def _canonical_reps(points: int):
    """Matchings of ``range(points)``, their canonical representatives and signs.

    The representative lists sorted blocks in order: ``rep[2t], rep[2t+1]``
    is the ``t``-th block.
    """
    invs = _batch.all_matchings(points).astype(np.int64)
    reps = np.array(
        [[p for blk in sorted((x, int(inv[x])) for x in range(points) if x < inv[x]) for p in blk] for inv in invs],
        dtype=np.int64,
    ).reshape(len(invs), points)
    return invs, reps, _batch.signs(reps)


def _primed_delta(s: np.ndarray, reps: np.ndarray, signs: np.ndarray, N: int) -> np.ndarray:
    """``eps(r) * prod_t J[s[r(2t)], s[r(2t+1)]]`` for each string and representative."""
    J = _symplectic_form(N)
    first = s[:, reps[:, 0::2]]
    second = s[:, reps[:, 1::2]]
    return J[first, second].prod(axis=2) * signs[None, :]


@lru_cache(maxsize=None)
def _pair_types_perms(k: int):
    perms = _batch.all_permutations(k)
    inv = _batch.inverse(perms)
    P = perms.shape[0]
    types = np.empty((P, P), dtype=np.int64)
    for i in range(P):
        prod_ = _batch.compose(inv[i], perms)
        types[i] = _batch.keys_to_index(_batch.cycle_type_keys(prod_), k)
    return perms.astype(np.int64), types


@lru_cache(maxsize=None)
def _pair_types_matchings(points: int):
    invs = _batch.all_matchings(points)
    P = invs.shape[0]
    types = np.empty((P, P), dtype=np.int64)
    for i in range(P):
        types[i] = _batch.keys_to_index(_batch.coset_type_keys(np.broadcast_to(invs[i], invs.shape), invs), points // 2)
    return invs.astype(np.int64), types


@lru_cache(maxsize=None)
def _single_types_perms(k: int, kind: str):
    perms = _batch.all_permutations(k)
    if kind == "cycle":
        idx = _batch.keys_to_index(_batch.cycle_type_keys(perms), k)
    else:
        trivial = np.array([x ^ 1 for x in range(k)], dtype=_batch.DTYPE)
        image = _batch.conjugate_involution(perms, trivial)
        idx = _batch.keys_to_index(_batch.coset_type_keys(np.broadcast_to(trivial, image.shape), image), k // 2)
    return perms.astype(np.int64), idx, _batch.signs(perms)


@lru_cache(maxsize=None)
def _single_types_matchings(points: int):
    invs = _batch.all_matchings(points)
    trivial = np.array([x ^ 1 for x in range(points)], dtype=_batch.DTYPE)
    idx = _batch.keys_to_index(_batch.coset_type_keys(np.broadcast_to(trivial, invs.shape), invs), points // 2)
    return invs.astype(np.int64), idx


def _pair_counts(A_rows, B_rows, types, nlam, coupled: bool) -> list:
    """``sum over strings of sum_{x,y} A[s,x] B[s,y] [types[x,y] = lam]`` per ``lam``.

    With ``coupled=False`` the row and column strings range independently.
    """
    counts = []
    if not coupled:
        a = A_rows.sum(axis=0)
        b = B_rows.sum(axis=0)
    for lam in range(nlam):
        E = (types == lam).astype(np.int64)
        if coupled:
            counts.append(int(((A_rows @ E) * B_rows).sum()))
        else:
            counts.append(int(a @ E @ b))
    return counts


def _check_oracle_budget(cost: int, budget) -> None:
    if budget is not None and cost > budget:
        raise BudgetExceeded("direct_contraction", 0, cost, budget)


def _oracle_full(ensemble: str, quantity: str, n: int, N, a, b, budget):
    if not isinstance(N, (int, Fraction)) or int(N) != N or N < 1:
        raise ValueError("direct contraction needs a positive integer dimension")
    N = int(N)
    q, order = _effective_pair(ensemble, quantity, n)

    if ensemble in ("U", "O", "S"):
        side = 2 * N if ensemble == "S" else N
        if q == "trace":
            idx = _strings(side, order)
            nxt = _cyclic_next(idx)
            if ensemble == "U":
                row, col = idx, nxt
            elif ensemble == "O":
                row, col = _interleave(idx, idx), _interleave(nxt, nxt)
            else:
                row = _interleave(idx, (idx + N) % side)
                col = _interleave(nxt, (nxt + N) % side)
            col_b, coupled = col, True
        else:
            i_idx = _strings(side, order)
            j_idx = _strings(side, order)
            i_next = _cyclic_next(i_idx)
            # M_{i1 j1} M_{i2 j1} M_{i2 j2} ... M_{i1 jn}
            rows_i = _interleave(i_idx, i_next)
            cols_j = _interleave(j_idx, j_idx)
            if ensemble == "U":
                row, col = rows_i, cols_j
            elif ensemble == "O":
                row, col = _interleave(rows_i, rows_i), _interleave(cols_j, cols_j)
            else:
                row = _interleave(rows_i, (rows_i + N) % side)
                col = _interleave(cols_j, (cols_j + N) % side)
            col_b, coupled = col, False

        if ensemble == "U":
            k = row.shape[1]
            perms, types = _pair_types_perms(k)
            _check_oracle_budget(row.shape[0] * perms.shape[0] ** 2, budget)
            A = _perm_masks(row, row, perms).astype(np.int64)
            B = _perm_masks(col_b, col_b, perms).astype(np.int64)
            counts = _pair_counts(A, B, types, len(partitions(k)), coupled)
            weights = [wg_u(lam, N) for lam in partitions(k)]
        else:
            points = row.shape[1]
            invs, types = _pair_types_matchings(points)
            _check_oracle_budget(row.shape[0] * invs.shape[0] ** 2, budget)
            half = points // 2
            if ensemble == "O":
                A = _matching_masks(row, invs).astype(np.int64)
                B = _matching_masks(col_b, invs).astype(np.int64)
                weights = [wg_o(lam, N) for lam in partitions(half)]
            else:
                _, reps, signs = _canonical_reps(points)
                A = _primed_delta(row, reps, signs, N)
                B = _primed_delta(col_b, reps, signs, N)
                weights = [(-1) ** half * wg_o(lam, -2 * N) for lam in partitions(half)]
            counts = _pair_counts(A, B, types, len(partitions(half)), coupled)
        return sum((c * w for c, w in zip(counts, weights) if c), Fraction(0))

    # symmetric spaces: single sum over permutations or matchings
    side = 2 * N if ensemble == "AII" else N
    idx = _strings(side, order)
    nxt = _cyclic_next(idx)
    if ensemble in ("AI", "AII"):
        s = _interleave(idx, nxt)
        perms, types, signs = _single_types_perms(2 * order, "coset")
        _check_oracle_budget(s.shape[0] * perms.shape[0], budget)
        mask = _perm_masks(s, s, perms)
        if ensemble == "AI":
            hits = np.bincount(types[np.nonzero(mask)[1]], minlength=len(partitions(order)))
            weights = [wg_o(lam, N + 1) for lam in partitions(order)]
        else:
            cols = np.nonzero(mask)[1]
            hits = np.bincount(types[cols], weights=signs[cols].astype(np.float64), minlength=len(partitions(order)))
            hits = np.rint(hits).astype(np.int64)
            weights = [(-1) ** order * wg_o(lam, 1 - 2 * N) for lam in partitions(order)]
    elif ensemble == "AIII":
        row = _interleave(idx, nxt)
        col = _interleave(nxt, idx)
        perms, types, _ = _single_types_perms(2 * order, "cycle")
        _check_oracle_budget(row.shape[0] * perms.shape[0], budget)
        mask = _perm_masks(row, col, perms)
        hits = np.bincount(types[np.nonzero(mask)[1]], minlength=len(partitions(2 * order)))
        weights = [wg_aiii(lam, a, b) for lam in partitions(2 * order)]
    else:
        c = np.concatenate([np.stack([idx[:, t], nxt[:, t], idx[:, t], nxt[:, t]], axis=1) for t in range(order)], axis=1)
        invs, types = _single_types_matchings(4 * order)
        _check_oracle_budget(c.shape[0] * invs.shape[0], budget)
        mask = _matching_masks(c, invs)
        hits = np.bincount(types[np.nonzero(mask)[1]], minlength=len(partitions(2 * order)))
        weights = [wg_bdi(lam, a, b) for lam in partitions(2 * order)]
    return sum((int(h) * w for h, w in zip(hits, weights) if h), Fraction(0))


def direct_contraction(ensemble: str, n: int, N=None, a=None, b=None, quantity: str = "trace",
                       variant: str = "full", budget: int | None = DEFAULT_ORACLE_BUDGET):
    """Brute-force moment: literal Weingarten sum over all index strings.

    Exponential in ``n`` and ``N``; ``budget`` bounds the number of
    (string, element) incidences examined.
    """
    spec = MomentSpec(ensemble, n, quantity, variant, N, a, b)
    if _trivial_chiral(spec):
        return _trivial_chiral_moment(spec)

    def full_of(q, k):
        return _oracle_full(ensemble, q, k, spec.N, spec.a, spec.b, budget)

    return _apply_variant(spec, full_of)


# ---------------------------------------------------------------------------
# closed forms

def ray_signature(N: int, alpha: Fraction):
    """``(a, b)`` with ``a + b = N`` and ``(a - b)/N = alpha``, or ``None`` if not integral."""
    a2 = (1 + Fraction(alpha)) * N
    if a2.denominator != 1 or a2.numerator % 2:
        return None
    a = a2.numerator // 2
    return a, N - a


def _sample_points(ensemble, quantity, n, variant, alpha, start, method, budget):
    """Yield ``(N, value)`` at successive admissible dimensions, skipping poles."""
    N = start
    while True:
        kwargs = {}
        ok = True
        if ensemble in CHIRAL:
            sig = ray_signature(N, alpha)
            if sig is None or 0 in sig:
                ok = False
            else:
                kwargs = {"a": sig[0], "b": sig[1]}
        else:
            kwargs = {"N": N}
        if ok:
            try:
                if method == "oracle":
                    v = direct_contraction(ensemble, n, quantity=quantity, variant=variant, budget=budget, **kwargs)
                else:
                    v = exact_moment(MomentSpec(ensemble, n, quantity, variant, **kwargs), budget=budget)
                yield N, v
            except PoleError:
                pass
        N += 1


def closed_form(ensemble: str, n: int, quantity: str = "trace", variant: str = "reduced",
                alpha=None, start: int = 1, max_degree: int = 16, method: str | None = None,
                budget: int | None = None) -> RationalFunction:
    """Rational function of ``N`` through exact moment values.

    Degrees are found by scanning ``deg_num + deg_den`` upward; each fit is
    confirmed on three extra samples.  Chiral ensembles are sampled along the
    ray ``(a - b)/N = alpha``.  ``method="oracle"`` samples
    :func:`direct_contraction` (the default for S).
    """
    if ensemble in CHIRAL and alpha is None:
        raise ValueError("chiral closed forms need alpha")
    if method is None:
        method = "oracle" if ensemble == "S" else "tables"
    points = _sample_points(ensemble, quantity, n, variant, Fraction(alpha) if alpha is not None else None,
                            start, method, budget)
    samples = []

    def need(count):
        while len(samples) < count:
            samples.append(next(points))

    for total in range(max_degree + 1):
        for dd in range(total + 1):
            dn = total - dd
            need(dn + dd + 2 + 3)
            try:
                return reconstruct_rational(samples[: dn + dd + 5], dn, dd)
            except ReconstructionError:
                continue
    raise ReconstructionError(f"no rational function of total degree <= {max_degree} fits")


def asymptotic_coefficients(ensemble: str, n: int, count: int, quantity: str = "singular",
                            variant: str = "reduced", index: int | None = None) -> list:
    """Coefficients ``T_{index, j}``, ``j = 1..count``, of ``(1/N) f = sum_j T_j N^(index - j)``.

    ``f`` is the closed form of the requested moment; ``index`` defaults to
    ``n`` (use ``n/2`` for even trace moments of symmetric ensembles).
    """
    f = closed_form(ensemble, n, quantity, variant)
    return laurent_coefficients(f, n if index is None else index, count)


# ---------------------------------------------------------------------------
# reference values without an exact Weingarten route

def cii_first_moment(N, alpha):
    """Reduced first moment for the ``2N x 2N`` quaternionic chiral ensemble."""
    N, alpha = _scalar(N), _scalar(alpha)
    return (4 * N ** 3 * alpha ** 2 - 4 * N ** 2 - N + 1) * _inv((N - 1) * (2 * N + 1))


def cii_first_shifted_moment(N, alpha):
    N, alpha = _scalar(N), _scalar(alpha)
    return (alpha ** 2 - 1) * (4 * N ** 2 + N - 1) * _inv((N - 1) * (2 * N + 1))


_DIRICHLET_WEIGHT = {"BDI": Fraction(1, 2), "AIII": Fraction(1), "CII": Fraction(2)}


def chiral_first_moment(family: str, N, alpha):
    """Reduced first moment of a chiral family from the diagonal of ``U = V K V^-1``.

    ``U_ii = sum_k K_k x_k`` where the block weights ``x`` of a Haar row are
    Dirichlet with parameter ``c`` = 1/2, 1, 2 (real, complex, quaternion), so
    ``E U_ii = alpha`` and ``Var U_ii = (1 - alpha^2) / (c N + 1)``.  ``N`` is
    ``a + b``; the CII matrix has side ``2N``.
    """
    if family not in _DIRICHLET_WEIGHT:
        raise ValueError(f"family must be one of {tuple(_DIRICHLET_WEIGHT)}")
    N, alpha = _scalar(N), _scalar(alpha)
    c = _DIRICHLET_WEIGHT[family]
    side = 2 * N if family == "CII" else N
    return side * (alpha ** 2 + (1 - alpha ** 2) * _inv(c * N + 1)) - 1


def chiral_first_shifted_moment(family: str, N, alpha):
    """``<tr (M - alpha^2)>`` over the reduced spectrum."""
    N, alpha = _scalar(N), _scalar(alpha)
    side = 2 * N if family == "CII" else N
    return chiral_first_moment(family, N, alpha) - alpha ** 2 * (side - 1)
