"""Exact Weingarten functions.

Every function accepts the dimension as an ``int``, a :class:`~fractions.Fraction`
or a :class:`~liestoch.ratfunc.RationalFunction` (symbolic ``N``).  Concrete
arguments that hit a vanishing Jack value raise :class:`PoleError`.

Unitary-type functions take a cycle type ``lam`` of ``k``; orthogonal-type
functions take a coset type of ``k`` (a permutation in ``S_2k`` reduced to its
double coset in ``H_k``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .permcore import Partition, Permutation, coset_type, sign
from .ratfunc import PoleError, RationalFunction
from .symmfunc import (
    character,
    coset_type_representative,
    dim,
    jack_one_N,
    jack_signature,
    partitions,
    zonal_spherical,
)

__all__ = [
    "FAMILIES",
    "PoleError",
    "WeingartenTable",
    "wg_u",
    "wg_o",
    "wg_sp",
    "wg_ai",
    "wg_aii",
    "wg_aiii",
    "wg_bdi",
    "weingarten_table",
    "symbolic_N",
]

FAMILIES = ("U", "O", "Sp", "AI", "AII", "AIII", "BDI")


def symbolic_N() -> RationalFunction:
    """The indeterminate ``N``; pass it wherever a dimension is expected."""
    return RationalFunction.variable()


def _as_scalar(x):
    if isinstance(x, RationalFunction):
        return x
    return Fraction(x)


def _is_zero(x) -> bool:
    if isinstance(x, RationalFunction):
        return not x.num
    return x == 0


def _checked_inverse(x, what: str):
    if _is_zero(x):
        raise PoleError(f"{what} vanishes")
    return 1 / x


def _finish(total):
    if isinstance(total, RationalFunction) and total.is_constant():
        return Fraction(total.num[0]) if total.num else Fraction(0)
    return total


def wg_u(lam, N):
    """Unitary Weingarten function at cycle type ``lam``."""
    lam = Partition(lam)
    N = _as_scalar(N)
    k = lam.weight
    total = Fraction(0)
    for mu in partitions(k):
        chi = character(mu, lam)
        if chi == 0:
            continue
        J = jack_one_N(mu, 1, N)
        total = total + dim(mu) * chi * _checked_inverse(J, f"J^1_{mu}(1^N) at N={N}")
    return total * Fraction(1, factorial(k))


def wg_o(lam, N):
    """Orthogonal Weingarten function at coset type ``lam``; ``N`` may be negative."""
    lam = Partition(lam)
    N = _as_scalar(N)
    k = lam.weight
    total = Fraction(0)
    for mu in partitions(k):
        omega = zonal_spherical(mu, lam)
        if omega == 0:
            continue
        J = jack_one_N(mu, 2, N)
        total = total + dim(mu.doubled()) * omega * _checked_inverse(J, f"J^2_{mu}(1^N) at N={N}")
    return total * Fraction(2 ** k * factorial(k), factorial(2 * k))


def _signed_o(rep: Permutation, shifted_dim):
    if rep.degree % 2:
        raise ValueError("representative must have even degree")
    k = rep.degree // 2
    return (-1) ** k * sign(rep) * wg_o(coset_type(rep), shifted_dim)


def wg_sp(rep: Permutation, k: int, N):
    """Symplectic Weingarten value attached to the permutation ``rep`` in ``S_2k``.

    Only meaningful together with the matching sign convention used on the
    contraction side: callers pass canonical matching representatives.
    """
    if rep.degree != 2 * k:
        raise ValueError(f"representative degree {rep.degree} != 2k = {2 * k}")
    return _signed_o(rep, -2 * _as_scalar(N))


def wg_ai(lam, N):
    """Weingarten function of the circular orthogonal ensemble ``U(N)/O(N)``."""
    return wg_o(lam, _as_scalar(N) + 1)


def wg_aii(sigma: Permutation, N):
    """Weingarten function of ``U(2N)/Sp(2N)`` at ``sigma`` in ``S_2k``."""
    return _signed_o(sigma, 1 - 2 * _as_scalar(N))


def _check_signature(a, b):
    if isinstance(a, int) and isinstance(b, int) and (a < 0 or b < 0 or a + b < 1):
        raise ValueError(f"invalid signature a={a}, b={b}")


def wg_aiii(lam, a, b):
    """Weingarten function of ``U(N)/(U(a) x U(b))`` at cycle type ``lam``, ``N = a + b``."""
    _check_signature(a, b)
    lam = Partition(lam)
    k = lam.weight
    N = a + b
    total = Fraction(0)
    for mu in partitions(k):
        chi = character(mu, lam)
        if chi == 0:
            continue
        J = jack_one_N(mu, 1, N)
        ratio = jack_signature(mu, 1, a, b) * _checked_inverse(J, f"J^1_{mu}(1^N) at N={N}")
        total = total + dim(mu) * chi * ratio
    return _finish(total * Fraction(1, factorial(k)))


def wg_bdi(lam, a, b):
    """Weingarten function of ``O(N)/(O(a) x O(b))`` at coset type ``lam``, ``N = a + b``."""
    _check_signature(a, b)
    lam = Partition(lam)
    k = lam.weight
    N = a + b
    total = Fraction(0)
    for mu in partitions(k):
        omega = zonal_spherical(mu, lam)
        if omega == 0:
            continue
        J = jack_one_N(mu, 2, N)
        ratio = jack_signature(mu, 2, a, b) * _checked_inverse(J, f"J^2_{mu}(1^N) at N={N}")
        total = total + dim(mu.doubled()) * omega * ratio
    return _finish(total * Fraction(2 ** k * factorial(k), factorial(2 * k)))


@dataclass(frozen=True)
class WeingartenTable:
    """All values of one Weingarten function at a fixed order and dimension.

    For ``Sp`` and ``AII`` the value depends on a permutation, not only on its
    coset type; ``values`` then holds the value at the standard representative
    of each coset type and ``signs`` its sign, so the value at any other
    permutation ``s`` of that type is ``values[lam] * signs[lam] * sign(s)``.
    """

    family: str
    order: int
    dimension: dict
    values: dict
    signs: dict = field(default_factory=dict)

    def entries(self):
        for lam in partitions(self.order):
            yield lam, self.values[lam]


def weingarten_table(family: str, k: int, N=None, a=None, b=None) -> WeingartenTable:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if k < 1:
        raise ValueError("order must be >= 1")
    chiral = family in ("AIII", "BDI")
    if chiral:
        if a is None or b is None:
            raise ValueError(f"{family} needs a and b")
        dimension = {"a": a, "b": b, "N": a + b}
    else:
        if N is None:
            raise ValueError(f"{family} needs N")
        dimension = {"N": N}
    values, signs = {}, {}
    for lam in partitions(k):
        if family == "U":
            values[lam] = wg_u(lam, N)
        elif family == "O":
            values[lam] = wg_o(lam, N)
        elif family == "AI":
            values[lam] = wg_ai(lam, N)
        elif family == "AIII":
            values[lam] = wg_aiii(lam, a, b)
        elif family == "BDI":
            values[lam] = wg_bdi(lam, a, b)
        else:
            rep = coset_type_representative(lam).canonical_rep
            signs[lam] = sign(rep)
            values[lam] = wg_sp(rep, k, N) if family == "Sp" else wg_aii(rep, N)
    return WeingartenTable(family, k, dimension, values, signs)
