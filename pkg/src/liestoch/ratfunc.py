"""Univariate rational functions with rational coefficients.

Polynomials are tuples of Fractions, lowest degree first.  A
:class:`RationalFunction` is kept normalised: coprime integer numerator and
denominator, content 1, positive leading coefficient in the denominator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt, lcm

__all__ = [
    "RationalFunction",
    "PoleError",
    "poly_eval",
    "poly_str",
    "ReconstructionError",
    "reconstruct_rational",
    "laurent_coefficients",
]


class PoleError(ZeroDivisionError):
    """Evaluation hit a pole."""


class ReconstructionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# dense polynomial helpers

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(p, q):
    n = max(len(p), len(q))
    return _trim((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def _pneg(p):
    return tuple(-c for c in p)


def _pmul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _pdivmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = [Fraction(c) for c in p]
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = Fraction(q[-1])
    while len(_trim(p)) >= len(q):
        p = list(_trim(p))
        shift = len(p) - len(q)
        c = p[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            p[i + shift] -= c * b
    return _trim(quot), _trim(p)


def _pgcd(p, q):
    p, q = _trim(p), _trim(q)
    while q:
        p, q = q, _pdivmod(p, q)[1]
    if not p:
        return ()
    lead = Fraction(p[-1])
    return tuple(Fraction(c) / lead for c in p)


def _primitive(p):
    """Scale to coprime integer coefficients; returns (scale, integer poly)."""
    if not p:
        return Fraction(1), ()
    p = [Fraction(c) for c in p]
    den = reduce(lcm, (c.denominator for c in p), 1)
    ints = [int(c * den) for c in p]
    g = reduce(gcd, ints, 0) or 1
    return Fraction(g, den), tuple(i // g for i in ints)


def poly_eval(p, x):
    out = 0
    for c in reversed(p):
        out = out * x + c
    return out


def poly_str(p, var: str = "N") -> str:
    if not p:
        return "0"
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        else:
            body = str(mag) + ("*" + mono if mono else "")
        terms.append(("-" if c < 0 else "+", body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, body in terms[1:]:
        out += f" {s} {body}"
    return out


def _divisors(m: int) -> list:
    m = abs(m)
    small = [d for d in range(1, isqrt(m) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


def _split_linear(p):
    """Split an integer polynomial into integer linear factors ``(v, u)`` meaning
    ``v*N - u`` and a remaining integer polynomial without rational roots."""
    p = tuple(p)
    factors = []
    while len(p) > 1:
        if p[0] == 0:
            factors.append((1, 0))
            p = p[1:]
            continue
        found = None
        for u in _divisors(p[0]):
            for v in _divisors(p[-1]):
                for r in (Fraction(u, v), Fraction(-u, v)):
                    if poly_eval(p, r) == 0 and gcd(u, v) == 1:
                        found = (r.denominator, r.numerator)
                        break
                if found:
                    break
            if found:
                break
        if not found:
            break
        v, u = found
        q, rem = _pdivmod(p, (Fraction(-u), Fraction(v)))
        assert not rem
        p = tuple(int(c) for c in q)
        factors.append(found)
    return factors, p


def _factor_str(p, var: str = "N") -> str:
    """Product form: integer content, rational linear factors, then the rest."""
    if not p:
        return "0"
    factors, rest = _split_linear(tuple(int(c) for c in p))
    counts = {}
    for f in factors:
        counts[f] = counts.get(f, 0) + 1
    pieces = []
    for (v, u), e in sorted(counts.items(), key=lambda item: -Fraction(item[0][1], item[0][0])):
        if u == 0:
            piece = var
        else:
            head = var if v == 1 else f"{v}*{var}"
            piece = f"({head}{'+' if u < 0 else '-'}{abs(u)})"
        pieces.append(piece if e == 1 else f"{piece}^{e}")
    if len(rest) == 1:
        const = rest[0]
    else:
        content, prim = _primitive(rest)
        const = Fraction(rest[-1], prim[-1])
        if prim[-1] < 0:
            prim, const = _pneg(prim), -const
        pieces.append("(" + poly_str(prim, var) + ")")
    if not pieces:
        return str(const)
    body = "*".join(pieces)
    if const == 1:
        return body
    if const == -1:
        return "-" + body
    return f"{const}*{body}"


def _wrap(text: str) -> str:
    bare = text.lstrip("-")
    if bare.startswith("(") and bare.endswith(")") and bare.count("(") == 1:
        return text
    if any(op in bare for op in "*+ ") or "-" in bare:
        return f"({text})"
    return text


# ---------------------------------------------------------------------------

def _coerce(x) -> "RationalFunction":
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction)):
        return RationalFunction.constant(x)
    return NotImplemented


@dataclass(frozen=True)
class RationalFunction:
    num: tuple
    den: tuple

    def __post_init__(self):
        num, den = _trim(Fraction(c) for c in self.num), _trim(Fraction(c) for c in self.den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = (Fraction(1),)
        else:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
        scale = reduce(lcm, (c.denominator for c in num + den), 1)
        num_i = [int(c * scale) for c in num]
        den_i = [int(c * scale) for c in den]
        content = reduce(gcd, num_i + den_i, 0)
        if den_i[-1] < 0:
            content = -content
        object.__setattr__(self, "num", tuple(c // content for c in num_i))
        object.__setattr__(self, "den", tuple(c // content for c in den_i))

    # constructors -----------------------------------------------------------
    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls((Fraction(c),), (1,))

    @classmethod
    def variable(cls) -> "RationalFunction":
        return cls((0, 1), (1,))

    @classmethod
    def from_coefficients(cls, num, den) -> "RationalFunction":
        return cls(tuple(num), tuple(den))

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)), _pmul(self.den, other.den)
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(_pneg(self.num), self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            raise PoleError("division by the zero rational function")
        return RationalFunction(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, e: int):
        if e < 0:
            return RationalFunction.constant(1) / (self ** (-e))
        out = RationalFunction.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # evaluation -------------------------------------------------------------
    def __call__(self, x):
        d = poly_eval(self.den, Fraction(x))
        if d == 0:
            raise PoleError(f"pole at N={x}")
        return Fraction(poly_eval(self.num, Fraction(x))) / d

    @property
    def deg_num(self) -> int:
        return len(self.num) - 1

    @property
    def deg_den(self) -> int:
        return len(self.den) - 1

    def is_constant(self) -> bool:
        return self.deg_den == 0 and self.deg_num <= 0

    def factored(self, var: str = "N") -> str:
        num = _factor_str(self.num, var) if self.num else "0"
        if self.deg_den == 0 and self.den[0] == 1:
            return num
        den = _factor_str(self.den, var)
        return f"{_wrap(num)} / {_wrap(den)}"

    def __str__(self) -> str:
        if self.deg_den == 0 and self.den[0] == 1:
            return poly_str(self.num)
        return f"{_wrap(poly_str(self.num))} / {_wrap(poly_str(self.den))}"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


# ---------------------------------------------------------------------------
# reconstruction from exact samples

def _nullspace(rows, ncols):
    """Exact nullspace basis of a matrix over Q (list of Fraction rows)."""
    A = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -A[i][f]
        basis.append(v)
    return basis


def reconstruct_rational(samples, deg_num: int, deg_den: int, holdout: int = 3) -> RationalFunction:
    """Rational function with the given degree bounds through exact samples.

    ``samples`` is a sequence of ``(N, value)``.  The first
    ``deg_num + deg_den + 2`` are used to solve for the coefficients and the
    following ``holdout`` points must also be reproduced exactly.
    """
    samples = [(Fraction(x), Fraction(v)) for x, v in samples]
    if len({x for x, _ in samples}) != len(samples):
        raise ReconstructionError("sample abscissae must be distinct")
    need = deg_num + deg_den + 2
    if len(samples) < need + holdout:
        raise ReconstructionError(f"need {need + holdout} samples, got {len(samples)}")
    fit, check = samples[:need], samples[need:need + holdout]
    ncols = deg_num + 1 + deg_den + 1
    rows = [[x ** i for i in range(deg_num + 1)] + [-v * x ** j for j in range(deg_den + 1)] for x, v in fit]
    basis = _nullspace(rows, ncols)
    if not basis:
        raise ReconstructionError("no rational function within the degree bounds fits the samples")
    for vec in basis:
        num, den = vec[: deg_num + 1], vec[deg_num + 1:]
        if not _trim(den):
            continue
        try:
            f = RationalFunction(tuple(num), tuple(den))
            if all(f(x) == v for x, v in fit + check):
                return f
        except (PoleError, ZeroDivisionError):
            continue
    raise ReconstructionError("held-out samples disagree with the fitted rational function")


def laurent_coefficients(f: RationalFunction, n: int, count: int, pre_scale: int = -1) -> list:
    """Large-N expansion coefficients ``T_{n,j}``, ``j = 1..count``.

    Defined by ``N^pre_scale * f(N) = sum_j T_{n,j} N^(n-j)``; the default
    ``pre_scale=-1`` is the ``1/N`` normalisation of a trace moment.
    """
    if not f.num:
        return [Fraction(0)] * count
    # N^p f(N) = N^(top) * (series in 1/N with leading coefficient != 0)
    top = f.deg_num - f.deg_den + pre_scale
    rn = [Fraction(c) for c in reversed(f.num)]
    rd = [Fraction(c) for c in reversed(f.den)]
    # T_{n,j} multiplies N^(n-j); series index i multiplies N^(top-i)
    need = max(0, (top - (n - count)) + 1)
    series = []
    rem = rn + [Fraction(0)] * (need + len(rd))
    for i in range(need):
        c = rem[i] / rd[0]
        series.append(c)
        for k, d in enumerate(rd):
            rem[i + k] -= c * d
    out = []
    for j in range(1, count + 1):
        i = top - (n - j)
        out.append(series[i] if 0 <= i < len(series) else Fraction(0))
    return out
