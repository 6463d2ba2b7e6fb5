"""Permutations, partitions, matchings and orbit counting.

Permutations are exposed 1-based, as in cycle notation; ``images[k-1]`` is the
image of ``k``.  Composition follows the functional convention
``(p * q)(x) = p(q(x))``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation",
    "Partition",
    "Matching",
    "cycle_type",
    "sign",
    "coset_type",
    "fpf_involution",
    "orbit_count",
    "special_permutation",
    "matchings",
    "hyperoctahedral",
    "trivial_matching",
    "SPECIAL_NAMES",
]


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition {parts} is not weakly decreasing")
        return super().__new__(cls, parts)

    @classmethod
    def from_unsorted(cls, parts: Iterable[int]) -> "Partition":
        return cls(sorted(parts, reverse=True))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("[]()")
        if not text:
            return cls(())
        return cls.from_unsorted(int(t) for t in re.split(r"[,\s]+", text) if t)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def parts(self) -> tuple:
        return tuple(self)

    def multiplicities(self) -> dict:
        out: dict = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def doubled(self) -> "Partition":
        """The partition ``2*lambda`` (every part doubled)."""
        return Partition(2 * p for p in self)

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self) + "]"

    def __repr__(self) -> str:
        return f"Partition({list(self)})"


@dataclass(frozen=True)
class Permutation:
    images: tuple

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def from_zero_based(cls, images0: Sequence[int]) -> "Permutation":
        return cls(tuple(int(x) + 1 for x in images0))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int | None = None) -> "Permutation":
        cycles = [tuple(c) for c in cycles]
        points = [x for c in cycles for x in c]
        if len(points) != len(set(points)):
            raise ValueError(f"cycles are not disjoint: {cycles}")
        if degree is None:
            degree = max(points, default=0)
        images = list(range(1, degree + 1))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                if not 1 <= a <= degree:
                    raise ValueError(f"point {a} outside 1..{degree}")
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "Permutation":
        """Parse cycle notation such as ``"(1 2)(3 4)"``; ``"()"`` is the identity."""
        cycles = [
            [int(t) for t in re.split(r"[,\s]+", body.strip()) if t]
            for body in re.findall(r"\(([^()]*)\)", text)
        ]
        return cls.from_cycles([c for c in cycles if c], degree)

    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def zero_based(self) -> tuple:
        return tuple(x - 1 for x in self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValueError("degree mismatch in composition")
        return Permutation(tuple(self.images[y - 1] for y in other.images))

    def __pow__(self, e: int) -> "Permutation":
        base = self if e >= 0 else self.inverse()
        out = Permutation.identity(self.degree)
        for _ in range(abs(e)):
            out = base * out
        return out

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, y in enumerate(self.images, start=1):
            inv[y - 1] = i
        return Permutation(tuple(inv))

    def cycles(self, include_fixed: bool = False) -> list:
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, start=1))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self}, degree={self.degree})"


# ---------------------------------------------------------------------------
# zero-based tuple kernels (hot loops avoid the dataclass)

def _cycle_lengths(images0: Sequence[int]) -> list:
    k = len(images0)
    seen = [False] * k
    lengths = []
    for s in range(k):
        if seen[s]:
            continue
        n = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = images0[x]
            n += 1
        lengths.append(n)
    return lengths


def _cycle_type0(images0: Sequence[int]) -> Partition:
    return Partition(sorted(_cycle_lengths(images0), reverse=True))


def _sign0(images0: Sequence[int]) -> int:
    lengths = _cycle_lengths(images0)
    return -1 if (len(images0) - len(lengths)) % 2 else 1


def _coset_type_of_matchings0(m1: Sequence[int], m2: Sequence[int]) -> Partition:
    """Half the component sizes of the union of two perfect matchings.

    Matchings are given as fixed-point-free involutions (0-based arrays).
    """
    k = len(m1)
    seen = [False] * k
    halves = []
    for s in range(k):
        if seen[s]:
            continue
        size = 0
        x = s
        while True:
            seen[x] = True
            y = m1[x]
            seen[y] = True
            size += 2
            x = m2[y]
            if x == s:
                break
        halves.append(size // 2)
    return Partition(sorted(halves, reverse=True))


def _trivial_involution0(k: int) -> tuple:
    return tuple(i ^ 1 for i in range(k))


def _conjugate_involution0(sigma0: Sequence[int], inv0: Sequence[int]) -> tuple:
    """``sigma * inv * sigma^-1``: the involution of the matching ``sigma(inv)``."""
    out = [0] * len(sigma0)
    for i, s in enumerate(sigma0):
        out[s] = sigma0[inv0[i]]
    return tuple(out)


class _UnionFind:
    def __init__(self, k: int):
        self.parent = list(range(k))
        self.count = k

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)
            self.count -= 1


def _orbit_count0(generators: Iterable[Sequence[int]], k: int) -> int:
    uf = _UnionFind(k)
    for g in generators:
        for x, y in enumerate(g):
            uf.union(x, y)
    return uf.count


# ---------------------------------------------------------------------------
# public operations

def cycle_type(p: Permutation) -> Partition:
    return _cycle_type0(p.zero_based)


def sign(p: Permutation) -> int:
    return _sign0(p.zero_based)


def coset_type(p: Permutation) -> Partition:
    """Coset type of ``p`` in ``S_2n``: compare the trivial matching with ``p`` applied to it."""
    if p.degree % 2:
        raise ValueError(f"coset type needs even degree, got {p.degree}")
    t = _trivial_involution0(p.degree)
    return _coset_type_of_matchings0(t, _conjugate_involution0(p.zero_based, t))


def orbit_count(generators: Sequence[Permutation], domain: int) -> int:
    """Number of orbits of the group generated by ``generators`` on ``{1..domain}``."""
    for g in generators:
        if g.degree != domain:
            raise ValueError(f"generator of degree {g.degree} does not act on 1..{domain}")
    return _orbit_count0((g.zero_based for g in generators), domain)


@dataclass(frozen=True)
class Matching:
    """A perfect matching of ``{1..2n}``; blocks are sorted pairs in sorted order."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        pts = [x for b in blocks for x in b]
        if any(len(b) != 2 for b in blocks) or sorted(pts) != list(range(1, len(pts) + 1)):
            raise ValueError(f"not a perfect matching of 1..2n: {self.blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return len(self.blocks)

    @property
    def canonical_rep(self) -> Permutation:
        """Minimal-lex coset representative: ``2r-1 -> a_r``, ``2r -> b_r`` for blocks ``(a_r, b_r)``."""
        return Permutation(tuple(x for b in self.blocks for x in b))

    @classmethod
    def from_permutation(cls, p: Permutation) -> "Matching":
        """The matching ``p(t)``."""
        if p.degree % 2:
            raise ValueError("matchings need even degree")
        return cls(tuple((p(2 * r - 1), p(2 * r)) for r in range(1, p.degree // 2 + 1)))

    @classmethod
    def from_involution(cls, inv: Permutation) -> "Matching":
        if any(inv(x) == x for x in range(1, inv.degree + 1)) or not (inv * inv).is_identity():
            raise ValueError(f"{inv} is not a fixed-point-free involution")
        return cls(tuple((x, inv(x)) for x in range(1, inv.degree + 1) if x < inv(x)))

    def involution0(self) -> tuple:
        out = [0] * (2 * self.n)
        for a, b in self.blocks:
            out[a - 1] = b - 1
            out[b - 1] = a - 1
        return tuple(out)

    def __str__(self) -> str:
        return "{" + ",".join("{%d,%d}" % b for b in self.blocks) + "}"


def trivial_matching(n: int) -> Matching:
    return Matching(tuple((2 * r - 1, 2 * r) for r in range(1, n + 1)))


def fpf_involution(m: Matching | Permutation) -> Permutation:
    """The fixed-point-free involution whose 2-cycles are the blocks.

    A permutation argument ``sigma`` is read as the matching ``sigma(t)``.
    """
    if isinstance(m, Permutation):
        m = Matching.from_permutation(m)
    return Permutation.from_zero_based(m.involution0())


# ---------------------------------------------------------------------------
# named permutations

SPECIAL_NAMES = ("pi_U", "phi_U", "varphi_U", "pi_O", "phi_O", "varphi_O", "pi_BDI")


def _special_cycles(name: str, n: int):
    if name == "pi_U":
        return [tuple(range(1, n + 1))], n
    if name == "phi_U":
        return [(2 * r - 1, 2 * r) for r in range(1, n + 1)], 2 * n
    if name == "varphi_U":
        k = 2 * n
        return [(2 * r, 2 * r + 1 if 2 * r < k else 1) for r in range(1, n + 1)], k
    if name == "pi_O":
        k = 2 * n
        return [tuple(range(1, k + 1, 2)), tuple(range(2, k + 1, 2))], k
    if name == "phi_O":
        return [tuple(range(4 * r - 3, 4 * r + 1)) for r in range(1, n + 1)], 4 * n
    if name == "varphi_O":
        k = 4 * n
        cyc = [(1, 2, k - 1, k)] + [tuple(range(4 * r - 1, 4 * r + 3)) for r in range(1, n)]
        return cyc, k
    if name == "pi_BDI":
        k = 4 * n

        def wrap(x):
            return (x - 1) % k + 1

        return [tuple(wrap(x) for x in (4 * r - 2, 4 * r, 4 * r + 1, 4 * r + 3)) for r in range(1, n + 1)], k
    raise ValueError(f"unknown special permutation {name!r}; expected one of {SPECIAL_NAMES}")


def special_permutation(name: str, n: int) -> Permutation:
    if n < 1:
        raise ValueError("n must be >= 1")
    cycles, degree = _special_cycles(name, n)
    return Permutation.from_cycles(cycles, degree)


# ---------------------------------------------------------------------------
# enumeration

def _matching_blocks(points: tuple) -> Iterator[list]:
    if not points:
        yield []
        return
    a = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1:]
        for tail in _matching_blocks(rest):
            yield [(a, points[i])] + tail


def matchings(n: int) -> Iterator[Matching]:
    """All ``(2n-1)!!`` perfect matchings of ``{1..2n}``, in lexicographic order of blocks."""
    if n < 0:
        raise ValueError("n must be >= 0")
    for blocks in _matching_blocks(tuple(range(1, 2 * n + 1))):
        yield Matching(tuple(blocks))


def hyperoctahedral(n: int) -> Iterator[Permutation]:
    """The stabilizer of the trivial matching in ``S_2n``: ``n! 2^n`` elements."""
    for order in itertools.permutations(range(n)):
        for flips in itertools.product((0, 1), repeat=n):
            images = [0] * (2 * n)
            for r, (target, f) in enumerate(zip(order, flips)):
                a, b = 2 * target + 1, 2 * target + 2
                if f:
                    a, b = b, a
                images[2 * r] = a
                images[2 * r + 1] = b
            yield Permutation(tuple(images))
