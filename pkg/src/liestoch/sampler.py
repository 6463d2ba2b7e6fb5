"""Haar sampling of compact groups and symmetric-space representatives.

Dimension convention: ``N`` is the matrix side for O, U, AI, AIII and BDI and
the half-side for S, AII and CII, whose matrices are ``2N x 2N``.  Chiral
families carry ``a + b = N``.

Random numbers come from ``numpy.random.default_rng`` seeded with
``SeedSequence(seed, spawn_key=(stream,))``: a fixed ``(seed, stream)`` pair
always reproduces the same sequence of draws, different streams are
independent.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "FAMILIES",
    "EnsembleSpec",
    "StochasticMatrix",
    "UnitarityError",
    "make_rng",
    "haar_sample",
    "symmetric_space_sample",
    "sample_unitary",
    "to_stochastic",
    "draw",
    "symplectic_form",
    "signature_matrix",
]

FAMILIES = ("O", "U", "S", "AI", "AII", "AIII", "BDI", "CII")
GROUPS = ("O", "U", "S")
DOUBLED = ("S", "AII", "CII")
CHIRAL = ("AIII", "BDI", "CII")
SYMMETRIC = ("AI", "AII", "AIII", "BDI", "CII")

UNITARITY_TOL = 1e-10


class UnitarityError(ValueError):
    pass


@dataclass(frozen=True)
class EnsembleSpec:
    family: str
    N: int
    a: int | None = None
    b: int | None = None
    seed: int = 0
    stream: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if self.family in CHIRAL:
            if self.a is None and self.b is None:
                raise ValueError(f"{self.family} needs a (or b)")
            a = self.a if self.a is not None else self.N - self.b
            b = self.b if self.b is not None else self.N - a
            if a < 0 or b < 0 or a + b != self.N:
                raise ValueError(f"need 0 <= a, b and a + b = N; got a={a}, b={b}, N={self.N}")
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)
        elif self.a is not None or self.b is not None:
            raise ValueError(f"{self.family} takes no (a, b)")
        if self.seed < 0 or self.stream < 0:
            raise ValueError("seed and stream must be non-negative")

    @property
    def side(self) -> int:
        return 2 * self.N if self.family in DOUBLED else self.N

    @property
    def alpha(self) -> Fraction:
        if self.family not in CHIRAL:
            raise AttributeError("alpha is defined for chiral families")
        return Fraction(self.a - self.b, self.N)

    @property
    def symmetric(self) -> bool:
        return self.family in SYMMETRIC

    def to_json(self) -> dict:
        out = {"family": self.family, "N": self.N, "side": self.side, "seed": self.seed, "stream": self.stream}
        if self.family in CHIRAL:
            out.update(a=self.a, b=self.b, alpha=str(self.alpha))
        return out


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream,)))


def symplectic_form(N: int) -> np.ndarray:
    """``[[0, I], [-I, 0]]`` of size ``2N``."""
    J = np.zeros((2 * N, 2 * N))
    J[:N, N:] = np.eye(N)
    J[N:, :N] = -np.eye(N)
    return J


def signature_matrix(a: int, b: int) -> np.ndarray:
    return np.diag(np.concatenate([np.ones(a), -np.ones(b)]))


def _unitarity_residual(U: np.ndarray) -> float:
    return float(np.abs(U.conj().T @ U - np.eye(U.shape[0])).max()) if U.size else 0.0


def _qr_haar(Z: np.ndarray) -> np.ndarray:
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    phase = d / np.abs(d)
    return Q * phase[None, :]


def _haar_symplectic(N: int, rng: np.random.Generator) -> np.ndarray:
    """Quaternionic Gram-Schmidt: columns ``u_j`` and partners ``w_j = -J conj(u_j)``."""
    J = symplectic_form(N)
    S = np.zeros((2 * N, 2 * N), dtype=complex)
    for j in range(N):
        u = (rng.standard_normal(2 * N) + 1j * rng.standard_normal(2 * N)) / np.sqrt(2)
        basis = np.concatenate([S[:, :j], S[:, N:N + j]], axis=1)
        for _ in range(2):
            u = u - basis @ (basis.conj().T @ u)
        u = u / np.linalg.norm(u)
        S[:, j] = u
        S[:, N + j] = -J @ u.conj()
    return S


def haar_sample(family: str, N: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed element of O(N), U(N) or Sp(2N) (``family`` O, U or S)."""
    if family == "O":
        return _qr_haar(rng.standard_normal((N, N)))
    if family == "U":
        Z = (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) / np.sqrt(2)
        return _qr_haar(Z)
    if family == "S":
        return _haar_symplectic(N, rng)
    raise ValueError(f"haar_sample takes O, U or S, not {family!r}")


def symmetric_space_sample(spec: EnsembleSpec, rng: np.random.Generator) -> np.ndarray:
    """Representative ``U`` of a Haar-random point of the symmetric space."""
    f, N = spec.family, spec.N
    if f == "AI":
        V = haar_sample("U", N, rng)
        return V @ V.T
    if f == "AII":
        V = haar_sample("U", 2 * N, rng)
        return V @ symplectic_form(N) @ V.T
    if f == "AIII":
        V = haar_sample("U", N, rng)
        return V @ signature_matrix(spec.a, spec.b) @ V.conj().T
    if f == "BDI":
        V = haar_sample("O", N, rng)
        return V @ signature_matrix(spec.a, spec.b) @ V.T
    if f == "CII":
        V = haar_sample("S", N, rng)
        J = symplectic_form(N)
        K = np.kron(np.eye(2), signature_matrix(spec.a, spec.b))
        return V @ K @ (J @ V.T @ J.T)
    raise ValueError(f"{f!r} is not a symmetric space family")


def sample_unitary(spec: EnsembleSpec, rng: np.random.Generator) -> np.ndarray:
    if spec.family in GROUPS:
        return haar_sample(spec.family, spec.N, rng)
    return symmetric_space_sample(spec, rng)


@dataclass(frozen=True)
class StochasticMatrix:
    entries: np.ndarray
    source_unitarity_residual: float
    row_sum_dev: float
    col_sum_dev: float

    @property
    def N(self) -> int:
        return self.entries.shape[0]

    def symmetry_residual(self) -> float:
        return float(np.abs(self.entries - self.entries.T).max()) if self.entries.size else 0.0

    def checks(self) -> dict:
        return {
            "unitarity": self.source_unitarity_residual,
            "row_sum_dev": self.row_sum_dev,
            "col_sum_dev": self.col_sum_dev,
            "symmetry": self.symmetry_residual(),
        }


def to_stochastic(U: np.ndarray, tol: float = UNITARITY_TOL) -> StochasticMatrix:
    """``M_ij = |U_ij|^2``; refuses inputs that are not unitary to ``tol``."""
    U = np.asarray(U)
    residual = _unitarity_residual(U)
    if residual > tol:
        raise UnitarityError(f"unitarity residual {residual:.3g} exceeds {tol:.1g}")
    M = np.abs(U) ** 2
    ones = np.ones(M.shape[0])
    row = float(np.abs(M @ ones - 1).max()) if M.size else 0.0
    col = float(np.abs(ones @ M - 1).max()) if M.size else 0.0
    return StochasticMatrix(M, residual, row, col)


def draw(spec: EnsembleSpec, count: int, keep_unitary: bool = False):
    """Yield ``count`` stochastic matrices (with their unitaries if asked)."""
    rng = make_rng(spec.seed, spec.stream)
    for _ in range(count):
        U = sample_unitary(spec, rng)
        M = to_stochastic(U)
        yield (U, M) if keep_unitary else M
