"""Scalar tower, the alpha/f/gamma/h vector types, and the linear transforms among them.

Scalars are plain Python numbers: `Fraction` (or `int`) for exact values, `float`
for sampled ones.  Exactness is contagious downward only — any arithmetic that
touches a float yields a float.  Vectors carry their dimension explicitly and
store the end entries (index -1 and d) because the conventions there are
load-bearing in every relation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

Scalar = Union[Fraction, int, float]


def is_exact(x: Scalar) -> bool:
    """True for int/Fraction values, False for floats."""
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def as_exact(x: Scalar) -> Fraction:
    """Coerce to Fraction; floats are refused (exactness must be explicit)."""
    if isinstance(x, float):
        raise TypeError(f"refusing to promote float {x!r} to exact")
    return Fraction(x)


def as_float(x: Scalar) -> float:
    return float(x)


def sign(j: int) -> int:
    """(-1)**j, correct for negative j."""
    return 1 if j % 2 == 0 else -1


def binom(n: int, k: int) -> int:
    """Binomial coefficient, 0 outside the usual range."""
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)


def perles_coefficients(d: int, k: int) -> dict:
    """Integer coefficients of alpha_j in the k-th angle-relation residual
    (lhs - rhs), with the alpha_k terms from both sides merged so shared
    values cancel identically."""
    if not -1 <= k <= d - 1:
        raise ValueError("k must satisfy -1 <= k <= d-1")
    coeffs = {j: sign(j) * binom(j + 1, k + 1) for j in range(k, d)}
    coeffs[k] = coeffs.get(k, 0) - sign(d)
    return coeffs


def _check_len(name: str, entries: Sequence, want: int) -> tuple:
    t = tuple(entries)
    if len(t) != want:
        raise ValueError(f"{name} needs {want} entries, got {len(t)}")
    return t


@dataclass(frozen=True)
class FVector:
    """Face counts f_{-1}..f_d of a d-polytope; the end entries are both 1."""

    dim: int
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", _check_len("FVector", self.entries, self.dim + 2))
        for e in self.entries:
            if e < 0:
                raise ValueError(f"negative face count {e}")

    @classmethod
    def polytope(cls, counts: Sequence[int]) -> "FVector":
        """Build from the proper counts f_0..f_{d-1}; ends filled with 1."""
        counts = tuple(counts)
        return cls(len(counts), (1, *counts, 1))

    @classmethod
    def simplex(cls, d: int) -> "FVector":
        return cls(d, tuple(binom(d + 1, i + 1) for i in range(-1, d + 1)))

    def __getitem__(self, i: int):
        if not -1 <= i <= self.dim:
            raise IndexError(f"f_{i} out of range for dim {self.dim}")
        return self.entries[i + 1]

    def proper(self) -> tuple:
        """The entries f_0..f_{d-1}."""
        return self.entries[1:-1]


@dataclass(frozen=True)
class AlphaVector:
    """Angle sums alpha_{-1}..alpha_d; alpha_d = 1, alpha_{-1} = 0 when Euclidean."""

    dim: int
    entries: tuple
    stderr: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "entries", _check_len("AlphaVector", self.entries, self.dim + 2))
        if self.stderr is not None:
            object.__setattr__(self, "stderr", _check_len("stderr", self.stderr, self.dim + 2))

    @classmethod
    def euclidean(cls, sums: Sequence[Scalar], stderr: Optional[Sequence[float]] = None) -> "AlphaVector":
        """Build from alpha_0..alpha_{d-1}; alpha_{-1}=0 and alpha_d=1 filled in."""
        sums = tuple(sums)
        se = None if stderr is None else (0.0, *stderr, 0.0)
        return cls(len(sums), (0, *sums, 1), se)

    def __getitem__(self, i: int):
        if not -1 <= i <= self.dim:
            raise IndexError(f"alpha_{i} out of range for dim {self.dim}")
        return self.entries[i + 1]

    def stderr_at(self, i: int) -> float:
        if self.stderr is None:
            return 0.0
        return self.stderr[i + 1]

    def proper(self) -> tuple:
        return self.entries[1:-1]

    def is_exact(self) -> bool:
        return all(is_exact(e) for e in self.entries)


@dataclass(frozen=True)
class AlphaFVector:
    alpha: AlphaVector
    f: FVector

    def __post_init__(self):
        if self.alpha.dim != self.f.dim:
            raise ValueError(f"dim mismatch: alpha {self.alpha.dim} vs f {self.f.dim}")

    @property
    def dim(self) -> int:
        return self.alpha.dim

    def flat(self) -> tuple:
        """(alpha_0..alpha_d, f_0..f_d) — the joint vector the span theorems live in."""
        return self.alpha.entries[1:] + self.f.entries[1:]


@dataclass(frozen=True)
class HVector:
    dim: int
    entries: tuple  # h_0..h_d

    def __post_init__(self):
        object.__setattr__(self, "entries", _check_len("HVector", self.entries, self.dim + 1))

    def __getitem__(self, i: int):
        if not 0 <= i <= self.dim:
            raise IndexError(f"h_{i} out of range for dim {self.dim}")
        return self.entries[i]


@dataclass(frozen=True)
class GammaVector:
    """gamma_0..gamma_d, with extended indexing: 0 below the range, 1 above it."""

    dim: int
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", _check_len("GammaVector", self.entries, self.dim + 1))

    def __getitem__(self, i: int):
        if i < 0:
            return 0
        if i > self.dim:
            return 1
        return self.entries[i]


def h_from_f(f: FVector) -> HVector:
    d = f.dim
    return HVector(d, tuple(
        sum(sign(i - j) * binom(d - j, d - i) * f[j - 1] for j in range(0, i + 1))
        for i in range(0, d + 1)))


def f_from_h(h: HVector) -> FVector:
    d = h.dim
    lower = tuple(
        sum(binom(d - i, d - j - 1) * h[i] for i in range(0, j + 2))
        for j in range(-1, d))  # f_{-1}..f_{d-1}
    return FVector(d, lower + (1,))


def gamma_from_alpha(a: AlphaVector) -> GammaVector:
    d = a.dim
    return GammaVector(d, tuple(
        sum(sign(i - j) * binom(d - j, d - i) * a[j - 1] for j in range(0, i + 1))
        for i in range(0, d + 1)))


def alpha_from_gamma(g: GammaVector) -> AlphaVector:
    d = g.dim
    lower = tuple(
        sum(binom(d - i, d - j) * g[i] for i in range(0, j + 1))
        for j in range(0, d + 1))  # alpha_{-1}..alpha_{d-1}
    return AlphaVector(d, lower + (1,))


def euler_char(f, top: Optional[int] = None) -> Scalar:
    """Alternating sum of face counts over dimensions 0..top.

    Accepts an FVector (top defaults to d-1, i.e. the boundary) or a plain
    sequence whose entries are f_0..f_top.
    """
    if isinstance(f, FVector):
        counts = f.proper()
    else:
        counts = tuple(f)
    if top is not None:
        counts = counts[:top + 1]
    return sum(sign(i) * c for i, c in enumerate(counts))


def angle_char(a) -> Scalar:
    """Alternating sum of angle sums over dimensions 0..d-1."""
    if isinstance(a, AlphaVector):
        sums = a.proper()
    else:
        sums = tuple(a)
    return sum(sign(i) * s for i, s in enumerate(sums))
