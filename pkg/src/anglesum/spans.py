"""Affine spans of angle/face vectors for structured polytope families.

Three families are built from construction expressions: towers with simplex
face counts (span ⌊(d-1)/2⌋), mixed towers over segment and triangle bases
(span 2d-3, the full affine span of all d-polytopes), and the simplicial
family that pairs exact towers with measured stellar subdivisions (span d-1).
Exact ranks are computed over the rationals; measured vectors get an SVD rank
against an explicit tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .angles import SamplingConfig, angle_sums
from .constructions import (
    Base,
    Expr,
    Prism,
    Pyr,
    Pyr0,
    PyrInf,
    Stellar,
    base_polytope,
    eval_expr,
    expr_f,
    expr_to_str,
    prism_geometric,
    pyramid_geometric,
    regular_simplex,
    stellar_subdivision,
)
from .core import AlphaFVector, AlphaVector, FVector, euler_char, sign
from .facelattice import VPolytope, face_lattice


# --- rank computations --------------------------------------------------

@dataclass(frozen=True)
class RankResult:
    vectors: Tuple[tuple, ...]
    affine_dim: int
    exact: bool


def _is_exact_row(row: Sequence) -> bool:
    return all(isinstance(x, (int, Fraction)) for x in row)


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by Gaussian elimination over Fraction."""
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    col = 0
    ncols = len(mat[0]) if mat else 0
    while rank < len(mat) and col < ncols:
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        p = mat[rank][col]
        for r in range(rank + 1, len(mat)):
            if mat[r][col] != 0:
                factor = mat[r][col] / p
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        col += 1
    return rank


def float_rank(rows: Sequence[Sequence[float]], tol: float) -> int:
    arr = np.asarray(rows, dtype=float)
    if arr.size == 0:
        return 0
    svals = np.linalg.svd(arr, compute_uv=False)
    if svals.size == 0 or svals[0] == 0:
        return 0
    return int(np.count_nonzero(svals > tol * svals[0]))


def _as_row(v) -> tuple:
    if isinstance(v, AlphaFVector):
        return v.flat()
    if isinstance(v, (AlphaVector, FVector)):
        return v.entries
    return tuple(v)


def affine_rank(vectors: Sequence, tol: Optional[float] = None) -> RankResult:
    """Dimension of the affine hull of the given vectors.

    Exact vectors (ints/Fractions) are handled over the rationals when no
    tolerance is given.  Any floating-point entry demands an explicit
    tolerance; mixing floats with tol=None raises.
    """
    rows = [_as_row(v) for v in vectors]
    if len(rows) <= 1:
        return RankResult(tuple(rows), 0, tol is None)
    diffs = [tuple(a - b for a, b in zip(r, rows[0])) for r in rows[1:]]
    if tol is None:
        if not all(_is_exact_row(r) for r in rows):
            raise ValueError("floating-point vectors need an explicit tolerance")
        return RankResult(tuple(rows), exact_rank(diffs), True)
    dim = float_rank([[float(x) for x in r] for r in diffs], tol)
    return RankResult(tuple(rows), dim, False)


# --- the structured families -------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    kind: str  # simplices | simplicial | general
    d: int

    def __post_init__(self):
        if self.kind not in ("simplices", "simplicial", "general"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.d < (1 if self.kind == "simplices" else 2):
            raise ValueError(f"dimension {self.d} too small for {self.kind}")


def simplex_family_exprs(d: int) -> List[Expr]:
    """Limiting-pyramid towers sharing the face counts of the d-simplex.

    Odd d builds on a segment, even d on a triangle; the number of squashed
    stages steps by two, keeping the simplex f-vector while the angle sums
    move.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    if d % 2:
        base, free = "seg", d - 1
    else:
        base, free = "tri", d - 2
    out: List[Expr] = []
    for i in range(0, (d - 1) // 2 + 1):
        e: Expr = Base(base)
        for _ in range(2 * i):
            e = Pyr0(e)
        for _ in range(free - 2 * i):
            e = PyrInf(e)
        out.append(e)
    return out


def simplex_family(d: int) -> List[AlphaVector]:
    return [eval_expr(e).alpha for e in simplex_family_exprs(d)]


def general_family_exprs(d: int) -> List[Expr]:
    """Tall-pyramid/prism towers whose joint vectors fill the affine span of
    all d-polytopes (dimension 2d-3)."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    out: List[Expr] = []
    for i in range(0, d - 1):
        e: Expr = Base("tri")
        for _ in range(i):
            e = Prism(e)
        for _ in range(d - 2 - i):
            e = PyrInf(e)
        out.append(e)
    for i in range(0, d - 1):
        e = Base("seg")
        for _ in range(i + 1):
            e = Prism(e)
        for _ in range(d - 2 - i):
            e = PyrInf(e)
        out.append(e)
    return out


def general_family(d: int) -> List[AlphaFVector]:
    return [eval_expr(e) for e in general_family_exprs(d)]


def simplicial_stellar_dims(d: int) -> List[int]:
    """Face dimensions whose stellar subdivisions supply the measured
    members of the simplicial family."""
    return [d - k for k in range(1, d // 2 + 1)]


def simplicial_family(d: int, cfg: Optional[SamplingConfig] = None
                      ) -> List[AlphaFVector]:
    """Exact towers plus measured stellar subdivisions of the regular simplex.

    Guarded at d <= 5: beyond that the realizations need Monte Carlo on too
    many high-codimension faces to give a trustworthy rank.
    """
    if not 2 <= d <= 5:
        raise ValueError("simplicial span families are set up for 2 <= d <= 5")
    cfg = cfg or SamplingConfig()
    if d == 3:
        exprs: List[Expr] = [Pyr0(Base("tri")), PyrInf(Base("tri"))]
    elif d == 4:
        exprs = [PyrInf(PyrInf(Base("tri"))), Pyr0(Pyr0(Base("tri")))]
    else:
        exprs = simplex_family_exprs(d)
    out = [eval_expr(e) for e in exprs]
    for j in simplicial_stellar_dims(d):
        simplex = regular_simplex(d)
        face = face_lattice(simplex).faces[j][0]
        p = stellar_subdivision(simplex, face)
        out.append(AlphaFVector(angle_sums(p, cfg), face_lattice(p).f_vector()))
    return out


@dataclass(frozen=True)
class SpanReport:
    family: FamilySpec
    labels: Tuple[str, ...]
    rank: RankResult
    expected_rank: int
    tol: Optional[float] = None

    @property
    def ok(self) -> bool:
        return self.rank.affine_dim == self.expected_rank

    def __str__(self) -> str:
        status = "ok" if self.ok else "FAIL"
        return (f"{self.family.kind} span d={self.family.d}: "
                f"{len(self.rank.vectors)} vectors, affine dim "
                f"{self.rank.affine_dim} (expected {self.expected_rank}) [{status}]")


def check_span(spec: FamilySpec, cfg: Optional[SamplingConfig] = None,
               tol: Optional[float] = None) -> SpanReport:
    d = spec.d
    if spec.kind == "simplices":
        labels = tuple(expr_to_str(e) for e in simplex_family_exprs(d))
        return SpanReport(spec, labels, affine_rank(simplex_family(d)),
                          (d - 1) // 2)
    if spec.kind == "general":
        labels = tuple(expr_to_str(e) for e in general_family_exprs(d))
        return SpanReport(spec, labels, affine_rank(general_family(d)),
                          2 * d - 3)
    tol = 1e-4 if tol is None else tol
    vecs = simplicial_family(d, cfg)
    labels = tuple(f"member_{i}" for i in range(len(vecs)))
    return SpanReport(spec, labels, affine_rank(vecs, tol), d - 1, tol)


# --- backing off the limits --------------------------------------------

def _limit_stages(e: Expr) -> int:
    if isinstance(e, Base):
        return 0
    n = _limit_stages(e.child)
    return n + 1 if isinstance(e, (Pyr0, PyrInf)) else n


def concretize(e: Expr, delta, big) -> VPolytope:
    """Geometric stand-in: squashed stages get height delta, tall ones big.

    Nested limiting stages are staged: each outer stage takes the next power
    of the height, since its limit is relative to an already-extreme child.
    """
    if isinstance(e, Base):
        return base_polytope(e.name)
    if isinstance(e, Prism):
        return prism_geometric(concretize(e.child, delta, big))
    if isinstance(e, Pyr):
        return pyramid_geometric(concretize(e.child, delta, big), e.height)
    if isinstance(e, Pyr0):
        return pyramid_geometric(concretize(e.child, delta, big),
                                 delta ** _limit_stages(e))
    if isinstance(e, PyrInf):
        return pyramid_geometric(concretize(e.child, delta, big),
                                 big ** _limit_stages(e))
    if isinstance(e, Stellar):
        q = concretize(e.child, delta, big)
        face = face_lattice(q).faces[e.face_dim][0]
        return stellar_subdivision(q, face)
    raise TypeError(f"not a construction expression: {e!r}")


@dataclass(frozen=True)
class BackingOffReport:
    labels: Tuple[str, ...]
    polytopes: Tuple[VPolytope, ...]
    eps: float
    tol: float
    delta: float
    big: float
    halvings: int
    max_dev: float
    exact_rank: int
    float_rank: int

    @property
    def ok(self) -> bool:
        return self.max_dev <= self.eps and self.float_rank == self.exact_rank


def backing_off(exprs: Sequence[Expr], eps: float = 1e-2, tol: float = 1e-6,
                cfg: Optional[SamplingConfig] = None,
                max_halvings: int = 40) -> BackingOffReport:
    """Replace limiting stages by concrete heights, then push the heights
    until every measured entry sits within eps of the exact limit, and check
    the floating-point affine rank survives (independence is open)."""
    cfg = cfg or SamplingConfig()
    exprs = list(exprs)
    exact_rows = [eval_expr(e).flat() for e in exprs]
    target = [tuple(float(x) for x in row) for row in exact_rows]
    delta, big = 0.5, 2.0
    rows: List[tuple] = []
    polys: List[VPolytope] = []
    dev = float("inf")
    halvings = 0
    for halvings in range(max_halvings):
        rows = []
        polys = []
        dev = 0.0
        for e, want in zip(exprs, target):
            p = concretize(e, delta, big)
            fv = face_lattice(p).f_vector()
            if fv.entries != expr_f(e).entries:
                raise ValueError(f"realization of {expr_to_str(e)} has the "
                                 f"wrong face counts {fv.entries}")
            alpha = angle_sums(p, cfg)
            row = tuple(float(x) for x in alpha.entries[1:] + fv.entries[1:])
            rows.append(row)
            polys.append(p)
            dev = max(dev, max(abs(a - b) for a, b in zip(row, want)))
        if dev <= eps:
            break
        delta /= 2
        big *= 2
    return BackingOffReport(
        tuple(expr_to_str(e) for e in exprs), tuple(polys), eps, tol, delta,
        big, halvings, dev, affine_rank(exact_rows).affine_dim,
        affine_rank(rows, tol).affine_dim)


# --- pyramid preimages --------------------------------------------------

def pyramid_preimage(f: FVector) -> FVector:
    """Invert the pyramid recursion on face counts.

    For any f satisfying the Euler relation the leading alternating sum
    collapses to 1, so the result is a well-formed count vector one dimension
    down; when the input really is a pyramid it recovers the base.
    """
    d = f.dim
    bars = [sum(sign(j - i - 1) * f[j] for j in range(i + 1, d + 1))
            for i in range(-1, d)]
    if bars[0] != 1:
        raise ValueError("input does not satisfy the Euler relation")
    return FVector(d - 1, tuple(bars))


def preimage_alternating_sum(f: FVector):
    """Alternating sum over the pyramid preimage, top entry included.

    Equals 1 exactly when the input counts come from a pyramid, and grows by
    1 under the prism: the preimage of f(B*Q) sums to one more than the
    preimage of f(Q).
    """
    pre = pyramid_preimage(f)
    return euler_char(pre.entries[1:])
