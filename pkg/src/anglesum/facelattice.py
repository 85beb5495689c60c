"""Facet enumeration and face lattices of convex polytopes given by vertices.

Facets are found by exhaustive hyperplane search over d-subsets of vertices,
with exact orientation tests for rational coordinates and a relative tolerance
for floats.  Desk-scale vertex counts keep the O(C(n,d)·n) scan cheap and avoid
a hull library's edge cases.  The face lattice is the closure of the facet
vertex-sets under pairwise intersection, ranked by affine dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .core import FVector, Scalar, is_exact

FLOAT_TOL = 1e-9


def _is_exact_point(p) -> bool:
    return all(is_exact(c) for c in p)


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _det(m: List[List[Scalar]]):
    """Determinant by fraction-free-ish Gaussian elimination (works for floats too)."""
    n = len(m)
    m = [row[:] for row in m]
    det = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            return 0 * det
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / inv
            if factor != 0:
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return det


def affine_dim(points: Sequence[Tuple[Scalar, ...]], tol: float = FLOAT_TOL) -> int:
    """Dimension of the affine hull of the points."""
    pts = list(points)
    if not pts:
        return -1
    base = pts[0]
    diffs = [_sub(p, base) for p in pts[1:]]
    if not diffs:
        return 0
    return _matrix_rank(diffs, tol)


def _matrix_rank(rows: List[tuple], tol: float) -> int:
    rows = [list(r) for r in rows if any(x != 0 for x in r)]
    if not rows:
        return 0
    exact = all(is_exact(x) for r in rows for x in r)
    ncols = len(rows[0])
    rank = 0
    col = 0
    while rows and col < ncols:
        if exact:
            piv = next((i for i, r in enumerate(rows) if r[col] != 0), None)
        else:
            scale = max(abs(x) for r in rows for x in r)
            piv = None
            best = tol * max(scale, 1.0)
            for i, r in enumerate(rows):
                if abs(r[col]) > best:
                    best = abs(r[col])
                    piv = i
        if piv is None:
            col += 1
            continue
        pivot_row = rows.pop(piv)
        rank += 1
        pv = pivot_row[col]
        reduced = []
        for r in rows:
            if r[col] != 0:
                factor = r[col] / pv
                r = [x - factor * y for x, y in zip(r, pivot_row)]
            if any(x != 0 for x in r):
                reduced.append(r)
        rows = reduced
        col += 1
    return rank


@dataclass(frozen=True)
class VPolytope:
    """A convex polytope as the hull of explicit vertices in R^d."""

    dim: int
    vertices: tuple
    label: str = ""

    def __post_init__(self):
        verts = tuple(tuple(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        for v in verts:
            if len(v) != self.dim:
                raise ValueError(f"vertex {v} not in R^{self.dim}")
        if len(set(verts)) != len(verts):
            raise ValueError("duplicate vertices")
        if affine_dim(verts) != self.dim:
            raise ValueError(f"affine span is not {self.dim}-dimensional")

    def is_exact(self) -> bool:
        return all(_is_exact_point(v) for v in self.vertices)


@dataclass(frozen=True)
class Facet:
    normal: tuple     # outward: normal·x <= offset inside, = on the facet
    offset: Scalar
    vertex_set: frozenset


def _hyperplane_normal(points: List[tuple], d: int):
    """Normal of the hyperplane through d affinely independent points (cofactors)."""
    base = points[0]
    diffs = [_sub(p, base) for p in points[1:]]  # (d-1) x d
    normal = []
    for j in range(d):
        minor = [[row[k] for k in range(d) if k != j] for row in diffs]
        s = 1 if j % 2 == 0 else -1
        normal.append(s * (_det(minor) if minor else 1))
    return tuple(normal)


def facets(p: VPolytope, max_vertices: int = 40) -> List[Facet]:
    """All facets, each as an outward hyperplane plus its vertex set."""
    n = len(p.vertices)
    d = p.dim
    if n > max_vertices:
        raise ValueError(f"{n} vertices exceeds the enumeration guard {max_vertices}")
    exact = p.is_exact()
    verts = p.vertices
    if not exact:
        verts = tuple(tuple(float(c) for c in v) for v in verts)
    scale = 1.0 if exact else max(max(abs(c) for c in v) for v in verts) or 1.0

    seen: Dict[frozenset, Facet] = {}
    for subset in combinations(range(n), d):
        pts = [verts[i] for i in subset]
        normal = _hyperplane_normal(pts, d)
        if all(c == 0 for c in normal):
            continue  # affinely dependent subset
        if not exact:
            norm = sum(c * c for c in normal) ** 0.5
            normal = tuple(c / norm for c in normal)
        offset = _dot(normal, pts[0])
        tol = 0.0 if exact else FLOAT_TOL * scale
        lo = hi = False
        on = []
        ok = True
        for i, v in enumerate(verts):
            s = _dot(normal, v) - offset
            if abs(s) <= tol:
                on.append(i)
            elif s > 0:
                hi = True
            else:
                lo = True
            if hi and lo:
                ok = False
                break
        if not ok:
            continue
        key = frozenset(on)
        if key in seen:
            continue
        if hi:  # flip so the polytope is on the <= side
            normal = tuple(-c for c in normal)
            offset = -offset
        seen[key] = Facet(normal, offset, key)

    result = list(seen.values())
    covered = set()
    for f in result:
        covered |= f.vertex_set
    if covered != set(range(n)):
        missing = sorted(set(range(n)) - covered)
        raise ValueError(f"vertices {missing} lie on no facet (interior point in input?)")
    return result


@dataclass
class FaceLattice:
    """Faces per dimension -1..d, each face a frozenset of vertex indices."""

    dim: int
    faces: Dict[int, List[frozenset]]
    facet_list: List[Facet] = field(default_factory=list)

    def f_vector(self) -> FVector:
        return FVector(self.dim, tuple(len(self.faces[i]) for i in range(-1, self.dim + 1)))

    def facets_containing(self, face: frozenset) -> List[Facet]:
        return [f for f in self.facet_list if face <= f.vertex_set]

    def is_simplicial(self) -> bool:
        return all(len(f) == self.dim for f in self.faces[self.dim - 1])


def face_lattice(p: VPolytope, max_vertices: int = 40) -> FaceLattice:
    fcts = facets(p, max_vertices)
    d = p.dim
    tol = FLOAT_TOL if not p.is_exact() else 0.0

    facet_sets = [f.vertex_set for f in fcts]
    all_faces = set(facet_sets)
    frontier = set(facet_sets)
    while frontier:
        new = set()
        for a in frontier:
            for b in facet_sets:
                c = a & b
                if c and c not in all_faces and c != a:
                    new.add(c)
        all_faces |= new
        frontier = new

    verts = p.vertices
    by_dim: Dict[int, List[frozenset]] = {i: [] for i in range(-1, d + 1)}
    by_dim[-1].append(frozenset())
    by_dim[d].append(frozenset(range(len(verts))))
    for fs in all_faces:
        k = affine_dim([verts[i] for i in fs], tol if tol else FLOAT_TOL)
        if 0 <= k <= d - 1:
            by_dim[k].append(fs)
    for i in by_dim:
        by_dim[i].sort(key=lambda s: tuple(sorted(s)))
    return FaceLattice(d, by_dim, fcts)


def is_simplicial(lattice: FaceLattice) -> bool:
    return lattice.is_simplicial()
