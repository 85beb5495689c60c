"""Polytopal complexes: voxel complexes in any dimension, 3d cell complexes
with exact rational cells, and abstract simplicial complexes.

Angle sums of a complex run over the faces of its boundary only; at a boundary
face the angle adds the contributions of every incident cell.  For voxel
complexes each incident cell contributes an orthant, so every angle is an
exact dyadic fraction: a face of codimension c meeting k cells has angle
k / 2^c.

The angle characteristic chi_alpha is the alternating sum alpha_0 - alpha_1
+ ... +- alpha_{d-1}; the boundary characteristic chi(dC) is the alternating
sum of boundary face counts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .core import Scalar, sign
from .angles import SamplingConfig, interior_angle
from .facelattice import FaceLattice, VPolytope, face_lattice

Cell = Tuple[int, ...]
Face = Tuple[Tuple[int, int], ...]  # per axis: (lower corner, extent 0 or 1)


class GluingError(ValueError):
    """The interface between the glued pieces is not of a supported kind."""


# --- voxel complexes ----------------------------------------------------

@dataclass(frozen=True)
class VoxelComplex:
    dim: int
    cells: FrozenSet[Cell]
    label: str = ""

    def __post_init__(self):
        if not self.cells:
            raise ValueError("empty complex")
        for c in self.cells:
            if len(c) != self.dim:
                raise ValueError(f"cell {c} is not {self.dim}-dimensional")

    @classmethod
    def from_cells(cls, dim: int, cells: Iterable[Cell], label: str = "",
                   connected: bool = True) -> "VoxelComplex":
        v = cls(dim, frozenset(tuple(c) for c in cells), label)
        if connected and not facet_connected(v):
            raise ValueError("cells are not connected through facets")
        return v

    def translate(self, offset: Cell) -> "VoxelComplex":
        return VoxelComplex(self.dim, frozenset(
            tuple(a + o for a, o in zip(c, offset)) for c in self.cells), self.label)


def facet_connected(v: VoxelComplex) -> bool:
    cells = v.cells
    start = next(iter(cells))
    seen = {start}
    queue = [start]
    while queue:
        c = queue.pop()
        for a in range(v.dim):
            for step in (-1, 1):
                n = tuple(x + step if i == a else x for i, x in enumerate(c))
                if n in cells and n not in seen:
                    seen.add(n)
                    queue.append(n)
    return len(seen) == len(cells)


def face_dim(face: Face) -> int:
    return sum(e for _, e in face)


def cell_faces(cell: Cell) -> Iterable[Face]:
    """All proper faces of a unit cell, every dimension below the top."""
    d = len(cell)
    for extents in itertools.product((0, 1), repeat=d):
        if all(extents):
            continue  # the cell itself
        free = [a for a in range(d) if extents[a] == 0]
        for offsets in itertools.product((0, 1), repeat=len(free)):
            spec = list(zip(cell, extents))
            for a, o in zip(free, offsets):
                spec[a] = (cell[a] + o, 0)
            yield tuple(spec)


@lru_cache(maxsize=128)
def face_incidence(v: VoxelComplex) -> Dict[Face, int]:
    """How many cells of the complex meet each face of each cell."""
    counts: Dict[Face, int] = {}
    for cell in v.cells:
        for face in cell_faces(cell):
            counts[face] = counts.get(face, 0) + 1
    return counts


def boundary_faces(v: VoxelComplex) -> Dict[Face, int]:
    """Faces on the boundary, with their incidence counts."""
    out = {}
    for face, k in face_incidence(v).items():
        if k < 2 ** (v.dim - face_dim(face)):
            out[face] = k
    return out


def voxel_alpha(v: VoxelComplex) -> Tuple[Fraction, ...]:
    """Angle sums (alpha_0 .. alpha_{d-1}) over the boundary faces."""
    sums = [Fraction(0)] * v.dim
    for face, k in boundary_faces(v).items():
        i = face_dim(face)
        sums[i] += Fraction(k, 2 ** (v.dim - i))
    return tuple(sums)


def voxel_boundary_f(v: VoxelComplex) -> Tuple[int, ...]:
    counts = [0] * v.dim
    for face in boundary_faces(v):
        counts[face_dim(face)] += 1
    return tuple(counts)


def chi(seq: Sequence[Scalar]) -> Scalar:
    return sum(sign(i) * x for i, x in enumerate(seq))


def chi_alpha(v: VoxelComplex) -> Scalar:
    return chi(voxel_alpha(v))


def chi_boundary(v: VoxelComplex) -> Scalar:
    return chi(voxel_boundary_f(v))


def refine(v: VoxelComplex, factor: int = 2) -> VoxelComplex:
    """Subdivide every cell into factor^d subcells."""
    if factor < 2:
        raise ValueError("factor must be at least 2")
    cells = set()
    for c in v.cells:
        for off in itertools.product(range(factor), repeat=v.dim):
            cells.add(tuple(factor * x + o for x, o in zip(c, off)))
    return VoxelComplex(v.dim, frozenset(cells), v.label)


def face_vertices(face: Face) -> List[Cell]:
    axes = [(x, x + e) if e else (x,) for x, e in face]
    return [tuple(p) for p in itertools.product(*axes)]


def _subfaces(face: Face) -> Iterable[Face]:
    """All faces of a face, itself included."""
    spans = []
    for x, e in face:
        spans.append([(x, e), (x, 0), (x + e, 0)] if e else [(x, 0)])
    seen = set()
    for combo in itertools.product(*spans):
        if combo not in seen:
            seen.add(combo)
            yield combo


# --- gluing -------------------------------------------------------------

@dataclass(frozen=True)
class Interface:
    kind: str                 # balls | annuli | closed | lower-dim
    components: int
    detail: int               # lower-dim: max dimension; closed: total chi

    def describe(self) -> str:
        if self.kind == "lower-dim":
            return f"lower-dim(l={self.detail})"
        if self.kind == "closed":
            return f"closed(m={self.components}, chi={self.detail})"
        return f"{self.kind}(m={self.components})"


@dataclass(frozen=True)
class GluingReport:
    complex: VoxelComplex
    interface: Interface
    alpha: Tuple[Fraction, ...]
    boundary_f: Tuple[int, ...]
    chi_alpha: Scalar
    chi_boundary: Scalar
    predicted_chi_alpha: Scalar
    predicted_chi_boundary: Scalar
    valuation_ok: bool
    half_ratio_ok: Optional[bool]   # odd d only: chi_alpha == chi(dC)/2

    @property
    def predictions_ok(self) -> bool:
        return (self.chi_alpha == self.predicted_chi_alpha
                and self.chi_boundary == self.predicted_chi_boundary)


def _components(adjacency: Dict):
    seen = set()
    comps = []
    for start in adjacency:
        if start in seen:
            continue
        comp = {start}
        queue = [start]
        while queue:
            x = queue.pop()
            for y in adjacency[x]:
                if y not in comp:
                    comp.add(y)
                    queue.append(y)
        seen |= comp
        comps.append(comp)
    return comps


def _classify_interface(d: int, shared: set) -> Interface:
    """Classify the shared subcomplex of a gluing."""
    top = [f for f in shared if face_dim(f) == d - 1]
    if not top:
        l = max(face_dim(f) for f in shared)
        verts = {f: set(face_vertices(f)) for f in shared}
        adj = {f: [g for g in shared if g is not f and verts[f] & verts[g]]
               for f in shared}
        comps = _components(adj)
        return Interface("lower-dim", len(comps), l)

    closure = set()
    for f in top:
        closure |= set(_subfaces(f))
    if closure != shared:
        raise GluingError("interface mixes dimensions")

    ridge_tops: Dict[Face, List[Face]] = {}
    for f in top:
        for g in _subfaces(f):
            if face_dim(g) == d - 2:
                ridge_tops.setdefault(g, []).append(f)
    if any(len(ts) > 2 for ts in ridge_tops.values()):
        raise GluingError("interface is not a manifold")

    adj = {f: [] for f in top}
    for g, ts in ridge_tops.items():
        if len(ts) == 2:
            adj[ts[0]].append(ts[1])
            adj[ts[1]].append(ts[0])
    comps = _components(adj)

    used_vertices: List[set] = []
    for comp in comps:
        vs = set()
        for f in comp:
            vs.update(face_vertices(f))
        for prev in used_vertices:
            if prev & vs:
                raise GluingError("interface components touch")
        used_vertices.append(vs)

    kinds = []
    chis = []
    for comp in comps:
        faces = set()
        for f in comp:
            faces |= set(_subfaces(f))
        comp_chi = chi_of_faces(faces)
        chis.append(comp_chi)
        rim = [g for g, ts in ridge_tops.items()
               if len(ts) == 1 and ts[0] in comp]
        if not rim:
            kinds.append("closed")
            continue
        rim_faces = set()
        for g in rim:
            rim_faces |= set(_subfaces(g))
        rim_comps = _rim_components(rim)
        if comp_chi == 1 and rim_comps == 1:
            kinds.append("ball")
        elif comp_chi == 1 + sign(d) and rim_comps == 2:
            kinds.append("annulus")
        else:
            raise GluingError("interface component of unsupported type")

    if all(k == "ball" for k in kinds):
        return Interface("balls", len(comps), 0)
    if all(k == "annulus" for k in kinds):
        return Interface("annuli", len(comps), 0)
    if all(k == "closed" for k in kinds):
        return Interface("closed", len(comps), sum(chis))
    raise GluingError("interface mixes component types")


def _rim_components(rim: List[Face]) -> int:
    verts = {g: set(face_vertices(g)) for g in rim}
    adj = {g: [h for h in rim if h is not g and verts[g] & verts[h]] for g in rim}
    return len(_components(adj))


def chi_of_faces(faces: Iterable[Face]) -> int:
    total = 0
    for f in faces:
        total += sign(face_dim(f))
    return total


def glue(a: VoxelComplex, b: VoxelComplex) -> GluingReport:
    """Union of two voxel complexes with disjoint cells, with the interface
    classified and the gluing laws checked."""
    if a.dim != b.dim:
        raise GluingError("dimensions differ")
    d = a.dim
    if a.cells & b.cells:
        raise GluingError("interiors overlap")
    c = VoxelComplex(d, a.cells | b.cells,
                     label=f"{a.label or 'A'}+{b.label or 'B'}")

    inc_a, inc_b, inc_c = face_incidence(a), face_incidence(b), face_incidence(c)
    shared = set(inc_a) & set(inc_b)
    if not shared:
        raise GluingError("pieces do not meet")

    full = lambda f: 2 ** (d - face_dim(f))
    int_k = {f for f in shared if inc_c[f] == full(f)}
    bd_k = shared - int_k

    # valuation identities, dimension by dimension
    fa, fb, fc = voxel_boundary_f(a), voxel_boundary_f(b), voxel_boundary_f(c)
    aa, ab, ac = voxel_alpha(a), voxel_alpha(b), voxel_alpha(c)
    ok = True
    for i in range(d):
        n_int = sum(1 for f in int_k if face_dim(f) == i)
        n_bd = sum(1 for f in bd_k if face_dim(f) == i)
        ok &= fc[i] == fa[i] + fb[i] - 2 * n_int - n_bd
        ok &= ac[i] == aa[i] + ab[i] - n_int

    interface = _classify_interface(d, shared)

    ca, cb = chi(aa), chi(ab)
    ba, bb = chi(fa), chi(fb)
    m = interface.components
    s = sign(d - 1)
    if interface.kind == "balls":
        pred_alpha = ca + cb - m * s
        pred_boundary = ba + bb - m * (1 + s)
    elif interface.kind == "annuli":
        # a swallowed open annulus has compact-support chi -(1 + (-1)^d),
        # and its two rim spheres stay on the boundary
        pred_alpha = ca + cb + m * (1 + sign(d))
        pred_boundary = ba + bb
    elif interface.kind == "closed":
        total_chi = interface.detail
        pred_alpha = ca + cb - total_chi
        pred_boundary = ba + bb - 2 * total_chi
    else:  # lower-dim
        shared_chi = chi_of_faces(shared)
        pred_alpha = ca + cb
        pred_boundary = ba + bb - shared_chi

    got_alpha, got_boundary = chi(ac), chi(fc)
    half = None
    if d % 2 == 1:
        half = got_alpha == Fraction(got_boundary, 2)
    return GluingReport(c, interface, ac, fc, got_alpha, got_boundary,
                        pred_alpha, pred_boundary, ok, half)


# --- flats of a 3d voxel boundary --------------------------------------

@dataclass(frozen=True)
class FlatsReport:
    f: Tuple[int, int, int]            # corner vertices, straight edges, flats
    alpha: Tuple[Fraction, Fraction, Fraction]

    @property
    def chi(self) -> int:
        return self.f[0] - self.f[1] + self.f[2]

    @property
    def chi_alpha(self) -> Scalar:
        return self.alpha[0] - self.alpha[1] + self.alpha[2]


def flats3(v: VoxelComplex) -> FlatsReport:
    """Coarsen the boundary of a 3d voxel complex into maximal planar flats,
    maximal straight edges between them, and genuine corner vertices."""
    if v.dim != 3:
        raise ValueError("flats are implemented for 3d complexes")
    binc = boundary_faces(v)
    squares = [f for f in binc if face_dim(f) == 2]

    def square_key(f: Face):
        axis = next(a for a, (_, e) in enumerate(f) if e == 0)
        coord = f[axis][0]
        below = tuple(x - (1 if a == axis else 0) for a, (x, _) in enumerate(f))
        side = 1 if below in v.cells else -1
        return axis, coord, side

    keys = {f: square_key(f) for f in squares}
    sq_edges: Dict[Face, List[Face]] = {}
    for f in squares:
        for g in _subfaces(f):
            if face_dim(g) == 1:
                sq_edges.setdefault(g, []).append(f)

    adj = {f: [] for f in squares}
    for g, fs in sq_edges.items():
        for x, y in itertools.combinations(fs, 2):
            if keys[x] == keys[y]:
                adj[x].append(y)
                adj[y].append(x)
    flat_of: Dict[Face, int] = {}
    for fid, comp in enumerate(_components(adj)):
        for f in comp:
            flat_of[f] = fid
    n_flats = len(set(flat_of.values()))

    # crease edges separate two distinct flats
    creases: Dict[Face, FrozenSet[int]] = {}
    for g, fs in sq_edges.items():
        if g not in binc:
            continue
        flats_here = {flat_of[f] for f in fs}
        if len(fs) != 2:
            raise ValueError("boundary surface is not a manifold along an edge")
        if len(flats_here) == 2:
            creases[g] = frozenset(flats_here)

    # corner vertices: boundary vertices meeting at least three flats
    vert_flats: Dict[Cell, set] = {}
    for f in squares:
        for p in face_vertices(f):
            vert_flats.setdefault(p, set()).add(flat_of[f])
    corners = {p for p, fl in vert_flats.items() if len(fl) >= 3}

    # straight runs: crease edges between the same flat pair, joined at
    # non-corner vertices
    run_adj = {g: [] for g in creases}
    end_verts: Dict[Face, List[Cell]] = {g: face_vertices(g) for g in creases}
    by_vert: Dict[Cell, List[Face]] = {}
    for g in creases:
        for p in end_verts[g]:
            if p not in corners:
                by_vert.setdefault(p, []).append(g)
    for p, gs in by_vert.items():
        for x, y in itertools.combinations(gs, 2):
            if creases[x] == creases[y]:
                run_adj[x].append(y)
                run_adj[y].append(x)
    runs = _components(run_adj)
    n_edges = len(runs)

    a0 = sum(Fraction(binc[tuple((c, 0) for c in p)], 8) for p in corners)
    a1 = Fraction(0)
    for run in runs:
        inc = {binc[g] for g in run}
        if len(inc) != 1:
            raise ValueError("angle varies along a straight edge")
        a1 += Fraction(inc.pop(), 4)
    a2 = Fraction(n_flats, 2)
    return FlatsReport((len(corners), n_edges, n_flats), (a0, a1, a2))


# --- fixtures -----------------------------------------------------------

def block(nx: int, ny: int, nz: int, label: str = "block") -> VoxelComplex:
    cells = {(x, y, z) for x in range(nx) for y in range(ny) for z in range(nz)}
    return VoxelComplex.from_cells(3, cells, label)


def torus_voxel() -> VoxelComplex:
    """A 3x3x1 slab with the center cell removed: a solid torus."""
    cells = {(x, y, 0) for x in range(3) for y in range(3)} - {(1, 1, 0)}
    return VoxelComplex.from_cells(3, cells, "torus-voxel")


def gamma_voxel() -> VoxelComplex:
    """A 3x3x3 block with the center cell removed: a thick spherical shell."""
    cells = {(x, y, z) for x in range(3) for y in range(3) for z in range(3)}
    cells -= {(1, 1, 1)}
    return VoxelComplex.from_cells(3, cells, "gamma")


def handlebody(genus: int) -> VoxelComplex:
    """A flat slab with `genus` separated holes."""
    if genus < 0:
        raise ValueError("genus must be >= 0")
    ny = 2 * genus + 1
    cells = {(x, y, 0) for x in range(3) for y in range(ny)}
    for k in range(genus):
        cells.discard((1, 2 * k + 1, 0))
    return VoxelComplex.from_cells(3, cells, f"handlebody-{genus}")


FURCH_TUNNEL: Tuple[Cell, ...] = (
    (4, 3, 4), (4, 3, 3), (4, 3, 2), (5, 3, 2), (6, 3, 2), (6, 3, 1),
    (5, 3, 1), (4, 3, 1), (3, 3, 1), (2, 3, 1), (2, 3, 2), (2, 3, 3),
)


def furch() -> VoxelComplex:
    """A 9x7x5 block with a dead-end tunnel drilled from the top, the bore
    looping underneath its own entry shaft.  Still a ball."""
    cells = {(x, y, z) for x in range(9) for y in range(7) for z in range(5)}
    cells -= set(FURCH_TUNNEL)
    return VoxelComplex.from_cells(3, cells, "furch")


def furch_filled() -> VoxelComplex:
    cells = {(x, y, z) for x in range(9) for y in range(7) for z in range(5)}
    return VoxelComplex.from_cells(3, cells, "furch-filled")


# --- 3d cell complexes with exact polytopal cells -----------------------

@dataclass
class CellComplex3:
    cells: List[VPolytope]
    label: str = ""
    _lattices: List[FaceLattice] = field(default_factory=list, repr=False)

    def __post_init__(self):
        for p in self.cells:
            if p.dim != 3:
                raise ValueError("cells must be 3-dimensional")
        self._lattices = [face_lattice(p) for p in self.cells]

    def _face_key(self, ci: int, face: frozenset) -> frozenset:
        verts = self.cells[ci].vertices
        return frozenset(tuple(Fraction(x) for x in verts[i]) for i in face)

    def boundary_angle_sums(self, cfg: SamplingConfig = SamplingConfig()
                            ) -> Tuple[Tuple[Scalar, ...], Tuple[int, ...]]:
        """(alpha_0..alpha_2, boundary face counts) of the complex."""
        facet_count: Dict[frozenset, int] = {}
        for ci, lat in enumerate(self._lattices):
            for f in lat.faces[2]:
                key = self._face_key(ci, f)
                facet_count[key] = facet_count.get(key, 0) + 1
        boundary_facets = {k for k, n in facet_count.items() if n == 1}
        if any(n > 2 for n in facet_count.values()):
            raise ValueError("three cells share a 2-face")

        boundary: Dict[int, set] = {0: set(), 1: set(), 2: boundary_facets}
        for ci, lat in enumerate(self._lattices):
            for f in lat.faces[2]:
                if self._face_key(ci, f) not in boundary_facets:
                    continue
                for i in (0, 1):
                    for g in lat.faces[i]:
                        if g <= f:
                            boundary[i].add(self._face_key(ci, g))

        sums: List[Scalar] = [0, 0, 0]
        for i in (0, 1, 2):
            total: Scalar = 0
            for key in boundary[i]:
                for ci, lat in enumerate(self._lattices):
                    local = self._local_face(ci, lat, i, key)
                    if local is not None:
                        est = interior_angle(self.cells[ci], lat, local, cfg)
                        total = total + est.value
            sums[i] = total
        counts = tuple(len(boundary[i]) for i in (0, 1, 2))
        return tuple(sums), counts

    def _local_face(self, ci: int, lat: FaceLattice, i: int,
                    key: frozenset) -> Optional[frozenset]:
        for g in lat.faces[i]:
            if self._face_key(ci, g) == key:
                return g
        return None


def _trapezoid_prism(quad, z0=0, z1=1) -> VPolytope:
    verts = tuple((x, y, z0) for x, y in quad) + tuple((x, y, z1) for x, y in quad)
    return VPolytope(3, verts)


TORUS_QUADS = (
    ((0, 0), (3, 0), (2, 1), (1, 1)),
    ((3, 0), (3, 3), (2, 2), (2, 1)),
    ((3, 3), (0, 3), (1, 2), (2, 2)),
    ((0, 3), (0, 0), (1, 1), (1, 2)),
)


def torus_prism(split: bool = False) -> CellComplex3:
    """Four trapezoidal prisms forming a square picture frame (solid torus).

    With split=True every prism is cut at mid-height into two, giving a
    subdivision of the same solid for refinement-invariance checks.
    """
    cells = []
    for quad in TORUS_QUADS:
        if split:
            cells.append(_trapezoid_prism(quad, 0, Fraction(1, 2)))
            cells.append(_trapezoid_prism(quad, Fraction(1, 2), 1))
        else:
            cells.append(_trapezoid_prism(quad))
    return CellComplex3(cells, "torus-prism")


# --- abstract simplicial complexes --------------------------------------

@dataclass(frozen=True)
class SimplicialComplex:
    facets: Tuple[FrozenSet, ...]

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable]) -> "SimplicialComplex":
        fs = tuple(sorted({frozenset(f) for f in facets},
                          key=lambda s: sorted(map(str, s))))
        if not fs:
            raise ValueError("no facets")
        return cls(fs)

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def all_faces(self) -> FrozenSet[FrozenSet]:
        out = {frozenset()}
        for f in self.facets:
            for r in range(1, len(f) + 1):
                out.update(map(frozenset, itertools.combinations(f, r)))
        return frozenset(out)

    def f_vector_proper(self) -> Tuple[int, ...]:
        counts = [0] * (self.dim + 1)
        for f in self.all_faces():
            if f:
                counts[len(f) - 1] += 1
        return tuple(counts)

    def euler_characteristic(self) -> int:
        return chi(self.f_vector_proper())

    def link(self, face) -> "SimplicialComplex":
        face = frozenset(face)
        maximal = [f - face for f in self.facets if face <= f]
        if not any(maximal):
            return SimplicialComplex((frozenset(),))
        return SimplicialComplex.from_facets(m for m in maximal)

    def boundary(self) -> "SimplicialComplex":
        """Subcomplex generated by ridges lying in exactly one facet."""
        e = self.dim
        count: Dict[FrozenSet, int] = {}
        for f in self.facets:
            if len(f) - 1 != e:
                continue
            for r in itertools.combinations(f, e):
                count[frozenset(r)] = count.get(frozenset(r), 0) + 1
        rim = [r for r, n in count.items() if n == 1]
        if not rim:
            raise ValueError("complex has no boundary")
        return SimplicialComplex.from_facets(rim)

    def interior_counts(self) -> Tuple[int, ...]:
        """Face counts of the faces not on the boundary, by dimension."""
        try:
            bd = self.boundary().all_faces()
        except ValueError:
            bd = frozenset({frozenset()})
        counts = [0] * (self.dim + 1)
        for f in self.all_faces():
            if f and f not in bd:
                counts[len(f) - 1] += 1
        return tuple(counts)


def boundary_complex(lat: FaceLattice) -> SimplicialComplex:
    """The boundary of a simplicial polytope as an abstract complex."""
    return SimplicialComplex.from_facets(f.vertex_set for f in lat.facet_list)


def stacked_sphere(d: int, steps: int, choose=0) -> SimplicialComplex:
    """Boundary of a stacked d-polytope: repeated stellar subdivision of a
    facet of the simplex boundary, combinatorially."""
    facets = {frozenset(range(d + 1)) - {i} for i in range(d + 1)}
    next_vertex = d + 1
    for n in range(steps):
        target = sorted(facets, key=lambda s: sorted(s))[choose % len(facets)]
        facets.remove(target)
        for r in itertools.combinations(sorted(target), d - 1):
            facets.add(frozenset(r) | {next_vertex})
        next_vertex += 1
    return SimplicialComplex.from_facets(facets)


RP2_FACETS = ((1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
              (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6))

TORUS7_FACETS = tuple(
    tuple(sorted(((i + a) % 7, (i + b) % 7, (i + c) % 7)))
    for i in range(7) for a, b, c in ((0, 1, 3), (0, 2, 3)))
