from fractions import Fraction

import numpy as np
import pytest

from anglesum import complexes as cx
from anglesum.relations import ds_operator, is_eulerian, is_semi_eulerian
from anglesum import constructions as cons
from anglesum.facelattice import face_lattice


# --- voxel basics -------------------------------------------------------

def test_block_3x3x3():
    v = cx.block(3, 3, 3)
    assert cx.voxel_alpha(v) == (19, 45, 27)
    assert cx.voxel_boundary_f(v) == (56, 108, 54)
    assert cx.chi_alpha(v) == 1
    assert cx.chi_boundary(v) == 2


def test_unit_cell():
    v = cx.block(1, 1, 1)
    assert cx.voxel_alpha(v) == (1, 3, 3)
    assert cx.voxel_boundary_f(v) == (8, 12, 6)


def test_torus_voxel():
    v = cx.torus_voxel()
    assert cx.voxel_alpha(v) == (8, 24, 16)
    assert cx.voxel_boundary_f(v) == (32, 64, 32)
    assert cx.chi_alpha(v) == 0
    assert cx.chi_boundary(v) == 0


def test_gamma_voxel():
    v = cx.gamma_voxel()
    assert cx.voxel_alpha(v) == (26, 54, 30)
    assert cx.voxel_boundary_f(v) == (64, 120, 60)
    assert cx.chi_alpha(v) == 2
    assert cx.chi_boundary(v) == 4


def test_handlebodies():
    for g in range(4):
        v = cx.handlebody(g)
        assert cx.chi_alpha(v) == 1 - g, g
        assert cx.chi_boundary(v) == 2 - 2 * g, g


def test_refinement_invariance():
    for v in (cx.block(2, 1, 1), cx.torus_voxel(), cx.gamma_voxel(),
              cx.handlebody(2)):
        r = cx.refine(v)
        assert len(r.cells) == 8 * len(v.cells)
        assert cx.chi_alpha(r) == cx.chi_alpha(v)
        assert cx.chi_boundary(r) == cx.chi_boundary(v)


def test_furch_ball():
    v = cx.furch()
    assert cx.chi_alpha(v) == 1
    assert cx.chi_boundary(v) == 2
    filled = cx.furch_filled()
    assert cx.chi_alpha(filled) == 1
    # drilling removed real volume
    assert len(filled.cells) - len(v.cells) == len(cx.FURCH_TUNNEL)


def test_voxel_4d():
    v = cx.VoxelComplex.from_cells(4, [(0, 0, 0, 0)])
    assert cx.voxel_alpha(v) == (1, 4, 6, 4)
    assert cx.chi_alpha(v) == -1
    assert cx.chi_boundary(v) == 0  # boundary of a 4-ball is a 3-sphere


def test_connectivity_validation():
    with pytest.raises(ValueError):
        cx.VoxelComplex.from_cells(3, [(0, 0, 0), (1, 1, 0)])
    with pytest.raises(ValueError):
        cx.VoxelComplex.from_cells(3, [(0, 0, 0), (2, 0, 0)])


# --- gluing -------------------------------------------------------------

def vc(cells, label=""):
    return cx.VoxelComplex.from_cells(3, cells, label)


def test_glue_two_cubes():
    rep = cx.glue(vc([(0, 0, 0)]), vc([(1, 0, 0)]))
    assert rep.interface.kind == "balls"
    assert rep.interface.components == 1
    assert rep.chi_alpha == 1 and rep.chi_boundary == 2
    assert rep.predictions_ok and rep.valuation_ok and rep.half_ratio_ok


def test_glue_annulus():
    center = vc([(1, 1, 0)], "plug")
    ring = cx.torus_voxel()
    rep = cx.glue(center, ring)
    assert rep.interface.kind == "annuli"
    assert rep.interface.components == 1
    assert rep.chi_alpha == 1 and rep.chi_boundary == 2
    assert rep.predictions_ok and rep.valuation_ok and rep.half_ratio_ok


def test_glue_closed_sphere():
    rep = cx.glue(cx.gamma_voxel(), vc([(1, 1, 1)]))
    assert rep.interface.kind == "closed"
    assert rep.interface.components == 1
    assert rep.interface.detail == 2  # one 2-sphere
    assert rep.chi_alpha == 1 and rep.chi_boundary == 2
    assert rep.predictions_ok and rep.valuation_ok and rep.half_ratio_ok


def test_glue_lower_dim_edge():
    rep = cx.glue(vc([(0, 0, 0)]), vc([(1, 1, 0)]))
    assert rep.interface.kind == "lower-dim"
    assert rep.interface.detail == 1
    assert rep.chi_alpha == 2 and rep.chi_boundary == 3
    assert rep.predictions_ok and rep.valuation_ok
    assert rep.half_ratio_ok is False  # pinched union is not a pseudomanifold


def test_glue_two_balls_two_patches():
    # C-shaped piece closed into a ring by a single cube: two disk interfaces
    ring = cx.torus_voxel()
    cshape = vc(ring.cells - {(0, 1, 0)}, "c-shape")
    plug = vc([(0, 1, 0)])
    rep = cx.glue(cshape, plug)
    assert rep.interface.kind == "balls"
    assert rep.interface.components == 2
    assert rep.chi_alpha == 0 and rep.chi_boundary == 0
    assert rep.predictions_ok and rep.valuation_ok and rep.half_ratio_ok


def test_glue_furch_fill():
    rep = cx.glue(cx.furch(), vc(cx.FURCH_TUNNEL, "tunnel"))
    assert rep.interface.kind == "balls"
    assert rep.complex.cells == cx.furch_filled().cells
    assert rep.chi_alpha == 1
    assert rep.predictions_ok and rep.valuation_ok and rep.half_ratio_ok


def test_glue_errors():
    with pytest.raises(cx.GluingError):
        cx.glue(vc([(0, 0, 0)]), vc([(0, 0, 0), (1, 0, 0)]))  # overlap
    with pytest.raises(cx.GluingError):
        cx.glue(vc([(0, 0, 0)]), vc([(5, 5, 5)]))  # no contact
    a = vc([(0, 0, 0), (1, 0, 0), (2, 0, 0)])
    b = vc([(0, 0, 1), (0, 1, 1), (1, 1, 1)])
    with pytest.raises(cx.GluingError):
        cx.glue(a, b)  # a square plus a stray edge: mixed dimensions


def grow_ball(rng, start, footprint, size, avoid=frozenset()):
    cells = {start}
    for _ in range(200):
        if len(cells) >= size:
            break
        frontier = []
        for c in cells:
            for a in range(3):
                for s in (-1, 1):
                    n = tuple(x + s if i == a else x for i, x in enumerate(c))
                    if n in cells or n in avoid or n not in footprint:
                        continue
                    frontier.append(n)
        if not frontier:
            break
        n = frontier[rng.integers(0, len(frontier))]
        shared = set(cx.cell_faces(n)) & set(cx.face_incidence(
            cx.VoxelComplex(3, frozenset(cells))))
        try:
            iface = cx._classify_interface(3, shared)
        except cx.GluingError:
            continue
        if iface.kind == "balls" and iface.components == 1:
            cells.add(n)
    return cells


def test_random_gluings_small():
    rng = np.random.default_rng(2024)
    footprint = {(x, y, z) for x in range(4) for y in range(4) for z in range(4)}
    done = 0
    attempts = 0
    while done < 40 and attempts < 400:
        attempts += 1
        start = (int(rng.integers(0, 4)), int(rng.integers(0, 4)), int(rng.integers(0, 4)))
        a_cells = grow_ball(rng, start, footprint, int(rng.integers(2, 9)))
        a = cx.VoxelComplex(3, frozenset(a_cells))
        candidates = []
        for c in a_cells:
            for ax in range(3):
                for s in (-1, 1):
                    n = tuple(x + s if i == ax else x for i, x in enumerate(c))
                    if n not in a_cells and n in footprint:
                        candidates.append(n)
        if not candidates:
            continue
        bstart = candidates[rng.integers(0, len(candidates))]
        b_cells = grow_ball(rng, bstart, footprint, int(rng.integers(2, 9)),
                            avoid=frozenset(a_cells))
        try:
            rep = cx.glue(a, cx.VoxelComplex(3, frozenset(b_cells)))
        except cx.GluingError:
            continue
        assert rep.valuation_ok
        assert rep.predictions_ok, (sorted(a_cells), sorted(b_cells),
                                    rep.interface.describe())
        if rep.interface.kind != "lower-dim":
            assert rep.half_ratio_ok
        done += 1
    assert done == 40


# --- flats --------------------------------------------------------------

def test_flats_block():
    rep = cx.flats3(cx.block(3, 3, 3))
    assert rep.f == (8, 12, 6)
    assert rep.alpha == (1, 3, 3)
    assert rep.chi == 2
    assert rep.chi_alpha == 1


def test_flats_gamma():
    rep = cx.flats3(cx.gamma_voxel())
    assert rep.f == (16, 24, 12)
    assert rep.alpha == (8, 12, 6)
    assert rep.chi == 4
    assert rep.chi_alpha == 2
    # flat-level angle characteristic agrees with the fine-level one
    assert rep.chi_alpha == cx.chi_alpha(cx.gamma_voxel())


def test_flats_refined_block():
    rep = cx.flats3(cx.refine(cx.block(1, 1, 1)))
    assert rep.f == (8, 12, 6)
    assert rep.alpha == (1, 3, 3)


# --- exact 3d cell complexes -------------------------------------------

def test_torus_prism():
    t = cx.torus_prism()
    alpha, counts = t.boundary_angle_sums()
    assert alpha == (4, 12, 8)
    assert all(isinstance(x, Fraction) or x == int(x) for x in alpha)
    assert counts == (16, 32, 16)
    assert alpha[0] - alpha[1] + alpha[2] == 0
    assert counts[0] - counts[1] + counts[2] == 0


def test_torus_prism_split_invariance():
    t = cx.torus_prism(split=True)
    alpha, counts = t.boundary_angle_sums()
    assert alpha[0] - alpha[1] + alpha[2] == 0
    assert counts[0] - counts[1] + counts[2] == 0


# --- simplicial complexes ----------------------------------------------

def test_octahedron_boundary_eulerian():
    lat = face_lattice(cons.cross_polytope(3))
    sc = cx.boundary_complex(lat)
    assert sc.dim == 2
    assert sc.f_vector_proper() == (6, 12, 8)
    assert is_semi_eulerian(sc)
    assert is_eulerian(sc)


def test_rp2_semi_eulerian_not_eulerian():
    sc = cx.SimplicialComplex.from_facets(cx.RP2_FACETS)
    assert sc.f_vector_proper() == (6, 15, 10)
    assert sc.euler_characteristic() == 1
    assert is_semi_eulerian(sc)
    assert not is_eulerian(sc)
    f = sc.f_vector_proper()
    # the middle relations survive, the Euler-level one does not
    assert ds_operator(f, 0) == f[0]
    assert ds_operator(f, 1) == f[1]
    assert ds_operator(f, -1, fm1=1) != 1


def test_torus7_semi_eulerian():
    sc = cx.SimplicialComplex.from_facets(cx.TORUS7_FACETS)
    assert sc.f_vector_proper() == (7, 21, 14)
    assert sc.euler_characteristic() == 0
    assert is_semi_eulerian(sc)
    f = sc.f_vector_proper()
    assert ds_operator(f, 0) == f[0]
    assert ds_operator(f, 1) == f[1]


def test_stacked_spheres_ds():
    for steps in (0, 1, 4):
        sc = cx.stacked_sphere(3, steps)
        assert is_eulerian(sc)
        f = sc.f_vector_proper()
        assert f == (4 + steps, 6 + 3 * steps, 4 + 2 * steps)
        for k in range(0, 3):
            assert ds_operator(f, k) == f[k]


def ball_lemma_ok(sc: cx.SimplicialComplex) -> bool:
    """Interior/whole Dehn-Sommerville exchange for a ball-like complex."""
    d = sc.dim + 1
    whole = sc.f_vector_proper()
    inner = sc.interior_counts()
    for k in range(-1, d):
        lhs1 = ds_operator(inner, k, fm1=0)
        rhs1 = cx.sign(d - 1) * (1 if k == -1 else whole[k])
        if lhs1 != rhs1:
            return False
        lhs2 = ds_operator(whole, k, fm1=1)
        rhs2 = cx.sign(d - 1) * (0 if k == -1 else inner[k])
        if lhs2 != rhs2:
            return False
    return True


def test_interior_ds_exchange():
    assert ball_lemma_ok(cx.SimplicialComplex.from_facets([(1, 2, 3)]))
    assert ball_lemma_ok(cx.SimplicialComplex.from_facets([(1, 2, 3), (2, 3, 4)]))
    # a stacked disk: fan of triangles around a vertex
    fan = [(0, i, i + 1) for i in range(1, 5)]
    assert ball_lemma_ok(cx.SimplicialComplex.from_facets(fan))
    # an edge (1-ball) inside d=2
    assert ball_lemma_ok(cx.SimplicialComplex.from_facets([(1, 2), (2, 3)]))


def test_link():
    sc = cx.SimplicialComplex.from_facets(cx.RP2_FACETS)
    lk = sc.link({1})
    assert lk.dim == 1
    assert lk.euler_characteristic() == 0  # a circle
