import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from anglesum import constructions as cons
from anglesum.core import (
    AlphaFVector,
    AlphaVector,
    FVector,
    angle_char,
    euler_char,
    gamma_from_alpha,
    h_from_f,
)
from anglesum.angles import angle_sums
from anglesum.facelattice import face_lattice

ACOS13 = math.acos(1.0 / 3.0)

TRI = cons.base_vector("tri")
SQ = cons.base_vector("sq")
SEG = cons.base_vector("seg")


def frac(n, d=1):
    return Fraction(n, d)


# --- f recursions -------------------------------------------------------

def test_prism_f():
    assert cons.prism_f(SEG.f).entries == (1, 4, 4, 1)
    cube = cons.prism_f(SQ.f)
    assert cube.entries == (1, 8, 12, 6, 1)
    assert cons.prism_f(cube).entries == (1, 16, 32, 24, 8, 1)


def test_pyramid_f():
    assert cons.pyramid_f(TRI.f).entries == (1, 4, 6, 4, 1)
    assert cons.pyramid_f(SQ.f).entries == (1, 5, 8, 5, 1)


def test_bipyramid_f():
    assert cons.bipyramid_f(SQ.f).entries == (1, 6, 12, 8, 1)
    assert cons.bipyramid_f(TRI.f).entries == (1, 5, 9, 6, 1)


def test_stellar_facet_f():
    tet = cons.pyramid_f(TRI.f)
    assert cons.stellar_facet_f(tet).entries == (1, 5, 9, 6, 1)


# --- alpha recursions ---------------------------------------------------

def test_prism_alpha_cube_tower():
    cube = cons.prism_af(cons.prism_af(SEG))
    assert cube.alpha.entries == (0, 1, 3, 3, 1)
    four = cons.prism_af(cube)
    assert four.alpha.entries == (0, 1, 4, 6, 4, 1)
    assert four.f.entries == (1, 16, 32, 24, 8, 1)


def test_pyr_zero_triangle():
    af = cons.pyr_zero_af(TRI)
    assert af.alpha.entries == (0, frac(1, 2), frac(3, 2), 2, 1)
    assert af.f.entries == (1, 4, 6, 4, 1)
    assert angle_char(af.alpha) == 1


def test_pyr_zero_square():
    af = cons.pyr_zero_af(SQ)
    assert af.alpha.entries == (0, frac(1, 2), 2, frac(5, 2), 1)
    assert af.f.entries == (1, 5, 8, 5, 1)


def test_pyr_inf_triangle():
    af = cons.pyr_inf_af(TRI)
    assert af.alpha.entries == (0, frac(1, 4), frac(5, 4), 2, 1)
    assert af.f.entries == (1, 4, 6, 4, 1)
    assert angle_char(af.alpha) == 1


def test_flat_stellar_of_triangle_is_square():
    assert cons.stellar_facet_flat_af(TRI).alpha.entries == SQ.alpha.entries


# --- gamma / h recursions and commutation -------------------------------

def exact_alpha(draw_dims=st.integers(1, 6)):
    @st.composite
    def strat(draw):
        d = draw(draw_dims)
        mids = [Fraction(draw(st.integers(-40, 40)), draw(st.integers(1, 9)))
                for _ in range(d)]
        return AlphaVector(d, (0, *mids, 1))
    return strat()


def exact_f(draw_dims=st.integers(1, 6)):
    @st.composite
    def strat(draw):
        d = draw(draw_dims)
        mids = [draw(st.integers(0, 60)) for _ in range(d)]
        return FVector(d, (1, *mids, 1))
    return strat()


def euler_f(draw_dims=st.integers(1, 6)):
    """Integer vectors satisfying the Euler relation (possibly non-polytopal)."""
    @st.composite
    def strat(draw):
        d = draw(draw_dims)
        mids = [draw(st.integers(0, 60)) for _ in range(d - 1)]
        tail = 1 - (-1) ** d - sum((-1) ** i * m for i, m in enumerate(mids))
        top = (-1) ** (d - 1) * tail
        assume(top >= 0)
        return FVector(d, (1, *mids, top, 1))
    return strat()


@settings(max_examples=40, deadline=None)
@given(exact_alpha())
def test_gamma_prism_commutes(a):
    lhs = gamma_from_alpha(cons.prism_alpha(a))
    rhs = cons.gamma_prism(gamma_from_alpha(a))
    assert lhs.entries == rhs.entries


@settings(max_examples=40, deadline=None)
@given(exact_f())
def test_h_pyramid_commutes(f):
    lhs = h_from_f(cons.pyramid_f(f))
    rhs = cons.h_pyramid(h_from_f(f))
    assert lhs.entries == rhs.entries


@settings(max_examples=40, deadline=None)
@given(exact_alpha(), exact_f())
def test_gamma_pyr_inf_commutes(a, f):
    if a.dim != f.dim:
        f = FVector(a.dim, (1, *([2] * a.dim), 1))
    af = AlphaFVector(a, f)
    lhs = gamma_from_alpha(cons.pyr_inf_af(af).alpha)
    rhs = cons.gamma_pyr_inf(gamma_from_alpha(a))
    assert lhs.entries == rhs.entries


@settings(max_examples=40, deadline=None)
@given(euler_f())
def test_gamma_pyr_zero_from_h(f):
    a = AlphaVector(f.dim, (0, *([Fraction(1, 3)] * f.dim), 1))
    af = AlphaFVector(a, f)
    lhs = gamma_from_alpha(cons.pyr_zero_af(af).alpha)
    rhs = cons.gamma_pyr_zero(h_from_f(f))
    assert lhs.entries == rhs.entries


def test_gamma_pyr_zero_basis():
    g = cons.gamma_pyr_zero(h_from_f(TRI.f))
    assert g.entries == (0, frac(1, 2), frac(1, 2), 1)


@settings(max_examples=25, deadline=None)
@given(exact_alpha(st.integers(1, 4)), st.integers(1, 4))
def test_repeated_pyr_inf_binomial(a, k):
    g = gamma_from_alpha(a)
    out = g
    for _ in range(k):
        out = cons.gamma_pyr_inf(out)
    for i in range(0, out.dim + 1):
        want = sum(Fraction(math.comb(k, j), 2 ** k) * g[i - j] for j in range(k + 1))
        assert out[i] == want


# --- expressions and realization ---------------------------------------

def test_eval_expr_basis_vectors():
    p0 = cons.eval_expr(cons.Pyr0(cons.Base("tri")))
    assert p0.alpha.entries == (0, frac(1, 2), frac(3, 2), 2, 1)
    pinf = cons.eval_expr(cons.PyrInf(cons.Base("tri")))
    assert pinf.alpha.entries == (0, frac(1, 4), frac(5, 4), 2, 1)
    with pytest.raises(ValueError):
        cons.eval_expr(cons.Pyr(cons.Base("tri"), 1))


def test_expr_f_with_finite_pyramid():
    f = cons.expr_f(cons.Pyr(cons.Base("sq"), Fraction(7, 2)))
    assert f.entries == (1, 5, 8, 5, 1)


def test_realize_pyramid_and_prism():
    pyr = cons.realize_expr(cons.Pyr(cons.Base("sq"), 1))
    assert face_lattice(pyr).f_vector().entries == (1, 5, 8, 5, 1)
    pri = cons.realize_expr(cons.Prism(cons.Base("tri")))
    assert face_lattice(pri).f_vector().entries == (1, 6, 9, 5, 1)


def test_realize_stellar_cube_facet():
    cube = cons.unit_cube()
    lat = face_lattice(cube)
    st_p = cons.stellar_subdivision(cube, lat.facet_list[0].vertex_set)
    f = face_lattice(st_p).f_vector()
    assert f.entries == (1, 9, 16, 9, 1)
    assert euler_char(f) == 2


def test_realize_stellar_tet_facet():
    tet = cons.realize_expr(cons.Stellar(cons.Pyr(cons.Base("tri"), 1), 2))
    assert face_lattice(tet).f_vector().entries == (1, 5, 9, 6, 1)


# --- standard solids ----------------------------------------------------

def test_glued_tetrahedra_alpha():
    p = cons.glued_tetrahedra()
    assert face_lattice(p).f_vector().entries == (1, 5, 9, 6, 1)
    a = angle_sums(p)
    assert abs(a[0] - ((6 / math.pi) * ACOS13 - 2)) < 1e-9
    assert abs(a[1] - (6 / math.pi) * ACOS13) < 1e-9
    assert a[2] == 3


def test_regular_tetrahedron_is_regular():
    p = cons.regular_tetrahedron()
    dists = set()
    for i in range(4):
        for j in range(i + 1, 4):
            dists.add(sum((a - b) ** 2 for a, b in zip(p.vertices[i], p.vertices[j])))
    assert dists == {2}


def test_regular_simplex_unit_edges():
    p = cons.regular_simplex(4)
    for i in range(5):
        for j in range(i + 1, 5):
            d2 = sum((a - b) ** 2 for a, b in zip(p.vertices[i], p.vertices[j]))
            assert abs(d2 - 1) < 1e-9
    assert face_lattice(p).f_vector().entries == tuple(
        math.comb(5, i + 1) for i in range(-1, 5))


def test_cross_polytope():
    f = face_lattice(cons.cross_polytope(3)).f_vector()
    assert f.entries == (1, 6, 12, 8, 1)
