import math
from fractions import Fraction

import pytest

from anglesum import constructions as cons
from anglesum.angles import SamplingConfig, angle_sums
from anglesum.core import (
    AlphaFVector,
    AlphaVector,
    FVector,
    gamma_from_alpha,
    h_from_f,
)
from anglesum.facelattice import face_lattice
from anglesum.relations import (
    alpha_tolerance,
    check_all_polytope,
    check_all_simplicial,
    check_ds,
    check_euler,
    check_gram,
    check_h_palindrome,
    check_h_perles,
    check_perles,
    ds_operator,
    pe_operator,
)

ACOS13 = math.acos(1.0 / 3.0)

CUBE_F = FVector.polytope((8, 12, 6))
CUBE_A = AlphaVector.euclidean((1, 3, 3))
OCTA_F = FVector.polytope((6, 12, 8))
TET_F = FVector.polytope((4, 6, 4))


def tet_af():
    a0 = (3 / math.pi) * ACOS13 - 1
    return AlphaFVector(AlphaVector.euclidean((a0, a0 + 1, 2)), TET_F)


def test_euler():
    assert check_euler(CUBE_F).passed
    assert check_euler(FVector.polytope((7, 12, 6))).residual == -1
    assert not check_euler(FVector.polytope((7, 12, 6))).passed


def test_gram_exact_and_tolerant():
    assert check_gram(CUBE_A).passed
    assert check_gram(CUBE_A).tolerance == 0.0
    noisy = AlphaVector.euclidean((1.0 + 2e-4, 3.0, 3.0), (1e-4, 0.0, 0.0))
    rep = check_gram(noisy)
    assert rep.tolerance == pytest.approx(4e-4)
    assert rep.passed


def test_alpha_tolerance():
    assert alpha_tolerance(CUBE_A) == 0.0
    assert alpha_tolerance(AlphaVector.euclidean((1.0, 3.0, 3.0))) == 1e-9


def test_ds_operator_values():
    assert ds_operator(TET_F, 1) == 6
    stellar = cons.stellar_facet_f(TET_F)
    assert ds_operator(stellar, 1) == 9
    # k=-1 recovers the Euler alternating sum
    assert ds_operator(CUBE_F, -1) == 1
    assert ds_operator((8, 12, 6), -1, fm1=1) == 1


def test_ds_simplicial_pass_nonsimplicial_fail():
    for k in range(-1, 3):
        assert check_ds(OCTA_F, k).passed
        assert check_ds(TET_F, k).passed
    rep = check_ds(CUBE_F, 0)
    assert rep.lhs == 2 and rep.rhs == 8 and not rep.passed
    assert check_ds(CUBE_F, -1).passed  # Euler holds regardless
    assert check_ds(CUBE_F, 2).passed   # top level is trivially true


def test_pe_operator_values():
    af = tet_af()
    assert pe_operator(af.alpha, 1) == pytest.approx(6 - (3 / math.pi) * ACOS13)
    flat = cons.stellar_facet_flat_af(af)
    want = 9 - ((3 / math.pi) * ACOS13 + 1.5)
    assert pe_operator(flat.alpha, 1) == pytest.approx(want)


def test_perles_tet_all_k():
    af = tet_af()
    for k in range(-1, 3):
        rep = check_perles(af, k, tol=1e-9)
        assert rep.passed, rep


def test_perles_glued_tets():
    p = cons.glued_tetrahedra()
    lat = face_lattice(p)
    af = AlphaFVector(angle_sums(p, lattice=lat), lat.f_vector())
    for k in range(-1, 3):
        assert check_perles(af, k, tol=1e-9).passed


def test_perles_cube_controls():
    af = AlphaFVector(CUBE_A, CUBE_F)
    assert check_perles(af, 2).passed      # always true at the top level
    assert check_perles(af, -1).passed     # Gram in disguise
    assert not check_perles(af, 0).passed  # cube is not simplicial


def test_h_palindrome():
    assert all(r.passed for r in check_h_palindrome(h_from_f(OCTA_F)))
    assert all(r.passed for r in check_h_palindrome(h_from_f(TET_F)))
    assert not all(r.passed for r in check_h_palindrome(h_from_f(CUBE_F)))


def test_gamma_h_relation_tet():
    af = tet_af()
    g = gamma_from_alpha(af.alpha)
    h = h_from_f(af.f)
    for rep in check_h_perles(g, h, tol=1e-9):
        assert rep.passed, rep


def test_check_all_polytope():
    assert all(r.passed for r in check_all_polytope(AlphaFVector(CUBE_A, CUBE_F)))


def test_check_all_simplicial_octahedron():
    p = cons.cross_polytope(3)
    lat = face_lattice(p)
    af = AlphaFVector(angle_sums(p, lattice=lat), lat.f_vector())
    assert all(r.passed for r in check_all_simplicial(af))


def test_bad_k_raises():
    with pytest.raises(ValueError):
        check_ds(CUBE_F, 3)
    with pytest.raises(ValueError):
        check_perles(AlphaFVector(CUBE_A, CUBE_F), -2)
