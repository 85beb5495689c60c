import math
from fractions import Fraction

import pytest

from anglesum.angles import (
    SamplingConfig,
    _dihedral_angle,
    _hull_size_2d,
    angle_sums,
    interior_angle,
    projection_expectation,
)
from anglesum.core import angle_char
from anglesum.facelattice import VPolytope, face_lattice

import numpy as np

ACOS13 = math.acos(1.0 / 3.0)


def cube(d=3):
    return VPolytope(d, tuple(tuple((k >> a) & 1 for a in range(d)) for k in range(2 ** d)))


def regular_tet():
    return VPolytope(3, ((0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)))


def test_cube_angles_exact():
    a = angle_sums(cube())
    assert a.entries == (0, 1, 3, 3, 1)
    assert a.is_exact()
    assert angle_char(a) == 1  # Gram, exactly


def test_square_and_triangle_exact():
    sq = VPolytope(2, ((0, 0), (1, 0), (1, 1), (0, 1)))
    assert angle_sums(sq).entries == (0, 1, 2, 1)
    tri = VPolytope(2, ((0, 0), (1, 0), (0, 1)))
    a = angle_sums(tri)
    assert a.entries == (0, Fraction(1, 2), Fraction(3, 2), 1)
    assert a.is_exact()


def test_tesseract_exact():
    a = angle_sums(cube(4))
    assert a.entries == (0, 1, 4, 6, 4, 1)
    assert a.is_exact()
    assert angle_char(a) == -1  # d even


def test_regular_tet_closed_form():
    a = angle_sums(regular_tet())
    assert abs(a[0] - ((3 / math.pi) * ACOS13 - 1)) < 1e-9
    assert abs(a[1] - (3 / math.pi) * ACOS13) < 1e-9
    assert a[2] == 2
    assert abs(angle_char(a) - 1) < 1e-12


def test_octahedron_gram():
    verts = []
    for ax in range(3):
        for s in (1, -1):
            verts.append(tuple(s if i == ax else 0 for i in range(3)))
    a = angle_sums(VPolytope(3, tuple(verts)))
    assert a[2] == 4
    assert abs(a[1] - (6 - (6 / math.pi) * ACOS13)) < 1e-9
    assert abs(angle_char(a) - 1) < 1e-12


def test_dihedral_recognition():
    assert _dihedral_angle((1, 0, 0), (0, 1, 0)).value == Fraction(1, 4)
    assert _dihedral_angle((1, 0), (1, 1)).value == Fraction(3, 8)
    # unrecognized cosine falls back to floats
    est = _dihedral_angle((3.0, 0.0, 0.0), (-1.0, 2.0, 2.0))
    assert isinstance(est.value, float)


def test_forced_monte_carlo_vertex():
    p = cube()
    lat = face_lattice(p)
    cfg = SamplingConfig(samples=4000, chunk=2000, force_monte_carlo=True, seed=11)
    v = next(f for f in lat.faces[0])
    est = interior_angle(p, lat, v, cfg)
    assert est.method == "monte-carlo"
    assert est.stderr > 0
    assert abs(est.value - 0.125) < 4 * est.stderr + 1e-12


def test_monte_carlo_deterministic():
    p = regular_tet()
    cfg = SamplingConfig(samples=2000, chunk=1000, force_monte_carlo=True)
    a1 = angle_sums(p, cfg)
    a2 = angle_sums(p, cfg)
    assert a1.entries == a2.entries
    a3 = angle_sums(p, SamplingConfig(samples=2000, chunk=1000,
                                      force_monte_carlo=True, seed=7))
    assert a3.entries != a1.entries


def test_forced_monte_carlo_full_vector():
    a = angle_sums(cube(), SamplingConfig(samples=3000, chunk=1500,
                                          force_monte_carlo=True))
    for i, truth in ((0, 1.0), (1, 3.0), (2, 3.0)):
        se = a.stderr_at(i)
        assert se > 0
        assert abs(a[i] - truth) < 4 * se


def test_hull_size():
    sq = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5]])
    assert _hull_size_2d(sq) == 4
    line = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
    assert _hull_size_2d(line) == 2


def test_projection_triangle():
    tri = VPolytope(2, ((0, 0), (1, 0), (0, 1)))
    rep = projection_expectation(tri, trials=200)
    assert rep.expected_f[0] == 2.0
    assert rep.stderr_f[0] == 0.0
    assert rep.alpha_hat[0] == pytest.approx(0.5)


def test_projection_cube():
    rep = projection_expectation(cube(), trials=400)
    # a generic shadow of the cube is a hexagon
    assert rep.expected_f[0] == pytest.approx(6.0)
    assert rep.alpha_hat[0] == pytest.approx(1.0)
    assert rep.alpha_hat[1] == pytest.approx(3.0)


def test_projection_tet():
    rep = projection_expectation(regular_tet(), trials=4000)
    truth0 = (3 / math.pi) * ACOS13 - 1
    se = max(4 * rep.alpha_stderr[0], 1e-12)
    assert abs(rep.alpha_hat[0] - truth0) < se
    assert rep.dim == 3 and rep.trials == 4000


def test_projection_unsupported_dim():
    with pytest.raises(NotImplementedError):
        projection_expectation(cube(4), trials=10)
