from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from anglesum import spans
from anglesum.constructions import (Base, Prism, Pyr0, PyrInf, eval_expr,
                                    expr_f, gamma_pyr_inf, parse_expr)
from anglesum.core import FVector, GammaVector, gamma_from_alpha


def test_exact_rank():
    assert spans.exact_rank([(1, 0), (0, 1), (1, 1)]) == 2
    assert spans.exact_rank([(Fraction(1, 2), 1), (1, 2)]) == 1
    assert spans.exact_rank([(0, 0)]) == 0
    assert spans.exact_rank([]) == 0


def test_affine_rank_exact_and_float():
    sq = [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert spans.affine_rank(sq).affine_dim == 2
    assert spans.affine_rank(sq).exact
    assert spans.affine_rank([(0, 0), (1, 1), (2, 2)]).affine_dim == 1
    assert spans.affine_rank([(5, 5)]).affine_dim == 0
    res = spans.affine_rank([(0.0, 0.0), (1.0, 1e-9)], tol=1e-6)
    assert res.affine_dim == 1 and not res.exact
    with pytest.raises(ValueError):
        spans.affine_rank([(0.0, 0.0), (1.0, 0.0)])  # float rows, no tolerance
    # duplicating a vector never changes the rank
    assert spans.affine_rank(sq + [sq[0]]).affine_dim == 2


def test_family_spec_validation():
    with pytest.raises(ValueError):
        spans.FamilySpec("cubes", 3)
    with pytest.raises(ValueError):
        spans.FamilySpec("general", 1)
    assert spans.FamilySpec("simplices", 1).d == 1


def test_simplex_family_shapes():
    for d in range(1, 11):
        exprs = spans.simplex_family_exprs(d)
        assert len(exprs) == (d - 1) // 2 + 1
        simplex_f = FVector.simplex(d)
        for e in exprs:
            assert expr_f(e).entries == simplex_f.entries


def test_simplex_spans_exact():
    for d in range(1, 11):
        rep = spans.check_span(spans.FamilySpec("simplices", d))
        assert rep.ok, str(rep)
        assert rep.rank.affine_dim == (d - 1) // 2
        assert rep.rank.exact
        # one more member than the affine dimension: affinely independent
        assert len(rep.rank.vectors) == rep.rank.affine_dim + 1


def test_simplex_family_gamma_palindrome():
    # each member's gamma entries pair up to 1 across the middle
    for d in (2, 3, 5, 8):
        for a in spans.simplex_family(d):
            g = gamma_from_alpha(a)
            for k in range(0, d + 1):
                assert g[k] + g[d - k] == 1


def test_general_spans_exact():
    for d in range(2, 11):
        rep = spans.check_span(spans.FamilySpec("general", d))
        assert rep.ok, str(rep)
        assert rep.rank.affine_dim == 2 * d - 3
        assert len(rep.rank.vectors) == 2 * d - 2


def test_general_family_base_case():
    rows = [v.flat() for v in spans.general_family(2)]
    assert rows[0] == (Fraction(1, 2), Fraction(3, 2), 1, 3, 3, 1)  # triangle
    assert rows[1] == (1, 2, 1, 4, 4, 1)  # square


def test_general_family_d3_members():
    labels = set()
    for e in spans.general_family_exprs(3):
        from anglesum.constructions import expr_to_str
        labels.add(expr_to_str(e))
    assert labels == {"Pinf tri", "B* tri", "Pinf B* seg", "B*^2 seg"}


def test_span_upper_bound():
    # extra construction vectors never push past the theorem dimension
    extra = ["P0^2 sq", "B* P0 tri", "Pinf P0 B* seg", "St[3] P0^2 tri",
             "B*^2 P0 seg", "P0^4 point"]
    rows = [v.flat() for v in spans.general_family(4)]
    assert spans.affine_rank(rows).affine_dim == 5
    for text in extra:
        vec = eval_expr(parse_expr(text))
        assert vec.dim == 4
        assert spans.affine_rank(rows + [vec.flat()]).affine_dim == 5, text


def test_tall_pyramid_prism_redundancy():
    # towers over a segment and prisms of a triangle share angle vectors
    for k in range(1, 4):
        a = eval_expr(parse_expr(f"Pinf B*^{k} seg"))
        b = eval_expr(parse_expr(f"B*^{k} tri"))
        assert a.alpha.entries == b.alpha.entries
        assert a.f.entries != b.f.entries


@given(st.lists(
    st.tuples(*[st.fractions(min_value=-3, max_value=3) for _ in range(4)]),
    min_size=1, max_size=3))
def test_pyr_inf_gamma_map_preserves_affine_rank(rows):
    gammas = [GammaVector(3, r) for r in rows]
    before = spans.affine_rank([g.entries for g in gammas]).affine_dim
    mapped = [gamma_pyr_inf(g) for g in gammas]
    after = spans.affine_rank([g.entries for g in mapped]).affine_dim
    assert before == after


def test_pyramid_preimage():
    assert spans.pyramid_preimage(FVector(3, (1, 5, 8, 5, 1))).entries == (1, 4, 4, 1)
    assert spans.pyramid_preimage(expr_f(Pyr0(Base("tri")))).entries == (1, 3, 3, 1)
    # formally defined for non-pyramids too, as long as Euler holds
    assert spans.pyramid_preimage(FVector(3, (1, 8, 12, 6, 1))).entries == (1, 7, 5, 1)
    with pytest.raises(ValueError):
        spans.pyramid_preimage(FVector(2, (1, 4, 5, 1)))


def test_preimage_alternating_sums():
    square = FVector(2, (1, 4, 4, 1))
    cube = FVector(3, (1, 8, 12, 6, 1))
    assert spans.preimage_alternating_sum(cube) == spans.preimage_alternating_sum(square) + 1
    # pyramids land exactly on 1
    assert spans.preimage_alternating_sum(FVector(3, (1, 5, 8, 5, 1))) == 1
    assert spans.preimage_alternating_sum(expr_f(parse_expr("P0 B* tri"))) == 1
    # prism steps raise the sum by one each time
    for text, child in [("B* tri", "tri"), ("B*^2 seg", "B* seg"),
                        ("B* P0 tri", "P0 tri")]:
        assert (spans.preimage_alternating_sum(expr_f(parse_expr(text)))
                == spans.preimage_alternating_sum(expr_f(parse_expr(child))) + 1)


def test_simplicial_family_guard():
    with pytest.raises(ValueError):
        spans.simplicial_family(6)
    assert spans.simplicial_stellar_dims(4) == [3, 2]


def test_simplicial_span_d2():
    rep = spans.check_span(spans.FamilySpec("simplicial", 2))
    assert rep.rank.affine_dim == 1 == rep.expected_rank


def test_simplicial_span_d3():
    rep = spans.check_span(spans.FamilySpec("simplicial", 3))
    assert rep.ok
    assert rep.rank.affine_dim == 2
    assert len(rep.rank.vectors) == 3


def test_backing_off_d3_simplices():
    rep = spans.backing_off(spans.simplex_family_exprs(3), eps=1e-2)
    assert rep.max_dev <= 1e-2
    assert rep.exact_rank == 1 == rep.float_rank
    assert rep.ok
    assert rep.delta < 0.5 and rep.big > 2.0  # it actually had to push
    assert len(rep.polytopes) == 2
    assert all(p.dim == 3 for p in rep.polytopes)


def test_backing_off_mixed_tri_family():
    exprs = [Pyr0(Base("tri")), PyrInf(Base("tri")), Prism(Base("tri"))]
    rep = spans.backing_off(exprs, eps=2e-3)
    assert rep.ok
    assert rep.exact_rank == 2 == rep.float_rank
