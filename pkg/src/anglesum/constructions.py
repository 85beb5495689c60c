"""The construction calculus: prisms, pyramids, limiting pyramids, bipyramids,
stellar subdivision — as exact recursions on alpha/f/gamma/h vectors, plus
geometric realizations for the constructions that have one.

Vectors above the old top dimension are zero-extended, which makes every
recursion uniform including the new top entry.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .core import (
    AlphaFVector,
    AlphaVector,
    FVector,
    GammaVector,
    HVector,
    Scalar,
    binom,
)
from .facelattice import VPolytope, face_lattice, _dot


def _a(q: AlphaVector, i: int):
    """alpha_i with zero extension above the stored top."""
    return q[i] if -1 <= i <= q.dim else 0


def _f(q: FVector, i: int):
    return q[i] if -1 <= i <= q.dim else 0


# --- f and alpha recursions --------------------------------------------

def prism_f(q: FVector) -> FVector:
    d = q.dim + 1
    lower = [2 * q[0]] + [2 * _f(q, i) + q[i - 1] for i in range(1, d + 1)]
    return FVector(d, (1, *lower))


def prism_alpha(q: AlphaVector) -> AlphaVector:
    d = q.dim + 1
    return AlphaVector(d, (0, *[_a(q, i) + q[i - 1] for i in range(0, d + 1)]))


def prism_af(q: AlphaFVector) -> AlphaFVector:
    return AlphaFVector(prism_alpha(q.alpha), prism_f(q.f))


def pyramid_f(q: FVector) -> FVector:
    d = q.dim + 1
    lower = [q[i] + q[i - 1] for i in range(0, d)]
    return FVector(d, (1, *lower, 1))


def pyr_zero_af(q: AlphaFVector) -> AlphaFVector:
    """The flat-limit pyramid: angles collapse onto half the base face counts."""
    d = q.dim + 1
    sums: List[Scalar] = [Fraction(q.f[i - 1], 2) for i in range(0, d - 1)]
    sums.append(Fraction(q.f[d - 2], 2) + Fraction(1, 2))
    return AlphaFVector(AlphaVector.euclidean(tuple(sums)), pyramid_f(q.f))


def pyr_inf_af(q: AlphaFVector) -> AlphaFVector:
    """The tall-limit pyramid: lateral angles tend to right angles."""
    d = q.dim + 1
    half = Fraction(1, 2)
    sums = tuple(half * _a(q.alpha, i) + q.alpha[i - 1] for i in range(0, d))
    return AlphaFVector(AlphaVector.euclidean(sums), pyramid_f(q.f))


def bipyramid_f(q: FVector) -> FVector:
    d = q.dim + 1
    lower = [_f(q, i) + 2 * q[i - 1] for i in range(0, d - 1)]
    lower.append(2 * q[d - 2])
    return FVector(d, (1, *lower, 1))



def stellar_facet_f(q: FVector) -> FVector:
    """f-vector after stellar subdivision of one facet of a simplicial polytope."""
    d = q.dim
    lower = [q[i] + binom(d, i) for i in range(0, d - 1)]
    lower.append(q[d - 1] + d - 1)
    return FVector(d, (1, *lower, 1))


def stellar_facet_flat_af(q: AlphaFVector) -> AlphaFVector:
    """Stellar subdivision of a facet in the flat limit (new vertex on the facet).

    The new vertex contributes a half-space angle; each of the C(d,i) new
    i-faces through it likewise contributes half its link.
    """
    d = q.dim
    half = Fraction(1, 2)
    sums = [q.alpha[i] + half * binom(d, i) for i in range(0, d - 1)]
    sums.append(q.alpha[d - 1] + Fraction(d - 1, 2))
    return AlphaFVector(AlphaVector.euclidean(tuple(sums)), stellar_facet_f(q.f))


# --- gamma / h recursions ----------------------------------------------

def gamma_prism(g: GammaVector) -> GammaVector:
    return GammaVector(g.dim + 1, (*g.entries, 1))



def gamma_pyr_inf(g: GammaVector) -> GammaVector:
    d = g.dim + 1
    half = Fraction(1, 2)
    return GammaVector(d, tuple(half * (g[i] + g[i - 1]) for i in range(0, d + 1)))


def h_pyramid(h: HVector) -> HVector:
    return HVector(h.dim + 1, (*h.entries, 1))


def gamma_pyr_zero(h_base: HVector) -> GammaVector:
    d = h_base.dim + 1
    half = Fraction(1, 2)
    entries = [half * h_base[i - 1] if 1 <= i <= d else 0 for i in range(0, d)]
    return GammaVector(d, (*entries, 1))


# --- construction expressions ------------------------------------------

@dataclass(frozen=True)
class Base:
    name: str  # point | seg | tri | sq


@dataclass(frozen=True)
class Prism:
    child: "Expr"


@dataclass(frozen=True)
class Pyr:
    child: "Expr"
    height: Scalar = 1


@dataclass(frozen=True)
class Pyr0:
    child: "Expr"


@dataclass(frozen=True)
class PyrInf:
    child: "Expr"


@dataclass(frozen=True)
class Stellar:
    child: "Expr"
    face_dim: int


Expr = Union[Base, Prism, Pyr, Pyr0, PyrInf, Stellar]

_BASES = {
    "point": AlphaFVector(AlphaVector(0, (0, 1)), FVector(0, (1, 1))),
    "seg": AlphaFVector(AlphaVector(1, (0, 1, 1)), FVector(1, (1, 2, 1))),
    "tri": AlphaFVector(
        AlphaVector(2, (0, Fraction(1, 2), Fraction(3, 2), 1)), FVector(2, (1, 3, 3, 1))),
    "sq": AlphaFVector(AlphaVector(2, (0, 1, 2, 1)), FVector(2, (1, 4, 4, 1))),
}

_BASE_GEOMETRY = {
    "point": ((),),
    "seg": ((0,), (1,)),
    "tri": ((0, 0), (1, 0), (0, 1)),
    "sq": ((0, 0), (1, 0), (1, 1), (0, 1)),
}


def base_vector(name: str) -> AlphaFVector:
    if name not in _BASES:
        raise ValueError(f"unknown base {name!r}")
    return _BASES[name]


def base_polytope(name: str) -> VPolytope:
    return VPolytope(len(_BASE_GEOMETRY[name][0]), _BASE_GEOMETRY[name], label=name)


def eval_expr(e: Expr) -> AlphaFVector:
    """Exact alpha-f-vector of a construction expression."""
    if isinstance(e, Base):
        return base_vector(e.name)
    if isinstance(e, Prism):
        return prism_af(eval_expr(e.child))
    if isinstance(e, Pyr):
        raise ValueError("finite pyramids have no exact alpha recursion; "
                         "use realize_expr + angle sampling, or Pyr0/PyrInf")
    if isinstance(e, Pyr0):
        return pyr_zero_af(eval_expr(e.child))
    if isinstance(e, PyrInf):
        return pyr_inf_af(eval_expr(e.child))
    if isinstance(e, Stellar):
        child = eval_expr(e.child)
        if e.face_dim != child.dim - 1:
            raise ValueError("exact stellar values only for facet subdivision")
        return stellar_facet_flat_af(child)
    raise TypeError(f"not a construction expression: {e!r}")


def expr_f(e: Expr) -> FVector:
    """f-vector of an expression (defined for every node, heights included)."""
    if isinstance(e, Base):
        return base_vector(e.name).f
    if isinstance(e, Prism):
        return prism_f(expr_f(e.child))
    if isinstance(e, (Pyr, Pyr0, PyrInf)):
        return pyramid_f(expr_f(e.child))
    if isinstance(e, Stellar):
        child = expr_f(e.child)
        if e.face_dim != child.dim - 1:
            raise ValueError("f recursion implemented for facet subdivision")
        return stellar_facet_f(child)
    raise TypeError(f"not a construction expression: {e!r}")


def realize_expr(e: Expr) -> VPolytope:
    """Geometric realization; limiting nodes have none."""
    if isinstance(e, Base):
        return base_polytope(e.name)
    if isinstance(e, (Pyr0, PyrInf)):
        raise ValueError("limiting constructions have no geometric realization")
    if isinstance(e, Prism):
        return prism_geometric(realize_expr(e.child))
    if isinstance(e, Pyr):
        return pyramid_geometric(realize_expr(e.child), e.height)
    if isinstance(e, Stellar):
        q = realize_expr(e.child)
        lattice = face_lattice(q)
        faces = lattice.faces[e.face_dim]
        if not faces:
            raise ValueError(f"no face of dimension {e.face_dim}")
        return stellar_subdivision(q, faces[0])
    raise TypeError(f"not a construction expression: {e!r}")


# --- geometric builders -------------------------------------------------

def prism_geometric(q: VPolytope, height: Scalar = 1) -> VPolytope:
    verts = tuple((*v, 0) for v in q.vertices) + tuple((*v, height) for v in q.vertices)
    return VPolytope(q.dim + 1, verts, label=f"prism({q.label})")


def centroid(points) -> tuple:
    n = len(points)
    out = []
    for col in zip(*points):
        s = sum(col)
        out.append(s / n if isinstance(s, float) else Fraction(s, n))
    return tuple(out)


def pyramid_geometric(q: VPolytope, height: Scalar) -> VPolytope:
    if height <= 0:
        raise ValueError("pyramid height must be positive")
    base = tuple((*v, 0) for v in q.vertices)
    c = centroid(q.vertices)
    apex = (*c, height)
    return VPolytope(q.dim + 1, base + (apex,), label=f"pyr[{height}]({q.label})")


def bipyramid_geometric(q: VPolytope, height: Scalar) -> VPolytope:
    if height <= 0:
        raise ValueError("bipyramid height must be positive")
    base = tuple((*v, 0) for v in q.vertices)
    c = centroid(q.vertices)
    apexes = ((*c, height), (*c, -height))
    return VPolytope(q.dim + 1, base + apexes, label=f"bipyr[{height}]({q.label})")


def stellar_subdivision(p: VPolytope, face: frozenset,
                        push: float = 1.0) -> VPolytope:
    """Add a vertex beyond exactly the facets containing the chosen face."""
    lattice = face_lattice(p)
    containing = [f for f in lattice.facet_list if face <= f.vertex_set]
    others = [f for f in lattice.facet_list if not face <= f.vertex_set]
    if not containing:
        raise ValueError("face lies on no facet")
    pts = [p.vertices[i] for i in sorted(face)]
    c = tuple(sum(col) / len(pts) for col in zip(*[_floats(v) for v in pts]))

    normals = []
    for f in containing:
        n = _floats(f.normal)
        scale = sum(x * x for x in n) ** 0.5
        normals.append(tuple(x / scale for x in n))
    m = tuple(sum(col) for col in zip(*normals))
    for f, n in zip(containing, normals):
        if _dot(n, m) <= 0:
            raise ValueError("no outward direction is beyond all containing facets")

    t = float(push)
    for _ in range(80):
        x = tuple(ci + t * mi for ci, mi in zip(c, m))
        beyond_ok = all(_dot(_floats(f.normal), x) > float(f.offset) for f in containing)
        inside_ok = all(_dot(_floats(f.normal), x) < float(f.offset) for f in others)
        if beyond_ok and inside_ok:
            verts = tuple(_floats(v) for v in p.vertices) + (x,)
            return VPolytope(p.dim, verts, label=f"st[{sorted(face)}]({p.label})")
        t /= 2
    raise ValueError("no push distance achieves the required beyond-set")


def _floats(v) -> tuple:
    return tuple(float(c) for c in v)


# --- expression grammar -------------------------------------------------
#
# Whitespace-separated tokens, base last, rightmost operation applied first:
#   "Pinf^2 B* tri"  ==  PyrInf(PyrInf(Prism(Base("tri"))))
# Operations: B*  P[h]  P0  Pinf  St[j]   (any of them may carry ^k).

_TOKEN_RE = re.compile(r"^(?P<op>B\*|P0|Pinf|P\[(?P<h>[^\]]+)\]|St\[(?P<j>-?\d+)\])"
                       r"(\^(?P<k>\d+))?$")


def parse_expr(text: str) -> Expr:
    tokens = text.split()
    if not tokens:
        raise ValueError("empty construction expression")
    base = tokens[-1]
    if base not in _BASES:
        raise ValueError(f"expression must end in a base ({'|'.join(_BASES)}), "
                         f"got {base!r}")
    expr: Expr = Base(base)
    for tok in reversed(tokens[:-1]):
        m = _TOKEN_RE.match(tok)
        if m is None:
            raise ValueError(f"bad construction token {tok!r}")
        k = int(m.group("k")) if m.group("k") else 1
        if k < 1:
            raise ValueError(f"bad repeat count in {tok!r}")
        op = m.group("op")
        for _ in range(k):
            if op == "B*":
                expr = Prism(expr)
            elif op == "P0":
                expr = Pyr0(expr)
            elif op == "Pinf":
                expr = PyrInf(expr)
            elif op.startswith("P["):
                expr = Pyr(expr, Fraction(m.group("h")))
            else:
                expr = Stellar(expr, int(m.group("j")))
    return expr


def _op_token(e: Expr) -> str:
    if isinstance(e, Prism):
        return "B*"
    if isinstance(e, Pyr0):
        return "P0"
    if isinstance(e, PyrInf):
        return "Pinf"
    if isinstance(e, Pyr):
        return f"P[{e.height}]"
    return f"St[{e.face_dim}]"


def expr_to_str(e: Expr) -> str:
    """Canonical grammar string, with runs of equal operations compressed."""
    ops: List[str] = []
    while not isinstance(e, Base):
        ops.append(_op_token(e))
        e = e.child
    out: List[str] = []
    for tok in ops:
        if out and out[-1].split("^")[0] == tok:
            head, _, k = out[-1].partition("^")
            out[-1] = f"{head}^{int(k) + 1 if k else 2}"
        else:
            out.append(tok)
    return " ".join(out + [e.name])


# --- standard solids ----------------------------------------------------

def unit_cube(d: int = 3) -> VPolytope:
    verts = [tuple((k >> a) & 1 for a in range(d)) for k in range(2 ** d)]
    return VPolytope(d, tuple(verts), label=f"cube{d}")


def regular_tetrahedron() -> VPolytope:
    """Regular tetrahedron with integer coordinates (edge sqrt 2)."""
    return VPolytope(3, ((0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)), label="regular-tet")


def cross_polytope(d: int = 3) -> VPolytope:
    verts = []
    for a in range(d):
        for s in (1, -1):
            verts.append(tuple(s if i == a else 0 for i in range(d)))
    return VPolytope(d, tuple(verts), label=f"cross{d}")


def glued_tetrahedra() -> VPolytope:
    """The triangle bipyramid made of two unit regular tetrahedra."""
    h3 = 3 ** 0.5
    base = ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.5, h3 / 2, 0.0))
    apex = (0.5, h3 / 6, (2.0 / 3.0) ** 0.5)
    apex2 = (0.5, h3 / 6, -((2.0 / 3.0) ** 0.5))
    return VPolytope(3, base + (apex, apex2), label="two-regular-tets")


def regular_simplex(d: int) -> VPolytope:
    """A d-simplex with unit edges (float coordinates)."""
    import numpy as np
    pts = np.eye(d + 1) - np.full((d + 1, d + 1), 1.0 / (d + 1))
    q, _ = np.linalg.qr(pts.T)
    coords = pts @ q[:, :d]
    coords /= np.linalg.norm(coords[0] - coords[1])
    return VPolytope(d, tuple(tuple(map(float, row)) for row in coords),
                     label=f"regular-simplex{d}")
