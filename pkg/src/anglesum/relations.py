"""Linear relations on face counts and angle sums, and the operators behind
them: Euler, Gram, Dehn-Sommerville sums, and their angle-sum analogues.

Every check returns a RelationReport with lhs, rhs, signed residual, and a
pass flag.  Tolerance 0 demands exact equality (use with rational inputs);
a positive tolerance bounds |residual| for sampled or floating inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from .core import (AlphaFVector, AlphaVector, FVector, GammaVector, HVector,
                   Scalar, binom, is_exact, perles_coefficients, sign)


@dataclass(frozen=True)
class RelationReport:
    relation: str
    k: Optional[int]
    lhs: Scalar
    rhs: Scalar
    residual: Scalar
    tolerance: float
    passed: bool

    def __str__(self):
        state = "ok" if self.passed else "FAIL"
        where = "" if self.k is None else f"[k={self.k}]"
        return (f"{self.relation}{where}: lhs={self.lhs} rhs={self.rhs} "
                f"residual={self.residual} ({state})")


def _report(relation: str, k: Optional[int], lhs, rhs, tol: float) -> RelationReport:
    residual = lhs - rhs
    if tol == 0:
        passed = residual == 0
    else:
        passed = abs(float(residual)) <= tol
    return RelationReport(relation, k, lhs, rhs, residual, tol, passed)


def _proper_f(f: Union[FVector, Sequence]) -> Sequence:
    return f.proper() if isinstance(f, FVector) else tuple(f)


def _proper_alpha(a: Union[AlphaVector, Sequence]) -> Sequence:
    return a.proper() if isinstance(a, AlphaVector) else tuple(a)


def ds_operator(f: Union[FVector, Sequence], k: int, fm1: Scalar = 1) -> Scalar:
    """Alternating binomial sum over face counts from level k up.

    `f` is either an FVector or the plain sequence f_0..f_top; for k = -1 the
    empty face enters with count `fm1`.
    """
    proper = _proper_f(f)
    top = len(proper) - 1
    if not -1 <= k <= top:
        raise ValueError(f"k={k} outside -1..{top}")
    total: Scalar = 0
    if k == -1:
        total = total - fm1
    for j in range(max(k, 0), top + 1):
        total = total + sign(j) * binom(j + 1, k + 1) * proper[j]
    return total


def pe_operator(a: Union[AlphaVector, Sequence], k: int, am1: Scalar = 0) -> Scalar:
    """The angle-sum analogue of ds_operator."""
    proper = _proper_alpha(a)
    top = len(proper) - 1
    if not -1 <= k <= top:
        raise ValueError(f"k={k} outside -1..{top}")
    total: Scalar = 0
    if k == -1:
        total = total - am1
    for j in range(max(k, 0), top + 1):
        total = total + sign(j) * binom(j + 1, k + 1) * proper[j]
    return total


def alpha_tolerance(a: AlphaVector, floor: float = 1e-9) -> float:
    """4-sigma tolerance for alternating sums of sampled angle entries."""
    if a.is_exact():
        return 0.0
    var = sum(s * s for s in (a.stderr or ()) if s)
    return max(floor, 4.0 * var ** 0.5)


def perles_tolerance(a: AlphaVector, k: int, floor: float = 1e-9) -> float:
    """4-sigma tolerance for the k-th angle relation, weighting each entry's
    spread by its integer coefficient in the residual."""
    coeffs = perles_coefficients(a.dim, k)
    var = sum((c * a.stderr_at(j)) ** 2 for j, c in coeffs.items())
    exact = all(is_exact(a[j]) for j, c in coeffs.items() if c)
    return 0.0 if var == 0 and exact else max(floor, 4.0 * var ** 0.5)


def check_euler(f: FVector, tol: float = 0.0) -> RelationReport:
    """Alternating sum of proper face counts equals 1 - (-1)^d."""
    d = f.dim
    lhs = sum(sign(i) * f[i] for i in range(0, d))
    return _report("euler", None, lhs, 1 - sign(d), tol)


def check_gram(a: AlphaVector, tol: Optional[float] = None) -> RelationReport:
    """Alternating sum of proper angle sums equals (-1)^(d-1)."""
    if tol is None:
        tol = alpha_tolerance(a)
    lhs = sum(sign(i) * a[i] for i in range(0, a.dim))
    return _report("gram", None, lhs, sign(a.dim - 1), tol)


def check_ds(f: FVector, k: int, tol: float = 0.0) -> RelationReport:
    """Dehn-Sommerville at level k for the f-vector of a simplicial d-polytope."""
    d = f.dim
    if not -1 <= k <= d - 1:
        raise ValueError(f"k={k} outside -1..{d - 1}")
    lhs = ds_operator(f.proper(), k, fm1=f[-1])
    rhs = sign(d - 1) * f[k]
    return _report("dehn-sommerville", k, lhs, rhs, tol)


def check_perles(af: AlphaFVector, k: int, tol: Optional[float] = None) -> RelationReport:
    """The angle-sum Dehn-Sommerville relation at level k (simplicial P)."""
    d = af.dim
    if not -1 <= k <= d - 1:
        raise ValueError(f"k={k} outside -1..{d - 1}")
    if tol is None:
        tol = perles_tolerance(af.alpha, k)
    lhs = pe_operator(af.alpha.proper(), k, am1=af.alpha[-1])
    rhs = sign(d) * (af.alpha[k] - af.f[k])
    return _report("angle-dehn-sommerville", k, lhs, rhs, tol)


def check_h_palindrome(h: HVector, tol: float = 0.0) -> List[RelationReport]:
    """h_i = h_{d-i}: the h-form of Dehn-Sommerville for simplicial polytopes."""
    d = h.dim
    return [_report("h-palindrome", i, h[i], h[d - i], tol) for i in range(0, d + 1)]


def check_h_perles(g: GammaVector, h: HVector, tol: float = 0.0) -> List[RelationReport]:
    """gamma_i + gamma_{d-i} = h_i: the gamma/h form of the angle relations."""
    if g.dim != h.dim:
        raise ValueError("gamma and h dimensions differ")
    d = g.dim
    return [_report("gamma-h", i, g[i] + g[d - i], h[i], tol) for i in range(0, d + 1)]


def check_all_polytope(af: AlphaFVector, tol: Optional[float] = None) -> List[RelationReport]:
    """Euler and Gram plus the top-level facts true of every polytope."""
    d = af.dim
    out = [check_euler(af.f), check_gram(af.alpha, tol)]
    half = Fraction(1, 2)
    t = 0.0 if af.alpha.is_exact() else max(1e-9, 4.0 * (af.alpha.stderr_at(d - 1) or 0.0))
    out.append(_report("half-facets", d - 1, af.alpha[d - 1], half * af.f[d - 1], t))
    return out


def check_all_simplicial(af: AlphaFVector, tol: Optional[float] = None) -> List[RelationReport]:
    """Every Dehn-Sommerville and angle relation for a simplicial polytope."""
    d = af.dim
    out: List[RelationReport] = []
    for k in range(-1, d):
        out.append(check_ds(af.f, k))
        out.append(check_perles(af, k, tol))
    return out


def is_semi_eulerian(complex_) -> bool:
    """Whether every nonempty face's link has the Euler characteristic of a
    sphere of the complementary dimension."""
    e = complex_.dim
    for face in complex_.all_faces():
        if not face:
            continue
        m = len(face) - 1
        want = 1 + sign(e - m - 1)  # chi of a sphere of the link's dimension
        if complex_.link(face).euler_characteristic() != want:
            return False
    return True


def is_eulerian(complex_) -> bool:
    return is_semi_eulerian(complex_) and (
        complex_.euler_characteristic() == 1 + sign(complex_.dim))
