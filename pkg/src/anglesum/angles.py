"""Interior angles and angle sums of Euclidean polytopes.

The angle at a face is the fraction of a small sphere, centered in the face's
relative interior, that lies inside the polytope.  Method dispatch:

* codimension 1 — exactly 1/2;
* codimension 2 — dihedral angle between the two incident facet normals;
* dimension-3 vertices — spherical excess of the cone's cross-section polygon;
* everything else (or when forced) — seeded Monte Carlo over directions.

Angles whose squared cosines are the rational values hit by right-angled and
similar configurations are recognized and returned as exact fractions of a
turn, so lattice-aligned geometry stays in exact arithmetic end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from .core import AlphaVector, Scalar, is_exact
from .facelattice import FaceLattice, VPolytope, face_lattice, _dot, _sub

DEFAULT_SEED = 0xC0FFEE


@dataclass(frozen=True)
class SamplingConfig:
    samples: int = 100_000
    seed: int = DEFAULT_SEED
    chunk: int = 25_000
    target_se: Optional[float] = None
    force_monte_carlo: bool = False

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")


@dataclass(frozen=True)
class AngleEstimate:
    value: Scalar
    stderr: float
    method: str  # exact | dihedral | spherical-excess | monte-carlo


# Squared cosines that identify an angle as a multiple of pi/12.
# cos^2 -> twelfths for the acute representative; the obtuse partner is 12 - k.
_COS2_TWELFTHS = {
    Fraction(1): 0,
    Fraction(3, 4): 2,
    Fraction(1, 2): 3,
    Fraction(1, 4): 4,
    Fraction(0): 6,
}


def _recognize_twelfths(cos2: Fraction, cos_positive: bool) -> Optional[int]:
    """Angle in units of pi/12 if cos^2 identifies one, else None."""
    k = _COS2_TWELFTHS.get(cos2)
    if k is None:
        return None
    if k == 6:
        return 6
    return k if cos_positive else 12 - k


def _angle_between(u, v) -> Tuple[Optional[int], float]:
    """(twelfths or None, float radians) for the angle between two vectors."""
    uu, vv, uv = _dot(u, u), _dot(v, v), _dot(u, v)
    if all(is_exact(x) for x in (uu, vv, uv)):
        cos2 = Fraction(uv) ** 2 / (Fraction(uu) * Fraction(vv))
        k = _recognize_twelfths(cos2, uv > 0)
        if k is not None:
            return k, k * math.pi / 12
    c = float(uv) / math.sqrt(float(uu) * float(vv))
    return None, math.acos(max(-1.0, min(1.0, c)))


def _tangent(p, c):
    """Component of p orthogonal to c, scaled by |c|^2 to stay exact."""
    cc = _dot(c, c)
    pc = _dot(p, c)
    return tuple(cc * pi - pc * ci for pi, ci in zip(p, c))


def _dihedral_angle(n1, n2) -> AngleEstimate:
    """Interior angle at a codim-2 face from the two outward facet normals."""
    k, psi = _angle_between(n1, n2)
    if k is not None and 0 < k < 12:
        return AngleEstimate(Fraction(12 - k, 24), 0.0, "dihedral")
    return AngleEstimate((math.pi - psi) / (2 * math.pi), 0.0, "dihedral")


def _vertex_excess_3d(directions: List[tuple]) -> AngleEstimate:
    """Solid angle of a convex 3d vertex cone by Girard's spherical excess."""
    n = len(directions)
    arr = np.array([[float(c) for c in u] for u in directions])
    arr /= np.linalg.norm(arr, axis=1, keepdims=True)
    axis = arr.sum(axis=0)
    axis /= np.linalg.norm(axis)
    # order the edge directions around the axis
    ref = None
    for cand in arr:
        r = cand - np.dot(cand, axis) * axis
        if np.linalg.norm(r) > 1e-9:
            ref = r / np.linalg.norm(r)
            break
    if ref is None:
        raise ValueError("degenerate vertex cone")
    perp = np.cross(axis, ref)
    ang = np.arctan2(arr @ perp, arr @ ref)
    order = list(np.argsort(ang))

    twelfths = 0
    radians = 0.0
    exact = True
    for idx in range(n):
        c = directions[order[idx]]
        p = directions[order[idx - 1]]
        nx = directions[order[(idx + 1) % n]]
        t1, t2 = _tangent(p, c), _tangent(nx, c)
        k, theta = _angle_between(t1, t2)
        if k is None:
            exact = False
        else:
            twelfths += k
        radians += theta
    if exact:
        # excess/(4 pi) with all angles as multiples of pi/12
        return AngleEstimate(Fraction(twelfths - 12 * (n - 2), 48), 0.0, "spherical-excess")
    value = (radians - (n - 2) * math.pi) / (4 * math.pi)
    return AngleEstimate(value, 0.0, "spherical-excess")


def _orthogonal_cone(normals: List[tuple]) -> Optional[Fraction]:
    """Exact angle when the active facet normals are pairwise orthogonal."""
    for i in range(len(normals)):
        for j in range(i + 1, len(normals)):
            d = _dot(normals[i], normals[j])
            if not is_exact(d) or d != 0:
                return None
    return Fraction(1, 2 ** len(normals))


def _monte_carlo_angle(dim: int, normals: List[tuple], samples: int, seed: int,
                       stream: int, chunk: int) -> AngleEstimate:
    """Fraction of directions v with n·v < 0 for every active facet normal n."""
    mat = np.array([[float(c) for c in nrm] for nrm in normals])
    mat /= np.linalg.norm(mat, axis=1, keepdims=True)
    hits = 0
    done = 0
    index = 0
    while done < samples:
        want = min(chunk, samples - done)
        rng = np.random.default_rng((seed, stream, index))
        v = rng.standard_normal((want, dim))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        s = v @ mat.T
        good = np.abs(s).min(axis=1) > 1e-12  # grazing directions: measure zero
        inside = (s < 0).all(axis=1) & good
        hits += int(inside.sum())
        done += int(good.sum())
        index += 1
        if index > 64 * (samples // chunk + 2):
            raise RuntimeError("resampling budget exhausted")
    p = hits / done
    se = math.sqrt(max(p * (1 - p), 1e-30) / done)
    return AngleEstimate(p, se, "monte-carlo")


def interior_angle(p: VPolytope, lattice: FaceLattice, face: frozenset,
                   cfg: SamplingConfig = SamplingConfig()) -> AngleEstimate:
    d = p.dim
    fdim = next((k for k in range(0, d) if face in lattice.faces[k]), None)
    if fdim is None:
        raise ValueError("not a proper face of the polytope")

    active = [f for f in lattice.facet_list if face <= f.vertex_set]

    if not cfg.force_monte_carlo:
        if fdim == d - 1:
            return AngleEstimate(Fraction(1, 2), 0.0, "exact")
        if fdim == d - 2 and len(active) == 2:
            return _dihedral_angle(active[0].normal, active[1].normal)
        if d == 3 and fdim == 0:
            v = next(iter(face))
            edges = [e for e in lattice.faces[1] if v in e]
            dirs = [_sub(p.vertices[next(iter(e - face))], p.vertices[v]) for e in edges]
            return _vertex_excess_3d(dirs)
        exact = _orthogonal_cone([f.normal for f in active])
        if exact is not None:
            return AngleEstimate(exact, 0.0, "exact")

    stream = _face_stream_id(lattice, fdim, face)
    return _monte_carlo_angle(d, [f.normal for f in active],
                              cfg.samples, cfg.seed, stream, cfg.chunk)


def _face_stream_id(lattice: FaceLattice, fdim: int, face: frozenset) -> int:
    return fdim * 1_000_003 + lattice.faces[fdim].index(face)


def angle_sums(p: VPolytope, cfg: SamplingConfig = SamplingConfig(),
               lattice: Optional[FaceLattice] = None) -> AlphaVector:
    """The full alpha-vector, exact where every contributing angle is exact."""
    if lattice is None:
        lattice = face_lattice(p)
    d = p.dim
    sums: List[Scalar] = []
    errs: List[float] = []
    for i in range(0, d):
        total: Scalar = 0
        var = 0.0
        for face in lattice.faces[i]:
            est = interior_angle(p, lattice, face, cfg)
            total = total + est.value
            var += est.stderr ** 2
        if var > 0:
            total = float(total)
        sums.append(total)
        errs.append(math.sqrt(var))
    return AlphaVector.euclidean(tuple(sums), tuple(errs))


# --- random projections -------------------------------------------------

def _hull_size_2d(pts: np.ndarray) -> int:
    """Number of extreme points of a planar point set (monotone chain)."""
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]
    scale = max(1.0, float(np.abs(pts).max()))
    eps = 1e-12 * scale * scale

    def chain(points):
        out: List[np.ndarray] = []
        for pt in points:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                if (a[0] - o[0]) * (pt[1] - o[1]) - (a[1] - o[1]) * (pt[0] - o[0]) <= eps:
                    out.pop()
                else:
                    break
            out.append(pt)
        return out

    lower = chain(pts)
    upper = chain(pts[::-1])
    return len(lower) + len(upper) - 2


@dataclass(frozen=True)
class ProjectionReport:
    dim: int
    trials: int
    expected_f: Dict[int, float]
    stderr_f: Dict[int, float]
    alpha_hat: Dict[int, float]
    alpha_stderr: Dict[int, float]


def projection_expectation(p: VPolytope, trials: int = 10_000,
                           seed: int = DEFAULT_SEED) -> ProjectionReport:
    """Estimate E(f_i) of a random generic projection and the implied angle sums.

    The identity alpha_i(P) = (f_i(P) - E f_i(P'))/2 for i <= d-2 turns shadow
    face counts into angle sums.  Implemented for d = 2 (interval shadows) and
    d = 3 (polygon shadows); the shadow of a polygon always has two endpoints.
    """
    d = p.dim
    if d not in (2, 3):
        raise NotImplementedError("projection expectation implemented for d in {2, 3}")
    lattice = face_lattice(p)
    f = lattice.f_vector()
    verts = np.array([[float(c) for c in v] for v in p.vertices])

    counts: Dict[int, List[int]] = {i: [] for i in range(0, d - 1)}
    rng = np.random.default_rng((seed, 0xFACE))
    done = 0
    while done < trials:
        u = rng.standard_normal(d)
        nu = np.linalg.norm(u)
        if nu < 1e-12:
            continue
        u /= nu
        if d == 2:
            counts[0].append(2)
        else:
            basis = _orthobasis(u)
            shadow = verts @ basis.T
            m = _hull_size_2d(shadow)
            counts[0].append(m)
            counts[1].append(m)
        done += 1

    expected, se_f, a_hat, a_se = {}, {}, {}, {}
    for i, vals in counts.items():
        arr = np.array(vals, dtype=float)
        expected[i] = float(arr.mean())
        se_f[i] = float(arr.std(ddof=1) / math.sqrt(len(arr))) if len(arr) > 1 else 0.0
        a_hat[i] = (f[i] - expected[i]) / 2
        a_se[i] = se_f[i] / 2
    return ProjectionReport(d, trials, expected, se_f, a_hat, a_se)


def _orthobasis(u: np.ndarray) -> np.ndarray:
    """Two orthonormal vectors spanning the plane orthogonal to unit u."""
    k = int(np.argmin(np.abs(u)))
    e = np.zeros(3)
    e[k] = 1.0
    b1 = np.cross(u, e)
    b1 /= np.linalg.norm(b1)
    b2 = np.cross(u, b1)
    return np.vstack([b1, b2])
