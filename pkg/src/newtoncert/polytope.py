"""Exact lattice-polytope geometry in the nonnegative orthant.

A LatticePolytope is a generator point set, optionally Minkowski-summed
with the nonnegative orthant (orthant_recession).  Membership tests run an
exact rational LP and always return a checkable witness: a convex
combination on success, a separating linear functional on failure.

The quadratic simplex 2D = conv{2e_1, ..., 2e_n} lives in the hyperplane
x_1 + ... + x_n = 2; its lattice points are exactly the pair points
e_i + e_j (i = j allowed), and the barycenter is (2/n, ..., 2/n).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from . import lp
from ._linalg import matrix_rank, solve_unique
from .gaussian import exact_fraction
from .poly import SparsePolynomial

Point = Tuple[int, ...]
RationalPoint = Tuple[Fraction, ...]


@dataclass(frozen=True)
class LatticePolytope:
    """conv(generators), plus the orthant recession cone when flagged.

    Generators are stored sorted and deduplicated; they are not required
    to be vertices.  n = 0 with no generators is the empty base case that
    coordinate reductions bottom out in.
    """

    n: int
    generators: Tuple[Point, ...]
    orthant_recession: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("dimension must be nonnegative")
        gens = tuple(sorted({tuple(g) for g in self.generators}))
        if self.n == 0:
            if gens not in ((), ((),)):
                raise ValueError("0-dimensional polytope admits no coordinates")
            gens = ()
        elif not gens:
            raise ValueError("generator set must be nonempty")
        for g in gens:
            if len(g) != self.n:
                raise ValueError(f"generator {g} has wrong length")
            if any(not isinstance(c, int) or c < 0 for c in g):
                raise ValueError(f"generator {g} outside the nonnegative orthant")
        object.__setattr__(self, "generators", gens)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "generators": [list(g) for g in self.generators],
            "orthant_recession": self.orthant_recession,
        }


@dataclass(frozen=True)
class ConvexCombination:
    """Nonnegative rational weights summing to one over lattice points.

    For polyhedra the witness also carries the nonnegative recession part
    r with  target = sum(w_i * p_i) + r.
    """

    points: Tuple[Point, ...]
    weights: Tuple[Fraction, ...]
    recession: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        points = tuple(tuple(p) for p in self.points)
        weights = tuple(exact_fraction(w) for w in self.weights)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)
        if self.recession is not None:
            rec = tuple(exact_fraction(v) for v in self.recession)
            if any(v < 0 for v in rec):
                raise ValueError("recession vector must be nonnegative")
            object.__setattr__(self, "recession", rec)
        if len(points) != len(weights):
            raise ValueError("points/weights length mismatch")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be nonnegative")
        if sum(weights, Fraction(0)) != 1:
            raise ValueError("weights must sum to exactly 1")

    def value(self) -> RationalPoint:
        """Recompute the weighted point sum (plus recession part)."""
        if not self.points:
            raise ValueError("empty combination has no value")
        n = len(self.points[0])
        acc = [Fraction(0)] * n
        for p, w in zip(self.points, self.weights):
            for k in range(n):
                acc[k] += w * p[k]
        if self.recession is not None:
            for k in range(n):
                acc[k] += self.recession[k]
        return tuple(acc)

    def to_json_dict(self) -> dict:
        doc = {
            "points": [list(p) for p in self.points],
            "weights": [str(w) for w in self.weights],
        }
        if self.recession is not None:
            doc["recession"] = [str(v) for v in self.recession]
        return doc


@dataclass(frozen=True)
class Separation:
    """Linear functional with <coeffs, v> >= rhs on the polytope and
    <coeffs, q> < rhs at the separated point q."""

    coeffs: Tuple[Fraction, ...]
    rhs: Fraction

    def to_json_dict(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs], "rhs": str(self.rhs)}


MembershipResult = Union[ConvexCombination, Separation]


def barycenter(n: int) -> RationalPoint:
    """The point (2/n, ..., 2/n), center of the quadratic simplex."""
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(Fraction(2, n) for _ in range(n))


def pair_point(n: int, i: int, j: int) -> Point:
    """The lattice point e_i + e_j (0-indexed), i.e. the exponent of x_i*x_j."""
    coords = [0] * n
    coords[i] += 1
    coords[j] += 1
    return tuple(coords)


def decode_pair(point: Point) -> Tuple[int, int]:
    """Indices (i, j), i <= j, with point = e_i + e_j; rejects other points."""
    if sum(point) != 2 or any(c < 0 for c in point):
        raise ValueError(f"{point} is not a lattice point of the quadratic simplex")
    idx = [k for k, c in enumerate(point) if c]
    if len(idx) == 1:
        return idx[0], idx[0]
    return idx[0], idx[1]


def two_delta_points(n: int) -> Tuple[Point, ...]:
    """All lattice points of the quadratic simplex, in lexicographic order."""
    pts = {pair_point(n, i, j) for i in range(n) for j in range(i, n)}
    return tuple(sorted(pts))


def in_two_delta(M: LatticePolytope) -> bool:
    """Whether M sits inside the quadratic simplex (coordinate sums all 2)."""
    if M.orthant_recession or M.n == 0:
        return False
    return all(sum(g) == 2 for g in M.generators)


def _require_in_two_delta(M: LatticePolytope):
    if not in_two_delta(M):
        raise ValueError("polytope is not contained in the quadratic simplex")


def contains_point(M: LatticePolytope, q: Sequence) -> MembershipResult:
    """Exact membership of a rational point, with a verified witness.

    Feasibility is decided by a rational LP; the returned convex
    combination or separating functional is substituted back before it is
    returned, so outputs are self-checking.
    """
    if M.n == 0:
        raise ValueError("membership in the 0-dimensional polytope is vacuous")
    qv = tuple(exact_fraction(v) for v in q)
    if len(qv) != M.n:
        raise ValueError("dimension mismatch")
    gens = M.generators
    k = len(gens)
    rows: List[list] = []
    for coord in range(M.n):
        row = [g[coord] for g in gens]
        if M.orthant_recession:
            row += [1 if axis == coord else 0 for axis in range(M.n)]
        rows.append(row)
    rows.append([1] * k + ([0] * M.n if M.orthant_recession else []))
    rhs = list(qv) + [Fraction(1)]

    result = lp.solve_eq_nonneg(rows, rhs)
    if isinstance(result, lp.Feasible):
        weights = result.x[:k]
        rec = result.x[k:] if M.orthant_recession else None
        witness = ConvexCombination(gens, weights, rec)
        if witness.value() != qv:
            raise RuntimeError("membership witness failed verification")
        return witness
    u = result.y[: M.n]
    t = result.y[M.n]
    sep = Separation(tuple(-v for v in u), t)
    for g in gens:
        if sum(c * x for c, x in zip(sep.coeffs, g)) < sep.rhs:
            raise RuntimeError("separating functional failed on a generator")
    if M.orthant_recession and any(c < 0 for c in sep.coeffs):
        raise RuntimeError("separating functional not valid on the recession cone")
    if sum(c * x for c, x in zip(sep.coeffs, qv)) >= sep.rhs:
        raise RuntimeError("separating functional does not separate the point")
    return sep


def reduce_to_vertices(
    points: Sequence[Point], n: int, orthant_recession: bool
) -> Tuple[Point, ...]:
    """Drop every point lying in the hull of the remaining ones."""
    pts = sorted({tuple(p) for p in points})
    if orthant_recession:
        # cheap prefilter: componentwise domination
        pts = [
            p
            for p in pts
            if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in pts)
        ]
    keep = []
    for p in pts:
        others = [q for q in pts if q != p]
        if not others:
            keep.append(p)
            continue
        hull = LatticePolytope(n, tuple(others), orthant_recession)
        if isinstance(contains_point(hull, p), Separation):
            keep.append(p)
    return tuple(keep)


def newton_polytope(p: SparsePolynomial) -> LatticePolytope:
    """Convex hull of the support of p, reduced to its vertex set."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no Newton polytope")
    verts = reduce_to_vertices(p.support(), p.n_vars, False)
    return LatticePolytope(p.n_vars, verts, False)


def newton_polyhedron(f: SparsePolynomial) -> LatticePolytope:
    """Support hull plus the orthant recession cone, minimal generators."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no Newton polyhedron")
    verts = reduce_to_vertices(f.support(), f.n_vars, True)
    return LatticePolytope(f.n_vars, verts, True)


def _membership_weights(points: Sequence[Point], q: RationalPoint) -> Optional[Tuple[Fraction, ...]]:
    """Basic nonnegative weights expressing q over points, or None."""
    n = len(q)
    hull = LatticePolytope(n, tuple(points), False)
    res = contains_point(hull, q)
    if isinstance(res, Separation):
        return None
    # hull sorts its generators; realign to the caller's order
    index = {p: i for i, p in enumerate(hull.generators)}
    return tuple(res.weights[index[tuple(p)]] for p in points)


def _affinely_independent(points: Sequence[Point]) -> bool:
    if len(points) <= 1:
        return True
    base = points[0]
    rows = [[c - b for c, b in zip(p, base)] for p in points[1:]]
    return matrix_rank(rows) == len(points) - 1


def lattice_points(M: LatticePolytope) -> Tuple[Point, ...]:
    """All lattice points of a polytope inside the quadratic simplex.

    Candidates are the pair points e_i + e_j; membership uses the unique
    affine solve when the generators are affinely independent and the
    exact LP otherwise.
    """
    _require_in_two_delta(M)
    gens = M.generators
    fast = _affinely_independent(gens)
    found = []
    for cand in two_delta_points(M.n):
        if cand in gens:
            found.append(cand)
            continue
        if fast:
            rows = [[g[c] for g in gens] for c in range(M.n)]
            rows.append([1] * len(gens))
            sol = solve_unique(rows, list(cand) + [1])
            inside = sol is not None and all(w >= 0 for w in sol)
        else:
            inside = isinstance(contains_point(M, cand), ConvexCombination)
        if inside:
            found.append(cand)
    return tuple(found)


def is_minimal(M: LatticePolytope) -> bool:
    """No proper lattice sub-polytope contains the barycenter.

    Equivalent test: the barycenter has a representation over the lattice
    points whose basic weights are all strictly positive (which forces the
    points to be affinely independent).  The 0-dimensional polytope is
    minimal by convention.
    """
    if M.n == 0:
        return True
    _require_in_two_delta(M)
    pts = lattice_points(M)
    weights = _membership_weights(pts, barycenter(M.n))
    if weights is None:
        return False
    return all(w > 0 for w in weights) and _affinely_independent(pts)


def minimal_subpolytope(M: LatticePolytope) -> LatticePolytope:
    """A minimal sub-polytope still containing the barycenter.

    Repeatedly expresses the barycenter over the current lattice points
    and drops the lexicographically smallest zero-weight point.  A basic
    solution never weights the midpoint of two diagonal points, so when
    the surviving support still holds two diagonal points e_i+e_i and
    e_j+e_j their weight is rerouted through the midpoint e_i+e_j and the
    lighter diagonal is dropped; this strictly shrinks the polytope and
    guarantees termination with at most one diagonal point.
    """
    _require_in_two_delta(M)
    center = barycenter(M.n)
    pts = list(lattice_points(M))
    weights = _membership_weights(pts, center)
    if weights is None:
        raise ValueError("the barycenter is not contained in the polytope")
    while True:
        zeros = [p for p, w in zip(pts, weights) if w == 0]
        if zeros:
            pts.remove(min(zeros))
        else:
            diagonals = sorted(p for p in pts if max(p) == 2)
            if len(diagonals) < 2:
                break
            a, b = diagonals[0], diagonals[1]
            wmap = dict(zip(pts, weights))
            drop = a if (wmap[a], a) <= (wmap[b], b) else b
            mid = pair_point(M.n, a.index(2), b.index(2))
            pts = sorted(set(pts) - {drop} | {mid})
        weights = _membership_weights(pts, center)
        if weights is None:
            raise RuntimeError("shrinking step lost the barycenter")
    result = LatticePolytope(M.n, tuple(pts), False)
    if not _affinely_independent(result.generators):
        raise RuntimeError("minimal sub-polytope is not a simplex")
    if set(lattice_points(result)) != set(result.generators):
        raise RuntimeError("minimal sub-polytope has interior lattice points")
    return result


def is_special_vertex(M: LatticePolytope, v: Point) -> bool:
    """Whether no other lattice point of M uses v's smaller index.

    For v = e_i + e_j with i <= j this checks index i; for minimal
    polytopes the two index choices agree.
    """
    _require_in_two_delta(M)
    v = tuple(v)
    pts = lattice_points(M)
    if v not in pts:
        raise ValueError(f"{v} is not a lattice point of the polytope")
    i, _ = decode_pair(v)
    return all(p[i] == 0 for p in pts if p != v)


def reduce_special(
    M: LatticePolytope, v: Point
) -> Tuple[LatticePolytope, Tuple[int, ...]]:
    """Remove a special vertex and embed the rest in the reduced simplex.

    Returns the reduced polytope (coordinates i and j deleted; just i when
    v is a diagonal point) together with the sorted dropped index set.
    The reduced polytope is minimal again; this is re-verified.
    """
    v = tuple(v)
    if not is_minimal(M):
        raise ValueError("polytope is not minimal")
    if not is_special_vertex(M, v):
        raise ValueError(f"{v} is not a special vertex")
    i, j = decode_pair(v)
    dropped = (i,) if i == j else (i, j)
    rest = [p for p in lattice_points(M) if p != v]
    for p in rest:
        if any(p[d] != 0 for d in dropped):
            raise RuntimeError("remaining point uses a dropped coordinate")
    keep = [c for c in range(M.n) if c not in dropped]
    reduced_pts = tuple(tuple(p[c] for c in keep) for p in rest)
    n_red = len(keep)
    if n_red == 0:
        if reduced_pts:
            raise RuntimeError("reduction produced points in dimension 0")
        reduced = LatticePolytope(0, ())
    elif not reduced_pts:
        raise RuntimeError("minimal polytope reduction lost all points")
    else:
        reduced = LatticePolytope(n_red, reduced_pts, False)
    if not is_minimal(reduced):
        raise RuntimeError("reduction of a minimal polytope is not minimal")
    return reduced, dropped
