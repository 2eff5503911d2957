"""Symmetric convex polytopes inside the sup-normed cube ``[-1, 1]^d``.

A body is stored by a reduced generator set ``G`` and stands for
``conv(G ∪ -G)``.  All arithmetic is done with :class:`fractions.Fraction`;
distances are obtained from small linear programs solved exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from ._simplex import maximize_int

MAX_DIM = 4
MAX_GENERATORS = 64

Point = tuple[Fraction, ...]


def as_point(coords: Iterable) -> Point:
    """Coerce an iterable of numbers/strings to a tuple of Fractions."""
    return tuple(Fraction(c) for c in coords)


def sup_norm(v: Sequence[Fraction]) -> Fraction:
    return max((abs(c) for c in v), default=Fraction(0))


def sup_dist(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return max((abs(a - b) for a, b in zip(u, v)), default=Fraction(0))


def _sign_normalize(v: Point) -> Point:
    for c in v:
        if c > 0:
            return v
        if c < 0:
            return tuple(-x for x in v)
    return v


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")
        if self.lo < -1 or self.hi > 1:
            raise ValueError("interval must lie inside [-1, 1]")


@dataclass(frozen=True)
class SymPolytope:
    """Canonical symmetric polytope; build instances with :func:`sc_hull`.

    Equality of two instances is equality of the bodies they represent.
    """

    dim: int
    generators: tuple[Point, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a polytope needs at least one generator")
        if any(len(g) != self.dim for g in self.generators):
            raise ValueError("generator dimension mismatch")

    @property
    def is_origin(self) -> bool:
        return all(c == 0 for c in self.generators[0]) and len(self.generators) == 1

    def half_widths(self) -> tuple[Fraction, ...]:
        return tuple(max(abs(g[i]) for g in self.generators) for i in range(self.dim))

    def __repr__(self):
        gens = ", ".join("(" + ", ".join(str(c) for c in g) + ")" for g in self.generators)
        return f"SymPolytope(dim={self.dim}, generators=[{gens}])"


def origin(dim: int) -> SymPolytope:
    return SymPolytope(dim, ((Fraction(0),) * dim,))


def _check_points(points: Iterable) -> list[Point]:
    pts = [as_point(p) for p in points]
    if not pts:
        raise ValueError("sc_hull needs at least one point")
    d = len(pts[0])
    if d < 1:
        raise ValueError("points must have dimension >= 1")
    if d > MAX_DIM:
        raise ValueError(f"dimension {d} exceeds the supported maximum {MAX_DIM}")
    for p in pts:
        if len(p) != d:
            raise ValueError("mixed dimensions in point set")
        if any(abs(c) > 1 for c in p):
            raise ValueError(f"point {tuple(str(c) for c in p)} lies outside [-1, 1]^{d}")
    return pts


def sc_hull(points: Iterable) -> SymPolytope:
    """Symmetric convex hull ``conv(A ∪ -A)`` in canonical reduced form.

    >>> sc_hull([(1, 0), (Fraction(1, 2), 0)]).generators
    ((Fraction(1, 1), Fraction(0, 1)),)
    """
    pts = _check_points(points)
    d = len(pts[0])
    cand = sorted({_sign_normalize(p) for p in pts if any(p)})
    if not cand:
        return origin(d)
    if len(cand) > MAX_GENERATORS:
        raise ValueError(f"too many generators ({len(cand)} > {MAX_GENERATORS})")
    # no two candidates are equal up to sign, so g is redundant iff it is not extreme
    keep = [g for i, g in enumerate(cand)
            if len(cand) == 1 or not _in_hull(g, cand[:i] + cand[i + 1:])]
    return SymPolytope(d, tuple(keep))


def _common_scale(*point_lists) -> int:
    den = 1
    for pts in point_lists:
        for p in pts:
            for c in p:
                if c.denominator != 1:
                    den = lcm(den, c.denominator)
    return den


def _scaled(pts, den: int) -> list[tuple[int, ...]]:
    return [tuple(c.numerator * (den // c.denominator) for c in p) for p in pts]


def _dist_lp_int(v: Sequence[int], gens: Sequence[Sequence[int]]) -> Fraction:
    """sup-distance from ``v`` to ``conv(gens ∪ -gens)`` for integer data.

    One exact LP.  Variables are the coefficients on ``+g`` and ``-g`` plus
    ``tau`` where the distance is ``||v|| - tau``; this keeps the right-hand
    side nonnegative so the origin of the tableau is feasible.
    """
    T = max(abs(c) for c in v)
    if T == 0:
        return Fraction(0)
    m = len(gens)
    rows = []
    for i, vi in enumerate(v):
        col = [g[i] for g in gens]
        neg = [-c for c in col]
        rows.append(col + neg + [1, vi + T])
        rows.append(neg + col + [1, T - vi])
    rows.append([1] * (2 * m) + [0, 1])
    rows.append([0] * (2 * m) + [1, T])
    num, q, _ = maximize_int([0] * (2 * m) + [1], rows)
    return Fraction(T * q - num, q)


def _int_bounds(v, gens, widths) -> tuple[int, int]:
    lo = max(0, max(abs(c) - w for c, w in zip(v, widths)))
    hi = max(abs(c) for c in v)
    for g in gens:
        hi = min(hi, max(abs(a - b) for a, b in zip(v, g)), max(abs(a + b) for a, b in zip(v, g)))
    return lo, hi


def _directed_int(A, B) -> Fraction:
    return max_point_dist(A, B, den=1)[0]


def max_point_dist(points, gens, den: int | None = None, bounds=None,
                   floor: Fraction = Fraction(0)) -> tuple[Fraction, dict]:
    """Max over ``points`` of the distance to ``sc(gens)``, with pruning.

    ``bounds`` optionally maps a point to a known ``(lo, hi)`` bracket of
    its distance.  Points that cannot beat ``floor`` or the running maximum
    are skipped.  Returns the maximum (at least ``floor``) and the exact
    distances that were computed along the way.  With ``den=1`` the inputs
    are taken to be integer tuples already.
    """
    if den is None:
        den = _common_scale(points, gens)
        A, B = _scaled(points, den), _scaled(gens, den)
    else:
        A, B = points, gens
    widths = [max(abs(g[i]) for g in B) for i in range(len(B[0]))]
    bset = set(B)
    scored = []
    for x, xi in zip(points, A):
        if xi in bset or not any(xi):
            continue
        lo, hi = _int_bounds(xi, B, widths)
        lo, hi = Fraction(lo), Fraction(hi)
        if bounds is not None and x in bounds:
            blo, bhi = bounds[x]
            lo, hi = max(lo, blo * den), min(hi, bhi * den)
        scored.append((hi, lo, x, xi))
    scored.sort(key=lambda item: item[0], reverse=True)
    best = floor * den
    exact = {}
    for hi, lo, x, xi in scored:
        if hi <= best:
            break
        if lo > best:
            best = lo
        if lo == hi:
            exact[x] = lo / den
            continue
        val = _dist_lp_int(xi, B)
        exact[x] = val / den
        if val > best:
            best = val
    return best / den, exact


def _point_dist(v: Point, gens: Sequence[Point]) -> Fraction:
    den = _common_scale([v], gens)
    return _directed_int(_scaled([v], den), _scaled(gens, den)) / den


def _in_hull(v: Point, gens: Sequence[Point]) -> bool:
    return _point_dist(v, gens) == 0


def _check_dim(P: SymPolytope, v: Sequence) -> Point:
    v = as_point(v)
    if len(v) != P.dim:
        raise ValueError(f"dimension mismatch: point has {len(v)}, polytope has {P.dim}")
    return v


def contains(P: SymPolytope, v: Sequence) -> bool:
    """Exact membership test ``v ∈ sc(P.generators)``."""
    v = _check_dim(P, v)
    return _in_hull(v, P.generators)


def point_dist(v: Sequence, P: SymPolytope) -> Fraction:
    """Exact ``min_{x ∈ P} ||v - x||_inf``."""
    v = _check_dim(P, v)
    return _point_dist(v, P.generators)


def directed_distance(A: Sequence[Point], B: Sequence[Point]) -> Fraction:
    """``sup_{x ∈ sc(A)} d(x, sc(B))`` for raw (possibly redundant) generator lists.

    The distance to a convex set is convex, so the sup is attained at a
    generator.  Generators whose cheap upper bound cannot beat the running
    maximum are skipped without solving an LP.
    """
    den = _common_scale(A, B)
    return _directed_int(_scaled(A, den), _scaled(B, den)) / den


def hausdorff(P: SymPolytope, Q: SymPolytope) -> Fraction:
    """Exact Hausdorff distance between two bodies in the sup metric."""
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    if P == Q:
        return Fraction(0)
    return max(directed_distance(P.generators, Q.generators),
               directed_distance(Q.generators, P.generators))


def proj_range(P: SymPolytope, i: int) -> Interval:
    """Range of coordinate ``i`` (1-based) over the body."""
    if not 1 <= i <= P.dim:
        raise IndexError(f"coordinate index {i} out of range 1..{P.dim}")
    m = max(abs(g[i - 1]) for g in P.generators)
    return Interval(-m, m)


def is_subset(P: SymPolytope, Q: SymPolytope) -> bool:
    """Inclusion of bodies ``P ⊆ Q``, checked on the generators of P."""
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    return all(_in_hull(g, Q.generators) for g in P.generators)
