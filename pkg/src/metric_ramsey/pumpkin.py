"""Pumpkins and the colouring of sup-norm sphere tuples by pumpkins.

A tuple ``x`` of ``d`` unit vectors of l_inf is read column by column as a
sequence of points ``x(0), x(1), ...`` of the cube ``[-1, 1]^d``.  Its
colour is the increasing chain of symmetric convex bodies

    sc{x(0), ..., x(k-1), t x(k)}      k = 0..n-1, t in [0, 1]

closed off by ``sc{x(0), ..., x(n-1)}``.  A :class:`Pumpkin` stores such a
chain by its breakpoints (``base``) and the direction grown from each.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .convex_geometry import (
    MAX_DIM,
    Point,
    SymPolytope,
    as_point,
    directed_distance,
    is_subset,
    max_point_dist,
    origin,
    proj_range,
    sc_hull,
    sup_dist,
    sup_norm,
)


class SphereConditionError(ValueError):
    """A row of the tuple does not reach sup-norm 1 inside the truncation."""

    def __init__(self, row: int, norm: Fraction):
        super().__init__(f"row {row} has sup-norm {norm}, expected 1 (tuple is not on the sphere)")
        self.row = row
        self.norm = norm


class MalformedPumpkinError(ValueError):
    pass


def to_fraction(value) -> Fraction:
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


@dataclass(frozen=True)
class TupleLinf:
    """Finite truncation of a ``d``-tuple of l_inf vectors (zero tail).

    ``entries[i][k]`` is coordinate ``k`` of the ``i``-th vector.
    """

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(as_point(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        if not rows:
            raise ValueError("a tuple needs at least one row")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged tuple: rows have different lengths")
        for i, r in enumerate(rows):
            for k, v in enumerate(r):
                if abs(v) > 1:
                    raise ValueError(f"entry ({i}, {k}) = {v} lies outside [-1, 1]")

    @property
    def d(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0])

    def column(self, k: int) -> Point:
        return tuple(r[k] for r in self.entries)

    def columns(self) -> list[Point]:
        return [self.column(k) for k in range(self.n)]

    def sphere_violations(self) -> list[int]:
        return [i for i, r in enumerate(self.entries) if sup_norm(r) != 1]

    def check_sphere(self) -> None:
        bad = self.sphere_violations()
        if bad:
            raise SphereConditionError(bad[0], sup_norm(self.entries[bad[0]]))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "TupleLinf":
        if not columns:
            raise ValueError("need at least one column")
        d = len(columns[0])
        return cls(tuple(tuple(col[i] for col in columns) for i in range(d)))


def tuple_distance(x: TupleLinf, y: TupleLinf) -> Fraction:
    """Sup distance between two tuples, padding the shorter one with zeros."""
    if x.d != y.d:
        raise ValueError(f"arity mismatch: {x.d} vs {y.d}")
    n = max(x.n, y.n)
    best = Fraction(0)
    for rx, ry in zip(x.entries, y.entries):
        for k in range(n):
            a = rx[k] if k < x.n else 0
            b = ry[k] if k < y.n else 0
            best = max(best, abs(a - b))
    return best


@dataclass(frozen=True)
class Stage:
    base: SymPolytope
    direction: Point


@dataclass(frozen=True)
class Pumpkin:
    dim: int
    stages: tuple[Stage, ...]
    final: SymPolytope

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(self.stages))

    def stage_end(self, k: int) -> SymPolytope:
        """The body reached at ``t = 1`` of stage ``k``."""
        if k + 1 < len(self.stages):
            return self.stages[k + 1].base
        return self.final


@dataclass(frozen=True)
class Diagnosis:
    status: str  # "valid" | "partial" | "malformed"
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "valid"


def pp_colour(x: TupleLinf, require_sphere: bool = True) -> Pumpkin:
    """Colour a sphere tuple by its pumpkin.

    Stage ``k`` starts at the symmetric hull of the first ``k`` columns and
    grows towards column ``k``; the final body is the hull of all columns.
    Stages whose direction already lies in their base are kept.
    """
    if require_sphere:
        x.check_sphere()
    if x.d > MAX_DIM:
        raise ValueError(f"arity {x.d} exceeds the supported maximum {MAX_DIM}")
    cols = x.columns()
    base = origin(x.d)
    stages = []
    for k, col in enumerate(cols):
        stages.append(Stage(base, col))
        base = sc_hull(list(base.generators) + [col])
    return Pumpkin(x.d, tuple(stages), base)


def canonical_pum1() -> Pumpkin:
    one = (Fraction(1),)
    return Pumpkin(1, (Stage(origin(1), one),), sc_hull([one]))


def pumpkin_valid(P: Pumpkin) -> Diagnosis:
    """Check the structural invariants of a pumpkin.

    ``partial`` means the chain is well formed but its final body misses a
    face of the cube.
    """
    d = P.dim
    if not isinstance(d, int) or d < 1:
        return Diagnosis("malformed", f"bad dimension {d!r}")
    if P.final.dim != d:
        return Diagnosis("malformed", "final body has the wrong dimension")
    for k, st in enumerate(P.stages):
        if st.base.dim != d or len(st.direction) != d:
            return Diagnosis("malformed", f"stage {k} has the wrong dimension")
        if any(abs(c) > 1 for c in st.direction):
            return Diagnosis("malformed", f"direction of stage {k} leaves the cube")
    if not P.stages:
        if not P.final.is_origin:
            return Diagnosis("malformed", "no stages lead from the origin to the final body")
    else:
        if not P.stages[0].base.is_origin:
            return Diagnosis("malformed", "first base is not the origin")
        for k, st in enumerate(P.stages):
            expected = sc_hull(list(st.base.generators) + [st.direction])
            end = P.stage_end(k)
            if end == expected:
                continue
            where = "final body" if k + 1 == len(P.stages) else f"base of stage {k + 1}"
            if not is_subset(st.base, end):
                return Diagnosis("malformed", f"base of stage {k} is not contained in the {where}")
            if is_subset(expected, end):
                return Diagnosis("malformed", f"gap between stage {k} and the {where}")
            return Diagnosis("malformed", f"{where} is not sc(base ∪ direction) of stage {k}")
    for i in range(1, d + 1):
        rng = proj_range(P.final, i)
        if rng.hi != 1:
            return Diagnosis("partial", f"final body projects onto [{rng.lo}, {rng.hi}] along coordinate {i}")
    return Diagnosis("valid")


# -- distance between pumpkins -------------------------------------------------


class _Chain:
    """Parameterised view of a pumpkin: element ``s`` for ``s`` in ``[0, n]``."""

    def __init__(self, P: Pumpkin):
        self.P = P
        self.n = len(P.stages)
        self.constant = []
        self.lip = []
        for k, st in enumerate(P.stages):
            const = P.stage_end(k) == st.base
            self.constant.append(const)
            self.lip.append(Fraction(0) if const else sup_norm(st.direction))
        self._cache: dict[Fraction, tuple[Point, ...]] = {}

    def gens(self, s: Fraction) -> tuple[Point, ...]:
        hit = self._cache.get(s)
        if hit is not None:
            return hit
        if self.n == 0:
            out = self.P.final.generators
        elif s >= self.n:
            out = self.P.final.generators
        else:
            k = int(s)
            t = s - k
            st = self.P.stages[k]
            if t == 0 or self.constant[k]:
                out = st.base.generators
            else:
                out = st.base.generators + (tuple(t * c for c in st.direction),)
        self._cache[s] = out
        return out


def _grid_step(eps: Fraction) -> Fraction:
    h = Fraction(1)
    while h > eps / 4:
        h /= 2
    return h


def _snap(r: Fraction, lo: Fraction, hi: Fraction, h: Fraction) -> Fraction:
    r = Fraction(round(r / h)) * h
    return min(max(r, lo + h), hi - h)


def _inf_sup(upper: Sequence[Point], lower: Sequence[Point], Q: _Chain,
             delta: Fraction, h: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """Bracket ``inf_r max(a(r), b(r))`` to within ``delta``.

    ``a(r) = sup_{x in sc(upper)} d(x, Q(r))`` is nonincreasing in ``r`` and
    ``b(r) = sup_{y in Q(r)} d(y, sc(lower))`` is nondecreasing, since the
    chain ``Q`` grows.  With ``upper == lower`` this is the distance from one
    body to the chain; with ``upper ⊇ lower`` it bounds the distance of
    every body sandwiched between them.

    Returns ``(lo, hi, r)`` with ``max(a(r), b(r)) == hi``.
    """
    memo: dict[Fraction, tuple[Fraction, Fraction]] = {}
    # d(x, Q(r)) is nonincreasing in r: earlier values bracket later ones
    a_seen: dict[Point, list[tuple[Fraction, Fraction]]] = {x: [] for x in upper}
    b_seen: dict[Point, Fraction] = {}

    def ab(r):
        hit = memo.get(r)
        if hit is not None:
            return hit
        g = Q.gens(r)
        bounds = {}
        for x, recs in a_seen.items():
            if recs:
                hi = min((v for rr, v in recs if rr <= r), default=Fraction(2))
                lo = max((v for rr, v in recs if rr >= r), default=Fraction(0))
                bounds[x] = (lo, hi)
        a, exact = max_point_dist(upper, g, bounds=bounds)
        for x, v in exact.items():
            a_seen[x].append((r, v))
        floor = max((b_seen[y] for y in g if y in b_seen), default=Fraction(0))
        rest = [y for y in g if y not in b_seen]
        if rest:
            b, exact = max_point_dist(rest, lower, floor=floor)
            b_seen.update(exact)
        else:
            b = floor
        hit = memo[r] = (a, b)
        return hit

    n = Fraction(Q.n)
    a_end, b_end = ab(n)
    if a_end >= b_end:
        return a_end, a_end, n
    if Q.n == 0:
        return b_end, b_end, n
    # invariant: a >= b at r1, a < b at r2 (b(0) = 0 <= a(0))
    i1, i2 = 0, Q.n
    while i2 - i1 > 1:
        mid = (i1 + i2) // 2
        a, b = ab(Fraction(mid))
        if a >= b:
            i1 = mid
        else:
            i2 = mid
    r1, r2 = Fraction(i1), Fraction(i2)
    (a1, b1), (a2, b2) = ab(r1), ab(r2)
    last_side = 0
    streak = 0
    while True:
        lo = max(a2, b1)
        if a1 <= b2:
            hi, r_hi = a1, r1
        else:
            hi, r_hi = b2, r2
        if hi - lo <= delta or r2 - r1 <= h:
            return lo, hi, r_hi
        f1, f2 = a1 - b1, a2 - b2
        if streak >= 2:
            r = (r1 + r2) / 2
            streak = 0
        else:
            r = r1 + (r2 - r1) * f1 / (f1 - f2)
        r = _snap(r, r1, r2, h)
        a, b = ab(r)
        side = 1 if a >= b else 2
        if side == 1:
            r1, a1, b1 = r, a, b
        else:
            r2, a2, b2 = r, a, b
        streak = streak + 1 if side == last_side else 1
        last_side = side


def _neg(v: Point) -> Point:
    return tuple(-c for c in v)


def _box_bound(P: _Chain, k: int, t1: Fraction, t2: Fraction,
               Q: _Chain, j: int, u1: Fraction, u2: Fraction) -> Fraction:
    """Upper bound for ``d_H(P(k + t), Q(j + t'))`` along the affine path
    from ``(t1, u1)`` to ``(t2, u2)``.

    Fixed generators only get closer to a growing body, and the distance
    from a moving point ``t * dir`` to a fixed body is convex in ``t``; the
    moving generators may alternatively be paired with each other.
    """
    su, sw = P.P.stages[k], Q.P.stages[j]
    u, w = su.direction, sw.direction
    p1 = tuple(t1 * c for c in u)
    p2 = tuple(t2 * c for c in u)
    q1 = tuple(u1 * c for c in w)
    q2 = tuple(u2 * c for c in w)
    # bodies are symmetric, so the moving points may be paired up to sign
    match = min(max(sup_dist(p1, q1), sup_dist(p2, q2)),
                max(sup_dist(p1, _neg(q1)), sup_dist(p2, _neg(q2))))
    q_low = sw.base.generators + (q1 if u1 <= u2 else q2,)
    p_low = su.base.generators + (p1,)
    a_fixed = directed_distance(su.base.generators, q_low)
    b_fixed = directed_distance(sw.base.generators, p_low)
    bound = max(a_fixed, b_fixed)
    if match > bound:
        a_move = min(match, max(directed_distance((p1,), q_low), directed_distance((p2,), q_low)))
        bound = max(bound, a_move)
    if match > bound:
        b_move = min(match, max(directed_distance((q1,), p_low), directed_distance((q2,), p_low)))
        bound = max(bound, b_move)
    return bound


def _stage_coords(C: _Chain, r: Fraction) -> tuple[int, Fraction]:
    j = int(r)
    if j >= C.n:
        return C.n - 1, Fraction(1)
    return j, r - j


def _directed_chain_dist(P: _Chain, Q: _Chain, eps: Fraction) -> Fraction:
    """Lower estimate ``v`` with ``v <= sup_s inf_r d_H(P(s), Q(r)) <= v + eps``.

    ``g(s) = inf_r d_H(P(s), Q(r))`` is Lipschitz in ``s`` with the sup-norm
    of the stage direction as constant.  An interval of ``s`` is dropped as
    soon as one of three upper bounds for ``g`` on it falls below the
    running maximum plus ``eps``: the Lipschitz cone over its endpoints, the
    box bound pairing it with one stage of ``Q``, or the sandwich bound
    between its end bodies.
    """
    delta = eps / 2
    h = _grid_step(eps)
    seen: dict[Fraction, tuple[Fraction, Fraction, Fraction]] = {}

    def g(s):
        hit = seen.get(s)
        if hit is None:
            gens = P.gens(s)
            hit = _inf_sup(gens, gens, Q, delta, h)
            seen[s] = hit
        return hit

    best = max(g(Fraction(k))[0] for k in range(P.n + 1))
    heap = []
    counter = 0

    def push(s1, s2, k, cap, tried):
        nonlocal counter
        hi1, hi2 = seen[s1][1], seen[s2][1]
        ub = min(cap, (hi1 + hi2 + P.lip[k] * (s2 - s1)) / 2)
        counter += 1
        heapq.heappush(heap, (-ub, counter, s1, s2, k, cap, tried))

    for k in range(P.n):
        if not P.constant[k]:
            push(Fraction(k), Fraction(k + 1), k, Fraction(2), 0)
    while heap:
        neg_ub, _, s1, s2, k, cap, tried = heapq.heappop(heap)
        if -neg_ub <= best + eps:
            break
        if tried == 0:
            tried = 1
            if Q.n:
                j1, u1 = _stage_coords(Q, seen[s1][2])
                j2, u2 = _stage_coords(Q, seen[s2][2])
                if j1 != j2 and u2 == 0 and j2 == j1 + 1:
                    j2, u2 = j1, Fraction(1)
                elif j1 != j2 and u1 == 0 and j1 == j2 + 1:
                    j1, u1 = j2, Fraction(1)
                if j1 == j2:
                    cap = min(cap, _box_bound(P, k, s1 - k, s2 - k, Q, j1, u1, u2))
        elif tried == 1:
            tried = 2
            cap = min(cap, _inf_sup(P.gens(s2), P.gens(s1), Q, delta, h)[1])
        else:
            if s2 - s1 <= 2 * h:
                continue
            hi1, hi2 = seen[s1][1], seen[s2][1]
            s = _snap((s1 + s2) / 2 + (hi2 - hi1) / (2 * P.lip[k]), s1, s2, h)
            best = max(best, g(s)[0])
            push(s1, s, k, cap, 0)
            push(s, s2, k, cap, 0)
            continue
        if cap > best + eps:
            push(s1, s2, k, cap, tried)
    return best


def pumpkin_dist(P: Pumpkin, Q: Pumpkin, eps) -> Fraction:
    """Hausdorff distance between two pumpkins, to within ``eps``.

    Both pumpkins are chains in the space of symmetric convex bodies with
    the Hausdorff metric; the returned value ``v`` satisfies
    ``v <= true distance <= v + eps`` and is the maximum of exactly
    computed body distances, so it does not depend on evaluation order.
    """
    eps = to_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    for X in (P, Q):
        diag = pumpkin_valid(X)
        if diag.status == "malformed":
            raise MalformedPumpkinError(diag.reason)
    if P == Q:
        return Fraction(0)
    if P.dim == 1:
        # every element is a segment [-a, a] and the radius runs continuously
        # from 0 to the final half-width, so each chain is an interval of radii
        return abs(P.final.generators[0][0] - Q.final.generators[0][0])
    return _chain_dist(P, Q, eps)


def _chain_dist(P: Pumpkin, Q: Pumpkin, eps: Fraction) -> Fraction:
    cp, cq = _Chain(P), _Chain(Q)
    return max(_directed_chain_dist(cp, cq, eps), _directed_chain_dist(cq, cp, eps))


def pumpkin_witness(P: Pumpkin, eps) -> TupleLinf:
    """A sphere tuple whose pumpkin lies within ``eps`` of ``P``.

    The stage directions, taken in order, reproduce every breakpoint of the
    chain and hence the whole chain, so the round trip is exact.
    """
    eps = to_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    diag = pumpkin_valid(P)
    if diag.status != "valid":
        raise MalformedPumpkinError(f"pumpkin is {diag.status}: {diag.reason}")
    return TupleLinf.from_columns([st.direction for st in P.stages])


def pumpkin_from_columns(columns: Iterable[Sequence]) -> Pumpkin:
    """Convenience: ``pp_colour`` of the tuple with the given columns."""
    return pp_colour(TupleLinf.from_columns([as_point(c) for c in columns]))
