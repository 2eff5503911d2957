"""Finite compacta ordered by 1-Lipschitz surjections.

``K <= L`` when some 1-Lipschitz map from ``L`` onto ``K`` exists.  All
searches enumerate candidate maps as tables in lexicographic order and
return the first hit, so results never depend on search internals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence


class MetricAxiomError(ValueError):
    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = witness


class NotLipschitzError(ValueError):
    def __init__(self, a: int, b: int):
        super().__init__(f"colouring stretches the pair ({a}, {b})")
        self.pair = (a, b)


@dataclass(frozen=True)
class FiniteMetricSpace:
    """A finite metric space with labelled points.

    The metric axioms are checked on construction; a violated triangle
    inequality is reported with the offending triple of indices.
    """

    labels: tuple
    dist: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        dist = tuple(tuple(Fraction(v) for v in row) for row in self.dist)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dist", dist)
        n = len(labels)
        if n == 0:
            raise MetricAxiomError("a metric space needs at least one point")
        if len(set(labels)) != n:
            raise MetricAxiomError("labels must be distinct")
        if len(dist) != n or any(len(row) != n for row in dist):
            raise MetricAxiomError(f"distance matrix must be {n}x{n}")
        for i in range(n):
            if dist[i][i] != 0:
                raise MetricAxiomError(f"d({i},{i}) = {dist[i][i]} is not 0", (i,))
            for j in range(i + 1, n):
                if dist[i][j] != dist[j][i]:
                    raise MetricAxiomError(f"d({i},{j}) != d({j},{i})", (i, j))
                if dist[i][j] <= 0:
                    raise MetricAxiomError(f"distinct points {i}, {j} at distance {dist[i][j]}", (i, j))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if dist[i][k] > dist[i][j] + dist[j][k]:
                        raise MetricAxiomError(
                            f"triangle inequality fails for ({i}, {j}, {k}): "
                            f"d({i},{k}) = {dist[i][k]} > {dist[i][j]} + {dist[j][k]}",
                            (i, j, k),
                        )

    def __len__(self):
        return len(self.labels)

    @property
    def diameter(self) -> Fraction:
        return max(max(row) for row in self.dist)

    @property
    def diam_le_one(self) -> bool:
        return self.diameter <= 1

    def subspace(self, indices: Sequence[int]) -> "FiniteMetricSpace":
        idx = list(indices)
        return FiniteMetricSpace(
            tuple(self.labels[i] for i in idx),
            tuple(tuple(self.dist[i][j] for j in idx) for i in idx),
        )

    @classmethod
    def from_points(cls, labels, points, metric) -> "FiniteMetricSpace":
        pts = list(points)
        return cls(tuple(labels), tuple(tuple(metric(p, q) for q in pts) for p in pts))


@dataclass(frozen=True)
class PointMap:
    domain: FiniteMetricSpace
    codomain: FiniteMetricSpace
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != len(self.domain):
            raise ValueError("map table must cover the whole domain")
        if any(not 0 <= v < len(self.codomain) for v in self.table):
            raise ValueError("map table points outside the codomain")

    @property
    def is_surjective(self) -> bool:
        return len(set(self.table)) == len(self.codomain)

    def compose(self, other: "PointMap") -> "PointMap":
        """``self ∘ other``: first ``other``, then ``self``."""
        return PointMap(other.domain, self.codomain, tuple(self.table[v] for v in other.table))


def is_one_lipschitz(f: PointMap) -> bool:
    dd, dc, t = f.domain.dist, f.codomain.dist, f.table
    n = len(t)
    return all(dc[t[a]][t[b]] <= dd[a][b] for a in range(n) for b in range(a + 1, n))


def _first_lipschitz_map(src: FiniteMetricSpace, dst: FiniteMetricSpace, *,
                         surjective: bool = False, injective: bool = False,
                         isometric: bool = False, candidates=None) -> tuple[int, ...] | None:
    """Lexicographically least table ``src -> dst`` satisfying the constraints.

    ``candidates[a]`` optionally restricts the allowed images of ``a``.
    """
    n, m = len(src), len(dst)
    ds, dt = src.dist, dst.dist
    if surjective and m > n:
        return None
    if injective and n > m:
        return None
    table = [-1] * n
    used = [0] * m
    uncovered = m

    def ok(a: int, v: int) -> bool:
        for b in range(a):
            w = table[b]
            if isometric:
                if dt[v][w] != ds[a][b]:
                    return False
            elif dt[v][w] > ds[a][b]:
                return False
        return True

    def rec(a: int) -> bool:
        nonlocal uncovered
        if a == n:
            return not surjective or uncovered == 0
        if surjective and uncovered > n - a:
            return False
        for v in (candidates[a] if candidates is not None else range(m)):
            if injective and used[v]:
                continue
            if not ok(a, v):
                continue
            table[a] = v
            if used[v] == 0:
                uncovered -= 1
            used[v] += 1
            if rec(a + 1):
                return True
            used[v] -= 1
            if used[v] == 0:
                uncovered += 1
        table[a] = -1
        return False

    return tuple(table) if rec(0) else None


def leq(K: FiniteMetricSpace, L: FiniteMetricSpace) -> PointMap | None:
    """Witness for ``K <= L``: the least 1-Lipschitz surjection ``L -> K``, or None."""
    table = _first_lipschitz_map(L, K, surjective=True)
    return None if table is None else PointMap(L, K, table)


def isometric(K: FiniteMetricSpace, L: FiniteMetricSpace) -> bool:
    if len(K) != len(L):
        return False
    return _first_lipschitz_map(K, L, injective=True, isometric=True) is not None


@dataclass(frozen=True)
class ColouringTable:
    """A 1-Lipschitz map from a finite domain into a finite target space."""

    domain: FiniteMetricSpace
    target: FiniteMetricSpace
    table: tuple[int, ...]
    _map: PointMap = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        f = PointMap(self.domain, self.target, self.table)
        object.__setattr__(self, "_map", f)
        dd, dt, t = self.domain.dist, self.target.dist, self.table
        for a in range(len(t)):
            for b in range(a + 1, len(t)):
                if dt[t[a]][t[b]] > dd[a][b]:
                    raise NotLipschitzError(a, b)

    def image(self) -> list[int]:
        return sorted(set(self.table))


def sup_dist(chi: ColouringTable, psi: ColouringTable) -> Fraction:
    """``max_a d(chi(a), psi(a))`` for colourings into the same target."""
    if chi.domain != psi.domain:
        raise ValueError("colourings are defined on different domains")
    if chi.target != psi.target:
        raise ValueError("colourings must share a target space")
    dt = chi.target.dist
    return max(dt[u][v] for u, v in zip(chi.table, psi.table))


@dataclass(frozen=True)
class Factorization:
    subdomain: int
    image: tuple[int, ...]  # points of chi's target, in increasing order
    f: PointMap  # from chi's image (as a subspace) into psi's target


def factorization_search(chi: ColouringTable, psi: ColouringTable,
                         subdomains: Sequence[Sequence[int]], eps) -> Factorization | None:
    """Find a subdomain ``S`` and a 1-Lipschitz ``f`` with ``psi ≈ f ∘ chi`` on ``S``.

    ``f`` is defined on the image of ``chi`` and has to satisfy
    ``d(psi(a), f(chi(a))) <= eps`` for every ``a`` in ``S``.  Subdomains are
    tried in order and maps in lexicographic order of their tables.
    """
    eps = Fraction(eps) if not isinstance(eps, float) else Fraction(str(eps))
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if chi.domain != psi.domain:
        raise ValueError("colourings are defined on different domains")
    image = chi.image()
    img_space = chi.target.subspace(image)
    L = psi.target
    for idx, S in enumerate(subdomains):
        allowed = []
        for c in image:
            members = [a for a in S if chi.table[a] == c]
            allowed.append([v for v in range(len(L))
                            if all(L.dist[psi.table[a]][v] <= eps for a in members)])
        table = _first_lipschitz_map(img_space, L, candidates=allowed)
        if table is not None:
            return Factorization(idx, tuple(image), PointMap(img_space, L, table))
    return None


def canonical_form(K: FiniteMetricSpace) -> tuple:
    """Isometry invariant: the lexicographically least relabelled distance matrix.

    Brute force over all orderings, so only meant for very small spaces.
    """
    n = len(K)
    best = None
    for perm in permutations(range(n)):
        key = tuple(K.dist[perm[i]][perm[j]] for i in range(n) for j in range(n))
        if best is None or key < best:
            best = key
    return (n, best)
