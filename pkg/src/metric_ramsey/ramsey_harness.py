"""Brute-force discrete Ramsey combinatorics at desk scale.

Rigid surjections and their action on words, exhaustive checks for
monochromatic combinatorial lines, and big-Ramsey-style colour counts on
finite systems of subcopies.  Every exhaustive routine is protected by a
size guard and raises :class:`GuardExceeded` instead of running forever.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Sequence

DEFAULT_MAX_COLOURINGS = 1 << 27


class GuardExceeded(RuntimeError):
    """The instance is too large for exhaustive search."""


@dataclass(frozen=True)
class RigidSurjection:
    """Surjection ``[m] -> [n]`` whose values first appear in increasing order."""

    m: int
    n: int
    table: tuple[int, ...]

    def __post_init__(self):
        t = tuple(int(v) for v in self.table)
        object.__setattr__(self, "table", t)
        if len(t) != self.m:
            raise ValueError(f"table has length {len(t)}, expected {self.m}")
        nxt = 0
        for v in t:
            if v > nxt or v < 0:
                raise ValueError(f"table {t} is not a rigid surjection")
            if v == nxt:
                nxt += 1
        if nxt != self.n:
            raise ValueError(f"table {t} hits {nxt} values, expected {self.n}")

    def __call__(self, i: int) -> int:
        return self.table[i]

    @classmethod
    def identity(cls, n: int) -> "RigidSurjection":
        return cls(n, n, tuple(range(n)))


def enumerate_rigid_surjections(m: int, n: int) -> list[RigidSurjection]:
    """All rigid surjections ``[m] -> [n]`` in lexicographic order of tables."""
    if n < 1 or n > m:
        raise ValueError(f"need 1 <= n <= m, got m={m}, n={n}")
    out: list[RigidSurjection] = []
    table = [0] * m

    def rec(i: int, used: int):
        if used + (m - i) < n:
            return
        if i == m:
            if used == n:
                out.append(RigidSurjection(m, n, tuple(table)))
            return
        for v in range(min(used + 1, n)):
            table[i] = v
            rec(i + 1, max(used, v + 1))

    rec(1, 1)
    return out


def act(s: RigidSurjection, w: Sequence) -> tuple:
    """Precompose a word with ``s``: letter ``i`` of the result is ``w[s(i)]``."""
    if len(w) != s.n:
        raise ValueError(f"word has length {len(w)}, surjection expects {s.n}")
    return tuple(w[v] for v in s.table)


def compose(s: RigidSurjection, t: RigidSurjection) -> RigidSurjection:
    """The product with ``act(compose(s, t), w) == act(s, act(t, w))``.

    As a map it is ``i -> t(s(i))``.
    """
    if s.n != t.m:
        raise ValueError(f"cannot compose: s hits {s.n} values, t has domain {t.m}")
    return RigidSurjection(s.m, t.n, tuple(t.table[v] for v in s.table))


def stirling2(m: int, n: int) -> int:
    """Stirling number of the second kind by the usual recurrence."""
    row = [1] + [0] * n
    for i in range(1, m + 1):
        new = [0] * (n + 1)
        for j in range(1, min(i, n) + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[n]


def _check_guard(count: int, limit: int) -> None:
    if count > limit:
        raise GuardExceeded(f"instance too large: {count} colourings exceed the guard {limit}")


def combinatorial_lines(a: int, n: int) -> list[tuple[int, ...]]:
    """Lines of ``[a]^n`` as tuples of word indices (words in lexicographic order)."""
    lines = []
    for pattern in product(range(a + 1), repeat=n):  # letter ``a`` marks the variable
        if a not in pattern:
            continue
        line = []
        for c in range(a):
            idx = 0
            for p in pattern:
                idx = idx * a + (c if p == a else p)
            line.append(idx)
        lines.append(tuple(line))
    return lines


def hj_line_check(a: int, k: int, n: int, max_colourings: int = DEFAULT_MAX_COLOURINGS) -> bool:
    """Does every ``k``-colouring of ``[a]^n`` have a monochromatic line?

    Exhaustive: a backtracking search over colourings (first word fixed to
    colour 0, which is harmless since recolouring permutes the answer)
    looks for one without a monochromatic line.
    """
    if a < 2 or k < 1 or n < 1:
        raise ValueError("need a >= 2, k >= 1, n >= 1")
    words = a ** n
    _check_guard(k ** words, max_colourings)
    if k == 1:
        return True
    lines = combinatorial_lines(a, n)
    closing: list[list[tuple[int, ...]]] = [[] for _ in range(words)]
    for line in lines:
        closing[max(line)].append(line)
    colour = [-1] * words

    def rec(i: int, used: int) -> bool:
        if i == words:
            return True
        for c in range(min(used + 1, k)):
            colour[i] = c
            if all(any(colour[w] != c for w in line) for line in closing[i]):
                if rec(i + 1, max(used, c + 1)):
                    return True
        colour[i] = -1
        return False

    return not rec(0, 0)


@dataclass(frozen=True)
class CopySystem:
    """Finite objects with an explicit list of subcopies (index sets)."""

    objects: tuple
    subcopies: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        objects = tuple(self.objects)
        subs = tuple(tuple(int(i) for i in s) for s in self.subcopies)
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "subcopies", subs)
        if not subs:
            raise ValueError("a copy system needs at least one subcopy")
        for s in subs:
            if not s:
                raise ValueError("subcopies must be nonempty")
            if any(not 0 <= i < len(objects) for i in s):
                raise ValueError(f"subcopy {s} refers to a missing object")


@dataclass(frozen=True)
class DiscreteColouring:
    table: tuple[int, ...]
    k: int

    def __post_init__(self):
        t = tuple(int(c) for c in self.table)
        object.__setattr__(self, "table", t)
        if self.k < 1:
            raise ValueError("k must be positive")
        if any(not 0 <= c < self.k for c in t):
            raise ValueError(f"colours must lie in 0..{self.k - 1}")


def _colour_patterns(size: int, k: int):
    """Colourings up to renaming of colours (restricted growth strings)."""
    table = [0] * size

    def rec(i: int, used: int):
        if i == size:
            yield tuple(table)
            return
        for c in range(min(used + 1, k)):
            table[i] = c
            yield from rec(i + 1, max(used, c + 1))

    if size == 0:
        yield ()
        return
    yield from rec(1, 1)


def min_colours_over_subcopies(system: CopySystem, k: int,
                               max_colourings: int = DEFAULT_MAX_COLOURINGS) -> int:
    """Least ``t`` so that every ``k``-colouring takes ``<= t`` colours on some subcopy.

    Colourings are enumerated up to renaming of the colours, which does not
    change how many colours any subcopy sees.
    """
    if k < 1:
        raise ValueError("k must be positive")
    size = len(system.objects)
    _check_guard(k ** size, max_colourings)
    cap = min(k, min(len(s) for s in system.subcopies))
    worst = 1
    for table in _colour_patterns(size, k):
        least = cap
        for s in system.subcopies:
            seen = len({table[i] for i in s})
            if seen < least:
                least = seen
                if least <= worst:
                    break
        if least > worst:
            worst = least
            if worst == cap:
                break
    return worst


def is_persistent_colouring(system: CopySystem, chi: DiscreteColouring) -> bool:
    if len(chi.table) != len(system.objects):
        raise ValueError("colouring does not cover the objects")
    return all(len({chi.table[i] for i in s}) == chi.k for s in system.subcopies)


def complete_graph_system(n: int, clique: int = 3) -> CopySystem:
    """Edges of ``K_n``; subcopies are the edge sets of all ``clique``-subsets."""
    edges = list(combinations(range(n), 2))
    pos = {e: i for i, e in enumerate(edges)}
    subs = tuple(tuple(pos[e] for e in combinations(c, 2)) for c in combinations(range(n), clique))
    return CopySystem(tuple(edges), subs)
