"""Linear isometric embeddings between finite sup-normed spaces, and the c0
intertwining colouring.

A matrix ``T`` (``n`` rows, ``m`` columns) is an isometric embedding of
``l_inf^m`` into ``l_inf^n`` exactly when every row has l1-norm at most 1
(so ``T`` is a contraction) and every coordinate functional ``±e_j``
appears among the rows (so no vector shrinks).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .pumpkin import TupleLinf, to_fraction

Matrix = tuple[tuple[Fraction, ...], ...]

#: denominator of the free rows drawn by :func:`random_embedding`
FREE_ROW_DENOMINATOR = 8


def _as_matrix(T) -> Matrix:
    rows = T.rows if isinstance(T, IsoEmbedding) else T
    return tuple(tuple(to_fraction(v) for v in row) for row in rows)


def _signed_unit(row: Sequence[Fraction]) -> int | None:
    """Index ``j`` if the row is ``±e_j``."""
    nz = [j for j, v in enumerate(row) if v != 0]
    if len(nz) == 1 and abs(row[nz[0]]) == 1:
        return nz[0]
    return None


def _shape(rows: Matrix) -> tuple[int, int]:
    if not rows:
        raise ValueError("matrix has no rows")
    m = len(rows[0])
    if any(len(r) != m for r in rows):
        raise ValueError("ragged matrix")
    return len(rows), m


def validate_embedding(T) -> bool:
    rows = _as_matrix(T)
    _, m = _shape(rows)
    if any(sum(abs(v) for v in r) > 1 for r in rows):
        return False
    covered = {_signed_unit(r) for r in rows}
    return all(j in covered for j in range(m))


def _apply_vec(rows: Matrix, x: Sequence[Fraction]) -> list[Fraction]:
    return [sum((a * b for a, b in zip(r, x)), Fraction(0)) for r in rows]


def isometry_defect_witness(T) -> tuple[Fraction, ...] | None:
    """A vector ``x`` with ``||Tx|| != ||x||``, or None when ``T`` is isometric.

    Candidates are the vectors with entries in ``{-1, 0, 1}``, scanned in
    lexicographic order.  These always suffice: a row of l1-norm above 1 is
    exceeded by its sign pattern, and a missing functional ``e_j`` is
    exposed by ``e_j`` itself once all rows are contractive.  Plain sign
    vectors are not enough, e.g. ``[[1/2, 1/2], [1/2, -1/2]]`` preserves
    the norm of all four of them.
    """
    rows = _as_matrix(T)
    _, m = _shape(rows)
    for x in product((-1, 0, 1), repeat=m):
        if not any(x):
            continue
        v = tuple(Fraction(c) for c in x)
        if max(abs(c) for c in _apply_vec(rows, v)) != 1:
            return v
    return None


@dataclass(frozen=True)
class IsoEmbedding:
    m: int
    n: int
    rows: Matrix

    def __post_init__(self):
        rows = _as_matrix(self.rows)
        object.__setattr__(self, "rows", rows)
        n, m = _shape(rows)
        if (n, m) != (self.n, self.m):
            raise ValueError(f"declared shape {self.n}x{self.m} but rows are {n}x{m}")
        if n < m:
            raise ValueError("an embedding needs n >= m")
        if not validate_embedding(rows):
            raise ValueError("matrix is not a linear isometric embedding")

    @classmethod
    def from_rows(cls, rows) -> "IsoEmbedding":
        rows = _as_matrix(rows)
        n, m = _shape(rows)
        return cls(m, n, rows)


def _random_l1_row(rng: random.Random, support: int, width: int) -> tuple[Fraction, ...]:
    q = FREE_ROW_DENOMINATOR
    budget = rng.randint(0, q)
    weights = [0] * support
    for _ in range(budget):
        weights[rng.randrange(support)] += 1
    vals = [Fraction(w * rng.choice((-1, 1)), q) for w in weights]
    return tuple(vals) + (Fraction(0),) * (width - support)


def random_embedding(m: int, n: int, seed: int, spread: bool = False) -> IsoEmbedding:
    """Seeded random embedding ``l_inf^m -> l_inf^n`` (Mersenne Twister).

    By default the ``m`` signed coordinate rows land at random positions
    with random signs and the other rows are random points of the l1-ball
    with denominator :data:`FREE_ROW_DENOMINATOR`.  With ``spread=True`` the
    rows are ``+e_0, ..., +e_{m-1}`` in order, each followed by a random
    number of free rows supported on the coordinates seen so far.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if n < m:
        raise ValueError(f"cannot embed dimension {m} into {n}")
    rng = random.Random(seed)
    one, zero = Fraction(1), Fraction(0)
    rows: list[tuple[Fraction, ...]]
    if spread:
        slots = sorted(rng.randrange(m) for _ in range(n - m))
        rows = []
        for j in range(m):
            rows.append(tuple(one if i == j else zero for i in range(m)))
            for _ in range(slots.count(j)):
                rows.append(_random_l1_row(rng, j + 1, m))
    else:
        positions = rng.sample(range(n), m)
        signs = [rng.choice((-1, 1)) for _ in range(m)]
        rows = [None] * n  # type: ignore[list-item]
        for j, (pos, sg) in enumerate(zip(positions, signs)):
            rows[pos] = tuple(Fraction(sg) if i == j else zero for i in range(m))
        for k in range(n):
            if rows[k] is None:
                rows[k] = _random_l1_row(rng, m, m)
    return IsoEmbedding(m, n, tuple(rows))


def apply(T: IsoEmbedding, x: TupleLinf) -> TupleLinf:
    """Transport a tuple: output column ``k`` is ``sum_j T[k][j] x(j)``."""
    if x.n != T.m:
        raise ValueError(f"shape mismatch: embedding consumes {T.m} columns, tuple has {x.n}")
    return TupleLinf(tuple(tuple(_apply_vec(T.rows, r)) for r in x.entries))


@dataclass(frozen=True)
class SupportedVector:
    """Finitely supported vector of c0 given by its nonzero entries."""

    entries: tuple[tuple[int, Fraction], ...]
    sphere: bool = False

    def __post_init__(self):
        entries = tuple((int(i), to_fraction(v)) for i, v in self.entries)
        object.__setattr__(self, "entries", entries)
        idx = [i for i, _ in entries]
        if any(i < 0 for i in idx):
            raise ValueError("indices must be natural numbers")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError("indices must be strictly increasing")
        if any(v == 0 for _, v in entries):
            raise ValueError("stored values must be nonzero")
        if self.sphere and self.norm != 1:
            raise ValueError(f"sphere vector has norm {self.norm}")

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.entries)

    @property
    def norm(self) -> Fraction:
        return max((abs(v) for _, v in self.entries), default=Fraction(0))

    def scaled(self, c) -> "SupportedVector":
        return SupportedVector(tuple((i, v * c) for i, v in self.entries))


def intertwine_count(x: SupportedVector, y: SupportedVector) -> int:
    """Number of ownership changes along the merged supports of ``x`` and ``y``."""
    sx, sy = x.support, y.support
    if not sx or not sy:
        raise ValueError("both vectors need a nonempty support")
    if set(sx) & set(sy):
        raise ValueError("supports overlap")
    owners = [o for _, o in sorted([(i, 0) for i in sx] + [(i, 1) for i in sy])]
    return sum(1 for a, b in zip(owners, owners[1:]) if a != b)


def _check_blocks(blocks: Sequence[SupportedVector]) -> None:
    last = -1
    for b, v in enumerate(blocks):
        if not v.support:
            raise ValueError(f"block {b} is empty")
        if v.norm != 1:
            raise ValueError(f"block {b} has norm {v.norm}, expected 1")
        if v.support[0] <= last:
            raise ValueError(f"block {b} is not supported after block {b - 1}")
        last = v.support[-1]


def unbounded_colour_witness(blocks: Sequence[SupportedVector], N: int
                             ) -> list[tuple[SupportedVector, SupportedVector]]:
    """Pairs ``(x_k, y_k)`` in the block span with ``k`` intertwinings, ``k = 1..N``.

    ``x_k`` collects blocks ``0, 2, 4, ...`` and ``y_k`` blocks ``1, 3, ...``
    among the first ``k + 1`` blocks, all with coefficient ``+1``.  Both are
    norm-one because the blocks are disjoint.
    """
    _check_blocks(blocks)
    if N < 0:
        raise ValueError("N must be nonnegative")
    budget = (len(blocks) - 1) // 2
    if N > budget:
        raise ValueError(f"{len(blocks)} blocks allow at most N = {budget}, got {N}")
    out = []
    for k in range(1, N + 1):
        used = blocks[: k + 1]
        x = SupportedVector(tuple(e for b in used[0::2] for e in b.entries), sphere=True)
        y = SupportedVector(tuple(e for b in used[1::2] for e in b.entries), sphere=True)
        out.append((x, y))
    return out


def random_blocks(count: int, seed: int, max_len: int = 3, denominator: int = 4) -> list[SupportedVector]:
    """Consecutive norm-one blocks with random supports and values."""
    rng = random.Random(seed)
    blocks = []
    pos = rng.randrange(3)
    for _ in range(count):
        length = rng.randint(1, max_len)
        idx = sorted(rng.sample(range(pos, pos + 2 * length), length))
        vals = [Fraction(rng.randint(1, denominator) * rng.choice((-1, 1)), denominator)
                for _ in idx]
        peak = rng.randrange(length)
        vals[peak] = Fraction(rng.choice((-1, 1)))
        blocks.append(SupportedVector(tuple(zip(idx, vals)), sphere=True))
        pos = idx[-1] + 1 + rng.randrange(3)
    return blocks
