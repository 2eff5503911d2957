"""Seeded oscillation experiment for colourings of sphere tuples.

A colouring is given on a finite net of tuples.  Each sample draws a
spread embedding, transports the whole net through it and colours every
transported tuple by its nearest net tuple.  The quantity of interest is
the diameter of the resulting set of colours; small diameters mean the
colouring is nearly constant on that copy.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linf_embeddings import IsoEmbedding, apply, random_embedding
from .lipschitz_order import ColouringTable, FiniteMetricSpace
from .pumpkin import TupleLinf, tuple_distance

GENERATOR = "random.Random (Mersenne Twister MT19937), one stream seeded by --seed"


@dataclass(frozen=True)
class NetColouring:
    """A 1-Lipschitz colouring of a finite net of equal-arity sphere tuples."""

    net: tuple[TupleLinf, ...]
    colouring: ColouringTable

    @classmethod
    def build(cls, net: Sequence[TupleLinf], target: FiniteMetricSpace,
              table: Sequence[int]) -> "NetColouring":
        net = tuple(net)
        if not net:
            raise ValueError("the net needs at least one tuple")
        d = net[0].d
        for i, x in enumerate(net):
            if x.d != d:
                raise ValueError(f"net tuple {i} has arity {x.d}, expected {d}")
            x.check_sphere()
        domain = FiniteMetricSpace(tuple(range(len(net))),
                                   tuple(tuple(tuple_distance(x, y) for y in net) for x in net))
        return cls(net, ColouringTable(domain, target, tuple(table)))

    @property
    def width(self) -> int:
        return max(x.n for x in self.net)


@dataclass(frozen=True)
class OscillationResult:
    min_diameter: Fraction
    best_sample: int | None  # None when no sample beat the untransported net
    best_embedding: IsoEmbedding | None
    diameters: tuple[Fraction, ...]
    initial_diameter: Fraction


def _pad(x: TupleLinf, n: int) -> TupleLinf:
    return TupleLinf(tuple(r + (Fraction(0),) * (n - len(r)) for r in x.entries))


def _diameter(target: FiniteMetricSpace, colours) -> Fraction:
    cs = sorted(set(colours))
    return max((target.dist[a][b] for a in cs for b in cs), default=Fraction(0))


def nearest(net: Sequence[TupleLinf], y: TupleLinf) -> int:
    """Index of the closest net tuple (lowest index on ties)."""
    best, arg = None, 0
    for i, x in enumerate(net):
        dxy = tuple_distance(x, y)
        if best is None or dxy < best:
            best, arg = dxy, i
    return arg


def run_oscillation(nc: NetColouring, count: int, seed: int) -> OscillationResult:
    if count < 0:
        raise ValueError("count must be nonnegative")
    target = nc.colouring.target
    table = nc.colouring.table
    m = nc.width
    padded = [_pad(x, m) for x in nc.net]
    rng = random.Random(seed)
    initial = _diameter(target, table)
    best, best_i, best_T = initial, None, None
    diams = []
    for i in range(count):
        T = random_embedding(m, 2 * m, rng.getrandbits(64), spread=True)
        colours = [table[nearest(nc.net, apply(T, x))] for x in padded]
        diam = _diameter(target, colours)
        diams.append(diam)
        if diam < best:
            best, best_i, best_T = diam, i, T
    return OscillationResult(best, best_i, best_T, tuple(diams), initial)
