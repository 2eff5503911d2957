import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metric_ramsey.convex_geometry import hausdorff, origin, sc_hull
from metric_ramsey.pumpkin import (
    MalformedPumpkinError,
    Pumpkin,
    SphereConditionError,
    Stage,
    TupleLinf,
    canonical_pum1,
    pp_colour,
    pumpkin_dist,
    pumpkin_from_columns,
    pumpkin_valid,
    pumpkin_witness,
    tuple_distance,
)

from gen import rand_tuple

EPS = F(1, 1000)
DIAG_VS_CROSS = F(1, 2)  # pinned from the grid oracle below


def chain_elements(P: Pumpkin, step: F):
    """All chain elements on a uniform parameter grid (the brute-force oracle)."""
    out = [origin(P.dim)]
    for st_ in P.stages:
        t = step
        while t <= 1:
            out.append(sc_hull(list(st_.base.generators) + [tuple(t * c for c in st_.direction)]))
            t += step
    out.append(P.final)
    return out


def grid_oracle(P: Pumpkin, Q: Pumpkin, step: F) -> F:
    A, B = chain_elements(P, step), chain_elements(Q, step)
    table = [[hausdorff(a, b) for b in B] for a in A]
    ab = max(min(row) for row in table)
    ba = max(min(table[i][j] for i in range(len(A))) for j in range(len(B)))
    return max(ab, ba)


# -- pp_colour -------------------------------------------------------------------


def test_pp_colour_d1_example():
    P = pp_colour(TupleLinf(((1, 0, 0),)))
    seg = sc_hull([(1,)])
    assert [(s.base, s.direction) for s in P.stages] == [
        (origin(1), (F(1),)), (seg, (F(0),)), (seg, (F(0),))]
    assert P.final == seg
    assert pumpkin_valid(P).ok


def test_pp_colour_cross():
    P = pumpkin_from_columns([(1, 0), (0, 1)])
    assert P.stages[1].base == sc_hull([(1, 0)])
    assert P.final == sc_hull([(1, 0), (0, 1)])
    assert pumpkin_valid(P).status == "valid"


def test_pp_colour_diagonal():
    P = pumpkin_from_columns([(1, 1)])
    assert P.final == sc_hull([(1, 1)])
    assert pumpkin_valid(P).ok


def test_sphere_condition_error_names_row():
    x = TupleLinf(((1, 0), (F(1, 2), 0)))
    with pytest.raises(SphereConditionError) as exc:
        pp_colour(x)
    assert exc.value.row == 1
    assert "row 1" in str(exc.value)


def test_tuple_validation():
    with pytest.raises(ValueError):
        TupleLinf(((1, 0), (1,)))
    with pytest.raises(ValueError):
        TupleLinf(((2, 0),))


def test_tuple_distance_pads_with_zeros():
    x, y = TupleLinf(((1, F(1, 2)),)), TupleLinf(((1, 0, F(-1, 4)),))
    assert tuple_distance(x, y) == F(1, 2)


# -- validity ---------------------------------------------------------------------


def test_partial_pumpkin():
    P = pp_colour(TupleLinf(((1, 0), (F(1, 2), 0))), require_sphere=False)
    diag = pumpkin_valid(P)
    assert diag.status == "partial"
    assert "coordinate 2" in diag.reason


def test_malformed_pumpkins():
    seg = sc_hull([(1, 0)])
    other = sc_hull([(0, 1)])
    # base of stage 1 not inside base of stage 2
    P = Pumpkin(2, (Stage(origin(2), (F(1), F(0))), Stage(seg, (F(0), F(1))), Stage(other, (F(1), F(0)))),
                sc_hull([(1, 0), (0, 1)]))
    assert pumpkin_valid(P).status == "malformed"
    # first base is not the origin
    Q = Pumpkin(2, (Stage(seg, (F(0), F(1))),), sc_hull([(1, 0), (0, 1)]))
    assert pumpkin_valid(Q).status == "malformed"
    # final body strictly larger than the last stage reaches
    R = Pumpkin(2, (Stage(origin(2), (F(1), F(0))),), sc_hull([(1, 0), (0, 1)]))
    assert "gap" in pumpkin_valid(R).reason
    with pytest.raises(MalformedPumpkinError):
        pumpkin_dist(R, R, EPS)


def test_canonical_pum1():
    P = canonical_pum1()
    assert pumpkin_valid(P).ok
    assert P == pp_colour(TupleLinf(((1,),)))
    assert pumpkin_dist(P, pp_colour(TupleLinf(((F(-1, 3), 1, F(1, 2)),))), EPS) <= EPS


# -- distance ---------------------------------------------------------------------


def test_distance_to_self_is_zero():
    P = pumpkin_from_columns([(1, F(1, 3)), (F(-1, 2), 1)])
    assert pumpkin_dist(P, P, EPS) == 0


def test_diagonal_vs_cross_is_pinned():
    diag = pumpkin_from_columns([(1, 1)])
    cross = pumpkin_from_columns([(1, 0), (0, 1)])
    value = pumpkin_dist(diag, cross, EPS)
    assert value == DIAG_VS_CROSS
    step = F(1, 16)
    assert abs(grid_oracle(diag, cross, step) - DIAG_VS_CROSS) <= EPS + step


def test_distance_argument_errors():
    P = canonical_pum1()
    with pytest.raises(ValueError):
        pumpkin_dist(P, P, 0)
    with pytest.raises(ValueError):
        pumpkin_dist(P, pumpkin_from_columns([(1, 1)]), EPS)


def test_d1_pumpkins_collapse():
    rng = random.Random(1)
    Ps = [pp_colour(rand_tuple(rng, 1, rng.randint(1, 6))) for _ in range(8)]
    for i in range(len(Ps)):
        for j in range(i + 1, len(Ps)):
            assert pumpkin_dist(Ps[i], Ps[j], EPS) <= EPS


def test_distance_agrees_with_grid_oracle():
    rng = random.Random(3)
    step = F(1, 24)
    eps = F(1, 100)
    for _ in range(6):
        d = rng.randint(1, 2)
        P = pp_colour(rand_tuple(rng, d, rng.randint(1, 3), q=4))
        Q = pp_colour(rand_tuple(rng, d, rng.randint(1, 3), q=4))
        v = pumpkin_dist(P, Q, eps)
        assert abs(v - grid_oracle(P, Q, step)) <= eps + step


def test_distance_is_bracketed_from_below_by_oracle_points():
    # the grid oracle never exceeds the true value by more than its own step,
    # and the returned value is within eps of the truth from below
    rng = random.Random(4)
    eps = F(1, 50)
    step = F(1, 12)
    for _ in range(4):
        P = pp_colour(rand_tuple(rng, 2, 2, q=4))
        Q = pp_colour(rand_tuple(rng, 2, 2, q=4))
        assert pumpkin_dist(P, Q, eps) + eps >= grid_oracle(P, Q, step) - step


# -- witness ----------------------------------------------------------------------


def test_witness_examples():
    assert pumpkin_witness(canonical_pum1(), F(1, 100)) == TupleLinf(((1,),))
    cross = pumpkin_from_columns([(1, 0), (0, 1)])
    assert pumpkin_witness(cross, F(1, 100)).columns() == [(1, 0), (0, 1)]


def test_witness_rejects_partial():
    P = pp_colour(TupleLinf(((F(1, 2),),)), require_sphere=False)
    with pytest.raises(MalformedPumpkinError):
        pumpkin_witness(P, F(1, 100))


# -- properties -------------------------------------------------------------------

entry = st.fractions(min_value=-1, max_value=1, max_denominator=8)


@st.composite
def sphere_tuples(draw, d, n):
    rows = []
    for _ in range(d):
        r = draw(st.lists(entry, min_size=n, max_size=n))
        k = draw(st.integers(0, n - 1))
        r[k] = F(draw(st.sampled_from((-1, 1))))
        rows.append(tuple(r))
    return TupleLinf(tuple(rows))


shapes = st.tuples(st.integers(1, 2), st.integers(1, 4))
pairs = shapes.flatmap(lambda s: st.tuples(sphere_tuples(*s), sphere_tuples(*s)))


@settings(max_examples=25, deadline=None)
@given(pairs)
def test_pp_is_one_lipschitz(pair):
    x, y = pair
    eps = F(1, 100)
    assert pumpkin_dist(pp_colour(x), pp_colour(y), eps) <= tuple_distance(x, y) + 2 * eps


@settings(max_examples=25, deadline=None)
@given(pairs)
def test_pumpkin_dist_is_symmetric(pair):
    x, y = pair
    P, Q = pp_colour(x), pp_colour(y)
    assert pumpkin_dist(P, Q, F(1, 100)) == pumpkin_dist(Q, P, F(1, 100))


@settings(max_examples=25, deadline=None)
@given(shapes.flatmap(lambda s: sphere_tuples(*s)), st.data())
def test_padding_inside_final_body(x, data):
    eps = F(1, 100)
    P = pp_colour(x)
    cols = x.columns()
    weights = data.draw(st.lists(st.fractions(min_value=-1, max_value=1, max_denominator=4),
                                 min_size=len(cols), max_size=len(cols)))
    total = sum(abs(w) for w in weights)
    if total > 1:
        weights = [w / total for w in weights]
    extra = tuple(sum(w * c[i] for w, c in zip(weights, cols)) for i in range(x.d))
    padded = TupleLinf.from_columns(cols + [extra])
    assert pumpkin_dist(pp_colour(padded), P, eps) <= 2 * eps


@settings(max_examples=25, deadline=None)
@given(shapes.flatmap(lambda s: sphere_tuples(*s)))
def test_witness_round_trip(x):
    eps = F(1, 100)
    P = pp_colour(x)
    assert pumpkin_dist(pp_colour(pumpkin_witness(P, eps)), P, eps / 2) <= eps


def test_one_dimensional_shortcut_matches_general_search():
    from metric_ramsey.pumpkin import _chain_dist

    rng = random.Random(8)
    eps = F(1, 100)
    for _ in range(10):
        P = pp_colour(rand_tuple(rng, 1, rng.randint(1, 5)))
        Q = pp_colour(TupleLinf(((F(rng.randint(-8, 8), 8),) * rng.randint(1, 3),)), require_sphere=False)
        fast = pumpkin_dist(P, Q, eps)
        slow = _chain_dist(P, Q, eps)
        assert slow <= fast <= slow + eps
