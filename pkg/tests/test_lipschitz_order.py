import random
from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metric_ramsey.lipschitz_order import (
    ColouringTable,
    FiniteMetricSpace,
    MetricAxiomError,
    NotLipschitzError,
    PointMap,
    canonical_form,
    factorization_search,
    is_one_lipschitz,
    isometric,
    leq,
    sup_dist,
)


def space(*rows, labels=None):
    n = len(rows)
    return FiniteMetricSpace(tuple(labels or range(n)), tuple(tuple(F(v) for v in r) for r in rows))


def two_point(d):
    return space((0, d), (d, 0))


def random_space(rng, n, values=(F(1, 4), F(1, 2), F(3, 4), F(1))):
    """Random metric: draw distances until the triangle inequality holds."""
    while True:
        D = [[F(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                D[i][j] = D[j][i] = rng.choice(values)
        try:
            return FiniteMetricSpace(tuple(range(n)), tuple(map(tuple, D)))
        except MetricAxiomError:
            continue


def brute_leq(K, L):
    for table in product(range(len(K)), repeat=len(L)):
        f = PointMap(L, K, table)
        if f.is_surjective and is_one_lipschitz(f):
            return table
    return None


def brute_factorization(chi, psi, subdomains, eps):
    image = chi.image()
    L = psi.target
    for idx, S in enumerate(subdomains):
        for table in product(range(len(L)), repeat=len(image)):
            f = dict(zip(image, table))
            if any(L.dist[f[a]][f[b]] > chi.target.dist[a][b] for a in image for b in image):
                continue
            if all(L.dist[psi.table[x]][f[chi.table[x]]] <= eps for x in S):
                return idx, table
    return None


# -- metric spaces -----------------------------------------------------------------


def test_triangle_violation_names_triple():
    with pytest.raises(MetricAxiomError) as exc:
        space((0, F(1, 4), 1), (F(1, 4), 0, F(1, 4)), (1, F(1, 4), 0))
    assert exc.value.witness == (0, 1, 2)
    assert "(0, 1, 2)" in str(exc.value)


@pytest.mark.parametrize("rows", [
    ((0, 1), (F(1, 2), 0)),          # asymmetric
    ((1, 1), (1, 0)),                # nonzero diagonal
    ((0, 0), (0, 0)),                # distinct points at distance 0
    ((0, 1),),                       # wrong shape
])
def test_metric_axiom_errors(rows):
    with pytest.raises(MetricAxiomError):
        FiniteMetricSpace(tuple(range(len(rows))), rows)


def test_singleton_and_diameter_flag():
    K = space((0,))
    assert len(K) == 1 and K.diam_le_one
    assert not two_point(2).diam_le_one


# -- 1-Lipschitz maps --------------------------------------------------------------


def test_is_one_lipschitz_examples():
    K = space((0, F(1, 2), 1), (F(1, 2), 0, F(1, 2)), (1, F(1, 2), 0))
    assert is_one_lipschitz(PointMap(K, K, (0, 1, 2)))
    assert is_one_lipschitz(PointMap(K, K, (1, 1, 1)))
    assert not is_one_lipschitz(PointMap(two_point(F(1, 2)), two_point(1), (0, 1)))


def test_leq_examples():
    L = space((0, F(1, 2), 1), (F(1, 2), 0, F(1, 2)), (1, F(1, 2), 0))
    w = leq(space((0,)), L)
    assert w is not None and w.table == (0, 0, 0)
    assert leq(L, L).table == (0, 1, 2)
    assert leq(two_point(1), two_point(F(1, 2))) is None
    assert brute_leq(two_point(1), two_point(F(1, 2))) is None


def test_isometric_examples():
    K = space((0, F(1, 4), F(1, 2)), (F(1, 4), 0, F(1, 2)), (F(1, 2), F(1, 2), 0))
    relabelled = space((0, F(1, 2), F(1, 2)), (F(1, 2), 0, F(1, 4)), (F(1, 2), F(1, 4), 0), labels="abc")
    assert isometric(K, relabelled)
    assert not isometric(K, two_point(1))
    assert not isometric(two_point(F(1, 2)), two_point(1))


def test_leq_matches_brute_force():
    rng = random.Random(21)
    for _ in range(150):
        K, L = random_space(rng, rng.randint(1, 3)), random_space(rng, rng.randint(1, 5))
        w = leq(K, L)
        assert (None if w is None else w.table) == brute_leq(K, L)


def test_leq_reflexive_and_transitive():
    rng = random.Random(22)
    for _ in range(100):
        A, B, C = (random_space(rng, rng.randint(1, 4)) for _ in range(3))
        assert leq(A, A) is not None
        ab, bc = leq(A, B), leq(B, C)
        if ab is not None and bc is not None:
            composed = ab.compose(bc)  # C -> B -> A
            assert composed.is_surjective and is_one_lipschitz(composed)
            assert leq(A, C) is not None


def test_antisymmetry_on_small_random_spaces():
    rng = random.Random(23)
    for _ in range(200):
        n = rng.randint(1, 4)
        K, L = random_space(rng, n), random_space(rng, n)
        both = leq(K, L) is not None and leq(L, K) is not None
        assert both == isometric(K, L)
        assert isometric(K, L) == (canonical_form(K) == canonical_form(L))


# -- colourings ------------------------------------------------------------------------


def line(n, step=F(1, 4)):
    return space(*[[abs(i - j) * step for j in range(n)] for i in range(n)])


def test_colouring_table_checks_lipschitz():
    with pytest.raises(NotLipschitzError) as exc:
        ColouringTable(line(3), line(3, F(1, 2)), (0, 1, 2))
    assert exc.value.pair == (0, 1)
    ColouringTable(line(3), line(3), (0, 1, 1))


def test_sup_dist_examples():
    X, T = line(4), line(4)
    chi = ColouringTable(X, T, (0, 1, 2, 3))
    assert sup_dist(chi, chi) == 0
    psi = ColouringTable(X, T, (0, 1, 2, 2))
    assert sup_dist(chi, psi) == F(1, 4)
    with pytest.raises(ValueError):
        sup_dist(chi, ColouringTable(line(3), T, (0, 1, 2)))


def test_sup_dist_matches_scan():
    rng = random.Random(24)
    X, T = line(6, F(1)), line(4, F(1, 4))
    for _ in range(50):
        a = tuple(rng.randrange(4) for _ in range(6))
        b = tuple(rng.randrange(4) for _ in range(6))
        chi, psi = ColouringTable(X, T, a), ColouringTable(X, T, b)
        assert sup_dist(chi, psi) == max(T.dist[u][v] for u, v in zip(a, b))


def test_factorization_through_a_given_map():
    X, K, L = line(5), line(3), line(2)
    chi = ColouringTable(X, K, (0, 0, 1, 2, 2))
    g = (0, 0, 1)  # 1-Lipschitz K -> L
    psi = ColouringTable(X, L, tuple(g[c] for c in chi.table))
    res = factorization_search(chi, psi, [list(range(5))], 0)
    assert res is not None and res.subdomain == 0
    assert res.f.table <= g


def test_factorization_fails_for_constant_chi():
    X = line(4, F(1, 2))
    K = space((0,))
    L = line(3, F(1, 2))
    chi = ColouringTable(X, K, (0, 0, 0, 0))
    psi = ColouringTable(X, L, (0, 1, 2, 1))
    eps = F(1, 4)  # image diameter 1 > 2 eps on both subdomains
    assert factorization_search(chi, psi, [[0, 1, 2], [1, 2, 3]], eps) is None
    # a subdomain where psi is eps-constant does work
    assert factorization_search(chi, psi, [[0, 1, 2], [1, 3]], eps).subdomain == 1


def test_factorization_matches_exhaustive_oracle():
    rng = random.Random(25)
    for _ in range(120):
        X = random_space(rng, rng.randint(1, 5))
        K = random_space(rng, rng.randint(1, 4))
        L = random_space(rng, rng.randint(1, 4))
        chi_t = _random_lipschitz_table(rng, X, K)
        psi_t = _random_lipschitz_table(rng, X, L)
        if chi_t is None or psi_t is None:
            continue
        chi, psi = ColouringTable(X, K, chi_t), ColouringTable(X, L, psi_t)
        subs = [sorted(rng.sample(range(len(X)), rng.randint(1, len(X)))) for _ in range(3)]
        eps = rng.choice((F(0), F(1, 4), F(1, 2)))
        res = factorization_search(chi, psi, subs, eps)
        expected = brute_factorization(chi, psi, subs, eps)
        assert (None if res is None else (res.subdomain, res.f.table)) == expected


def _random_lipschitz_table(rng, X, K):
    for _ in range(30):
        t = tuple(rng.randrange(len(K)) for _ in range(len(X)))
        if is_one_lipschitz(PointMap(X, K, t)):
            return t
    return None


# -- properties ---------------------------------------------------------------------

quarter = st.sampled_from((F(1, 4), F(1, 2), F(3, 4), F(1)))


@st.composite
def metric_spaces(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    D = [[F(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            D[i][j] = D[j][i] = draw(quarter)
    # repair triangle violations by shortest paths; values stay positive
    for k in range(n):
        for i in range(n):
            for j in range(n):
                D[i][j] = min(D[i][j], D[i][k] + D[k][j])
    return FiniteMetricSpace(tuple(range(n)), tuple(map(tuple, D)))


@settings(max_examples=80, deadline=None)
@given(metric_spaces(), st.permutations(range(4)))
def test_relabelling_is_an_isometry(K, perm):
    p = [i for i in perm if i < len(K)]
    relabelled = K.subspace(p)
    assert isometric(K, relabelled)
    assert leq(K, relabelled) is not None and leq(relabelled, K) is not None


@settings(max_examples=80, deadline=None)
@given(metric_spaces(), metric_spaces())
def test_leq_witness_is_a_lipschitz_surjection(K, L):
    w = leq(K, L)
    if w is not None:
        assert w.is_surjective and is_one_lipschitz(w)
    else:
        assert brute_leq(K, L) is None
