from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from graphdesigns.bounds import (
    bounds_report,
    cheeger_constant_exact,
    cheeger_equality_chain,
    cheeger_lower,
    cheeger_sharpness,
    hoffman_bound,
    hoffman_inequality_chain,
    hoffman_sharpness,
    independence_ratio_exact,
)
from graphdesigns.errors import CapExceeded, PreconditionError
from graphdesigns.families import complete, cycle, derangement_graph, fixture, hypercube, kneser, kneser_star
from graphdesigns.graph import VertexSet, is_independent
from graphdesigns.spectral import decompose
from oracles import alpha_networkx, brute_cheeger, random_regular


def _random(count, seed, sizes=range(6, 13, 2)):
    rng = random.Random(seed)
    return [random_regular(rng.choice(list(sizes)), rng.choice([3, 4]), rng) for _ in range(count)]


@pytest.mark.parametrize(
    "g, alpha, hoffman",
    [
        (complete(5), Fraction(1, 5), 0.2),
        (cycle(6), Fraction(1, 2), 0.5),
        (kneser(5, 2), Fraction(2, 5), 0.4),
        (kneser(6, 2), Fraction(1, 3), 1 / 3),
        (derangement_graph(4), Fraction(1, 4), 0.25),
    ],
)
def test_known_independence_values(g, alpha, hoffman):
    res = independence_ratio_exact(g)
    assert res.ratio == alpha
    assert is_independent(g, res.witness)
    assert hoffman_bound(decompose(g)) == pytest.approx(hoffman, abs=1e-12)


def test_kneser_witness_is_lexicographically_first_star():
    assert list(independence_ratio_exact(kneser(6, 2)).witness) == [0, 1, 3, 6, 10]
    assert list(independence_ratio_exact(kneser(7, 2)).witness) == list(kneser_star(7, 2, 1))


def test_sylvester_independence_ratio():
    g, _ = fixture("sylvester")
    assert independence_ratio_exact(g).ratio == Fraction(alpha_networkx(g), 36)


@pytest.mark.parametrize("g", _random(30, 3, range(6, 17, 2)))
def test_independence_matches_networkx(g):
    res = independence_ratio_exact(g)
    assert res.ratio == Fraction(alpha_networkx(g), g.n)
    assert res.value <= hoffman_bound(decompose(g)) + 1e-9


def test_independence_witness_is_lexicographically_smallest():
    for g in _random(10, 5, range(6, 11, 2)):
        res = independence_ratio_exact(g)
        k = len(res.witness)
        first = next(s for s in itertools.combinations(range(g.n), k) if is_independent(g, VertexSet(s, g.n)))
        assert tuple(res.witness) == first


@pytest.mark.parametrize(
    "g, h",
    [(complete(5), Fraction(5, 4)), (complete(2), Fraction(2)), (cycle(6), Fraction(2, 3)), (hypercube(4), Fraction(1, 2))],
)
def test_known_cheeger_values(g, h):
    assert cheeger_constant_exact(g).exact == h


@pytest.mark.parametrize("g", _random(20, 9) + [cycle(7), kneser(5, 2), hypercube(3)])
def test_cheeger_matches_brute_force(g):
    h, classic, witness = brute_cheeger(g)
    res = cheeger_constant_exact(g)
    assert (res.exact, res.classic_exact) == (h, classic)
    assert tuple(res.witness) == witness
    d = g.degree(0)
    assert res.classic <= d * res.value + 1e-12 <= 2 * res.classic + 2e-12
    assert cheeger_lower(decompose(g)) <= res.value + 1e-9


def test_caps():
    with pytest.raises(CapExceeded):
        independence_ratio_exact(kneser(8, 3), cap=40)
    with pytest.raises(CapExceeded):
        cheeger_constant_exact(hypercube(5))
    with pytest.raises(CapExceeded):
        bounds_report(hypercube(5), exact_alpha=False, exact_cheeger=True)


def test_sharpness_flags():
    assert hoffman_sharpness(kneser(6, 2)).sharp
    assert hoffman_sharpness(kneser(7, 3)).sharp
    assert not hoffman_sharpness(cycle(7)).sharp
    assert cheeger_sharpness(hypercube(4)).sharp
    assert not cheeger_sharpness(cycle(6)).sharp


def test_witness_only_above_cap():
    g = derangement_graph(4)
    s = VertexSet.of(g.n, range(6))  # identity-position class sigma(1)=1 comes first lexicographically
    sh = hoffman_sharpness(g, cap=10, witness=s)
    assert sh.witness_only and sh.sharp
    with pytest.raises(PreconditionError):
        hoffman_sharpness(g, cap=10, witness=VertexSet.of(g.n, [0, 23]))


def test_hoffman_chain_on_independent_sets():
    g = kneser(5, 2)
    for k in range(1, 5):
        for s in itertools.combinations(range(10), k):
            w = VertexSet.of(10, s)
            if not is_independent(g, w):
                continue
            chain = hoffman_inequality_chain(g, w)
            assert chain.max_equality_residual <= 1e-8
            assert chain.slack >= -1e-9
            assert chain.tight == (k == 4)
    with pytest.raises(PreconditionError):
        hoffman_inequality_chain(g, VertexSet.of(10, [0, 5]))


def test_cheeger_chain():
    c6 = cheeger_equality_chain(cycle(6), VertexSet.of(6, [0]))
    assert c6.max_equality_residual <= 1e-8
    assert c6.slack == pytest.approx(7 / 12)
    q4 = cheeger_equality_chain(hypercube(4), VertexSet.of(16, [v for v in range(16) if v & 1]))
    assert q4.tight and len(q4.to_list()) == 6


def test_bounds_report_dict():
    rep = bounds_report(complete(5))
    d = rep.to_dict()
    assert d["hoffman_sharp"] and d["cheeger_sharp"]
    assert d["independence_ratio"] == pytest.approx(0.2) and d["cheeger_constant"] == pytest.approx(1.25)
    light = bounds_report(complete(5), exact_alpha=False, exact_cheeger=False).to_dict()
    assert light["hoffman_sharp"] is None and light["cheeger_constant"] is None
