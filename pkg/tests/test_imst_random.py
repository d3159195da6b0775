import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netupgrade import generate
from netupgrade.imst_random import (
    RandomizedConfig,
    imst_solve,
    minimize_transform,
    sample_improved_forest,
    shift_lengths,
)
from netupgrade.instances import (
    ImprovementLevel,
    InvalidInstanceError,
    UpgradableEdge,
    UpgradableGraph,
)
from netupgrade.oracle import exact_imst


def cfg(eps="3/10", delta="1/5", seed=0, trials=None):
    return RandomizedConfig(Fraction(eps), Fraction(delta), seed, trials)


def test_config_derived_quantities():
    c = cfg(eps="1/2")
    ep = Fraction(1, 4)
    assert c.epsilon_prime == ep
    assert c.keep_probability == 1 / (1 + ep) ** 2
    assert c.scale_threshold == 3 * (1 + ep) ** 2 / ep ** 4
    # failure per trial is 2/e, so t = ceil(ln(1/delta) / ln(e/2))
    want = math.ceil(math.log(5) / math.log(math.e / 2))
    assert cfg(delta="1/5").num_trials == want


def test_config_validation():
    with pytest.raises(ValueError):
        cfg(eps="0")
    with pytest.raises(ValueError):
        cfg(delta="1")
    with pytest.raises(ValueError):
        cfg(trials=0)


def test_shift_lengths_moves_every_level():
    g = generate.gen_random_graph(4, 5, seed=1)
    shifted = shift_lengths(g, 7, g.n)
    for e, se in zip(g.edges, shifted.edges):
        for lvl, slvl in zip(e.ladder, se.ladder):
            assert slvl.length == lvl.length * g.n + 7
            assert slvl.cost == lvl.cost
    assert shift_lengths(g, 0, 1) == g


def test_sampling_keeps_tree_topology():
    g = generate.gen_random_graph(6, 9, seed=2)
    choices = {0: 1, 2: 1, 3: 0, 5: 1, 6: 0}
    import random
    sol = sample_improved_forest(g, choices, Fraction(1, 4), random.Random(5))
    assert set(sol.choices) == set(choices)
    for eid, lvl in sol.choices.items():
        assert lvl in (0, choices[eid])


def test_sampling_is_seed_deterministic():
    import random
    g = generate.gen_random_graph(6, 9, seed=2)
    choices = {0: 1, 2: 1, 3: 1, 5: 1, 6: 1}
    a = sample_improved_forest(g, choices, Fraction(1, 4), random.Random(9))
    b = sample_improved_forest(g, choices, Fraction(1, 4), random.Random(9))
    assert a == b


def lvl(length, cost):
    return ImprovementLevel(length, cost)


def test_minimize_transform_is_involution():
    g = UpgradableGraph(3, (
        UpgradableEdge(0, 0, 1, (lvl(9, 0), lvl(4, 2))),
        UpgradableEdge(1, 1, 2, (lvl(6, 0), lvl(1, 1))),
        UpgradableEdge(2, 0, 2, (lvl(3, 0),)),
    ))
    m = max(l.length for e in g.edges for l in e.ladder)
    assert minimize_transform(minimize_transform(g, m), m) == g


def test_minimize_transform_rejects_nonmonotone():
    g = UpgradableGraph(2, (
        UpgradableEdge(0, 0, 1, (lvl(5, 0), lvl(9, 1), lvl(2, 2))),))
    with pytest.raises(InvalidInstanceError):
        minimize_transform(g)


def test_solution_always_budget_feasible():
    g = generate.gen_random_graph(6, 9, seed=3)
    for budget in (0, 2, 5, 11):
        res = imst_solve(g, budget, cfg(seed=4))
        assert res.solution.total_spend <= budget
        assert len(res.solution.choices) == g.n - 1


def test_zero_budget_matches_base_optimum():
    g = generate.gen_random_graph(6, 9, seed=3)
    res = imst_solve(g, 0, cfg())
    assert res.solution.total_length == exact_imst(g, 0)[0]


def test_loose_budget_hits_all_improved_optimum():
    g = generate.gen_random_graph(5, 7, seed=6)
    budget = sum(e.ladder[-1].cost for e in g.edges)
    res = imst_solve(g, budget, cfg())
    assert res.solution.total_length == exact_imst(g, budget)[0]


def test_master_seed_determinism():
    g = generate.gen_random_graph(6, 9, seed=3)
    a = imst_solve(g, 7, cfg(seed=42))
    b = imst_solve(g, 7, cfg(seed=42))
    assert a.solution == b.solution
    assert a.trials == b.trials and a.best_trial == b.best_trial


def test_trial_summaries_recorded():
    g = generate.gen_random_graph(5, 7, seed=8)
    res = imst_solve(g, 4, cfg(trials=5, seed=1))
    assert len(res.trials) == 5
    for t in res.trials:
        assert t.feasible == (t.spend <= 4)


@given(st.integers(0, 5000), st.integers(3, 6), st.integers(0, 15))
@settings(max_examples=40, deadline=None)
def test_minimize_returns_feasible_tree(seed, n, budget):
    m = min(n * (n - 1) // 2, n + 1)
    up = generate.gen_random_graph(n, m, max_len=9, max_cost=4, seed=seed)
    # build a min-instance: reverse each ladder's lengths, keep costs sorted
    down = UpgradableGraph(up.n, tuple(
        UpgradableEdge(e.id, e.u, e.v, tuple(
            ImprovementLevel(lv.length, lc.cost)
            for lv, lc in zip(reversed(e.ladder), e.ladder)))
        for e in up.edges))
    res = imst_solve(down, budget, cfg(seed=seed), minimize=True)
    assert res.solution.total_spend <= budget
    assert len(res.solution.choices) == down.n - 1
