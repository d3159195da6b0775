from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netupgrade import generate
from netupgrade.instances import (
    ImprovementLevel,
    UpgradableEdge,
    UpgradableGraph,
    expand_to_multigraph,
)
from netupgrade.oracle import (
    OracleBudget,
    OracleSizeError,
    exact_imst,
    exact_two_cost,
    exact_uimst_table,
    exact_wildag,
    exact_wisdag,
    knapsack_exact,
    spanning_trees,
)

items_st = st.lists(st.tuples(st.integers(0, 20), st.integers(0, 12)),
                    min_size=0, max_size=10)


@given(items_st, st.integers(0, 30))
@settings(max_examples=100, deadline=None)
def test_knapsack_matches_subset_enumeration(items, budget):
    profits = [p for p, _ in items]
    costs = [c for _, c in items]
    best = 0
    for r in range(len(items) + 1):
        for sub in combinations(range(len(items)), r):
            if sum(costs[i] for i in sub) <= budget:
                best = max(best, sum(profits[i] for i in sub))
    value, chosen = knapsack_exact(profits, costs, budget)
    assert value == best
    assert sum(costs[i] for i in chosen) <= budget
    assert sum(profits[i] for i in chosen) == value


def test_knapsack_size_guard():
    with pytest.raises(OracleSizeError):
        knapsack_exact([1] * 10, [10 ** 7] * 10, 10 ** 8,
                       OracleBudget(max_knapsack_cells=1000))


def test_spanning_tree_count_on_k4():
    pairs = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    # Cayley's formula: 4^(4-2) labeled trees
    assert sum(1 for _ in spanning_trees(4, pairs)) == 16


def lvl(length, cost):
    return ImprovementLevel(length, cost)


def test_exact_imst_hand_triangle():
    g = UpgradableGraph(3, (
        UpgradableEdge(0, 0, 1, (lvl(1, 0), lvl(4, 2))),
        UpgradableEdge(1, 1, 2, (lvl(2, 0), lvl(3, 1))),
        UpgradableEdge(2, 0, 2, (lvl(5, 0),)),
    ))
    assert exact_imst(g, 0)[0] == 7   # edges 1+2 at base
    assert exact_imst(g, 1)[0] == 8   # improve edge 1
    assert exact_imst(g, 3)[0] == 9   # tree {0,2} with edge 0 improved


def test_exact_uimst_table_hand_triangle():
    g = UpgradableGraph(3, (
        UpgradableEdge(0, 0, 1, (lvl(1, 0), lvl(4, 1))),
        UpgradableEdge(1, 1, 2, (lvl(2, 0), lvl(3, 1))),
        UpgradableEdge(2, 0, 2, (lvl(5, 0), lvl(5, 1))),
    ))
    assert exact_uimst_table(g) == [7, 9, 9]


def test_exact_two_cost_prefers_lexicographic_ties():
    g = UpgradableGraph(3, (
        UpgradableEdge(0, 0, 1, (lvl(2, 0),)),
        UpgradableEdge(1, 1, 2, (lvl(2, 0),)),
        UpgradableEdge(2, 0, 2, (lvl(2, 0),)),
    ))
    length, cost, ids = exact_two_cost(expand_to_multigraph(g), 0)
    assert (length, cost) == (4, 0)
    assert ids == (0, 1)


def test_oracle_size_guards_trip():
    big = generate.gen_random_graph(9, 14, seed=0)
    with pytest.raises(OracleSizeError):
        exact_imst(big, 3)
    big_dag = generate.gen_random_dag(13, 20, seed=0)
    with pytest.raises(OracleSizeError):
        exact_wildag(big_dag, 3)


def _wildag_double_enumeration(dag, budget, minimize=False):
    """Independent route: enumerate paths and improvement subsets outright."""
    out = {}
    for e in dag.edges:
        out.setdefault(e.tail, []).append(e)

    def paths(v):
        if v == dag.sink:
            yield []
            return
        for e in out.get(v, ()):
            for rest in paths(e.head):
                yield [e] + rest

    best = None
    for path in paths(dag.source):
        for r in range(len(path) + 1):
            for sub in combinations(range(len(path)), r):
                spend = sum(path[i].cost for i in sub)
                if spend > budget:
                    continue
                val = sum(e.improved if i in sub else e.base
                          for i, e in enumerate(path))
                if best is None or (val < best if minimize else val > best):
                    best = val
    return best


@given(st.integers(0, 5000), st.integers(3, 7), st.integers(0, 12))
@settings(max_examples=60, deadline=None)
def test_exact_wildag_matches_double_enumeration(seed, n, budget):
    m = min(n * (n - 1) // 2, n + 2)
    dag = generate.gen_random_dag(n, m, max_len=8, max_cost=5, seed=seed)
    assert exact_wildag(dag, budget)[0] == _wildag_double_enumeration(dag, budget)


@given(st.integers(0, 5000), st.integers(3, 7), st.integers(0, 12))
@settings(max_examples=40, deadline=None)
def test_exact_wisdag_matches_double_enumeration(seed, n, budget):
    m = min(n * (n - 1) // 2, n + 2)
    up = generate.gen_random_dag(n, m, max_len=8, max_cost=5, seed=seed)
    # reverse improvement direction: improved length becomes the smaller one
    from netupgrade.instances import DagEdge, DagInstance
    down = DagInstance(up.n, tuple(
        DagEdge(e.id, e.tail, e.head, e.improved, e.base, e.cost)
        for e in up.edges), up.source, up.sink)
    val, sol = exact_wisdag(down, budget)
    assert val == _wildag_double_enumeration(down, budget, minimize=True)
    assert sol.total_spend <= budget


def test_exact_wildag_solution_consistency():
    dag = generate.gen_random_dag(7, 12, seed=11)
    # frozen from an independent enumeration run
    assert exact_wildag(dag, 0)[0] == 31
    assert exact_wildag(dag, 7)[0] == 32
    val, sol = exact_wildag(dag, 7)
    assert sol.total_length == val and sol.total_spend <= 7
