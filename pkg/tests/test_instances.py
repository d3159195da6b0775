import pytest

from netupgrade.instances import (
    DagEdge,
    DagInstance,
    ImprovementLevel,
    InvalidInstanceError,
    UpgradableEdge,
    UpgradableGraph,
    evaluate_path,
    expand_to_multigraph,
    require_valid,
    solution_from_choices,
    validate,
)


def lvl(length, cost):
    return ImprovementLevel(length, cost)


def triangle():
    return UpgradableGraph(3, (
        UpgradableEdge(0, 0, 1, (lvl(1, 0), lvl(4, 2))),
        UpgradableEdge(1, 1, 2, (lvl(2, 0), lvl(3, 1))),
        UpgradableEdge(2, 0, 2, (lvl(5, 0),)),
    ))


def test_triangle_is_valid():
    assert validate(triangle()) == []


def test_level_zero_must_be_free():
    g = UpgradableGraph(2, (UpgradableEdge(0, 0, 1, (lvl(1, 1),)),))
    assert any("level 0 must cost 0" in v for v in validate(g))


def test_disconnected_graph_reported():
    g = UpgradableGraph(3, (UpgradableEdge(0, 0, 1, (lvl(1, 0),)),))
    assert "not connected" in validate(g)


def test_nonmonotone_ladder_reported():
    g = UpgradableGraph(2, (
        UpgradableEdge(0, 0, 1, (lvl(1, 0), lvl(5, 1), lvl(3, 2))),))
    assert any("not monotone" in v for v in validate(g))


def test_duplicate_and_sparse_edge_ids():
    g = UpgradableGraph(3, (
        UpgradableEdge(0, 0, 1, (lvl(1, 0),)),
        UpgradableEdge(0, 1, 2, (lvl(1, 0),)),
    ))
    bad = validate(g)
    assert any("duplicate" in v for v in bad)
    assert any("not dense" in v for v in bad)


def test_require_valid_raises_with_all_violations():
    g = UpgradableGraph(2, (UpgradableEdge(0, 0, 0, (lvl(1, 1),)),))
    with pytest.raises(InvalidInstanceError) as exc:
        require_valid(g)
    assert len(exc.value.violations) >= 2


def test_expand_to_multigraph_orders_copies():
    mg = expand_to_multigraph(triangle())
    assert [c.copy_id for c in mg.copies] == list(range(5))
    assert [(c.edge_id, c.level) for c in mg.copies] == [
        (0, 0), (0, 1), (1, 0), (1, 1), (2, 0)]
    assert mg.copies[1].length == 4 and mg.copies[1].cost == 2


def test_solution_from_choices_totals():
    sol = solution_from_choices(triangle(), {0: 1, 1: 0})
    assert (sol.total_length, sol.total_spend) == (6, 2)
    assert sol.improved_edges() == [0]


def simple_dag():
    return DagInstance(4, (
        DagEdge(0, 0, 1, 2, 5, 3),
        DagEdge(1, 1, 3, 1, 1, 0),
        DagEdge(2, 0, 2, 4, 6, 2),
        DagEdge(3, 2, 3, 0, 2, 1),
    ), 0, 3)


def test_dag_valid_and_topological_order():
    d = simple_dag()
    assert validate(d) == []
    assert d.topological_order() == [0, 1, 2, 3]


def test_dag_cycle_detected():
    d = DagInstance(2, (DagEdge(0, 0, 1, 1, 1, 0), DagEdge(1, 1, 0, 1, 1, 0)), 0, 1)
    assert "not acyclic" in validate(d)


def test_dag_improvement_direction():
    d = DagInstance(2, (DagEdge(0, 0, 1, 5, 2, 1),), 0, 1)
    assert any("below base" in v for v in validate(d))
    assert validate(d, improvement="decrease") == []


def test_dag_unreachable_sink():
    d = DagInstance(3, (DagEdge(0, 1, 2, 1, 1, 0), DagEdge(1, 0, 1, 1, 1, 0)), 2, 0)
    assert "sink not reachable from source" in validate(d)


def test_effective_max_length_respects_budget():
    d = simple_dag()
    assert d.effective_max_length(0) == 4
    assert d.effective_max_length(2) == 6
    assert d.effective_max_length(3) == 6


def test_evaluate_path():
    d = simple_dag()
    assert evaluate_path(d, (0, 1), (True, False)) == (6, 3)
    assert evaluate_path(d, (2, 3), (False, True)) == (6, 1)
