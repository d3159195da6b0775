"""Randomized bicriteria solver for the improvable maximum spanning tree.

Pipeline per trial: uniformly shift lengths (so the Chernoff preconditions of
the analysis hold), expand improvement ladders into a multigraph, solve the
two-cost relaxation at eps' = eps/2, then independently down-sample each
improved edge to its free level with probability 1 - 1/(1+eps')^2.  The best
budget-feasible tree over all trials is returned; feasibility is guaranteed
unconditionally by trial filtering plus an all-level-0 fallback.

With trials sized from the per-trial failure bound 2/e this satisfies
Pr[length >= (1-eps)*OPT and spend <= B] >= 1-delta.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from ._util import MASK64, splitmix64
from .instances import (
    ImprovementLevel,
    InvalidInstanceError,
    TreeSolution,
    UpgradableEdge,
    UpgradableGraph,
    expand_to_multigraph,
    require_valid,
    solution_from_choices,
)
from .mst_uniform import max_spanning_tree
from .two_cost import two_cost_mst

# per-trial failure constant: the analysis bounds the two failure modes by
# c1 + c2 < 2/e, so best-of-t trials fail with probability at most (2/e)^t
PER_TRIAL_FAILURE = 2.0 / math.e


@dataclass(frozen=True)
class RandomizedConfig:
    epsilon: Fraction
    delta: Fraction
    master_seed: int = 0
    trials: int | None = None  # default: sized from PER_TRIAL_FAILURE

    def __post_init__(self):
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        object.__setattr__(self, "delta", Fraction(self.delta))
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must be in (0, 1)")
        if not 0 < self.delta < 1:
            raise ValueError("delta must be in (0, 1)")
        if self.trials is not None and self.trials < 1:
            raise ValueError("trials must be positive")

    @property
    def epsilon_prime(self) -> Fraction:
        return self.epsilon / 2

    @property
    def scale_threshold(self) -> Fraction:
        """Minimum optimum length the additive shift has to guarantee."""
        ep = self.epsilon_prime
        return 3 * (1 + ep) ** 2 / ep ** 4

    @property
    def keep_probability(self) -> Fraction:
        return 1 / (1 + self.epsilon_prime) ** 2

    @property
    def num_trials(self) -> int:
        if self.trials is not None:
            return self.trials
        need = math.log(1 / float(self.delta)) / math.log(1 / PER_TRIAL_FAILURE)
        return max(1, math.ceil(need))


@dataclass
class TrialSummary:
    index: int
    seed: int
    length: int
    spend: int
    feasible: bool


@dataclass
class ImstResult:
    solution: TreeSolution
    trials: list[TrialSummary] = field(default_factory=list)
    best_trial: int | None = None  # None means the fallback tree was used


def shift_lengths(graph: UpgradableGraph, shift: int, n_scale: int) -> UpgradableGraph:
    """Rescale every level length to length*n_scale + shift.

    With n_scale = n this adds shift/n length units to every edge while
    keeping lengths integral; every spanning tree moves by the same amount,
    so the set of optimal solutions is unchanged.  Objectives are always
    reported in unshifted units.
    """
    if shift < 0 or n_scale < 1:
        raise ValueError("bad shift parameters")
    edges = tuple(
        UpgradableEdge(e.id, e.u, e.v, tuple(
            ImprovementLevel(lvl.length * n_scale + shift, lvl.cost) for lvl in e.ladder))
        for e in graph.edges)
    return UpgradableGraph(graph.n, edges)


def sample_improved_forest(graph: UpgradableGraph, choices: dict[int, int],
                           eps_prime: Fraction, rng: random.Random) -> TreeSolution:
    """Independently revert each improved edge to level 0 with prob 1 - 1/(1+eps')^2.

    The tree topology is unchanged (levels are parallel copies of the same
    edge); totals are computed against `graph`.
    """
    keep = float(1 / (1 + Fraction(eps_prime)) ** 2)
    sampled = {}
    for eid, lvl in sorted(choices.items()):
        if lvl > 0 and not rng.random() < keep:
            lvl = 0
        sampled[eid] = lvl
    return solution_from_choices(graph, sampled)


def minimize_transform(graph: UpgradableGraph, big_m: int | None = None) -> UpgradableGraph:
    """Replace every level length x by M - x.

    Maps min-instances (ladders with nonincreasing lengths, level 0 the worst
    value at cost 0) to max-instances and back; applying the transform twice
    with the same M is the identity.
    """
    lengths_all = [lvl.length for e in graph.edges for lvl in e.ladder]
    if big_m is None:
        big_m = max(lengths_all, default=0)
    if any(x > big_m for x in lengths_all):
        raise ValueError("M is smaller than some level length")
    for e in graph.edges:
        ls = [lvl.length for lvl in e.ladder]
        if not (all(a >= b for a, b in zip(ls, ls[1:]))
                or all(a <= b for a, b in zip(ls, ls[1:]))):
            raise InvalidInstanceError(
                [f"edge {e.id}: level 0 is not the worst objective value"])
    edges = tuple(
        UpgradableEdge(e.id, e.u, e.v, tuple(
            ImprovementLevel(big_m - lvl.length, lvl.cost) for lvl in e.ladder))
        for e in graph.edges)
    return UpgradableGraph(graph.n, edges)


# deterministic and pure, so repeated solves on the same instance reuse the
# relaxation result; keyed by the (hashable) shifted instance
_TWO_COST_CACHE: dict = {}
_TWO_COST_CACHE_MAX = 128


def _cached_two_cost(shifted: UpgradableGraph, budget: int, eps_prime: Fraction):
    key = (shifted, budget, eps_prime)
    hit = _TWO_COST_CACHE.get(key)
    if hit is None:
        mg = expand_to_multigraph(shifted)
        res = two_cost_mst(mg, budget, eps_prime)
        by_id = {c.copy_id: c for c in mg.copies}
        hit = {by_id[i].edge_id: by_id[i].level for i in res.copy_ids}
        if len(_TWO_COST_CACHE) >= _TWO_COST_CACHE_MAX:
            _TWO_COST_CACHE.pop(next(iter(_TWO_COST_CACHE)))
        _TWO_COST_CACHE[key] = hit
    return hit


def imst_solve(graph: UpgradableGraph, budget: int, config: RandomizedConfig,
               minimize: bool = False) -> ImstResult:
    """Best budget-feasible tree over the configured number of trials.

    Always returns a tree with total_spend <= budget; the all-level-0 maximum
    spanning tree is the fallback when every sampled trial lands over budget.
    For ``minimize`` the lengths are reflected (max-base equivalence on the
    graphic matroid), solved as maximization, and reported in original units.
    """
    require_valid(graph)
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    work = minimize_transform(graph) if minimize else graph
    better = (lambda a, b: a < b) if minimize else (lambda a, b: a > b)

    shift = math.ceil(config.scale_threshold)
    shifted = shift_lengths(work, shift, work.n)
    pipeline_choices = _cached_two_cost(shifted, budget, config.epsilon_prime)
    pipeline_sol = solution_from_choices(graph, pipeline_choices)

    base_edges = [(e.id, e.u, e.v, e.ladder[0].length) for e in work.edges]
    fallback = solution_from_choices(
        graph, {eid: 0 for eid in max_spanning_tree(work.n, base_edges)})

    best: TreeSolution | None = None
    best_trial: int | None = None
    trials: list[TrialSummary] = []
    for i in range(config.num_trials):
        seed = splitmix64((config.master_seed ^ i) & MASK64)
        rng = random.Random(seed)
        sampled = sample_improved_forest(graph, pipeline_choices,
                                         config.epsilon_prime, rng)
        feasible = sampled.total_spend <= budget
        trials.append(TrialSummary(i, seed, sampled.total_length,
                                   sampled.total_spend, feasible))
        for cand in (sampled, pipeline_sol):
            if cand.total_spend <= budget and (
                    best is None or better(cand.total_length, best.total_length)):
                best = cand
                best_trial = i
    if best is None:
        best = fallback
        best_trial = None
    return ImstResult(best, trials, best_trial)
