"""(1, 1+eps) approximation for the two-cost spanning tree problem.

Maximize tree length subject to tree cost <= B, returning a tree with
length >= OPT(B) and cost <= (1+eps)*B.  The scheme:

1. Enumerate every forest S of "heavy" copies (individual cost > eps*B)
   with c(S) <= B; contract S and delete the remaining heavy copies.
2. On the residual instance (all copies cheap), binary-search the Lagrangian
   multiplier of the budget constraint over exact rationals.  Either the
   unconstrained optimum is feasible, or two optimal trees bracket the budget
   at the same multiplier.
3. Walk a chain of single edge exchanges between the bracketing trees; every
   intermediate tree is Lagrangian-optimal, so the first tree whose cost
   exceeds the residual budget has length >= OPT while overshooting the
   budget by at most one cheap copy, i.e. at most eps*B.

All multiplier arithmetic is exact (fractions over bounded integers).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._util import UnionFind
from .instances import DisconnectedGraphError, EdgeCopy, MultiGraph


@dataclass(frozen=True)
class LagrangianPoint:
    """A spanning tree maximizing l(T) - lambda*c(T) at a fixed multiplier."""

    multiplier: Fraction
    copy_ids: tuple[int, ...]
    length: int
    cost: int
    lagrangian_value: Fraction


@dataclass(frozen=True)
class LambdaSearchResult:
    exact: LagrangianPoint | None = None
    lam_star: Fraction | None = None
    under: LagrangianPoint | None = None  # cost <= budget
    over: LagrangianPoint | None = None   # cost > budget


@dataclass(frozen=True)
class TwoCostResult:
    copy_ids: tuple[int, ...]
    length: int
    cost: int


def _combined_key(copy: EdgeCopy, lam: Fraction) -> int:
    # q*l - p*c is an exact integer proxy for l - lambda*c with lambda = p/q
    return lam.denominator * copy.length - lam.numerator * copy.cost


def lagrangian_tree(mg: MultiGraph, lam: Fraction, budget: int) -> LagrangianPoint:
    """Maximum spanning tree under the combined weight l - lambda*c.

    Ties break toward lower cost, then lower copy id, so equal-weight
    exact hits prefer cheaper copies.
    """
    if lam < 0:
        raise ValueError("multiplier must be nonnegative")
    lam = Fraction(lam)
    order = sorted(mg.copies, key=lambda c: (-_combined_key(c, lam), c.cost, c.copy_id))
    uf = UnionFind(mg.n)
    chosen = []
    for c in order:
        if uf.union(c.u, c.v):
            chosen.append(c)
            if len(chosen) == mg.n - 1:
                break
    if len(chosen) != mg.n - 1:
        raise DisconnectedGraphError("multigraph is not connected")
    length = sum(c.length for c in chosen)
    cost = sum(c.cost for c in chosen)
    value = Fraction(length) - lam * (cost - budget)
    return LagrangianPoint(lam, tuple(sorted(c.copy_id for c in chosen)), length, cost, value)


def lambda_search(mg: MultiGraph, budget: int) -> LambdaSearchResult:
    """Binary search for the multiplier where optimal tree cost crosses B.

    Precondition: the zero-cost copies alone span the graph, so a
    budget-feasible tree always exists.  Returns either an exact hit (the
    unconstrained optimum fits the budget) or a bracketing pair of trees both
    optimal at the crossing multiplier.
    """
    at_zero = lagrangian_tree(mg, Fraction(0), budget)
    if at_zero.cost <= budget:
        return LambdaSearchResult(exact=at_zero)
    total_len = sum(c.length for c in mg.copies)
    total_cost = sum(c.cost for c in mg.copies)
    lo, p_lo = Fraction(0), at_zero
    hi = Fraction(total_len + 1)
    p_hi = lagrangian_tree(mg, hi, budget)
    if p_hi.cost > budget:
        raise DisconnectedGraphError("no budget-feasible spanning tree")
    # candidate breakpoints are ratios of integer differences with
    # denominators <= total_cost, so they are separated by > 1/total_cost^2
    sep = Fraction(1, 2 * (total_cost + 1) ** 2)
    while hi - lo > sep:
        mid = (lo + hi) / 2
        p_mid = lagrangian_tree(mg, mid, budget)
        if p_mid.cost > budget:
            lo, p_lo = mid, p_mid
        else:
            hi, p_hi = mid, p_mid
    lam_star = Fraction(p_lo.length - p_hi.length, p_lo.cost - p_hi.cost)
    over = lagrangian_tree(mg, lam_star, budget)
    under_val = Fraction(p_hi.length) - lam_star * (p_hi.cost - budget)
    over_val = Fraction(p_lo.length) - lam_star * (p_lo.cost - budget)
    assert under_val == over_val == over.lagrangian_value, \
        "bracketing trees are not both optimal at the crossing multiplier"
    under = LagrangianPoint(lam_star, p_hi.copy_ids, p_hi.length, p_hi.cost, under_val)
    over = LagrangianPoint(lam_star, p_lo.copy_ids, p_lo.length, p_lo.cost, over_val)
    return LambdaSearchResult(lam_star=lam_star, under=under, over=over)


def _tree_path(copies_by_id, tree_ids, a: int, b: int) -> list[int]:
    """Copy ids on the unique a-b path inside the tree."""
    adjacency: dict[int, list[tuple[int, int]]] = {}
    for cid in tree_ids:
        c = copies_by_id[cid]
        adjacency.setdefault(c.u, []).append((c.v, cid))
        adjacency.setdefault(c.v, []).append((c.u, cid))
    stack = [(a, -1, [])]
    while stack:
        v, via, path = stack.pop()
        if v == b:
            return path
        for w, cid in adjacency.get(v, ()):
            if cid != via:
                stack.append((w, cid, path + [cid]))
    raise ValueError("endpoints not connected inside the tree")


def swap_chain(mg: MultiGraph, under: LagrangianPoint, over: LagrangianPoint,
               lam_star: Fraction) -> list[tuple[int, ...]]:
    """Single-exchange walk between two Lagrangian-optimal trees.

    Each step inserts one copy of `over`, removes an equal-weight copy on the
    created cycle, and stays Lagrangian-optimal; such a swap always exists
    between two optima of the same matroid weighting.
    """
    copies_by_id = {c.copy_id: c for c in mg.copies}
    weight = {cid: _combined_key(copies_by_id[cid], lam_star) for cid in copies_by_id}
    current = set(under.copy_ids)
    target = set(over.copy_ids)
    chain = [tuple(sorted(current))]
    while current != target:
        done = False
        for f in sorted(target - current):
            cf = copies_by_id[f]
            cycle = _tree_path(copies_by_id, current, cf.u, cf.v)
            swappable = [g for g in cycle if g not in target and weight[g] == weight[f]]
            if swappable:
                g = min(swappable)
                current.remove(g)
                current.add(f)
                chain.append(tuple(sorted(current)))
                done = True
                break
        if not done:
            raise AssertionError("no weight-preserving exchange found; "
                                 "inputs are not optimal at the same multiplier")
    return chain


def _totals(copies_by_id, ids) -> tuple[int, int]:
    return (sum(copies_by_id[i].length for i in ids),
            sum(copies_by_id[i].cost for i in ids))


def _heavy_forests(heavy: list[EdgeCopy], n: int, budget: int):
    """All forests of heavy copies with total cost <= budget (incl. empty)."""
    out: list[list[EdgeCopy]] = []

    def rec(i: int, picked: list[EdgeCopy], cost: int, uf_edges):
        out.append(list(picked))
        for j in range(i, len(heavy)):
            c = heavy[j]
            if cost + c.cost > budget:
                continue
            uf = UnionFind(n)
            ok = all(uf.union(p.u, p.v) for p in picked) and uf.union(c.u, c.v)
            if ok:
                picked.append(c)
                rec(j + 1, picked, cost + c.cost, None)
                picked.pop()

    rec(0, [], 0, None)
    return out


def two_cost_mst(mg: MultiGraph, budget: int, eps: Fraction) -> TwoCostResult:
    """Spanning tree with length >= OPT(budget) and cost <= (1+eps)*budget."""
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    copies_by_id = {c.copy_id: c for c in mg.copies}
    threshold = eps * budget
    heavy = sorted((c for c in mg.copies if c.cost > threshold), key=lambda c: c.copy_id)
    light = [c for c in mg.copies if c.cost <= threshold]

    best: tuple[int, tuple[int, ...]] | None = None  # (length, sorted ids)
    for subset in _heavy_forests(heavy, mg.n, budget):
        ids = _solve_with_heavy_subset(mg.n, light, subset, budget)
        if ids is None:
            continue
        length, _cost = _totals(copies_by_id, ids)
        key = (length, tuple(sorted(ids)))
        if best is None or key[0] > best[0] or (key[0] == best[0] and key[1] < best[1]):
            best = key
    if best is None:
        raise DisconnectedGraphError("no budget-feasible spanning tree")
    length, cost = _totals(copies_by_id, best[1])
    return TwoCostResult(best[1], length, cost)


def _solve_with_heavy_subset(n: int, light: list[EdgeCopy], subset: list[EdgeCopy],
                             budget: int) -> tuple[int, ...] | None:
    """Contract the heavy forest, solve the cheap residual, map back."""
    uf = UnionFind(n)
    for c in subset:
        uf.union(c.u, c.v)
    roots = sorted({uf.find(v) for v in range(n)})
    comp = {r: i for i, r in enumerate(roots)}
    residual_budget = budget - sum(c.cost for c in subset)
    subset_ids = tuple(c.copy_id for c in subset)
    if len(roots) == 1:
        return subset_ids
    res_copies = tuple(
        EdgeCopy(c.copy_id, comp[uf.find(c.u)], comp[uf.find(c.v)],
                 c.length, c.cost, c.edge_id, c.level)
        for c in light if uf.find(c.u) != uf.find(c.v))
    res = MultiGraph(len(roots), res_copies)
    try:
        found = lambda_search(res, residual_budget)
    except DisconnectedGraphError:
        return None
    if found.exact is not None:
        return subset_ids + found.exact.copy_ids
    chain = swap_chain(res, found.under, found.over, found.lam_star)
    by_id = {c.copy_id: c for c in res_copies}
    for ids in chain:
        if sum(by_id[i].cost for i in ids) > residual_budget:
            return subset_ids + ids
    raise AssertionError("swap chain never crossed the residual budget")
