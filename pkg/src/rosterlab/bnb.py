"""Exhaustive branch-and-bound backend for small models.

Independent of the HiGHS backend: binaries are enumerated depth-first with
feasibility and bound pruning, and non-negative continuous variables are
resolved per leaf. When every continuous variable appears in exactly one
constraint (the slack pattern all models in this package use) the resolution
is closed-form; otherwise a residual LP is solved as a fallback.

Intended for cross-checks on small models; refuses anything with more than
``MAX_BINARIES`` binaries or with general integer variables.
"""

from __future__ import annotations

import time

import numpy as np
import scipy.optimize

from .mip import (
    MipError,
    MipModel,
    SolveControls,
    SolveOutcome,
    SolveStatus,
    VarKind,
)

MAX_BINARIES = 30
FEAS_TOL = 1e-9


def solve_by_enumeration(model: MipModel, controls: SolveControls | None = None) -> SolveOutcome:
    controls = controls or SolveControls()
    start = time.perf_counter()

    if any(k is VarKind.INTEGER for k in model.var_kinds):
        raise MipError("enumeration backend supports binary and continuous variables only")
    binaries = [i for i, k in enumerate(model.var_kinds) if k is VarKind.BINARY]
    if len(binaries) > MAX_BINARIES:
        raise MipError(
            f"model has {len(binaries)} binaries, enumeration cap is {MAX_BINARIES}"
        )
    continuous = [i for i, k in enumerate(model.var_kinds) if k is VarKind.CONTINUOUS]
    bin_order = {idx: pos for pos, idx in enumerate(binaries)}
    n_bin = len(binaries)

    c_vec = model.objective_vector()
    bin_costs = c_vec[binaries] if n_bin else np.zeros(0)
    cont_costs = c_vec[continuous] if continuous else np.zeros(0)
    prunable_objective = bool(np.all(cont_costs >= 0))

    # per constraint: binary terms as (position, coef), continuous terms as
    # (position in `continuous`, coef)
    cont_pos = {idx: pos for pos, idx in enumerate(continuous)}
    cons = []
    for con in model.constraints:
        bterms: list[tuple[int, float]] = []
        cterms: list[tuple[int, float]] = []
        for idx, coef in zip(con.indices, con.coefs):
            if idx in bin_order:
                bterms.append((bin_order[idx], coef))
            else:
                cterms.append((cont_pos[idx], coef))
        cons.append((con, bterms, cterms))

    n_cons = len(cons)
    # suffix bounds on the binary part: what unfixed binaries can still add
    min_rest = np.zeros((n_cons, n_bin + 1))
    max_rest = np.zeros((n_cons, n_bin + 1))
    for ci, (_, bterms, _) in enumerate(cons):
        for depth in range(n_bin - 1, -1, -1):
            min_rest[ci, depth] = min_rest[ci, depth + 1]
            max_rest[ci, depth] = max_rest[ci, depth + 1]
            for pos, coef in bterms:
                if pos == depth:
                    min_rest[ci, depth] += min(coef, 0.0)
                    max_rest[ci, depth] += max(coef, 0.0)
    cont_can_lower = np.array(
        [any(coef < 0 for _, coef in cterms) for _, _, cterms in cons]
    )
    cont_can_raise = np.array(
        [any(coef > 0 for _, coef in cterms) for _, _, cterms in cons]
    )
    obj_min_rest = np.zeros(n_bin + 1)
    for depth in range(n_bin - 1, -1, -1):
        obj_min_rest[depth] = obj_min_rest[depth + 1] + min(bin_costs[depth], 0.0)

    # terms grouped by binary position for incremental sums
    by_pos: list[list[tuple[int, float]]] = [[] for _ in range(n_bin)]
    for ci, (_, bterms, _) in enumerate(cons):
        for pos, coef in bterms:
            by_pos[pos].append((ci, coef))

    best_value = np.inf
    best_x: np.ndarray | None = None
    timed_out = False

    fixed = np.zeros(n_bin)
    sums = np.zeros(n_cons)

    def feasible_window(depth: int) -> bool:
        for ci, (con, _, _) in enumerate(cons):
            lo = sums[ci] + min_rest[ci, depth]
            hi = sums[ci] + max_rest[ci, depth]
            if cont_can_lower[ci]:
                lo = -np.inf
            if cont_can_raise[ci]:
                hi = np.inf
            if con.sense == "<=" and lo > con.rhs + FEAS_TOL:
                return False
            if con.sense == ">=" and hi < con.rhs - FEAS_TOL:
                return False
            if con.sense == "==" and (lo > con.rhs + FEAS_TOL or hi < con.rhs - FEAS_TOL):
                return False
        return True

    def resolve_leaf() -> tuple[float, np.ndarray] | None:
        """Optimal continuous completion for the current binary fixing."""
        if not continuous:
            for ci, (con, _, _) in enumerate(cons):
                if not _satisfied(con.sense, sums[ci], con.rhs):
                    return None
            return 0.0, np.zeros(0)
        appearances: list[list[tuple[int, float]]] = [[] for _ in continuous]
        per_con_cont = [0] * n_cons
        for ci, (_, _, cterms) in enumerate(cons):
            for pos, coef in cterms:
                appearances[pos].append((ci, coef))
                per_con_cont[ci] += 1
        closed_form = all(len(a) <= 1 for a in appearances) and all(
            c <= 1 for c in per_con_cont
        )
        if not closed_form:
            return _resolve_leaf_lp()
        y = np.zeros(len(continuous))
        for pos, apps in enumerate(appearances):
            cost = cont_costs[pos]
            if not apps:
                if cost < 0:
                    raise MipError("unbounded continuous variable")
                continue
            ci, coef = apps[0]
            con = cons[ci][0]
            residual = con.rhs - sums[ci]
            lb, ub = 0.0, np.inf
            if con.sense == "<=":
                if coef > 0:
                    ub = residual / coef
                else:
                    lb = max(lb, residual / coef)
            elif con.sense == ">=":
                if coef > 0:
                    lb = max(lb, residual / coef)
                else:
                    ub = residual / coef
            else:
                val = residual / coef
                lb = max(lb, val)
                ub = val
            if lb > ub + FEAS_TOL:
                return None
            if cost >= 0:
                y[pos] = max(lb, 0.0)
            else:
                if not np.isfinite(ub):
                    raise MipError("unbounded continuous variable")
                y[pos] = ub
        for ci, (con, _, cterms) in enumerate(cons):
            lhs = sums[ci] + sum(coef * y[pos] for pos, coef in cterms)
            if not _satisfied(con.sense, lhs, con.rhs):
                return None
        return float(np.dot(cont_costs, y)), y

    def _resolve_leaf_lp() -> tuple[float, np.ndarray] | None:
        a_ub, b_ub, a_eq, b_eq = [], [], [], []
        for ci, (con, _, cterms) in enumerate(cons):
            if not cterms:
                if not _satisfied(con.sense, sums[ci], con.rhs):
                    return None
                continue
            row = np.zeros(len(continuous))
            for pos, coef in cterms:
                row[pos] = coef
            residual = con.rhs - sums[ci]
            if con.sense == "<=":
                a_ub.append(row)
                b_ub.append(residual)
            elif con.sense == ">=":
                a_ub.append(-row)
                b_ub.append(-residual)
            else:
                a_eq.append(row)
                b_eq.append(residual)
        res = scipy.optimize.linprog(
            c=cont_costs,
            A_ub=np.array(a_ub) if a_ub else None,
            b_ub=np.array(b_ub) if b_ub else None,
            A_eq=np.array(a_eq) if a_eq else None,
            b_eq=np.array(b_eq) if b_eq else None,
            bounds=(0, None),
            method="highs",
        )
        if res.status == 2:
            return None
        if res.status != 0:
            raise MipError(f"continuous completion failed: {res.message}")
        return float(res.fun), np.asarray(res.x)

    def record(cont_cost: float, y: np.ndarray) -> None:
        nonlocal best_value, best_x
        total = float(np.dot(bin_costs, fixed)) + cont_cost
        if total < best_value - 1e-12:
            best_value = total
            x = np.zeros(model.n_vars)
            for pos, idx in enumerate(binaries):
                x[idx] = fixed[pos]
            for pos, idx in enumerate(continuous):
                x[idx] = y[pos]
            best_x = x

    def dfs(depth: int) -> None:
        nonlocal timed_out
        if timed_out:
            return
        if time.perf_counter() - start > controls.time_limit:
            timed_out = True
            return
        if not feasible_window(depth):
            return
        bound = float(np.dot(bin_costs[:depth], fixed[:depth])) + obj_min_rest[depth]
        if prunable_objective and bound >= best_value - 1e-12:
            return
        if depth == n_bin:
            completion = resolve_leaf()
            if completion is not None:
                record(*completion)
            return
        for value in (0.0, 1.0):
            fixed[depth] = value
            if value:
                for ci, coef in by_pos[depth]:
                    sums[ci] += coef
            dfs(depth + 1)
            if value:
                for ci, coef in by_pos[depth]:
                    sums[ci] -= coef
        fixed[depth] = 0.0

    dfs(0)
    wall = time.perf_counter() - start
    if timed_out:
        if best_x is not None:
            return SolveOutcome(SolveStatus.TIME_LIMIT, best_value, None,
                                _values(model, best_x), wall, "enumeration timed out")
        return SolveOutcome(SolveStatus.TIME_LIMIT, None, None, None, wall,
                            "enumeration timed out")
    if best_x is None:
        return SolveOutcome(SolveStatus.INFEASIBLE, None, None, None, wall,
                            "enumeration exhausted, no feasible point")
    return SolveOutcome(SolveStatus.OPTIMAL, best_value, 0.0,
                        _values(model, best_x), wall, "enumeration complete")


def _satisfied(sense: str, lhs: float, rhs: float) -> bool:
    if sense == "<=":
        return lhs <= rhs + FEAS_TOL
    if sense == ">=":
        return lhs >= rhs - FEAS_TOL
    return abs(lhs - rhs) <= FEAS_TOL


def _values(model: MipModel, x: np.ndarray) -> dict[str, float]:
    return {name: float(v) for name, v in zip(model.var_names, x)}
