"""Solver-agnostic mixed-integer programming layer.

Models are plain containers of named variables, named linear constraints and
a minimized linear objective. :func:`solve` dispatches to a backend:

* ``"highs"`` (default): scipy's bundled HiGHS via ``scipy.optimize.milp``.
* ``"enumerate"``: an exhaustive branch-and-bound over binary variables,
  intended as an independent cross-check on small models.

Variable kinds are binary, integer (non-negative) and continuous
(non-negative); these cover every model this package builds and keep the LP
export/parse round trip simple.
"""

from __future__ import annotations

import enum
import math
import re
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import scipy.optimize
import scipy.sparse

# an integral variable further from its nearest integer than this means the
# backend misbehaved
INTEGRALITY_TOL = 1e-6


class MipError(Exception):
    """Raised for malformed models or backend failures."""


class VarKind(enum.Enum):
    BINARY = "binary"
    INTEGER = "integer"
    CONTINUOUS = "continuous"


class SolveStatus(enum.Enum):
    OPTIMAL = "optimal"
    FEASIBLE_GAP = "feasible_gap"
    INFEASIBLE = "infeasible"
    TIME_LIMIT = "time_limit"
    ERROR = "error"


SENSES = ("<=", ">=", "==")


@dataclass
class _Constraint:
    name: str
    indices: list[int]
    coefs: list[float]
    sense: str
    rhs: float


class MipModel:
    """A minimize-objective MILP with named variables and constraints."""

    def __init__(self, name: str = "model"):
        self.name = name
        self.var_names: list[str] = []
        self.var_kinds: list[VarKind] = []
        self._var_index: dict[str, int] = {}
        self.constraints: list[_Constraint] = []
        self._constraint_names: set[str] = set()
        self.objective: dict[int, float] = {}

    @property
    def n_vars(self) -> int:
        return len(self.var_names)

    def add_var(self, name: str, kind: VarKind) -> int:
        """Declare a variable; returns its index."""
        if name in self._var_index:
            raise MipError(f"duplicate variable name {name!r}")
        idx = len(self.var_names)
        self.var_names.append(name)
        self.var_kinds.append(kind)
        self._var_index[name] = idx
        return idx

    def var_index(self, name: str) -> int:
        try:
            return self._var_index[name]
        except KeyError:
            raise MipError(f"unknown variable {name!r}") from None

    def _resolve(self, terms: Iterable[tuple[int | str, float]]) -> tuple[list[int], list[float]]:
        indices: list[int] = []
        coefs: list[float] = []
        n = len(self.var_names)
        for ref, coef in terms:
            idx = ref if isinstance(ref, int) else self.var_index(ref)
            if not 0 <= idx < n:
                raise MipError(f"variable index {idx} out of range")
            indices.append(idx)
            coefs.append(float(coef))
        return indices, coefs

    def add_constraint(
        self,
        name: str,
        terms: Iterable[tuple[int | str, float]],
        sense: str,
        rhs: float,
    ) -> None:
        if sense not in SENSES:
            raise MipError(f"unknown sense {sense!r}, expected one of {SENSES}")
        if name in self._constraint_names:
            raise MipError(f"duplicate constraint name {name!r}")
        indices, coefs = self._resolve(terms)
        if not indices:
            raise MipError(f"constraint {name!r} has no terms")
        self._constraint_names.add(name)
        self.constraints.append(_Constraint(name, indices, coefs, sense, float(rhs)))

    def set_objective(self, terms: Iterable[tuple[int | str, float]]) -> None:
        """Set the minimized objective; repeated variables accumulate."""
        indices, coefs = self._resolve(terms)
        objective: dict[int, float] = {}
        for idx, coef in zip(indices, coefs):
            objective[idx] = objective.get(idx, 0.0) + coef
        self.objective = objective

    def objective_vector(self) -> np.ndarray:
        c = np.zeros(self.n_vars)
        for idx, coef in self.objective.items():
            c[idx] = coef
        return c

    def stats(self) -> dict[str, int]:
        kinds = [k for k in self.var_kinds]
        return {
            "variables": self.n_vars,
            "binary": sum(k is VarKind.BINARY for k in kinds),
            "integer": sum(k is VarKind.INTEGER for k in kinds),
            "continuous": sum(k is VarKind.CONTINUOUS for k in kinds),
            "constraints": len(self.constraints),
        }


@dataclass(frozen=True)
class SolveControls:
    """Termination settings shared by all backends."""

    gap: float = 1e-4
    time_limit: float = 100.0

    def __post_init__(self) -> None:
        if self.gap < 0:
            raise ValueError("gap must be non-negative")
        if self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


@dataclass(frozen=True)
class SolveOutcome:
    """Result of one solve. ``values`` is present iff a solution exists."""

    status: SolveStatus
    objective_value: float | None
    gap: float | None
    values: dict[str, float] | None
    wall_time: float
    message: str = ""

    @property
    def has_solution(self) -> bool:
        return self.values is not None

    def value(self, name: str, default: float = 0.0) -> float:
        if self.values is None:
            raise MipError("outcome has no solution values")
        return self.values.get(name, default)


def solve(model: MipModel, controls: SolveControls | None = None,
          backend: str = "highs") -> SolveOutcome:
    """Solve a model with the chosen backend."""
    controls = controls or SolveControls()
    if model.n_vars == 0:
        raise MipError("model has no variables")
    if backend == "highs":
        return _solve_highs(model, controls)
    if backend == "enumerate":
        from .bnb import solve_by_enumeration

        return solve_by_enumeration(model, controls)
    raise MipError(f"unknown backend {backend!r}")


def _round_integral(model: MipModel, x: np.ndarray) -> np.ndarray:
    """Snap integral variables to exact integers, verifying the deviation."""
    out = x.copy()
    for idx, kind in enumerate(model.var_kinds):
        if kind is VarKind.CONTINUOUS:
            continue
        snapped = round(float(x[idx]))
        if abs(x[idx] - snapped) > INTEGRALITY_TOL * (1 + abs(snapped)):
            raise MipError(
                f"backend returned non-integral value {x[idx]!r} for "
                f"{model.var_names[idx]}"
            )
        out[idx] = float(snapped)
    return out


def _values_dict(model: MipModel, x: np.ndarray) -> dict[str, float]:
    return {name: float(v) for name, v in zip(model.var_names, x)}


def _solve_highs(model: MipModel, controls: SolveControls) -> SolveOutcome:
    n = model.n_vars
    c = model.objective_vector()
    integrality = np.zeros(n, dtype=np.uint8)
    lb = np.zeros(n)
    ub = np.full(n, np.inf)
    for idx, kind in enumerate(model.var_kinds):
        if kind is VarKind.BINARY:
            integrality[idx] = 1
            ub[idx] = 1.0
        elif kind is VarKind.INTEGER:
            integrality[idx] = 1

    constraints = None
    if model.constraints:
        rows: list[int] = []
        cols: list[int] = []
        vals: list[float] = []
        lo = np.empty(len(model.constraints))
        hi = np.empty(len(model.constraints))
        for ci, con in enumerate(model.constraints):
            rows.extend([ci] * len(con.indices))
            cols.extend(con.indices)
            vals.extend(con.coefs)
            if con.sense == "<=":
                lo[ci], hi[ci] = -np.inf, con.rhs
            elif con.sense == ">=":
                lo[ci], hi[ci] = con.rhs, np.inf
            else:
                lo[ci], hi[ci] = con.rhs, con.rhs
        matrix = scipy.sparse.csc_array(
            (vals, (rows, cols)), shape=(len(model.constraints), n)
        )
        constraints = scipy.optimize.LinearConstraint(matrix, lo, hi)

    start = time.perf_counter()
    try:
        res = scipy.optimize.milp(
            c=c,
            constraints=constraints,
            integrality=integrality,
            bounds=scipy.optimize.Bounds(lb, ub),
            options={
                "mip_rel_gap": controls.gap,
                "time_limit": controls.time_limit,
                "presolve": True,
                "disp": False,
            },
        )
    except Exception as exc:  # backend crash, not a model property
        wall = time.perf_counter() - start
        return SolveOutcome(SolveStatus.ERROR, None, None, None, wall, str(exc))
    wall = time.perf_counter() - start

    raw_gap = getattr(res, "mip_gap", None)
    gap = float(raw_gap) if raw_gap is not None else None
    if res.status == 0:
        x = _round_integral(model, np.asarray(res.x))
        gap = gap if gap is not None else 0.0
        status = SolveStatus.OPTIMAL if gap <= controls.gap + 1e-12 else SolveStatus.FEASIBLE_GAP
        return SolveOutcome(status, float(res.fun), gap, _values_dict(model, x),
                            wall, res.message)
    if res.status == 1:  # halted at a limit, possibly with an incumbent
        if res.x is not None:
            x = _round_integral(model, np.asarray(res.x))
            return SolveOutcome(SolveStatus.TIME_LIMIT, float(res.fun), gap,
                                _values_dict(model, x), wall, res.message)
        return SolveOutcome(SolveStatus.TIME_LIMIT, None, None, None, wall, res.message)
    if res.status == 2:
        return SolveOutcome(SolveStatus.INFEASIBLE, None, None, None, wall, res.message)
    return SolveOutcome(SolveStatus.ERROR, None, None, None, wall, res.message)


# ---------------------------------------------------------------------------
# LP-format text


_NAME_SAFE = re.compile(r"[^A-Za-z0-9_.!#$%&;?@{}~]")


def _sanitize_names(names: Sequence[str]) -> list[str]:
    """Rewrite names into LP-safe tokens, keeping them unique."""
    seen: set[str] = set()
    out: list[str] = []
    for i, name in enumerate(names):
        safe = _NAME_SAFE.sub("_", name)
        if not safe or safe[0].isdigit() or safe[0] in ".eE":
            safe = f"v_{safe}"
        if safe in seen:
            safe = f"{safe}__{i}"
        seen.add(safe)
        out.append(safe)
    return out


def _format_coef(value: float) -> str:
    return f"{value:.17g}"


def _format_terms(terms: Iterable[tuple[float, str]]) -> list[str]:
    """Render terms as wrapped LP lines."""
    parts: list[str] = []
    for coef, name in terms:
        sign = "-" if coef < 0 else "+"
        parts.append(f"{sign} {_format_coef(abs(coef))} {name}")
    if parts and parts[0].startswith("+"):
        parts[0] = parts[0][2:]
    lines: list[str] = []
    for start in range(0, len(parts), 8):
        lines.append(" " + " ".join(parts[start:start + 8]))
    return lines


def export_lp(model: MipModel) -> str:
    """Serialize the model as LP-format text (deterministic ordering)."""
    names = _sanitize_names(model.var_names)
    lines = [f"\\ {model.name}", "Minimize"]
    obj_terms = [(coef, names[idx]) for idx, coef in sorted(model.objective.items())
                 if coef != 0.0]
    if obj_terms:
        body = _format_terms(obj_terms)
        lines.append(" obj:" + body[0])
        lines.extend(body[1:])
    else:
        lines.append(f" obj: 0 {names[0]}")
    lines.append("Subject To")
    con_names = _sanitize_names([c.name for c in model.constraints])
    for con, cname in zip(model.constraints, con_names):
        terms = [(coef, names[idx]) for idx, coef in zip(con.indices, con.coefs)]
        body = _format_terms(terms)
        op = {"<=": "<=", ">=": ">=", "==": "="}[con.sense]
        body[-1] = f"{body[-1]} {op} {_format_coef(con.rhs)}"
        lines.append(f" {cname}:{body[0]}")
        lines.extend(body[1:])
    generals = [names[i] for i, k in enumerate(model.var_kinds) if k is VarKind.INTEGER]
    binaries = [names[i] for i, k in enumerate(model.var_kinds) if k is VarKind.BINARY]
    if generals:
        lines.append("General")
        for start in range(0, len(generals), 8):
            lines.append(" " + " ".join(generals[start:start + 8]))
    if binaries:
        lines.append("Binary")
        for start in range(0, len(binaries), 8):
            lines.append(" " + " ".join(binaries[start:start + 8]))
    lines.append("End")
    return "\n".join(lines) + "\n"


_SECTION = re.compile(
    r"^(minimize|maximize|max|min|subject to|such that|st|s\.t\.|bounds|"
    r"general|generals|gen|integer|integers|binary|binaries|bin|end)$",
    re.IGNORECASE,
)
_TOKEN = re.compile(
    r"\s*(?:(?P<op><=|>=|=<|=>|=)|(?P<sign>[+-])|"
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|"
    r"(?P<name>[A-Za-z_.!#$%&;?@{}~][A-Za-z0-9_.!#$%&;?@{}~]*))"
)


def _tokenize_lp(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            if text[pos:].strip():
                raise MipError(f"LP parse error near {text[pos:pos + 20]!r}")
            break
        pos = match.end()
        for group in ("op", "sign", "num", "name"):
            value = match.group(group)
            if value is not None:
                tokens.append((group, value))
                break
    return tokens


def _parse_expression(tokens: list[tuple[str, str]]) -> tuple[list[tuple[str, float]], str | None, float | None]:
    """Parse tokens into (terms, sense, rhs); sense is None for objectives."""
    terms: list[tuple[str, float]] = []
    sense: str | None = None
    rhs: float | None = None
    sign = 1.0
    coef: float | None = None
    for kind, value in tokens:
        if kind == "op":
            if sense is not None:
                raise MipError("multiple comparison operators in one constraint")
            sense = {"=<": "<=", "=>": ">=", "=": "==", "<=": "<=", ">=": ">="}[value]
            sign, coef = 1.0, None
        elif kind == "sign":
            if coef is not None and sense is None:
                raise MipError("dangling coefficient in LP expression")
            sign = -sign if value == "-" else sign
        elif kind == "num":
            number = float(value)
            if sense is not None:
                if rhs is not None:
                    raise MipError("multiple right-hand sides in one constraint")
                rhs = sign * number
            else:
                coef = number if coef is None else coef * number
        else:
            applied = sign * (coef if coef is not None else 1.0)
            terms.append((value, applied))
            sign, coef = 1.0, None
    if sense is not None and rhs is None:
        raise MipError("constraint missing right-hand side")
    return terms, sense, rhs


_NUM_RE = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-]?inf(?:inity)?"
_VAR_RE = r"[A-Za-z_.!#$%&;?@{}~][A-Za-z0-9_.!#$%&;?@{}~]*"
_BOUNDS_FORMS = (
    re.compile(rf"^({_NUM_RE})\s*<=\s*({_VAR_RE})\s*<=\s*({_NUM_RE})$", re.IGNORECASE),
    re.compile(rf"^({_VAR_RE})\s*<=\s*({_NUM_RE})$", re.IGNORECASE),
    re.compile(rf"^({_VAR_RE})\s*>=\s*({_NUM_RE})$", re.IGNORECASE),
    re.compile(rf"^({_NUM_RE})\s*<=\s*({_VAR_RE})$", re.IGNORECASE),
    re.compile(rf"^({_VAR_RE})\s*=\s*({_NUM_RE})$", re.IGNORECASE),
)


def _parse_bounds_row(row: str) -> tuple[str, float | None, float | None]:
    """Parse one Bounds line into (variable, lower, upper)."""
    text = row.strip()
    if re.search(r"\bfree\b", text, re.IGNORECASE):
        raise MipError("free variables are not supported")
    for i, pattern in enumerate(_BOUNDS_FORMS):
        match = pattern.match(text)
        if not match:
            continue
        groups = match.groups()
        if i == 0:
            return groups[1], float(groups[0]), float(groups[2])
        if i == 1:
            return groups[0], None, float(groups[1])
        if i == 2:
            return groups[0], float(groups[1]), None
        if i == 3:
            return groups[1], float(groups[0]), None
        return groups[0], float(groups[1]), float(groups[1])
    raise MipError(f"unsupported bounds row: {row!r}")


def parse_lp(text: str) -> MipModel:
    """Parse LP-format text into a model.

    Supports the dialect :func:`export_lp` emits: a minimize objective,
    constraints, optional Bounds/General/Binary sections, non-negative
    variables. Bounds other than the implied defaults become extra
    constraints (``x free`` and negative lower bounds are rejected).
    """
    # strip comments
    body = "\n".join(line.split("\\", 1)[0] for line in text.splitlines())
    lines = [ln.strip() for ln in body.splitlines() if ln.strip()]
    sections: list[tuple[str, list[str]]] = []
    for line in lines:
        if _SECTION.match(line):
            sections.append((line.lower(), []))
            continue
        if not sections:
            raise MipError(f"unexpected text before first LP section: {line!r}")
        sections[-1][1].append(line)

    model = MipModel(name="parsed_lp")
    var_kind: dict[str, VarKind] = {}
    order: list[str] = []
    pending_cons: list[tuple[str, list[tuple[str, float]], str, float]] = []
    objective_terms: list[tuple[str, float]] = []
    bounds_rows: list[str] = []
    seen_objective = False

    def note_var(name: str) -> None:
        if name not in var_kind:
            var_kind[name] = VarKind.CONTINUOUS
            order.append(name)

    auto_id = 0
    for header, content in sections:
        head = header.lower()
        if head in ("maximize", "max"):
            raise MipError("maximize objectives are not supported")
        if head in ("minimize", "min"):
            seen_objective = True
            text_block = " ".join(content)
            if ":" in text_block:
                text_block = text_block.split(":", 1)[1]
            terms, sense, _ = _parse_expression(_tokenize_lp(text_block))
            if sense is not None:
                raise MipError("objective must not contain a comparison")
            objective_terms = terms
            for name, _ in terms:
                note_var(name)
        elif head in ("subject to", "such that", "st", "s.t."):
            # constraints may span lines; a new one starts at "name:"
            blocks: list[str] = []
            for line in content:
                if re.match(r"^[^:\s]+\s*:", line):
                    blocks.append(line)
                elif blocks:
                    blocks[-1] += " " + line
                else:
                    blocks.append(line)
            for block in blocks:
                if ":" in block:
                    cname, expr = block.split(":", 1)
                    cname = cname.strip()
                else:
                    cname, expr = f"c{auto_id}", block
                    auto_id += 1
                terms, sense, rhs = _parse_expression(_tokenize_lp(expr))
                if sense is None or rhs is None:
                    raise MipError(f"constraint {cname!r} has no comparison")
                pending_cons.append((cname, terms, sense, rhs))
                for name, _ in terms:
                    note_var(name)
        elif head == "bounds":
            bounds_rows.extend(content)
        elif head in ("general", "generals", "gen", "integer", "integers"):
            for line in content:
                for _, name in _tokenize_lp(line):
                    note_var(name)
                    var_kind[name] = VarKind.INTEGER
        elif head in ("binary", "binaries", "bin"):
            for line in content:
                for _, name in _tokenize_lp(line):
                    note_var(name)
                    var_kind[name] = VarKind.BINARY
        elif head == "end":
            break

    if not seen_objective:
        raise MipError("LP text has no objective section")

    bound_cons: list[tuple[list[tuple[str, float]], str, float]] = []
    for row in bounds_rows:
        name, lb, ub = _parse_bounds_row(row)
        note_var(name)
        if lb is not None and lb < 0:
            raise MipError(f"negative lower bound unsupported: {row!r}")
        if lb is not None and lb > 0:
            bound_cons.append(([(name, 1.0)], ">=", lb))
        if ub is not None and math.isfinite(ub):
            bound_cons.append(([(name, 1.0)], "<=", ub))

    for name in order:
        model.add_var(name, var_kind[name])
    model.set_objective(objective_terms)
    used: set[str] = set()
    for cname, terms, sense, rhs in pending_cons:
        if cname in used:
            suffix = 2
            while f"{cname}_{suffix}" in used:
                suffix += 1
            cname = f"{cname}_{suffix}"
        used.add(cname)
        model.add_constraint(cname, terms, sense, rhs)
    for i, (terms, sense, rhs) in enumerate(bound_cons):
        model.add_constraint(f"bnd_{i}", terms, sense, rhs)
    return model
