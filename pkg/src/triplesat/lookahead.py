"""Look-ahead based splitting: recursive weight heuristic, failed-literal
detection, branching-tree construction with cutoff policies, and cube
file (inccnf) handling.

A look-ahead assigns a literal, propagates, and weighs the freshly
created binary clauses.  Literal weights h(l) are refined over a few
rounds: each round scales by the current mean and clamps into
[alpha, beta], with gamma weighting binary-clause contributions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .cnf import Formula, lit_value, propagate_clauses

CUTOFF = "cutoff"
REFUTED = "refuted"

MODE_PTN = "ptn3sat"
MODE_RND = "rnd3sat"
MODE_BIN = "count_bin"
MODE_VAR = "count_var"
MODES = (MODE_PTN, MODE_RND, MODE_BIN, MODE_VAR)


@dataclass
class HeuristicParams:
    alpha: float = 8.0
    beta: float = 550.0
    gamma: float = 25.0
    iterations: int = 4

    def __post_init__(self):
        if not (0 < self.alpha <= self.beta):
            raise ValueError("need 0 < alpha <= beta")
        if self.gamma <= 0 or self.iterations < 1:
            raise ValueError("need gamma > 0 and iterations >= 1")


# Tuned for Pythagorean-triple style formulas vs. plain random 3-SAT.
PTN_PARAMS = HeuristicParams(alpha=8.0, beta=550.0, gamma=25.0, iterations=4)
RND_PARAMS = HeuristicParams(alpha=0.1, beta=25.0, gamma=3.3, iterations=4)


def params_for_mode(mode):
    return RND_PARAMS if mode == MODE_RND else PTN_PARAMS


@dataclass
class HTable:
    values: dict            # literal -> heuristic value
    means: list             # per-round mean, means[i] is the round-i average

    def product(self, var):
        return self.values.get(var, 0.0) * self.values.get(-var, 0.0)


@dataclass
class Leaf:
    status: str


@dataclass
class Node:
    literal: int
    yes: object             # subtree where `literal` holds
    no: object              # subtree where its complement holds


@dataclass
class CutoffPolicy:
    """A node becomes a cutoff leaf when any enabled trigger fires."""
    min_binaries: Optional[int] = None   # binary-clause count >= threshold
    max_free_vars: Optional[int] = None  # unassigned occurring vars <= threshold
    depth_limit: int = 64                # mandatory termination bound

    def triggers(self, depth, n_binaries, n_free_vars):
        if depth >= self.depth_limit:
            return True
        if self.min_binaries is not None and n_binaries >= self.min_binaries:
            return True
        if self.max_free_vars is not None and n_free_vars <= self.max_free_vars:
            return True
        return False


def parse_cutoff(spec):
    """Parse 'bin:3000', 'vars:3450', 'depth:20', or comma-joined combinations."""
    policy = CutoffPolicy()
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        kind, _, value = part.partition(":")
        if not value:
            raise ValueError("malformed cutoff %r" % part)
        value = int(value)
        if kind == "bin":
            policy.min_binaries = value
        elif kind == "vars":
            policy.max_free_vars = value
        elif kind == "depth":
            policy.depth_limit = value
        else:
            raise ValueError("unknown cutoff kind %r" % kind)
    return policy


class LookaheadError(ValueError):
    """Residual formula is not in binary/ternary form; heuristic undefined."""


def residual_clauses(clauses, assignment):
    """Reduce clauses under an assignment: drop satisfied, strip false literals."""
    residual = []
    for clause in clauses:
        reduced = []
        satisfied = False
        for lit in clause:
            val = lit_value(assignment, lit)
            if val is True:
                satisfied = True
                break
            if val is None:
                reduced.append(lit)
        if not satisfied:
            residual.append(tuple(reduced))
    return residual


def _check_3cnf(residual):
    for clause in residual:
        if len(clause) > 3:
            raise LookaheadError("residual clause %r longer than 3" % (clause,))


def _compute_h(residual, params):
    _check_3cnf(residual)
    occurring = {abs(l) for c in residual for l in c}
    h = {}
    for var in occurring:
        h[var] = 1.0
        h[-var] = 1.0
    n = len(occurring)
    means = []
    for _ in range(params.iterations):
        mu = sum(h[v] + h[-v] for v in occurring) / (2 * n) if n else 1.0
        means.append(mu)
        raw = dict.fromkeys(h, 0.0)
        for clause in residual:
            if len(clause) == 3:
                x, y, z = clause
                hy, hz, hx = h[-y] / mu, h[-z] / mu, h[-x] / mu
                raw[x] += hy * hz
                raw[y] += hx * hz
                raw[z] += hx * hy
            elif len(clause) == 2:
                x, y = clause
                raw[x] += params.gamma * h[-y] / mu
                raw[y] += params.gamma * h[-x] / mu
        for lit in h:
            h[lit] = max(params.alpha, min(params.beta, raw[lit]))
    return HTable(h, means)


def compute_h(formula, assignment, params):
    """Heuristic table for the formula simplified under `assignment`."""
    return _compute_h(residual_clauses(formula.clauses, assignment), params)


def _look_ahead(residual, lit, table):
    assign, conflict = propagate_clauses(residual, [lit])
    if conflict:
        return 0.0, len(assign), 0, True
    weight = 0.0
    new_binaries = 0
    h = table.values
    for clause in residual:
        if len(clause) != 3:
            continue
        unassigned = []
        satisfied = False
        for other in clause:
            val = lit_value(assign, other)
            if val is True:
                satisfied = True
                break
            if val is None:
                unassigned.append(other)
        if satisfied or len(unassigned) != 2:
            continue
        y, z = unassigned
        weight += h.get(-y, 0.0) * h.get(-z, 0.0)
        new_binaries += 1
    return weight, len(assign), new_binaries, False


def look_ahead(formula, assignment, lit, table):
    """Propagate `lit` under `assignment` and measure the reduction.

    Returns (weight, assigned count, new binary clause count, refuted).
    The weight sums h(~y) * h(~z) over the newly created binaries (y | z);
    refuted means propagation conflicts, forcing the complement.
    """
    if lit_value(assignment, lit) is not None:
        raise ValueError("literal %d already assigned" % lit)
    return _look_ahead(residual_clauses(formula.clauses, assignment), lit, table)


def _score(mode, pos, neg):
    if mode in (MODE_PTN, MODE_RND):
        return pos[0] * neg[0]
    if mode == MODE_BIN:
        return pos[2] * neg[2]
    if mode == MODE_VAR:
        return pos[1] * neg[1]
    raise ValueError("unknown mode %r" % mode)


def _candidates(residual, table, preselect):
    occurring = sorted({abs(l) for c in residual for l in c})
    if preselect >= 1.0 or len(occurring) <= 1:
        return occurring
    keep = max(1, math.ceil(preselect * len(occurring)))
    ranked = sorted(occurring, key=lambda v: (-table.product(v), v))
    return sorted(ranked[:keep])


def _measure(residual, table, mode, preselect=1.0):
    """Look ahead on both polarities of every candidate variable.

    Returns (best variable or None, list of failed literals, scores dict).
    A variable refuted in both polarities is reported via a score of the
    special value None in `failed` handling by the caller: here we return
    best=None and failed containing both polarities.
    """
    best_var = None
    best_score = -1.0
    failed = []
    scores = {}
    for var in _candidates(residual, table, preselect):
        pos = _look_ahead(residual, var, table)
        neg = _look_ahead(residual, -var, table)
        if pos[3]:
            failed.append(var)
        if neg[3]:
            failed.append(-var)
        if pos[3] or neg[3]:
            continue
        score = _score(mode, pos, neg)
        scores[var] = score
        if score > best_score:
            best_score = score
            best_var = var
    return best_var, failed, scores


def select_branch(formula, assignment, table, mode):
    """Best branching variable under `mode`; ties go to the smallest index."""
    residual = residual_clauses(formula.clauses, assignment)
    _check_3cnf(residual)
    best, failed, _ = _measure(residual, table, mode)
    if best is not None:
        return best
    # Every candidate failed in some polarity; the caller normally handles
    # failed literals first, so just fall back to the smallest one.
    if failed:
        return min(abs(l) for l in failed)
    raise ValueError("no candidate variable to branch on")


def branch_scores(formula, assignment, mode, params=None):
    """Score table {variable: score} for one mode; inspection helper."""
    params = params or params_for_mode(mode)
    residual = residual_clauses(formula.clauses, assignment)
    table = _compute_h(residual, params)
    _, _, scores = _measure(residual, table, mode)
    return scores


def split(formula, cutoff, mode=MODE_PTN, params=None, preselect=1.0):
    """Build a branching tree over `formula` by depth-first expansion.

    Decisions propagate fully between levels; failed literals force their
    complement at the same node; a node whose variable fails in both
    polarities (or whose residual is conflicting) becomes a refuted leaf.
    """
    params = params or params_for_mode(mode)
    clauses = formula.clauses

    def expand(assumed, depth):
        assign, conflict = propagate_clauses(clauses, assumed)
        if conflict:
            return Leaf(REFUTED)
        residual = residual_clauses(clauses, assign)
        while True:
            if not residual:
                return Leaf(CUTOFF)
            n_bin = sum(1 for c in residual if len(c) == 2)
            n_free = len({abs(l) for c in residual for l in c})
            if cutoff.triggers(depth, n_bin, n_free):
                return Leaf(CUTOFF)
            table = _compute_h(residual, params)
            best, failed, _ = _measure(residual, table, mode, preselect)
            if any(-lit in failed for lit in failed):
                return Leaf(REFUTED)
            if failed:
                assumed = list(assumed) + [-lit for lit in failed]
                assign, conflict = propagate_clauses(clauses, assumed)
                if conflict:
                    return Leaf(REFUTED)
                residual = residual_clauses(clauses, assign)
                continue
            if best is None:
                return Leaf(CUTOFF)
            break
        yes = expand(list(assumed) + [best], depth + 1)
        no = expand(list(assumed) + [-best], depth + 1)
        return Node(best, yes, no)

    return expand([], 0)


def leaf_cubes(tree):
    """Depth-first list of (cube, leaf status); yes-branch first."""
    out = []

    def walk(node, prefix):
        if isinstance(node, Leaf):
            out.append((tuple(prefix), node.status))
            return
        walk(node.yes, prefix + [node.literal])
        walk(node.no, prefix + [-node.literal])

    walk(tree, [])
    return out


def cubes(tree):
    """Depth-first list of leaf cubes (decision-literal tuples)."""
    return [cube for cube, _ in leaf_cubes(tree)]


def negate_cubes(cube_list):
    """One clause per cube: the complements of its literals."""
    if not cube_list:
        raise ValueError("empty cube list")
    return Formula([tuple(-l for l in cube) for cube in cube_list])


def write_inccnf(formula, cube_list):
    """Incremental CNF: `p inccnf`, the clauses, then one `a ... 0` line per cube."""
    lines = ["p inccnf"]
    for clause in formula.clauses:
        lines.append(" ".join(str(l) for l in clause) + (" 0" if clause else "0"))
    for cube in cube_list:
        lines.append("a " + " ".join(str(l) for l in cube) + (" 0" if cube else "0"))
    return "\n".join(lines) + "\n"


def parse_inccnf(text):
    """Inverse of write_inccnf; returns (Formula, list of cubes)."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("ascii")
    clauses = []
    cube_list = []
    saw_header = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            if stripped.split() != ["p", "inccnf"]:
                raise ValueError("line %d: malformed inccnf header %r" % (lineno, stripped))
            saw_header = True
            continue
        is_cube = stripped.startswith("a ") or stripped == "a"
        body = stripped[1:] if is_cube else stripped
        nums = [int(t) for t in body.split()]
        if not nums or nums[-1] != 0:
            raise ValueError("line %d: missing 0 terminator" % lineno)
        lits = tuple(nums[:-1])
        if is_cube:
            cube_list.append(lits)
        else:
            clauses.append(lits)
    if not saw_header:
        raise ValueError("missing `p inccnf` header")
    return Formula(clauses), cube_list
