import pytest

from triplesat import drat
from triplesat.cdcl import (INDETERMINATE, SAT, UNSAT, Solver,
                            arithmetic_witness_check, backbone, is_pythagorean,
                            luby, solve, solve_incremental)
from triplesat.cnf import Formula, SATISFIED, evaluate

from conftest import ap3_formula, brute_force, brute_sat, random_formula


def all_models(formula):
    """Every total assignment over occurring variables satisfying the formula."""
    variables = sorted({abs(l) for c in formula.clauses for l in c})
    models = []
    for mask in range(2 ** len(variables)):
        assign = {v: bool(mask >> i & 1) for i, v in enumerate(variables)}
        if evaluate(formula, assign) == SATISFIED:
            models.append(assign)
    return models


def test_luby_sequence():
    assert [luby(i) for i in range(1, 16)] == \
        [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]


def test_trivial_sat():
    result = solve(Formula([(1, 2)]))
    assert result.verdict == SAT
    assert evaluate(Formula([(1, 2)]), result.model) == SATISFIED


def test_fig1_unsat_with_proof(fig1_formula):
    proof = []
    result = solve(fig1_formula, proof=proof)
    assert result.verdict == UNSAT
    assert proof[-1] == ("a", ())
    assert drat.check_proof(fig1_formula, proof, refutation=True)


def test_empty_clause_input():
    assert solve(Formula([()])).verdict == UNSAT


def test_conflict_budget_indeterminate():
    formula = ap3_formula(9)
    result = solve(formula, conflict_budget=1)
    assert result.verdict == INDETERMINATE
    # and without the budget the instance resolves
    assert solve(formula).verdict == UNSAT


def test_verdicts_match_brute_force(rng):
    """Smaller companion of the acceptance-scale oracle run, with proof
    self-checking switched on."""
    for _ in range(150):
        formula = random_formula(rng, max_vars=9)
        proof = []
        result = solve(formula, proof=proof, self_check=True)
        expected = brute_sat(formula)
        if expected:
            assert result.verdict == SAT
            assert evaluate(formula, result.model) == SATISFIED
        else:
            assert result.verdict == UNSAT
            assert drat.check_proof(formula, proof, refutation=True)


def test_solve_under_assumptions():
    formula = Formula([(1, 2), (-1, 2)])
    solver = Solver(formula)
    assert solver.solve(assumptions=[-2]).verdict == UNSAT
    assert solver.ok  # only refuted under the cube, not globally
    result = solver.solve(assumptions=[2])
    assert result.verdict == SAT
    assert result.model[2] is True


def test_assumptions_not_emitted():
    proof = []
    solver = Solver(Formula([(1, 2), (3, 4)]), proof=proof)
    assert solver.solve(assumptions=[1, 3]).verdict == SAT
    assert proof == []


def test_incremental_fig1(fig1_formula):
    proof = []
    results = solve_incremental(fig1_formula, [(1,), (-1,)], proof=proof)
    assert [r.verdict for r in results] == [UNSAT, UNSAT]
    taut_proof = []
    assert solve(Formula([(-1,), (1,)]), proof=taut_proof).verdict == UNSAT
    merged = drat.merge_proofs([], [proof], taut_proof)
    assert drat.check_proof(fig1_formula, merged, refutation=True)


def test_incremental_empty_cube_list(fig1_formula):
    assert solve_incremental(fig1_formula, []) == []


def test_incremental_matches_fresh_solvers(rng):
    for _ in range(100):
        formula = random_formula(rng, max_vars=8, allow_units=False)
        cube_list = [(1,), (-1, 2), (-1, -2)]
        incremental = [r.verdict for r in solve_incremental(formula, cube_list)]
        fresh = []
        for cube in cube_list:
            restricted = Formula(list(formula.clauses) + [(l,) for l in cube],
                                 formula.num_vars)
            fresh.append(solve(restricted).verdict)
        assert incremental == fresh


def test_incremental_budget_marks_cube_and_continues():
    formula = ap3_formula(9)
    results = solve_incremental(formula, [(1,), ()], conflict_budget=1)
    assert results[0].verdict == INDETERMINATE
    assert len(results) == 2


def test_backbone_unit():
    assert backbone(Formula([(1,), (1, 2)])) == {1}


def test_backbone_derived():
    assert backbone(Formula([(1, 2), (1, -2)])) == {1}


def test_backbone_unsat_rejected(fig1_formula):
    with pytest.raises(ValueError):
        backbone(fig1_formula)


def test_backbone_matches_enumeration(rng):
    checked = 0
    for _ in range(150):
        formula = random_formula(rng, max_vars=7)
        models = all_models(formula)
        if not models:
            continue
        expected = set.intersection(
            *[{v if m[v] else -v for v in m} for m in models])
        assert backbone(formula) == expected
        checked += 1
    assert checked > 30


def test_is_pythagorean():
    assert is_pythagorean(5180, 5865, 7825)
    assert is_pythagorean(625, 7800, 7825)
    assert not is_pythagorean(3, 4, 6)


def test_arithmetic_witness():
    assert arithmetic_witness_check()


def test_statistics_populated(fig1_formula):
    result = solve(fig1_formula)
    assert result.conflicts >= 1
    assert result.propagations >= 1
