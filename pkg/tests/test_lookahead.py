import pytest

from triplesat.cnf import Formula, propagate_clauses
from triplesat.encoder import encode
from triplesat.lookahead import (CUTOFF, CutoffPolicy, HeuristicParams, Leaf,
                                 LookaheadError, MODE_BIN, MODE_PTN, MODE_RND,
                                 MODE_VAR, Node, REFUTED, compute_h, cubes,
                                 leaf_cubes, look_ahead, negate_cubes,
                                 params_for_mode, parse_cutoff, parse_inccnf,
                                 residual_clauses, select_branch, split,
                                 write_inccnf)

from conftest import FIG3_CUBES, brute_sat, random_formula


def test_params_validation():
    with pytest.raises(ValueError):
        HeuristicParams(alpha=0)
    with pytest.raises(ValueError):
        HeuristicParams(alpha=10, beta=5)
    with pytest.raises(ValueError):
        HeuristicParams(iterations=0)


def test_params_presets():
    p = params_for_mode(MODE_PTN)
    assert (p.alpha, p.beta, p.gamma) == (8.0, 550.0, 25.0)
    r = params_for_mode(MODE_RND)
    assert (r.alpha, r.beta, r.gamma) == (0.1, 25.0, 3.3)


def test_parse_cutoff():
    policy = parse_cutoff("bin:3000,vars:3450,depth:20")
    assert policy.min_binaries == 3000
    assert policy.max_free_vars == 3450
    assert policy.depth_limit == 20
    assert parse_cutoff("bin:10").depth_limit == 64
    with pytest.raises(ValueError):
        parse_cutoff("bogus:1")


def test_round_zero_mean_is_one():
    table = compute_h(Formula([(1, 2, 3), (-1, -2, 4)]), {},
                      HeuristicParams(alpha=0.5, beta=10, iterations=1))
    assert table.means[0] == 1.0


def test_h1_clamps_up_to_alpha():
    table = compute_h(Formula([(1, 2, 3)]), {},
                      HeuristicParams(alpha=8, beta=550, gamma=25, iterations=1))
    for lit in (1, 2, 3, -1, -2, -3):
        assert table.values[lit] == 8.0


def test_h1_small_alpha():
    table = compute_h(Formula([(1, 2, 3)]), {},
                      HeuristicParams(alpha=0.1, beta=25, gamma=3.3,
                                      iterations=1))
    for lit in (1, 2, 3):
        assert table.values[lit] == pytest.approx(1.0)
        assert table.values[-lit] == pytest.approx(0.1)


def test_h_clamp_bounds_always_hold(rng):
    for _ in range(50):
        formula = random_formula(rng, max_vars=10, allow_units=False)
        params = HeuristicParams(alpha=0.3, beta=4.0, gamma=2.0, iterations=4)
        table = compute_h(formula, {}, params)
        for value in table.values.values():
            assert params.alpha <= value <= params.beta


def test_h_rejects_long_clauses():
    with pytest.raises(LookaheadError):
        compute_h(Formula([(1, 2, 3, 4)]), {}, HeuristicParams())


def test_look_ahead_counts_new_binary():
    formula = Formula([(1, 2, 3)])
    table = compute_h(formula, {}, HeuristicParams(alpha=0.1, beta=25,
                                                   iterations=1))
    weight, assigned, new_binaries, refuted = look_ahead(formula, {}, -1, table)
    assert not refuted
    assert new_binaries == 1
    assert weight == pytest.approx(table.values[-2] * table.values[-3])


def test_look_ahead_pure_literal():
    formula = Formula([(1, 2, 3)])
    table = compute_h(formula, {}, HeuristicParams())
    weight, _, new_binaries, refuted = look_ahead(formula, {}, 1, table)
    assert (weight, new_binaries, refuted) == (0.0, 0, False)


def test_look_ahead_refuted():
    formula = Formula([(1,), (-1, 2), (-2,)])
    # propagation of 1 chains to a conflict with (-2)
    _, conflict = propagate_clauses(formula.clauses, [1])
    assert conflict
    table = compute_h(Formula([(2, 3)]), {}, HeuristicParams())
    assert look_ahead(formula, {}, 1, table)[3] is True


def test_look_ahead_rejects_assigned_literal():
    formula = Formula([(1, 2)])
    table = compute_h(formula, {}, HeuristicParams())
    with pytest.raises(ValueError):
        look_ahead(formula, {1: True}, 1, table)


def test_select_branch_count_bin():
    formula = Formula([(1, 2, 3), (-1, 2, 3)])
    table = compute_h(formula, {}, HeuristicParams())
    assert select_branch(formula, {}, table, MODE_BIN) == 1


def test_select_branch_tie_break_smallest():
    # fully symmetric: both clauses of the sole triple of encode(5)
    formula = encode(5)
    table = compute_h(formula, {}, HeuristicParams())
    assert select_branch(formula, {}, table, MODE_PTN) == 3


def test_residual_clauses():
    clauses = [(1, 2, 3), (-1, 4), (2, 5)]
    assert residual_clauses(clauses, {1: True}) == [(2, 5)] or \
        residual_clauses(clauses, {1: True}) == [(4,), (2, 5)]
    assert residual_clauses(clauses, {1: False, 2: False}) == [(3,), (5,)]


def test_split_depth_zero():
    tree = split(encode(20), parse_cutoff("depth:0"))
    assert isinstance(tree, Leaf)
    assert cubes(tree) == [()]


def test_split_policy_postcondition_encode100():
    """Cutoff leaves must have at least the threshold of binary clauses and
    their parents fewer (both measured after full propagation)."""
    formula = encode(100)
    tree = split(formula, parse_cutoff("bin:30"))

    def binaries(assumed):
        assign, conflict = propagate_clauses(formula.clauses, list(assumed))
        assert not conflict
        return sum(1 for c in residual_clauses(formula.clauses, assign)
                   if len(c) == 2)

    seen_leaves = 0
    for cube, status in leaf_cubes(tree):
        if status != CUTOFF or not cube:
            continue
        seen_leaves += 1
        assert binaries(cube) >= 30
        assert binaries(cube[:-1]) < 30
    assert seen_leaves > 0


def test_split_cube_exclusivity():
    tree = split(encode(60), parse_cutoff("depth:4"))
    cube_list = cubes(tree)
    assert len(cube_list) > 1
    for i, a in enumerate(cube_list):
        for b in cube_list[i + 1:]:
            assert any(-lit in b for lit in a)


def test_split_deterministic():
    one = split(encode(60), parse_cutoff("depth:4"))
    two = split(encode(60), parse_cutoff("depth:4"))
    assert one == two


def test_split_tautology_small(rng):
    for _ in range(30):
        formula = random_formula(rng, max_vars=8, allow_units=False)
        try:
            tree = split(formula, parse_cutoff("depth:3"))
        except LookaheadError:
            continue  # residual not 3-CNF
        assert not brute_sat(negate_cubes(cubes(tree)))


def test_split_modes_agree_on_coverage():
    formula = encode(60)
    for mode in (MODE_PTN, MODE_RND, MODE_BIN, MODE_VAR):
        tree = split(formula, parse_cutoff("depth:3"), mode)
        assert not brute_sat(negate_cubes(cubes(tree)))


def test_fig3_cube_order(fig3_tree):
    assert cubes(fig3_tree) == FIG3_CUBES


def test_negate_cubes():
    formula = negate_cubes([(5, -3)])
    assert formula.clauses == ((-5, 3),)
    assert negate_cubes([()]).clauses == ((),)
    with pytest.raises(ValueError):
        negate_cubes([])


def test_write_inccnf_fig3(fig3_tree):
    text = write_inccnf(Formula([]), cubes(fig3_tree))
    assert text.splitlines() == [
        "p inccnf",
        "a 5 -3 0",
        "a 5 3 7 0",
        "a 5 3 -7 0",
        "a -5 2 0",
        "a -5 -2 3 -6 0",
        "a -5 -2 3 6 0",
        "a -5 -2 -3 0",
    ]


def test_inccnf_single_empty_cube():
    assert write_inccnf(Formula([]), [()]).splitlines() == ["p inccnf", "a 0"]


def test_inccnf_round_trip(rng):
    for _ in range(50):
        formula = random_formula(rng)
        cube_list = [tuple(rng.sample(range(1, 9), rng.randint(0, 3)))
                     for _ in range(rng.randint(1, 5))]
        again_formula, again_cubes = parse_inccnf(write_inccnf(formula, cube_list))
        assert again_formula.clauses == formula.clauses
        assert again_cubes == cube_list


def test_inccnf_requires_header():
    with pytest.raises(ValueError):
        parse_inccnf("1 2 0\na 1 0\n")
