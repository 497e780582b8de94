import pytest

from classcover.formula import Assignment, Formula, all_assignments, brute_force_sat, evaluate
from classcover.geom import Point, point_in_open_segment
from classcover.instance import Layout
from classcover.reduction import (
    ReductionError,
    _extreme_order,
    _is_extreme,
    assign_to_cover,
    augment_abcc,
    build_bcc,
    cover_to_assign,
)
from classcover.solver import exact_cover, is_valid_cover, pair_cocover_any, pair_cocover_axis
from classcover.verify import check_gadgets


def roles(inst, kind):
    return [r for r in inst.red_roles if r[0] == kind]


def test_single_variable_counts():
    inst = build_bcc(Formula.from_ints(1, [[1]]))
    assert len(inst.blue) == 5 and len(inst.red) == 9
    assert inst.blue[inst.blues_with("equiv", "blue")[0]] == Point(0, 8)


def test_negative_equivalence_point_on_lower_line():
    inst = build_bcc(Formula.from_ints(1, [[-1]]))
    assert inst.blue[inst.blues_with("equiv", "blue")[0]] == Point(8, 0)


def test_size2_clause_point():
    inst = build_bcc(Formula.from_ints(2, [[1, -2]]))
    assert len(inst.blue) == 9
    (p,) = inst.blues_with("clause", 0, "P")
    ax1, ay2 = inst.anchors[1][0], inst.anchors[2][1]
    assert inst.blue[p] == Point(ax1, ay2)
    assert len(roles(inst, "corridor")) == 4


def test_variables_only_layout():
    inst = build_bcc(Formula(2))
    assert len(inst.blue) == 8 and len(inst.red) == 18
    assert inst.anchors == {1: (0, 0), 2: (128, 128)}


def test_rejects_non_nas_and_repeats():
    with pytest.raises(ReductionError, match="condition 3"):
        build_bcc(Formula.from_ints(2, [[1, 2]]))
    with pytest.raises(ReductionError, match="repeats"):
        build_bcc(Formula.from_ints(2, [[1, -1, 2]]))


def test_layout_override_scales_geometry():
    f = Formula.from_ints(3, [[1, -2, -3], [2]])
    a = build_bcc(f)
    b = build_bcc(f, Layout(pitch=256, side=32, cap=4, helping=6, corridor=8, guard=8))
    assert [p.x * 2 for p in a.blue] == [p.x for p in b.blue]
    assert check_gadgets(b).passed


@pytest.mark.parametrize("triples", [[(2, 1, 3)], [(1, 2, 3), (2, 3, 1)], [(3, 1, 2), (1, 2, 4), (2, 4, 3)]])
def test_extreme_order(triples):
    n = max(max(t) for t in triples)
    order = _extreme_order(n, triples)
    assert sorted(order) == list(range(1, n + 1))
    assert all(_is_extreme(order, t) for t in triples)


def test_lone_literal_between_the_others_still_builds():
    # x2 positive sits between x1 and x3 in the default order
    inst = build_bcc(Formula.from_ints(3, [[2, -1, -3]]))
    assert check_gadgets(inst).passed


@pytest.mark.parametrize(
    "clauses",
    [[[1, -2, -3]], [[-1, 2, 3]], [[1, -2], [2, -3], [3, -1]], [[1, -2, -3], [-1], [2]], [[2, -1, -3], [-2, 1, 3]]],
)
def test_assignment_round_trip(clauses):
    f = Formula.from_ints(3, clauses)
    inst = build_bcc(f)
    target = 2 * inst.n + inst.m
    for a in all_assignments(3):
        if not evaluate(f, a):
            continue
        cover = assign_to_cover(inst, a)
        assert is_valid_cover(inst, cover) and len(cover) == target
        assert cover_to_assign(inst, cover) == a


def test_unsat_costs_more():
    f = Formula.from_ints(3, [[1, -2, -3], [-1], [2], [3]])
    assert brute_force_sat(f) is None
    _, stats = exact_cover(build_bcc(f))
    assert stats.optimum > 2 * 3 + 1


def test_cover_to_assign_rejects_invalid_cover():
    inst = build_bcc(Formula.from_ints(1, [[1]]))
    from classcover.instance import Cover

    with pytest.raises(ValueError):
        cover_to_assign(inst, Cover([]))


def test_cover_to_assign_from_solver():
    f = Formula.from_ints(3, [[1, -2], [2, -3], [3]])
    inst = build_bcc(f)
    cover, stats = exact_cover(inst)
    assert stats.optimum == 2 * 3
    assert evaluate(f, cover_to_assign(inst, cover))


def test_augment_blocks_exactly_the_non_axis_pairs():
    inst = build_bcc(Formula.from_ints(2, [[1, -2], [2]]))
    out = augment_abcc(inst)
    assert out.blue == inst.blue and out.red[: len(inst.red)] == inst.red
    nb = len(inst.blue)
    for p in range(nb):
        for q in range(p + 1, nb):
            assert pair_cocover_any(out, p, q) == pair_cocover_axis(inst, p, q)
    for r, role in zip(out.red[len(inst.red):], out.red_roles[len(inst.red):]):
        assert role[0] == "blocker"
        assert point_in_open_segment(r, inst.blue[role[1]], inst.blue[role[2]])
    _, before = exact_cover(inst)
    _, after = exact_cover(out)
    assert before.optimum == after.optimum
