import pytest

from classcover.formula import Formula
from classcover.reduction import augment_abcc, build_bcc
from classcover.verify import (
    BlockedWitness,
    RectWitness,
    check_abcc,
    check_equisat,
    check_gadgets,
    check_lemma1,
    exhaustive_3cnf,
    find_fault,
    inject_fault,
    nas_corpus,
    replay_witness,
)

SAMPLE = [
    Formula.from_ints(3, [[1, -2, -3], [1, -3], [2]]),
    Formula.from_ints(3, [[2, -1, -3], [1, -3], [-2]]),
    Formula.from_ints(2, [[-1, 2]]),
    Formula.from_ints(3, [[-1, 2, 3], [3], [1, -2]]),
]


def test_variables_only_gadgets_pass():
    report = check_gadgets(build_bcc(Formula(3)))
    assert report.passed
    assert [c.name.split()[0] for c in report.checks] == ["R1", "R2", "R3", "R4", "R5"]


def test_center_deletion_breaks_r1_with_four_point_witness():
    inst = build_bcc(Formula(2))
    (center,) = [i for i, r in enumerate(inst.red_roles) if r == ("center", 1)]
    report = inject_fault(inst, center)
    (fail,) = report.failures()
    assert fail.name.startswith("R1")
    assert isinstance(fail.witness, RectWitness) and len(fail.witness.blues) == 4
    assert replay_witness(inst.without_red(center), fail.witness)
    assert not replay_witness(inst, fail.witness)


@pytest.mark.parametrize("side", ["side", "back", "pastC1", "pastC2"])
def test_helping_red_deletions_break_r5(side):
    corpus = SAMPLE + nas_corpus(30, seed=3)
    hit = find_fault(corpus, lambda role: role[:2] == ("helping", "red") and role[3] == side)
    assert hit is not None
    assert hit.check.name.startswith("R5")


def test_corridor_and_cap_deletions_are_covered_twice():
    # every cap and corridor red shares its job with another red, so
    # single deletions leave all predicates intact on this sample
    assert find_fault(SAMPLE, ("cap",)) is None
    assert find_fault(SAMPLE, ("corridor",)) is None


def test_blocked_witness_replay():
    inst = build_bcc(Formula(2))
    w = BlockedWitness((0, 7))
    assert replay_witness(inst, w)
    with pytest.raises(TypeError):
        replay_witness(inst, "nonsense")


def test_lemma1_on_small_cases():
    for f in SAMPLE + [Formula.from_ints(1, [[1], [-1]])]:
        assert check_lemma1(f).passed


def test_equisat_report_notes():
    r = check_equisat(Formula.from_ints(1, [[1]]), Formula.from_ints(1, [[-1]]))
    assert r.passed and r.checks[0].note == "SAT/SAT"
    r = check_equisat(Formula.from_ints(1, [[1]]), Formula.from_ints(1, [[1], [-1]]))
    assert not r.passed


def test_abcc_report_on_small_instance():
    bcc = build_bcc(Formula.from_ints(2, [[1, -2]]))
    report = check_abcc(bcc, augment_abcc(bcc))
    assert report.passed, report.summary()


def test_abcc_fault_injection_removing_a_blocker():
    bcc = build_bcc(Formula.from_ints(2, [[1, -2]]))
    abcc = augment_abcc(bcc)
    from classcover.geom import point_on_segment

    def alone(i):
        p, q = abcc.red_roles[i][1:]
        return sum(point_on_segment(r, abcc.blue[p], abcc.blue[q]) for r in abcc.red) == 1

    first = next(i for i in range(len(bcc.red), len(abcc.red)) if alone(i))
    damaged = abcc.without_red(first)
    report = check_abcc(bcc, damaged, oriented_cap=0)
    fail = next(c for c in report.failures() if c.name.startswith("pairwise"))
    p, q = fail.witness
    assert {p, q} == set(abcc.red_roles[first][1:])
    assert replay_witness(damaged, fail.witness)


def test_corpus_is_seeded_and_mixed():
    a = nas_corpus(20, seed=4)
    assert a == nas_corpus(20, seed=4)
    from classcover.formula import brute_force_sat

    sat = sum(brute_force_sat(f) is not None for f in a)
    assert 5 <= sat <= 15


def test_exhaustive_small_orbits():
    # one variable: {}, {x}, {x,¬x}
    assert len(exhaustive_3cnf(1, 2)) == 3
    two = exhaustive_3cnf(2, 1)
    # {} plus the orbits of x, x∨y, x∨¬y, ... under renaming and flips
    assert [f.to_ints() for f in two][:1] == [[]]
    assert len(two) == 1 + 1 + 1
