import pytest

from vogan.classify import noticed_report, partition
from vogan.diagram import make, parse
from vogan.equiv import (
    EquivalenceError,
    applicable_nodes,
    equivalence_class,
    equivalent,
    equivalent_up_to_iso,
    has_property_p,
    move_sequence,
    normalize_p,
    operation_a,
    relabel,
)
from vogan.rootsys import cartan_matrix, constructible_types, diagram_involutions
from vogan.sweep import enumerate_diagrams

FIG2_LEFT = parse("B3 theta=id J=1,2 w=1,0,1")
FIG2_RIGHT = parse("B3 theta=id J=2,3 w=1,0,1")
FIG3 = parse("B5 theta=id J=2,4,5 w=2,0,0,2,0")


def test_applicable_nodes():
    assert applicable_nodes(FIG2_LEFT) == [2]
    assert applicable_nodes(FIG3) == [2, 5]
    assert applicable_nodes(make("B3")) == []


def test_figure2_move():
    assert operation_a(FIG2_LEFT, 2) == FIG2_RIGHT
    assert operation_a(FIG2_RIGHT, 2) == FIG2_LEFT


def test_fig3_moves():
    assert operation_a(FIG3, 2).painted == {1, 2, 3, 4, 5}
    assert operation_a(FIG3, 5) == FIG3


def test_operation_rejects_inapplicable_nodes():
    with pytest.raises(EquivalenceError, match="not in J"):
        operation_a(FIG3, 3)
    with pytest.raises(EquivalenceError, match="weight 0"):
        operation_a(FIG3, 4)


def _all_zero_painted(name, painted):
    d = cartan_matrix(name)
    return make(d, None, painted, (0,) * d.rank)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_b_short_end_is_unchanged(n):
    d = _all_zero_painted(f"B{n}", [n])
    assert operation_a(d, n) == d
    d = _all_zero_painted(f"B{n}", [n - 1, n])
    assert operation_a(d, n) == d


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_c_node_n_minus_1_toggles_only_n_minus_2(n):
    for painted in ([n - 1], [n - 1, n], [n - 2, n - 1], [n - 2, n - 1, n]):
        d = _all_zero_painted(f"C{n}", painted)
        assert set(operation_a(d, n - 1).painted) ^ set(painted) == {n - 2}


def test_f4_node_2_toggles_only_node_1():
    for painted in ([2], [2, 3], [1, 2], [1, 2, 3, 4]):
        d = _all_zero_painted("F4", painted)
        assert set(operation_a(d, 2).painted) ^ set(painted) == {1}


def test_long_nodes_toggle_short_neighbours():
    assert operation_a(_all_zero_painted("B4", [3]), 3).painted == {2, 3, 4}
    assert operation_a(_all_zero_painted("C4", [4]), 4).painted == {3, 4}
    assert operation_a(_all_zero_painted("F4", [3]), 3).painted == {2, 3, 4}


def test_g2_short_node_toggles_long_neighbour():
    # <a2, a1^vee> = -3 is odd, and no G2 exception is listed
    assert operation_a(_all_zero_painted("G2", [1]), 1).painted == {1, 2}
    assert operation_a(_all_zero_painted("G2", [2]), 2).painted == {1, 2}


def test_complex_neighbours_never_toggle():
    d = make("D5", (1, 2, 3, 5, 4), [3], (0, 0, 0, 0, 0))
    assert operation_a(d, 3).painted == {2, 3}
    d = make("E6", (6, 2, 5, 4, 3, 1), [4], (0,) * 6)
    assert operation_a(d, 4).painted == {2, 4}
    d = make("A5", (5, 4, 3, 2, 1), [3], (0,) * 5)
    assert operation_a(d, 3) == d


def test_classes_of_paper_examples():
    cls = equivalence_class(FIG3)
    js = {tuple(sorted(m.painted)) for m in cls.members}
    assert {(2, 4, 5), (1, 2, 3, 4, 5), (1, 3, 5)} <= js
    assert cls.canonical.painted == {1, 2, 3, 4, 5}
    assert cls.noticed
    cls = equivalence_class(FIG2_LEFT)
    assert {FIG2_LEFT, FIG2_RIGHT} <= set(cls.members)
    assert len(equivalence_class(make("C4"))) == 1


def test_equivalent_examples():
    assert equivalent(FIG2_LEFT, FIG2_RIGHT)
    assert equivalent(FIG3, FIG3.with_painted({1, 3, 5}))
    assert not equivalent(FIG3, FIG3.with_painted(()))
    assert not equivalent(FIG3, parse("B5 theta=id J=2,4,5 w=2,0,0,2,2"))


def test_move_sequence_shortest():
    assert move_sequence(FIG2_LEFT, FIG2_RIGHT) == [2]
    assert move_sequence(FIG3, FIG3) == []
    assert move_sequence(FIG3, FIG3.with_painted({1, 3, 5})) == [2, 3]


def test_property_p():
    assert has_property_p(FIG3)
    assert not has_property_p(FIG3.with_painted({1, 2, 3, 4, 5}))
    assert normalize_p(FIG3.with_painted({1, 2, 3, 4, 5})) == FIG3.with_painted({1, 3, 5})
    zero = make("B4")
    assert has_property_p(zero) and normalize_p(zero) == zero


def test_up_to_iso():
    a = make("D4", None, [1], (0, 2, 0, 0))
    b = make("D4", None, [3], (0, 2, 0, 0))
    assert not equivalent(a, b)
    assert equivalent_up_to_iso(a, b)
    assert relabel(a, (3, 2, 1, 4)) == b


SWEEP_TYPES = [t for t in constructible_types(5)]


@pytest.mark.parametrize("t", SWEEP_TYPES, ids=str)
def test_class_invariants(t):
    diagram = cartan_matrix(t)
    for theta in diagram_involutions(diagram):
        seen = set()
        n_fixed = sum(1 for i, x in enumerate(theta, 1) if i == x)
        for d in enumerate_diagrams(t, theta):
            if d in seen:
                continue
            cls = equivalence_class(d)
            seen.update(cls.members)
            assert len(cls) <= 2 ** n_fixed
            assert cls.property_p_members
            verdicts = {noticed_report(m).noticed for m in cls.members}
            assert len(verdicts) == 1
            diffs = {len(partition(m, 1).P_np) - len(partition(m, 1).P_p) for m in cls.members}
            assert len(diffs) == 1
            for m in cls.members:
                assert (m.diagram, m.theta, m.weights) == (d.diagram, d.theta, d.weights)
                for j in applicable_nodes(m):
                    e = operation_a(m, j)
                    assert e in cls
                    assert operation_a(e, j) == m
                    assert all(e.theta(i) == i for i in e.painted)
