"""Exit criteria, one test per criterion.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints a
PASS/FAIL line per criterion.
"""

import time

import pytest

from oracles import subdiagram_node_condition
from vogan import classify, rootsys
from vogan.classify import (
    gamma_sum_witness,
    node_supports_g2p,
    noticed_report,
    partition,
    theorem55_check,
)
from vogan.diagram import make, parse
from vogan.equiv import applicable_nodes, equivalence_class, operation_a
from vogan.rootsys import (
    cartan_matrix,
    constructible_types,
    diagram_involutions,
    highest_root,
    positive_roots,
)
from vogan.sweep import classify_all, enumerate_diagrams

criterion = pytest.mark.criterion


def _clear_caches():
    for fn in (rootsys.cartan_matrix, rootsys.positive_roots, rootsys.diagram_automorphisms,
               rootsys.diagram_involutions, classify._theta_data):
        fn.cache_clear()


@criterion("1  Example (a): B3 lhs=3 rhs=1 not noticed, node 1 fails, < 1 ms")
def test_example_a():
    text = "B3 theta=id J=1,2 w=1,0,1"
    d = parse(text)
    best = float("inf")
    for _ in range(5):
        _clear_caches()
        d = parse(text)
        t0 = time.perf_counter()
        rep = noticed_report(d)
        node1 = node_supports_g2p(d, 1)
        best = min(best, time.perf_counter() - t0)
    assert (rep.lhs, rep.rhs, rep.noticed) == (3, 1, False)
    assert rep.lhs_terms() == (3, 0, 0, 0)
    assert set(rep.P_p2) | {r for pair in rep.K2 for r in pair} == {(0, 1, 2)}
    assert node1 == (False, None)
    assert best < 1e-3, f"{best * 1e3:.3f} ms"


@criterion("2  Example (b): D6 lhs=11 rhs=6, P_p^(2) six roots, theorem55 (true, true)")
def test_example_b():
    d = parse("D6 theta=1,2,3,4,6,5 J=1,4 w=2,0,0,0,1,1")
    rep = noticed_report(d)
    assert (rep.lhs, rep.rhs, rep.noticed) == (11, 6, False)
    assert set(partition(d, 2).P_p) == {
        (1, 0, 0, 0, 0, 0), (1, 1, 0, 0, 0, 0), (1, 1, 1, 0, 0, 0),
        (0, 0, 0, 1, 1, 1), (0, 0, 1, 1, 1, 1), (0, 1, 1, 1, 1, 1),
    }
    assert len(partition(d, 2).P_p) == 6
    assert theorem55_check(d) == (True, True)


@criterion("3  Example (c): B5 lhs=rhs=7 noticed, P_p^(2) seven roots, class members")
def test_example_c():
    d = parse("B5 theta=id J=2,4,5 w=2,0,0,2,0")
    rep = noticed_report(d)
    assert (rep.lhs, rep.rhs, rep.noticed) == (7, 7, True)
    assert set(partition(d, 2).P_p) == {
        (1, 1, 0, 0, 0), (1, 1, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 1, 2),
        (0, 0, 1, 1, 0), (0, 1, 1, 1, 1), (0, 0, 1, 1, 2),
    }
    assert len(partition(d, 2).P_p) == 7
    painted = {frozenset(m.painted) for m in equivalence_class(d).members}
    assert frozenset({1, 2, 3, 4, 5}) in painted and frozenset({1, 3, 5}) in painted


@criterion("4  Figure 2: operation (A) at node 2 maps J={1,2} to J={2,3} and back")
def test_figure2():
    left = parse("B3 theta=id J=1,2 w=1,0,1")
    right = parse("B3 theta=id J=2,3 w=1,0,1")
    assert operation_a(left, 2) == right
    assert operation_a(right, 2) == left


@criterion("5  Exceptions: B_n j=n fixed, C_n j=n-1 toggles n-2, F4 j=2 toggles 1 (n <= 6)")
def test_exception_rules():
    import itertools

    for family, lo in (("B", 2), ("C", 3)):
        for n in range(lo, 7):
            diagram = cartan_matrix(f"{family}{n}")
            j = n if family == "B" else n - 1
            others = [i for i in range(1, n + 1) if i != j]
            for r in range(len(others) + 1):
                for rest in itertools.combinations(others, r):
                    d = make(diagram, None, (j, *rest), (0,) * n)
                    changed = set(operation_a(d, j).painted) ^ set(d.painted)
                    assert changed == (set() if family == "B" else {n - 2})
    diagram = cartan_matrix("F4")
    for r in range(4):
        for rest in itertools.combinations([1, 3, 4], r):
            d = make(diagram, None, (2, *rest), (0,) * 4)
            assert set(operation_a(d, 2).painted) ^ set(d.painted) == {1}


CLOSED = {"A": lambda n: n * (n + 1) // 2, "B": lambda n: n * n, "C": lambda n: n * n,
          "D": lambda n: n * (n - 1), "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
          "F": lambda n: 24, "G": lambda n: 6}


@criterion("6  Root counts match closed forms for every type of rank <= 8, < 5 s")
def test_root_counts():
    _clear_caches()
    t0 = time.perf_counter()
    for t in constructible_types(8):
        assert len(positive_roots(cartan_matrix(t))) == CLOSED[t.family](t.rank), t
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0, f"{elapsed:.2f} s"


SWEEP = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "B5", "C3", "C4", "D4", "D5", "G2", "F4"]


@criterion("7  Property suite over full sweeps: zero violations, < 60 s")
def test_property_suite():
    t0 = time.perf_counter()
    violations = []
    for name in SWEEP:
        diagram = cartan_matrix(name)
        for theta in diagram_involutions(diagram):
            for d in enumerate_diagrams(diagram, theta):
                classes = classify.classify_roots(d)
                for j in range(4):
                    p = partition(d, j)
                    n = sum(1 for rc in classes if rc.weight == j)
                    if len(p.P_np) + len(p.P_p) + 2 * len(p.K) != n:
                        violations.append(("partition", str(d), j))
                for j in applicable_nodes(d):
                    if operation_a(operation_a(d, j), j) != d:
                        violations.append(("involutive", str(d), j))
            cat = classify_all(diagram, theta, full=True)
            for c in cat.classes:
                verdicts = {noticed_report(m).noticed for m in c.members}
                if verdicts != {c.noticed}:
                    violations.append(("verdict", str(c.canonical)))
                if c.noticed and theorem55_check(c.canonical) != (True, True):
                    violations.append(("theorem55", str(c.canonical)))
                if not any(_has_p(m) for m in c.members):
                    violations.append(("property P", str(c.canonical)))
    elapsed = time.perf_counter() - t0
    assert violations == []
    assert elapsed < 60.0, f"{elapsed:.1f} s"


def _has_p(d):
    from vogan.equiv import has_property_p
    return has_property_p(d)


@criterion("8  Node predicate agrees with brute-force subdiagram search, rank <= 4")
def test_lemma_oracle():
    disagreements = []
    for t in constructible_types(4):
        diagram = cartan_matrix(t)
        for theta in diagram_involutions(diagram):
            for d in enumerate_diagrams(diagram, theta):
                for j in diagram.nodes:
                    fast = node_supports_g2p(d, j)[0]
                    slow = subdiagram_node_condition(
                        diagram.cartan, theta, tuple(d.painted), d.weights, j
                    )
                    if fast != slow:
                        disagreements.append((str(d), j, fast, slow))
    assert disagreements == []


@criterion("9  gamma+theta(gamma): found for A3 fixed-point-free theta, absent elsewhere (rank <= 5)")
def test_gamma_coverage():
    a3 = cartan_matrix("A3")
    free = [th for th in diagram_involutions(a3) if all(th[i - 1] != i for i in a3.nodes)]
    problems = []
    if not free:
        problems.append("A3 has no fixed-point-free involution")
    for th in free:
        if gamma_sum_witness(make(a3, th), highest_root(a3)) is None:
            problems.append(f"A3 theta={th}: no decomposition of the highest root")
    for t in constructible_types(5):
        diagram = cartan_matrix(t)
        for th in diagram_involutions(diagram):
            if str(t) == "A3" and th in free:
                continue
            d = make(diagram, th)
            found = [r for r in positive_roots(diagram) if gamma_sum_witness(d, r) is not None]
            if found:
                problems.append(f"{t} theta={th}: decompositions for {found}")
    assert problems == []
