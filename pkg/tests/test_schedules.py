"""Schedules, closed forms, generation trees, partition-staircase merge."""

from collections import Counter
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtpark.paths import enumerate_all, stats
from qtpark.qt import ONE, QTPoly, q_int, ratio_eq
from qtpark.schedules import (PartitionBox, delta_merge, delta_merge_equal,
                              generate, ides, insertion_order, inv, maj,
                              pf_closed_form, pref_all_l_closed_form,
                              pref_closed_form, runs, schedule0, schedule_l,
                              shift_multiset)


def brute_poly(n, tau, l):
    out = QTPoly.zero()
    for p in enumerate_all(n):
        s = stats(p)
        if s.diagword == tau and s.deviation == l:
            out = out + QTPoly.monomial(s.dinv, s.area, 1)
    return out


def test_run_decomposition():
    rd = runs((3, 7, 1, 5, 8, 2, 6, 4))
    assert rd.runs == ((3, 7), (1, 5, 8), (2, 6), (4,))
    assert rd.rho == (2, 3, 2, 1)
    assert rd.last_run_length == 1
    assert rd.rho_from_last(0) == 1
    assert rd.rho_from_last(2) == 3
    assert rd.run_index(8) == 1


def test_perm_validation():
    with pytest.raises(ValueError):
        runs((1, 1, 2))
    with pytest.raises(ValueError):
        runs((0, 1))
    with pytest.raises(ValueError):
        runs(())


def test_perm_statistics():
    assert maj((2, 3, 1, 4, 5)) == 2
    assert maj((3, 7, 1, 5, 8, 2, 6, 4)) == 14
    assert inv((3, 1, 2)) == 2
    assert ides((2, 3, 1, 4, 5)) == frozenset({1})


def test_schedule_small_paper_vector():
    tau = (2, 3, 1, 4, 5)
    assert schedule0(tau) == (1, 2, 3, 1, 2)
    w1 = schedule_l(tau, 1)
    assert [w1[c] for c in range(1, 6)] == [2, 2, 1, 1, 2]


def test_schedule_long_paper_vector():
    tau = (3, 7, 1, 5, 8, 2, 6, 4)
    by_tau = {}
    for l in range(4):
        w = schedule_l(tau, l)
        by_tau[l] = [w[c] for c in tau]
    assert by_tau[0] == [2, 2, 2, 2, 2, 1, 1, 1]
    assert by_tau[1] == [2, 2, 2, 2, 2, 2, 1, 1]
    assert by_tau[2] == [2, 2, 3, 2, 1, 2, 2, 1]
    assert by_tau[3] == [2, 1, 2, 2, 2, 2, 2, 1]


def test_schedule_nine_car_vector():
    tau = (3, 4, 5, 8, 1, 2, 6, 7, 9)
    w0 = schedule_l(tau, 0)
    w1 = schedule_l(tau, 1)
    assert [w0[c] for c in tau] == [5, 4, 3, 4, 5, 4, 3, 2, 1]
    assert [w1[c] for c in tau] == [4, 3, 2, 1, 4, 5, 3, 4, 4]


def test_schedule_l_bounds():
    with pytest.raises(ValueError):
        schedule_l((2, 1, 3), 2)
    with pytest.raises(ValueError):
        schedule_l((1, 2, 3), -1)


def test_schedule0_matches_schedule_l_at_zero():
    for n in range(1, 7):
        for tau in permutations(range(1, n + 1)):
            w = schedule_l(tau, 0)
            assert schedule0(tau) == tuple(
                w[c] for c in insertion_order(tau, 0))


def test_insertion_order():
    assert insertion_order((2, 3, 1, 4, 5), 0) == (5, 4, 1, 3, 2)
    assert insertion_order((2, 3, 1, 4, 5), 1) == (3, 2, 1, 4, 5)
    with pytest.raises(ValueError):
        insertion_order((1, 2), 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_closed_forms_equal_brute_force(n):
    for tau in permutations(range(1, n + 1)):
        nruns = len(runs(tau).runs)
        for l in range(nruns):
            assert pref_closed_form(tau, l) == brute_poly(n, tau, l), (tau, l)
        assert pf_closed_form(tau) == brute_poly(n, tau, 0), tau


def test_all_l_quotient():
    for tau in [(2, 3, 1, 4, 5), (3, 1, 2), (1,), (2, 1)]:
        total = QTPoly.zero()
        for l in range(len(runs(tau).runs)):
            total = total + pref_closed_form(tau, l)
        assert ratio_eq(pref_all_l_closed_form(tau), total)


def test_figure_leaf_counts_and_polynomials():
    tau = (2, 3, 1, 4, 5)
    leaves0 = generate(tau, 0)
    leaves1 = generate(tau, 1)
    assert len(leaves0) == 12
    assert len(leaves1) == 8
    poly0 = QTPoly.zero()
    for pf, _ in leaves0:
        s = stats(pf)
        poly0 = poly0 + QTPoly.monomial(s.dinv, s.area, 1)
    poly1 = QTPoly.zero()
    for pf, _ in leaves1:
        s = stats(pf)
        poly1 = poly1 + QTPoly.monomial(s.dinv, s.area, 1)
    t2 = QTPoly.monomial(0, 2, 1)
    onep_q = ONE + QTPoly.q(1)
    assert poly0 == t2 * onep_q * onep_q * q_int(3)
    assert poly1 == t2 * QTPoly.q(3) * onep_q * onep_q * onep_q


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_generate_equals_brute_filter(n):
    for tau in permutations(range(1, n + 1)):
        nruns = len(runs(tau).runs)
        for l in range(nruns):
            got = sorted(pf.f for pf, _ in generate(tau, l))
            want = sorted(p.f for p in enumerate_all(n)
                          if stats(p).diagword == tau
                          and stats(p).deviation == l)
            assert got == want, (tau, l)


def test_generate_trace_lengths():
    for pf, trace in generate((2, 3, 1, 4, 5), 1):
        assert len(trace) == 5
        assert all(v >= 0 for v in trace)


def test_generate_bounds():
    with pytest.raises(ValueError):
        generate((1, 2, 3), 3)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_shift_multiset_exhaustive(n):
    for tau in permutations(range(1, n + 1)):
        r = len(runs(tau).runs) - 1
        for l in range(1, r + 1):
            assert shift_multiset(tau, l), (tau, l)


def test_shift_multiset_counterexample_free_statement():
    # the multiset really changes: it is not just a reordering
    tau = (2, 3, 1, 4, 5)
    m0 = Counter(schedule0(tau))
    m1 = Counter(schedule_l(tau, 1).values())
    assert m0 != m1


def test_shift_multiset_bounds():
    with pytest.raises(ValueError):
        shift_multiset((2, 3, 1, 4, 5), 0)
    with pytest.raises(ValueError):
        shift_multiset((1, 2, 3), 1)


def test_partition_box_validation():
    with pytest.raises(ValueError):
        PartitionBox((3, 1), 2, 3)
    with pytest.raises(ValueError):
        PartitionBox((1, 3, 0), 3, 3)
    with pytest.raises(ValueError):
        PartitionBox((4, 1, 0), 3, 3)


def test_conjugate():
    pb = PartitionBox((3, 3, 2, 1, 0), 4, 5)
    assert pb.conjugate == (4, 3, 2, 0)


def test_delta_merge_worked_example():
    pb = PartitionBox((3, 3, 2, 1, 0), 4, 5)
    lhs, rhs = delta_merge(pb)
    assert lhs == (0, 1, 2, 3, 3, 4, 4, 4, 4)
    assert lhs == rhs


@given(st.integers(1, 8), st.integers(1, 8), st.data())
@settings(max_examples=200)
def test_delta_merge_property(a, b, data):
    lam = tuple(sorted((data.draw(st.integers(0, a)) for _ in range(b)),
                       reverse=True))
    assert delta_merge_equal(PartitionBox(lam, a, b))
