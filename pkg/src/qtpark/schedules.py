"""Run structure of diagonal words, schedule numbers, and closed forms.

A permutation tau splits into maximal increasing runs.  Reading the run
lengths from the right gives rho_0 (last run), rho_1, and so on; the
number of runs bounds the admissible deviations.

The 0-schedule lists a weight for each car in right-to-left insertion
order: w_i = i while i stays within the last run, and afterwards the
weight of car c = tau_{n+1-i} counts the elements of c's run larger
than c plus the elements of the next run to the right smaller than c.
The l-schedule assigns weights per car instead: cars in the last l runs
count smaller elements of their own run plus larger elements of the
previous run, cars in the (l+1)-st run from the end count 1 plus the
elements strictly to their right in that run, and all earlier cars keep
the 0-schedule rule.

These weights are choice counts for an insertion tree: building up a
labeled path car by car, car c can be placed in exactly w(c) spots, and
the spots raise the pair count dinv by 0, 1, ..., w(c)-1.  Summing
t^area q^dinv over the leaves therefore factors, giving

    t^maj(tau) q^(rho_0+...+rho_{l-1}) prod_c [w(c)]_q

over the preference functions with diagonal word tau and deviation l,
and summing over all deviations collapses to a single quotient
t^maj [n]_q / [k]_q times the 0-schedule product, k the last-run
length.  generate() materializes the tree and re-derives every leaf's
statistics as a self-check; the closed forms are computed directly from
the weights.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import prod
from typing import Dict, Iterator, List, Sequence, Tuple

from .paths import PrefFunc, stats
from .qt import ONE, QTPoly, QTRatio, q_int, ratio_eq

Perm = Tuple[int, ...]


def _as_perm(tau: Sequence[int]) -> Perm:
    t = tuple(int(v) for v in tau)
    if not t or sorted(t) != list(range(1, len(t) + 1)):
        raise ValueError(f"not a permutation of 1..n: {t!r}")
    return t


@dataclass(frozen=True)
class RunDecomposition:
    """Maximal increasing runs of a permutation, leftmost run first.

    rho lists the run lengths left to right, so rho[-1] is the length of
    the last run; rho_from_last(j) indexes from the right end, matching
    the rho_j notation of the closed forms.
    """

    tau: Perm
    runs: Tuple[Tuple[int, ...], ...]

    @property
    def rho(self) -> Tuple[int, ...]:
        return tuple(len(run) for run in self.runs)

    def rho_from_last(self, j: int) -> int:
        if not 0 <= j < len(self.runs):
            raise ValueError(f"run index {j} out of range")
        return len(self.runs[-1 - j])

    @property
    def last_run_length(self) -> int:
        return len(self.runs[-1])

    def run_index(self, car: int) -> int:
        """0-based index, from the left, of the run containing car."""
        for i, run in enumerate(self.runs):
            if car in run:
                return i
        raise ValueError(f"car {car} not in permutation {self.tau}")

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        return iter(self.runs)

    def __len__(self) -> int:
        return len(self.runs)


def runs(tau: Sequence[int]) -> RunDecomposition:
    t = _as_perm(tau)
    blocks: List[List[int]] = [[t[0]]]
    for v in t[1:]:
        if v > blocks[-1][-1]:
            blocks[-1].append(v)
        else:
            blocks.append([v])
    return RunDecomposition(t, tuple(tuple(b) for b in blocks))


def maj(tau: Sequence[int]) -> int:
    """Sum of the descent positions of tau."""
    t = _as_perm(tau)
    return sum(i for i in range(1, len(t)) if t[i - 1] > t[i])


def inv(pi: Sequence[int]) -> int:
    """Number of inversions of pi."""
    t = _as_perm(pi)
    return sum(1 for i in range(len(t)) for j in range(i + 1, len(t))
               if t[i] > t[j])


def ides(pi: Sequence[int]) -> frozenset:
    """{i : i+1 appears before i in pi}, the descent set of the inverse."""
    t = _as_perm(pi)
    pos = {v: i for i, v in enumerate(t)}
    return frozenset(i for i in range(1, len(t)) if pos[i + 1] < pos[i])


def schedule0(tau: Sequence[int]) -> Tuple[int, ...]:
    """(w_1, ..., w_n) with w_i the weight of car tau_{n+1-i}."""
    rd = runs(tau)
    t = rd.tau
    n = len(t)
    k = rd.last_run_length
    w: List[int] = []
    for i in range(1, n + 1):
        if i <= k:
            w.append(i)
            continue
        c = t[n - i]
        ri = rd.run_index(c)
        own = rd.runs[ri]
        nxt = rd.runs[ri + 1]
        w.append(sum(1 for y in own if y > c) + sum(1 for y in nxt if y < c))
    return tuple(w)


def schedule_l(tau: Sequence[int], l: int) -> Dict[int, int]:
    """Mapping car -> w^(l)(car); needs at least l+1 runs."""
    rd = runs(tau)
    nruns = len(rd.runs)
    if not 0 <= l < nruns:
        raise ValueError(
            f"deviation {l} needs at least {l + 1} runs; "
            f"{rd.tau} has {nruns}")
    w: Dict[int, int] = {}
    for ri, run in enumerate(rd.runs):
        from_last = nruns - 1 - ri
        for p, c in enumerate(run):
            if from_last < l:
                prev = rd.runs[ri - 1]
                w[c] = (sum(1 for y in run if y < c)
                        + sum(1 for y in prev if y > c))
            elif from_last == l:
                w[c] = len(run) - p
            else:
                nxt = rd.runs[ri + 1]
                w[c] = (sum(1 for y in run if y > c)
                        + sum(1 for y in nxt if y < c))
    return w


def pf_closed_form(tau: Sequence[int]) -> QTPoly:
    """t^maj(tau) prod [w_i]_q: the (area, dinv) sum over parking
    functions with diagonal word tau."""
    rd = runs(tau)
    out = QTPoly.t(maj(rd.tau))
    for wi in schedule0(rd.tau):
        out = out * q_int(wi)
    return out


def pref_closed_form(tau: Sequence[int], l: int) -> QTPoly:
    """t^maj q^(rho_0+...+rho_{l-1}) prod_c [w^(l)(c)]_q: the sum over
    preference functions with diagonal word tau and deviation l."""
    rd = runs(tau)
    w = schedule_l(rd.tau, l)
    shift = sum(rd.rho_from_last(j) for j in range(l))
    out = QTPoly.monomial(shift, maj(rd.tau), 1)
    for c in sorted(w):
        out = out * q_int(w[c])
    return out


def pref_all_l_closed_form(tau: Sequence[int]) -> QTRatio:
    """t^maj [n]_q/[k]_q prod [w_i]_q, summed over every deviation.

    The return value is certified against the sum of the per-deviation
    closed forms, which also proves the quotient is a polynomial.
    """
    rd = runs(tau)
    n = len(rd.tau)
    num = QTPoly.t(maj(rd.tau)) * q_int(n)
    for wi in schedule0(rd.tau):
        num = num * q_int(wi)
    ratio = QTRatio(num, q_int(rd.last_run_length))
    total = QTPoly.zero()
    for l in range(len(rd.runs)):
        total = total + pref_closed_form(rd.tau, l)
    if not ratio_eq(ratio, total):
        raise AssertionError(
            f"schedule quotient disagrees with deviation sum for {rd.tau}")
    return ratio


def shift_multiset(tau: Sequence[int], l: int) -> bool:
    """Whether {w^(l)(c)} equals {w_i} with one rho_0 swapped for rho_l."""
    rd = runs(tau)
    r = len(rd.runs) - 1
    if not 1 <= l <= r:
        raise ValueError(f"l must lie in 1..{r}, got {l}")
    predicted = Counter(schedule0(rd.tau))
    predicted[rd.rho_from_last(l)] += 1
    rho0 = rd.rho_from_last(0)
    if predicted[rho0] == 0:
        return False
    predicted[rho0] -= 1
    return +predicted == Counter(schedule_l(rd.tau, l).values())


@dataclass(frozen=True)
class PartitionBox:
    """A partition with exactly b parts (zeros allowed), parts <= a."""

    lam: Tuple[int, ...]
    a: int
    b: int

    def __post_init__(self):
        lam = tuple(int(v) for v in self.lam)
        object.__setattr__(self, "lam", lam)
        if self.a < 1 or self.b < 1:
            raise ValueError("box dimensions must be positive")
        if len(lam) != self.b:
            raise ValueError(f"lambda must have exactly {self.b} parts")
        if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
            raise ValueError("parts must be weakly decreasing")
        if lam[-1] < 0 or lam[0] > self.a:
            raise ValueError(f"parts must lie in 0..{self.a}")

    @property
    def conjugate(self) -> Tuple[int, ...]:
        """Column lengths, padded with zeros to exactly a parts."""
        return tuple(sum(1 for v in self.lam if v >= j)
                     for j in range(1, self.a + 1))


def delta_merge(pb: PartitionBox) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Sorted entries of (lam + delta_b) ++ delta_a and of
    (lam' + delta_a) ++ delta_b; the i-th part of a sum is part_i + (i-1)."""
    left = [v + i for i, v in enumerate(pb.lam)] + list(range(pb.a))
    right = [v + i for i, v in enumerate(pb.conjugate)] + list(range(pb.b))
    return tuple(sorted(left)), tuple(sorted(right))


def delta_merge_equal(pb: PartitionBox) -> bool:
    lhs, rhs = delta_merge(pb)
    return lhs == rhs


def insertion_order(tau: Sequence[int], l: int = 0) -> Tuple[int, ...]:
    """Car order used by generate: the first (run count - l) runs
    flattened and reversed, then the last l runs left to right.

    At l = 0 this is just tau read backwards.
    """
    rd = runs(tau)
    nruns = len(rd.runs)
    if not 0 <= l < nruns:
        raise ValueError(
            f"deviation {l} needs at least {l + 1} runs; "
            f"{rd.tau} has {nruns}")
    head = [c for run in rd.runs[:nruns - l] for c in run][::-1]
    tail = [c for run in rd.runs[nruns - l:] for c in run]
    return tuple(head + tail)


def generate(tau: Sequence[int],
             l: int) -> List[Tuple[PrefFunc, Tuple[int, ...]]]:
    """All preference functions with diagonal word tau and deviation l,
    each paired with its per-insertion dinv increment trace.

    The tree inserts cars of the first (run count - l) runs right to
    left, then cars of the last l runs left to right.  A car's diagonal
    is fixed by its run; the mutable state is the column word (cars
    listed bottom row to top).  Insertion spots sit directly above an
    anchor car in the first phase and directly below one in the second:
    anchors are the smaller cars of the next run plus the already-placed
    cars of c's own run (first phase; cars of the run placed first may
    also start a new bottom row), or the larger cars of the previous run
    plus the placed cars of c's own run (second phase).  Each insertion
    is checked to offer exactly w^(l)(c) spots whose dinv increments,
    scanning spots by landing column (descending in the first phase,
    ascending in the second), are 0, 1, ..., w^(l)(c)-1.

    Every leaf is re-measured from scratch: its diagonal word, deviation,
    area (= maj tau) and dinv (= increments + cars below the main
    diagonal) must agree with the tree bookkeeping.
    """
    rd = runs(tau)
    nruns = len(rd.runs)
    n = len(rd.tau)
    if not 0 <= l < nruns:
        raise ValueError(
            f"deviation {l} needs at least {l + 1} runs; "
            f"{rd.tau} has {nruns}")
    weights = schedule_l(rd.tau, l)
    maj_tau = maj(rd.tau)
    baseline = sum(rd.rho_from_last(j) for j in range(l))

    run_of: Dict[int, int] = {}
    diag_of: Dict[int, int] = {}
    for ri, run in enumerate(rd.runs):
        for c in run:
            run_of[c] = ri
            diag_of[c] = (nruns - 1 - ri) - l

    order = list(insertion_order(rd.tau, l))
    n_first = n - sum(len(r) for r in rd.runs[nruns - l:])

    def column(word: Sequence[int], p: int) -> int:
        return p + 1 - diag_of[word[p]]

    def assert_valid(word: Sequence[int]) -> None:
        cols = [column(word, p) for p in range(len(word))]
        for p, col in enumerate(cols):
            assert 1 <= col <= n, (word, cols)
            if p:
                assert col > cols[p - 1] or (
                    col == cols[p - 1] and word[p] > word[p - 1]), (word, cols)

    def pair_count(word: Sequence[int]) -> int:
        """Primary + secondary dinv pairs among the placed cars."""
        placed = [(c, diag_of[c], column(word, p))
                  for p, c in enumerate(word)]
        placed.sort()
        total = 0
        for i, (_, da, ca) in enumerate(placed):
            for _, db, cb in placed[i + 1:]:
                if da == db and ca < cb:
                    total += 1
                elif da == db - 1 and ca > cb:
                    total += 1
        return total

    out: List[Tuple[PrefFunc, Tuple[int, ...]]] = []

    def expand(i: int, word: List[int], trace: List[int], pairs: int) -> None:
        if i == n:
            f = [0] * n
            for p, c in enumerate(word):
                f[c - 1] = column(word, p)
            pf = PrefFunc(tuple(f))
            rec = stats(pf)
            assert rec.diagword == rd.tau and rec.deviation == l, pf
            assert rec.area == maj_tau, pf
            assert rec.dinv == baseline + sum(trace), (pf, trace)
            out.append((pf, tuple(trace)))
            return
        c = order[i]
        in_second = i >= n_first
        ri = run_of[c]
        slots: List[int] = []
        if not in_second:
            if ri == nruns - l - 1:
                slots.append(0)
                for j, y in enumerate(word):
                    if run_of[y] == ri:
                        slots.append(j + 1)
            else:
                nxt = rd.runs[ri + 1]
                for j, y in enumerate(word):
                    if run_of[y] == ri or (y in nxt and y < c):
                        slots.append(j + 1)
        else:
            prev = rd.runs[ri - 1]
            for j, y in enumerate(word):
                if run_of[y] == ri or (y in prev and y > c):
                    slots.append(j)
        assert len(slots) == weights[c], (c, slots, weights[c])
        children = []
        for s in slots:
            child = word[:s] + [c] + word[s:]
            assert_valid(child)
            gained = pair_count(child) - pairs
            children.append((column(child, s), gained, child))
        children.sort(key=lambda ch: -ch[0] if not in_second else ch[0])
        assert [g for _, g, _ in children] == list(range(len(children))), \
            (c, children)
        for _, gained, child in children:
            trace.append(gained)
            expand(i + 1, child, trace, pairs + gained)
            trace.pop()

    expand(0, [], [], 0)
    assert len(out) == prod(weights.values())
    assert len({pf.f for pf, _ in out}) == len(out)
    out.sort(key=lambda item: item[0].f)
    return out
