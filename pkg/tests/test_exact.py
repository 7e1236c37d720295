import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_J, brute_witnesses
from schurgen.core import GroundColoring, verify_witness
from schurgen.errors import BudgetExceeded, PreconditionError
from schurgen.exact import (
    SearchProblem,
    bound_J,
    bound_chain,
    canonical_colorings,
    canonical_form,
    compute_J,
    extremal_certificate,
    find_witness,
    is_witness_free,
    schur_number,
    witness_with_total,
)

# frozen from tests/oracles.py::brute_J (all t**N colorings, plain witness scan)
BRUTE_J = {(1, 1, False): 1, (1, 4, False): 4, (2, 1, False): 1, (2, 2, False): 5, (2, 2, True): 9}


@given(st.integers(1, 3), st.integers(1, 16), st.integers(1, 3), st.booleans(), st.data())
@settings(max_examples=300)
def test_find_witness_agrees_with_brute_force(t, N, n, distinct, data):
    assign = tuple(data.draw(st.lists(st.integers(1, t), min_size=N, max_size=N)))
    gc = GroundColoring(t, assign)
    brute = brute_witnesses(gc, n, distinct)
    got = find_witness(gc, n, distinct)
    assert (got is None) == (not brute)
    if got is not None:
        assert verify_witness(gc, got)
        if distinct:
            assert len(set(got.a)) == n
        best_total = min(sum(a) for a, _ in brute)
        assert sum(got.a) == best_total


def test_witness_with_total_is_lexicographically_least():
    mask = sum(1 << x for x in range(1, 21))
    assert witness_with_total(12, mask, 3) == (1, 1, 10)
    assert witness_with_total(12, mask, 3, distinct=True) == (1, 2, 9)
    assert witness_with_total(2, mask, 3) is None


def test_is_witness_free_examples(schur_2_coloring):
    assert is_witness_free(schur_2_coloring, 2)
    for n in range(1, 6):
        assert not is_witness_free(GroundColoring(1, (1,) * n), n)
    # class 1 = {1, 4, 5}: 1 + 4 = 5 is a witness
    assert not is_witness_free(GroundColoring(2, (1, 2, 2, 1, 1)), 2)
    assert brute_witnesses(GroundColoring(2, (1, 2, 2, 1, 1)), 2)


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_J_of_length_one(t):
    out = compute_J(SearchProblem(t, 1))
    assert out.value == 1 and out.extremal is None


@pytest.mark.parametrize("n", range(1, 7))
def test_J_one_class(n):
    out = compute_J(SearchProblem(1, n))
    assert out.value == n
    if n > 1:
        assert out.extremal.n_max == n - 1 and is_witness_free(out.extremal, n)


@pytest.mark.parametrize("key, value", sorted(BRUTE_J.items()))
def test_compute_J_matches_brute_force(key, value):
    t, n, distinct = key
    assert brute_J(t, n, distinct) == value
    out = compute_J(SearchProblem(t, n, distinct))
    assert out.value == value


def test_J_2_2_and_3_2():
    out = compute_J(SearchProblem(2, 2))
    assert out.value == 5
    assert canonical_form(out.extremal.assign) == (1, 2, 2, 1)
    out = compute_J(SearchProblem(3, 2))
    assert out.value == 14
    assert out.extremal.n_max == 13 and is_witness_free(out.extremal, 2)


def test_schur_alignment():
    for t, s in [(1, 1), (2, 4), (3, 13)]:
        assert schur_number(t) == s
        assert compute_J(SearchProblem(t, 2)).value - 1 == s


@pytest.mark.parametrize("t, n, distinct", [(2, 2, False), (3, 2, False), (2, 2, True), (1, 4, False), (2, 3, False)])
def test_duality(t, n, distinct):
    J = compute_J(SearchProblem(t, n, distinct)).value
    below = extremal_certificate(t, n, J - 1, distinct)
    assert below is not None and below.n_max == J - 1 and is_witness_free(below, n, distinct)
    assert extremal_certificate(t, n, J, distinct) is None


def test_extremal_examples():
    gc = extremal_certificate(2, 2, 4)
    assert canonical_form(gc.assign) == (1, 2, 2, 1)
    assert extremal_certificate(2, 2, 5) is None
    assert extremal_certificate(1, 2, 1) == GroundColoring(1, (1,))
    with pytest.raises(PreconditionError):
        extremal_certificate(1, 2, 0)


def test_monotonicity_over_computed_cells():
    table = {}
    for t in (1, 2, 3):
        for n in (1, 2, 3):
            if (t, n) == (3, 3):
                continue
            table[t, n] = compute_J(SearchProblem(t, n, cap=100)).value
    assert table[2, 3] == 41  # recorded from this engine; used only for ordering checks
    for (t, n), v in table.items():
        if (t + 1, n) in table:
            assert table[t + 1, n] >= v
        if (t, n + 1) in table:
            assert table[t, n + 1] >= v


@pytest.mark.parametrize("t, n", [(1, 2), (1, 3), (2, 1), (2, 2), (3, 2)])
def test_distinct_never_smaller(t, n):
    plain = compute_J(SearchProblem(t, n)).value
    strict = compute_J(SearchProblem(t, n, distinct=True, cap=100)).value
    assert strict >= plain


def test_exceeds_cap_reports_witness_free_coloring():
    out = compute_J(SearchProblem(3, 2, cap=10))
    assert out.exceeds_cap and out.value is None
    assert out.extremal.n_max == 10 and is_witness_free(out.extremal, 2)
    assert out.row()["value"] == ">10"


def test_budget_exhaustion_is_distinct_from_cap():
    with pytest.raises(BudgetExceeded):
        compute_J(SearchProblem(3, 2, budget=50))


def test_canonical_enumeration_one_per_orbit():
    for N in range(1, 7):
        for t in (1, 2, 3):
            naive = {canonical_form(a) for a in itertools.product(range(1, t + 1), repeat=N)}
            canon = list(canonical_colorings(N, t))
            assert len(canon) == len(set(canon)) == len(naive)
            assert set(canon) == naive


def test_canonical_search_sees_every_orbit_of_witness_free_colorings():
    # every witness-free coloring relabels to one reachable by the canonical DFS
    for N in range(1, 7):
        for t in (2, 3):
            naive = {
                canonical_form(a)
                for a in itertools.product(range(1, t + 1), repeat=N)
                if is_witness_free(GroundColoring(t, a), 2)
            }
            canon = {a for a in canonical_colorings(N, t) if is_witness_free(GroundColoring(t, a), 2)}
            assert canon == naive
            assert (extremal_certificate(t, 2, N) is None) == (not naive)


def test_parallel_search_is_deterministic():
    serial = compute_J(SearchProblem(3, 2))
    sharded = compute_J(SearchProblem(3, 2), jobs=3)
    assert (serial.value, serial.extremal) == (sharded.value, sharded.extremal)
    serial = compute_J(SearchProblem(2, 3, cap=30))
    sharded = compute_J(SearchProblem(2, 3, cap=30), jobs=2)
    assert serial.exceeds_cap and (serial.extremal == sharded.extremal)


def test_bound_J_examples():
    ident = lambda k, r, t: k  # noqa: E731  exact for t = 1
    assert bound_J(1, 3, base_bound=lambda t: 2, ramsey_upper=ident) == 9
    assert bound_J(1, 2, base_bound=lambda t: 2) == 2
    assert bound_J(2, 2, base_bound=lambda t: 5) == 5
    assert bound_J(1, 3) == 9  # default base is the computed J(1, 2) = 2
    with pytest.raises(PreconditionError):
        bound_J(2, 1)


def test_bound_J_big_integers_and_monotone():
    # stand-in monotone bound; any genuine Ramsey bound is a tower at these sizes
    upper = lambda k, r, t: k + t - 1  # noqa: E731
    base = {1: 2, 2: 5, 3: 14}.__getitem__

    def closed_form(t, n):
        v = base(t)
        for _ in range(n - 2):
            k = 4 * v
            v = (k + (k - 1) * (t - 1)) * t + 1
        return v

    grid = {(t, n): bound_J(t, n, base, upper) for t in (1, 2, 3) for n in (2, 3, 4)}
    for (t, n), v in grid.items():
        assert isinstance(v, int) and v == closed_form(t, n)
        if (t + 1, n) in grid:
            assert grid[t + 1, n] >= v
        if (t, n + 1) in grid:
            assert grid[t, n + 1] >= v
    steps = bound_chain(2, 3, base, upper)
    assert steps[1].lemma_args == (20, 20, 2)


def test_bound_J_huge_values_stay_exact():
    upper = lambda k, r, t: k * k * t  # noqa: E731
    v = bound_J(2, 3, lambda t: 5, upper)
    assert v > 2**10000
    assert v % 2 == 1  # k * t + 1 with t = 2


def test_random_colorings_witness_free_consistent():
    rng = random.Random(3)
    for _ in range(200):
        t, N = rng.randint(1, 3), rng.randint(1, 14)
        gc = GroundColoring(t, tuple(rng.randint(1, t) for _ in range(N)))
        assert is_witness_free(gc, 2) == (not brute_witnesses(gc, 2))
