import itertools
import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from schurgen import formats
from schurgen.core import FiniteSet
from schurgen.errors import BudgetExceeded, PreconditionError
from schurgen.ramsey import (
    SubsetColoring,
    UniformColoring,
    find_iterated_witness,
    find_monochromatic,
    known_ramsey_upper,
    lemma1_bound,
    ramsey_avoider,
    refute_levels,
    size_membership_coloring,
    subset_rank,
    subset_unrank,
    table_ramsey_upper,
    verify_ramsey,
)


def pentagon():
    return UniformColoring.from_rule(5, 2, 2, lambda s: 1 if (s[1] - s[0]) % 5 in (1, 4) else 2)


def mono_by_scan(uc, K):
    return len({uc.color(s) for s in itertools.combinations(K, uc.r)}) == 1


@pytest.mark.parametrize("n, r", [(6, 2), (7, 3), (5, 5), (8, 1)])
def test_rank_is_colex_bijection(n, r):
    subsets = list(itertools.combinations(range(1, n + 1), r))
    ranks = [subset_rank(s) for s in subsets]
    assert sorted(ranks) == list(range(comb(n, r)))
    colex = sorted(subsets, key=lambda s: tuple(reversed(s)))
    assert [subset_rank(s) for s in colex] == list(range(comb(n, r)))
    assert all(subset_unrank(subset_rank(s), r) == s for s in subsets)


def test_find_monochromatic_examples():
    uc = UniformColoring.from_rule(6, 2, 1, lambda s: 1)
    assert find_monochromatic(uc, 4) == FiniteSet((1, 2, 3, 4))
    assert find_monochromatic(pentagon(), 3) is None
    with pytest.raises(PreconditionError):
        find_monochromatic(pentagon(), 1)


def test_every_2_coloring_of_k6_has_a_triangle():
    # independent of ramsey_avoider: walk all 2**15 colorings
    for labels in itertools.product((1, 2), repeat=15):
        uc = UniformColoring(6, 2, 2, labels)
        K = find_monochromatic(uc, 3)
        assert K is not None and mono_by_scan(uc, K)


def test_verify_ramsey_examples():
    assert verify_ramsey(2, 1, 2, 3)
    assert not verify_ramsey(2, 1, 2, 2)
    assert not verify_ramsey(3, 2, 2, 5)
    assert verify_ramsey(3, 2, 2, 6)


def test_avoider_is_genuine():
    uc = ramsey_avoider(3, 2, 2, 5)
    assert uc is not None and find_monochromatic(uc, 3) is None


def test_verify_ramsey_monotone_in_n():
    got = [verify_ramsey(3, 2, 2, n, budget=2**28) for n in range(3, 9)]
    assert got == [False, False, False, True, True, True]


def test_verify_ramsey_budget():
    with pytest.raises(BudgetExceeded):
        verify_ramsey(3, 2, 2, 6, budget=1000)


def test_find_monochromatic_sound_on_random_colorings():
    rng = random.Random(1)
    for _ in range(300):
        n, r = rng.randint(3, 7), rng.randint(1, 3)
        t, k = rng.randint(1, 3), rng.randint(3, 4)
        if not r <= min(n, k):
            continue
        uc = UniformColoring(n, r, t, tuple(rng.randint(1, t) for _ in range(comb(n, r))))
        K = find_monochromatic(uc, k)
        if K is None:
            assert not any(mono_by_scan(uc, K) for K in itertools.combinations(range(1, n + 1), k))
        else:
            assert len(K) == k and mono_by_scan(uc, K)


def test_iterated_witness_examples():
    w = find_iterated_witness(SubsetColoring(5, 1, lambda s: 1), 3, 3)
    assert w.K == FiniteSet((1, 2, 3)) and w.classes == (1, 1, 1)

    sc = SubsetColoring(4, 2, lambda s: 1 if 1 in s else 2)
    w = find_iterated_witness(sc, 2, 2)
    assert w.K == FiniteSet((2, 3)) and w.classes == (2, 2)

    # {2, 3, 4} is the lexicographically least triple of singletons in class 2
    w = find_iterated_witness(size_membership_coloring(6), 3, 1, layers={1})
    assert w.K == FiniteSet((2, 3, 4)) and w.classes == (2,)


def test_iterated_witness_layers_unconstrained_are_none():
    w = find_iterated_witness(size_membership_coloring(8), 4, 3, layers={2})
    assert w.classes[0] is None and w.classes[2] is None
    assert len({size_membership_coloring(8)(s) for s in itertools.combinations(w.K, 2)}) == 1


@given(st.integers(2, 6), st.integers(1, 3), st.data())
def test_iterated_witness_is_lexicographically_least(n, t, data):
    labels = data.draw(st.lists(st.integers(1, t), min_size=2**n - 1, max_size=2**n - 1))
    sc = SubsetColoring.from_labels(n, t, labels)
    k = data.draw(st.integers(1, n))
    r = data.draw(st.integers(1, k))

    def ok(K):
        return all(
            len({sc(s) for s in itertools.combinations(K, j)}) == 1 for j in range(1, r + 1)
        )

    expected = next((K for K in itertools.combinations(range(1, n + 1), k) if ok(K)), None)
    got = find_iterated_witness(sc, k, r)
    assert (got.K.elems if got else None) == expected


def test_lemma1_bound_examples():
    assert lemma1_bound(3, 1, 2) == 7
    assert lemma1_bound(3, 2, 2) == 13
    for k in range(1, 9):
        for r in range(1, k + 1):
            assert lemma1_bound(k, r, 1) == k + 1
    with pytest.raises(PreconditionError):
        lemma1_bound(3, 0, 2)


def test_lemma1_bound_big_integers():
    upper = lambda k, r, t: k ** 3 * t  # noqa: E731  stand-in monotone bound
    v = lemma1_bound(40, 8, 3, upper)
    assert v > 2**64
    assert isinstance(v, int)


def test_lemma1_bound_monotone():
    upper = table_ramsey_upper({}, fallback=lambda k, r, t: k * k * t)
    for r in range(1, 4):
        for t in range(1, 4):
            vals = [lemma1_bound(k, r, t, upper) for k in range(r, r + 6)]
            assert vals == sorted(vals)
        for k in range(r, r + 4):
            vals = [lemma1_bound(k, r, t, upper) for t in range(1, 5)]
            assert vals == sorted(vals)


def test_known_ramsey_upper():
    assert known_ramsey_upper(3, 1, 2) == 5
    assert known_ramsey_upper(7, 3, 1) == 7
    assert known_ramsey_upper(3, 2, 2) == 6
    with pytest.raises(LookupError):
        known_ramsey_upper(4, 2, 2)


def test_size_membership_examples():
    sc = size_membership_coloring(5)
    assert sc({1}) == 1
    assert sc({2}) == 2
    assert sc({2, 3}) == 1
    assert sc({3, 4}) == 2


def _brute_refute(K):
    sc = size_membership_coloring(max(K))
    return {
        j
        for j in range(1, len(K) + 1)
        if len({sc(s) for s in itertools.combinations(sorted(K), j)}) == 2
    }


@pytest.mark.parametrize("K, levels", [({1, 2, 3}, {1, 2}), ({5, 6, 7}, set()), ({2, 3, 4}, {2})])
def test_refute_examples(K, levels):
    assert refute_levels(K) == levels == _brute_refute(K)


def test_refute_levels_matches_brute_force_up_to_10():
    for m in range(1, 2**10):
        K = [x + 1 for x in range(10) if m >> x & 1]
        assert refute_levels(K) == _brute_refute(K)


def test_subset_coloring_file_round_trip():
    sc = size_membership_coloring(4)
    back = formats.parse_subset_coloring(formats.subset_coloring_to_text(sc))
    assert back.labels() == sc.labels()
    assert back((2, 3)) == 1


def test_uniform_coloring_file_round_trip():
    uc = pentagon()
    assert formats.parse_uniform_coloring(formats.uniform_coloring_to_text(uc)) == uc
