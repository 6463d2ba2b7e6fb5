import itertools
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liestoch.permcore import (
    Matching,
    Partition,
    Permutation,
    coset_type,
    cycle_type,
    fpf_involution,
    hyperoctahedral,
    matchings,
    orbit_count,
    sign,
    special_permutation,
    trivial_matching,
)


def perms(k):
    return st.permutations(list(range(1, k + 1))).map(lambda xs: Permutation(tuple(xs)))


# --- cycle type and sign ----------------------------------------------------

def test_cycle_type_examples():
    assert cycle_type(Permutation.identity(3)) == Partition([1, 1, 1])
    assert cycle_type(special_permutation("pi_O", 2)) == Partition([2, 2])
    assert cycle_type(Permutation.parse("(1 2)(3)(4)", 4)) == Partition([2, 1, 1])


def test_pi_O_is_square_of_long_cycle():
    assert special_permutation("pi_O", 2) == special_permutation("pi_U", 4) ** 2


def test_sign_examples():
    assert sign(Permutation.identity(5)) == 1
    for i, j in itertools.combinations(range(1, 6), 2):
        assert sign(Permutation.from_cycles([(i, j)], 5)) == -1
    assert sign(Permutation.parse("(1 2 3)")) == 1


@given(st.integers(1, 7).flatmap(lambda k: st.tuples(perms(k), perms(k))))
def test_sign_is_multiplicative(pq):
    p, q = pq
    assert sign(p * q) == sign(p) * sign(q)


@given(st.integers(1, 7).flatmap(lambda k: st.tuples(perms(k), perms(k))))
def test_cycle_type_is_conjugation_invariant(pq):
    p, q = pq
    assert cycle_type(q * p * q.inverse()) == cycle_type(p)


@given(st.integers(1, 8).flatmap(perms))
def test_orbits_of_cyclic_group_are_cycles(p):
    assert orbit_count([p], p.degree) == len(cycle_type(p))


def test_composition_convention():
    p = Permutation.parse("(1 2)", 3)
    q = Permutation.parse("(2 3)", 3)
    # (p*q)(x) = p(q(x))
    assert (p * q)(2) == p(q(2)) == 3


# --- coset type -------------------------------------------------------------

def test_coset_type_examples():
    assert coset_type(Permutation.identity(4)) == Partition([1, 1])
    assert coset_type(Permutation.parse("(2 3)", 4)) == Partition([2])
    assert coset_type(Permutation.parse("(1 2)", 4)) == Partition([1, 1])


def test_coset_type_rejects_odd_degree():
    with pytest.raises(ValueError):
        coset_type(Permutation.identity(3))


@pytest.mark.parametrize("n", [1, 2])
def test_coset_type_double_coset_invariance_exhaustive(n):
    H = list(hyperoctahedral(n))
    for images in itertools.permutations(range(1, 2 * n + 1)):
        p = Permutation(images)
        lam = coset_type(p)
        for h1 in H:
            for h2 in H:
                assert coset_type(h1 * p * h2) == lam


def test_coset_type_double_coset_invariance_n3():
    # exhaustive over p, with h1, h2 running over a generating set and a sample of H_3
    H = list(hyperoctahedral(3))
    for images in itertools.permutations(range(1, 7)):
        p = Permutation(images)
        lam = coset_type(p)
        for h in H:
            assert coset_type(h * p) == lam
            assert coset_type(p * h) == lam


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(perms(2 * n), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))))
@settings(max_examples=60)
def test_coset_type_invariance_random(args):
    p, i, j = args
    H = list(hyperoctahedral(p.degree // 2))
    h1, h2 = H[i % len(H)], H[j % len(H)]
    assert coset_type(h1 * p * h2) == coset_type(p)


# --- matchings and involutions ----------------------------------------------

def test_fpf_involution_examples():
    assert fpf_involution(Matching(((1, 2), (3, 4)))) == Permutation.parse("(1 2)(3 4)")
    assert fpf_involution(trivial_matching(3)) == special_permutation("phi_U", 3)
    assert fpf_involution(Matching(((1, 3), (2, 4)))) == Permutation.parse("(1 3)(2 4)")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_fpf_involutions_square_to_identity(n):
    for m in matchings(n):
        f = fpf_involution(m)
        assert (f * f).is_identity()
        assert all(f(x) != x for x in range(1, 2 * n + 1))
        assert Matching.from_involution(f) == m


@pytest.mark.parametrize("n, count", [(1, 1), (3, 15), (4, 105)])
def test_matching_counts(n, count):
    ms = list(matchings(n))
    assert len(ms) == count == len(set(ms))


@pytest.mark.parametrize("n", [1, 2, 4])
def test_hyperoctahedral_order_and_stabilizer(n):
    H = list(hyperoctahedral(n))
    assert len(H) == factorial(n) * 2 ** n == len(set(H))
    t = trivial_matching(n)
    assert all(Matching.from_permutation(h) == t for h in H)


def test_hyperoctahedral_n1():
    assert set(hyperoctahedral(1)) == {Permutation.identity(2), Permutation.parse("(1 2)")}


def test_canonical_rep_maps_trivial_matching():
    for m in matchings(3):
        assert Matching.from_permutation(m.canonical_rep) == m


# --- orbits and named permutations ------------------------------------------

def test_orbit_count_examples():
    assert orbit_count([Permutation.identity(5)], 5) == 5
    assert orbit_count([special_permutation("pi_U", 6)], 6) == 1
    assert orbit_count([Permutation.parse("(1 2)(3 4)"), Permutation.parse("(2 3)", 4)], 4) == 1


def test_special_permutation_examples():
    assert special_permutation("pi_U", 4) == Permutation.parse("(1 2 3 4)")
    assert special_permutation("varphi_U", 2) == Permutation.parse("(2 3)(4 1)")
    assert special_permutation("pi_BDI", 1) == Permutation.parse("(2 4 1 3)")


def test_special_permutation_errors():
    with pytest.raises(ValueError):
        special_permutation("pi_X", 2)
    with pytest.raises(ValueError):
        special_permutation("pi_U", 0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bdi_string_invariant_under_pi_bdi(n):
    pi = special_permutation("pi_BDI", n)
    for word in itertools.product(range(3 if n < 3 else 2), repeat=n):
        s = []
        for t in range(n):
            a, b = word[t], word[(t + 1) % n]
            s += [a, b, a, b]
        permuted = [s[pi(x) - 1] for x in range(1, 4 * n + 1)]
        assert permuted == s


# --- parsing ----------------------------------------------------------------

def test_partition_parsing_and_validation():
    assert Partition.parse("[3,1,1]") == Partition([3, 1, 1])
    assert str(Partition([3, 1, 1])) == "[3,1,1]"
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


def test_permutation_cycle_notation_roundtrip():
    p = Permutation.parse("(1 3 5)(2 4)", 6)
    assert Permutation.parse(str(p), 6) == p
