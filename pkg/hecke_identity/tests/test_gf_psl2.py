import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from hecke_identity.algebra.gf_psl2 import (
    ClassKind,
    Fq,
    Subgroup,
    all_elements,
    brute_force_classes,
    class_representative,
    classify_class,
    conjugate,
    element_order,
    enumerate_classes,
    field_sqrt,
    group_order,
    identity,
    legendre_symbol,
    psl2_canonicalize,
    psl2_inverse,
    psl2_mul,
    psl2_power,
    random_element,
    require_supported_prime,
    subgroup_elements,
    subgroup_generator,
    subgroup_order,
    unipotent_p,
)
from hecke_identity.errors import InvalidElement, ModulusMismatch, UnsupportedPrime

PRIMES = [7, 11, 19, 23]


def S(q):
    return psl2_canonicalize(0, -1, 1, 0, q)


class TestField:
    def test_legendre_values(self):
        assert legendre_symbol(1, 7) == 1
        assert legendre_symbol(3, 7) == -1
        assert legendre_symbol(14, 7) == 0

    @pytest.mark.parametrize("q", PRIMES)
    def test_minus_one_is_a_nonresidue(self, q):
        assert legendre_symbol(-1, q) == -1

    @pytest.mark.parametrize("q", PRIMES)
    def test_square_roots(self, q):
        for n in range(1, q):
            if legendre_symbol(n, q) == 1:
                root = field_sqrt(n, q)
                assert root * root % q == n

    def test_fq_arithmetic(self):
        x = Fq(3, 7)
        assert (x * x.inverse()).value == 1
        assert (x + 5).value == 1
        assert (-x).value == 4
        with pytest.raises(ModulusMismatch):
            x + Fq(1, 11)

    @pytest.mark.parametrize("q", [3, 5, 9, 13, 17])
    def test_unsupported_primes(self, q):
        with pytest.raises(UnsupportedPrime):
            require_supported_prime(q)


class TestElements:
    def test_minus_identity_is_identity(self):
        assert psl2_canonicalize(-1, 0, 0, -1, 7) == identity(7)
        assert psl2_canonicalize(6, 0, 0, 6, 7) == identity(7)

    def test_entries_reduced_mod_q(self):
        assert psl2_canonicalize(1, -1, 0, 1, 7).entries() == (1, 6, 0, 1)

    def test_sign_rule_picks_small_first_entry(self):
        # (6 1; 0 6) and (1 6; 0 1) are the same element
        assert psl2_canonicalize(6, 1, 0, 6, 7).entries() == (1, 6, 0, 1)

    def test_bad_determinant(self):
        with pytest.raises(InvalidElement):
            psl2_canonicalize(1, 1, 1, 1, 7)

    def test_multiplication(self):
        p = unipotent_p(7)
        assert psl2_mul(p, p).entries() == (1, 2, 0, 1)
        assert psl2_mul(S(7), S(7)) == identity(7)
        assert p * identity(7) == p

    def test_modulus_mismatch(self):
        with pytest.raises(ModulusMismatch):
            psl2_mul(identity(7), identity(11))

    def test_orders(self):
        assert element_order(identity(7)) == 1
        assert element_order(unipotent_p(7)) == 7
        assert element_order(S(7)) == 2

    def test_power_and_inverse(self):
        p = unipotent_p(11)
        assert psl2_power(p, 11) == identity(11)
        assert psl2_power(p, -1) == psl2_inverse(p)
        assert psl2_mul(p, psl2_inverse(p)) == identity(11)

    @given(q=st.sampled_from(PRIMES), seed=st.integers(0, 2**32 - 1))
    def test_inverse_is_two_sided(self, q, seed):
        x = random_element(q, random.Random(seed))
        assert psl2_mul(x, psl2_inverse(x)) == identity(q)
        assert psl2_mul(psl2_inverse(x), x) == identity(q)


class TestClasses:
    def test_examples_q7(self):
        assert classify_class(unipotent_p(7)).kind == ClassKind.UNIPOTENT_PLUS
        assert classify_class(psl2_canonicalize(1, 0, 1, 1, 7)).kind == ClassKind.UNIPOTENT_MINUS

        split = classify_class(psl2_canonicalize(3, 0, 0, 5, 7))
        assert split.kind == ClassKind.SPLIT
        assert split.parameter == (3, 5)

        involution = classify_class(S(7))
        assert involution.kind == ClassKind.NON_SPLIT
        assert involution.parameter == (0, 1)
        assert involution.size == 21

    def test_class_sizes_q7(self):
        classes = enumerate_classes(7)
        assert len(classes) == 6
        assert sorted(label.size for label in classes) == [1, 21, 24, 24, 42, 56]
        assert sum(label.size for label in classes) == 168

    @pytest.mark.parametrize("q", PRIMES)
    def test_class_count_and_order(self, q):
        classes = enumerate_classes(q)
        assert len(classes) == (q + 5) // 2
        assert sum(label.size for label in classes) == group_order(q)
        assert [label.kind for label in classes][0] == ClassKind.IDENTITY
        assert [label.kind for label in classes][-2:] == [ClassKind.UNIPOTENT_PLUS, ClassKind.UNIPOTENT_MINUS]

    @pytest.mark.parametrize("q", PRIMES)
    def test_representatives_classify_to_their_label(self, q):
        for label in enumerate_classes(q):
            assert classify_class(class_representative(label, q)) == label

    @pytest.mark.parametrize("q", PRIMES)
    def test_unipotent_classes_distinct(self, q):
        p = unipotent_p(q)
        assert classify_class(p) != classify_class(psl2_inverse(p))

    def test_enumerate_rejects_q13(self):
        with pytest.raises(UnsupportedPrime):
            enumerate_classes(13)

    @given(q=st.sampled_from(PRIMES), seed=st.integers(0, 2**32 - 1))
    def test_conjugation_invariance(self, q, seed):
        rng = random.Random(seed)
        x, g = random_element(q, rng), random_element(q, rng)
        assert classify_class(conjugate(x, g)) == classify_class(x)


class TestBruteForce:
    @pytest.mark.parametrize("q", [7, 11])
    def test_element_count(self, q):
        elements = list(all_elements(q))
        assert len(elements) == group_order(q)
        assert len(set(elements)) == len(elements)

    @pytest.mark.parametrize("q", [7, 11, pytest.param(19, marks=pytest.mark.slow)])
    def test_orbits_match_classification(self, q):
        orbits = brute_force_classes(q)
        labels = {label.key: label for label in enumerate_classes(q)}
        assert len(orbits) == len(labels)

        seen = set()
        for orbit in orbits:
            orbit_labels = {classify_class(x) for x in orbit}
            assert len(orbit_labels) == 1
            label = orbit_labels.pop()
            assert label.size == len(orbit)
            seen.add(label.key)
        assert seen == set(labels)


class TestSubgroups:
    def test_orders_q7(self):
        assert len(subgroup_elements(7, Subgroup.H1)) == 4
        assert len(subgroup_elements(7, Subgroup.H2)) == 3

    @pytest.mark.parametrize("q", PRIMES)
    def test_kinds(self, q):
        allowed = {
            Subgroup.H1: {ClassKind.IDENTITY, ClassKind.NON_SPLIT},
            Subgroup.H2: {ClassKind.IDENTITY, ClassKind.SPLIT},
        }
        for which, kinds in allowed.items():
            counts = Counter(classify_class(h).kind for h in subgroup_elements(q, which))
            assert set(counts) <= kinds
            assert counts[ClassKind.IDENTITY] == 1

    @pytest.mark.parametrize("q", PRIMES)
    @pytest.mark.parametrize("which", [Subgroup.H1, Subgroup.H2])
    def test_closed_and_cyclic(self, q, which):
        elements = set(subgroup_elements(q, which))
        for x in elements:
            for y in elements:
                assert psl2_mul(x, y) in elements

        generator = subgroup_generator(q, which)
        assert element_order(generator) == subgroup_order(q, which)
        assert {psl2_power(generator, k) for k in range(len(elements))} == elements
