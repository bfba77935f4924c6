from fractions import Fraction
from itertools import combinations

import pytest
from sympy import primerange

from hecke_identity.algebra.cyclotomic import zeta_power
from hecke_identity.curves.modcurve import (
    Cusp,
    canonical_cusp,
    cusp_parameter,
    cusp_representatives,
    cusp_width,
    cusps_equivalent,
    divisor_summary,
    gamma1_index,
    gamma_q_cusp_count,
    genus_x,
    genus_x1,
    in_gamma1,
    multiplier_v,
    stabilizer_matrix,
    valence_total,
)
from hecke_identity.errors import InternalInconsistency, NotInGroup, UnsupportedPrime
from hecke_identity.verification.hecke import sum_n_chi

CHAIN_PRIMES = [q for q in primerange(7, 200) if q % 4 == 3]


class TestIndices:
    @pytest.mark.parametrize("q, mu", [(7, 24), (11, 60), (23, 264)])
    def test_gamma1_index(self, q, mu):
        assert gamma1_index(q) == mu

    @pytest.mark.parametrize("q, g", [(7, 0), (11, 1), (23, 12)])
    def test_genus_x1(self, q, g):
        assert genus_x1(q) == g

    def test_genus_x1_any_prime_level(self):
        assert genus_x1(5) == 0
        assert genus_x1(13) == 2

    def test_level_must_be_prime(self):
        with pytest.raises(UnsupportedPrime):
            gamma1_index(9)

    def test_full_level_data(self):
        assert genus_x(7) == 3
        assert genus_x(11) == 26
        assert gamma_q_cusp_count(7) == 24
        assert valence_total(7) == 4
        assert valence_total(11, weight=4) == 20


class TestCusps:
    def test_q7(self):
        cusps = cusp_representatives(7)
        assert len(cusps) == 6
        assert sorted(data.width for data in cusps) == [1, 1, 1, 7, 7, 7]
        assert sum(data.width for data in cusps) == 24

        bad = [Cusp(r, 7, 7) for r in (1, 2, 3)]
        assert all(c in {data.cusp for data in cusps} for c in bad)
        for c1, c2 in combinations(bad, 2):
            assert not cusps_equivalent(c1, c2)

    def test_q11(self):
        cusps = cusp_representatives(11)
        assert len(cusps) == 10
        assert sum(data.width for data in cusps) == 60

    @pytest.mark.parametrize("q", list(primerange(5, 200)))
    def test_structure(self, q):
        cusps = cusp_representatives(q)
        assert len(cusps) == q - 1
        assert sum(data.width for data in cusps) == (q * q - 1) // 2
        for data in cusps:
            if data.cusp.s == q:
                assert data.kappa == Fraction(data.cusp.r ** 2 % q, q)
                assert data.kappa != 0
            else:
                assert data.kappa == 0

    def test_equivalence(self):
        assert cusps_equivalent(Cusp(1, 2, 7), Cusp(1, 5, 7))
        assert cusps_equivalent(Cusp(1, 0, 7), Cusp(1, 7, 7))
        assert cusps_equivalent(Cusp(4, 7, 7), Cusp(3, 7, 7))
        assert not cusps_equivalent(Cusp(1, 7, 7), Cusp(2, 7, 7))
        assert canonical_cusp(Cusp(2, 3, 7)) == Cusp(1, 3, 7)
        assert canonical_cusp(Cusp(1, 1, 7)) == Cusp(0, 1, 7)

    def test_cusp_validation(self):
        with pytest.raises(ValueError):
            Cusp(2, 4, 7)
        with pytest.raises(ValueError):
            Cusp(1, -3, 7)

    @pytest.mark.parametrize("r, s", [(0, 1), (1, 0), (2, 3), (3, 7), (-5, 8)])
    def test_scaling_matrix(self, r, s):
        a, b, c, d = Cusp(r, s, 7).matrix()
        assert (a, c) == (r, s)
        assert a * d - b * c == 1
        for n in (1, 7):
            stabilizer_matrix(Cusp(r, s, 7), n)

    @pytest.mark.parametrize("q", [5, 7, 11, 23, 31])
    def test_no_irregular_cusps(self, q):
        for data in cusp_representatives(q):
            a, b, c, d = stabilizer_matrix(data.cusp, data.width)
            assert in_gamma1((a, b, c, d), q)
            assert not in_gamma1((-a, -b, -c, -d), q)

    def test_widths(self):
        assert cusp_width(Cusp(0, 1, 7)) == 7
        assert cusp_width(Cusp(3, 7, 7)) == 1
        assert cusp_width(Cusp(1, 0, 7)) == 1


class TestMultiplier:
    def test_values(self):
        assert multiplier_v((1, 1, 0, 1), 7) == zeta_power(7, 1)
        assert multiplier_v((1, 0, 0, 1), 7) == 1
        assert multiplier_v((1, 7, 0, 1), 7) == 1

    def test_not_in_gamma1(self):
        with pytest.raises(NotInGroup):
            multiplier_v((0, -1, 1, 0), 7)

    @pytest.mark.parametrize("q, cusp, kappa", [
        (7, Cusp(3, 7, 7), Fraction(2, 7)),
        (7, Cusp(0, 1, 7), Fraction(0)),
        (11, Cusp(5, 11, 11), Fraction(3, 11)),
    ])
    def test_cusp_parameter(self, q, cusp, kappa):
        assert cusp_parameter(q, cusp) == kappa


class TestDivisor:
    @pytest.mark.parametrize("q, mu, kappa_sum, m, g, z", [
        (7, 24, 1, 3, 0, 4),
        (11, 60, 2, 8, 1, 8),
        (23, 264, 4, 40, 12, 29),
    ])
    def test_chain(self, q, mu, kappa_sum, m, g, z):
        summary = divisor_summary(q)
        assert (summary.mu, summary.kappa_sum, summary.m, summary.g, summary.z) == (mu, kappa_sum, m, g, z)

    @pytest.mark.parametrize("q", CHAIN_PRIMES)
    def test_claim_and_character_sum(self, q):
        summary = divisor_summary(q)
        assert summary.claim_margin == q - 1 - summary.kappa_sum
        assert summary.claim_margin > 0
        assert summary.kappa_sum == Fraction(q - 1, 4) + Fraction(sum_n_chi(q), 2 * q)

    def test_other_representatives(self):
        alternative = [Cusp(1, 1, 7), Cusp(1, 5, 7), Cusp(2, 3, 7), Cusp(1, 0, 7), Cusp(2, 7, 7), Cusp(4, 7, 7)]
        assert divisor_summary(7, alternative).z == divisor_summary(7).z == 4

    def test_representatives_must_cover_every_orbit(self):
        doubled = [Cusp(0, 1, 7), Cusp(1, 1, 7), Cusp(1, 3, 7), Cusp(1, 7, 7), Cusp(2, 7, 7), Cusp(3, 7, 7)]
        with pytest.raises(InternalInconsistency):
            divisor_summary(7, doubled)

    def test_unsupported(self):
        with pytest.raises(UnsupportedPrime):
            divisor_summary(13)
