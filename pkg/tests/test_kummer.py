from fractions import Fraction

import pytest

from cyclolab.cyclotomic import zeta, euler_phi
from cyclolab.kummer import (
    KummerQuery,
    squarefree_part,
    conductor_of_sqrt,
    sqrt_in_cyclotomic,
    sqrt_as_cyclotomic,
    has_nth_root_in_cyclotomic,
    rank1_failure,
    tower_degrees,
    root_membership_oracle,
    multiplicatively_independent,
)

F = Fraction


class TestConductor:
    def test_squarefree_part(self):
        assert squarefree_part(12) == 3
        assert squarefree_part(-18) == -2
        assert squarefree_part(49) == 1

    def test_conductors(self):
        assert conductor_of_sqrt(F(2)) == 8
        assert conductor_of_sqrt(F(-1)) == 4
        assert conductor_of_sqrt(F(-3)) == 3
        assert conductor_of_sqrt(F(5)) == 5
        assert conductor_of_sqrt(F(3)) == 12
        assert conductor_of_sqrt(F(9, 4)) == 1

    def test_membership_examples(self):
        assert sqrt_in_cyclotomic(2, 8)
        assert not sqrt_in_cyclotomic(2, 12)
        assert sqrt_in_cyclotomic(-1, 4)

    def test_sqrt2_exact_witness(self):
        x = zeta(8) + zeta(8, 7)
        assert x * x == 2


class TestSqrtConstruction:
    @pytest.mark.parametrize("rho,order", [
        (F(2), 8), (F(3), 12), (F(5), 5), (F(21), 21), (F(6), 24),
        (F(3, 4), 12), (F(49), 1), (F(15), 60), (F(30), 120), (F(105), 105),
        (F(12), 24), (F(2, 9), 24),
    ])
    def test_square_and_positive(self, rho, order):
        s = sqrt_as_cyclotomic(rho, order)
        assert s * s == rho
        emb = s.embed()
        assert abs(emb.imag) < 1e-9 and emb.real > 0

    def test_wrong_order_rejected(self):
        with pytest.raises(ValueError):
            sqrt_as_cyclotomic(F(2), 12)


class TestRank1:
    def test_examples(self):
        assert rank1_failure(2, 2, 8) == (2, 1)
        assert rank1_failure(2, 3, 9) == (1, 3)
        assert rank1_failure(4, 2, 3) == (2, 1)

    def test_torsion_rejected(self):
        with pytest.raises(ValueError, match="torsion generator"):
            rank1_failure(1, 2, 8)
        with pytest.raises(ValueError, match="torsion generator"):
            rank1_failure(-1, 2, 8)

    def test_quartic_entanglements(self):
        # i*sqrt(2) is a 4th root of 4 inside Q(zeta_8)
        assert rank1_failure(4, 4, 8) == (4, 1)
        # (1+i)^4 = -4 inside Q(zeta_4)
        assert rank1_failure(-4, 4, 4) == (4, 1)
        # (1+i)^8 = 16
        assert rank1_failure(16, 8, 8) == (8, 1)
        # 2^(1/4) is never cyclotomic
        assert not has_nth_root_in_cyclotomic(2, 4, 840)

    def test_twisted_roots_frozen(self):
        # frozen from an oracle cross-check over e in {2,3,4,6,8}, m <= 16
        # (1+i) = sqrt2 * zeta_8 lives in Q(i): 8th root of 16 at m = 4
        assert has_nth_root_in_cyclotomic(16, 8, 4)
        assert not has_nth_root_in_cyclotomic(16, 8, 6)
        # sqrt2 * zeta_16 is an 8th root of -16, first present at m = 16
        assert has_nth_root_in_cyclotomic(-16, 8, 16)
        assert not has_nth_root_in_cyclotomic(-16, 8, 8)
        # (1+i)/2 is a 4th root of -1/4 inside Q(i)
        assert has_nth_root_in_cyclotomic(F(-1, 4), 4, 4)
        assert not has_nth_root_in_cyclotomic(F(-1, 4), 4, 2)
        # 2*sqrt2 is a 4th root of 64, needs the conductor 8
        assert has_nth_root_in_cyclotomic(64, 4, 8)
        assert not has_nth_root_in_cyclotomic(64, 4, 4)
        # 2i is a 6th root of -64
        assert has_nth_root_in_cyclotomic(-64, 6, 4)
        assert not has_nth_root_in_cyclotomic(-64, 6, 2)
        # i*sqrt3 = 1 + 2*zeta_3 is a 6th root of -27 already in Q(zeta_3)
        assert has_nth_root_in_cyclotomic(-27, 6, 3)
        assert not has_nth_root_in_cyclotomic(-27, 6, 5)
        # odd radicals of non-powers never appear
        assert not has_nth_root_in_cyclotomic(2, 3, 9)
        assert has_nth_root_in_cyclotomic(8, 3, 1)

    def test_divisibility_in_d(self):
        for a in (2, 3, 5, 6, -2, 12):
            for m in (8, 12, 16, 24):
                cs = {}
                for d in (1, 2, 4, 8):
                    if not (m % d == 0):
                        continue
                    c, deg = rank1_failure(a, d, m) if a not in (1, -1) else (1, d)
                    assert c * deg == d
                    cs[d] = c
                for d1 in cs:
                    for d2 in cs:
                        if d2 % d1 == 0:
                            assert cs[d2] % cs[d1] == 0

    def test_empirical_bound_a2(self):
        best = 0
        for m in range(2, 201):
            for d in (d for d in range(1, m + 1) if m % d == 0):
                best = max(best, rank1_failure(2, d, m)[0])
        assert best == 2

    def test_query_invariant(self):
        with pytest.raises(ValueError):
            KummerQuery(F(2), 4, 6)  # mu_4 not inside Q(zeta_6)


class TestTower:
    def test_odd_regime(self):
        assert tower_degrees([2, 3], [3, 3], 9) == ([1, 1], [3, 3])

    def test_rank_one(self):
        assert tower_degrees([2], [2], 8) == ([2], [1])

    def test_coprime_conductors(self):
        assert tower_degrees([2, 5], [2, 2], 40) == ([2, 2], [1, 1])

    def test_entangled_refused(self):
        # sqrt(21) lies in Q(zeta_21) although sqrt(3) and sqrt(7) do not
        with pytest.raises(ValueError, match="entangled"):
            tower_degrees([3, 7], [2, 2], 21)

    def test_dependent_rejected(self):
        with pytest.raises(ValueError, match="independent"):
            tower_degrees([2, 4], [2, 2], 8)

    def test_independence_checker(self):
        assert multiplicatively_independent([F(2), F(3)])
        assert not multiplicatively_independent([F(2), F(8)])
        assert multiplicatively_independent([F(2), F(9, 2)])


class TestOracle:
    def test_sqrt2_certificate(self):
        rep = root_membership_oracle(2, 2, 8)
        assert rep.status == "true"
        v = [Fraction(c) for c in rep.certificate["v"]]
        x = sum((v[i] * zeta(8, i) for i in range(len(v))), zeta(8, 0) * 0)
        assert x * x == 2

    def test_negative(self):
        assert root_membership_oracle(2, 2, 5).status == "false"

    def test_rational_root(self):
        rep = root_membership_oracle(9, 2, 3)
        assert rep.status == "true"

    def test_size_cap(self):
        with pytest.raises(ValueError, match="tiny"):
            root_membership_oracle(2, 8, 101)

    def test_agreement_sample(self):
        # the full grid runs in the acceptance suite; spot-check here
        for a, d, m in ((2, 2, 8), (2, 2, 12), (3, 2, 12), (6, 2, 24),
                        (-2, 2, 8), (-2, 2, 4), (5, 2, 5), (2, 4, 8)):
            c, _ = rank1_failure(a, d, m)
            for e in (1, 2, 4):
                if d % e:
                    continue
                want = has_nth_root_in_cyclotomic(a, e, m)
                got = root_membership_oracle(a, e, m)
                assert got.status == ("true" if want else "false")
