import math
import random
from fractions import Fraction

import numpy as np
import pytest

from cyclolab.cyclotomic import CyclotomicNumber, zeta, rational
from cyclolab.flatsums import (
    exact_sum,
    numeric_sum,
    chirp,
    validate_definition,
    grouped_autocorrelation,
    is_flat,
    exponent_bound_scan,
    dirichlet_approx,
    reduce_instance,
    flat_search,
    flat_search_gradient_check,
    sn_upper_bound,
    sn_survey,
    known_member_witness,
)

HALF_SQRT2 = (zeta(8) + zeta(8, 7)) * Fraction(1, 2)
HALF_ISQRT2 = (zeta(8) + zeta(8, 3)) * Fraction(1, 2)


def two_term_witness(d=2):
    return exact_sum(d, [(0, HALF_SQRT2), (1, HALF_ISQRT2)])


class TestValidate:
    def test_zero_exponent_gcd(self):
        rep = validate_definition(exact_sum(3, [(0, 5)]))
        assert rep.has_zero_exponent and not rep.gcd_one

    def test_unimodular_pair_passes(self):
        assert validate_definition(two_term_witness()).all_ok

    def test_vanishing_subset(self):
        rep = validate_definition(exact_sum(5, [(0, 1), (1, -1), (2, zeta(3))]))
        assert not rep.subset_sums_nonzero
        assert rep.failing_subset == (0, 1)

    def test_too_many_terms(self):
        f = exact_sum(3, [(i, 1) for i in range(21)])
        with pytest.raises(ValueError, match="subset check too large"):
            validate_definition(f)

    def test_duplicate_exponents_rejected(self):
        with pytest.raises(ValueError, match="pairwise distinct"):
            exact_sum(3, [(0, 1), (0, 2)])


class TestAutocorrelation:
    def test_pair(self):
        prof = grouped_autocorrelation(two_term_witness())
        assert prof.values[0] == 1
        assert prof.values[1].is_zero()

    def test_single_term(self):
        prof = grouped_autocorrelation(exact_sum(7, [(0, 1)]))
        assert prof.values[0] == 1 and set(prof.values) == {0}

    def test_chirp_delta(self):
        prof = grouped_autocorrelation(chirp(5))
        assert prof.values[0] == 5
        assert all(prof.values[r].is_zero() for r in prof.values if r)

    def test_conjugate_symmetry(self):
        rng = random.Random(2)
        for _ in range(20):
            d = rng.randint(2, 8)
            terms = [
                (b, zeta(12, rng.randrange(12)) * Fraction(rng.randint(1, 4), rng.randint(1, 4)))
                for b in rng.sample(range(-6, 7), rng.randint(1, 4))
            ]
            prof = grouped_autocorrelation(exact_sum(d, terms))
            for rho, v in prof.values.items():
                other = prof.values.get((-rho) % d, CyclotomicNumber.zero(1))
                assert other == v.conjugate()

    def test_dft_consistency(self):
        # sum_rho A(rho) zeta_d^(l rho) = |f(zeta_d^l)|^2 exactly
        rng = random.Random(4)
        for _ in range(15):
            d = rng.randint(2, 10)
            terms = [
                (b, zeta(8, rng.randrange(8)) * Fraction(rng.randint(1, 3), rng.randint(1, 3)))
                for b in rng.sample(range(-5, 6), rng.randint(1, 3))
            ]
            f = exact_sum(d, terms)
            prof = grouped_autocorrelation(f)
            for l in range(d):
                lhs = CyclotomicNumber.zero(d)
                for rho, v in prof.values.items():
                    lhs = lhs + v * zeta(d, (l * rho) % d)
                assert lhs == f.evaluate_exact(l).abs_squared()


class TestFlatness:
    def test_pair_flat(self):
        assert is_flat(two_term_witness()).flat

    def test_chirps_odd(self):
        for d in (3, 5, 7, 9):
            assert is_flat(chirp(d)).flat

    def test_chirp_even_not_flat(self):
        assert not is_flat(chirp(4)).flat

    def test_witness_residue(self):
        rep = is_flat(exact_sum(3, [(0, 1), (1, 1)]))
        assert not rep.flat and rep.witness == 1

    def test_numeric_agreement(self):
        rng = random.Random(6)
        cases = [two_term_witness(), chirp(5), chirp(7),
                 exact_sum(3, [(0, 1), (1, 1)]),
                 exact_sum(4, [(0, rational(1, 2)), (1, zeta(4))])]
        # randomized flat instances: a common root-of-unity phase and an
        # exponent translation preserve |f| on mu_d
        for _ in range(20):
            d = rng.choice([3, 5, 7, 9])
            phase = zeta(4 * d, rng.randrange(4 * d))
            shift = rng.randint(-2 * d, 2 * d)
            base = chirp(d)
            cases.append(exact_sum(
                d, [(b + shift, a * phase) for b, a in base.terms], base.mu
            ))
            # and randomized non-flat ones
            cases.append(exact_sum(
                d,
                [(b, zeta(d, rng.randrange(d)) * Fraction(rng.randint(1, 3), 2))
                 for b in rng.sample(range(-d, d), 2)],
            ))
        for f in cases:
            exact_rep = is_flat(f)
            numeric_rep = is_flat(f.to_numeric())
            assert exact_rep.flat == numeric_rep.flat
            if exact_rep.flat:
                assert numeric_rep.max_deviation < 1e-9


class TestExponentBoundScan:
    def test_no_counterexamples(self):
        for M, d in ((2, 4), (2, 9), (3, 9), (3, 16)):
            rep = exponent_bound_scan(M, d, trials=200, seed=0)
            assert rep["counterexamples"] == []

    def test_vacuous_case(self):
        # at (2, 4) no distinct exponents satisfy max|c| < 1
        rep = exponent_bound_scan(2, 4, trials=200, seed=0)
        assert rep["vacuous"] and rep["trials"] == 0

    def test_precondition(self):
        with pytest.raises(ValueError, match="hypothesis violated"):
            exponent_bound_scan(2, 3, 10, 0)

    def test_partition_independence(self):
        a = exponent_bound_scan(3, 9, 60, 1, threads=1)
        b = exponent_bound_scan(3, 9, 60, 1, threads=4)
        assert a["min_deviation"] == b["min_deviation"]


class TestDirichlet:
    def test_examples(self):
        assert dirichlet_approx([0, 7], 10, 16) == (3, (0, 2))
        assert dirichlet_approx([0, 1], 2, 16) == (2, (0, 1))
        assert dirichlet_approx([0], 1, 4) == (1, (0,))

    def test_quality(self):
        rng = random.Random(12)
        for _ in range(50):
            N = rng.randint(1, 4)
            d = rng.randint(1, 30)
            b = rng.sample(range(-40, 41), N)
            q, p = dirichlet_approx(b, d, 4**N)
            assert 1 <= q <= 4**N
            for bj, pj in zip(b, p):
                assert 4 * abs(q * bj - pj * d) < d
            # smallest q: no earlier q admits an approximation
            for q2 in range(1, q):
                ok = all(
                    any(4 * abs(q2 * bj - pj * d) < d for pj in
                        (q2 * bj // d, q2 * bj // d + 1))
                    for bj in b
                )
                assert not ok


class TestReduction:
    def test_pair(self):
        cert = reduce_instance(two_term_witness())
        assert cert.q == 2 and cert.e == 2 and cert.d_prime == 1

    def test_identity(self):
        cert = reduce_instance(exact_sum(1, [(0, 1)]))
        assert cert.d_prime == 1

    def test_chirps(self):
        # chirp(9) is flat but inadmissible: zeta_9 + zeta_9^4 + zeta_9^7 = 0
        for d in (3, 5, 7, 11, 13):
            cert = reduce_instance(chirp(d))
            assert cert.c[0] == 0
            assert all(4 * abs(ck) < cert.d_prime for ck in cert.c)
            g = math.gcd(cert.d_prime, *cert.c)
            assert g == 1
            assert is_flat(cert.reduced).flat

    def test_chirp9_fails_admissibility(self):
        rep = validate_definition(chirp(9))
        assert not rep.subset_sums_nonzero
        assert rep.failing_subset == (1, 2, 4)
        with pytest.raises(ValueError, match="admissibility"):
            reduce_instance(chirp(9))

    def test_rejects_non_flat(self):
        with pytest.raises(ValueError, match="not flat"):
            reduce_instance(exact_sum(3, [(0, 1), (1, 2)]))

    def test_rejects_inadmissible(self):
        with pytest.raises(ValueError, match="admissibility"):
            reduce_instance(exact_sum(3, [(3, 1)]))


class TestFlatSearch:
    def test_member_pair(self):
        res = flat_search([0, 1], 2, 1.0, restarts=10, seed=0)
        assert res["residual"] < 1e-18
        assert res["verdict"] == "numeric_member"

    def test_infeasible_pair(self):
        res = flat_search([0, 1], 5, 1.0, restarts=50, seed=0)
        assert res["residual"] > 1e-6
        assert res["verdict"] == "numeric_infeasible"

    def test_trivial(self):
        res = flat_search([0], 1, 1.0, restarts=5, seed=0)
        assert res["residual"] < 1e-18

    def test_deterministic(self):
        a = flat_search([0, 1, 3], 7, restarts=5, seed=42)
        b = flat_search([0, 1, 3], 7, restarts=5, seed=42)
        assert a["residual"] == b["residual"]
        assert a["coefficients"] == b["coefficients"]

    def test_gradient_check(self):
        assert flat_search_gradient_check([0, 1, 3], 7, points=100, seed=1) < 1e-6


class TestSurvey:
    def test_upper_bounds(self):
        assert sn_upper_bound(1) == 1
        assert sn_upper_bound(2) == 48
        assert sn_upper_bound(3) == 512

    def test_n1(self):
        rows = sn_survey(1, 10)
        assert [r["d"] for r in rows if r["status"] == "member"] == [1]

    def test_n2(self):
        rows = sn_survey(2, 48)
        assert [r["d"] for r in rows if r["status"] == "member"] == [1, 2]
        for r in rows:
            if r["d"] >= 3:
                assert r["evidence"]["reason"] == "autocorrelation_infeasible"

    def test_n2_beyond_bound(self):
        row = sn_survey(2, 49)[-1]
        assert row["status"] == "excluded"
        assert row["evidence"]["reason"] == "above_upper_bound"

    def test_n3_small(self):
        rows = sn_survey(3, 3, restarts=3, seed=0)
        assert [r["d"] for r in rows if r["status"] == "member"] == [1, 2]
        assert rows[2]["status"] == "unresolved"
        probe = rows[2]["evidence"]["patterns"][0]
        assert {"exponents", "residual", "search_verdict", "min_subset_sum"} <= set(probe)

    def test_threads_deterministic(self):
        a = sn_survey(3, 3, restarts=3, seed=0, threads=1)
        b = sn_survey(3, 3, restarts=3, seed=0, threads=3)
        assert a == b

    def test_survey_too_large(self):
        with pytest.raises(ValueError, match="survey too large"):
            sn_survey(4, 5)

    def test_witnesses_verify(self):
        for N in (1, 2, 3):
            for d in (1, 2):
                w = known_member_witness(N, d)
                if w is None:
                    continue
                assert is_flat(w).flat
                assert validate_definition(w).all_ok
