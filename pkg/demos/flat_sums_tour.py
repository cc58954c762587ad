"""Tour of the flat-sum machinery: exact flatness certificates, the
exponent reduction, numeric searches and the small-N membership survey.

Run:  python demos/flat_sums_tour.py
"""
from fractions import Fraction

from cyclolab import (
    chirp,
    exact_sum,
    flat_search,
    grouped_autocorrelation,
    is_flat,
    known_member_witness,
    reduce_instance,
    sn_survey,
    sn_upper_bound,
    validate_definition,
    zeta,
)

print("=" * 70)
print("1. An exact two-term witness on mu_2")
print("=" * 70)

# (1/sqrt2) + (i/sqrt2) z has |f(1)| = |f(-1)| = 1; both coefficients are
# exact cyclotomic numbers of order 8
half_sqrt2 = (zeta(8) + zeta(8, 7)) * Fraction(1, 2)
half_isqrt2 = (zeta(8) + zeta(8, 3)) * Fraction(1, 2)
f = exact_sum(2, [(0, half_sqrt2), (1, half_isqrt2)])

print("coefficients:", [a.to_text() for _, a in f.terms])
print("admissibility:", validate_definition(f))
print("flat:", is_flat(f))

prof = grouped_autocorrelation(f)
print("autocorrelation at 0:", prof.values[0].to_text(),
      "| at 1:", prof.values[1].to_text())

print()
print("=" * 70)
print("2. Quadratic-phase (chirp) sums: flat at level d for odd d")
print("=" * 70)

for d in (3, 5, 9, 15, 25):
    print(f"  d = {d:2d}: flat -> {is_flat(chirp(d)).flat}")
print("even d fails, witness residue of the first nonzero autocorrelation:")
print("  d = 4:", is_flat(chirp(4)))

print()
print("=" * 70)
print("3. The exponent reduction with its certificate")
print("=" * 70)

cert = reduce_instance(chirp(5))
print(f"q = {cert.q}, e = gcd(q, d) = {cert.e}, reduced order d' = {cert.d_prime}")
print(f"reduced exponents c = {cert.c} (c_1 = 0, all |c| < d'/4)")
print("reduced sum flat:", is_flat(cert.reduced).flat)

print()
print("=" * 70)
print("4. Numeric coefficient search")
print("=" * 70)

feasible = flat_search([0, 1], 2, restarts=10, seed=0)
print(f"exponents (0,1) on mu_2: residual {feasible['residual']:.2e}"
      f" -> {feasible['verdict']}")
infeasible = flat_search([0, 1], 5, restarts=30, seed=0)
print(f"exponents (0,1) on mu_5: residual {infeasible['residual']:.2e}"
      f" -> {infeasible['verdict']}")

print()
print("=" * 70)
print("5. Membership survey")
print("=" * 70)

print("upper bounds: N=2 ->", sn_upper_bound(2), ", N=3 ->", sn_upper_bound(3))
for N in (1, 2):
    rows = sn_survey(N, 10)
    members = [r["d"] for r in rows if r["status"] == "member"]
    print(f"N = {N}: members up to 10 = {members}")
w = known_member_witness(3, 2)
print("stored three-term witness on mu_2:",
      [a.to_text() for _, a in w.terms])
print("its flatness:", is_flat(w).flat)
