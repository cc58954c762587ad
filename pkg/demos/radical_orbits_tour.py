"""Tour of the radical-sum engine: Kummer-Galois orbits, band statistics,
the cosine expansion, marginal averages and division-point factorization.

Run:  python demos/radical_orbits_tour.py
"""
import math
from fractions import Fraction

from cyclolab import (
    Arc,
    ArcBox,
    GaloisElement,
    RadicalContext,
    RadicalSum,
    apply_galois,
    cosine_expansion,
    d_gamma_eps,
    factor_out_division_point,
    marginal_orbit_stats,
    orbit_moduli,
    parse_radical_sum,
    sigma_search,
    term_energy_profile,
    zeta,
)

F = Fraction

print("=" * 70)
print("1. Contexts and the Kummer action")
print("=" * 70)

ctx = RadicalContext([F(2)], [3], D=3)
print("generator 2, cube root, D = 3:")
print("  computed failure c =", ctx.failures[0], ", acting group Z/", ctx.group[0])
x = RadicalSum(ctx, [(1, (0,)), (1, (1,))])
print("  x = 1 + 2^(1/3) =", f"{x.evaluate():.6f}")
y = apply_galois(GaloisElement(1, (1,)), x)
print("  rotated by zeta_3:", f"{y.evaluate():.6f}")

# with D = 8 the square root of 2 is already cyclotomic: c = 2 kills the orbit
ctx8 = RadicalContext([F(2)], [2], D=8)
print("generator 2, square root, D = 8: failure c =", ctx8.failures[0],
      "(sqrt 2 lies in Q(zeta_8)), group order", ctx8.group[0])

print()
print("=" * 70)
print("2. Orbit moduli and the band fraction")
print("=" * 70)

x = parse_radical_sum("(1/2) + (1/2) * 2^(1/2)")
print("x = (1 + sqrt2)/2, orbit |.|^2 values:", [round(v, 5) for v in orbit_moduli(x)])
frac, concyclic = d_gamma_eps(x, 0.5)
print("band fraction at eps = 0.5:", frac, "| concyclic:", concyclic)

zx = RadicalSum(RadicalContext([], [], 5), [(zeta(5), ())])
print("a root of unity: band fraction", d_gamma_eps(zx, 0.1))

print()
print("=" * 70)
print("3. The cosine expansion agrees with direct conjugation")
print("=" * 70)

sig = GaloisElement(1, (1,))
via_formula = cosine_expansion(x, sig)
direct = abs(apply_galois(sig, x).evaluate()) ** 2
print(f"|sigma x|^2 = {via_formula:.12f} (formula) vs {direct:.12f} (direct)")
print("closed form (1 - sqrt2)^2 / 4 =", (1 - math.sqrt(2)) ** 2 / 4)

print()
print("=" * 70)
print("4. Marginal statistics over the cyclotomic part")
print("=" * 70)

ctx = RadicalContext([F(2)], [2], D=3)
w = RadicalSum(ctx, [(zeta(3), (0,)), (1, (1,))])
st = marginal_orbit_stats(w, 0.5)
for row in st["rows"]:
    print(f"  phi_t with t = {row['t']}: band fraction {row['fraction']}")
print("  average =", st["average"], "| whole group =", st["full_group_fraction"],
      "| identity exact:", st["identity_exact"])

print()
print("=" * 70)
print("5. Rotation-constrained conjugate search")
print("=" * 70)

found = sigma_search(x, ArcBox([Arc(F(0), F(1, 2))]), 3.0)
print("full-circle box, wide band: rotations found =", [g.r for g in found])

print()
print("=" * 70)
print("6. Division-point factorization and term energies")
print("=" * 70)

mixed = parse_radical_sum("1 * 2^(3/6) + 1 * 2^(5/6)")
y, z = factor_out_division_point(mixed)
print("2^(3/6) + 2^(5/6) = (", y, ") *", z.to_text())

prof = term_energy_profile(x, 0.5)
print("term energies of (1 + sqrt2)/2:", [round(e, 4) for e in prof["energies"]],
      "total:", prof["total_energy"])
print("rearrangement identity residuals:",
      {k: f"{v['diff']:.1e}" for k, v in prof["identity_checks"].items()})
