"""Tour of the height and Kummer-failure calculators.

Run:  python demos/heights_and_kummer_tour.py
"""
import math
from fractions import Fraction

from cyclolab import (
    AlgebraicNumber,
    is_root_of_unity,
    power_transform,
    radical_height,
    rank1_failure,
    root_membership_oracle,
    sqrt_in_cyclotomic,
    tower_degrees,
    weil_height,
)
from cyclolab.cyclotomic import cyclotomic_polynomial

print("=" * 70)
print("1. Weil heights from minimal polynomials")
print("=" * 70)

print("h(2)        =", weil_height((-2, 1)), "= log 2 =", math.log(2))
print("h(1/3)      =", weil_height((-1, 3)), "= log 3 =", math.log(3))
print("h(golden)   =", weil_height((-1, -1, 1)),
      "= (log phi)/2 =", math.log((1 + math.sqrt(5)) / 2) / 2)

print()
print("=" * 70)
print("2. The power law h(a^n) = |n| h(a)")
print("=" * 70)

a = AlgebraicNumber((-2, 0, 0, 1))  # 2^(1/3)
b = power_transform(a, 3)
print("cube of 2^(1/3): minpoly", b.minpoly, "| heights",
      f"{weil_height(a):.8f} -> {weil_height(b):.8f}")
print("radical law: h(2^(1/3)) =", radical_height(2, 3), "= (log 2)/3")

print()
print("=" * 70)
print("3. Kronecker: height vanishes exactly on roots of unity")
print("=" * 70)

for k in (5, 12, 30):
    p = cyclotomic_polynomial(k)
    print(f"  Phi_{k}: height {weil_height(p):.2e},"
          f" torsion -> {is_root_of_unity(AlgebraicNumber(p))}")
print("  x^2-x-1: torsion ->",
      is_root_of_unity(AlgebraicNumber((-1, -1, 1))))

print()
print("=" * 70)
print("4. Kummer failures of rational generators")
print("=" * 70)

print("sqrt(2) in Q(zeta_8):", sqrt_in_cyclotomic(2, 8),
      "| in Q(zeta_12):", sqrt_in_cyclotomic(2, 12))
for a_, d_, m_ in ((2, 2, 8), (2, 2, 12), (2, 3, 9), (4, 2, 3), (-4, 4, 4)):
    c, deg = rank1_failure(Fraction(a_), d_, m_)
    print(f"  a = {a_:3d}, d = {d_}, m = {m_:2d}: failure c = {c}, degree = {deg}")

cs, shape = tower_degrees([Fraction(2), Fraction(3)], [3, 3], 9)
print("tower (2, 3) with cube roots over Q(zeta_9): c =", cs,
      ", group shape Z/%d x Z/%d" % tuple(shape))

print()
print("=" * 70)
print("5. The independent membership oracle")
print("=" * 70)

rep = root_membership_oracle(2, 2, 8)
print("sqrt(2) in Q(zeta_8):", rep.status, "| certificate v =", rep.certificate["v"])
print("sqrt(2) in Q(zeta_5):", root_membership_oracle(2, 2, 5).status)
