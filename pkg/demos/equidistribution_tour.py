"""Tour of the torus counting tools: character (Weyl) sums, relation
lattices, strictness windows and arc-box counts against the Haar bound.

Run:  python demos/equidistribution_tour.py
"""
import math
from fractions import Fraction

from cyclolab import (
    Arc,
    ArcBox,
    RootTupleOrbit,
    arc_count,
    orbit_period,
    relation_lattice,
    strictness_window,
    weyl_sum,
)

print("=" * 70)
print("1. Orbits of root-of-unity tuples")
print("=" * 70)

orbit = RootTupleOrbit(12, (4, 6))
print("m = 12, k = (4, 6): orbit size =", orbit_period(orbit))

print()
print("=" * 70)
print("2. Character sums are 0/1 and detect relations")
print("=" * 70)

orbit = RootTupleOrbit(12, (2, 3))
print("relation lattice basis:", relation_lattice(12, [2, 3]))
for n in ((3, 2), (1, 0), (0, 4), (1, 1)):
    print(f"  character n = {n}: normalized sum = {weyl_sum(orbit, n)}")

print()
print("=" * 70)
print("3. Strictness over a finite window (heuristic verdict)")
print("=" * 70)

diag = [(m, [1, 1]) for m in (7, 11, 13)]
print("constant diagonal tuples:", strictness_window(diag))

primes = []
p = 101
while len(primes) < 10:
    if all(p % q for q in range(2, int(p**0.5) + 1)):
        primes.append(p)
    p += 2
moving = [(p, [1, math.isqrt(p)]) for p in primes]
print("sqrt-slope tuples:", strictness_window(moving)["verdict"])

print()
print("=" * 70)
print("4. Arc-box counting against the Haar lower bound")
print("=" * 70)

orbit = RootTupleOrbit(10007, (1, 100))
for eps in (0.3, 0.5):
    box = ArcBox([Arc(0.0, eps), Arc(0.0, eps)])
    rep = arc_count(orbit, box)
    print(f"eps = {eps}: count = {rep.count}, ratio = {float(rep.ratio):.5f},"
          f" haar = {rep.haar:.5f}, bound = {rep.haar_lower_bound:.5f},"
          f" satisfied = {rep.bound_satisfied}")

# exact arcs use rational endpoints in turns and compare exactly
exact_box = ArcBox([Arc(Fraction(0), Fraction(1, 8))])
rep = arc_count(RootTupleOrbit(16, (1,)), exact_box)
print("exact quarter-arc on mu_16: count =", rep.count, "(closed endpoints)")
