"""Root-of-unity tuple orbits on the torus: relation lattices, Weyl sums,
orbit periods and exact arc-box counting against the Haar bound."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from .lattice import (
    relation_lattice_basis,
    intersect_lattices,
    shortest_relation,
    hnf_det,
    in_lattice,
)

__all__ = [
    "RootTupleOrbit",
    "Arc",
    "ArcBox",
    "relation_lattice",
    "strictness_window",
    "orbit_period",
    "weyl_sum",
    "arc_count",
    "ArcCountReport",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class RootTupleOrbit:
    """The orbit {(zeta_m^(s*k_1), ..., zeta_m^(s*k_M)) : s = 1..m}."""

    m: int
    k: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be positive")
        object.__setattr__(self, "k", tuple(int(a) for a in self.k))

    @property
    def dim(self) -> int:
        return len(self.k)


def orbit_period(orbit: RootTupleOrbit) -> int:
    """Smallest r with r*k_j == 0 (mod m) for all j; equals the orbit size."""
    r = 1
    for kj in orbit.k:
        r = r * (orbit.m // gcd(orbit.m, kj)) // gcd(r, orbit.m // gcd(orbit.m, kj))
    return r


def relation_lattice(m: int, k: Sequence[int]) -> list[list[int]]:
    """HNF basis of the character relations {n : n . k == 0 (mod m)}."""
    return relation_lattice_basis(m, list(k))


def weyl_sum(orbit: RootTupleOrbit, n: Sequence[int]) -> Fraction:
    """Normalized character sum |(1/m) sum_s zeta_m^(s * n.k)|, exactly.

    By the geometric-sum law this is 1 if m | n.k and 0 otherwise.
    """
    n = [int(a) for a in n]
    if len(n) != orbit.dim:
        raise ValueError("character length must match the orbit dimension")
    if not any(n):
        raise ValueError("trivial character")
    dot = sum(a * b for a, b in zip(n, orbit.k))
    return Fraction(1) if dot % orbit.m == 0 else Fraction(0)


def strictness_window(window: Sequence[tuple[int, Sequence[int]]],
                      threshold: float | None = None) -> dict:
    """Finite-window substitute for strictness of a tuple sequence.

    Intersects the relation lattices over the window and reports a common
    small relation if one survives.  The verdict is heuristic: strictness is
    a property of infinite sequences, a finite window can only exhibit an
    obstruction, never certify its absence.
    """
    window = [(int(m), [int(a) for a in k]) for m, k in window]
    if len(window) < 2:
        raise ValueError("window must contain at least 2 instances")
    dims = {len(k) for _, k in window}
    if len(dims) != 1:
        raise ValueError("all tuples in the window must have the same length")
    if threshold is None:
        threshold = min(m for m, _ in window) / 2
    basis = relation_lattice_basis(window[0][0], window[0][1])
    for m, k in window[1:]:
        basis = intersect_lattices(basis, relation_lattice_basis(m, k))
    rel = shortest_relation(basis)
    norm = max(abs(a) for a in rel) if rel is not None else None
    obstructed = rel is not None and norm < threshold
    return {
        "verdict": "obstructed" if obstructed else "no obstruction in window",
        "relation": rel if obstructed else None,
        "shortest_norm": norm,
        "threshold": threshold,
        "window_size": len(window),
    }


class Arc:
    """A closed arc of the unit circle, anticlockwise from center - halfwidth
    to center + halfwidth.

    Exact arcs take Fraction center/halfwidth measured in turns (fractions of
    a full circle); float arcs take radians and compare with a 1e-12
    tolerance at the boundary.
    """

    __slots__ = ("exact", "center_turns", "half_turns", "center", "half")

    def __init__(self, center, halfwidth):
        if isinstance(center, Fraction) and isinstance(halfwidth, Fraction):
            self.exact = True
            self.center_turns = center % 1
            self.half_turns = halfwidth
            self.center = float(center) * TWO_PI
            self.half = float(halfwidth) * TWO_PI
        else:
            self.exact = False
            self.center = float(center) % TWO_PI
            self.half = float(halfwidth)
            self.center_turns = None
            self.half_turns = None
        if self.half < 0:
            raise ValueError("halfwidth must be nonnegative")

    def haar(self) -> float:
        """Normalized Haar measure: min(halfwidth/pi, 1)."""
        if self.exact:
            return float(min(2 * self.half_turns, Fraction(1)))
        return min(self.half / math.pi, 1.0)

    def contains_turn(self, t: Fraction) -> bool:
        """Closed-arc membership of the point at `t` turns."""
        if self.exact:
            if 2 * self.half_turns >= 1:
                return True
            d = (t - (self.center_turns - self.half_turns)) % 1
            return d <= 2 * self.half_turns
        if 2 * self.half >= TWO_PI:
            return True
        ang = float(t) * TWO_PI
        d = (ang - (self.center - self.half)) % TWO_PI
        return d <= 2 * self.half + 1e-12 or d >= TWO_PI - 1e-12


@dataclass(frozen=True)
class ArcBox:
    """Product of per-coordinate closed arcs."""

    arcs: tuple[Arc, ...]

    def __init__(self, arcs):
        object.__setattr__(self, "arcs", tuple(arcs))

    def haar(self) -> float:
        h = 1.0
        for a in self.arcs:
            h *= a.haar()
        return h

    def uniform_eps(self) -> float | None:
        """The common half-width in radians, or None if they differ."""
        eps = {round(a.half, 15) for a in self.arcs}
        return self.arcs[0].half if len(eps) == 1 else None


@dataclass(frozen=True)
class ArcCountReport:
    count: int
    ratio: Fraction
    haar: float
    uniform_eps: float | None
    haar_lower_bound: float | None
    bound_satisfied: bool | None


def _arc_count_chunk(m: int, k: tuple[int, ...], box: ArcBox, lo: int, hi: int) -> int:
    arcs = box.arcs
    all_float = all(not a.exact for a in arcs)
    if all_float:
        r = np.arange(lo, hi, dtype=np.int64)
        inside = np.ones(hi - lo, dtype=bool)
        for j, arc in enumerate(arcs):
            if 2 * arc.half >= TWO_PI:
                continue
            kj = k[j] % m  # keep r * kj inside int64 for m up to ~1e9
            ang = ((r * kj) % m) * (TWO_PI / m)
            d = np.mod(ang - (arc.center - arc.half), TWO_PI)
            inside &= (d <= 2 * arc.half + 1e-12) | (d >= TWO_PI - 1e-12)
        return int(inside.sum())
    count = 0
    for r in range(lo, hi):
        ok = True
        for kj, arc in zip(k, arcs):
            if not arc.contains_turn(Fraction((r * kj) % m, m)):
                ok = False
                break
        if ok:
            count += 1
    return count


def arc_count(orbit: RootTupleOrbit, box: ArcBox, threads: int = 1) -> ArcCountReport:
    """Count r in {1..m} whose orbit point lies in the box, exactly.

    Partitionable over residue ranges: the count is a sum of independent
    chunk counts, so the result does not depend on the partition.
    """
    if len(box.arcs) != orbit.dim:
        raise ValueError("box dimension must match the orbit dimension")
    m, k = orbit.m, orbit.k
    chunk = max(1, (m + max(1, threads) - 1) // max(1, threads))
    chunk = min(chunk, 10**6)  # bound per-chunk memory for m up to 1e8
    bounds = [(lo, min(lo + chunk, m + 1)) for lo in range(1, m + 1, chunk)]
    if threads > 1 and len(bounds) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as ex:
            counts = list(ex.map(lambda b: _arc_count_chunk(m, k, box, *b), bounds))
        count = sum(counts)
    else:
        count = sum(_arc_count_chunk(m, k, box, lo, hi) for lo, hi in bounds)
    ratio = Fraction(count, m)
    eps = box.uniform_eps()
    if eps is not None:
        bound = (1 - eps) * (eps / TWO_PI) ** orbit.dim
        satisfied = float(ratio) >= bound
    else:
        bound, satisfied = None, None
    return ArcCountReport(count, ratio, box.haar(), eps, bound, satisfied)
