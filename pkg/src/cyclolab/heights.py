"""Weil heights and Mahler measures of algebraic numbers given by primitive
integer minimal polynomials, with the power and root transformation laws."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

__all__ = [
    "AlgebraicNumber",
    "weil_height",
    "mahler_measure",
    "power_transform",
    "is_root_of_unity",
    "radical_height",
    "radical_minpoly",
    "poly_roots",
]

DEGREE_CAP = 64


# ------------------------------------------------------- poly helpers (Q[x])


def _trim(p: list[Fraction]) -> list[Fraction]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _degree(p) -> int:
    p = _trim(list(p))
    return len(p) - 1 if any(p) else -1


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    if not any(b):
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while _degree(a) >= _degree(b) and any(a):
        k = _degree(a) - _degree(b)
        c = a[-1] / b[-1]
        q[k] += c
        for j, y in enumerate(b):
            a[k + j] -= c * y
        a = _trim(a)
    return _trim(q), _trim(a)


def _poly_gcd(a, b):
    a, b = _trim([Fraction(x) for x in a]), _trim([Fraction(x) for x in b])
    while any(b):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if any(a) and a[-1] != 0:
        a = [c / a[-1] for c in a]  # monic
    return a


def _derivative(p):
    return _trim([Fraction(i) * c for i, c in enumerate(p)][1:]) or [Fraction(0)]


def _primitive_int(p) -> list[int]:
    """Clear denominators, divide by the content, make the lead positive."""
    p = _trim([Fraction(x) for x in p])
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g:
        ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def resultant(f, g) -> Fraction:
    """Res(f, g) over Q via the classical Euclidean recursion."""
    f = _trim([Fraction(x) for x in f])
    g = _trim([Fraction(x) for x in g])
    m, n = _degree(f), _degree(g)
    if m < 0 or n < 0:
        return Fraction(0)
    if n == 0:
        return g[0] ** m
    if m == 0:
        return f[0] ** n * (-1) ** (m * n)
    _, r = _poly_divmod(f, g)
    if not any(r):
        return Fraction(0)
    d = _degree(r)
    return Fraction((-1) ** (m * n)) * g[-1] ** (m - d) * resultant(g, r)


def poly_roots(coeffs, polish_iters: int = 6) -> list[complex]:
    """All complex roots of an integer polynomial, Newton-polished.

    Companion-matrix start (numpy), then Newton iteration with exact
    coefficients evaluated in double precision.  Deterministic sort by
    (real, imag).  Degree is capped at 64.
    """
    ints = _primitive_int(coeffs)
    deg = len(ints) - 1
    if deg < 1:
        raise ValueError("polynomial must have positive degree")
    if deg > DEGREE_CAP:
        raise ValueError(f"degree exceeds the cap of {DEGREE_CAP}")
    roots = np.roots(list(reversed([float(c) for c in ints])))
    dp = [i * c for i, c in enumerate(ints)][1:]

    def horner(cs, z):
        acc = 0j
        for c in reversed(cs):
            acc = acc * z + c
        return acc

    polished = []
    fujiwara = 1.0 + max(abs(c) / abs(ints[-1]) for c in ints[:-1])
    for r in roots:
        z = complex(r)
        for _ in range(polish_iters):
            d = horner(dp, z)
            if d == 0:
                break
            step = horner(ints, z) / d
            if abs(step) > 1.0:  # keep Newton from jumping between roots
                step /= abs(step)
            z -= step
            if abs(step) < 1e-16 * max(1.0, abs(z)):
                break
        if abs(z) > fujiwara + 1e-6:
            z = complex(r)  # polish escaped the root-radius bound; keep start
        polished.append(z)
    polished.sort(key=lambda z: (round(z.real, 10), round(z.imag, 10)))
    return polished


# ---------------------------------------------------------- algebraic numbers


def _rational_roots(ints: list[int]) -> list[Fraction]:
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        return [Fraction(0)]
    found = []

    def divisors(n):
        n = abs(n)
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out += [d, n // d]
            d += 1
        return sorted(set(out))

    for p in divisors(a0):
        for q in divisors(an):
            for s in (1, -1):
                cand = Fraction(s * p, q)
                if sum(c * cand**i for i, c in enumerate(ints)) == 0:
                    found.append(cand)
    return found


@dataclass(frozen=True)
class AlgebraicNumber:
    """A root of a primitive irreducible integer polynomial.

    `root_index` selects one complex root under the deterministic ordering
    of `poly_roots`.  Irreducibility is an input contract; cheap probes
    (rational roots, quadratic discriminant) catch the easy violations.
    """

    minpoly: tuple[int, ...]
    root_index: int = 0

    def __post_init__(self):
        ints = _primitive_int(self.minpoly)
        object.__setattr__(self, "minpoly", tuple(ints))
        deg = len(ints) - 1
        if deg < 1:
            raise ValueError("minimal polynomial must be nonconstant")
        if not (0 <= self.root_index < deg):
            raise ValueError("root index out of range")
        # cheap irreducibility probes; full factorization is out of scope
        if deg > 1 and _rational_roots(list(ints)):
            raise ValueError("polynomial has a rational root, not irreducible")
        if deg == 2:
            disc = ints[1] ** 2 - 4 * ints[0] * ints[2]
            if disc >= 0 and math.isqrt(disc) ** 2 == disc:
                raise ValueError("quadratic splits over Q")

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    def root(self) -> complex:
        return poly_roots(list(self.minpoly))[self.root_index]


def mahler_measure(minpoly) -> float:
    ints = _primitive_int(list(minpoly))
    rts = poly_roots(ints)
    m = abs(ints[-1])
    for r in rts:
        m *= max(1.0, abs(r))
    return m


def weil_height(alpha) -> float:
    """(1/deg) * (log |lc| + sum over roots of log max(1, |root|))."""
    minpoly = alpha.minpoly if isinstance(alpha, AlgebraicNumber) else alpha
    ints = _primitive_int(list(minpoly))
    if not any(ints):
        raise ValueError("zero polynomial")
    deg = len(ints) - 1
    if deg < 1:
        raise ValueError("polynomial must be nonconstant")
    rts = poly_roots(ints)
    total = math.log(abs(ints[-1]))
    for r in rts:
        a = abs(r)
        if a > 1.0:
            total += math.log(a)
    return total / deg


def power_transform(alpha: AlgebraicNumber, n: int) -> AlgebraicNumber:
    """Defining polynomial of alpha^n by resultant elimination.

    Res_y(p(y), x - y^n) is evaluated at deg(p)+1 integer points and
    interpolated exactly, then made squarefree and primitive.  For n < 0
    the coefficients of the |n| result are reversed (alpha must be
    nonzero, which holds since the minimal polynomial is irreducible of
    positive degree with nonzero constant term).
    """
    if n == 0:
        raise ValueError("n must be a nonzero integer")
    p = list(alpha.minpoly)
    if n < 0 and p[0] == 0:
        raise ValueError("cannot invert zero")
    k = abs(n)
    deg = len(p) - 1
    xs = []
    v = 0
    while len(xs) < deg + 1:
        xs.append(v)
        v = -v + (1 if v <= 0 else 0)  # 0, 1, -1, 2, -2, ...
    vals = []
    for x0 in xs:
        gy = [Fraction(x0)] + [Fraction(0)] * (k - 1) + [Fraction(-1)]
        vals.append(resultant([Fraction(c) for c in p], gy))
    # exact Lagrange interpolation
    q = [Fraction(0)] * (deg + 1)
    for i, xi in enumerate(xs):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = _poly_mul(basis, [Fraction(-xj), Fraction(1)])
            denom *= Fraction(xi - xj)
        scale = vals[i] / denom
        for t, c in enumerate(basis):
            q[t] += scale * c
    q = _trim(q)
    sf = _poly_divmod(q, _poly_gcd(q, _derivative(q)))[0]
    ints = _primitive_int(sf)
    if n < 0:
        ints = list(reversed(ints))
        if ints[-1] < 0:
            ints = [-c for c in ints]
    target = alpha.root() ** n
    rts = poly_roots(ints)
    idx = min(range(len(rts)), key=lambda i: abs(rts[i] - target))
    return AlgebraicNumber(tuple(ints), idx)


def _euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def is_root_of_unity(alpha: AlgebraicNumber) -> bool:
    """Exact torsion test: does the minimal polynomial divide x^k - 1 for
    some k with phi(k) <= deg?  (phi(k) >= sqrt(k/2) bounds the scan.)"""
    ints = list(alpha.minpoly)
    deg = len(ints) - 1
    kmax = 2 * deg * deg + 2
    for k in range(1, kmax + 1):
        if _euler_phi(k) > deg:
            continue
        xk = [Fraction(-1)] + [Fraction(0)] * (k - 1) + [Fraction(1)]
        _, rem = _poly_divmod(xk, [Fraction(c) for c in ints])
        if not any(rem):
            return True
    return False


def radical_height(a, n: int) -> float:
    """h(a^(1/n)) = h(a)/n for positive rational a: log max(num, den) / n."""
    a = Fraction(a)
    if a <= 0:
        raise ValueError("radicand must be a positive rational")
    if n < 1:
        raise ValueError("root order must be a positive integer")
    return math.log(max(a.numerator, a.denominator)) / n


def radical_minpoly(a, n: int) -> tuple[int, ...]:
    """The cleared-denominator polynomial q*x^n - p for a = p/q."""
    a = Fraction(a)
    return tuple([-a.numerator] + [0] * (n - 1) + [a.denominator])
