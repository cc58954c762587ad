"""Kummer failure constants for rational generators over cyclotomic fields.

The failure c of a query (a, d, m) is the largest e | d such that a has an
e-th root inside Q(zeta_m); the degree of Q(zeta_m, a^(1/d)) over Q(zeta_m)
is then d/c.

Root existence is decided exactly.  Any e-th root of a rational that lies
in some cyclotomic field must have the shape (rho or sqrt(rho)) * (root of
unity) with rho a positive rational: odd-order real radicals of
non-powers generate non-abelian fields, and a positive real 4th root of a
non-square does too, which collapses everything beyond a single square
root layer.  Square roots of rationals are located by the conductor
criterion; twisted candidates sqrt(rho) * zeta are constructed exactly
from Gauss sums and tested for Galois invariance.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .cyclotomic import CyclotomicNumber, zeta, euler_phi
from .lattice import lll_reduce

__all__ = [
    "KummerQuery",
    "squarefree_part",
    "conductor_of_sqrt",
    "sqrt_in_cyclotomic",
    "has_nth_root_in_cyclotomic",
    "rank1_failure",
    "tower_degrees",
    "root_membership_oracle",
    "OracleReport",
    "multiplicatively_independent",
]


# ----------------------------------------------------------- integer helpers


def _factorize(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_part(n: int) -> int:
    """The squarefree s with n = s * t^2; the sign of n rides on s."""
    if n == 0:
        raise ValueError("zero has no squarefree part")
    s = -1 if n < 0 else 1
    for p, e in _factorize(n).items():
        if e % 2:
            s *= p
    return s


def _nth_root_rational(a: Fraction, n: int) -> Fraction | None:
    """Exact rational n-th root of a, or None.  Even n requires a > 0."""
    if n == 1:
        return a
    if a < 0 and n % 2 == 0:
        return None

    def iroot(x: int) -> int | None:
        if x == 0:
            return 0
        neg = x < 0
        x = abs(x)
        r = round(x ** (1.0 / n))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand**n == x:
                return -cand if neg else cand
        return None

    p = iroot(a.numerator)
    q = iroot(a.denominator)
    if p is None or q is None:
        return None
    return Fraction(p, q)


def _v2(n: int) -> int:
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# -------------------------------------------------------- conductor criterion


def conductor_of_sqrt(a: Fraction) -> int:
    """Conductor of Q(sqrt(a)) for rational a != 0 (1 if sqrt(a) is rational).

    With s the squarefree part of numerator*denominator: |s| if s = 1 mod 4,
    else 4|s|.
    """
    a = Fraction(a)
    s = squarefree_part(a.numerator * a.denominator)
    if s == 1:
        return 1
    return abs(s) if s % 4 == 1 else 4 * abs(s)


def sqrt_in_cyclotomic(a, m: int) -> bool:
    """Exact test sqrt(a) in Q(zeta_m) via the conductor criterion."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("zero radicand")
    return m % conductor_of_sqrt(a) == 0


def _zeta_order_in_cyclotomic(t: int, m: int) -> bool:
    """Is a primitive t-th root of unity contained in Q(zeta_m)?"""
    return m % t == 0 or (m % 2 == 1 and (2 * m) % t == 0)


# ------------------------------------------- exact sqrt as cyclotomic number


def _gauss_sum(p: int) -> CyclotomicNumber:
    """Quadratic Gauss sum sum_t zeta_p^(t^2) for an odd prime p; equals
    sqrt(p) when p = 1 mod 4 and i*sqrt(p) when p = 3 mod 4."""
    g = CyclotomicNumber.zero(p)
    for t in range(p):
        g = g + zeta(p, (t * t) % p)
    return g


def sqrt_as_cyclotomic(rho: Fraction, order: int) -> CyclotomicNumber:
    """The positive square root of a positive rational, exactly, inside
    Q(zeta_order); raises if the conductor does not divide the order."""
    rho = Fraction(rho)
    if rho <= 0:
        raise ValueError("need a positive rational")
    cond = conductor_of_sqrt(rho)
    if order % cond != 0:
        raise ValueError("order is not a multiple of the conductor")
    n = rho.numerator * rho.denominator
    s = squarefree_part(n)
    t2 = _nth_root_rational(Fraction(n, s), 2)
    result = CyclotomicNumber.from_rational(Fraction(t2, rho.denominator), 1)
    k_imag = 0
    for p in _factorize(s):
        if p == 2:
            result = result * (zeta(8) + zeta(8, 7))
        else:
            result = result * _gauss_sum(p)
            if p % 4 == 3:
                k_imag += 1
    if k_imag % 2 == 1:
        result = result * zeta(4)  # s = 3 mod 4 or even, so 4 | conductor
    if order % result.order != 0:
        raise AssertionError("construction left the target field")
    result = result.lift(order)
    # verify the construction: square equals rho, embedding is positive
    if not (result * result == rho):
        raise AssertionError("square root construction failed")
    if result.embed().real < 0:
        result = -result
    return result


def _in_subfield(x: CyclotomicNumber, m: int) -> bool:
    """Does x (given in Q(zeta_L), m | L) lie in Q(zeta_m)?  Decided by
    invariance under every Galois element fixing zeta_m."""
    L = x.order
    if L % m != 0:
        raise ValueError("ambient order must be a multiple of m")
    for t in range(1 + m, L, m):
        if gcd(t, L) != 1:
            continue
        if not (x.galois_conjugate(t) == x):
            return False
    return True


# --------------------------------------------------------- e-th root existence


def has_nth_root_in_cyclotomic(a, e: int, m: int) -> bool:
    """Exact decision: does the rational a have an e-th root in Q(zeta_m)?

    All e-th roots of a are |a|^(1/e) * zeta_(2e)^tau with tau even for
    a > 0 and odd for a < 0.  Membership forces |a|^(1/e) to be rational or
    the square root of a rational (see the module docstring), which leaves
    two decidable branches plus a definite "no".
    """
    a = Fraction(a)
    if a == 0:
        raise ValueError("zero has no root data")
    if e < 1:
        raise ValueError("root order must be positive")
    if e == 1:
        return True
    mag = abs(a)
    parity = 0 if a > 0 else 1

    rho = _nth_root_rational(mag, e)
    if rho is not None:
        if a > 0:
            return True  # the rational root rho itself
        # roots are rho * zeta_(2e)^odd; the smallest twist order is 2^(v2(e)+1)
        return _zeta_order_in_cyclotomic(2 ** (_v2(e) + 1), m)

    if e % 2 == 0:
        rho = _nth_root_rational(mag, e // 2)
        if rho is not None and _nth_root_rational(rho, 2) is None:
            # candidates sqrt(rho) * zeta_(2e)^tau, tau = parity (mod 2)
            for tau in range(parity, 2 * e, 2):
                g = gcd(tau, 2 * e)
                t = (2 * e) // g if tau else 1
                if t <= 2:
                    if sqrt_in_cyclotomic(rho, m):
                        return True  # candidate is +-sqrt(rho)
                elif t == 4:
                    if sqrt_in_cyclotomic(-rho, m):
                        return True  # zeta_4 * sqrt(rho) = sqrt(-rho)
                else:
                    L = m
                    for f in (t, conductor_of_sqrt(rho), 4):
                        L = _lcm(L, f)
                    x = sqrt_as_cyclotomic(rho, L) * zeta(L, (L // t) * (tau // g))
                    if _in_subfield(x, m):
                        return True
            return False
    return False


# --------------------------------------------------------------- failure c


@dataclass(frozen=True)
class KummerQuery:
    a: Fraction
    d: int
    m: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        if self.a == 0 or self.a == 1 or self.a == -1:
            raise ValueError("torsion generator")
        if self.d < 1 or self.m < 1 or not _zeta_order_in_cyclotomic(self.d, self.m):
            raise ValueError("need the d-th roots of unity inside Q(zeta_m)")


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out += [d, n // d]
        d += 1
    return sorted(set(out))


def rank1_failure(a, d: int, m: int) -> tuple[int, int]:
    """(c, degree) for one generator: c = largest e | d with an e-th root of
    a in Q(zeta_m); degree = d/c = [Q(zeta_m, a^(1/d)) : Q(zeta_m)]."""
    q = KummerQuery(Fraction(a), d, m)
    for e in sorted(_divisors(q.d), reverse=True):
        if has_nth_root_in_cyclotomic(q.a, e, q.m):
            return e, q.d // e
    raise AssertionError("unreachable: e = 1 always admits a root")


# --------------------------------------------------- multi-generator towers


def _prime_exponent_vector(a: Fraction, primes: list[int]) -> list[int]:
    vec = []
    fs_n = _factorize(a.numerator)
    fs_d = _factorize(a.denominator)
    for p in primes:
        vec.append(fs_n.get(p, 0) - fs_d.get(p, 0))
    return vec


def multiplicatively_independent(gens) -> bool:
    """Full-rank test of the prime-exponent matrix over Q."""
    gens = [Fraction(g) for g in gens]
    if any(g <= 0 or g == 1 for g in gens):
        raise ValueError("generators must be positive rationals != 1")
    primes = sorted({p for g in gens
                     for p in (set(_factorize(g.numerator)) | set(_factorize(g.denominator)))})
    rows = [[Fraction(x) for x in _prime_exponent_vector(g, primes)] for g in gens]
    # Gaussian elimination rank
    rank = 0
    cols = len(primes)
    for col in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank == len(gens)


def tower_degrees(generators, d: list[int], m: int) -> tuple[list[int], list[int]]:
    """Per-level failures (c_1, ..., c_b) and group shape [d_l/c_l].

    Restricted regime only: either every d_l is odd, or the sqrt-relevant
    conductors of the generators with even d_l are pairwise coprime.  In
    both regimes the 2-layers cannot entangle across generators, so each
    level's failure equals its rank-1 value.  Anything else is refused.
    """
    gens = [Fraction(g) for g in generators]
    if len(gens) != len(d):
        raise ValueError("one denominator per generator")
    if not multiplicatively_independent(gens):
        raise ValueError("generators are not multiplicatively independent")
    all_odd = all(dl % 2 == 1 for dl in d)
    if not all_odd:
        conds = []
        for g, dl in zip(gens, d):
            if dl % 2 == 0:
                f = conductor_of_sqrt(g)
                if dl % 4 == 0:
                    f = _lcm(f, 8)  # deeper 2-layers live over conductor 8
                conds.append(f)
        for i in range(len(conds)):
            for j in range(i + 1, len(conds)):
                if gcd(conds[i], conds[j]) != 1:
                    raise ValueError("entangled case unsupported")
    cs = []
    for g, dl in zip(gens, d):
        c, _ = rank1_failure(g, dl, m)
        cs.append(c)
    shape = [dl // c for dl, c in zip(d, cs)]
    return cs, shape


# ------------------------------------------------------------------- oracle


@dataclass(frozen=True)
class OracleReport:
    status: str  # "true" | "false" | "inconclusive"
    certificate: dict | None
    detail: dict


def root_membership_oracle(a, e: int, m: int,
                           scales=(10**25, 10**40)) -> OracleReport:
    """Independent membership oracle by integer-relation detection.

    For each e-th root candidate beta = |a|^(1/e) * zeta_(2e)^tau, look for
    a rational vector v with sum_i v_i zeta_m^i = beta via LLL on a scaled
    lattice, then verify (sum v_i zeta_m^i)^e = a exactly in the
    cyclotomic module.  A verified answer is exact; a near-miss relation
    that fails exact verification at every scale yields "inconclusive".
    """
    import mpmath as mp

    a = Fraction(a)
    if a == 0:
        raise ValueError("zero has no root data")
    phi = euler_phi(m)
    if e * phi > 64:
        raise ValueError("oracle restricted to tiny cases (e * phi(m) <= 64)")
    parity = 0 if a > 0 else 1
    near_miss = False
    digits = max(len(str(s)) for s in scales) + 25
    with mp.workdps(digits):
        mag = mp.root(abs(mp.mpf(a.numerator)) / mp.mpf(a.denominator), e)
        zs = [mp.e ** (2j * mp.pi * i / m) for i in range(phi)]
        for tau in range(parity, 2 * e, 2):
            beta = mag * mp.e ** (1j * mp.pi * tau / e)
            for scale in scales:
                S = mp.mpf(scale)
                rows = []
                for i in range(phi):
                    rows.append([1 if j == i else 0 for j in range(phi)] + [0]
                                + [int(mp.nint(S * zs[i].real)), int(mp.nint(S * zs[i].imag))])
                rows.append([0] * phi + [1]
                            + [int(mp.nint(S * beta.real)), int(mp.nint(S * beta.imag))])
                reduced = lll_reduce(rows)
                reduced.sort(key=lambda r: max(abs(x) for x in r))
                for vec in reduced:
                    nb = vec[phi]
                    if nb == 0:
                        continue
                    v = [Fraction(-vec[i], nb) for i in range(phi)]
                    # spurious balanced LLL vectors carry entries that grow
                    # with the scale (~ scale^(2/(phi+3))); genuine relations
                    # have desk-sized rational coefficients
                    if any(max(abs(c.numerator), c.denominator) > 100 for c in v):
                        continue
                    approx = sum(complex(c) * complex(zs[i]) for i, c in enumerate(v))
                    if abs(approx - complex(beta)) > 1e-10:
                        continue
                    x = CyclotomicNumber(m, v + [Fraction(0)] * (m - phi))
                    if x**e == a:
                        cert = {"tau": tau, "v": [str(c) for c in v]}
                        return OracleReport("true", cert, {"scale": scale})
                    if scale == scales[-1]:
                        # unexplained candidate at the retry scale too
                        near_miss = True
                    break
    if near_miss:
        return OracleReport("inconclusive", None,
                            {"reason": "near-miss relation failed exact verification"})
    return OracleReport("false", None, {})
