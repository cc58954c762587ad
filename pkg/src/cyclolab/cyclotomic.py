"""Exact arithmetic in cyclotomic fields Q(zeta_D).

A value is stored as a length-D vector of rationals over the power basis
zeta_D^0 .. zeta_D^(D-1) and is reduced modulo the D-th cyclotomic
polynomial only on demand (equality, inversion).  The complex embedding is
fixed once and for all: zeta_D -> exp(2*pi*i/D).
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "CyclotomicNumber",
    "cyclotomic_polynomial",
    "zeta",
    "rational",
]


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _int_poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (ascending coefficients)."""
    num = list(num)
    dn = len(den) - 1
    lc = den[-1]
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c % lc != 0:
            raise ArithmeticError("division is not exact")
        q = c // lc
        out[i - dn] = q
        if q:
            for j, dj in enumerate(den):
                num[i - dn + j] -= q * dj
    if any(num[:dn]):
        raise ArithmeticError("division is not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, ascending degree.

    Computed by exact division of z^n - 1 by all Phi_e with e | n, e < n.
    """
    if n < 1:
        raise ValueError("order must be positive")
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]
    for e in _divisors(n):
        if e < n:
            poly = _int_poly_divexact(poly, list(cyclotomic_polynomial(e)))
    return tuple(poly)


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    count = 0
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            count += 1
    return count


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class CyclotomicNumber:
    """An element of Q(zeta_D) as a rational vector over the power basis."""

    __slots__ = ("order", "coeffs", "_canon")

    def __init__(self, order: int, coeffs):
        if order < 1:
            raise ValueError("order must be positive")
        coeffs = tuple(_as_fraction(c) for c in coeffs)
        if len(coeffs) != order:
            raise ValueError("coefficient vector must have length equal to the order")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_canon", None)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("CyclotomicNumber is immutable")

    # ------------------------------------------------------------ builders
    @classmethod
    def zero(cls, order: int = 1) -> "CyclotomicNumber":
        return cls(order, [Fraction(0)] * order)

    @classmethod
    def one(cls, order: int = 1) -> "CyclotomicNumber":
        return cls.from_rational(1, order)

    @classmethod
    def from_rational(cls, q, order: int = 1) -> "CyclotomicNumber":
        v = [Fraction(0)] * order
        v[0] = Fraction(q)
        return cls(order, v)

    @classmethod
    def root_of_unity(cls, order: int, k: int = 1) -> "CyclotomicNumber":
        v = [Fraction(0)] * order
        v[k % order] = Fraction(1)
        return cls(order, v)

    # ------------------------------------------------------------ helpers
    def lift(self, order: int) -> "CyclotomicNumber":
        """Canonical lift to Q(zeta_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order != 0:
            raise ValueError("can only lift to a multiple of the order")
        step = order // self.order
        v = [Fraction(0)] * order
        for j, c in enumerate(self.coeffs):
            if c:
                v[j * step] = c
        return CyclotomicNumber(order, v)

    def _pair(self, other):
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.from_rational(Fraction(other))
        D = _lcm(self.order, other.order)
        return self.lift(D), other.lift(D)

    # ---------------------------------------------------------- arithmetic
    def __add__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return CyclotomicNumber(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, CyclotomicNumber) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CyclotomicNumber(self.order, [c * q for c in self.coeffs])
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._pair(other)
        D = a.order
        out = [Fraction(0)] * D
        nz_a = [(i, c) for i, c in enumerate(a.coeffs) if c]
        nz_b = [(j, c) for j, c in enumerate(b.coeffs) if c]
        for i, ca in nz_a:
            for j, cb in nz_b:
                k = i + j
                if k >= D:
                    k -= D
                out[k] += ca * cb
        return CyclotomicNumber(D, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / q)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = CyclotomicNumber.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ---------------------------------------------------------- reduction
    def canonical(self) -> tuple[Fraction, ...]:
        """Representative of degree < phi(order), reduced mod Phi_order."""
        if self._canon is not None:
            return self._canon
        phi = cyclotomic_polynomial(self.order)
        deg_phi = len(phi) - 1
        rem = list(self.coeffs)
        for i in range(len(rem) - 1, deg_phi - 1, -1):
            c = rem[i]
            if c:
                rem[i] = Fraction(0)
                for j in range(deg_phi):
                    rem[i - deg_phi + j] -= c * phi[j]
        canon = tuple(rem[:deg_phi])
        object.__setattr__(self, "_canon", canon)
        return canon

    def is_zero(self) -> bool:
        return not any(self.canonical())

    def is_rational(self) -> bool:
        return not any(self.canonical()[1:])

    def rational_value(self) -> Fraction:
        c = self.canonical()
        if any(c[1:]):
            raise ValueError("value is not rational")
        return c[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(Fraction(other))
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._pair(other)
        return (a - b).is_zero()

    __hash__ = None  # semantic equality across orders; not hashable

    # ------------------------------------------------------------- galois
    def galois_conjugate(self, t: int) -> "CyclotomicNumber":
        """Apply zeta_D -> zeta_D^t; t must be coprime to the order."""
        D = self.order
        if gcd(t, D) != 1:
            raise ValueError("not a Galois element")
        t %= D
        v = [Fraction(0)] * D
        for j, c in enumerate(self.coeffs):
            if c:
                v[(j * t) % D] += c
        return CyclotomicNumber(D, v)

    def conjugate(self) -> "CyclotomicNumber":
        return self.galois_conjugate(-1)

    def abs_squared(self) -> "CyclotomicNumber":
        """x * conj(x); fixed by conjugation, nonnegative real under embedding."""
        return self * self.conjugate()

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse via extended Euclid against Phi_order."""
        D = self.order
        g = list(self.canonical())
        while g and not g[-1]:
            g.pop()
        if not g:
            raise ZeroDivisionError("division by zero")
        phi = [Fraction(c) for c in cyclotomic_polynomial(D)]
        # extended Euclid in Q[z]: u*g + v*phi = 1 (phi irreducible, g != 0)
        r0, r1 = phi, g
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def polydivmod(a, b):
            a = list(a)
            q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
            while len(a) >= len(b) and any(a):
                while a and not a[-1]:
                    a.pop()
                if len(a) < len(b):
                    break
                c = a[-1] / b[-1]
                k = len(a) - len(b)
                q[k] += c
                for j in range(len(b)):
                    a[k + j] -= c * b[j]
                a.pop()
            while len(a) > 1 and not a[-1]:
                a.pop()
            return q, a

        def polysub(a, b):
            n = max(len(a), len(b))
            a = a + [Fraction(0)] * (n - len(a))
            b = b + [Fraction(0)] * (n - len(b))
            return [x - y for x, y in zip(a, b)]

        def polymul(a, b):
            out = [Fraction(0)] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            out[i + j] += x * y
            return out

        while any(r1):
            q, r = polydivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, polysub(s0, polymul(q, s1))
        # r0 = gcd (a nonzero constant since Phi is irreducible and g != 0)
        const = r0[0]
        inv_coeffs = [c / const for c in s0]
        v = [Fraction(0)] * D
        for j, c in enumerate(inv_coeffs):
            v[j % D] += c
        return CyclotomicNumber(D, v)

    # ---------------------------------------------------------- embedding
    def embed(self) -> complex:
        """Complex value under the fixed embedding zeta_D -> e^(2*pi*i/D)."""
        D = self.order
        total = 0j
        for j, c in enumerate(self.coeffs):
            if c:
                total += float(c) * cmath.exp(2j * cmath.pi * j / D)
        return total

    # -------------------------------------------------------- text format
    def to_text(self) -> str:
        """Serialize as "c0 + c1*z^1 + ... @ D" with rationals "p/q"."""
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            parts.append(str(c) if j == 0 else f"{c}*z^{j}")
        if not parts:
            parts = ["0"]
        return " + ".join(parts) + f" @ {self.order}"

    @classmethod
    def parse(cls, text: str) -> "CyclotomicNumber":
        body, _, order_s = text.rpartition("@")
        if not order_s.strip():
            raise ValueError("missing order marker '@ D'")
        order = int(order_s.strip())
        v = [Fraction(0)] * order
        body = body.strip()
        if body:
            for term in body.split(" + "):
                term = term.strip()
                if not term:
                    continue
                if "*z^" in term:
                    c_s, _, k_s = term.partition("*z^")
                    v[int(k_s) % order] += Fraction(c_s)
                elif term.startswith("z^"):
                    v[int(term[2:]) % order] += 1
                else:
                    v[0] += Fraction(term)
        return cls(order, v)

    def __repr__(self):
        return f"CyclotomicNumber({self.to_text()!r})"


def zeta(order: int, k: int = 1) -> CyclotomicNumber:
    """Shorthand for the root of unity zeta_order^k."""
    return CyclotomicNumber.root_of_unity(order, k)


def rational(q, order: int = 1) -> CyclotomicNumber:
    """Shorthand for a rational number as a cyclotomic value."""
    return CyclotomicNumber.from_rational(Fraction(q), order)
