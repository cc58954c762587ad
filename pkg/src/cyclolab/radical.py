"""Formal radical sums sum_j a_j * prod_l alpha_l^(k_(j,l)/d_l) with an
explicit Kummer-Galois action, orbit modulus statistics, the cosine
expansion of conjugate moduli, division-point factorization and exponent
relation normalization.

Conventions: generators are positive rationals interpreted through the
positive real branch alpha^(1/d) > 0 of the fixed embedding; the acting
Kummer group H = prod_l Z/(d_l/c_l) rotates the l-th radical by
zeta_(d_l/c_l)^(r_l).  The cyclotomic part acts through coefficients only
and is enumerated separately (marginal statistics).
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .cyclotomic import CyclotomicNumber, zeta, euler_phi
from .equidist import Arc, ArcBox
from .kummer import rank1_failure, multiplicatively_independent
from .lattice import relation_lattice_basis, shortest_relation, lll_reduce

__all__ = [
    "RadicalContext",
    "RadicalSum",
    "GaloisElement",
    "Monomial",
    "apply_galois",
    "compose",
    "orbit_moduli",
    "cosine_expansion",
    "d_gamma_eps",
    "marginal_orbit_stats",
    "sigma_search",
    "normalize_terms",
    "factor_out_division_point",
    "exponent_relation_basis",
    "term_energy_profile",
    "cosine_identity_sides",
    "parse_radical_sum",
]

ORBIT_CAP = 10**6
BAND_SLACK = 1e-12


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class RadicalContext:
    """Generators, radical denominators, cyclotomic order and Kummer failures.

    Failures c_l default to the rank-1 values at cyclotomic level
    lcm(D, d_l); pass `failures` to pin them by hand (useful to explore the
    action when the true failure would collapse it).
    """

    __slots__ = ("generators", "denominators", "D", "failures", "group", "D_work")

    def __init__(self, generators, denominators, D: int = 1, failures=None):
        gens = tuple(Fraction(g) for g in generators)
        dens = tuple(int(d) for d in denominators)
        if len(gens) != len(dens):
            raise ValueError("one denominator per generator")
        if any(d < 1 for d in dens):
            raise ValueError("denominators must be positive")
        if D < 1:
            raise ValueError("cyclotomic order must be positive")
        if gens and not multiplicatively_independent(gens):
            raise ValueError("generators must be multiplicatively independent")
        if failures is None:
            failures = tuple(
                rank1_failure(g, d, _lcm(D, d))[0] for g, d in zip(gens, dens)
            )
        else:
            failures = tuple(int(c) for c in failures)
            for c, d in zip(failures, dens):
                if c < 1 or d % c:
                    raise ValueError("failures must divide the denominators")
        group = tuple(d // c for d, c in zip(dens, failures))
        D_work = D
        for n in group:
            D_work = _lcm(D_work, n)
        self.generators = gens
        self.denominators = dens
        self.D = D
        self.failures = failures
        self.group = group  # orders of the cyclic Kummer factors
        self.D_work = D_work

    @property
    def rank(self) -> int:
        return len(self.generators)

    def orbit_size(self) -> int:
        size = 1
        for n in self.group:
            size *= n
        return size

    def radical_value(self, kvec) -> float:
        """prod_l alpha_l^(k_l/d_l) on the positive real branch."""
        acc = 0.0
        for g, d, k in zip(self.generators, self.denominators, kvec):
            acc += k / d * math.log(g)
        return math.exp(acc)

    def kummer_elements(self):
        return itertools.product(*(range(n) for n in self.group))

    def lift_t(self, t: int) -> int:
        """Smallest positive lift of t mod D into (Z/D_work)*."""
        if gcd(t, self.D) != 1:
            raise ValueError("not a Galois element")
        t %= self.D
        cand = t if t else self.D  # t = 0 only when D = 1
        while gcd(cand, self.D_work) != 1:
            cand += self.D
        return cand

    def __eq__(self, other):
        return (
            isinstance(other, RadicalContext)
            and self.generators == other.generators
            and self.denominators == other.denominators
            and self.D == other.D
            and self.failures == other.failures
        )

    def __repr__(self):
        return (f"RadicalContext(generators={self.generators}, "
                f"denominators={self.denominators}, D={self.D}, "
                f"failures={self.failures})")


@dataclass(frozen=True)
class GaloisElement:
    """(t, r): cyclotomic part zeta -> zeta^t and Kummer rotations r."""

    t: int
    r: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))


@dataclass(frozen=True)
class Monomial:
    """A division point prod_l alpha_l^(e_l) with rational exponents e_l."""

    generators: tuple
    exponents: tuple  # Fractions

    def value(self) -> float:
        acc = 0.0
        for g, e in zip(self.generators, self.exponents):
            acc += float(e) * math.log(g)
        return math.exp(acc)

    def to_text(self) -> str:
        parts = [f"{g}^({e})" for g, e in zip(self.generators, self.exponents) if e]
        return " * ".join(parts) if parts else "1"


class RadicalSum:
    """sum_j a_j * prod_l alpha_l^(k_(j,l)/d_l); terms with equal exponent
    vectors are merged on construction."""

    __slots__ = ("context", "terms")

    def __init__(self, context: RadicalContext, terms):
        merged: dict[tuple, CyclotomicNumber] = {}
        order: list[tuple] = []
        for coeff, kvec in terms:
            if not isinstance(coeff, CyclotomicNumber):
                coeff = CyclotomicNumber.from_rational(Fraction(coeff))
            kvec = tuple(int(k) for k in kvec)
            if len(kvec) != context.rank:
                raise ValueError("exponent vector length must equal the rank")
            if kvec in merged:
                merged[kvec] = merged[kvec] + coeff
            else:
                merged[kvec] = coeff
                order.append(kvec)
        self.context = context
        self.terms = tuple((merged[k], k) for k in order)

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    def term_values(self) -> np.ndarray:
        """Complex values z_j of the individual terms at the identity."""
        return np.array([
            a.embed() * self.context.radical_value(k) for a, k in self.terms
        ])

    def evaluate(self) -> complex:
        return complex(self.term_values().sum()) if self.terms else 0j

    def is_zero(self) -> bool:
        return all(a.is_zero() for a, _ in self.terms)

    def __repr__(self):
        ctx = self.context
        bits = []
        for a, k in self.terms:
            rad = " * ".join(
                f"{g}^({ki}/{d})"
                for g, d, ki in zip(ctx.generators, ctx.denominators, k)
                if ki
            )
            bits.append(f"({a.to_text()})" + (f" * {rad}" if rad else ""))
        return " + ".join(bits) if bits else "0"


# ------------------------------------------------------------ galois action


def _rotation_factor(context: RadicalContext, r, kvec) -> CyclotomicNumber:
    D = context.D_work
    e = 0
    for n_l, r_l, k_l in zip(context.group, r, kvec):
        e += (D // n_l) * (r_l % n_l) * k_l
    return zeta(D, e % D)


def apply_galois(sigma: GaloisElement, x: RadicalSum) -> RadicalSum:
    """sigma x: coefficients pick up phi_t and the root-of-unity factors
    zeta_(d_l/c_l)^(r_l * k_(j,l)); the radical monomials are unchanged."""
    ctx = x.context
    if len(sigma.r) != ctx.rank:
        raise ValueError("rotation vector length must equal the rank")
    t = ctx.lift_t(sigma.t)
    out = []
    for a, k in x.terms:
        b = a.lift(ctx.D_work) if ctx.D_work % a.order == 0 else a
        b = b.galois_conjugate(t) if t != 1 else b
        b = b * _rotation_factor(ctx, sigma.r, k)
        out.append((b, k))
    return RadicalSum(ctx, out)


def compose(sigma: GaloisElement, tau: GaloisElement, context: RadicalContext) -> GaloisElement:
    """sigma o tau in the semidirect structure: (s, r)(t, q) has cyclotomic
    part s*t and rotations r_l + s*q_l mod (d_l/c_l)."""
    s = context.lift_t(sigma.t)
    t = context.lift_t(tau.t)
    r = tuple(
        (rl + s * ql) % nl
        for rl, ql, nl in zip(sigma.r, tau.r, context.group)
    )
    return GaloisElement((s * t) % context.D_work, r)


# ------------------------------------------------------------ orbit statistics


def _orbit_values(x: RadicalSum) -> np.ndarray:
    """sigma x for sigma ranging over the Kummer group H (t = 1), as complex
    values, in itertools.product order over the rotation tuples."""
    ctx = x.context
    size = ctx.orbit_size()
    if size > ORBIT_CAP:
        raise ValueError("orbit too large")
    zs = x.term_values()
    total = np.zeros(size, dtype=complex)
    for j, (_, kvec) in enumerate(x.terms):
        phase = np.ones(1, dtype=complex)
        for n_l, k_l in zip(ctx.group, kvec):
            col = np.exp(2j * np.pi * (np.arange(n_l) * k_l % n_l) / n_l)
            phase = np.multiply.outer(phase, col).ravel()
        total += zs[j] * phase
    return total


def orbit_moduli(x: RadicalSum) -> list[float]:
    """Multiset {|sigma x|^2 : sigma in H}, sorted."""
    return sorted(float(v) for v in np.abs(_orbit_values(x)) ** 2)


def _in_band(v: float, eps: float) -> bool:
    return 1 - eps - BAND_SLACK <= v <= 1 + eps + BAND_SLACK


def d_gamma_eps(x: RadicalSum, eps: float) -> tuple[Fraction, bool]:
    """Fraction of the Kummer orbit with squared modulus in [1-eps, 1+eps],
    plus a concyclicity flag (all orbit moduli equal within 1e-10)."""
    vals = np.abs(_orbit_values(x)) ** 2
    count = int(sum(1 for v in vals if _in_band(float(v), eps)))
    concyclic = bool(np.max(vals) - np.min(vals) < 1e-10)
    return Fraction(count, len(vals)), concyclic


def cosine_expansion(x: RadicalSum, sigma: GaloisElement) -> float:
    """|sigma x|^2 through term moduli, pairwise angles and rotation
    increments, without applying sigma:

        sum_j |z_j|^2 + sum_(i != j) |z_i||z_j| cos(B_(r,i,j)),
        B_(r,i,j) = angle(z_i -> z_j) + 2 pi sum_l r_l c_l (k_(j,l) - k_(i,l)) / d_l.

    Only the Kummer part of sigma participates (t = 1)."""
    ctx = x.context
    if ctx.lift_t(sigma.t) != 1:
        raise ValueError("cosine expansion applies to Kummer elements (t = 1)")
    zs = x.term_values()
    mags = np.abs(zs)
    total = float(np.sum(mags**2))
    n = len(zs)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if mags[i] == 0 or mags[j] == 0:
                continue
            ang = cmath.phase(zs[j]) - cmath.phase(zs[i])
            rot = 0.0
            for r_l, c_l, d_l, (ki, kj) in zip(
                sigma.r, ctx.failures, ctx.denominators,
                zip(x.terms[i][1], x.terms[j][1]),
            ):
                rot += 2 * math.pi * r_l * c_l * (kj - ki) / d_l
            total += mags[i] * mags[j] * math.cos(ang + rot)
    return total


def marginal_orbit_stats(x: RadicalSum, eps: float, max_work: int = 200000) -> dict:
    """Per-phi band fractions over the Kummer orbit and their exact average.

    For each t in (Z/DZ)*, d(phi_t) is the fraction of the Kummer orbit of
    phi_t(x) inside the band.  The average over t equals the whole-group
    fraction; both sides are computed as exact rationals from the same
    per-element membership bits, so the identity must hold exactly.
    """
    ctx = x.context
    units = [t for t in range(1, ctx.D + 1) if gcd(t, ctx.D) == 1]
    hsize = ctx.orbit_size()
    if len(units) * hsize * max(1, x.n_terms) > max_work:
        raise ValueError("cyclotomic part times orbit too large")
    rows = []
    grand = 0
    for t in units:
        y = apply_galois(GaloisElement(t, (0,) * ctx.rank), x)
        count = 0
        for r in ctx.kummer_elements():
            v = apply_galois(GaloisElement(1, r), y).evaluate()
            if _in_band(abs(v) ** 2, eps):
                count += 1
        rows.append({"t": t, "fraction": Fraction(count, hsize)})
        grand += count
    average = Fraction(grand, len(units) * hsize)
    # whole-group fraction, re-counted elementwise over (t, r)
    full = 0
    for t in units:
        for r in ctx.kummer_elements():
            v = apply_galois(GaloisElement(t, r), x).evaluate()
            if _in_band(abs(v) ** 2, eps):
                full += 1
    full_fraction = Fraction(full, len(units) * hsize)
    best = max(rows, key=lambda row: row["fraction"])
    return {
        "rows": rows,
        "max_t": best["t"],
        "max_fraction": best["fraction"],
        "average": average,
        "full_group_fraction": full_fraction,
        "identity_exact": average == full_fraction,
    }


def sigma_search(x: RadicalSum, box: ArcBox, eps: float) -> list[GaloisElement]:
    """All Kummer elements whose rotation tuple lies in the box and whose
    conjugate squared modulus lies in [1-eps, 1+eps].

    The l-th rotation angle of r is 2 pi r_l c_l / d_l, reduced mod 2 pi.
    """
    ctx = x.context
    if len(box.arcs) != ctx.rank:
        raise ValueError("box dimension must equal the rank")
    vals = np.abs(_orbit_values(x)) ** 2
    found = []
    for idx, r in enumerate(ctx.kummer_elements()):
        ok = True
        for arc, r_l, c_l, d_l in zip(box.arcs, r, ctx.failures, ctx.denominators):
            if not arc.contains_turn(Fraction(r_l * c_l, d_l) % 1):
                ok = False
                break
        if ok and _in_band(float(vals[idx]), eps):
            found.append(GaloisElement(1, r))
    return found


# --------------------------------------------------------- term manipulation


def normalize_terms(x: RadicalSum) -> RadicalSum:
    """Merge equal exponent vectors and drop zero coefficients; idempotent."""
    kept = [(a, k) for a, k in x.terms if not a.is_zero()]
    return RadicalSum(x.context, kept)


def factor_out_division_point(x: RadicalSum) -> tuple[RadicalSum, Monomial]:
    """Write x = y * z with z a division point and y having, per coordinate,
    minimum exponent 0 and exponents coprime to the reduced denominator.

    Per coordinate t: subtract the minimum exponent, divide the shifted
    exponents and d_t by their gcd.  The term count is preserved, and
    x = y * z is verified numerically at the fixed embedding.
    """
    xn = normalize_terms(x)
    if xn.n_terms == 0:
        raise ValueError("cannot factor the zero sum")
    ctx = xn.context
    b = ctx.rank
    kmat = [list(k) for _, k in xn.terms]
    mins, new_dens, divisors = [], [], []
    for t in range(b):
        col = [row[t] for row in kmat]
        kmin = min(col)
        shifted = [k - kmin for k in col]
        g = ctx.denominators[t]
        for s in shifted:
            g = gcd(g, s)
        mins.append(kmin)
        divisors.append(g)
        new_dens.append(ctx.denominators[t] // g)
    new_ctx = RadicalContext(ctx.generators, new_dens, ctx.D)
    new_terms = [
        (a, tuple((k[t] - mins[t]) // divisors[t] for t in range(b)))
        for a, k in xn.terms
    ]
    y = RadicalSum(new_ctx, new_terms)
    z = Monomial(
        ctx.generators,
        tuple(Fraction(mins[t], ctx.denominators[t]) for t in range(b)),
    )
    if y.n_terms != xn.n_terms:
        raise AssertionError("factorization changed the term count")
    lhs = xn.evaluate()
    rhs = y.evaluate() * z.value()
    if abs(lhs - rhs) > 1e-10 * max(1.0, abs(lhs)):
        raise AssertionError("division-point factorization failed numerically")
    return y, z


def exponent_relation_basis(kmatrix, m: int, threshold: int | None = None) -> dict:
    """Per-column relation data for exponent columns modulo m.

    For each column l a maximal subset J_l is grown greedily: an index
    joins while the subset's relation lattice mod m has no nonzero vector
    of max-norm <= floor(sqrt(m)) (the finite-instance stand-in for
    "no relation").  Every index j then gets integers lambda != 0 and
    (lambda_mu)_(mu in J_l) with
    lambda * k_(j,l) + sum_mu lambda_mu k_(mu,l) = 0 (mod m).
    The combined data theta, Lambda, K satisfies
    theta * k_(j,l) = K_(j,l) (mod m).
    """
    kmatrix = [list(map(int, row)) for row in kmatrix]
    if m < 1:
        raise ValueError("modulus must be positive")
    if threshold is None:
        threshold = math.isqrt(m)
    nrows = len(kmatrix)
    ncols = len(kmatrix[0]) if nrows else 0

    def has_small_relation(entries: list[int]) -> bool:
        basis = relation_lattice_basis(m, entries)
        rel = shortest_relation(basis)
        return rel is not None and max(abs(a) for a in rel) <= threshold

    columns = []
    all_lambdas = []
    for l in range(ncols):
        col = [kmatrix[j][l] for j in range(nrows)]
        J: list[int] = []
        for j in range(nrows):
            if not has_small_relation([col[mu] for mu in J] + [col[j]]):
                J.append(j)
        per_j = []
        for j in range(nrows):
            if j in J:
                lam, lam_mu = 1, {j: -1}
            else:
                lam, lam_mu = None, None
                if J:
                    basis = relation_lattice_basis(m, [col[j]] + [col[mu] for mu in J])
                    for vec in lll_reduce(basis):
                        if vec[0] != 0:
                            lam = vec[0]
                            lam_mu = {mu: vec[1 + i] for i, mu in enumerate(J)}
                            break
                if lam is None:
                    lam = m // gcd(m, col[j]) if col[j] % m else 1
                    lam_mu = {}
            per_j.append({"j": j, "lam": lam, "lam_mu": lam_mu})
            all_lambdas.append(abs(lam))
        columns.append({"column": l, "J": J, "relations": per_j})
    theta = 1
    for v in all_lambdas:
        theta *= v
    Lambda = []  # Lambda[j][l] = dict mu -> -theta * lam_mu / lam
    K = [[0] * ncols for _ in range(nrows)]
    for j in range(nrows):
        Lrow = []
        for l in range(ncols):
            rel = columns[l]["relations"][j]
            lam, lam_mu = rel["lam"], rel["lam_mu"]
            lam_big = {mu: -theta * v // lam for mu, v in lam_mu.items()}
            Lrow.append(lam_big)
            K[j][l] = sum(lam_big[mu] * kmatrix[mu][l] for mu in lam_big)
        Lambda.append(Lrow)
    for j in range(nrows):
        for l in range(ncols):
            if (theta * kmatrix[j][l] - K[j][l]) % m:
                raise AssertionError("relation normalization failed")
    return {
        "m": m,
        "threshold": threshold,
        "columns": columns,
        "theta": theta,
        "Lambda": Lambda,
        "K": K,
    }


# ----------------------------------------------------------- energy profile


def cosine_identity_sides(xs, eta) -> tuple[float, float]:
    """Both sides of the cross-term rearrangement identity

        sum x_j^2 + eta sum_(i!=j) x_i x_j
          = -eta/2 sum_(i!=j) (x_i - x_j)^2 + (1 + eta(n-1)) sum x_j^2,

    each evaluated by direct double loops."""
    xs = np.asarray(xs, dtype=float)
    n = len(xs)
    sq = float(np.sum(xs**2))
    cross = float(np.sum(np.outer(xs, xs))) - sq
    lhs = sq + eta * cross
    diffs = np.subtract.outer(xs, xs) ** 2
    rhs = -eta / 2 * float(diffs.sum()) + (1 + eta * (n - 1)) * sq
    return lhs, rhs


def term_energy_profile(x: RadicalSum, eps: float, gamma: float | None = None) -> dict:
    """Term energies |z_j|^2, their total, the band fraction, and the
    rearrangement identity at eta = +-sin(gamma * eps)."""
    zs = x.term_values()
    energies = [float(abs(z)) ** 2 for z in zs]
    frac, concyclic = d_gamma_eps(x, eps)
    if gamma is None:
        gamma = float(max(1, x.n_terms))
    mags = np.abs(zs)
    checks = {}
    for label, eta in (("eta_plus", math.sin(gamma * eps)),
                       ("eta_minus", -math.sin(gamma * eps))):
        lhs, rhs = cosine_identity_sides(mags, eta)
        checks[label] = {"eta": eta, "lhs": lhs, "rhs": rhs, "diff": abs(lhs - rhs)}
    return {
        "energies": energies,
        "total_energy": float(sum(energies)),
        "band_fraction": frac,
        "concyclic": concyclic,
        "gamma": gamma,
        "identity_checks": checks,
    }


# ------------------------------------------------------------------ parsing


def parse_radical_sum(text: str, D: int | None = None, failures=None) -> RadicalSum:
    """Parse "(1/2) * z8^1 * 2^(3/6) + ..." into a RadicalSum.

    Factors: a rational (optionally parenthesized), zN^k for a root of
    unity, or base^(p/q) for a radical of a positive rational base.  The
    context is inferred: generators in order of first appearance, each
    denominator the lcm of the exponent denominators seen for that base.
    """
    text = text.replace("-", "+ -").replace("++ -", "+ -")
    raw_terms = [t.strip() for t in text.split("+") if t.strip()]
    parsed = []
    gens: list[Fraction] = []
    dens: dict[Fraction, int] = {}
    zorders: list[int] = []
    for raw in raw_terms:
        sign = 1
        if raw.startswith("-"):
            sign = -1
            raw = raw[1:].strip()
        coeff_rat = Fraction(sign)
        zfactors: list[tuple[int, int]] = []
        radicals: list[tuple[Fraction, Fraction]] = []
        for factor in (f.strip() for f in raw.split("*")):
            if not factor:
                continue
            if factor.startswith("(") and factor.endswith(")") and "^" not in factor:
                factor = factor[1:-1].strip()
            if factor.startswith("z"):
                body = factor[1:]
                if "^" in body:
                    o_s, _, k_s = body.partition("^")
                    zfactors.append((int(o_s), int(k_s)))
                else:
                    zfactors.append((int(body), 1))
            elif "^(" in factor and factor.endswith(")"):
                base_s, _, exp_s = factor.partition("^(")
                base = Fraction(base_s.strip().strip("()"))
                exp_s = exp_s[:-1].strip()
                # keep the written denominator: 3/6 means k=3 over d=6
                if "/" in exp_s:
                    p_s, _, q_s = exp_s.partition("/")
                    p, q = int(p_s), int(q_s)
                else:
                    p, q = int(exp_s), 1
                if q < 1:
                    raise ValueError("radical denominators must be positive")
                if base <= 0:
                    raise ValueError("radical bases must be positive rationals")
                radicals.append((base, (p, q)))
            else:
                coeff_rat *= Fraction(factor)
        for o, _ in zfactors:
            if o not in zorders:
                zorders.append(o)
        for base, (_, q) in radicals:
            if base not in gens:
                gens.append(base)
                dens[base] = q
            else:
                dens[base] = _lcm(dens[base], q)
        parsed.append((coeff_rat, zfactors, radicals))
    Dw = D if D is not None else 1
    for o in zorders:
        Dw = _lcm(Dw, o)
    context = RadicalContext(gens, [dens[g] for g in gens], Dw, failures=failures)
    terms = []
    for coeff_rat, zfactors, radicals in parsed:
        coeff = CyclotomicNumber.from_rational(coeff_rat, 1)
        for o, k in zfactors:
            coeff = coeff * zeta(o, k)
        kvec = [0] * len(gens)
        for base, (p, q) in radicals:
            idx = gens.index(base)
            kvec[idx] += p * (dens[base] // q)
        terms.append((coeff, tuple(kvec)))
    return RadicalSum(context, terms)
