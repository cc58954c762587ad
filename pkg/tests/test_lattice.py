import random
from math import gcd

from hypothesis import given, settings, strategies as st

from cyclolab.lattice import (
    hnf,
    hnf_det,
    kernel_of_form,
    kernel_of_matrix,
    relation_lattice_basis,
    in_lattice,
    intersect_lattices,
    lll_reduce,
    shortest_relation,
)


def test_kernel_of_form():
    rng = random.Random(0)
    for _ in range(100):
        n = rng.randint(1, 5)
        w = [rng.randint(-9, 9) for _ in range(n)]
        ker = kernel_of_form(w)
        expected_rank = n if not any(w) else n - 1
        assert len(ker) == expected_rank
        for v in ker:
            assert sum(a * b for a, b in zip(v, w)) == 0


def test_relation_lattice_examples():
    b = relation_lattice_basis(12, [2, 3])
    assert in_lattice(b, [3, 2])
    assert hnf_det(b) == 12
    assert relation_lattice_basis(5, [1, 0]) == [[5, 0], [0, 1]]
    b1 = relation_lattice_basis(1, [4, 7])
    assert in_lattice(b1, [1, 0]) and in_lattice(b1, [0, 1])


def test_relation_lattice_brute_force():
    rng = random.Random(3)
    for _ in range(40):
        m = rng.randint(1, 10)
        M = rng.randint(1, 3)
        k = [rng.randint(-6, 6) for _ in range(M)]
        basis = relation_lattice_basis(m, k)
        count = 0
        idx = [0] * M

        def rec(pos, acc):
            nonlocal count
            if pos == M:
                if acc % m == 0:
                    count += 1
                return
            for v in range(m):
                rec(pos + 1, acc + v * k[pos])

        rec(0, 0)
        assert hnf_det(basis) == m**M // count
        # membership agrees with the direct congruence on random vectors
        for _ in range(10):
            n = [rng.randint(-8, 8) for _ in range(M)]
            direct = sum(a * b for a, b in zip(n, k)) % m == 0
            assert in_lattice(basis, n) == direct
        # m * e_i always present
        for i in range(M):
            assert in_lattice(basis, [m if j == i else 0 for j in range(M)])


def test_intersection():
    b1 = relation_lattice_basis(7, [1, 1])
    b2 = relation_lattice_basis(11, [1, 1])
    inter = intersect_lattices(b1, b2)
    assert in_lattice(inter, [1, -1])
    assert not in_lattice(inter, [1, 0])
    # intersection membership = membership in both
    rng = random.Random(9)
    for _ in range(50):
        v = [rng.randint(-20, 20) for _ in range(2)]
        assert in_lattice(inter, v) == (in_lattice(b1, v) and in_lattice(b2, v))


def test_lll_preserves_lattice_and_shortens():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(2, 4)
        M = [[rng.randint(-40, 40) for _ in range(n)] for _ in range(n)]
        h = hnf(M)
        if len(h) != n:
            continue
        red = lll_reduce(M)
        assert hnf(red) == h
        norm = lambda v: sum(x * x for x in v)
        assert min(norm(v) for v in red) <= min(norm(v) for v in M)


def test_lll_first_vector_quality():
    # the first reduced vector obeys the LLL approximation bound against a
    # brute-force shortest vector
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(2, 3)
        M = [[rng.randint(-15, 15) for _ in range(n)] for _ in range(n)]
        h = hnf(M)
        if len(h) != n:
            continue
        red = lll_reduce(M)
        # brute force shortest over small combinations of the reduced basis
        best = None
        rng2 = range(-4, 5)
        import itertools

        for coeffs in itertools.product(rng2, repeat=n):
            if not any(coeffs):
                continue
            v = [sum(c * red[i][j] for i, c in enumerate(coeffs)) for j in range(n)]
            norm = sum(x * x for x in v)
            if best is None or norm < best:
                best = norm
        first = sum(x * x for x in red[0])
        assert first <= 2 ** (n - 1) * best


def test_shortest_relation():
    inter = intersect_lattices(
        intersect_lattices(
            relation_lattice_basis(7, [1, 1]), relation_lattice_basis(11, [1, 1])
        ),
        relation_lattice_basis(13, [1, 1]),
    )
    assert shortest_relation(inter) == [1, -1]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.lists(st.integers(-9, 9), min_size=1, max_size=3))
def test_relation_lattice_membership_property(m, k):
    basis = relation_lattice_basis(m, k)
    for n in ([1] + [0] * (len(k) - 1), list(k), [m] * len(k)):
        direct = sum(a * b for a, b in zip(n, k)) % m == 0
        assert in_lattice(basis, n) == direct
