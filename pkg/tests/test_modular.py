import json
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermat_galois.modular import (PrimeContext, ScalarRing, Subspace, artin_schreier,
                                   image_basis, is_prime, kernel_basis, matmul, prime_context,
                                   rank, rref, solve)

from oracles import brute_rank, has_root

PRIMES = [3, 5, 7, 11, 13]


def test_prime_context_tables():
    for p in PRIMES:
        ctx = prime_context(p)
        assert ctx.r == (p - 1) // 2
        assert all(ctx.inverses[i] * i % p == 1 for i in range(1, p))
        assert ctx.factorials_mod_p2[p] % p == 0
        assert ctx.factorials_mod_p2[p - 1] == np.prod(range(1, p), dtype=object) % (p * p)


@pytest.mark.parametrize("bad", [2, 4, 9, 1, 0, -3])
def test_prime_context_rejects(bad):
    with pytest.raises(ValueError):
        PrimeContext(bad)


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_field_axioms_exhaustive(p):
    ring = ScalarRing(p, p)
    els = [ring.scalar(v) for v in range(p)]
    for a, b, c in product(els, repeat=3):
        assert np.array_equal(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)))
        assert np.array_equal(ring.mul(a, (b + c) % p), (ring.mul(a, b) + ring.mul(a, c)) % p)
    for a in els[1:]:
        assert np.array_equal(ring.mul(a, ring.inv(a)), ring.one())


def test_as_ring_trivial_c():
    ring, F = artin_schreier(3, 0)
    assert ring.k == 1 and not F.any()


@pytest.mark.parametrize("p,c", [(3, 1), (5, 2), (7, 3), (13, 5)])
def test_as_root_relation(p, c):
    ring, F = artin_schreier(p, c)
    rel = (ring.pow(F, p) - F + ring.scalar(c)) % p
    assert not rel.any()


def test_as_polynomial_irreducible_at_five():
    # degree-p Artin-Schreier polynomials are irreducible iff they have no root
    assert not has_root([2, -1, 0, 0, 0, 1], 5)
    ring, _ = artin_schreier(5, 2)
    assert 5 ** ring.k == 3125


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(3, 1), (5, 2), (7, 6)]), st.integers(0, 2**32))
def test_as_ring_associative_distributive(pc, seed):
    p, c = pc
    ring, _ = artin_schreier(p, c)
    rng = np.random.default_rng(seed)
    a, b, d = (rng.integers(0, p, p) for _ in range(3))
    assert np.array_equal(ring.mul(ring.mul(a, b), d), ring.mul(a, ring.mul(b, d)))
    assert np.array_equal(ring.mul(a, (b + d) % p), (ring.mul(a, b) + ring.mul(a, d)) % p)
    if a.any():
        assert np.array_equal(ring.mul(a, ring.inv(a)), ring.one())


@pytest.mark.parametrize("p", [3, 5, 7])
def test_lift_ring(p):
    rng = np.random.default_rng(p)
    ring = ScalarRing(p, p, 1).lift()
    x = rng.integers(0, p * p, (10, p))
    assert np.array_equal((x % (p * p)) % p, x % p)
    # exact division by p of multiples of p
    assert np.array_equal((p * x % (p * p)) // p, x % p)
    u = ring.scalar(1 + p)
    assert np.array_equal(ring.mul(u, ring.inv(u)), ring.one())


def test_non_unit_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        ScalarRing(5, 5).inv(np.array([0]))


def test_rank_examples():
    assert rank(np.eye(4, dtype=np.int64), 5) == 4
    assert kernel_basis(np.eye(4, dtype=np.int64), 5).shape[0] == 0
    assert rank(np.zeros((3, 5), np.int64), 5) == 0
    assert kernel_basis(np.zeros((3, 5), np.int64), 5).shape[0] == 5


@pytest.mark.parametrize("seed", range(5))
def test_transpose_rank_random_20(seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 5, (20, 20))
    a[:, 3] = (a[:, 1] + 2 * a[:, 2]) % 5
    assert rank(a, 5) == rank(a.T, 5)


@pytest.mark.parametrize("seed", range(5))
def test_rank_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 3, (3, 4))
    assert rank(a, 3) == brute_rank(a, 3)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9), st.sampled_from([3, 5, 7]), st.integers(0, 2**32))
def test_rank_nullity_and_solve(rows, cols, p, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, p, (rows, cols))
    k = kernel_basis(a, p)
    assert rank(a, p) + k.shape[0] == cols
    assert not matmul(a, k.T, p).any()
    assert image_basis(a, p).shape[0] == rank(a, p)
    x = rng.integers(0, p, cols)
    b = matmul(a, x[:, None], p).ravel()
    sol = solve(a, b, p)
    assert sol is not None and np.array_equal(matmul(a, sol[:, None], p).ravel(), b)


def test_rref_idempotent():
    rng = np.random.default_rng(3)
    a = rng.integers(0, 7, (5, 8))
    m, piv = rref(a, 7)
    m2, piv2 = rref(m, 7)
    assert np.array_equal(m, m2) and piv == piv2


def test_solve_reports_inconsistent():
    a = np.array([[1, 0], [1, 0]])
    assert solve(a, np.array([1, 2]), 5) is None


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve(np.eye(3, dtype=np.int64), np.zeros(2, np.int64), 5)


def test_subspace_codim_examples():
    p = 5
    rng = np.random.default_rng(0)
    b = Subspace.span(rng.integers(0, p, (3, 6)), p, 6)
    assert b.codim_in(b) == 0
    zero = Subspace.span([], p, 6)
    assert zero.codim_in(b) == b.dim
    with pytest.raises(ValueError):
        Subspace.whole(6, p).codim_in(zero)


@pytest.mark.parametrize("seed", range(10))
def test_grassmann_identity(seed):
    p = 5
    rng = np.random.default_rng(seed)
    a = Subspace.span(rng.integers(0, p, (3, 4)), p, 4)
    b = Subspace.span(rng.integers(0, p, (3, 4)), p, 4)
    assert a.intersect(b).dim == a.dim + b.dim - (a + b).dim
    assert a.intersect(b).is_subspace_of(a) and a.intersect(b).is_subspace_of(b)


def test_subspace_membership_and_json():
    p = 7
    s = Subspace.span([[1, 2, 0], [0, 0, 1]], p, 3)
    assert s.contains([2, 4, 5])
    assert not s.contains([0, 1, 0])
    back = Subspace.from_dict(json.loads(s.to_json()))
    assert back == s


def test_subspace_mismatched_ambient():
    with pytest.raises(ValueError):
        Subspace.whole(3, 5).intersect(Subspace.whole(4, 5))
