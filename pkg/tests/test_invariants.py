import numpy as np
import pytest

from fermat_galois.galois import CVector
from fermat_galois.group_ring import GroupRingElt
from fermat_galois.invariants import (action_matrix, apply, distinguished_vectors, from_vector,
                                      generator_matrices, h1u_subspace, invariants_intersection,
                                      invariants_MQ, invariants_report, kernel_of,
                                      kernel_transport_check, l_subspace, l_subspace_monomial,
                                      question_probe, rho_matrix, tau_index, to_vector)
from fermat_galois.modular import Subspace, matmul, rank


def test_action_matrix_examples():
    p = 5
    assert np.array_equal(action_matrix(GroupRingElt.one(p)), np.eye(p * p, dtype=np.int64))
    top = GroupRingElt.monomial(p, p - 1, p - 1)
    assert rank(action_matrix(top), p) == 1


@pytest.mark.parametrize("p", [3, 5, 7])
def test_action_matrix_is_multiplication(p):
    rng = np.random.default_rng(p)
    for _ in range(5):
        u = GroupRingElt.from_grid(p, rng.integers(0, p, (p, p)))
        v = GroupRingElt.from_grid(p, rng.integers(0, p, (p, p)))
        assert np.array_equal(apply(action_matrix(u), to_vector(v), p), to_vector(u * v))
        assert from_vector(p, to_vector(v)) == v


def test_vector_errors():
    with pytest.raises(ValueError):
        from_vector(3, [0] * 8)
    with pytest.raises(ValueError):
        to_vector(GroupRingElt.yvar(3, 0, nvars=1))


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_generators_commute_with_order_p(p):
    mats = generator_matrices(p)
    eye = np.eye(p * p, dtype=np.int64)
    for a in mats:
        power = eye
        for _ in range(p):
            power = matmul(power, a, p)
        assert np.array_equal(power, eye)
        for b in mats:
            assert np.array_equal(matmul(a, b, p), matmul(b, a, p))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_l_subspace(p):
    L = l_subspace(p)
    assert L.dim == 2 * p - 1
    assert L == l_subspace_monomial(p)
    assert L.is_subspace_of(invariants_MQ(p))
    assert L.intersect(h1u_subspace(p)).codim_in(L) == 2


def test_l_is_everything_at_three():
    assert l_subspace(3) == invariants_MQ(3)


def test_h1u_dimension():
    for p in (3, 5, 7):
        assert h1u_subspace(p).dim == (p - 1) ** 2


@pytest.mark.parametrize("p", [5, 7])
def test_distinguished_vectors(p):
    mq, cap = invariants_MQ(p), invariants_intersection(p)
    dv = distinguished_vectors(p)
    vecs = {k: to_vector(v) for k, v in dv.all().items()}
    for k in ("s1", "a1"):
        assert cap.contains(vecs[k])
    for v in vecs.values():
        assert mq.contains(v)
    span = l_subspace(p) + Subspace.span(list(vecs.values()), p, p * p)
    assert span == mq
    assert span.dim == l_subspace(p).dim + len(vecs)
    assert mq.dim >= 2 * p + 1


def test_distinguished_vectors_need_p5():
    with pytest.raises(ValueError):
        distinguished_vectors(3)


def test_kernel_of_zero_is_everything():
    assert kernel_of(CVector.zero(5)).dim == 25


def test_tau_index():
    assert [tau_index(7, i) for i in range(7)] == [0, 1, 2, 3, 3, 2, 1]


def test_rho_matrix_is_permutation_in_eps_basis():
    p = 5
    r = rho_matrix(p, 2)
    assert rank(r, p) == p * p
    assert np.array_equal(rho_matrix(p, 1), np.eye(p * p, dtype=np.int64))


def test_transport_errors():
    with pytest.raises(ValueError):
        kernel_transport_check(5, 2, 0)
    with pytest.raises(ValueError):
        kernel_transport_check(5, 0, 1)


def test_question_probe_eleven():
    out = question_probe(11)
    assert out["kernel_dims"] == [31] * 6
    assert out["kernels_equal_for_nonzero_index"]
    assert out["MQ_equals_ker_tau0_cap_ker_tau1"]


def test_report_fields():
    rep = invariants_report(5)
    assert (rep["dim_MQ"], rep["dim_MQ_cap_H1U"], rep["codim_in_MQ"], rep["dim_L"]) == (11, 9, 2, 9)
    assert len(rep["MQ_basis"]) == 11
