import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermat_galois.galois import CVector, b_unit
from fermat_galois.group_ring import (EPS, Y, DifferentialElt, GroupRingElt, differential,
                                      divided_power, dlog, exp0, exp1, filtration_component,
                                      ideal_power_degree, invert_unit, norm, swap, twist)
from fermat_galois.modular import ScalarRing, artin_schreier

from oracles import eps_to_y, naive_eps_product, naive_y_product, rational_exp_mod_p


def rand_elt(p, rng, nvars=2, basis=Y, aug=False, scalars=None):
    scalars = scalars or ScalarRing(p, p)
    g = rng.integers(0, p, (p, p if nvars == 2 else 1, scalars.k))
    u = GroupRingElt(p, scalars, g, basis)
    if aug:
        c = u.to_y().coeffs.copy()
        c[0, 0] = 0
        u = GroupRingElt(p, scalars, c, Y).in_basis(basis)
    return u


seeds = st.integers(0, 2**32)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_group_relations(p):
    e0 = GroupRingElt.eps(p, 0)
    assert e0 * e0 ** (p - 1) == 1
    y = GroupRingElt.yvar(p, 0, nvars=1)
    assert (y ** (p - 1) * y).is_zero()
    y0, y1 = GroupRingElt.yvar(p, 0), GroupRingElt.yvar(p, 1)
    assert (1 + y0) * (1 + y1) == GroupRingElt.eps(p, 0) * GroupRingElt.eps(p, 1)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 5, 7]), seeds)
def test_products_match_naive(p, seed):
    rng = np.random.default_rng(seed)
    a, b = rng.integers(0, p, (2, p, p))
    ua = GroupRingElt.from_grid(p, a)
    ub = GroupRingElt.from_grid(p, b)
    assert np.array_equal((ua * ub).grid, naive_y_product(a, b, p))
    ea = GroupRingElt.from_grid(p, a, basis=EPS)
    eb = GroupRingElt.from_grid(p, b, basis=EPS)
    assert np.array_equal((ea * eb).grid, naive_eps_product(a, b, p))
    assert np.array_equal(ea.to_y().grid, eps_to_y(a, p))


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_basis_round_trip(p):
    rng = np.random.default_rng(p)
    for nvars in (1, 2):
        u = rand_elt(p, rng, nvars)
        assert np.array_equal(u.to_eps().to_y().coeffs, u.coeffs)
        v = rand_elt(p, rng, nvars, EPS)
        assert np.array_equal(v.to_y().to_eps().coeffs, v.coeffs)


def test_mixed_p_rejected():
    with pytest.raises(ValueError):
        GroupRingElt.one(3) * GroupRingElt.one(5)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_invert_unit(p):
    assert invert_unit(GroupRingElt.one(p)) == 1
    y0 = GroupRingElt.yvar(p, 0)
    geo = sum(((-y0) ** i for i in range(p)), GroupRingElt.zero(p))
    assert invert_unit(1 + y0) == geo
    rng = np.random.default_rng(p)
    for _ in range(5):
        u = rand_elt(p, rng)
        c = u.coeffs.copy()
        c[0, 0] = rng.integers(1, p)
        u = GroupRingElt(p, u.scalars, c)
        assert u * invert_unit(u) == 1


def test_invert_b_unit_at_three():
    t0 = CVector.tau(3, 0)
    assert invert_unit(b_unit(t0)) == b_unit(-t0)


def test_invert_over_extension_ring():
    ring, F = artin_schreier(5, 2)
    rng = np.random.default_rng(0)
    u = rand_elt(5, rng, scalars=ring)
    c = u.coeffs.copy()
    c[0, 0] = F
    u = GroupRingElt(5, ring, c)
    assert u * invert_unit(u) == 1


def test_invert_non_unit():
    with pytest.raises(ValueError):
        invert_unit(GroupRingElt.yvar(3, 0))


def test_exp0_examples():
    assert exp0(GroupRingElt.zero(5)) == 1
    y = GroupRingElt.yvar(3, 0, nvars=1)
    assert exp0(y) == 1 + y + 2 * y * y
    with pytest.raises(ValueError):
        exp0(GroupRingElt.one(3))


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([3, 5, 7]), seeds)
def test_exp0_homomorphism_one_variable(p, seed):
    rng = np.random.default_rng(seed)
    f, g = rand_elt(p, rng, 1, aug=True), rand_elt(p, rng, 1, aug=True)
    assert exp0(f) * exp0(-f) == 1
    assert exp0(f + g) == exp0(f) * exp0(g)


def test_exp1_examples():
    assert exp1(GroupRingElt.zero(5)) == 1
    with pytest.raises(ValueError):
        exp1(GroupRingElt.one(5))
    g0 = GroupRingElt.yvar(5, 0) * 3 + GroupRingElt.monomial(5, 2, 0)
    assert (g0 ** 5).is_zero()
    assert exp1(g0) == exp0(g0)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([3, 5, 7]), seeds)
def test_exp1_lift_independence_and_oracle(p, seed):
    rng = np.random.default_rng(seed)
    f = rand_elt(p, rng, aug=True)
    offset = rand_elt(p, rng)
    assert exp1(f, lift_offset=offset) == exp1(f)
    assert np.array_equal(exp1(f).grid, rational_exp_mod_p(f.grid, p))


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([3, 5, 7]), seeds)
def test_exp1_identities(p, seed):
    rng = np.random.default_rng(seed)
    f, g = rand_elt(p, rng, aug=True), rand_elt(p, rng, aug=True)
    assert exp1(f) * exp1(g) == exp1(f + g)
    assert invert_unit(exp1(f)) == exp1(-f)
    assert norm(exp1(f)) == f ** (p - 1) - divided_power(f, 2 * p - 2)


def test_dlog_examples():
    p = 5
    eps = GroupRingElt.eps(p, 0, nvars=1)
    assert dlog(eps) == DifferentialElt.dlog_eps(p)
    rng = np.random.default_rng(0)
    for _ in range(5):
        u = rand_elt(p, rng, 1)
        v = rand_elt(p, rng, 1)
        cu, cv = u.to_y().coeffs.copy(), v.to_y().coeffs.copy()
        cu[0, 0], cv[0, 0] = 1, 2
        u, v = GroupRingElt(p, u.scalars, cu), GroupRingElt(p, v.scalars, cv)
        assert dlog(u * v) == dlog(u) + dlog(v)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([3, 5, 7]), seeds)
def test_dlog_of_exp0(p, seed):
    rng = np.random.default_rng(seed)
    f = rand_elt(p, rng, 1, aug=True)
    slope = int(f.to_y().coeffs[1, 0, 0])
    corr = 1 + GroupRingElt.monomial(p, p - 1, nvars=1) * pow(slope, p - 1, p)
    assert dlog(exp0(f)).factor == corr * differential(f).factor


def test_dlog_requires_unit():
    with pytest.raises(ValueError):
        dlog(GroupRingElt.yvar(3, 0, nvars=1))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_norm_examples(p):
    assert norm(GroupRingElt.one(p)).is_zero()
    assert norm(GroupRingElt.eps(p, 0)) == GroupRingElt.monomial(p, p - 1, 0)


def test_ideal_power_degree_examples():
    p = 5
    y0, y1 = GroupRingElt.yvar(p, 0), GroupRingElt.yvar(p, 1)
    assert ideal_power_degree(y0 * y1 * (y0 + y1)) == 3
    assert ideal_power_degree(GroupRingElt.one(p)) == 0
    assert ideal_power_degree(GroupRingElt.zero(p)) == 2 * p - 1
    assert ideal_power_degree(b_unit(CVector.tau(p, 1)) - 1) == 3


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([3, 5, 7]), seeds)
def test_ideal_power_degree_superadditive(p, seed):
    rng = np.random.default_rng(seed)
    u = rand_elt(p, rng) * GroupRingElt.monomial(p, *rng.integers(0, 3, 2))
    v = rand_elt(p, rng) * GroupRingElt.monomial(p, *rng.integers(0, 3, 2))
    cap = 2 * p - 1
    assert ideal_power_degree(u * v) >= min(cap, ideal_power_degree(u) + ideal_power_degree(v))


@pytest.mark.parametrize("p", [5, 7])
def test_twist_and_swap(p):
    rng = np.random.default_rng(p)
    u = rand_elt(p, rng)
    assert twist(1, u) == u
    for a in range(1, p):
        assert twist(a, twist(pow(a, -1, p), u)) == u
    assert swap(swap(u)) == u
    with pytest.raises(ValueError):
        twist(p, u)
    # swap transposes the eps grid
    assert np.array_equal(swap(u).to_eps().grid, u.to_eps().grid.T)


def test_filtration_component_examples():
    p = 5
    y0, y1 = GroupRingElt.yvar(p, 0), GroupRingElt.yvar(p, 1)
    m = y0 * y0 + y0 * y1
    assert filtration_component(m, 0) == y0 * y0
    assert filtration_component(m, 1) == y0 * y1
    assert filtration_component(GroupRingElt.one(p), 0) == 1
    rng = np.random.default_rng(0)
    r = rand_elt(p, rng)
    total = GroupRingElt.zero(p)
    for k in range(p):
        total = total + filtration_component(r, k)
    assert total == r
    with pytest.raises(ValueError):
        filtration_component(r, p)


def test_json_export():
    u = GroupRingElt.yvar(3, 0)
    d = u.to_json_dict()
    assert d["grid"][1][0] == 1 and d["basis"] == "y" and d["nvars"] == 2


def test_descend_rejects_t_part():
    ring, F = artin_schreier(3, 1)
    c = np.zeros((3, 3, 3), np.int64)
    c[1, 1] = F
    with pytest.raises(ValueError):
        GroupRingElt(3, ring, c).descend()
