"""M = Lambda_1 as a p^2-dimensional F_p-module with Q acting through the B-units.

Vectors use the y-monomial basis with y0^i y1^j at index ``i*p + j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache

import numpy as np

from .galois import CVector, b_unit, generator_units
from .group_ring import GroupRingElt, twist
from .modular import Subspace, matmul, prime_context
from .render import parse_xy


def to_vector(u: GroupRingElt) -> np.ndarray:
    if u.nvars != 2 or u.scalars.k != 1:
        raise ValueError("only F_p-valued elements of Lambda_1 are vectors of M")
    return u.to_y().coeffs[:, :, 0].reshape(-1).copy()


def from_vector(p: int, v) -> GroupRingElt:
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (p * p,):
        raise ValueError(f"vector of M must have length {p * p}")
    return GroupRingElt.from_grid(p, v.reshape(p, p))


def action_matrix(u: GroupRingElt) -> np.ndarray:
    """Matrix of m -> u m; column ``i*p + j`` is u * y0^i y1^j."""
    p = u.p
    g = u.to_y().descend().coeffs[:, :, 0]
    mat = np.zeros((p, p, p, p), np.int64)  # (out_i, out_j, in_i, in_j)
    for a in range(p):
        for b in range(p):
            mat[a:, b:, a, b] = g[:p - a, :p - b]
    return mat.reshape(p * p, p * p) % p


@cache
def generator_matrices(p: int) -> tuple[np.ndarray, ...]:
    """Action matrices of B_{tau_0}, ..., B_{tau_r}."""
    mats = tuple(action_matrix(b) for b in generator_units(p))
    for m in mats:
        m.setflags(write=False)
    return mats


def kernel_of(q: CVector) -> Subspace:
    """ker(B_q - 1) on M."""
    p = q.p
    return Subspace.kernel((action_matrix(b_unit(q)) - np.eye(p * p, dtype=np.int64)) % p, p)


@cache
def invariants_MQ(p: int) -> Subspace:
    """M^Q: common kernel of B_{tau_j} - 1 over the generators."""
    eye = np.eye(p * p, dtype=np.int64)
    stacked = np.vstack([(m - eye) % p for m in generator_matrices(p)])
    return Subspace.kernel(stacked, p)


def monomial_span(p: int, predicate) -> Subspace:
    rows = []
    for i in range(p):
        for j in range(p):
            if predicate(i, j):
                v = np.zeros(p * p, np.int64)
                v[i * p + j] = 1
                rows.append(v)
    return Subspace.span(rows, p, p * p)


def h1u_subspace(p: int) -> Subspace:
    """H_1(U) inside M: the ideal <y0 y1>, spanned by y0^i y1^j with i, j >= 1."""
    return monomial_span(p, lambda i, j: i >= 1 and j >= 1)


@cache
def invariants_intersection(p: int) -> Subspace:
    return invariants_MQ(p).intersect(h1u_subspace(p))


def eta(p: int, k: int) -> GroupRingElt:
    """(y1 + 1)^k y0^(p-1)."""
    return (GroupRingElt.yvar(p, 1) + 1) ** k * GroupRingElt.monomial(p, p - 1, 0)


def gamma_vec(p: int, k: int) -> GroupRingElt:
    """(y0 + 1)^k y1^(p-1)."""
    return (GroupRingElt.yvar(p, 0) + 1) ** k * GroupRingElt.monomial(p, 0, p - 1)


def l_subspace(p: int) -> Subspace:
    """L: span of eta_k and gamma_k for 0 <= k < p."""
    vecs = [to_vector(eta(p, k)) for k in range(p)] + [to_vector(gamma_vec(p, k)) for k in range(p)]
    return Subspace.span(vecs, p, p * p)


def l_subspace_monomial(p: int) -> Subspace:
    """Span of monomials with at least one exponent equal to p - 1."""
    return monomial_span(p, lambda i, j: max(i, j) == p - 1)


@dataclass(frozen=True, eq=False)
class DistinguishedVectors:
    s1: GroupRingElt
    a1: GroupRingElt
    extra: dict

    def all(self) -> dict[str, GroupRingElt]:
        return {"s1": self.s1, "a1": self.a1, **self.extra}


_EXTRA_P7 = {
    "s2": "y0^3y1^3(y0^2-y0y1+y1^2) + y0^4y1^5",
    "a2": "y0^2y1^2(y0^3-y0^2y1+y0y1^2-y1^3) + y0^3y1^4(y0-2y1) - y0^4y1^5",
}


def distinguished_vectors(p: int) -> DistinguishedVectors:
    """s1 = y0^(p-2) y1^(p-2), a1 = y0^(p-3) y1^(p-3) (y0 - y1); s2, a2 as well at p = 7."""
    if p < 5:
        raise ValueError("s1 and a1 are defined for p >= 5")
    y0, y1 = GroupRingElt.yvar(p, 0), GroupRingElt.yvar(p, 1)
    s1 = GroupRingElt.monomial(p, p - 2, p - 2)
    a1 = GroupRingElt.monomial(p, p - 3, p - 3) * (y0 - y1)
    extra = {k: parse_xy(v, p) for k, v in _EXTRA_P7.items()} if p == 7 else {}
    return DistinguishedVectors(s1, a1, extra)


# ---------------------------------------------------------------------------
# kernel transport


def rho_matrix(p: int, a: int) -> np.ndarray:
    """Matrix on M (y basis) of the permutation eps0^i eps1^j -> eps0^(ia) eps1^(ja)."""
    cols = []
    for i in range(p):
        for j in range(p):
            cols.append(to_vector(twist(a, GroupRingElt.monomial(p, i, j))))
    return np.array(cols, dtype=np.int64).T


def tau_index(p: int, i: int) -> int:
    """Index in 0..r of the generator tau_i for any 0 <= i < p."""
    i %= p
    return i if i <= prime_context(p).r else p - i


def kernel_transport_check(p: int, a: int, i: int) -> bool:
    """ker(B_{tau_{ai}} - 1) == rho_a ker(B_{tau_i} - 1)."""
    if i % p == 0:
        raise ValueError("transport is stated for i != 0")
    if a % p == 0:
        raise ValueError("a must be a unit mod p")
    lhs = kernel_of(CVector.tau(p, tau_index(p, a * i)))
    rhs = kernel_of(CVector.tau(p, tau_index(p, i))).transform(rho_matrix(p, a))
    return lhs == rhs


def question_probe(p: int) -> dict:
    """Do the kernels of B_{tau_i} - 1 coincide for i = 1..r, and is M^Q cut out by tau_0, tau_1?"""
    r = prime_context(p).r
    kers = [kernel_of(CVector.tau(p, i)) for i in range(r + 1)]
    same = all(k == kers[1] for k in kers[2:])
    two = kers[0].intersect(kers[1])
    return {
        "p": p,
        "kernel_dims": [k.dim for k in kers],
        "kernels_equal_for_nonzero_index": same,
        "MQ_equals_ker_tau0_cap_ker_tau1": two == invariants_MQ(p),
    }


def invariants_report(p: int) -> dict:
    mq = invariants_MQ(p)
    cap = invariants_intersection(p)
    return {
        "p": p,
        "dim_M": p * p,
        "dim_MQ": mq.dim,
        "dim_MQ_cap_H1U": cap.dim,
        "codim_in_MQ": cap.codim_in(mq),
        "dim_L": l_subspace(p).dim,
        "MQ_basis": mq.basis.tolist(),
    }


def apply(mat: np.ndarray, v, p: int) -> np.ndarray:
    return matmul(mat, np.asarray(v).reshape(-1, 1), p).reshape(-1)
