"""Named end-to-end checks of the computed objects against reference values and identities.

Each check takes ``(p, rng)`` and returns a :class:`CheckResult`; checks that
do not apply to a prime are skipped by :func:`run_checks`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import reference
from .cohomology import (D2Instance, build_complex, d2_kernel_test, d2_kernel_test_vanishing_norm,
                         h1_dimension)
from .fermat_zeta import (count_identity_check, count_points, finite_field, jacobi_index_set,
                          jacobi_sum, orbit_decomposition)
from .galois import (CVector, alpha_coefficient, annihilation_exponents, augmentation_product,
                     b_unit, dlog_defect, kills_h1u, norm_of_b)
from .group_ring import GroupRingElt, divided_power, dlog, exp0, exp1, norm, differential
from .invariants import (invariants_intersection, invariants_MQ, kernel_of,
                         kernel_transport_check, l_subspace)
from .modular import prime_context
from .render import parse_xy


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"check": self.name, "passed": self.passed, "detail": self.detail,
                "seconds": round(self.seconds, 3), **({"data": self.data} if self.data else {})}


def _result(name: str, failures: list[str], ok_detail: str, **data) -> CheckResult:
    if failures:
        shown = "; ".join(failures[:3]) + (f" (+{len(failures) - 3} more)" if len(failures) > 3 else "")
        return CheckResult(name, False, shown, data=data)
    return CheckResult(name, True, ok_detail, data=data)


def _random_aug(p: int, rng: np.random.Generator, nvars: int = 2) -> GroupRingElt:
    g = rng.integers(0, p, (p, p if nvars == 2 else 1))
    g[0, 0] = 0
    return GroupRingElt.from_grid(p, g, nvars=nvars)


# ---------------------------------------------------------------------------


def check_b_table(p: int, rng) -> CheckResult | None:
    keys = [k for k in reference.B_MINUS_ONE if k[0] == p]
    if not keys:
        return None
    bad = [f"tau_{i}" for _, i in keys
           if b_unit(CVector.tau(p, i), cross_check=True) - 1 != parse_xy(reference.B_MINUS_ONE[p, i], p)]
    return _result("b-unit-table", bad, f"{len(keys)} generator units match coefficient for coefficient")


def check_norms(p: int, rng) -> CheckResult:
    bad = []
    if p == 3:
        if norm_of_b(CVector.tau(3, 0)) != GroupRingElt.monomial(3, 2, 2):
            bad.append("N_{tau_0} != y0^2 y1^2")
        qs = [q for q in CVector.all(3) if q.c0 == 0]
    elif p <= 7:
        qs = list(CVector.all(p))
    else:
        qs = [CVector.random(p, rng) for _ in range(20)]
    for q in qs:
        if not norm(b_unit(q)).is_zero():
            bad.append(f"N_q != 0 for q=({q})")
    return _result("norm-vanishing", bad, f"{len(qs)} elements with zero norm")


def check_invariant_dims(p: int, rng) -> CheckResult | None:
    mq, cap = invariants_MQ(p), invariants_intersection(p)
    bad = []
    if p in reference.INVARIANT_DIMS:
        want = reference.INVARIANT_DIMS[p]
        if (mq.dim, cap.dim) != want:
            bad.append(f"dims {(mq.dim, cap.dim)} != {want}")
    if cap.codim_in(mq) != 2:
        bad.append(f"codimension {cap.codim_in(mq)} != 2")
    if not l_subspace(p).is_subspace_of(mq):
        bad.append("L not inside M^Q")
    return _result("invariant-dimensions", bad,
                   f"dim M^Q = {mq.dim}, dim M^Q cap H1(U) = {cap.dim}, codimension 2",
                   dim_MQ=mq.dim, dim_MQ_cap_H1U=cap.dim)


def check_kernels(p: int, rng) -> CheckResult | None:
    if p not in reference.KERNEL_DIMS:
        return None
    r = prime_context(p).r
    kers = [kernel_of(CVector.tau(p, i)) for i in range(1, r + 1)]
    bad = []
    if any(k.dim != reference.KERNEL_DIMS[p] for k in kers):
        bad.append(f"kernel dims {[k.dim for k in kers]}")
    if any(k != kers[0] for k in kers[1:]):
        bad.append("kernels differ")
    for a in range(1, p):
        for i in range(1, p):
            if not kernel_transport_check(p, a, i):
                bad.append(f"transport fails at a={a}, i={i}")
    return _result("kernel-data", bad,
                   f"common kernel of dim {reference.KERNEL_DIMS[p]}; transport holds for all (a, i)")


def check_h1(p: int, rng) -> CheckResult | None:
    if p not in reference.H1_DIMS:
        return None
    h = h1_dimension(p)
    bad = [] if h == reference.H1_DIMS[p] else [f"dim H^1 = {h} != {reference.H1_DIMS[p]}"]
    return _result("h1-dimension", bad, f"dim H^1(Q, M) = {h}", h1=h)


def check_d2(p: int, rng, trials: int = 100) -> CheckResult:
    cx = build_complex(p)
    bad = []
    for t in range(trials):
        m = rng.integers(0, p, cx.D1.shape[1])
        v = d2_kernel_test(D2Instance.from_certificate(p, m))
        if not v.in_kernel:
            bad.append(f"in-image instance {t} rejected")
    if p >= 5:
        r = cx.r
        for j in range(r + 1):
            inst = D2Instance.zero(p)
            u = inst.u.copy()
            u[j] = rng.integers(0, p, p * p)
            u[j, rng.integers(0, p * p)] = rng.integers(1, p)
            inst = D2Instance(p, u, inst.w)
            if d2_kernel_test(inst).in_kernel or d2_kernel_test_vanishing_norm(inst).in_kernel:
                bad.append(f"u_{j} != 0 instance accepted")
        for t in range(trials):
            if t % 2:
                inst = D2Instance.from_certificate(p, rng.integers(0, p, cx.D1.shape[1]))
            else:
                inst = D2Instance(p, np.zeros((r + 1, p * p), np.int64),
                                  rng.integers(0, p, (len(cx.pairs), p * p)))
            if d2_kernel_test(inst).in_kernel != d2_kernel_test_vanishing_norm(inst).in_kernel:
                bad.append(f"testers disagree on instance {t}")
    return _result("d2-procedure", bad, f"{trials} in-image instances certified; testers agree")


def check_homomorphism(p: int, rng) -> CheckResult:
    if p == 3:
        pairs = [(a, b) for a in CVector.all(3) for b in CVector.all(3)]
    else:
        n = 200 if p <= 7 else 20
        pairs = [(CVector.random(p, rng), CVector.random(p, rng)) for _ in range(n)]
    bad = [f"({a})+({b})" for a, b in pairs if b_unit(a + b) != b_unit(a) * b_unit(b)]
    return _result("homomorphism-law", bad, f"{len(pairs)} pairs")


def check_root_choice(p: int, rng) -> CheckResult:
    r = prime_context(p).r
    qs = [CVector.tau(p, i) for i in range(r + 1)] + [CVector.random(p, rng) for _ in range(3)]
    bad = [f"q=({q}) shift {k}" for q in qs for k in range(1, p) if b_unit(q, k) != b_unit(q)]
    return _result("root-choice-independence", bad, f"{len(qs)} elements, every root")


def check_dlog(p: int, rng) -> CheckResult:
    qs = list(CVector.all(p)) if p == 3 else [CVector.random(p, rng) for _ in range(10)]
    bad = [f"q=({q})" for q in qs if set(dlog_defect(q).support()) - {p - 1}]
    return _result("dlog-line", bad, f"{len(qs)} elements")


def check_exponential_identities(p: int, rng, trials: int = 10) -> CheckResult:
    bad = []
    for _ in range(trials):
        f = _random_aug(p, rng, 1)
        fy = f.to_y().coeffs[1, 0, 0]
        lhs = dlog(exp0(f))
        factor = GroupRingElt.one(p, 1) + GroupRingElt.monomial(p, p - 1, nvars=1) * int(pow(int(fy), p - 1, p))
        if lhs.factor != factor * differential(f).factor:
            bad.append("dlog of E0")
        g, h = _random_aug(p, rng), _random_aug(p, rng)
        if exp1(g) * exp1(h) != exp1(g + h):
            bad.append("E1 additivity")
        if exp1(g) * exp1(-g) != 1:
            bad.append("E1 inverse")
        if norm(exp1(g)) != g ** (p - 1) - divided_power(g, 2 * p - 2):
            bad.append("norm of E1")
    return _result("exponential-identities", sorted(set(bad)), f"{trials} random inputs")


def check_alpha(p: int, rng) -> CheckResult | None:
    if p < 5:
        return None
    bad = []
    for q in [CVector.tau(p, i) for i in range(prime_context(p).r + 1)] + \
             [CVector.random(p, rng) for _ in range(10)]:
        binv = b_unit(-q)
        low = (binv - 1).to_y().coeffs[:, :, 0]
        a = alpha_coefficient(q)
        want = {(2, 1): a, (1, 2): a}
        for i in range(p):
            for j in range(p):
                if i + j <= 3 and low[i, j] % p != want.get((i, j), 0):
                    bad.append(f"q=({q}) coefficient of x^{i}y^{j}")
    return _result("alpha-coefficient", bad, "inverse units agree with alpha y0y1(y0+y1) to degree 3")


def check_annihilation(p: int, rng, trials: int = 100) -> CheckResult | None:
    if p < 5:
        return None
    s, s2 = annihilation_exponents(p)
    bad = []
    for _ in range(trials):
        qs = [CVector.random(p, rng) for _ in range(s2)]
        if not kills_h1u(augmentation_product(qs[:s])):
            bad.append(f"{s} factors do not kill <y0y1>")
        if not augmentation_product(qs).is_zero():
            bad.append(f"{s2} factors are nonzero")
    sharp = None
    for _ in range(200):
        qs = [CVector.random(p, rng) for _ in range(s - 1)]
        if not kills_h1u(augmentation_product(qs)):
            sharp = qs
            break
    if sharp is None:
        bad.append(f"no product of {s - 1} factors survives on <y0y1>")
    return _result("annihilation", sorted(set(bad)),
                   f"s={s}, s'={s2}; sharpness witness {[str(q) for q in sharp or []]}")


def check_finite_fields(p: int, rng) -> CheckResult | None:
    cases = [c for c in reference.COUNT_CASES if c[0] == p]
    ids = [c for c in reference.IDENTITY_CASES if c[0] == p]
    if not cases and not ids:
        return None
    bad = []
    for _, ell, m_max in cases:
        for m in range(1, m_max + 1):
            n = count_points(p, ell, 1, m)
            if n % p:
                bad.append(f"N_{m} over F_{ell} = {n}")
            if orbit_decomposition(p, n) is None:
                bad.append(f"N_{m} over F_{ell} = {n} is not 3p + p^2 k")
    for _, ell in ids:
        res = count_identity_check(p, ell)
        if not res.holds:
            bad.append(f"count identity over F_{ell}")
        fld = finite_field(ell)
        for i, j in jacobi_index_set(p):
            J = jacobi_sum(p, fld, i, j)
            if not (J * J.conjugate()).is_rational() or (J * J.conjugate()).rational_value() != fld.q:
                bad.append(f"|J_{i},{j}|^2 != q over F_{ell}")
    return _result("finite-field", bad, f"{len(cases)} count cases, {len(ids)} identity cases")


CHECKS: dict[str, Callable] = {
    "b-unit-table": check_b_table,
    "norm-vanishing": check_norms,
    "invariant-dimensions": check_invariant_dims,
    "kernel-data": check_kernels,
    "h1-dimension": check_h1,
    "d2-procedure": check_d2,
    "homomorphism-law": check_homomorphism,
    "root-choice-independence": check_root_choice,
    "dlog-line": check_dlog,
    "exponential-identities": check_exponential_identities,
    "alpha-coefficient": check_alpha,
    "annihilation": check_annihilation,
    "finite-field": check_finite_fields,
}


def run_checks(p: int, seed: int = 0, only: list[str] | None = None) -> list[CheckResult]:
    prime_context(p)
    out = []
    for name, fn in CHECKS.items():
        if only and name not in only:
            continue
        rng = np.random.default_rng([seed, p, list(CHECKS).index(name)])
        t0 = time.perf_counter()
        try:
            res = fn(p, rng)
        except Exception as exc:  # a crash is reported as a failed check
            res = CheckResult(name, False, f"{type(exc).__name__}: {exc}")
        if res is None:
            continue
        res.seconds = time.perf_counter() - t0
        out.append(res)
    return out
