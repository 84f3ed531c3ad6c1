"""The units B_q by which q in Q = (Z/p)^(r+1) acts on M = Lambda_1.

Pipeline: c-vector -> extended c-vector -> gamma(eps) over an Artin-Schreier
ring -> Gamma = E0(gamma) -> B_q = Gamma(eps0) Gamma(eps1) / Gamma(eps0 eps1),
descended to F_p.  A c-vector is little-endian: ``(c0, c1, ..., cr)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb

import numpy as np

from .group_ring import (EPS, Y, DifferentialElt, GroupRingElt, dlog, exp0, exp1, invert_unit,
                         norm, substitute)
from .modular import ScalarRing, artin_schreier, prime_context


@dataclass(frozen=True)
class CVector:
    """Coordinates (c0, ..., cr) of an element of Q."""

    p: int
    c: tuple[int, ...]

    def __post_init__(self):
        ctx = prime_context(self.p)
        c = tuple(int(v) % self.p for v in self.c)
        if len(c) != ctx.r + 1:
            raise ValueError(f"c-vector for p={self.p} needs {ctx.r + 1} entries, got {len(c)}")
        object.__setattr__(self, "c", c)

    @classmethod
    def zero(cls, p: int) -> CVector:
        return cls(p, (0,) * (prime_context(p).r + 1))

    @classmethod
    def tau(cls, p: int, i: int) -> CVector:
        """Generator tau_i; for r < i < p the index is read as p - i."""
        r = prime_context(p).r
        if not 0 <= i < p:
            raise ValueError(f"generator index {i} out of range for p={p}")
        if i > r:
            i = p - i
        c = [0] * (r + 1)
        c[i] = 1
        return cls(p, tuple(c))

    @classmethod
    def parse(cls, p: int, text: str) -> CVector:
        """Parse ``"c0,c1,...,cr"``."""
        try:
            parts = [int(s) for s in text.replace(" ", "").split(",") if s != ""]
        except ValueError as exc:
            raise ValueError(f"c-vector must be comma-separated integers: {text!r}") from exc
        return cls(p, tuple(parts))

    @classmethod
    def all(cls, p: int):
        """Iterate over every element of Q (p^(r+1) of them)."""
        r = prime_context(p).r
        for c in product(range(p), repeat=r + 1):
            yield cls(p, c)

    @classmethod
    def random(cls, p: int, rng: np.random.Generator) -> CVector:
        r = prime_context(p).r
        return cls(p, tuple(int(v) for v in rng.integers(0, p, r + 1)))

    @property
    def c0(self) -> int:
        return self.c[0]

    def is_zero(self) -> bool:
        return not any(self.c)

    def __add__(self, other: CVector) -> CVector:
        self._check(other)
        return CVector(self.p, tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other: CVector) -> CVector:
        self._check(other)
        return CVector(self.p, tuple(a - b for a, b in zip(self.c, other.c)))

    def __neg__(self) -> CVector:
        return CVector(self.p, tuple(-a for a in self.c))

    def scale(self, k: int) -> CVector:
        return CVector(self.p, tuple(k * a for a in self.c))

    def _check(self, other: CVector):
        if other.p != self.p:
            raise ValueError("c-vectors for different primes")

    def __str__(self) -> str:
        return ",".join(map(str, self.c))


@dataclass(frozen=True)
class ExtendedC:
    """All of c_0, ..., c_{p-1} (``values[i] = c_i``) and their sum ``c = c_1 + ... + c_{p-1}``."""

    p: int
    values: tuple[int, ...]
    total: int

    @property
    def c0(self) -> int:
        return self.values[0]


def extend_c(q: CVector) -> ExtendedC:
    """Fill in c_i = c_{p-i} - i c_0 for i > r."""
    p = q.p
    r = prime_context(p).r
    vals = list(q.c) + [0] * (p - r - 1)
    for i in range(r + 1, p):
        vals[i] = (vals[p - i] - i * q.c0) % p
    return ExtendedC(p, tuple(vals), sum(vals[1:]) % p)


@dataclass(frozen=True, eq=False)
class GammaData:
    """gamma(eps) = sum_i f_i eps^i over F_p[t]/(t^p - t + c), with the root F."""

    q: CVector
    ring: ScalarRing
    F: np.ndarray
    f_coeffs: tuple[np.ndarray, ...]
    gamma: GroupRingElt


def gamma_poly(q: CVector, shift: int = 0) -> GammaData:
    """Build gamma for q using the root F = t + shift (F = shift when c = 0).

    Any root works; ``shift`` exists to test that the result does not depend
    on the choice.
    """
    p = q.p
    ctx = prime_context(p)
    ext = extend_c(q)
    ring, F = artin_schreier(p, ext.total)
    F = (F + ring.scalar(shift)) % p
    f = [ring.scalar(-sum(ext.values[i] * ctx.inv(i) for i in range(1, p)))]
    for i in range(1, p):
        f.append((ring.scalar(ext.values[i] + ext.total) - F) * ctx.inv(i) % p)
    grid = np.stack(f)[:, None, :]
    gamma = GroupRingElt(p, ring, grid, EPS)
    return GammaData(q, ring, F, tuple(x.copy() for x in f), gamma)


def big_gamma(q: CVector, shift: int = 0) -> GroupRingElt:
    """Gamma_q = E0(gamma) in Lambda_0 over the Artin-Schreier ring."""
    return exp0(gamma_poly(q, shift).gamma)


def _gammas01(g: GroupRingElt) -> tuple[GroupRingElt, GroupRingElt, GroupRingElt]:
    return substitute(g, "0"), substitute(g, "1"), substitute(g, "01")


def _b_quotient_fast(gamma_unit: GroupRingElt) -> GroupRingElt:
    """Gamma(eps0) Gamma(eps1) Gamma^-1(eps0 eps1), exploiting the grid structure.

    In the eps basis the first product is an outer product and multiplying by
    an element supported on the diagonal is a sum of p diagonal shifts.
    """
    ring = gamma_unit.scalars
    p = gamma_unit.p
    g = gamma_unit.to_eps().coeffs[:, 0]
    ginv = invert_unit(gamma_unit).to_eps().coeffs[:, 0]
    outer = ring.mul(g[:, None, :], g[None, :, :])
    acc = np.zeros_like(outer)
    for k in range(p):
        if ginv[k].any():
            acc += ring.mul(np.roll(outer, (k, k), axis=(0, 1)), ginv[k])
    return GroupRingElt(p, ring, acc % ring.modulus, EPS)


def b_unit_over_extension(q: CVector, shift: int = 0, cross_check: bool = False) -> GroupRingElt:
    """B_q before descent, still over the Artin-Schreier ring."""
    data = gamma_poly(q, shift)
    gamma_unit = exp0(data.gamma)
    b = _b_quotient_fast(gamma_unit)
    if cross_check:
        e0, e1, e01 = (substitute(gamma_unit, w) for w in ("0", "1", "01"))
        direct = e0 * e1 * invert_unit(e01)
        if direct != b:
            raise AssertionError(f"B_q quotient forms disagree for q={q}")
        g0, g1, g01 = _gammas01(data.gamma)
        # E1 form with the error term T = E1(g01) - E0(g01)
        t_err = exp1(g01) - exp0(g01)
        alt = exp1(g0 + g1) * invert_unit(exp1(g01) - t_err)
        if alt != b:
            raise AssertionError(f"E1 form of B_q disagrees for q={q}")
    return b


@lru_cache(maxsize=8192)
def _b_unit_cached(q: CVector, shift: int, cross_check: bool) -> GroupRingElt:
    b = b_unit_over_extension(q, shift, cross_check)
    try:
        return b.descend().to_y()
    except ValueError as exc:
        raise AssertionError(f"B_q does not descend to F_p for q={q}") from exc


def b_unit(q: CVector, shift: int = 0, cross_check: bool = False) -> GroupRingElt:
    """B_q in Lambda_1 over F_p, in the y basis.

    ``cross_check`` recomputes B_q through the plain quotient and through the
    E1 form with error term, and raises if either disagrees.
    """
    return _b_unit_cached(q, shift % q.p, bool(cross_check))


def error_term(q: CVector) -> GroupRingElt:
    """T = E1(gamma(eps0 eps1)) - E0(gamma(eps0 eps1)) over the Artin-Schreier ring."""
    g01 = substitute(gamma_poly(q).gamma, "01")
    return exp1(g01) - exp0(g01)


def b_unit_inverse(q: CVector) -> GroupRingElt:
    """B_q^-1 from E1(g01 - g0 - g1) - E1(-g0 - g1) T, descended to F_p."""
    g0, g1, g01 = _gammas01(gamma_poly(q).gamma)
    t_err = exp1(g01) - exp0(g01)
    val = exp1(g01 - g0 - g1) - exp1(-g0 - g1) * t_err
    try:
        return val.descend().to_y()
    except ValueError as exc:
        raise AssertionError(f"B_q^-1 does not descend to F_p for q={q}") from exc


def tilde_gamma(q: CVector, shift: int = 0) -> GroupRingElt:
    """gamma(eps0) + gamma(eps1) - gamma(eps0 eps1), over the Artin-Schreier ring."""
    g0, g1, g01 = _gammas01(gamma_poly(q, shift).gamma)
    return (g0 + g1 - g01).to_y()


def norm_of_b(q: CVector) -> GroupRingElt:
    """N_q = 1 + B_q + ... + B_q^(p-1), checked against tilde_gamma^(p-1)."""
    n = norm(b_unit(q))
    tg = tilde_gamma(q) ** (q.p - 1)
    try:
        tg_base = tg.descend()
    except ValueError as exc:
        raise AssertionError(f"tilde_gamma^(p-1) does not descend for q={q}") from exc
    if tg_base != n:
        raise AssertionError(f"norm of B_q differs from tilde_gamma^(p-1) for q={q}")
    return n


def alpha_coefficient(q: CVector) -> int:
    """alpha = sum_{i>=2} c_i C(i, 2); B_q^-1 - 1 = alpha y0 y1 (y0 + y1) mod degree 4."""
    if q.p == 3:
        raise ValueError("alpha_coefficient needs p >= 5")
    ext = extend_c(q)
    return sum(ext.values[i] * comb(i, 2) for i in range(2, q.p)) % q.p


def dlog_defect(q: CVector, shift: int = 0) -> DifferentialElt:
    """dlog(Gamma_q) - sum_i c_i eps^i dlog(eps); expected to live on eps^(p-1) d(eps)."""
    p = q.p
    gamma_unit = big_gamma(q, shift)
    ext = extend_c(q)
    target = np.zeros((p, 1, gamma_unit.scalars.k), np.int64)
    for i in range(1, p):
        # eps^i dlog(eps) = eps^(i-1) d(eps)
        target[i - 1, 0] = gamma_unit.scalars.scalar(ext.values[i])
    return dlog(gamma_unit) - DifferentialElt(GroupRingElt(p, gamma_unit.scalars, target, EPS))


# ---------------------------------------------------------------------------
# annihilation of H_1(U) by powers of the augmentation


def annihilation_exponents(p: int) -> tuple[int, int]:
    """(s, s'): s factors (B - 1) kill <y0 y1>, s' factors kill Lambda_1."""
    return (2 * p) // 3, (2 * p + 1) // 3


def augmentation_product(qs) -> GroupRingElt:
    """prod_i (B_{q_i} - 1)."""
    qs = list(qs)
    p = qs[0].p
    acc = GroupRingElt.one(p)
    for q in qs:
        acc = acc * (b_unit(q) - 1)
    return acc


def kills_h1u(u: GroupRingElt) -> bool:
    """Whether multiplication by u is zero on the ideal <y0 y1>."""
    return (u * GroupRingElt.monomial(u.p, 1, 1)).is_zero()


def generator_units(p: int) -> list[GroupRingElt]:
    """B_{tau_0}, ..., B_{tau_r}."""
    return [b_unit(CVector.tau(p, j)) for j in range(prime_context(p).r + 1)]
