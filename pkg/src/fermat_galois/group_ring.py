"""The group rings R[Z/p] and R[Z/p x Z/p] in group and nilpotent coordinates.

An element is stored as an integer grid of shape ``(p, p, k)`` (two
variables) or ``(p, 1, k)`` (one variable).  The first axes index exponents
of ``eps`` (``basis="eps"``) or of ``y = eps - 1`` (``basis="y"``); the last
axis holds a scalar of the ring ``R`` (see :class:`~fermat_galois.modular.ScalarRing`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from math import comb

import numpy as np

from . import _kernels
from .modular import ScalarRing, prime_context

EPS = "eps"
Y = "y"


@cache
def _pascal(p: int, modulus: int) -> tuple[np.ndarray, np.ndarray]:
    # to_y[i, j] = C(i, j): eps^i = sum_j C(i, j) y^j
    # to_eps[j, i] = (-1)^(j-i) C(j, i): y^j = sum_i to_eps[j, i] eps^i
    to_y = np.array([[comb(i, j) % modulus for j in range(p)] for i in range(p)], dtype=np.int64)
    to_eps = np.array([[((-1) ** (j - i) * comb(j, i)) % modulus for i in range(p)]
                       for j in range(p)], dtype=np.int64)
    to_y.setflags(write=False)
    to_eps.setflags(write=False)
    return to_y, to_eps


def _change_basis(grid: np.ndarray, mat: np.ndarray, modulus: int) -> np.ndarray:
    out = np.einsum("ij,jbk->ibk", mat.T, grid) % modulus
    if grid.shape[1] > 1:
        out = np.einsum("ij,ajk->aik", mat.T, out) % modulus
    return out


@dataclass(frozen=True, eq=False)
class GroupRingElt:
    """Element of Lambda_0 = R[eps]/(eps^p - 1) or Lambda_1 = R[eps0, eps1]/(eps_i^p - 1)."""

    p: int
    scalars: ScalarRing
    coeffs: np.ndarray
    basis: str = Y

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.int64) % self.scalars.modulus
        if c.ndim != 3 or c.shape[0] != self.p or c.shape[1] not in (1, self.p) \
                or c.shape[2] != self.scalars.k:
            raise ValueError(f"bad coefficient shape {c.shape} for p={self.p}, k={self.scalars.k}")
        if self.basis not in (EPS, Y):
            raise ValueError(f"unknown basis tag {self.basis!r}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    # -- construction ----------------------------------------------------

    @classmethod
    def from_grid(cls, p: int, grid, nvars: int = 2, scalars: ScalarRing | None = None,
                  basis: str = Y) -> GroupRingElt:
        """Build from a grid without the scalar axis when the scalars are plain residues."""
        scalars = scalars or ScalarRing(p, p)
        g = np.asarray(grid, dtype=np.int64)
        if nvars == 1 and g.ndim == 1 + (scalars.k > 1):
            g = g[:, None]
        if scalars.k == 1 and g.ndim == 2:
            g = g[:, :, None]
        return cls(p, scalars, g, basis)

    @classmethod
    def zero(cls, p: int, nvars: int = 2, scalars: ScalarRing | None = None,
             basis: str = Y) -> GroupRingElt:
        scalars = scalars or ScalarRing(p, p)
        return cls(p, scalars, np.zeros((p, p if nvars == 2 else 1, scalars.k), np.int64), basis)

    @classmethod
    def constant(cls, p: int, value, nvars: int = 2, scalars: ScalarRing | None = None,
                 basis: str = Y) -> GroupRingElt:
        scalars = scalars or ScalarRing(p, p)
        g = np.zeros((p, p if nvars == 2 else 1, scalars.k), np.int64)
        g[0, 0] = value if np.ndim(value) else scalars.scalar(int(value))
        # the constant 1 is eps^0 = y^0 in both bases
        return cls(p, scalars, g, basis)

    @classmethod
    def one(cls, p: int, nvars: int = 2, scalars: ScalarRing | None = None,
            basis: str = Y) -> GroupRingElt:
        return cls.constant(p, 1, nvars, scalars, basis)

    @classmethod
    def monomial(cls, p: int, i: int, j: int = 0, nvars: int = 2,
                 scalars: ScalarRing | None = None, basis: str = Y) -> GroupRingElt:
        """``y0^i y1^j`` (basis ``y``) or ``eps0^i eps1^j`` (basis ``eps``)."""
        scalars = scalars or ScalarRing(p, p)
        g = np.zeros((p, p if nvars == 2 else 1, scalars.k), np.int64)
        if basis == EPS:
            i, j = i % p, j % p
        elif i >= p or j >= p:
            return cls(p, scalars, g, basis)
        g[i, j] = scalars.one()
        return cls(p, scalars, g, basis)

    @classmethod
    def eps(cls, p: int, which: int = 0, nvars: int = 2, scalars: ScalarRing | None = None):
        return cls.monomial(p, *((1, 0) if which == 0 else (0, 1)), nvars=nvars,
                            scalars=scalars, basis=EPS)

    @classmethod
    def yvar(cls, p: int, which: int = 0, nvars: int = 2, scalars: ScalarRing | None = None):
        return cls.monomial(p, *((1, 0) if which == 0 else (0, 1)), nvars=nvars,
                            scalars=scalars, basis=Y)

    # -- basic properties ------------------------------------------------

    @property
    def nvars(self) -> int:
        return 2 if self.coeffs.shape[1] > 1 else 1

    @property
    def modulus(self) -> int:
        return self.scalars.modulus

    @property
    def grid(self) -> np.ndarray:
        """Coefficients with singleton axes dropped: (p, p), (p,), (p, p, k) or (p, k)."""
        g = self.coeffs
        if self.nvars == 1:
            g = g[:, 0]
        if self.scalars.k == 1:
            g = g[..., 0]
        return g

    def to_y(self) -> GroupRingElt:
        if self.basis == Y:
            return self
        to_y, _ = _pascal(self.p, self.modulus)
        return GroupRingElt(self.p, self.scalars, _change_basis(self.coeffs, to_y, self.modulus), Y)

    def to_eps(self) -> GroupRingElt:
        if self.basis == EPS:
            return self
        _, to_eps = _pascal(self.p, self.modulus)
        return GroupRingElt(self.p, self.scalars, _change_basis(self.coeffs, to_eps, self.modulus),
                            EPS)

    def in_basis(self, basis: str) -> GroupRingElt:
        return self.to_y() if basis == Y else self.to_eps()

    def with_scalars(self, scalars: ScalarRing) -> GroupRingElt:
        """Reinterpret coefficients in another ring with the same ``k`` (lift or reduce)."""
        if scalars.k != self.scalars.k:
            raise ValueError("scalar rings differ in rank")
        return GroupRingElt(self.p, scalars, self.coeffs, self.basis)

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def constant_term(self) -> np.ndarray:
        """Scalar coefficient of y^0 (the augmentation)."""
        return self.to_y().coeffs[0, 0].copy()

    def in_base_ring(self) -> bool:
        return self.scalars.in_base(self.coeffs)

    def descend(self) -> GroupRingElt:
        """Drop the Artin-Schreier generator; raises if a coefficient involves t."""
        if self.scalars.k == 1:
            return self
        if not self.in_base_ring():
            raise ValueError("element does not descend: a coefficient has a nonzero t-part")
        return GroupRingElt(self.p, ScalarRing(self.p, self.modulus), self.coeffs[:, :, :1],
                            self.basis)

    def embed(self, scalars: ScalarRing) -> GroupRingElt:
        """Include a base-ring element into an extension ring of the same modulus."""
        if self.scalars == scalars:
            return self
        if self.scalars.k != 1 or scalars.modulus != self.modulus:
            raise ValueError("can only embed base-ring elements")
        g = np.zeros(self.coeffs.shape[:2] + (scalars.k,), np.int64)
        g[:, :, 0] = self.coeffs[:, :, 0]
        return GroupRingElt(self.p, scalars, g, self.basis)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> GroupRingElt:
        if isinstance(other, GroupRingElt):
            if other.p != self.p:
                raise ValueError(f"mixed p: {self.p} and {other.p}")
            if other.nvars != self.nvars:
                raise ValueError("mixed number of variables")
            if other.scalars != self.scalars:
                if other.scalars.k == 1 and self.scalars.k > 1:
                    other = other.embed(self.scalars)
                else:
                    raise ValueError("mixed scalar rings")
            return other.in_basis(self.basis)
        if isinstance(other, (int, np.integer)):
            return GroupRingElt.constant(self.p, int(other), self.nvars, self.scalars, self.basis)
        return NotImplemented

    def _promote(self, other) -> tuple[GroupRingElt, GroupRingElt]:
        if (isinstance(other, GroupRingElt) and self.scalars.k == 1 and other.scalars.k > 1
                and other.scalars.modulus == self.modulus):
            return self.embed(other.scalars), other
        return self, self._coerce(other)

    def __add__(self, other):
        a, b = self._promote(other)
        if b is NotImplemented:
            return NotImplemented
        return GroupRingElt(self.p, a.scalars, a.coeffs + b.coeffs, a.basis)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElt(self.p, self.scalars, -self.coeffs, self.basis)

    def __sub__(self, other):
        a, b = self._promote(other)
        if b is NotImplemented:
            return NotImplemented
        return GroupRingElt(self.p, a.scalars, a.coeffs - b.coeffs, a.basis)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return GroupRingElt(self.p, self.scalars, self.coeffs * (int(other) % self.modulus),
                                self.basis)
        a, b = self._promote(other)
        if b is NotImplemented:
            return NotImplemented
        s = a.scalars
        out = _kernels.convolve(a.coeffs, b.coeffs, s.modulus, s.fold_c, a.basis == EPS)
        return GroupRingElt(self.p, s, out, a.basis)

    __rmul__ = __mul__

    def scale(self, scalar) -> GroupRingElt:
        """Multiply every coefficient by one scalar of the coefficient ring."""
        return GroupRingElt(self.p, self.scalars, self.scalars.mul(self.coeffs, scalar),
                            self.basis)

    def __pow__(self, e: int) -> GroupRingElt:
        if e < 0:
            return invert_unit(self) ** (-e)
        result = GroupRingElt.one(self.p, self.nvars, self.scalars, self.basis)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, (GroupRingElt, int, np.integer)):
            return NotImplemented
        try:
            diff = self - other
        except ValueError:
            return False
        return diff.is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        from .render import render

        ring = "F_p" if self.scalars.k == 1 else f"AS(c={self.scalars.c})"
        if self.modulus != self.p:
            ring += f" mod {self.modulus}"
        try:
            body = render(self)
        except ValueError:
            body = f"<grid {self.coeffs.shape}>"
        return f"GroupRingElt(p={self.p}, {ring}, {body})"

    def to_json_dict(self) -> dict:
        return {"p": self.p, "basis": self.basis, "nvars": self.nvars,
                "scalar_rank": self.scalars.k, "grid": self.grid.tolist()}


# ---------------------------------------------------------------------------
# operations


def invert_unit(u: GroupRingElt) -> GroupRingElt:
    """Inverse of a unit: constant times (1 + n) with n nilpotent.

    Uses 1/(1+n) = (1 - n)(1 + n^2)(1 + n^4)..., which terminates because n
    lies in the augmentation ideal.
    """
    uy = u.to_y()
    c0 = uy.coeffs[0, 0]
    try:
        c0_inv = u.scalars.inv(c0)
    except ZeroDivisionError as exc:
        raise ValueError("constant term is not invertible") from exc
    normed = uy.scale(c0_inv)
    n = normed - 1
    result = 1 - n
    m = n * n
    while not m.is_zero():
        result = result * (1 + m)
        m = m * m
    return result.scale(c0_inv).in_basis(u.basis)


def _require_augmentation(f: GroupRingElt):
    if f.to_y().coeffs[0, 0].any():
        raise ValueError("argument must lie in the augmentation ideal (zero constant term)")


def exp0(f: GroupRingElt) -> GroupRingElt:
    """Truncated exponential sum_{i<p} f^i / i! over an F_p-algebra."""
    if f.scalars.is_lift:
        raise ValueError("exp0 needs scalars of characteristic p")
    _require_augmentation(f)
    ctx = prime_context(f.p)
    fy = f.to_y()
    term = GroupRingElt.one(f.p, f.nvars, f.scalars, Y)
    total = term
    for i in range(1, f.p):
        term = (term * fy) * ctx.inv(i)
        if term.is_zero():
            break
        total = total + term
    return total.in_basis(f.basis)


def exp1(f: GroupRingElt, lift_offset: GroupRingElt | None = None) -> GroupRingElt:
    """Reduction mod p of the exponential of an integral lift of ``f``.

    The lift lives in the mod p^2 ring; terms f^i / i! with i >= p have one
    factor of p in i!, removed by exact division of f^i by p.  ``lift_offset``
    (an element over the same scalars) selects the alternative lift
    ``f + p * lift_offset``; the result does not depend on it.
    """
    if f.scalars.is_lift:
        raise ValueError("exp1 takes an element of characteristic p")
    _require_augmentation(f)
    p = f.p
    ctx = prime_context(p)
    p2 = p * p
    lifted_ring = f.scalars.lift()
    ft = f.to_y().with_scalars(lifted_ring)
    if lift_offset is not None:
        ft = ft + GroupRingElt(p, lifted_ring, lift_offset.to_y().coeffs * p, Y)
    total = GroupRingElt.one(p, f.nvars, f.scalars, Y).coeffs.copy()
    power = GroupRingElt.one(p, f.nvars, lifted_ring, Y)
    for i in range(1, 2 * p - 1):
        power = power * ft
        if power.is_zero():
            break
        fact = ctx.factorials_mod_p2[i]
        if i < p:
            total += (power.coeffs * pow(fact, -1, p2)) % p2 % p
        else:
            if np.any(power.coeffs % p):
                raise AssertionError(f"lifted power {i} is not divisible by p")
            total += ((power.coeffs // p) % p) * ctx.inv(_factorial_unit(p, i))
    return GroupRingElt(p, f.scalars, total % p, Y).in_basis(f.basis)


def divided_power(f: GroupRingElt, n: int) -> GroupRingElt:
    """f^n / n! mod p for 0 <= n <= 2p - 2, through the mod p^2 lift when n >= p."""
    p = f.p
    if not 0 <= n <= 2 * p - 2:
        raise ValueError("divided powers are available for n <= 2p - 2")
    if n < p:
        return (f ** n) * prime_context(p).inv(prime_context(p).factorials_mod_p[n])
    _require_augmentation(f)
    lifted = f.to_y().with_scalars(f.scalars.lift()) ** n
    if np.any(lifted.coeffs % p):
        raise AssertionError(f"lifted power {n} is not divisible by p")
    out = ((lifted.coeffs // p) % p) * prime_context(p).inv(_factorial_unit(p, n))
    return GroupRingElt(p, f.scalars, out % p, Y).in_basis(f.basis)


@cache
def _factorial_unit(p: int, n: int) -> int:
    """(n! / p) mod p for p <= n < 2p."""
    f = 1
    for i in range(1, n + 1):
        f *= i if i != p else 1
    return f % p


def derivative(u: GroupRingElt) -> GroupRingElt:
    """Formal eps-derivative on Lambda_0: d(eps^i) = i eps^(i-1) (p eps^(p-1) = 0)."""
    if u.nvars != 1:
        raise ValueError("derivative is defined on the one-variable group ring")
    e = u.to_eps().coeffs
    out = np.zeros_like(e)
    for i in range(1, u.p):
        out[i - 1] = e[i] * i
    return GroupRingElt(u.p, u.scalars, out, EPS)


@dataclass(frozen=True, eq=False)
class DifferentialElt:
    """A differential g(eps) d(eps) on Lambda_0, stored through ``g`` in the eps basis."""

    factor: GroupRingElt

    @property
    def coeffs(self) -> np.ndarray:
        """Coefficient of eps^i d(eps) at index i."""
        return self.factor.to_eps().grid

    def __add__(self, other: DifferentialElt) -> DifferentialElt:
        return DifferentialElt((self.factor + other.factor).to_eps())

    def __sub__(self, other: DifferentialElt) -> DifferentialElt:
        return DifferentialElt((self.factor - other.factor).to_eps())

    def __eq__(self, other) -> bool:
        if not isinstance(other, DifferentialElt):
            return NotImplemented
        return self.factor == other.factor

    __hash__ = None

    @classmethod
    def dlog_eps(cls, p: int, scalars: ScalarRing | None = None) -> DifferentialElt:
        return cls(GroupRingElt.monomial(p, p - 1, nvars=1, scalars=scalars, basis=EPS))

    def support(self) -> list[int]:
        g = self.factor.to_eps().coeffs[:, 0]
        return [i for i in range(self.factor.p) if g[i].any()]


def dlog(u: GroupRingElt) -> DifferentialElt:
    """Logarithmic derivative u'/u d(eps) of a unit of Lambda_0."""
    if u.nvars != 1:
        raise ValueError("dlog is defined on the one-variable group ring")
    return DifferentialElt((derivative(u) * invert_unit(u)).to_eps())


def differential(f: GroupRingElt) -> DifferentialElt:
    """df = f'(eps) d(eps)."""
    return DifferentialElt(derivative(f))


def norm(u: GroupRingElt) -> GroupRingElt:
    """1 + u + ... + u^(p-1)."""
    total = GroupRingElt.one(u.p, u.nvars, u.scalars, u.basis)
    power = total
    for _ in range(1, u.p):
        power = power * u
        total = total + power
    return total


def ideal_power_degree(u: GroupRingElt) -> int:
    """Largest k with u in <y0, y1>^k; ``nvars*(p-1) + 1`` stands for infinity (u == 0)."""
    g = u.to_y().coeffs
    nz = np.argwhere(g.any(axis=2))
    if nz.size == 0:
        return u.nvars * (u.p - 1) + 1
    return int(nz.sum(axis=1).min())


def truncate_degree(u: GroupRingElt, k: int) -> GroupRingElt:
    """Drop every y-monomial of total degree >= k (reduction mod <y0, y1>^k)."""
    uy = u.to_y()
    i, j = np.indices(uy.coeffs.shape[:2])
    mask = (i + j) < k
    return GroupRingElt(u.p, u.scalars, uy.coeffs * mask[:, :, None], Y).in_basis(u.basis)


def swap(u: GroupRingElt) -> GroupRingElt:
    """The involution eps0 <-> eps1 (transpose of the coefficient grid)."""
    if u.nvars != 2:
        raise ValueError("swap needs two variables")
    return GroupRingElt(u.p, u.scalars, u.coeffs.transpose(1, 0, 2), u.basis)


def twist(a: int, u: GroupRingElt) -> GroupRingElt:
    """Permutation action eps0^i eps1^j -> eps0^(ia) eps1^(ja)."""
    p = u.p
    a %= p
    if a == 0:
        raise ValueError("twist needs a unit mod p")
    e = u.to_eps().coeffs
    out = np.zeros_like(e)
    idx = (np.arange(p) * a) % p
    if u.nvars == 2:
        out[np.ix_(idx, idx)] = e
    else:
        out[idx] = e
    return GroupRingElt(p, u.scalars, out, EPS).in_basis(u.basis)


def filtration_component(m: GroupRingElt, k: int) -> GroupRingElt:
    """[m]_k: the y-monomials y0^i y1^j of m with min(i, j) == k."""
    if not 0 <= k <= m.p - 1:
        raise ValueError("k out of range")
    my = m.to_y()
    i, j = np.indices(my.coeffs.shape[:2])
    mask = np.minimum(i, j) == k
    return GroupRingElt(m.p, m.scalars, my.coeffs * mask[:, :, None], Y)


def substitute(g: GroupRingElt, which: str) -> GroupRingElt:
    """Lambda_0 -> Lambda_1 along eps -> eps0 ("0"), eps1 ("1") or eps0*eps1 ("01")."""
    if g.nvars != 1:
        raise ValueError("substitute takes a one-variable element")
    p = g.p
    e = g.to_eps().coeffs[:, 0]
    out = np.zeros((p, p, g.scalars.k), np.int64)
    idx = np.arange(p)
    if which == "0":
        out[:, 0] = e
    elif which == "1":
        out[0, :] = e
    elif which == "01":
        out[idx, idx] = e
    else:
        raise ValueError(f"unknown substitution {which!r}")
    return GroupRingElt(p, g.scalars, out, EPS)
