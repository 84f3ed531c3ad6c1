"""Factor sets of small explicit group extensions 1 -> N -> G -> (Z/p)^n -> 1.

The section is the ordered product s(tau_0^t0 ... tau_{n-1}^t{n-1}) =
s(tau_0)^t0 ... s(tau_{n-1})^t{n-1}; from it we read off a_j = s(tau_j)^p and
c_{j,k} = [s(tau_k), s(tau_j)] and check them against the factor set.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Hashable

import numpy as np

Elt = Hashable


@dataclass(frozen=True)
class ExtensionFixture:
    name: str
    p: int
    ngens: int
    identity: Elt
    mul: Callable[[Elt, Elt], Elt]
    inv: Callable[[Elt], Elt]
    project: Callable[[Elt], tuple[int, ...]]
    lifts: tuple[Elt, ...]  # s(tau_j)
    section: Callable[[tuple[int, ...]], Elt] | None = None

    def power(self, g: Elt, e: int) -> Elt:
        out = self.identity
        for _ in range(e):
            out = self.mul(out, g)
        return out

    def commutator(self, a: Elt, b: Elt) -> Elt:
        """[a, b] = a b a^-1 b^-1."""
        return self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))

    def s(self, t: tuple[int, ...]) -> Elt:
        if self.section is not None:
            return self.section(t)
        out = self.identity
        for g, e in zip(self.lifts, t):
            out = self.mul(out, self.power(g, e % self.p))
        return out

    def quotient_elements(self):
        return product(range(self.p), repeat=self.ngens)

    def add(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def tau(self, j: int, e: int = 1) -> tuple[int, ...]:
        t = [0] * self.ngens
        t[j] = e % self.p
        return tuple(t)


@dataclass(frozen=True)
class ExtensionData:
    a: tuple[Elt, ...]
    c: dict[tuple[int, int], Elt]
    omega: dict[tuple[tuple[int, ...], tuple[int, ...]], Elt]


def omega_from_extension(ext: ExtensionFixture) -> ExtensionData:
    """Factor set omega(q1, q2) = s(q1) s(q2) s(q1 q2)^-1 and the data a_j, c_{j,k}."""
    zero = (0,) * ext.ngens
    if ext.s(zero) != ext.identity:
        raise ValueError("section is not normalized: s(1) != 1")
    for j, g in enumerate(ext.lifts):
        if ext.project(g) != ext.tau(j):
            raise ValueError(f"lift of tau_{j} does not map to tau_{j}")
    qs = list(ext.quotient_elements())
    sec = {t: ext.s(t) for t in qs}
    omega = {}
    for q1 in qs:
        for q2 in qs:
            w = ext.mul(ext.mul(sec[q1], sec[q2]), ext.inv(sec[ext.add(q1, q2)]))
            if ext.project(w) != zero:
                raise AssertionError("factor set value is not in N")
            omega[q1, q2] = w
    a = []
    for j in range(ext.ngens):
        for t in range(ext.p - 1):
            if omega[ext.tau(j, t), ext.tau(j)] != ext.identity:
                raise AssertionError(f"omega(tau_{j}^{t}, tau_{j}) != 1")
        aj = omega[ext.tau(j, ext.p - 1), ext.tau(j)]
        if aj != ext.power(ext.lifts[j], ext.p):
            raise AssertionError(f"a_{j} differs from s(tau_{j})^p")
        a.append(aj)
    c = {}
    for j, k in combinations(range(ext.ngens), 2):
        val = ext.mul(omega[ext.tau(k), ext.tau(j)], ext.inv(omega[ext.tau(j), ext.tau(k)]))
        if val != ext.commutator(ext.lifts[k], ext.lifts[j]):
            raise AssertionError(f"c_{j},{k} differs from [s(tau_{k}), s(tau_{j})]")
        c[j, k] = val
    return ExtensionData(tuple(a), c, omega)


def d2_instance_values(data: ExtensionData, phi: Callable[[Elt], np.ndarray]):
    """(u, w) arrays for a D2 instance: u_j = phi(a_j), w_{j,k} = phi(c_{j,k})."""
    u = np.stack([np.asarray(phi(x)) for x in data.a])
    keys = sorted(data.c)
    w = np.stack([np.asarray(phi(data.c[k])) for k in keys]) if keys else np.zeros((0,))
    return u, w


# ---------------------------------------------------------------------------
# fixtures


def split_extension(p: int, ngens: int) -> ExtensionFixture:
    """G = (Z/p)^ngens x Z/p with N the last factor."""
    n = ngens + 1

    def mul(a, b):
        return tuple((x + y) % p for x, y in zip(a, b))

    lifts = tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(ngens))
    return ExtensionFixture(f"split(Z/{p})^{ngens}", p, ngens, (0,) * n, mul,
                            lambda a: tuple((-x) % p for x in a), lambda g: tuple(g[:ngens]), lifts)


def cyclic_extension(p: int) -> ExtensionFixture:
    """G = Z/p^2, N = pZ/p^2, Q = Z/p."""
    m = p * p
    return ExtensionFixture(f"Z/{m}", p, 1, 0, lambda a, b: (a + b) % m, lambda a: (-a) % m,
                            lambda g: (g % p,), (1,))


def heisenberg_extension(p: int) -> ExtensionFixture:
    """Unitriangular 3x3 matrices mod p as (a, b, c); N is the centre, Q = (Z/p)^2 via (a, b)."""

    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    def inv(x):
        return ((-x[0]) % p, (-x[1]) % p, (x[0] * x[1] - x[2]) % p)

    return ExtensionFixture(f"Heisenberg mod {p}", p, 2, (0, 0, 0), mul, inv,
                            lambda g: (g[0], g[1]), ((1, 0, 0), (0, 1, 0)))
