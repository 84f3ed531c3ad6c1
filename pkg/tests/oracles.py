"""Independent slow reference implementations used to cross-check the library."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb, factorial

import numpy as np


def naive_y_product(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product of two p x p grids in F_p[y0, y1]/(y0^p, y1^p), term by term."""
    out = np.zeros((p, p), dtype=np.int64)
    for (i1, j1), (i2, j2) in product(np.ndindex(p, p), repeat=2):
        if i1 + i2 < p and j1 + j2 < p:
            out[i1 + i2, j1 + j2] += int(a[i1, j1]) * int(b[i2, j2])
    return out % p


def naive_eps_product(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product in F_p[Z/p x Z/p] with group-element coordinates."""
    out = np.zeros((p, p), dtype=np.int64)
    for (i1, j1), (i2, j2) in product(np.ndindex(p, p), repeat=2):
        out[(i1 + i2) % p, (j1 + j2) % p] += int(a[i1, j1]) * int(b[i2, j2])
    return out % p


def eps_to_y(grid: np.ndarray, p: int) -> np.ndarray:
    """Expand eps0^i eps1^j = (1+y0)^i (1+y1)^j with binomials."""
    out = np.zeros((p, p), dtype=np.int64)
    for i, j in np.ndindex(p, p):
        c = int(grid[i, j])
        if c:
            for a in range(i + 1):
                for b in range(j + 1):
                    out[a, b] += c * comb(i, a) * comb(j, b)
    return out % p


def rational_exp_mod_p(grid: np.ndarray, p: int) -> np.ndarray:
    """exp of the integer lift of f in Q[y0, y1]/(y0^p, y1^p), reduced mod p.

    Every term with total y-degree >= 2p - 1 vanishes, so the series is finite.
    """
    f = {(i, j): Fraction(int(grid[i, j])) for i, j in np.ndindex(p, p) if grid[i, j]}
    total = {(0, 0): Fraction(1)}
    power = {(0, 0): Fraction(1)}
    for n in range(1, 2 * p - 1):
        nxt = {}
        for (i1, j1), c1 in power.items():
            for (i2, j2), c2 in f.items():
                if i1 + i2 < p and j1 + j2 < p:
                    key = (i1 + i2, j1 + j2)
                    nxt[key] = nxt.get(key, 0) + c1 * c2
        power = nxt
        for k, v in power.items():
            total[k] = total.get(k, 0) + v / factorial(n)
    out = np.zeros((p, p), dtype=np.int64)
    for (i, j), v in total.items():
        if v.denominator % p == 0:
            raise AssertionError("denominator divisible by p")
        out[i, j] = v.numerator * pow(v.denominator, -1, p) % p
    return out


def brute_rank(a: np.ndarray, p: int) -> int:
    """log_p of the size of the image of x -> a x, by enumerating all x."""
    rows, cols = a.shape
    image = {tuple((a @ np.array(x)) % p) for x in product(range(p), repeat=cols)}
    n, r = len(image), 0
    while n > 1:
        n //= p
        r += 1
    return r


def has_root(poly: list[int], ell: int) -> bool:
    return any(sum(c * pow(x, i, ell) for i, c in enumerate(poly)) % ell == 0 for x in range(ell))


def brute_count_fermat(p: int, q_elems, add, mul, zero, one) -> int:
    """Projective count of x^p + y^p = z^p using only field add/mul callables."""

    def pw(x):
        out = one
        for _ in range(p):
            out = mul(out, x)
        return out

    powers = {x: pw(x) for x in q_elems}
    affine = sum(1 for x in q_elems for y in q_elems if add(powers[x], powers[y]) == one)
    minus_one = next(x for x in q_elems if add(x, one) == zero)
    infinity = sum(1 for x in q_elems if powers[x] == minus_one)
    return affine + infinity
