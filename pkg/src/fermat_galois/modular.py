"""Scalar rings (F_p, Artin-Schreier extensions, mod p^2 lifts) and linear algebra over F_p.

Scalars are stored as integer vectors of length ``k`` along the last axis of
an array: ``k == 1`` for the residue ring Z/N itself and ``k == p`` for
(Z/N)[t]/(t^p - t + c).  Matrices over F_p are plain ``int64`` numpy arrays
with entries in ``[0, p)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cache, cached_property

import numpy as np

from . import _kernels

SUPPORTED_PRIMES = (3, 5, 7, 11, 13)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class PrimeContext:
    """An odd prime ``p`` with ``r = (p - 1) / 2`` and lookup tables."""

    p: int

    def __post_init__(self):
        if self.p < 3 or not is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")

    @property
    def r(self) -> int:
        return (self.p - 1) // 2

    @cached_property
    def inverses(self) -> np.ndarray:
        """``inv[i] * i == 1 mod p`` for ``1 <= i < p``; ``inv[0] = 0``."""
        p = self.p
        inv = np.zeros(p, dtype=np.int64)
        for i in range(1, p):
            inv[i] = pow(i, -1, p)
        return inv

    @cached_property
    def factorials_mod_p(self) -> tuple[int, ...]:
        out, f = [], 1
        for i in range(2 * self.p - 1):
            out.append(f % self.p)
            f *= i + 1
        return tuple(out)

    @cached_property
    def factorials_mod_p2(self) -> tuple[int, ...]:
        out, f = [], 1
        for i in range(2 * self.p - 1):
            out.append(f % (self.p * self.p))
            f *= i + 1
        return tuple(out)

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse mod p")
        return int(self.inverses[a])


@cache
def prime_context(p: int) -> PrimeContext:
    return PrimeContext(p)


@dataclass(frozen=True)
class ScalarRing:
    """(Z/modulus)[t]/(t^p - t + c), or Z/modulus itself when ``c is None``.

    ``modulus`` is ``p`` (the F_p-algebras) or ``p**2`` (their lifts).
    """

    p: int
    modulus: int
    c: int | None = None

    def __post_init__(self):
        if self.modulus not in (self.p, self.p * self.p):
            raise ValueError("modulus must be p or p^2")

    @property
    def k(self) -> int:
        return 1 if self.c is None else self.p

    @property
    def fold_c(self) -> int:
        return 0 if self.c is None else self.c % self.modulus

    @property
    def is_lift(self) -> bool:
        return self.modulus != self.p

    def lift(self) -> ScalarRing:
        return ScalarRing(self.p, self.p * self.p, self.c)

    def reduction(self) -> ScalarRing:
        return ScalarRing(self.p, self.p, None if self.c is None else self.c % self.p)

    def zero(self) -> np.ndarray:
        return np.zeros(self.k, dtype=np.int64)

    def scalar(self, value: int) -> np.ndarray:
        out = self.zero()
        out[0] = value % self.modulus
        return out

    def one(self) -> np.ndarray:
        return self.scalar(1)

    def t(self) -> np.ndarray:
        if self.c is None:
            raise ValueError("the base ring has no generator t")
        out = self.zero()
        out[1] = 1
        return out

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Broadcasting product of scalar arrays with trailing axis ``k``."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        k, n = self.k, self.modulus
        if k == 1:
            return (a * b) % n
        shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
        raw = np.zeros(shape + (2 * k - 1,), dtype=np.int64)
        for s in range(k):
            raw[..., s:s + k] += (a[..., s:s + 1] * b) % n
        for d in range(2 * k - 2, k - 1, -1):
            v = raw[..., d] % n
            raw[..., d - k + 1] += v
            raw[..., d - k] -= self.fold_c * v
        return raw[..., :k] % n

    def pow(self, a: np.ndarray, e: int) -> np.ndarray:
        result = self.one()
        base = np.asarray(a, dtype=np.int64) % self.modulus
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def mult_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix (columns = images of 1, t, ..., t^{k-1}) of multiplication by ``a``."""
        basis = np.eye(self.k, dtype=np.int64)
        return self.mul(basis, np.asarray(a, dtype=np.int64)).T % self.modulus

    def inv(self, a: np.ndarray) -> np.ndarray:
        """Inverse of a scalar; raises ZeroDivisionError for non-units."""
        p = self.p
        a = np.asarray(a, dtype=np.int64) % self.modulus
        base = self.reduction()
        x = solve(base.mult_matrix(a % p), base.one(), p)
        if x is None:
            raise ZeroDivisionError("scalar is not a unit")
        if self.is_lift:
            # Newton step doubles p-adic precision: x <- x (2 - a x)
            two = self.scalar(2)
            x = self.mul(x, (two - self.mul(a, x)) % self.modulus)
        return x % self.modulus

    def in_base(self, a: np.ndarray) -> bool:
        """True when every entry of ``a`` (trailing axis k) lies in Z/modulus."""
        return not np.any(np.asarray(a)[..., 1:])


def artin_schreier(p: int, c: int) -> tuple[ScalarRing, np.ndarray]:
    """The ring F_p[t]/(t^p - t + c) with its root F = t; F_p with F = 0 when c = 0."""
    c %= p
    if c == 0:
        ring = ScalarRing(p, p, None)
        return ring, ring.zero()
    ring = ScalarRing(p, p, c)
    return ring, ring.t()


# ---------------------------------------------------------------------------
# linear algebra over F_p


def _as_fp(a, p: int) -> np.ndarray:
    return np.ascontiguousarray(np.array(a, dtype=np.int64, ndmin=2) % p)


def rref(a, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row-echelon form over F_p and the pivot columns."""
    m = _as_fp(a, p)
    if m.size == 0:
        return m, ()
    pivots = _kernels.rref_inplace(m, p, prime_context(p).inverses)
    return m, tuple(int(c) for c in pivots)


def rank(a, p: int) -> int:
    return len(rref(a, p)[1])


def kernel_basis(a, p: int) -> np.ndarray:
    """Rows spanning the right null space {v : a @ v == 0}."""
    m, pivots = rref(a, p)
    n = m.shape[1]
    free = [j for j in range(n) if j not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for row, j in enumerate(free):
        basis[row, j] = 1
        for i, pc in enumerate(pivots):
            basis[row, pc] = (-m[i, j]) % p
    return basis


def image_basis(a, p: int) -> np.ndarray:
    """Rows spanning the column space of ``a``."""
    m, pivots = rref(np.asarray(a).T, p)
    return m[: len(pivots)]


def solve(a, b, p: int) -> np.ndarray | None:
    """One solution x of a @ x == b over F_p, or None when inconsistent."""
    a = _as_fp(a, p)
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    m, pivots = rref(np.hstack([a, b[:, None]]), p)
    n = a.shape[1]
    if pivots and pivots[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = m[i, n]
    return x


def matmul(a, b, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F_p^n held as a reduced row-echelon basis."""

    p: int
    ambient_dim: int
    basis: np.ndarray

    @classmethod
    def span(cls, vectors, p: int, ambient_dim: int | None = None) -> Subspace:
        v = np.array(vectors, dtype=np.int64)
        if v.ndim == 1:
            v = v.reshape(1, -1) if v.size else v.reshape(0, ambient_dim or 0)
        n = v.shape[1] if ambient_dim is None else ambient_dim
        if v.shape[0] == 0:
            return cls(p, n, np.zeros((0, n), dtype=np.int64))
        m, pivots = rref(v, p)
        basis = m[: len(pivots)].copy()
        basis.setflags(write=False)
        return cls(p, n, basis)

    @classmethod
    def kernel(cls, a, p: int) -> Subspace:
        a = _as_fp(a, p)
        return cls.span(kernel_basis(a, p), p, a.shape[1])

    @classmethod
    def image(cls, a, p: int) -> Subspace:
        a = _as_fp(a, p)
        return cls.span(image_basis(a, p), p, a.shape[0])

    @classmethod
    def whole(cls, n: int, p: int) -> Subspace:
        return cls.span(np.eye(n, dtype=np.int64), p, n)

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    def _check(self, other: Subspace):
        if self.p != other.p or self.ambient_dim != other.ambient_dim:
            raise ValueError("subspaces live in different ambient spaces")

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(-1) % self.p
        if v.shape[0] != self.ambient_dim:
            raise ValueError("vector has wrong length")
        if self.dim == 0:
            return not v.any()
        return rank(np.vstack([self.basis, v]), self.p) == self.dim

    def is_subspace_of(self, other: Subspace) -> bool:
        self._check(other)
        return all(other.contains(row) for row in self.basis)

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(np.vstack([self.basis, other.basis]), self.p, self.ambient_dim)

    def intersect(self, other: Subspace) -> Subspace:
        """Intersection via the kernel of the stacked system [A^T | -B^T]."""
        self._check(other)
        p = self.p
        if self.dim == 0 or other.dim == 0:
            return Subspace.span(np.zeros((0, self.ambient_dim)), p, self.ambient_dim)
        stacked = np.hstack([self.basis.T, (-other.basis.T) % p])
        coeffs = kernel_basis(stacked, p)[:, : self.dim]
        return Subspace.span(matmul(coeffs, self.basis, p), p, self.ambient_dim)

    def codim_in(self, other: Subspace) -> int:
        if not self.is_subspace_of(other):
            raise ValueError("subspace is not contained in the ambient subspace")
        return other.dim - self.dim

    def transform(self, matrix) -> Subspace:
        """Image of the subspace under the linear map ``v -> matrix @ v``."""
        rows = matmul(self.basis, np.asarray(matrix).T, self.p)
        return Subspace.span(rows, self.p, np.asarray(matrix).shape[0])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.p == other.p and self.ambient_dim == other.ambient_dim
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.p, self.ambient_dim, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(p={self.p}, dim={self.dim}, ambient={self.ambient_dim})"

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dict(self) -> dict:
        return {"p": self.p, "ambient_dim": self.ambient_dim, "basis": self.basis.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> Subspace:
        n = data["ambient_dim"]
        return cls.span(np.array(data["basis"], dtype=np.int64).reshape(-1, n), data["p"], n)
