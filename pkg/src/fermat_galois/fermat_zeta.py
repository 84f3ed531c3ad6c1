"""Point counts of x^p + y^p = z^p over finite fields, Jacobi sums, and their mod-p consequences."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product

import numpy as np

from . import _kernels
from .modular import is_prime

DEFAULT_POINT_CAP = 2_000_000
CAP_ENV = "FERMAT_GALOIS_POINT_CAP"


def point_cap() -> int:
    """Maximum number of affine pairs a single count may visit."""
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_POINT_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{CAP_ENV} must be an integer, got {raw!r}") from exc


class CapExceeded(ValueError):
    pass


class FiniteField:
    """F_q with q = ell^f, elements encoded as integers sum a_i ell^i.

    The modulus is the first monic polynomial (in lexicographic order of its
    lower coefficients) for which x generates the multiplicative group, so the
    field is built deterministically and x is the fixed generator g.
    """

    def __init__(self, ell: int, f: int = 1):
        if not is_prime(ell):
            raise ValueError(f"characteristic {ell} is not prime")
        if f < 1:
            raise ValueError("extension degree must be positive")
        self.ell = ell
        self.f = f
        self.q = ell ** f
        self.modulus, self.exp_table = self._primitive_modulus()
        log = np.full(self.q, -1, np.int64)
        log[self.exp_table] = np.arange(self.q - 1)
        self.log_table = log
        self.exp_table.setflags(write=False)
        self.log_table.setflags(write=False)

    def __repr__(self) -> str:
        return f"FiniteField(ell={self.ell}, f={self.f})"

    @cached_property
    def digits(self) -> np.ndarray:
        """digits[e, i] = coefficient of x^i in element e."""
        e = np.arange(self.q)
        return np.stack([(e // self.ell ** i) % self.ell for i in range(self.f)], axis=1)

    def encode(self, digits: np.ndarray) -> np.ndarray:
        weights = self.ell ** np.arange(self.f)
        return (np.asarray(digits) % self.ell) @ weights

    def _primitive_modulus(self) -> tuple[tuple[int, ...], np.ndarray]:
        ell, f, q = self.ell, self.f, self.q
        if f == 1:
            for g in range(1, ell):
                powers = [1]
                for _ in range(ell - 2):
                    powers.append(powers[-1] * g % ell)
                if len(set(powers)) == ell - 1:
                    return (-g % ell,), np.array(powers, np.int64)
            raise AssertionError("no primitive root found")
        for low in product(range(ell), repeat=f):
            if low[0] == 0:
                continue
            table = _powers_of_x(ell, low)
            if table is not None:
                return low, table
        raise AssertionError("no primitive polynomial found")  # pragma: no cover

    def generator(self) -> int:
        return int(self.exp_table[1 % (self.q - 1)])

    def is_irreducible_modulus(self) -> bool:
        """Brute force: the modulus has no monic factor of degree 1..f/2."""
        poly = list(self.modulus) + [1]
        return _is_irreducible(poly, self.ell)

    def add(self, a, b):
        return self.encode(self.digits[a] + self.digits[b])

    def neg(self, a):
        return self.encode(-self.digits[a])

    def mul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        out = self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def power(self, a, e: int):
        a = np.asarray(a)
        out = self.exp_table[(self.log_table[a] * e) % (self.q - 1)]
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, out)

    @property
    def one(self) -> int:
        return 1


def _powers_of_x(ell: int, low: tuple[int, ...]) -> np.ndarray | None:
    """Successive powers of x mod x^f + low[f-1] x^(f-1) + ... + low[0]; None if x is not primitive."""
    f = len(low)
    q = ell ** f
    weights = [ell ** i for i in range(f)]
    cur = [1] + [0] * (f - 1)
    out = np.empty(q - 1, np.int64)
    for k in range(q - 1):
        code = sum(c * w for c, w in zip(cur, weights))
        if k > 0 and code == 1:
            return None
        out[k] = code
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [(c - top * a) % ell for c, a in zip(cur, low)]
    if cur != [1] + [0] * (f - 1):
        return None
    return out


def _poly_mod(a: list[int], b: list[int], ell: int) -> list[int]:
    a = a[:]
    inv_lead = pow(b[-1], -1, ell)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        coef = a[-1] * inv_lead % ell
        shift = len(a) - len(b)
        for i, v in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * v) % ell
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(poly: list[int], ell: int) -> bool:
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for low in product(range(ell), repeat=d):
            if not _poly_mod(poly, list(low) + [1], ell):
                return False
    return True


@lru_cache(maxsize=32)
def finite_field(ell: int, f: int = 1) -> FiniteField:
    return FiniteField(ell, f)


# ---------------------------------------------------------------------------
# counting


def _check_inputs(p: int, ell: int):
    if not is_prime(p) or p < 3:
        raise ValueError(f"p={p} must be an odd prime")
    if ell == p:
        raise ValueError("the characteristic must differ from p")


def affine_count(p: int, fld: FiniteField, cap: int | None = None) -> int:
    """#{(x, y) in F^2 : x^p + y^p = 1} by brute force over pairs."""
    cap = point_cap() if cap is None else cap
    if fld.q * fld.q > cap:
        raise CapExceeded(f"{fld.q}^2 affine pairs exceed the cap {cap} (set {CAP_ENV})")
    elems = np.arange(fld.q)
    pw = fld.power(elems, p)
    targets = fld.add(np.full(fld.q, fld.one), fld.neg(pw))
    return _kernels.count_pairs(pw, targets)


def infinity_count(p: int, fld: FiniteField) -> int:
    """#{x : x^p = -1}, the points [x : 1 : 0]."""
    elems = np.arange(fld.q)
    return int(np.count_nonzero(fld.power(elems, p) == fld.neg(np.array(fld.one))))


def count_points(p: int, ell: int, f: int = 1, m: int = 1, cap: int | None = None) -> int:
    """Projective count N_m of the Fermat curve of exponent p over F_{q^m}, q = ell^f."""
    _check_inputs(p, ell)
    fld = finite_field(ell, f * m)
    n = affine_count(p, fld, cap) + infinity_count(p, fld)
    if (fld.q - 1) % p == 0 and n % p:
        raise AssertionError(f"N = {n} is not divisible by p = {p} over F_{fld.q}")
    return n


def orbit_decomposition(p: int, n: int) -> int | None:
    """k with n = 3p + p^2 k and k >= 0, or None."""
    rest = n - 3 * p
    if rest < 0 or rest % (p * p):
        return None
    return rest // (p * p)


# ---------------------------------------------------------------------------
# cyclotomic integers and Jacobi sums


@dataclass(frozen=True)
class CyclotomicInt:
    """Element of Z[x]/(Phi_p(x)) in the basis 1, x, ..., x^(p-2)."""

    p: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.p - 1:
            raise ValueError("need p - 1 coordinates")
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @classmethod
    def from_exponent_counts(cls, p: int, counts) -> CyclotomicInt:
        """sum_k counts[k] x^k for k in 0..p-1, reduced with x^(p-1) = -(1 + ... + x^(p-2))."""
        counts = [int(c) for c in counts]
        top = counts[p - 1]
        return cls(p, tuple(counts[k] - top for k in range(p - 1)))

    @classmethod
    def integer(cls, p: int, n: int) -> CyclotomicInt:
        return cls(p, (n,) + (0,) * (p - 2))

    def full(self) -> list[int]:
        return list(self.coords) + [0]

    def __add__(self, other: CyclotomicInt) -> CyclotomicInt:
        return CyclotomicInt(self.p, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: CyclotomicInt) -> CyclotomicInt:
        return CyclotomicInt(self.p, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, other: CyclotomicInt) -> CyclotomicInt:
        p = self.p
        acc = [0] * p
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    acc[(i + j) % p] += a * b
        return CyclotomicInt.from_exponent_counts(p, acc)

    def sigma(self, a: int) -> CyclotomicInt:
        """The automorphism x -> x^a."""
        p = self.p
        if a % p == 0:
            raise ValueError("a must be a unit mod p")
        acc = [0] * p
        for i, c in enumerate(self.coords):
            acc[(i * a) % p] += c
        return CyclotomicInt.from_exponent_counts(p, acc)

    def conjugate(self) -> CyclotomicInt:
        return self.sigma(-1)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational_value(self) -> int:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]


def jacobi_index_set(p: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, p) for j in range(1, p) if (i + j) % p]


def jacobi_sum(p: int, fld: FiniteField, i: int, j: int) -> CyclotomicInt:
    """J(chi^i, chi^j) = sum_{a + b = 1} chi^i(a) chi^j(b) with chi(g^k) = x^k."""
    if (fld.q - 1) % p:
        raise ValueError(f"q = {fld.q} is not 1 mod {p}")
    if not (1 <= i < p and 1 <= j < p) or (i + j) % p == 0:
        raise ValueError(f"({i}, {j}) is not an admissible index pair")
    a = np.arange(1, fld.q)
    b = fld.add(np.full(a.size, fld.one), fld.neg(a))
    ok = b != 0
    a, b = a[ok], b[ok]
    expo = (i * fld.log_table[a] + j * fld.log_table[b]) % p
    counts = np.bincount(expo, minlength=p)
    return CyclotomicInt.from_exponent_counts(p, counts)


@dataclass
class CountIdentity:
    p: int
    q: int
    count: int
    predicted: CyclotomicInt
    holds: bool
    discrepancy: int | None


def count_identity_check(p: int, ell: int, f: int = 1) -> CountIdentity:
    """Compare N_1 with q + 1 + sum over admissible (i, j) of J(chi^i, chi^j)."""
    fld = finite_field(ell, f)
    total = CyclotomicInt.integer(p, fld.q + 1)
    for i, j in jacobi_index_set(p):
        total = total + jacobi_sum(p, fld, i, j)
    n = count_points(p, ell, f, 1)
    if not total.is_rational():
        return CountIdentity(p, fld.q, n, total, False, None)
    diff = total.rational_value() - n
    return CountIdentity(p, fld.q, n, total, diff == 0, diff)


def genus(p: int) -> int:
    return (p - 1) * (p - 2) // 2


@dataclass
class CountReport:
    p: int
    ell: int
    f: int
    genus: int
    counts: list[tuple[int, int, int]] = field(default_factory=list)  # (m, N_m, N_m mod p)
    series_counts: list[int] = field(default_factory=list)
    series_zeta: list[int] = field(default_factory=list)

    @property
    def agrees(self) -> bool:
        return self.series_counts == self.series_zeta

    def to_dict(self) -> dict:
        return {
            "p": self.p, "ell": self.ell, "f": self.f, "genus": self.genus,
            "counts": [{"m": m, "N": n, "N_mod_p": r} for m, n, r in self.counts],
            "log_derivative_from_counts": self.series_counts,
            "log_derivative_of_zeta": self.series_zeta,
            "agrees": self.agrees,
        }


def zeta_mod_p_report(p: int, ell: int, f: int = 1, m_max: int = 1,
                      cap: int | None = None) -> CountReport:
    """N_m mod p for m <= m_max against d/dT log (1 - T)^(2g - 2) mod p."""
    _check_inputs(p, ell)
    if (ell ** f - 1) % p:
        raise ValueError(f"q = {ell ** f} is not 1 mod {p}")
    g = genus(p)
    rep = CountReport(p, ell, f, g)
    for m in range(1, m_max + 1):
        n = count_points(p, ell, f, m, cap)
        rep.counts.append((m, n, n % p))
        rep.series_counts.append(n % p)
        # d/dT log (1 - T)^e = -e sum_m T^(m-1)
        rep.series_zeta.append((-(2 * g - 2)) % p)
    return rep
