"""Low-degree cochains of Q = (Z/p)^(r+1) with coefficients in M, via the tensor resolution.

The complex is ``M --D0--> M^(r+1) --D1--> M^rho`` with rho = (p+1)(p+3)/8.
Degree-2 summands are ordered as u_0, ..., u_r followed by t_{j,k} for
j < k in lexicographic order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cache
from itertools import combinations

import numpy as np

from .galois import CVector, b_unit
from .invariants import action_matrix, generator_matrices
from .modular import kernel_basis, matmul, prime_context, rank, solve


def rho(p: int) -> int:
    r = prime_context(p).r
    return (r + 1) + (r + 1) * r // 2


def pair_index(p: int) -> list[tuple[int, int]]:
    r = prime_context(p).r
    return list(combinations(range(r + 1), 2))


@dataclass(frozen=True, eq=False)
class TensorComplex:
    p: int
    D0: np.ndarray
    D1: np.ndarray
    norms: tuple[np.ndarray, ...]

    @property
    def r(self) -> int:
        return prime_context(self.p).r

    @property
    def rho(self) -> int:
        return rho(self.p)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return pair_index(self.p)

    def block(self, vec: np.ndarray, index: int) -> np.ndarray:
        n = self.p * self.p
        return vec[index * n:(index + 1) * n]


def _norm_matrix(a: np.ndarray, p: int) -> np.ndarray:
    total = np.eye(a.shape[0], dtype=np.int64)
    power = total
    for _ in range(1, p):
        power = matmul(power, a, p)
        total = (total + power) % p
    return total


@cache
def build_complex(p: int) -> TensorComplex:
    """Assemble D0 and D1 from the generator actions and check D1 D0 = 0."""
    mats = generator_matrices(p)
    r = len(mats) - 1
    n = p * p
    eye = np.eye(n, dtype=np.int64)
    one_minus = [(eye - a) % p for a in mats]
    d0 = np.vstack(one_minus)
    norms = tuple(_norm_matrix(a, p) for a in mats)
    d1 = np.zeros((rho(p) * n, (r + 1) * n), np.int64)
    for j in range(r + 1):
        d1[j * n:(j + 1) * n, j * n:(j + 1) * n] = norms[j]
    for row, (j, k) in enumerate(pair_index(p), start=r + 1):
        # t_{j,k}: (1 - tau_k) m_j - (1 - tau_j) m_k
        d1[row * n:(row + 1) * n, j * n:(j + 1) * n] = one_minus[k]
        d1[row * n:(row + 1) * n, k * n:(k + 1) * n] = (-one_minus[j]) % p
    if matmul(d1, d0, p).any():
        raise AssertionError("D1 D0 != 0: the cochain complex is inconsistent")
    for m in (d0, d1, *norms):
        m.setflags(write=False)
    return TensorComplex(p, d0, d1, norms)


def h1_dimension(p: int) -> int:
    """dim H^1(Q, M) = dim ker D1 - rank D0."""
    cx = build_complex(p)
    return cx.D1.shape[1] - rank(cx.D1, p) - rank(cx.D0, p)


def h1_table(primes=(3, 5, 7)) -> dict[int, int]:
    return {p: h1_dimension(p) for p in primes}


# ---------------------------------------------------------------------------
# the transgression kernel


@dataclass(frozen=True, eq=False)
class D2Instance:
    """Values u_j = phi(a_j) (shape (r+1, p^2)) and w_{j,k} = phi(c_{j,k}) (shape (pairs, p^2))."""

    p: int
    u: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        p = self.p
        r = prime_context(p).r
        n = p * p
        u = np.asarray(self.u, dtype=np.int64).reshape(-1, n) % p if np.size(self.u) else \
            np.zeros((0, n), np.int64)
        w = np.asarray(self.w, dtype=np.int64).reshape(-1, n) % p if np.size(self.w) else \
            np.zeros((0, n), np.int64)
        if u.shape[0] != r + 1 or w.shape[0] != len(pair_index(p)):
            raise ValueError(f"instance for p={p} needs {r + 1} u-vectors and "
                             f"{len(pair_index(p))} w-vectors of length {n}")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "w", w)

    @classmethod
    def zero(cls, p: int) -> D2Instance:
        r = prime_context(p).r
        n = p * p
        return cls(p, np.zeros((r + 1, n), np.int64), np.zeros((len(pair_index(p)), n), np.int64))

    @classmethod
    def from_certificate(cls, p: int, m: np.ndarray) -> D2Instance:
        """The instance u_j = -N_j m_j, w_{j,k} = (1 - tau_k) m_j - (1 - tau_j) m_k."""
        cx = build_complex(p)
        image = matmul(cx.D1, np.asarray(m).reshape(-1, 1), p).reshape(-1)
        n = p * p
        r = cx.r
        u = (-image[:(r + 1) * n]) % p
        w = image[(r + 1) * n:]
        return cls(p, u, w)

    def target(self) -> np.ndarray:
        """(-u_0, ..., -u_r, w_{0,1}, ...) as one vector of M^rho."""
        return np.concatenate([(-self.u).reshape(-1) % self.p, self.w.reshape(-1)])

    def to_dict(self) -> dict:
        return {"p": self.p, "u": self.u.tolist(), "w": self.w.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> D2Instance:
        for key in ("p", "u", "w"):
            if key not in data:
                raise ValueError(f"instance is missing the field {key!r}")
        return cls(int(data["p"]), np.asarray(data["u"]), np.asarray(data["w"]))

    @classmethod
    def from_json(cls, text: str) -> D2Instance:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True, eq=False)
class D2Verdict:
    in_kernel: bool
    certificate: np.ndarray | None = None
    method: str = "full"
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {"in_kernel": self.in_kernel, "method": self.method}
        if self.certificate is not None:
            out["certificate"] = self.certificate.tolist()
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def verify_certificate(inst: D2Instance, m: np.ndarray) -> bool:
    """Check phi(a_j) = -N_j m_j and phi(c_{j,k}) = (1 - tau_k) m_j - (1 - tau_j) m_k."""
    cx = build_complex(inst.p)
    p = inst.p
    m = np.asarray(m, dtype=np.int64).reshape(cx.r + 1, p * p)
    mats = generator_matrices(p)
    eye = np.eye(p * p, dtype=np.int64)
    for j in range(cx.r + 1):
        if not np.array_equal((-matmul(cx.norms[j], m[j][:, None], p).ravel()) % p, inst.u[j]):
            return False
    for idx, (j, k) in enumerate(cx.pairs):
        lhs = matmul(eye - mats[k], m[j][:, None], p) - matmul(eye - mats[j], m[k][:, None], p)
        if not np.array_equal(lhs.ravel() % p, inst.w[idx]):
            return False
    return True


def d2_kernel_test(inst: D2Instance) -> D2Verdict:
    """Decide whether the instance lies in the kernel of d2 by solving D1 m = target."""
    cx = build_complex(inst.p)
    m = solve(cx.D1, inst.target(), inst.p)
    if m is None:
        return D2Verdict(False, None, "full")
    m = m.reshape(cx.r + 1, inst.p * inst.p)
    if not verify_certificate(inst, m):
        raise AssertionError("solver returned an invalid certificate")
    return D2Verdict(True, m, "full")


def d2_kernel_test_vanishing_norm(inst: D2Instance) -> D2Verdict:
    """Same decision when every N_q vanishes (p >= 5): reject any u_j != 0, then solve the t-blocks."""
    p = inst.p
    if p < 5:
        raise ValueError("the vanishing-norm shortcut needs p >= 5")
    if inst.u.any():
        return D2Verdict(False, None, "vanishing-norm", ["nonzero phi(a_j)"])
    cx = build_complex(p)
    n = p * p
    rows = cx.D1[(cx.r + 1) * n:]
    m = solve(rows, inst.w.reshape(-1), p)
    if m is None:
        return D2Verdict(False, None, "vanishing-norm")
    m = m.reshape(cx.r + 1, n)
    if not verify_certificate(inst, m):
        raise AssertionError("solver returned an invalid certificate")
    return D2Verdict(True, m, "vanishing-norm")


# ---------------------------------------------------------------------------
# bar-resolution cochains


def _lookup(table, key: tuple, what: str) -> np.ndarray:
    try:
        if callable(table):
            val = table(*key)
        else:
            val = table[key[0] if len(key) == 1 else key]
    except KeyError as exc:
        raise ValueError(f"bar cochain table is missing the entry {what}") from exc
    return np.asarray(val, dtype=np.int64)


def translate_bar_1cocycle(table, p: int) -> np.ndarray:
    """Bar 1-cochain phi: Q -> M to (m_0, ..., m_r) with m_j = -phi(tau_j).

    ``table`` is a mapping keyed by CVector (as built by :func:`crossed_homomorphism`)
    or a callable of one CVector.
    """
    r = prime_context(p).r
    out = [(-_lookup(table, (CVector.tau(p, j),), f"tau_{j}")) % p for j in range(r + 1)]
    return np.stack(out)


def translate_bar_2cocycle(table, p: int) -> np.ndarray:
    """Bar 2-cochain phi: Q x Q -> M to the tuple (n_j, n_{j,k}).

    n_j = -sum_i phi(tau_j^i, tau_j) and n_{j,k} = phi(tau_k, tau_j) - phi(tau_j, tau_k).
    """
    r = prime_context(p).r
    out = []
    for j in range(r + 1):
        t = CVector.tau(p, j)
        acc = np.zeros(p * p, np.int64)
        for i in range(p):
            acc += _lookup(table, (t.scale(i), t), f"(tau_{j}^{i}, tau_{j})")
        out.append((-acc) % p)
    for j, k in pair_index(p):
        tj, tk = CVector.tau(p, j), CVector.tau(p, k)
        out.append((_lookup(table, (tk, tj), f"(tau_{k}, tau_{j})")
                    - _lookup(table, (tj, tk), f"(tau_{j}, tau_{k})")) % p)
    return np.stack(out)


@cache
def _element_matrix(q: CVector) -> np.ndarray:
    m = action_matrix(b_unit(q))
    m.setflags(write=False)
    return m


def act(q: CVector, v) -> np.ndarray:
    """q . v for v in M."""
    return matmul(_element_matrix(q), np.asarray(v).reshape(-1, 1), q.p).reshape(-1)


def bar_coboundary_1(m, p: int):
    """phi(g) = (g - 1) m as a callable."""
    m = np.asarray(m, dtype=np.int64) % p
    return lambda g: (act(g, m) - m) % p


def bar_coboundary_2(psi, p: int):
    """(d psi)(g, h) = g psi(h) - psi(gh) + psi(g) for a 1-cochain ``psi``."""
    return lambda g, h: (act(g, psi(h)) - psi(g + h) + psi(g)) % p


def crossed_homomorphism(values, p: int) -> dict:
    """Extend phi(tau_j) = values[j] to all of Q through phi(gh) = phi(g) + g phi(h).

    Elements are written as ordered products tau_0^c0 ... tau_r^cr; the result
    is a 1-cocycle exactly when the values satisfy the relations of Q.
    """
    r = prime_context(p).r
    values = [np.asarray(v, dtype=np.int64) % p for v in values]
    table = {CVector.zero(p): np.zeros(p * p, np.int64)}
    # powers of each generator
    powers = []
    for j in range(r + 1):
        t = CVector.tau(p, j)
        pw = {0: np.zeros(p * p, np.int64)}
        for e in range(1, p):
            pw[e] = (pw[e - 1] + act(t.scale(e - 1), values[j])) % p
        powers.append(pw)
    for q in CVector.all(p):
        acc = np.zeros(p * p, np.int64)
        prefix = CVector.zero(p)
        for j, e in enumerate(q.c):
            acc = (acc + act(prefix, powers[j][e])) % p
            prefix = prefix + CVector.tau(p, j).scale(e)
        table[q] = acc
    return table


def is_bar_1cocycle(table: dict, p: int) -> bool:
    """Pointwise check of phi(gh) = phi(g) + g phi(h) over all pairs."""
    for g, vg in table.items():
        for h, vh in table.items():
            if not np.array_equal(table[g + h], (vg + act(g, vh)) % p):
                return False
    return True


def cocycle_space(p: int) -> np.ndarray:
    """Basis (rows) of ker D1 in M^(r+1)."""
    return kernel_basis(build_complex(p).D1, p)
