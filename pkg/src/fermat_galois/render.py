"""Text rendering and parsing of group-ring elements in x = eps0 - 1, y = eps1 - 1.

Two display styles:

* ``factored`` (default): ascending total degree, symmetric pairs folded as
  ``c x^m y^m (x^k + y^k)``, e.g. ``1 + xy + 2xy(x+y)``.
* ``expanded``: one term per monomial, descending in the x exponent then the y
  exponent, e.g. ``4x^4y^4 + x^4y^3 + ...``.

One-variable elements render in ``y`` (or ``e`` for the group basis).
Coefficients in an Artin-Schreier ring render as polynomials in ``F``.
"""

from __future__ import annotations

import re

import numpy as np

from .group_ring import EPS, GroupRingElt
from .modular import ScalarRing

STYLES = ("factored", "expanded")


def _power(name: str, e: int) -> str:
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{e}"


def _scalar_text(coeff: np.ndarray, modulus: int) -> str:
    """Scalar (trailing axis k) as an integer or a polynomial in F."""
    vals = [int(v) % modulus for v in np.atleast_1d(coeff)]
    parts = []
    for d in range(len(vals) - 1, -1, -1):
        v = vals[d]
        if v == 0:
            continue
        mono = _power("F", d)
        if mono and v == 1:
            parts.append(mono)
        else:
            parts.append(f"{v}{mono}")
    return " + ".join(parts) if parts else "0"


def _with_coeff(coeff: np.ndarray, modulus: int, body: str) -> str:
    text = _scalar_text(coeff, modulus)
    if not body:
        return text
    if text == "1":
        return body
    if "+" in text:
        text = f"({text})"
    return f"{text}{body}"


def _monomial(i: int, j: int, names: tuple[str, str]) -> str:
    return _power(names[0], i) + _power(names[1], j)


def render(u: GroupRingElt, style: str = "factored", names: tuple[str, str] = ("x", "y")) -> str:
    """Render ``u`` as text; ``"0"`` for the zero element."""
    if style not in STYLES:
        raise ValueError(f"unknown style {style!r}; expected one of {STYLES}")
    if u.nvars == 1:
        return render_one_var(u, "e" if u.basis == EPS else names[1])
    g = u.to_y().coeffs
    p, n = u.p, u.modulus
    nz = {(i, j) for i in range(p) for j in range(p) if g[i, j].any()}
    if not nz:
        return "0"
    if style == "expanded":
        order = sorted(nz, key=lambda ij: (-ij[0], -ij[1]))
        return _join([_with_coeff(g[i, j], n, _monomial(i, j, names)) for i, j in order])

    terms: list[tuple[tuple, str]] = []
    done = set()
    for i, j in sorted(nz, key=lambda ij: (ij[0] + ij[1], -max(ij), -ij[0])):
        if (i, j) in done:
            continue
        done.add((i, j))
        m, k = min(i, j), abs(i - j)
        if k and (j, i) in nz and np.array_equal(g[i, j], g[j, i]):
            done.add((j, i))
            body = (_monomial(m, m, names)
                    + f"({_power(names[0], k)}+{_power(names[1], k)})")
        else:
            body = _monomial(i, j, names)
        terms.append(((i + j,), _with_coeff(g[i, j], n, body)))
    return _join([t for _, t in terms])


def render_one_var(u: GroupRingElt, name: str = "y") -> str:
    g = u.coeffs[:, 0]
    parts = [_with_coeff(g[i], u.modulus, _power(name, i)) for i in range(u.p) if g[i].any()]
    return _join(parts) if parts else "0"


def _join(parts: list[str]) -> str:
    out = parts[0]
    for t in parts[1:]:
        out += f" + {t}"
    return out


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|(y_?0|y_?1|x|y)|(\^)|([+\-()*]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse near {text[pos:pos + 10]!r}")
        num, var, caret, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif var is not None:
            out.append(("var", "x" if var in ("x", "y0", "y_0") else "y"))
        elif caret:
            out.append(("op", "^"))
        else:
            out.append(("op", op))
        pos = m.end()
    return out


def parse_xy(text: str, p: int, scalars: ScalarRing | None = None) -> GroupRingElt:
    """Parse a polynomial in x, y (or y0, y1) into Lambda_1 over F_p.

    Accepts sums of products of integers, variables, powers and parenthesised
    groups, e.g. ``"1 + xy + 2xy(x+y)"`` or ``"4x^4y^4 + x^4y^3"``.
    """
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        if pos >= len(toks):
            raise ValueError("unexpected end of polynomial")
        pos += 1
        return toks[pos - 1]

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            s = take()[1]
            t = term()
            acc = acc + t if s == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while True:
            kind, val = peek()
            if kind in ("num", "var") or (kind == "op" and val in ("(", "*")):
                if val == "*":
                    take()
                acc = acc * factor()
            else:
                return acc

    def factor():
        kind, val = take()
        if kind == "num":
            base = GroupRingElt.constant(p, int(val), 2, scalars)
        elif kind == "var":
            base = GroupRingElt.yvar(p, 0 if val == "x" else 1, 2, scalars)
        elif (kind, val) == ("op", "("):
            base = expr()
            if take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
        else:
            raise ValueError(f"unexpected token {val!r}")
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            base = base ** int(val)
        return base

    if not toks:
        raise ValueError("empty polynomial")
    result = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return result
