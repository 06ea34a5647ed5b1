"""Closed-form maximal dimensions of constant-rank affine subspaces."""

from __future__ import annotations

from fractions import Fraction

from .errors import BadParams


def _require(cond: bool, msg: str):
    if not cond:
        raise BadParams(msg)


def a_sym(n: int, r: int) -> int:
    """Max dimension of a constant-rank-r affine subspace of n x n real symmetric matrices."""
    _require(0 <= r <= n, f"need 0 <= r <= n, got r={r}, n={n}")
    return r * (n - r) + (r * r) // 4


def a_rect(m: int, n: int, r: int) -> int:
    """Max dimension of a constant-rank-r affine subspace of m x n real matrices."""
    _require(0 <= r <= m <= n, f"need 0 <= r <= m <= n, got m={m}, n={n}, r={r}")
    return r * n - r * (r + 1) // 2


def a_rect_alt(m: int, n: int, r: int) -> int:
    """The same value written as r(n - r) + r(r - 1)/2."""
    _require(0 <= r <= m <= n, f"need 0 <= r <= m <= n, got m={m}, n={n}, r={r}")
    return r * (n - r) + r * (r - 1) // 2


def a_sig(n: int, p: int, nu: int) -> int:
    """Max dimension for constant signature (p, nu) in n x n symmetric matrices."""
    _require(p >= 0 and nu >= 0 and p + nu <= n, f"need p, nu >= 0 and p + nu <= n, got {p}, {nu}, {n}")
    return p * nu + (p + nu) * (n - p - nu)


def _hz_check(m, n, r, k):
    _require(0 <= k <= r <= m <= n, f"need 0 <= k <= r <= m <= n, got m={m}, n={n}, r={r}, k={k}")


def hz_dim_long(m: int, n: int, r: int, k: int) -> int:
    """Block count k(k-1)/2 + (r-k)(r-k-1)/2 + k(n-k) + (r-k)(m-k-r+k), term by term."""
    _hz_check(m, n, r, k)
    val = (Fraction(k * (k - 1), 2) + Fraction((r - k) * (r - k - 1), 2)
           + k * (n - k) + (r - k) * (m - k - r + k))
    assert val.denominator == 1
    return int(val)


def hz_dim(m: int, n: int, r: int, k: int) -> int:
    """Simplified form -r^2/2 - r/2 + k(n - m) + rm."""
    _hz_check(m, n, r, k)
    val = -Fraction(r * r, 2) - Fraction(r, 2) + k * (n - m) + r * m
    assert val.denominator == 1
    return int(val)


FORMULAS = {
    "a_sym": (a_sym, ("n", "r")),
    "a_rect": (a_rect, ("m", "n", "r")),
    "a_sig": (a_sig, ("n", "p", "nu")),
    "hz_dim": (hz_dim, ("m", "n", "r", "k")),
}


def formula(kind: str, **params: int) -> int:
    """Dispatch by name: ``formula("a_sym", n=4, r=3) == 5``."""
    key = kind.replace("-", "_")
    if key not in FORMULAS:
        raise BadParams(f"unknown formula {kind!r}; choose from {sorted(FORMULAS)}")
    fn, names = FORMULAS[key]
    missing = [x for x in names if params.get(x) is None]
    if missing:
        raise BadParams(f"{kind} needs parameters {', '.join(missing)}")
    return fn(*(params[x] for x in names))
