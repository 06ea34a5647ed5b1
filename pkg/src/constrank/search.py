"""Searching an affine matrix family for a member whose rank differs from r.

Strategies, cheapest first:

* grid: every assignment from {-b..b}, sparsest points first;
* random: small integers, then rationals with large numerators/denominators;
* kernel: pick random Y and solve the *linear* system Y^T M(t) = 0 (or
  M(t) X = 0), which forces a rank drop whenever it is consistent;
* slices: restrict to a random line t0 + s d, take the gcd of all r x r
  minors as a polynomial in s, and count its real roots with a Sturm chain.
  A real root is a real point of rank < r even when it is irrational.

Every point returned is re-checked with exact rank computation.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice, product
from typing import Callable, Iterable, Iterator, Sequence

from .matrix import PMatrix, PolyMinors, rank_exact, rank_int, solve_linear
from .poly import (MPoly, UPoly, format_rational, isolate_root, rational_roots,
                   sturm_real_root_count, upoly_gcd)

SLICE_VAR = "s"


def random_rational(rng: random.Random, bound: int = 10**6) -> Fraction:
    """Numerator uniform in [-bound, bound], denominator uniform in [1, bound]."""
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("CONSTRANK_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn: Callable, items: Sequence) -> list:
    """Order-preserving map, threaded when CONSTRANK_THREADS > 1."""
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class RankBreak:
    """A member of the family whose rank is not r.

    Either ``point`` is set (an exact rational point and its ``rank``), or
    ``line`` and ``interval`` describe a real root of the slice polynomial
    ``gcd_poly`` at which every r x r minor vanishes.
    """

    method: str
    kind: str  # "rise" or "drop"
    point: dict | None = None
    rank: int | None = None
    line: tuple | None = None
    interval: tuple | None = None
    gcd_poly: str | None = None

    def to_json(self) -> dict:
        out: dict = {"method": self.method, "kind": self.kind}
        if self.point is not None:
            out["point"] = {k: format_rational(v) for k, v in self.point.items()}
            out["rank"] = self.rank
        if self.line is not None:
            origin, direction = self.line
            out["line"] = {
                "origin": {k: format_rational(v) for k, v in origin.items()},
                "direction": {k: format_rational(v) for k, v in direction.items()},
            }
            out["interval"] = [format_rational(x) for x in self.interval]
            out["slice_polynomial"] = self.gcd_poly
        return out


class Family:
    """Fast evaluation of an affine PMatrix ``base + sum_k t_k B_k``."""

    def __init__(self, P: PMatrix):
        self.P = P
        self.params = list(P.params)
        self.rows, self.cols = P.shape
        self.affine = P.is_affine
        self.integral = False
        if self.affine:
            base, parts = P.affine_parts()
            self.base = base.to_lists()
            self.dirs = [parts[v].to_lists() for v in self.params]
            self.integral = all(x.denominator == 1 for M in [self.base, *self.dirs] for r in M for x in r)
            if self.integral:
                self.base = [[int(x) for x in r] for r in self.base]
                self.dirs = [[[int(x) for x in r] for r in M] for M in self.dirs]
            self._support = [
                [(i, j, M[i][j]) for i in range(self.rows) for j in range(self.cols) if M[i][j]]
                for M in self.dirs
            ]

    def at(self, values: Sequence) -> list[list]:
        if not self.affine:
            return self.P.evaluate(dict(zip(self.params, values))).to_lists()
        out = [list(r) for r in self.base]
        for v, sup in zip(values, self._support):
            if v:
                for i, j, c in sup:
                    out[i][j] += c * v
        return out

    def rank_at(self, values: Sequence) -> int:
        M = self.at(values)
        if self.integral and all(isinstance(v, int) for v in values):
            return rank_int(M)
        return rank_exact(M)

    def point(self, values: Sequence) -> dict:
        return {k: Fraction(v) for k, v in zip(self.params, values)}


def grid_points(k: int, bound: int = 2) -> Iterator[list[int]]:
    """All points of {-bound..bound}^k, ordered by number of nonzero coordinates."""
    nonzero = [v for b in range(1, bound + 1) for v in (b, -b)]
    for s in range(k + 1):
        for pos in combinations(range(k), s):
            for vals in product(nonzero, repeat=s):
                pt = [0] * k
                for p, v in zip(pos, vals):
                    pt[p] = v
                yield pt


def search_grid(fam: Family, r: int, bound: int = 2, cap: int = 10**5) -> RankBreak | None:
    for pt in islice(grid_points(len(fam.params), bound), cap):
        rk = fam.rank_at(pt)
        if rk != r:
            return RankBreak("grid", "rise" if rk > r else "drop", fam.point(pt), rk)
    return None


def search_random(fam: Family, r: int, rng: random.Random, trials: int = 50) -> RankBreak | None:
    k = len(fam.params)
    for t in range(trials):
        if t < trials // 2:
            pt = [rng.randint(-10, 10) for _ in range(k)]
        else:
            pt = [random_rational(rng) for _ in range(k)]
        rk = fam.rank_at(pt)
        if rk != r:
            return RankBreak("random", "rise" if rk > r else "drop", fam.point(pt), rk)
    return None


def search_kernel(fam: Family, r: int, rng: random.Random, trials: int = 20) -> RankBreak | None:
    """Force rank < r by making m - r + 1 random row combinations (or columns) vanish."""
    if not fam.affine or r < 1 or not fam.params:
        return None
    m, n = fam.rows, fam.cols
    for t in range(trials):
        left = t % 2 == 0
        width = (m if left else n) - r + 1
        height = m if left else n
        Y = [[rng.randint(-3, 3) for _ in range(width)] for _ in range(height)]
        if left:
            def entry(M, a, idx):
                return M[a][idx]
        else:
            def entry(M, a, idx):
                return M[idx][a]
        A, b = [], []
        for c in range(width):
            for idx in range(n if left else m):
                A.append([sum(Y[a][c] * entry(D, a, idx) for a in range(height)) for D in fam.dirs])
                b.append(-sum(Y[a][c] * entry(fam.base, a, idx) for a in range(height)))
        sol = solve_linear(A, b)
        if sol is None:
            continue
        rk = fam.rank_at(sol)
        if rk != r:
            return RankBreak("kernel", "rise" if rk > r else "drop", fam.point(sol), rk)
    return None


def slice_matrix(fam: Family, origin: Sequence, direction: Sequence) -> PMatrix:
    s = MPoly.var(SLICE_VAR)
    M0 = fam.at(origin)
    rows = []
    for i in range(fam.rows):
        row = []
        for j in range(fam.cols):
            slope = sum((d * fam.dirs[k][i][j] for k, d in enumerate(direction) if d), 0)
            row.append(MPoly.const(M0[i][j]) + s * slope)
        rows.append(row)
    return PMatrix.from_rows(rows, [SLICE_VAR])


def minors_gcd(P: PMatrix, r: int, cap: int = 2000) -> UPoly | None:
    """gcd of the r x r minors of a matrix in one variable; None if the cap is hit first."""
    pm = PolyMinors(P)
    g = UPoly()
    count = 0
    for R in combinations(range(P.rows), r):
        for C in combinations(range(P.cols), r):
            d = pm.det(R, C)
            if d.is_zero():
                continue
            g = upoly_gcd(g, d.to_upoly(SLICE_VAR)) if not g.is_zero() else d.to_upoly(SLICE_VAR).monic()
            if g.degree() == 0:
                return g
            count += 1
            if count >= cap:
                return None
    return g


def search_slices(fam: Family, r: int, rng: random.Random, trials: int = 20) -> RankBreak | None:
    if not fam.affine or r < 1 or not fam.params:
        return None
    k = len(fam.params)
    for _ in range(trials):
        origin = [rng.randint(-3, 3) for _ in range(k)]
        direction = [rng.randint(-3, 3) for _ in range(k)]
        if not any(direction):
            continue
        g = minors_gcd(slice_matrix(fam, origin, direction), r)
        if g is None or g.is_zero() or g.degree() < 1:
            continue
        if sturm_real_root_count(g) == 0:
            continue
        roots = rational_roots(g)
        if roots:
            s0 = roots[0]
            pt = [o + s0 * d for o, d in zip(origin, direction)]
            rk = fam.rank_at(pt)
            assert rk < r
            return RankBreak("slice", "drop", fam.point(pt), rk)
        interval = isolate_root(g)
        return RankBreak("slice", "drop", None, None,
                         (fam.point(origin), fam.point(direction)), interval, str(g.to_mpoly(SLICE_VAR)))
    return None


def find_rank_break(fam: Family, r: int, rng: random.Random, *, grid_bound: int = 2,
                    grid_cap: int = 10**5, random_trials: int = 50, kernel_trials: int = 20,
                    slice_trials: int = 20) -> RankBreak | None:
    for step in (
        lambda: search_grid(fam, r, grid_bound, grid_cap),
        lambda: search_random(fam, r, rng, random_trials),
        lambda: search_kernel(fam, r, rng, kernel_trials),
        lambda: search_slices(fam, r, rng, slice_trials),
    ):
        hit = step()
        if hit is not None:
            return hit
    return None


def nonvanishing_point(p: MPoly, params: Iterable[str], rng: random.Random, bound: int = 2) -> dict:
    """A small-integer point where the nonzero polynomial ``p`` does not vanish."""
    names = list(params)
    for pt in islice(grid_points(len(names), bound), 10**5):
        point = dict(zip(names, map(Fraction, pt)))
        if p.eval(point):
            return point
    while True:
        point = {v: random_rational(rng) for v in names}
        if p.eval(point):
            return point


def check_point(P: PMatrix, point: dict) -> int:
    """Exact rank of ``P`` at ``point``."""
    return rank_exact(P.evaluate(point))
