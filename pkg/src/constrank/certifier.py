"""Constant-rank and constant-signature certification, intersection checks,
and searches that try to break constant rank.

A certificate has two halves.  The upper half says every (r+1) x (r+1)
minor vanishes identically; the lower half says some r x r minor never
vanishes on the reals.  The lower half is proved structurally for two
shapes: a block whose determinant is a nonzero constant, and the block
``[[I, X], [X^t, -I]]`` whose determinant is ``+-(1 + sum of squared minors
of X)``.  Anything else falls back to search, labelled as sampled evidence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, islice
from typing import Sequence

from .errors import BadParams, BadRank, NotSymmetric, ShapeMismatch
from .formulas import a_rect, a_sym
from .lemmas import sum_squared_minors
from .matrix import PMatrix, PolyMinors, QMatrix, rank_exact, signature
from .poly import MPoly, format_rational
from .search import (Family, RankBreak, find_rank_break, nonvanishing_point, parallel_map,
                     random_rational)
from .subspace import (AffineSubspace, PatternSpace, construct_rect_witness,
                       construct_sym_witness, to_parametric, unit_directions)

MODES = ("symbolic", "randomized", "structural")
UNIT_DET_SCAN = 2000


@dataclass
class RankCertificate:
    claimed_rank: int
    mode: str
    shape: tuple[int, int]
    params: list[str]
    verdict: str  # certified | refuted | inconclusive
    upper: dict | None = None
    lower: dict | None = None
    counterexample: dict | None = None
    seed: int | None = None

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    def to_json(self) -> dict:
        return {
            "claimed_rank": self.claimed_rank,
            "mode": self.mode,
            "shape": list(self.shape),
            "params": list(self.params),
            "verdict": self.verdict,
            "upper": self.upper,
            "lower": self.lower,
            "counterexample": self.counterexample,
            "seed": self.seed,
        }


def _as_pmatrix(S: AffineSubspace | PMatrix) -> PMatrix:
    return S.to_parametric() if isinstance(S, AffineSubspace) else S


def _refutation(P: PMatrix, brk: RankBreak) -> dict:
    out = brk.to_json()
    if brk.point is not None:
        # self-check: the reported point really has the reported rank
        assert rank_exact(P.evaluate(brk.point)) == brk.rank
    return out


# --------------------------------------------------------------------------
# lower half


def _cauchy_binet_block(P: PMatrix, r: int) -> dict | None:
    """Recognize an r x r principal block [[I, X], [X^t, -I]] from the constant diagonal."""
    if P.rows != P.cols:
        return None
    diag = [P[i, i] for i in range(P.rows)]
    pos = [i for i, d in enumerate(diag) if d == 1]
    neg = [i for i, d in enumerate(diag) if d == -1]
    if len(pos) + len(neg) != r:
        return None
    for group in (pos, neg):
        for a in group:
            for b in group:
                if a != b and not P[a, b].is_zero():
                    return None
    for a in pos:
        for b in neg:
            if P[a, b] != P[b, a]:
                return None
    X = P.submatrix(pos, neg)
    idx = pos + neg
    det = PolyMinors(P).det(sorted(idx), sorted(idx))
    squares, count = sum_squared_minors(X)
    if det != squares * (-1) ** len(neg):
        return None
    return {
        "kind": "structural",
        "block": {"rows": [i + 1 for i in sorted(idx)], "positive": [i + 1 for i in pos],
                  "negative": [i + 1 for i in neg]},
        "determinant": str(det),
        "identity": f"det = {'-' if len(neg) % 2 else ''}(1 + sum of {count - 1} squared minors of the coupling block)",
    }


def _unit_det_block(P: PMatrix, r: int, pm: PolyMinors) -> dict | None:
    """An r x r minor that is a nonzero constant polynomial."""
    lead = (tuple(range(r)), tuple(range(r)))
    candidates = [lead] if r <= min(P.shape) else []
    scan = ((R, C) for R in combinations(range(P.rows), r) for C in combinations(range(P.cols), r))
    for R, C in candidates + list(islice(scan, UNIT_DET_SCAN)):
        d = pm.det(R, C)
        if d.is_constant() and not d.is_zero():
            return {"kind": "unit-det", "rows": [i + 1 for i in R], "cols": [j + 1 for j in C],
                    "determinant": format_rational(d.constant_term())}
    return None


def structural_lower(P: PMatrix, r: int, pm: PolyMinors | None = None) -> dict | None:
    if r == 0:
        return {"kind": "trivial"}
    pm = pm or PolyMinors(P)
    return _cauchy_binet_block(P, r) or _unit_det_block(P, r, pm)


# --------------------------------------------------------------------------


def certify_constant_rank(S: AffineSubspace | PMatrix, r: int, mode: str = "symbolic",
                          seed: int | None = 0, trials: int = 100) -> RankCertificate:
    """Decide whether every member of S has rank r.

    ``symbolic`` proves the upper half exactly and the lower half structurally,
    searching for a rank drop when no structure is recognized.  ``structural``
    reports inconclusive instead of trusting that search.  ``randomized``
    evaluates the rank at ``trials`` random rational points.
    """
    if mode not in MODES:
        raise BadParams(f"unknown mode {mode!r}; choose from {MODES}")
    P = _as_pmatrix(S)
    m, n = P.shape
    if not 0 <= r <= min(m, n):
        raise BadRank(f"rank {r} impossible for a {m}x{n} matrix")
    rng = random.Random(seed)
    cert = RankCertificate(r, mode, (m, n), list(P.params), "inconclusive", seed=seed)

    if mode == "randomized":
        fam = Family(P)
        for _ in range(trials):
            pt = [random_rational(rng) for _ in fam.params]
            rk = fam.rank_at(pt)
            if rk != r:
                brk = RankBreak("random", "rise" if rk > r else "drop", fam.point(pt), rk)
                cert.verdict = "refuted"
                cert.counterexample = _refutation(P, brk)
                return cert
        cert.upper = {"kind": "sampled", "points": trials}
        cert.lower = {"kind": "sampled", "points": trials}
        cert.verdict = "certified"
        return cert

    pm = PolyMinors(P)
    checked = 0
    for R in combinations(range(m), r + 1):
        for C in combinations(range(n), r + 1):
            d = pm.det(R, C)
            checked += 1
            if not d.is_zero():
                point = nonvanishing_point(d, d.variables(), rng)
                full = {v: point.get(v, 0) for v in P.params}
                rk = rank_exact(P.evaluate(full))
                cert.verdict = "refuted"
                cert.counterexample = _refutation(P, RankBreak("minor", "rise", full, rk))
                cert.counterexample["minor"] = {"rows": [i + 1 for i in R], "cols": [j + 1 for j in C],
                                                "determinant": str(d)}
                cert.upper = {"kind": "symbolic", "minors_checked": checked, "nonzero_minor_found": True}
                return cert
    cert.upper = {"kind": "symbolic", "minors_checked": checked, "vacuous": checked == 0}

    lower = structural_lower(P, r, pm)
    if lower is not None:
        cert.lower = lower
        cert.verdict = "certified"
        return cert

    brk = find_rank_break(Family(P), r, rng, grid_cap=10**4)
    if brk is not None:
        cert.verdict = "refuted"
        cert.counterexample = _refutation(P, brk)
        return cert
    if mode == "structural":
        cert.verdict = "inconclusive"
        return cert
    cert.lower = {"kind": "sampled", "search": "grid, random, kernel and Sturm-slice search found no rank drop"}
    cert.verdict = "certified"
    return cert


# --------------------------------------------------------------------------


def _basis_of(item) -> list[QMatrix]:
    if isinstance(item, PatternSpace):
        return item.basis()
    if isinstance(item, AffineSubspace):
        return list(item.basis)
    if isinstance(item, QMatrix):
        return [item]
    return [B for x in item for B in _basis_of(x)]


def intersection_check(V, P) -> int:
    """dim(span V  ∩  span P) = dim V + dim P - dim(V + P), all computed exactly."""
    vb = _basis_of(V)
    pb = _basis_of(P)
    shapes = {B.shape for B in vb + pb}
    if len(shapes) > 1:
        raise ShapeMismatch(f"matrices of shapes {sorted(shapes)} cannot be compared")
    dv = rank_exact([B.vec() for B in vb]) if vb else 0
    dp = rank_exact([B.vec() for B in pb]) if pb else 0
    both = rank_exact([B.vec() for B in vb + pb]) if vb or pb else 0
    return dv + dp - both


# --------------------------------------------------------------------------


@dataclass
class ProbeResult:
    direction: object  # 1-based position (i, j) or an index into custom directions
    found: bool
    witness: RankBreak | None = None
    in_span: bool = False

    def to_json(self) -> dict:
        d = list(self.direction) if isinstance(self.direction, tuple) else self.direction
        out = {"direction": d, "found": self.found}
        if self.in_span:
            out["in_span"] = True
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def maximality_probe(S: AffineSubspace, r: int, directions: Sequence[QMatrix] | None = None,
                     grid: int = 2, grid_cap: int = 10**5, seed: int = 0) -> list[ProbeResult]:
    """For each extra direction E, look for a rank != r member of S + span{E}.

    The new coordinate is called ``u``; the others are S's t1..tk.
    """
    if directions is None:
        items = unit_directions(S)
    else:
        items = list(enumerate(directions))
    names = S.param_names() + ["u"]

    def probe(item):
        label, E = item
        if S.contains_direction(E):
            return ProbeResult(label, False, in_span=True)
        fam = Family(to_parametric(S.extend(E), names))
        rng = random.Random(f"{seed}:{label}")
        brk = find_rank_break(fam, r, rng, grid_bound=grid, grid_cap=grid_cap)
        return ProbeResult(label, brk is not None, brk)

    return parallel_map(probe, items)


# --------------------------------------------------------------------------


@dataclass
class FalsifyReport:
    m: int
    n: int
    r: int
    symmetric: bool
    dim: int
    seed: int
    trials: int
    falsified: int
    methods: dict = field(default_factory=dict)
    survivors: list = field(default_factory=list)

    @property
    def fraction(self) -> float:
        return self.falsified / self.trials if self.trials else 0.0

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "r": self.r, "symmetric": self.symmetric, "dim": self.dim,
                "seed": self.seed, "trials": self.trials, "falsified": self.falsified,
                "methods": dict(sorted(self.methods.items())), "survivors": self.survivors}


def _random_invertible(rng: random.Random, n: int) -> QMatrix:
    while True:
        M = QMatrix.from_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        if rank_exact(M) == n:
            return M


def _random_direction(rng: random.Random, m: int, n: int, symmetric: bool) -> QMatrix:
    if symmetric:
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                a[i][j] = a[j][i] = rng.randint(-3, 3)
        return QMatrix.from_rows(a)
    return QMatrix.from_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)])


def random_subspace(rng: random.Random, m: int, n: int, r: int, symmetric: bool, dim: int,
                    from_witness: bool = False) -> AffineSubspace:
    """A random affine subspace whose base has rank r.

    With ``from_witness`` the maximal witness family is moved by a random
    congruence (symmetric) or equivalence and then padded with random
    directions up to ``dim``.
    """
    if symmetric:
        Pm = _random_invertible(rng, n)
        move = lambda M: Pm.transpose() @ M @ Pm  # noqa: E731
        if from_witness:
            W = construct_sym_witness(n, r)
            base, basis = W.base, list(W.basis)
        else:
            p = rng.randint(0, r)
            base = QMatrix.diag([1] * p + [-1] * (r - p) + [0] * (n - r))
            basis = []
    else:
        Pm, Qm = _random_invertible(rng, m), _random_invertible(rng, n)
        move = lambda M: Pm @ M @ Qm  # noqa: E731
        W = construct_rect_witness(m, n, r)
        base = W.base
        basis = list(W.basis) if from_witness else []
    base = move(base)
    basis = [move(B) for B in basis]
    vecs = [B.vec() for B in basis]
    while len(basis) < dim:
        D = _random_direction(rng, m, n, symmetric)
        if rank_exact(vecs + [D.vec()]) == len(vecs) + 1:
            basis.append(D)
            vecs.append(D.vec())
    return AffineSubspace(m, n, symmetric, base, tuple(basis[:dim]))


def falsify_random_overdim(m: int, n: int, r: int, symmetric: bool, dim: int, seed: int,
                           trials: int = 100, from_witness: bool = False) -> FalsifyReport:
    """Count random affine subspaces of dimension ``dim`` where rank r is broken."""
    bound = a_sym(n, r) if symmetric else a_rect(m, n, r)
    if symmetric and m != n:
        raise BadParams("symmetric subspaces need m == n")
    if dim <= bound and not from_witness:
        raise BadParams(f"dim {dim} does not exceed the maximal dimension {bound}")
    if from_witness and dim < bound:
        raise BadParams(f"the witness already has dimension {bound}")

    def trial(i):
        rng = random.Random(f"{seed}:{i}")
        S = random_subspace(rng, m, n, r, symmetric, dim, from_witness)
        return find_rank_break(Family(S.to_parametric()), r, rng, grid_cap=5**min(dim, 6))

    results = parallel_map(trial, list(range(trials)))
    report = FalsifyReport(m, n, r, symmetric, dim, seed, trials, 0)
    for i, brk in enumerate(results):
        if brk is None:
            report.survivors.append(i)
        else:
            report.falsified += 1
            report.methods[brk.method] = report.methods.get(brk.method, 0) + 1
    return report


# --------------------------------------------------------------------------


@dataclass
class SignatureReport:
    p: int
    nu: int
    samples: int
    verdict: str
    counterexample: dict | None = None
    rank_certificate: RankCertificate | None = None
    seed: int | None = None

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    def to_json(self) -> dict:
        return {"p": self.p, "nu": self.nu, "samples": self.samples, "verdict": self.verdict,
                "counterexample": self.counterexample, "seed": self.seed,
                "rank_certificate": self.rank_certificate.to_json() if self.rank_certificate else None}


def certify_constant_signature(S: AffineSubspace, p: int, nu: int, trials: int = 200,
                               seed: int = 0) -> SignatureReport:
    """Signature (p, nu) at random rational points, plus a rank certificate at r = p + nu."""
    if not S.symmetric:
        raise NotSymmetric("signature needs a symmetric subspace")
    rng = random.Random(seed)
    P = S.to_parametric()
    names = list(P.params)
    report = SignatureReport(p, nu, trials, "inconclusive", seed=seed)
    for _ in range(trials):
        point = {v: random_rational(rng) for v in names}
        sig = signature(P.evaluate(point))
        if (sig.positive, sig.negative) != (p, nu):
            report.verdict = "refuted"
            report.counterexample = {"point": {k: format_rational(v) for k, v in point.items()},
                                     "signature": list(sig.as_tuple())}
            return report
    cert = certify_constant_rank(S, p + nu, "symbolic", seed=seed)
    report.rank_certificate = cert
    report.verdict = cert.verdict
    if cert.verdict == "refuted":
        report.counterexample = cert.counterexample
    return report


def minor_poly(S: AffineSubspace | PMatrix, rows: Sequence[int], cols: Sequence[int]) -> MPoly:
    """1-based minor of the parametric form of S."""
    P = _as_pmatrix(S)
    return PolyMinors(P).det([i - 1 for i in rows], [j - 1 for j in cols])
