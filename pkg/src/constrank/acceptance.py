"""The acceptance criteria as runnable checks.

Each ``criterion_N`` returns a :class:`Outcome`; ``passed`` includes the
runtime limit.  Used by the test suite and by ``constrank selftest``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .aci import acify, hz_family_dim, remark_matrix
from .certifier import (certify_constant_rank, certify_constant_signature, falsify_random_overdim,
                        intersection_check, maximality_probe)
from .formulas import a_rect, a_rect_alt, a_sig, a_sym
from .lemmas import lemma1_symbolic, lemma2_root_exists, lemma3_bordered_det
from .matrix import QMatrix, det_exact
from .search import random_rational
from .subspace import (ambient_dim, construct_rect_witness, construct_signature_witness,
                       construct_sym_witness, pattern_space)

SEED = 20240101


@dataclass(frozen=True)
class Outcome:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    limit: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number} ({self.title}): {self.detail} [{self.seconds:.2f}s / {self.limit:g}s]"


def _timed(number: int, title: str, limit: float, body: Callable[[], tuple[bool, str]]) -> Outcome:
    start = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - start
    if elapsed > limit:
        detail += f"; over the {limit:g}s limit"
    return Outcome(number, title, ok and elapsed <= limit, detail, elapsed, limit)


def _sym_cases(max_n: int):
    return [(n, r) for n in range(1, max_n + 1) for r in range(1, n + 1)]


def _rect_cases(max_n: int):
    return [(m, n, r) for n in range(1, max_n + 1) for m in range(1, n + 1) for r in range(1, m + 1)]


def criterion_1() -> Outcome:
    def body():
        bad = []
        for n, r in _sym_cases(8):
            if construct_sym_witness(n, r).dim != r * (n - r) + r * r // 4:
                bad.append(("sym", n, r))
        for m, n, r in _rect_cases(8):
            want = r * n - r * (r + 1) // 2
            if construct_rect_witness(m, n, r).dim != want or a_rect_alt(m, n, r) != want:
                bad.append(("rect", m, n, r))
        total = len(_sym_cases(8)) + len(_rect_cases(8))
        return not bad, f"{total - len(bad)}/{total} cases match" + (f", mismatches {bad[:5]}" if bad else "")
    return _timed(1, "formula agreement", 1, body)


def criterion_2() -> Outcome:
    def body():
        failures = []
        sym = _sym_cases(6)
        rect = _rect_cases(6)
        for n, r in sym:
            c = certify_constant_rank(construct_sym_witness(n, r), r, "symbolic", seed=SEED)
            if not c.certified or c.lower.get("kind") != "structural":
                failures.append(f"sym({n},{r}) {c.verdict}")
        for m, n, r in rect:
            c = certify_constant_rank(construct_rect_witness(m, n, r), r, "symbolic", seed=SEED)
            if not c.certified or c.lower.get("kind") == "sampled":
                failures.append(f"rect({m},{n},{r}) {c.verdict}")
        total = len(sym) + len(rect)
        detail = f"{total - len(failures)}/{total} witnesses certified"
        if failures:
            detail += "; not certified: " + ", ".join(failures)
        return not failures, detail
    return _timed(2, "constant-rank certification", 60, body)


def _random_symmetric(rng: random.Random, n: int, zero_rate: float = 0.3) -> QMatrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            if rng.random() > zero_rate:
                rows[i][j] = rows[j][i] = random_rational(rng)
    return QMatrix.from_rows(rows)


def criterion_3() -> Outcome:
    def body():
        for m in range(1, 4):
            for n in range(1, 4):
                lemma1_symbolic(m, n)
        rng = random.Random(SEED)
        lemma2_bad = 0
        mats = [_random_symmetric(rng, rng.randint(1, 5)) for _ in range(500)] + [QMatrix.zeros(3, 3)]
        for A in mats:
            if lemma2_root_exists(A).exists != (not A.is_zero()):
                lemma2_bad += 1
        lemma3_zero = 0
        done = 0
        while done < 500:
            n = rng.randint(1, 5)
            A = _random_symmetric(rng, n, zero_rate=0.0)
            if det_exact(A) == 0:
                continue
            x = [random_rational(rng) for _ in range(n)]
            if not any(x):
                continue
            done += 1
            if lemma3_bordered_det(A, x) == 0:
                lemma3_zero += 1
        ok = lemma2_bad == 0 and lemma3_zero == 0
        return ok, (f"lemma1 identities hold for all T up to 3x3; lemma2 mismatches {lemma2_bad}/{len(mats)}; "
                    f"lemma3 zero determinants {lemma3_zero}/500")
    return _timed(3, "lemma suite", 30, body)


def criterion_4() -> Outcome:
    def body():
        bad = []
        count = 0
        for n, r in _sym_cases(6):
            S = construct_sym_witness(n, r)
            p = (r + 1) // 2
            P = [pattern_space("sym-Z", n, n, p=p), pattern_space("sym-U", n, n, p=p, r=r),
                 pattern_space("sym-W", n, n, r=r)]
            dim_p = sum(x.dim for x in P)
            count += 1
            if intersection_check(S, P) != 0 or S.dim + dim_p > ambient_dim(n, n, True):
                bad.append(("sym", n, r))
        for m, n, r in _rect_cases(6):
            S = construct_rect_witness(m, n, r)
            P = [pattern_space("rect-Z", m, n, r=r), pattern_space("rect-T", m, n, r=r)]
            dim_p = sum(x.dim for x in P)
            count += 1
            if intersection_check(S, P) != 0 or S.dim + dim_p > ambient_dim(m, n, False):
                bad.append(("rect", m, n, r))
        return not bad, f"{count - len(bad)}/{count} intersections are zero" + (f"; failures {bad}" if bad else "")
    return _timed(4, "intersection arguments", 10, body)


def criterion_5() -> Outcome:
    def body():
        missing = []
        vacuous = []
        directions = 0
        for n, r in _sym_cases(4):
            S = construct_sym_witness(n, r)
            if r < n:
                # the witness itself is not constant rank here, so any extension breaks trivially
                vacuous.append(f"sym({n},{r})")
            for res in maximality_probe(S, r, seed=SEED):
                directions += 1
                if not res.found:
                    missing.append(("sym", n, r, res.direction))
        for m, n, r in _rect_cases(4):
            for res in maximality_probe(construct_rect_witness(m, n, r), r, seed=SEED):
                directions += 1
                if not res.found:
                    missing.append(("rect", m, n, r, res.direction))
        detail = f"rank break found for {directions - len(missing)}/{directions} directions"
        if missing:
            detail += f"; none for {missing[:5]}"
        if vacuous:
            detail += f"; vacuous for {len(vacuous)} symmetric witnesses with r < n that already break rank"
        return not missing, detail
    return _timed(5, "maximality", 60, body)


def criterion_6() -> Outcome:
    def body():
        M = remark_matrix()
        c = certify_constant_rank(M, 2, "symbolic", seed=SEED)
        first = c.certified and c.lower["kind"] == "structural" and c.lower["determinant"] == "-1 - t^2"
        c2 = certify_constant_rank(acify(M), 2, "symbolic", seed=SEED)
        pt = c2.counterexample.get("point") if c2.counterexample else None
        second = c2.verdict == "refuted" and pt is not None and \
            Fraction(pt["t#1"]) * Fraction(pt["t#2"]) == -1
        return first and second, (f"original {c.verdict} ({c.lower and c.lower.get('determinant')}); "
                                  f"acified {c2.verdict} at {pt}")
    return _timed(6, "ACI counterexample", 1, body)


def criterion_7() -> Outcome:
    def body():
        cases = 0
        bad = []
        for n in range(0, 11):
            for m in range(0, n + 1):
                for r in range(0, m + 1):
                    values = [hz_family_dim(m, n, r, k) for k in range(r + 1)]
                    cases += len(values)
                    if max(values) != values[r] or values[r] != a_rect(m, n, r):
                        bad.append((m, n, r))
        return not bad, f"both forms agree on {cases} cases; max at k=r equals a_rect" + (f"; failures {bad[:5]}" if bad else "")
    return _timed(7, "block family dimension", 1, body)


def criterion_8() -> Outcome:
    def body():
        cases = [(2, 2, 1, True), (3, 3, 2, True), (2, 2, 2, True), (2, 2, 1, False), (2, 3, 2, False)]
        parts = []
        ok = True
        for m, n, r, sym in cases:
            dim = (a_sym(n, r) if sym else a_rect(m, n, r)) + 1
            rep = falsify_random_overdim(m, n, r, sym, dim, seed=SEED, trials=100)
            ok &= rep.falsified == 100
            parts.append(f"{'sym' if sym else 'rect'}({m},{n},{r}) dim {dim}: {rep.falsified}/100")
        return ok, "; ".join(parts)
    return _timed(8, "random over-dimensional subspaces", 120, body)


def criterion_9() -> Outcome:
    def body():
        failures = []
        cases = 0
        for n in range(1, 6):
            for p in range(n + 1):
                for nu in range(n - p + 1):
                    cases += 1
                    S = construct_signature_witness(n, p, nu)
                    if S.dim != a_sig(n, p, nu):
                        failures.append(f"dim({n};{p},{nu})")
                        continue
                    rep = certify_constant_signature(S, p, nu, trials=200, seed=SEED)
                    if not rep.certified:
                        failures.append(f"({n};{p},{nu}) {rep.verdict}")
        detail = f"{cases - len(failures)}/{cases} signature witnesses certified"
        if failures:
            detail += "; not certified: " + ", ".join(failures)
        return not failures, detail
    return _timed(9, "signature", 30, body)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def run_all(echo: Callable[[str], None] | None = None) -> list[Outcome]:
    out = []
    for fn in CRITERIA:
        res = fn()
        if echo:
            echo(res.line())
        out.append(res)
    return out
