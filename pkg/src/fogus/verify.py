"""Self-verification suites, each returning a :class:`SuiteResult`.

They are deterministic given the seed and are what ``fogus verify`` runs.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .exactq import Matrix, Polynomial, Subspace, charpoly
from . import complexes as cx
from . import homext as he
from . import ogus_core as og
from . import samples as sm
from . import weights as wt
from .weights import Verdict

__all__ = ["SuiteResult", "SUITES", "run_suite", "DEFAULT_SEED"]

DEFAULT_SEED = 20240601


@dataclass
class SuiteResult:
    name: str
    passed: bool
    seconds: float = 0.0
    details: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details,
                "failures": [str(f) for f in self.failures]}


def _q_q1():
    return wt.unit_fog(), wt.tate_fog(1)


def example_q_q1(seed: int = DEFAULT_SEED, trials: int = 50) -> SuiteResult:
    """Deltas at 2,3,5,7 are independent; b = 3 and random xi(g) are coboundaries."""
    rng = random.Random(seed)
    Q, Q1 = _q_q1()
    one = Matrix([[1]])
    deltas = [he.delta(Q, Q1, p, one) for p in (2, 3, 5, 7)]
    r = he.ext1_rank(Q, Q1, deltas)
    fails = []
    if r != 4:
        fails.append(f"delta rank {r}, expected 4")
    h = he.is_coboundary(he.xi(Q, Q1, Matrix([[3]])))
    if h != Matrix([[3]]):
        fails.append(f"b = 3 family: solver returned {h}")
    for _ in range(trials):
        g = Matrix([[sm.random_rational(rng, 50, 20)]])
        if he.is_coboundary(he.xi(Q, Q1, g)) is None:
            fails.append(f"xi({g}) not recognised as a coboundary")
    return SuiteResult("example-q-q1", not fails,
                       details={"delta_rank": r, "b3_class_zero": h is not None, "random_g": trials},
                       failures=fails)


def round_trip(seed: int = DEFAULT_SEED, trials: int = 100) -> SuiteResult:
    """extract_class(build_extension(x)) is cohomologous to x."""
    rng = random.Random(seed)
    fails, n_mixed = [], 0
    Q, Q1 = _q_q1()
    for t in range(trials):
        if t % 2 == 0:
            M, N = Q, Q1
        else:
            while True:
                M = sm.random_fog(rng, rng.randint(2, 3), rng.sample([-1, 0, 1], 2))
                N = sm.random_fog(rng, rng.randint(2, 3), rng.sample([-1, 0, 1], 2))
                if len(M.weights.jumps) == 2 and len(N.weights.jumps) == 2 \
                        and he.w0_basis(M, N):
                    break
            n_mixed += 1
        x = sm.random_cocycle(rng, M, N)
        T = he.build_extension(x)
        he.check_extension(T)
        y = he.extract_class(T)
        if he.is_coboundary(y - x) is None:
            fails.append(f"trial {t}: round trip not cohomologous")
    return SuiteResult("roundtrip", not fails, details={"trials": trials, "mixed": n_mixed},
                       failures=fails)


def lemma(seed: int = DEFAULT_SEED, trials: int = 50) -> SuiteResult:
    """kill_cocycle: qis, exact sequence, xi(0,0,id) = (b,0,0), b dies in Coker."""
    rng = random.Random(seed)
    probe = (2, 3)
    fails, nontrivial = [], 0
    for t in range(trials):
        M, N = sm.random_complex(rng), sm.random_complex(rng)
        b = sm.random_b(rng, M, N, probe)
        r = cx.kill_cocycle(M, N, b, probe)
        nontrivial += any(not d.is_zero() for _, d in M.differentials + N.differentials)
        if not cx.is_quasi_iso(r.qis):
            fails.append(f"trial {t}: N -> E not a quasi-isomorphism")
        for i in sorted({i for i, _ in r.E.terms}):
            inc, prj = r.qis.at(i), r.projection.at(i)
            ok = ((prj @ inc).is_zero() and inc.rank() == inc.cols and prj.rank() == prj.rows
                  and inc.cols + prj.rows == r.E.term(i).dim)
            if not ok:
                fails.append(f"trial {t}: sequence not exact in degree {i}")
        hc = cx.hom_complex(M, r.E, probe)
        ident = {i: Matrix.vstack(Matrix.zeros(N.term(i).dim + M.term(i - 1).dim, M.term(i).dim),
                                  Matrix.identity(M.term(i).dim))
                 for i in M.degrees}
        f = hc.encode(0, ident)
        target = hc.encode_b(0, {p: {i: r.qis.at(i) @ m for i, m in b.get(p, {}).items()}
                                 for p in probe})
        image = hc.xi.at(0) @ f
        if image != target:
            fails.append(f"trial {t}: xi(0,0,id) != (b,0,0)")
        if not Subspace(image.rows, hc.xi.at(0)).contains(target):
            fails.append(f"trial {t}: image of b not zero in Coker(xi)")
    return SuiteResult("lemma", not fails, details={"trials": trials, "nonzero_differentials": nontrivial},
                       failures=fails)


def ext_formula(seed: int = DEFAULT_SEED, trials: int = 50) -> SuiteResult:
    """Cone cohomology against the Hom solver and the degree-zero Ext ranks."""
    rng = random.Random(seed)
    fails = []
    for t in range(trials):
        M, N = sm.random_fog_pair(rng)
        probe = cx.default_probe(M, N)
        hc = cx.hom_complex(M, N, probe)
        C, _, _ = cx.cone(hc.xi)
        h0 = C.cohomology_dim(-1)
        direct = len(wt.hom_space_fog(M, N))
        if h0 != direct:
            fails.append(f"trial {t}: Ext^0 {h0} != Hom {direct}")
        for i in (-2, -1, 2, 3):
            if C.cohomology_dim(i - 1):
                fails.append(f"trial {t}: Ext^{i} nonzero")
        deltas = [he.delta(M, N, p, v) for p in probe for v in he.w0_basis(M, N)]
        e1 = he.ext1_rank(M, N, deltas, probe=probe)
        if C.cohomology_dim(0) != e1:
            fails.append(f"trial {t}: Ext^1 cone {C.cohomology_dim(0)} != truncated ext1_rank {e1}")
    return SuiteResult("extformula", not fails, details={"trials": trials}, failures=fails)


def _ses_suite():
    Q, Q1, Qm1 = wt.unit_fog(), wt.tate_fog(1), wt.tate_fog(-1)
    U = wt.fog_object(og.make_object(2, (0, 0), {2: [[1, 1], [0, 1]]}), [(0, Matrix.identity(2))])
    U1 = wt.tate_twist_fog(U, 1)
    return [("Q,Q(-1)", Q, Qm1), ("Q,Q(1)", Q, Q1), ("Q,Q", Q, Q),
            ("U,Q", U, Q), ("Q,U", Q, U), ("U,U", U, U), ("U,U(1)", U, U1), ("U(1),U", U1, U)]


def ses(seed: int = DEFAULT_SEED, trials: int = 0) -> SuiteResult:
    """Cone-level and Ext-level short exact sequences agree on a fixed suite."""
    fails, rows = [], []
    for name, M, N in _ses_suite():
        for probe in ((2,), (2, 3), (2, 3, 5)):
            a = he.ses_fog_og(M, N, probe)
            b = cx.verify_ses_cone(M, N, probe)
            ranks = (a.rank_fog, a.rank_og, a.rank_third)
            rows.append({"pair": name, "probe": list(probe), "ranks": list(ranks)})
            if not (a.verified and b.verified):
                fails.append(f"{name} {probe}: not verified")
            if b.h0 != ranks:
                fails.append(f"{name} {probe}: cone ranks {b.h0} != {ranks}")
    return SuiteResult("ses", not fails, details={"cases": rows}, failures=fails)


def full_faithfulness(seed: int = DEFAULT_SEED, trials: int = 100) -> SuiteResult:
    rng = random.Random(seed)
    fails, nonzero = [], 0
    for t in range(trials):
        M, N = sm.random_fog_pair(rng)
        a = [f.f_dR for f in wt.hom_space_fog(M, N)]
        b = [f.f_dR for f in og.hom_space(M, N)]
        n = M.dim * N.dim
        span = lambda fs: Subspace(n, Matrix.hstack(*(Matrix.column(f.vec()) for f in fs), rows=n))
        nonzero += bool(b)
        if span(a) != span(b):
            fails.append(f"trial {t}: Hom_FOg {len(a)} != Hom_Og {len(b)}")
    return SuiteResult("faithful", not fails, details={"trials": trials, "nonzero_hom": nonzero},
                       failures=fails)


def purity(seed: int = DEFAULT_SEED, trials: int = 50) -> SuiteResult:
    rng = random.Random(seed)
    fails = []
    P = Polynomial([5, -2, 1])
    if wt.is_pure(P, 5, 1) != Verdict.PURE:
        fails.append("x^2-2x+5 not pure of weight 1 at q=5")
    R = Polynomial.from_roots([1, 2])
    for i in range(-6, 7):
        if wt.is_pure(R, 2, i) != Verdict.IMPURE:
            fails.append(f"(x-1)(x-2) not impure at weight {i}")
    for p in (2, 3, 5, 7):
        for n in range(-3, 4):
            L = Polynomial([-Fraction(p) ** (-n), 1])
            if wt.is_pure(L, p, -2 * n) != Verdict.PURE:
                fails.append(f"x - {p}^{-n} not pure of weight {-2 * n}")
            if wt.is_pure(L, p, -2 * n + 1) != Verdict.IMPURE:
                fails.append(f"x - {p}^{-n} pure of wrong weight")
    for t in range(trials):
        p = rng.choice((2, 3, 5, 7))
        d = rng.randint(1, 3)
        if t % 2:
            A = sm.random_pure_block(rng, d, rng.randint(-1, 1), p)
        else:
            A = sm.random_invertible(rng, d, 4)
        n = rng.randint(-2, 2)
        i = rng.randint(-4, 4)
        before = wt.is_pure(charpoly(A), p, i)
        after = wt.is_pure(charpoly(A * Fraction(p) ** (-n)), p, i - 2 * n)
        if before != after:
            fails.append(f"trial {t}: twist changed verdict {before.value} -> {after.value}")
    return SuiteResult("purity", not fails, details={"trials": trials}, failures=fails)


def fog_prime_agreement(seed: int = DEFAULT_SEED, trials: int = 50) -> SuiteResult:
    rng = random.Random(seed)
    fails = []
    for t in range(trials):
        M, N = sm.random_fog_pair(rng)
        wt.validate_fog(M)
        wt.validate_fog(N)
        Mp = wt.FOgObject(M.base, M.weights, M.purity_tolerance, fog_prime=True)
        Np = wt.FOgObject(N.base, N.weights, N.purity_tolerance, fog_prime=True)
        xs = [sm.random_cocycle(rng, M, N) for _ in range(3)]
        xs.append(he.xi(M, N, sm.random_w0(rng, M, N)))
        xps = [he.Cocycle(Mp, Np, x.tail_gen, x.exceptional, x.mode) for x in xs]
        for x, xp in zip(xs, xps):
            if (he.is_coboundary(x) is None) != (he.is_coboundary(xp) is None):
                fails.append(f"trial {t}: coboundary verdicts differ")
        if he.ext1_rank(M, N, xs) != he.ext1_rank(Mp, Np, xps):
            fails.append(f"trial {t}: ranks differ")
    return SuiteResult("fog-prime", not fails, details={"trials": trials}, failures=fails)


def unbounded_rank(seed: int = DEFAULT_SEED, trials: int = 25) -> SuiteResult:
    Q, Q1 = _q_q1()
    fails, ranks = [], []
    primes = og.first_primes(trials)
    for n in range(1, trials + 1):
        r = he.ext1_rank(Q, Q1, [he.delta(Q, Q1, p, Matrix([[1]])) for p in primes[:n]])
        ranks.append(r)
        if r != n:
            fails.append(f"n={n}: rank {r}")
    return SuiteResult("unbounded", not fails, details={"ranks": ranks}, failures=fails)


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "example-q-q1": example_q_q1,
    "roundtrip": round_trip,
    "lemma": lemma,
    "extformula": ext_formula,
    "ses": ses,
    "faithful": full_faithfulness,
    "purity": purity,
    "fog-prime": fog_prime_agreement,
    "unbounded": unbounded_rank,
}


def run_suite(name: str, seed: int = DEFAULT_SEED, trials: int | None = None) -> SuiteResult:
    fn = SUITES[name]
    start = time.perf_counter()
    res = fn(seed) if trials is None else fn(seed, trials)
    res.seconds = time.perf_counter() - start
    return res
