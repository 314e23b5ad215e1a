"""The nine acceptance criteria, each with its runtime budget.

Every test prints one PASS/FAIL line (visible without ``-s``).
"""
from fractions import Fraction

import pytest

from fogus import verify as vf
from fogus import weights as wt

CRITERIA = [
    # (number, suite, trials, seconds, description)
    (1, "example-q-q1", 50, 1, "deltas at 2,3,5,7 have rank 4; b=3 and 50 random xi(g) are coboundaries"),
    (2, "roundtrip", 100, 10, "extract_class(build_extension(x)) ~ x on 100 cocycles"),
    (3, "lemma", 50, 30, "kill_cocycle on 50 random complexes: qis, SES, (b,0,0), Coker"),
    (4, "extformula", 50, 10, "Ext^0 = Hom, Ext^{i not 0,1} = 0, Ext^1 = truncated ext1_rank"),
    (5, "ses", None, 5, "cone SES and Ext SES agree, rank(Og) = rank(FOg) + rank(third)"),
    (6, "faithful", 100, 10, "hom_space_fog = hom_space on 100 samples"),
    (7, "purity", 50, 5, "Weil examples and twist shift on 50 samples at tolerance 1e-20"),
    (8, "fog-prime", 50, 5, "FOg and FOg' verdicts and ranks agree on 50 samples"),
    (9, "unbounded", 25, 10, "delta families at the first n primes have rank n, n <= 25"),
]


@pytest.fixture(autouse=True)
def _default_tolerance(monkeypatch):
    monkeypatch.delenv("FOGUS_DEFAULT_TOL", raising=False)
    assert wt.default_tolerance() == Fraction(1, 10 ** 20)


@pytest.mark.parametrize("number, suite, trials, budget, text", CRITERIA,
                         ids=[f"criterion{c[0]}-{c[1]}" for c in CRITERIA])
def test_criterion(number, suite, trials, budget, text, capsys):
    res = vf.run_suite(suite, vf.DEFAULT_SEED, trials)
    ok = res.passed and res.seconds < budget
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        print(f"\n[criterion {number}] {status} {suite}: {text} "
              f"({res.seconds:.2f}s, budget {budget}s)")
        for f in res.failures[:5]:
            print(f"    {f}")
    assert res.passed, res.failures[:5]
    assert res.seconds < budget, f"{res.seconds:.2f}s over the {budget}s budget"
