"""Weight filtrations, Weil-number purity, and the filtered Ogus category.

A weight filtration is one global flag on the de Rham space.  Its steps must
be Frobenius-stable at every prime.  At the tail primes the Frobenius is
diagonal with eigenvalues p^-n, so stability there means every step is a sum
of tail eigenspaces, and purity means a tail line of twist n sits in weight
-2n.  Both are decided exactly from finite data.
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FrobeniusInstability, ImpureObject
from .exactq import (
    Matrix,
    ModulusInterval,
    Polynomial,
    Subspace,
    certified_root_moduli,
    charpoly,
    coordinates,
    roots_on_circle,
    to_rational,
)
from . import ogus_core as og
from .ogus_core import OgusMorphism, OgusObject, base_of

__all__ = [
    "Verdict",
    "default_tolerance",
    "parse_tolerance",
    "WeightFiltration",
    "make_filtration",
    "FOgObject",
    "fog_object",
    "PieceVerdict",
    "PurityReport",
    "is_pure",
    "purity_detail",
    "check_weight_filtration",
    "validate_fog",
    "graded_piece",
    "ihom_weight_filtration",
    "filtration_constraints",
    "internal_hom_fog",
    "hom_space_fog",
    "tate_twist_fog",
    "direct_sum_fog",
    "change_basis_fog",
    "fog_subobject",
    "fog_quotient",
    "fog_kernel",
    "fog_cokernel",
    "unit_fog",
    "tate_fog",
    "zero_fog",
]

DEFAULT_TOLERANCE = Fraction(1, 10 ** 20)


def parse_tolerance(text: str) -> Fraction:
    """A positive tolerance such as "1/100", "1e-20" or "0.001".

    Decimal and scientific forms are read exactly, which is harmless for a
    tolerance even though matrix entries never accept them.
    """
    try:
        tol = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a tolerance: {text!r}") from None
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return tol


def default_tolerance() -> Fraction:
    """Purity tolerance, overridable through ``FOGUS_DEFAULT_TOL``."""
    env = os.environ.get("FOGUS_DEFAULT_TOL")
    if env:
        try:
            return parse_tolerance(env)
        except ValueError as exc:
            raise ValueError(f"FOGUS_DEFAULT_TOL: {exc}") from None
    return DEFAULT_TOLERANCE


class Verdict(str, enum.Enum):
    PURE = "pure"
    IMPURE = "impure"
    UNDECIDED = "undecided"


# ------------------------------------------------------------------ filtration


@dataclass(frozen=True)
class WeightFiltration:
    """Increasing filtration stored at its jumps.

    ``steps`` holds ``(i, basis of W_i)`` for the indices where the dimension
    grows; W is 0 below the first index and everything from the last one on.
    """
    dim: int
    steps: tuple[tuple[int, Matrix], ...]

    @property
    def jumps(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.steps)

    def W(self, i: int) -> Subspace:
        basis = None
        for j, b in self.steps:
            if j > i:
                break
            basis = b
        return Subspace(self.dim, basis)

    def previous(self, i: int) -> Subspace:
        return self.W(i - 1)

    def shift(self, k: int) -> "WeightFiltration":
        return WeightFiltration(self.dim, tuple((i + k, b) for i, b in self.steps))

    @classmethod
    def pure(cls, dim: int, weight: int) -> "WeightFiltration":
        return cls(dim, ((weight, Matrix.identity(dim)),) if dim else ())


def make_filtration(dim: int, steps: Iterable[tuple[int, Matrix]]) -> WeightFiltration:
    """Normalize ``(index, spanning columns)`` pairs into a WeightFiltration.

    Indices must increase; subspaces must be nested and the last one full.
    Repeated subspaces are collapsed onto their first index.
    """
    out: list[tuple[int, Matrix]] = []
    prev_index, prev = None, Subspace.zero(dim)
    for i, span in steps:
        if prev_index is not None and i <= prev_index:
            raise ValueError("weight filtration indices must strictly increase")
        S = Subspace(dim, span)
        if not prev <= S:
            raise ValueError(f"W_{i} does not contain the previous step")
        if S.dim > prev.dim:
            out.append((i, S.basis))
        prev_index, prev = i, S
    if dim and prev.dim != dim:
        raise ValueError("the last filtration step must be the whole space")
    return WeightFiltration(dim, tuple(out))


@dataclass(frozen=True)
class FOgObject:
    """An Ogus object with a weight filtration.

    Construction checks that every step is Frobenius-stable at the exceptional
    primes and at the tail; purity is certified separately by
    :func:`check_weight_filtration` (skipped in FOg' mode).
    """
    base: OgusObject
    weights: WeightFiltration
    purity_tolerance: Fraction = field(default_factory=default_tolerance, compare=False)
    fog_prime: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.weights.dim != self.base.dim:
            raise ValueError("filtration lives on a space of the wrong dimension")
        for i, b in self.weights.steps:
            S = Subspace(self.base.dim, b)
            for p, phi in self.base.exceptional:
                if not S.contains(phi @ b):
                    raise FrobeniusInstability(p, i)
            tail_dim = sum(
                S.intersection(Subspace(self.base.dim, V)).dim
                for V in self.base.twist_spaces.values()
            )
            if tail_dim != S.dim:
                raise FrobeniusInstability(None, i)

    # delegation, so filtered objects can be passed where plain ones are read
    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def tail(self):
        return self.base.tail

    @property
    def places(self):
        return self.base.places

    @property
    def exceptional(self):
        return self.base.exceptional

    def frobenius(self, p: int) -> Matrix:
        return self.base.frobenius(p)

    def respects_filtration(self, source: "FOgObject", f: Matrix, shift: int = 0) -> bool:
        """Does f map each W_i(source) into W_{i+shift}(self)?"""
        for i, b in source.weights.steps:
            if not self.weights.W(i + shift).contains(f @ b):
                return False
        return True

    def __repr__(self):
        mode = ", fog_prime" if self.fog_prime else ""
        return f"FOgObject({self.base!r}, jumps={self.weights.jumps}{mode})"


def fog_object(base: OgusObject, steps, tolerance=None, fog_prime: bool = False) -> FOgObject:
    """Convenience constructor.

    ``steps`` pairs an index with either a Matrix of spanning columns or a list
    of spanning vectors.
    """
    steps = [(i, b if isinstance(b, Matrix) else _columns(b, base.dim)) for i, b in steps]
    filt = make_filtration(base.dim, steps)
    tol = default_tolerance() if tolerance is None else to_rational(tolerance)
    return FOgObject(base, filt, tol, fog_prime)


def _columns(vectors, dim: int) -> Matrix:
    return Matrix(vectors, dim).T if vectors else Matrix.zeros(dim, 0)


def unit_fog() -> FOgObject:
    return FOgObject(og.unit_object(), WeightFiltration.pure(1, 0))


def tate_fog(n: int) -> FOgObject:
    """Q(n), pure of weight -2n."""
    return FOgObject(og.tate_object(n), WeightFiltration.pure(1, -2 * n))


def zero_fog() -> FOgObject:
    return FOgObject(og.zero_object(), WeightFiltration(0, ()))


# ------------------------------------------------------------------- purity


def purity_detail(P: Polynomial, q: int, i: int, tol=None, exact: bool = True):
    """``(verdict, intervals)`` for "every root of P has modulus q^(i/2)"."""
    tol = default_tolerance() if tol is None else to_rational(tol)
    if not P.is_monic():
        raise ValueError("purity test needs a monic polynomial")
    if P.degree < 1:
        raise ValueError("purity test needs a nonconstant polynomial")
    if q < 2:
        raise ValueError("q must be at least 2")
    target = Fraction(q) ** i  # the squared modulus q^i
    if P.coeffs[0] == 0:
        return Verdict.IMPURE, tuple(certified_root_moduli(P, tol))
    # roots z -> q^i / z must permute the roots (they are the conjugates)
    if P.reversal(target) * (1 / P.coeffs[0]) != P:
        return Verdict.IMPURE, tuple(certified_root_moduli(P, tol))
    intervals = tuple(certified_root_moduli(P, tol))
    if any(iv.excludes_sqrt(target) for iv in intervals):
        return Verdict.IMPURE, intervals
    if any(iv.width > tol for iv in intervals):
        return Verdict.UNDECIDED, intervals
    if all(iv.width == 0 for iv in intervals):
        # every root modulus is known exactly and equals q^(i/2)
        return Verdict.PURE, intervals
    if not exact:
        return Verdict.UNDECIDED, intervals
    return (Verdict.PURE if roots_on_circle(P, target) else Verdict.IMPURE), intervals


def is_pure(P: Polynomial, q: int, i: int, tol=None, exact: bool = True) -> Verdict:
    """Three-valued Weil test: are all roots of P of absolute value q^(i/2)?

    >>> is_pure(Polynomial([5, -2, 1]), 5, 1).value
    'pure'
    """
    return purity_detail(P, q, i, tol, exact)[0]


@dataclass(frozen=True)
class PieceVerdict:
    index: int
    place: int | None  # None stands for all tail primes at once
    verdict: Verdict
    charpoly: Polynomial | None = None
    intervals: tuple[ModulusInterval, ...] = ()
    tail_weights: tuple[int, ...] = ()


@dataclass(frozen=True)
class PurityReport:
    entries: tuple[PieceVerdict, ...]

    @property
    def verdict(self) -> Verdict:
        vs = {e.verdict for e in self.entries}
        if Verdict.IMPURE in vs:
            return Verdict.IMPURE
        if Verdict.UNDECIDED in vs:
            return Verdict.UNDECIDED
        return Verdict.PURE

    def at(self, place: int | None) -> tuple[PieceVerdict, ...]:
        return tuple(e for e in self.entries if e.place == place)

    def restricted(self, places: Sequence[int | None]) -> "PurityReport":
        return PurityReport(tuple(e for e in self.entries if e.place in places))


def _graded_base(M: FOgObject, i: int) -> OgusObject:
    Wi = M.weights.W(i)
    sub, S = og.subobject(M.base, Wi.basis)
    prev = M.weights.W(i - 1)
    Q, _, _ = og.quotient_object(sub, coordinates(S, prev.basis) if prev.dim else Matrix.zeros(Wi.dim, 0))
    return Q


def check_weight_filtration(M: FOgObject, tol=None) -> PurityReport:
    """Purity verdict for every graded piece, at every exceptional prime and the tail."""
    tol = M.purity_tolerance if tol is None else to_rational(tol)
    entries = []
    for i in M.weights.jumps:
        G = _graded_base(M, i)
        for p in M.base.places:
            P = charpoly(G.frobenius(p))
            verdict, intervals = purity_detail(P, p, i, tol)
            entries.append(PieceVerdict(i, p, verdict, P, intervals))
        tail_weights = tuple(sorted({-2 * n for n in G.tail}))
        ok = all(w == i for w in tail_weights)
        entries.append(PieceVerdict(i, None, Verdict.PURE if ok else Verdict.IMPURE,
                                    tail_weights=tail_weights))
    return PurityReport(tuple(entries))


def validate_fog(M: FOgObject, tol=None) -> PurityReport:
    """Raise ImpureObject unless M is a genuine filtered Ogus object.

    In FOg' mode only the (already checked) stability conditions apply.
    """
    report = check_weight_filtration(M, tol)
    if not M.fog_prime and report.verdict is not Verdict.PURE:
        bad = [e for e in report.entries if e.verdict is not Verdict.PURE]
        e = bad[0]
        where = "tail primes" if e.place is None else f"p={e.place}"
        raise ImpureObject(f"Gr_{e.index} is {e.verdict.value} at {where}")
    return report


def graded_piece(M: FOgObject, i: int) -> FOgObject:
    """``Gr_i^W M`` with the induced Frobenius, pure filtration at i."""
    if i not in M.weights.jumps:
        return FOgObject(og.zero_object(), WeightFiltration(0, ()), M.purity_tolerance, M.fog_prime)
    G = _graded_base(M, i)
    return FOgObject(G, WeightFiltration.pure(G.dim, i), M.purity_tolerance, M.fog_prime)


# ---------------------------------------------------------- internal Hom, Hom


def filtration_constraints(M: FOgObject, N: FOgObject, r: int = 0) -> Matrix:
    """Rows cutting out ``W_r Hom(M, N) = {f : f(W_i M) in W_{i+r} N}`` on vec(f)."""
    rows = []
    for i, b in M.weights.steps:
        ann = N.weights.W(i + r).annihilator()
        for a in (ann.row(k) for k in range(ann.rows)):
            for c in range(b.cols):
                col = b.col(c)
                rows.append([x * y for x in a for y in col])
    return Matrix(rows, M.dim * N.dim)


def ihom_weight_filtration(M: FOgObject, N: FOgObject) -> WeightFiltration:
    dim = M.dim * N.dim
    if dim == 0:
        return WeightFiltration(0, ())
    candidates = sorted({j - i for i in M.weights.jumps for j in N.weights.jumps})
    steps = [(r, filtration_constraints(M, N, r).nullspace()) for r in candidates]
    return make_filtration(dim, steps)


def internal_hom_fog(M: FOgObject, N: FOgObject) -> FOgObject:
    return FOgObject(
        og.internal_hom(M.base, N.base),
        ihom_weight_filtration(M, N),
        min(M.purity_tolerance, N.purity_tolerance),
        M.fog_prime or N.fog_prime,
    )


def hom_space_fog(M: FOgObject, N: FOgObject) -> list[OgusMorphism]:
    """Basis of the Ogus morphisms that also respect the weight filtrations."""
    A = Matrix.vstack(og.hom_constraints(M.base, N.base), filtration_constraints(M, N, 0),
                      cols=M.dim * N.dim)
    K = A.nullspace()
    return [OgusMorphism(M, N, Matrix.unvec(K.col(j), N.dim, M.dim), check=False)
            for j in range(K.cols)]


# ---------------------------------------------------- constructions on FOg


def tate_twist_fog(M: FOgObject, n: int) -> FOgObject:
    return FOgObject(og.tate_twist(M.base, n), M.weights.shift(-2 * n),
                     M.purity_tolerance, M.fog_prime)


def direct_sum_fog(*objects: FOgObject) -> FOgObject:
    if not objects:
        return zero_fog()
    base = og.direct_sum(*(X.base for X in objects))
    indices = sorted({i for X in objects for i in X.weights.jumps})
    steps = [(i, Matrix.block_diag(*(X.weights.W(i).basis for X in objects))) for i in indices]
    return FOgObject(base, make_filtration(base.dim, steps),
                     min(X.purity_tolerance for X in objects),
                     any(X.fog_prime for X in objects))


def change_basis_fog(M: FOgObject, P: Matrix) -> FOgObject:
    steps = [(i, P @ b) for i, b in M.weights.steps]
    base = og.change_basis(M.base, P)
    return FOgObject(base, make_filtration(base.dim, steps), M.purity_tolerance, M.fog_prime)


def fog_subobject(M: FOgObject, S: Matrix) -> tuple[FOgObject, Matrix]:
    base, S = og.subobject(M.base, S)
    span = Subspace(M.dim, S)
    steps = []
    for i, b in M.weights.steps:
        W = span.intersection(Subspace(M.dim, b))
        steps.append((i, coordinates(S, W.basis) if W.dim else Matrix.zeros(S.cols, 0)))
    return FOgObject(base, make_filtration(base.dim, steps), M.purity_tolerance, M.fog_prime), S


def fog_quotient(M: FOgObject, S: Matrix) -> tuple[FOgObject, Matrix, Matrix]:
    base, P, C = og.quotient_object(M.base, S)
    steps = [(i, (P @ b).column_space()) for i, b in M.weights.steps]
    return (FOgObject(base, make_filtration(base.dim, steps), M.purity_tolerance, M.fog_prime),
            P, C)


def fog_kernel(f: OgusMorphism) -> tuple[FOgObject, OgusMorphism]:
    K, S = fog_subobject(f.source, f.f_dR.nullspace())
    return K, OgusMorphism(K, f.source, S, check=False)


def fog_cokernel(f: OgusMorphism) -> tuple[FOgObject, OgusMorphism]:
    Q, P, _ = fog_quotient(f.target, f.f_dR.column_space())
    return Q, OgusMorphism(f.target, Q, P, check=False)
