"""Degree-zero extensions: cocycles, coboundaries, Ext^1 ranks, Baer sums.

An element of the restricted product of the ``W_0 Hom(M, N)_p`` is stored as a
global "tail generator" g plus finitely many explicit values.  At a prime p
outside the explicit support the value is ``g phi_M - phi_N g``.  This shape is
closed under sums and contains the image of the coboundary map, which is
exactly what makes coboundary tests finite linear algebra.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, NoSection, WeightViolation
from .exactq import Matrix, Subspace, coordinates, solve, to_rational
from . import ogus_core as og
from . import weights as wt
from .ogus_core import OgusMorphism, base_of, commutation_operator, tail_constraints
from .weights import FOgObject, filtration_constraints

__all__ = [
    "Cocycle",
    "make_cocycle",
    "xi",
    "delta",
    "is_coboundary",
    "ext1_rank",
    "ExtensionTriple",
    "check_extension",
    "build_extension",
    "extract_class",
    "baer_sum",
    "extension_isomorphism",
    "w0_basis",
    "SESReport",
    "ses_fog_og",
]

FOG, OG = "fog", "og"


def _mode_of(M, N, mode: str | None) -> str:
    if mode is None:
        mode = FOG if isinstance(M, FOgObject) and isinstance(N, FOgObject) else OG
    if mode not in (FOG, OG):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == FOG and not (isinstance(M, FOgObject) and isinstance(N, FOgObject)):
        raise TypeError("FOg mode needs filtered objects")
    return mode


def _w0_rows(M, N, mode: str) -> Matrix:
    if mode == FOG:
        return filtration_constraints(M, N, 0)
    return Matrix.zeros(0, M.dim * N.dim)


def _in_w0(M, N, f: Matrix, mode: str) -> bool:
    if mode != FOG:
        return True
    return N.respects_filtration(M, f)


def w0_basis(M, N, mode: str | None = None) -> list[Matrix]:
    """Basis of ``W_0 Hom(M_dR, N_dR)`` (all of Hom in Og mode)."""
    mode = _mode_of(M, N, mode)
    K = _w0_rows(M, N, mode).nullspace()
    return [Matrix.unvec(K.col(j), N.dim, M.dim) for j in range(K.cols)]


@dataclass(frozen=True)
class Cocycle:
    source: object
    target: object
    tail_gen: Matrix
    exceptional: tuple[tuple[int, Matrix], ...] = ()
    mode: str = FOG

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.exceptional)

    def value_at(self, p: int) -> Matrix:
        for q, v in self.exceptional:
            if q == p:
                return v
        g = self.tail_gen
        return g @ self.source.frobenius(p) - self.target.frobenius(p) @ g

    def _places(self) -> list[int]:
        return sorted(set(self.support) | set(base_of(self.source).places)
                      | set(base_of(self.target).places))

    def _combine(self, other: "Cocycle", a, b) -> "Cocycle":
        if (self.source, self.target, self.mode) != (other.source, other.target, other.mode):
            raise DimensionMismatch("cocycles live on different pairs of objects")
        places = sorted(set(self.support) | set(other.support))
        exc = tuple((p, self.value_at(p) * a + other.value_at(p) * b) for p in places)
        return Cocycle(self.source, self.target, self.tail_gen * a + other.tail_gen * b,
                       exc, self.mode)

    def __add__(self, other: "Cocycle") -> "Cocycle":
        return self._combine(other, 1, 1)

    def __sub__(self, other: "Cocycle") -> "Cocycle":
        return self._combine(other, 1, -1)

    def __mul__(self, c) -> "Cocycle":
        c = to_rational(c)
        return Cocycle(self.source, self.target, self.tail_gen * c,
                       tuple((p, v * c) for p, v in self.exceptional), self.mode)

    __rmul__ = __mul__

    def __neg__(self) -> "Cocycle":
        return self * -1


def make_cocycle(M, N, tail_gen: Matrix | None = None,
                 exceptional: Mapping[int, Matrix] | Iterable | None = None,
                 mode: str | None = None) -> Cocycle:
    """Validated constructor; every value must lie in W_0 Hom(M, N) in FOg mode."""
    mode = _mode_of(M, N, mode)
    g = Matrix.zeros(N.dim, M.dim) if tail_gen is None else tail_gen
    items = exceptional.items() if isinstance(exceptional, Mapping) else (exceptional or ())
    exc = {}
    for p, v in items:
        if not og.is_prime(p):
            raise ValueError(f"{p!r} is not a prime")
        if p in exc:
            raise og.DuplicatePlace(p)
        exc[p] = v
    for what, v in [("tail generator", g)] + [(f"value at p={p}", v) for p, v in exc.items()]:
        if v.shape != (N.dim, M.dim):
            raise DimensionMismatch(f"{what} has shape {v.shape}, expected {(N.dim, M.dim)}")
        if not _in_w0(M, N, v, mode):
            raise WeightViolation(f"{what} is not in W_0 Hom(M, N)")
    return Cocycle(M, N, g, tuple(sorted(exc.items())), mode)


def xi(M, N, g: Matrix, mode: str | None = None) -> Cocycle:
    """The coboundary of g: the family ``(g phi_M - phi_N g)_p``."""
    return make_cocycle(M, N, g, None, mode)


def delta(M, N, p: int, value: Matrix, mode: str | None = None) -> Cocycle:
    """The family equal to ``value`` at p and zero everywhere else."""
    return make_cocycle(M, N, None, {p: value}, mode)


# ------------------------------------------------------------- coboundaries


def _system(M, N, cocycles: Sequence[Cocycle], mode: str, probe: Sequence[int] | None):
    """Rows in the unknowns (vec h, c_1..c_k) expressing ``xi(h) = sum c_k x_k``.

    With a probe only the probe primes are constrained (truncated product);
    otherwise every special prime is, plus the tail condition on
    ``h - sum c_k g_k`` that settles the remaining primes all at once.
    """
    nm, k = M.dim * N.dim, len(cocycles)
    if probe is not None:
        places = sorted(set(probe))
    else:
        places = sorted(set(base_of(M).places) | set(base_of(N).places)
                        | {p for x in cocycles for p in x.support})
    blocks = []
    for p in places:
        A = commutation_operator(M.frobenius(p), N.frobenius(p))
        C = Matrix.hstack(*(Matrix.column(x.value_at(p).vec()) for x in cocycles), rows=nm)
        blocks.append(Matrix.hstack(A, -C, rows=nm))
    if probe is None:
        T = tail_constraints(M, N)
        if T.rows:
            G = Matrix.hstack(*(T @ Matrix.column(x.tail_gen.vec()) for x in cocycles), rows=T.rows)
            blocks.append(Matrix.hstack(T, -G, rows=T.rows))
    W = _w0_rows(M, N, mode)
    if W.rows:
        blocks.append(Matrix.hstack(W, Matrix.zeros(W.rows, k), rows=W.rows))
    return Matrix.vstack(*blocks, cols=nm + k)


def is_coboundary(x: Cocycle, probe: Sequence[int] | None = None) -> Matrix | None:
    """A global h with ``xi(h) = x`` (h in W_0 in FOg mode), or None.

    Without ``probe`` the answer is about the full restricted product; with a
    probe only the listed primes are compared.
    """
    M, N = x.source, x.target
    S = _system(M, N, [x], x.mode, probe)
    nm = M.dim * N.dim
    A = S.submatrix(None, range(nm))
    b = -S.submatrix(None, [nm])
    sol = solve(A, b)
    if sol is None:
        return None
    return Matrix.unvec(sol[0].col(0), N.dim, M.dim)


def ext1_rank(M, N, classes: Sequence[Cocycle], mode: str | None = None,
              probe: Sequence[int] | None = None) -> int:
    """Dimension of the span of ``classes`` in ``Ext^1(M, N)``.

    One homogeneous solve with the combination coefficients as extra unknowns:
    the relations among the classes are the projections of its kernel.
    """
    if not classes:
        return 0
    mode = _mode_of(M, N, mode)
    for x in classes:
        if x.mode != mode or x.source != M or x.target != N:
            raise DimensionMismatch("every class must be a cocycle between M and N in this mode")
    nm = M.dim * N.dim
    K = _system(M, N, classes, mode, probe).nullspace()
    relations = K.submatrix(range(nm, nm + len(classes)), None)
    return len(classes) - relations.rank()


# -------------------------------------------------------------- extensions


@dataclass(frozen=True)
class ExtensionTriple:
    """``0 -> N --incl--> E --proj--> M -> 0``."""
    E: object
    incl: OgusMorphism
    proj: OgusMorphism

    @property
    def sub(self):
        return self.incl.source

    @property
    def quotient(self):
        return self.proj.target


def check_extension(T: ExtensionTriple) -> None:
    i, p = T.incl.f_dR, T.proj.f_dR
    if not (p @ i).is_zero():
        raise ValueError("proj o incl is not zero")
    if i.rank() != i.cols:
        raise ValueError("incl is not injective")
    if p.rank() != p.rows:
        raise ValueError("proj is not surjective")
    if Subspace(i.rows, p.nullspace()) != Subspace(i.rows, i):
        raise ValueError("kernel of proj differs from image of incl")


def _sum_object(M, N, mode):
    return wt.direct_sum_fog(N, M) if mode == FOG else og.direct_sum(N, M)


def build_extension(x: Cocycle) -> ExtensionTriple:
    """The extension ``E_x = N + M`` with Frobenius ``[[phi_N, -x_p], [0, phi_M]]``.

    At the tail primes that block matrix is the conjugate of the block-diagonal
    tail by the constant matrix ``[[1, -g], [0, 1]]``, which becomes part of
    E's tail basis; so E is again finitely presented.
    """
    M, N, mode = x.source, x.target, x.mode
    Mb, Nb = base_of(M), base_of(N)
    n, m = N.dim, M.dim
    if mode == FOG:
        for p in x.support:
            if not N.respects_filtration(M, x.value_at(p)):
                raise WeightViolation(f"value at p={p} is not in W_0 Hom(M, N)")
        if not N.respects_filtration(M, x.tail_gen):
            raise WeightViolation("tail generator is not in W_0 Hom(M, N)")
    places = x._places()
    exc = tuple(
        (p, Matrix.block([[Nb.frobenius(p), -x.value_at(p)],
                          [Matrix.zeros(m, n), Mb.frobenius(p)]]))
        for p in places
    )
    U = Matrix.block([[Matrix.identity(n), -x.tail_gen],
                      [Matrix.zeros(m, n), Matrix.identity(m)]])
    B = U @ Matrix.block_diag(Nb.basis, Mb.basis)
    base = og.OgusObject(n + m, Nb.tail + Mb.tail, exc,
                         None if B == Matrix.identity(n + m) else B)
    if mode == FOG:
        indices = sorted(set(M.weights.jumps) | set(N.weights.jumps))
        steps = [(i, Matrix.block_diag(N.weights.W(i).basis, M.weights.W(i).basis))
                 for i in indices]
        E = FOgObject(base, wt.make_filtration(n + m, steps),
                      min(M.purity_tolerance, N.purity_tolerance), M.fog_prime or N.fog_prime)
    else:
        E = base
    incl = Matrix.vstack(Matrix.identity(n), Matrix.zeros(m, n))
    proj = Matrix.hstack(Matrix.zeros(m, n), Matrix.identity(m))
    return ExtensionTriple(E, OgusMorphism(N, E, incl), OgusMorphism(E, M, proj))


def _section(T: ExtensionTriple, mode: str, tail_commuting: bool) -> Matrix:
    E, M = T.E, T.proj.target
    e, m = E.dim, M.dim
    rows = [T.proj.f_dR.kron(Matrix.identity(m))]
    rhs = [Matrix.column(Matrix.identity(m).vec())]
    extra = [_w0_rows(M, E, mode)]
    if tail_commuting:
        extra.append(tail_constraints(M, E))
    for R in extra:
        rows.append(R)
        rhs.append(Matrix.zeros(R.rows, 1))
    sol = solve(Matrix.vstack(*rows, cols=e * m), Matrix.vstack(*rhs, cols=1))
    if sol is None:
        kind = "tail-commuting section" if tail_commuting else "section in W_0"
        raise NoSection(f"no {kind} of the projection exists")
    return Matrix.unvec(sol[0].col(0), e, m)


def extract_class(T: ExtensionTriple, section: Matrix | None = None,
                  mode: str | None = None) -> Cocycle:
    """The class ``x_p = s phi_M - phi_E s`` of an extension, pulled back to N.

    s is a W_0 section of the projection (chosen by RREF unless given).  The
    tail generator is ``incl^-1 (s - t)`` for a section t commuting with the
    tail Frobenius, which reproduces the values at every tail prime.
    """
    E, N, M = T.E, T.incl.source, T.proj.target
    mode = _mode_of(M, N, mode)
    if section is None:
        s = _section(T, mode, tail_commuting=False)
    else:
        s = section
        if T.proj.f_dR @ s != Matrix.identity(M.dim):
            raise NoSection("the given matrix is not a section of the projection")
        if not _in_w0(M, E, s, mode):
            raise WeightViolation("the given section is not in W_0 Hom(M, E)")
    t = _section(T, mode, tail_commuting=True)
    i = T.incl.f_dR
    g = coordinates(i, s - t)
    places = sorted(set(base_of(E).places) | set(base_of(M).places) | set(base_of(N).places))
    exc = tuple(
        (p, coordinates(i, s @ M.frobenius(p) - E.frobenius(p) @ s)) for p in places
    )
    return Cocycle(M, N, g, exc, mode)


def extension_isomorphism(x: Cocycle, g: Matrix) -> OgusMorphism:
    """``E_{x + xi(g)} -> E_x``, ``(n, m) -> (n + g m, m)``, checked as a morphism."""
    E1 = build_extension(x + xi(x.source, x.target, g, x.mode)).E
    E0 = build_extension(x).E
    n, m = x.target.dim, x.source.dim
    Psi = Matrix.block([[Matrix.identity(n), g], [Matrix.zeros(m, n), Matrix.identity(m)]])
    return OgusMorphism(E1, E0, Psi)


def baer_sum(T1: ExtensionTriple, T2: ExtensionTriple) -> ExtensionTriple:
    """Pull back along the diagonal of M, push out along the sum map of N."""
    N, M = T1.incl.source, T1.proj.target
    if N != T2.incl.source or M != T2.proj.target:
        raise DimensionMismatch("Baer sum of extensions with mismatched ends")
    mode = FOG if isinstance(T1.E, FOgObject) else OG
    if mode == FOG:
        S = wt.direct_sum_fog(T1.E, T2.E)
        sub, quot = wt.fog_subobject, wt.fog_quotient
    else:
        S = og.direct_sum(T1.E, T2.E)
        sub, quot = og.subobject, og.quotient_object
    n = N.dim
    diff = Matrix.hstack(T1.proj.f_dR, -T2.proj.f_dR)
    K, Kin = sub(S, diff.nullspace())
    anti = coordinates(Kin, Matrix.vstack(T1.incl.f_dR, -T2.incl.f_dR))
    Y, P, C = quot(K, anti.column_space())
    first = coordinates(Kin, Matrix.vstack(T1.incl.f_dR, Matrix.zeros(T2.E.dim, n)))
    incl = P @ first
    proj = Matrix.hstack(T1.proj.f_dR, Matrix.zeros(M.dim, T2.E.dim)) @ Kin @ C
    return ExtensionTriple(Y, OgusMorphism(N, Y, incl), OgusMorphism(Y, M, proj))


# --------------------------------------------------------- FOg -> Og sequence


@dataclass(frozen=True)
class SESReport:
    probe: tuple[int, ...]
    rank_fog: int
    rank_og: int
    rank_third: int
    injective: bool
    composite_zero: bool
    surjective: bool
    sample_mismatches: tuple[int, ...] = field(default=())

    @property
    def identity_holds(self) -> bool:
        return self.rank_og == self.rank_fog + self.rank_third

    @property
    def verified(self) -> bool:
        return (self.identity_holds and self.injective and self.composite_zero
                and self.surjective and not self.sample_mismatches)


def ses_fog_og(M: FOgObject, N: FOgObject, probe: Sequence[int],
               samples: Sequence[Cocycle] = ()) -> SESReport:
    """Check ``0 -> Ext^1_FOg -> Ext^1_Og -> third term -> 0`` over a probe.

    Works in the probe-truncated product.  The FOg and Og terms are ranks of
    delta families through :func:`ext1_rank`; the third term is
    ``prod_p Hom / (prod_p W_0 Hom + xi(Hom_dR))`` computed directly.
    """
    probe = tuple(sorted(set(probe)))
    if not probe:
        from .errors import EmptyProbe
        raise EmptyProbe("the probe set is empty")
    nm = M.dim * N.dim
    w0 = w0_basis(M, N, FOG)
    full = [Matrix.unvec(Matrix.identity(nm).col(j), N.dim, M.dim) for j in range(nm)]
    fog_deltas = [delta(M, N, p, v, FOG) for p in probe for v in w0]
    og_deltas = [delta(M, N, p, v, OG) for p in probe for v in full]
    rank_fog = ext1_rank(M, N, fog_deltas, FOG, probe)
    rank_og = ext1_rank(M, N, og_deltas, OG, probe)
    # FOg classes viewed in Og: same rank iff the map on Ext^1 is injective
    fog_in_og = [Cocycle(M, N, x.tail_gen, x.exceptional, OG) for x in fog_deltas]
    injective = ext1_rank(M, N, fog_in_og, OG, probe) == rank_fog

    k = len(probe)
    total = k * nm

    def stacked(values: dict[int, Matrix]) -> Matrix:
        return Matrix.column([a for p in probe for a in values[p].vec()])

    sub_cols = [stacked({q: (v if q == p else Matrix.zeros(N.dim, M.dim)) for q in probe})
                for p in probe for v in w0]
    sub_cols += [stacked({p: h @ M.frobenius(p) - N.frobenius(p) @ h for p in probe}) for h in full]
    denominators = Subspace(total, Matrix.hstack(*sub_cols, rows=total))
    rank_third = total - denominators.dim
    composite_zero = all(
        denominators.contains(stacked({q: x.value_at(q) for q in probe})) for x in fog_deltas)
    images = Matrix.hstack(*(stacked({q: x.value_at(q) for q in probe}) for x in og_deltas),
                           rows=total)
    surjective = denominators.sum(Subspace(total, images)).dim == total

    mismatches = []
    for idx, x in enumerate(samples):
        fog_trivial = is_coboundary(x, probe) is not None
        og_trivial = is_coboundary(Cocycle(M, N, x.tail_gen, x.exceptional, OG), probe) is not None
        if fog_trivial != og_trivial:
            mismatches.append(idx)
    return SESReport(probe, rank_fog, rank_og, rank_third, injective, composite_zero,
                     surjective, tuple(mismatches))
