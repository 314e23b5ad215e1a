"""Objects and morphisms of the Ogus category over Q.

An object is a finite-dimensional rational vector space ``M_dR`` together with
a Frobenius matrix at every prime p.  Only finitely many primes carry explicit
("exceptional") matrices; at every other prime the Frobenius is read off the
tail descriptor: with tail twists ``(n_1, ..., n_k)`` and tail basis B it is
``B diag(p^-n_1, ..., p^-n_k) B^-1``.  The comparison isomorphisms are absorbed
into the matrices at construction time, so a morphism is just its de Rham
matrix.

Base field is Q throughout, so the Frobenius lift is the identity and every
structure map is linear.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    DuplicatePlace,
    FrobeniusInstability,
    InvalidPlace,
    NonInvertibleFrobenius,
    NotAMorphism,
)
from .exactq import Matrix, Subspace, coordinates, to_rational

__all__ = [
    "is_prime",
    "first_primes",
    "OgusObject",
    "OgusMorphism",
    "make_object",
    "validate",
    "unit_object",
    "tate_object",
    "zero_object",
    "tate_twist",
    "direct_sum",
    "change_basis",
    "identity",
    "compose",
    "hom_space",
    "hom_constraints",
    "commutation_operator",
    "tail_constraints",
    "kernel",
    "cokernel",
    "image",
    "is_isomorphism",
    "internal_hom",
    "subobject",
    "quotient_object",
    "same_object",
]


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or isinstance(p, bool) or p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def first_primes(n: int) -> list[int]:
    out, k = [], 2
    while len(out) < n:
        if is_prime(k):
            out.append(k)
        k += 1
    return out


def base_of(M):
    """The underlying Ogus object of an Ogus or filtered Ogus object."""
    return getattr(M, "base", M)


@dataclass(frozen=True)
class OgusObject:
    dim: int
    tail: tuple[int, ...]
    exceptional: tuple[tuple[int, Matrix], ...] = ()
    tail_basis: Matrix | None = None

    @cached_property
    def _exc(self) -> dict[int, Matrix]:
        return dict(self.exceptional)

    @cached_property
    def basis(self) -> Matrix:
        return Matrix.identity(self.dim) if self.tail_basis is None else self.tail_basis

    @cached_property
    def _basis_inv(self) -> Matrix:
        return Matrix.identity(self.dim) if self.tail_basis is None else self.tail_basis.inverse()

    @property
    def places(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.exceptional)

    def tail_frobenius(self, p: int) -> Matrix:
        d = Matrix.diag([Fraction(p) ** (-n) for n in self.tail])
        if self.tail_basis is None:
            return d
        return self.basis @ d @ self._basis_inv

    def frobenius(self, p: int) -> Matrix:
        m = self._exc.get(p)
        return m if m is not None else self.tail_frobenius(p)

    @cached_property
    def twist_spaces(self) -> dict[int, Matrix]:
        """Tail twist -> columns of the tail basis carrying that twist."""
        out: dict[int, list[int]] = {}
        for k, n in enumerate(self.tail):
            out.setdefault(n, []).append(k)
        return {n: self.basis.columns(idx) for n, idx in out.items()}

    def __repr__(self):
        exc = ", ".join(str(p) for p in self.places)
        return f"OgusObject(dim={self.dim}, tail={self.tail}, exceptional=[{exc}])"


def _square(rows, dim: int, what: str) -> Matrix:
    try:
        m = Matrix(rows, dim)
    except ValueError:
        raise DimensionMismatch(f"{what} must be a {dim}x{dim} matrix") from None
    if m.rows != dim:
        raise DimensionMismatch(f"{what} must be a {dim}x{dim} matrix")
    return m


def make_object(
    dim: int,
    tail: Sequence[int] | None = None,
    exceptional: Mapping[int, object] | Iterable[tuple[int, object]] | None = None,
    gauge: Mapping[int, object] | None = None,
    tail_basis=None,
) -> OgusObject:
    """Build and validate an object, absorbing comparison isomorphisms.

    ``gauge[p]`` is the matrix of the comparison map at p; the stored Frobenius
    is ``gauge^-1 @ phi @ gauge``.
    """
    if not isinstance(dim, int) or dim < 0:
        raise DimensionMismatch(f"dimension must be a nonnegative integer, got {dim!r}")
    tail = tuple(tail) if tail is not None else (0,) * dim
    items = list(exceptional.items()) if isinstance(exceptional, Mapping) else list(exceptional or ())
    seen: dict[int, Matrix] = {}
    for p, phi in items:
        if p in seen:
            raise DuplicatePlace(p)
        seen[p] = phi if isinstance(phi, Matrix) else _square(phi, dim, f"Frobenius at p={p}")
    gauge = dict(gauge or {})
    for p, eps in gauge.items():
        if p not in seen:
            raise DimensionMismatch(f"comparison matrix given at p={p}, which has no Frobenius")
        eps = eps if isinstance(eps, Matrix) else _square(eps, dim, f"comparison matrix at p={p}")
        if eps.shape != (dim, dim) or not eps.is_invertible():
            raise DimensionMismatch(f"comparison matrix at p={p} must be an invertible {dim}x{dim}")
        if seen[p].shape != (dim, dim):
            raise DimensionMismatch(f"Frobenius at p={p} has shape {seen[p].shape}, expected {(dim, dim)}")
        seen[p] = eps.inverse() @ seen[p] @ eps
    B = None
    if tail_basis is not None:
        B = tail_basis if isinstance(tail_basis, Matrix) else _square(tail_basis, dim, "tail basis")
        if B == Matrix.identity(dim):
            B = None
    M = OgusObject(dim, tail, tuple(sorted(seen.items())), B)
    validate(M)
    return M


def validate(M: OgusObject) -> None:
    """Raise unless M satisfies every structural invariant."""
    if len(M.tail) != M.dim:
        raise DimensionMismatch(f"tail has {len(M.tail)} twists for a {M.dim}-dimensional object")
    if any(not isinstance(n, int) or isinstance(n, bool) for n in M.tail):
        raise DimensionMismatch("tail twists must be integers")
    if M.tail_basis is not None:
        if M.tail_basis.shape != (M.dim, M.dim) or not M.tail_basis.is_invertible():
            raise DimensionMismatch("tail basis must be an invertible dim x dim matrix")
    seen = set()
    for p, phi in M.exceptional:
        if not is_prime(p):
            raise InvalidPlace(f"{p!r} is not a prime")
        if p in seen:
            raise DuplicatePlace(p)
        seen.add(p)
        if phi.shape != (M.dim, M.dim):
            raise DimensionMismatch(f"Frobenius at p={p} has shape {phi.shape}, expected {(M.dim, M.dim)}")
        if not phi.is_invertible():
            raise NonInvertibleFrobenius(p)
    if list(seen) != sorted(seen):
        raise DimensionMismatch("exceptional places must be sorted")


def unit_object() -> OgusObject:
    """The unit object Q."""
    return OgusObject(1, (0,))


def tate_object(n: int) -> OgusObject:
    """Q(n): Frobenius p^-n at every prime."""
    return OgusObject(1, (n,))


def zero_object() -> OgusObject:
    return OgusObject(0, ())


def tate_twist(M: OgusObject, n: int) -> OgusObject:
    exc = tuple((p, phi * Fraction(p) ** (-n)) for p, phi in M.exceptional)
    return OgusObject(M.dim, tuple(t + n for t in M.tail), exc, M.tail_basis)


def direct_sum(*objects: OgusObject) -> OgusObject:
    objs = [base_of(X) for X in objects]
    if not objs:
        return zero_object()
    places = sorted({p for X in objs for p in X.places})
    exc = tuple((p, Matrix.block_diag(*(X.frobenius(p) for X in objs))) for p in places)
    tail = sum((X.tail for X in objs), ())
    B = None
    if any(X.tail_basis is not None for X in objs):
        B = Matrix.block_diag(*(X.basis for X in objs))
    return OgusObject(sum(X.dim for X in objs), tail, exc, B)


def change_basis(M: OgusObject, P: Matrix) -> OgusObject:
    """The isomorphic object whose de Rham coordinates are ``P @ old``."""
    Pinv = P.inverse()
    exc = tuple((p, P @ phi @ Pinv) for p, phi in M.exceptional)
    B = P @ M.basis
    return OgusObject(M.dim, M.tail, exc, None if B == Matrix.identity(M.dim) else B)


# ----------------------------------------------------------------- morphisms


def commutation_operator(phi_src: Matrix, phi_tgt: Matrix) -> Matrix:
    """Matrix of ``F -> F @ phi_src - phi_tgt @ F`` on row-major vec(F)."""
    n, m = phi_tgt.rows, phi_src.rows
    return Matrix.identity(n).kron(phi_src.T) - phi_tgt.kron(Matrix.identity(m))


def tail_constraints(M, N) -> Matrix:
    """Rows cutting out the F commuting with the tail Frobenius at almost all p.

    In tail coordinates ``B_N^-1 F B_M`` the (j, i) entry must vanish whenever
    the twists differ; one prime with distinct powers already forces this, and
    infinitely many primes force nothing more.
    """
    M, N = base_of(M), base_of(N)
    Binv, B = N._basis_inv, M.basis
    rows = []
    for j, nj in enumerate(N.tail):
        for i, mi in enumerate(M.tail):
            if nj != mi:
                a, b = Binv.row(j), B.col(i)
                rows.append([x * y for x in a for y in b])
    return Matrix(rows, M.dim * N.dim)


def hom_constraints(M, N, places: Iterable[int] = ()) -> Matrix:
    """Stacked linear conditions on vec(f_dR) for f to be an Ogus morphism."""
    M, N = base_of(M), base_of(N)
    allp = sorted(set(M.places) | set(N.places) | set(places))
    blocks = [commutation_operator(M.frobenius(p), N.frobenius(p)) for p in allp]
    blocks.append(tail_constraints(M, N))
    return Matrix.vstack(*blocks, cols=M.dim * N.dim)


@dataclass(frozen=True)
class OgusMorphism:
    """A morphism, determined by its de Rham matrix (target_dim x source_dim).

    Source and target may be plain or filtered objects; for filtered ones the
    matrix must also respect the weight filtrations.
    """
    source: object
    target: object
    f_dR: Matrix
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        S, T = base_of(self.source), base_of(self.target)
        if self.f_dR.shape != (T.dim, S.dim):
            raise DimensionMismatch(
                f"morphism matrix has shape {self.f_dR.shape}, expected {(T.dim, S.dim)}")
        if not self.check:
            return
        for p in sorted(set(S.places) | set(T.places)):
            if self.f_dR @ S.frobenius(p) != T.frobenius(p) @ self.f_dR:
                raise NotAMorphism(f"f_dR does not commute with Frobenius at p={p}")
        tc = tail_constraints(S, T)
        if tc.rows and not (tc @ Matrix.column(self.f_dR.vec())).is_zero():
            raise NotAMorphism("f_dR does not commute with the tail Frobenius")
        respects = getattr(self.target, "respects_filtration", None)
        if respects is not None and hasattr(self.source, "weights"):
            if not respects(self.source, self.f_dR):
                raise NotAMorphism("f_dR does not respect the weight filtrations")

    def __matmul__(self, other: "OgusMorphism") -> "OgusMorphism":
        return compose(self, other)


def identity(M) -> OgusMorphism:
    return OgusMorphism(M, M, Matrix.identity(base_of(M).dim), check=False)


def compose(g: OgusMorphism, f: OgusMorphism) -> OgusMorphism:
    """``g o f``; membership in Hom(source f, target g) is re-verified."""
    if base_of(f.target) != base_of(g.source):
        raise DimensionMismatch("morphisms are not composable")
    return OgusMorphism(f.source, g.target, g.f_dR @ f.f_dR)


def hom_space(M, N) -> list[OgusMorphism]:
    """A basis of Hom(M, N), from one joint linear system."""
    Mb, Nb = base_of(M), base_of(N)
    K = hom_constraints(Mb, Nb).nullspace()
    return [
        OgusMorphism(Mb, Nb, Matrix.unvec(K.col(j), Nb.dim, Mb.dim), check=False)
        for j in range(K.cols)
    ]


# --------------------------------------------------- subobjects and quotients


def _tail_split(M: OgusObject, images: dict[int, Matrix], k: int):
    """Tail twists and basis of a k-dim sub/quotient from per-twist spanning sets."""
    tail, cols = [], []
    for n in dict.fromkeys(M.tail):
        V = images.get(n)
        if V is None or V.cols == 0:
            continue
        for j in range(V.cols):
            tail.append(n)
            cols.append(V.columns([j]))
    if len(tail) != k:
        # the span is not a sum of tail eigenspaces, so not stable at tail places
        raise FrobeniusInstability(None, 0)
    B = Matrix.hstack(*cols, rows=k) if cols else Matrix.zeros(0, 0)
    return tuple(tail), (None if B == Matrix.identity(k) else B)


def subobject(M, S: Matrix) -> tuple[OgusObject, Matrix]:
    """The subobject spanned by the (independent) columns of S, and its inclusion."""
    M = base_of(M)
    k = S.cols
    exc = []
    for p, phi in M.exceptional:
        try:
            exc.append((p, coordinates(S, phi @ S)))
        except ValueError:
            raise FrobeniusInstability(p, 0) from None
    span = Subspace(M.dim, S)
    images = {}
    for n, V in M.twist_spaces.items():
        W = span.intersection(Subspace(M.dim, V))
        images[n] = coordinates(S, W.basis) if W.dim else Matrix.zeros(k, 0)
    tail, B = _tail_split(M, images, k)
    return OgusObject(k, tail, tuple(exc), B), S


def quotient_object(M, S: Matrix) -> tuple[OgusObject, Matrix, Matrix]:
    """``M / span(S)`` with its projection and a (non-equivariant) linear section."""
    M = base_of(M)
    span = Subspace(M.dim, S)
    C = span.complement_basis()
    k = C.cols
    T = Matrix.hstack(span.basis, C, rows=M.dim)
    P = T.inverse().submatrix(range(span.dim, M.dim), None)
    exc = []
    for p, phi in M.exceptional:
        if not span.contains(phi @ span.basis):
            raise FrobeniusInstability(p, 0)
        exc.append((p, P @ phi @ C))
    images = {n: (P @ V).column_space() for n, V in M.twist_spaces.items()}
    tail, B = _tail_split(M, images, k)
    return OgusObject(k, tail, tuple(exc), B), P, C


def kernel(f: OgusMorphism) -> tuple[OgusObject, OgusMorphism]:
    K, S = subobject(f.source, f.f_dR.nullspace())
    return K, OgusMorphism(K, base_of(f.source), S, check=False)


def cokernel(f: OgusMorphism) -> tuple[OgusObject, OgusMorphism]:
    Q, P, _ = quotient_object(f.target, f.f_dR.column_space())
    return Q, OgusMorphism(base_of(f.target), Q, P, check=False)


def image(f: OgusMorphism) -> tuple[OgusObject, OgusMorphism, OgusMorphism]:
    """``(I, M ->> I, I >-> N)`` with the two maps composing to f."""
    S = f.f_dR.column_space()
    I, _ = subobject(f.target, S)
    onto = OgusMorphism(base_of(f.source), I, coordinates(S, f.f_dR), check=False)
    into = OgusMorphism(I, base_of(f.target), S, check=False)
    return I, onto, into


def is_isomorphism(f: OgusMorphism) -> bool:
    return f.f_dR.is_square() and f.f_dR.is_invertible()


def internal_hom(M, N) -> OgusObject:
    """Hom(M_dR, N_dR) with Frobenius ``f -> phi_N f phi_M^-1``.

    Coordinates are row-major: entry (j, i) of f sits at index ``j*dim M + i``.
    """
    M, N = base_of(M), base_of(N)
    places = sorted(set(M.places) | set(N.places))
    exc = tuple(
        (p, N.frobenius(p).kron(M.frobenius(p).inverse().T)) for p in places
    )
    tail = tuple(nj - mi for nj in N.tail for mi in M.tail)
    B = None
    if M.tail_basis is not None or N.tail_basis is not None:
        B = N.basis.kron(M._basis_inv.T)
    return OgusObject(M.dim * N.dim, tail, exc, B)


def same_object(M, N) -> bool:
    """Equality of the represented objects, independent of presentation."""
    M, N = base_of(M), base_of(N)
    if M.dim != N.dim or sorted(M.tail) != sorted(N.tail):
        return False
    for p in sorted(set(M.places) | set(N.places)):
        if M.frobenius(p) != N.frobenius(p):
            return False
    for n, V in M.twist_spaces.items():
        if Subspace(M.dim, V) != Subspace(N.dim, N.twist_spaces.get(n, Matrix.zeros(N.dim, 0))):
            return False
    return True
