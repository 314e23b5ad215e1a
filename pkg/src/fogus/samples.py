"""Seeded random generators for objects, cocycles and complexes.

Everything takes a :class:`random.Random` so results are reproducible.
Objects are built from pure "atoms" (a Tate twist times a finite-order,
unipotent or identity matrix at a few primes), glued block upper-triangularly
in increasing weight, then put in a random basis.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .exactq import Matrix
from . import ogus_core as og
from . import weights as wt
from .complexes import FOgComplex, make_complex
from .homext import Cocycle, make_cocycle, w0_basis
from .weights import FOgObject

__all__ = [
    "random_rational",
    "random_matrix",
    "random_invertible",
    "random_pure_block",
    "random_fog",
    "random_fog_pair",
    "random_w0",
    "random_cocycle",
    "random_complex",
    "random_b",
]

PLACES = (2, 3, 5, 7)

# rational matrices whose eigenvalues are roots of unity or 1
_FINITE_ORDER = {
    1: [[[1]], [[-1]]],
    2: [[[0, -1], [1, 0]], [[0, -1], [1, -1]], [[0, 1], [1, 0]], [[1, 1], [0, 1]], [[1, 0], [0, 1]]],
    3: [[[0, 0, 1], [1, 0, 0], [0, 1, 0]], [[1, 1, 0], [0, 1, 1], [0, 0, 1]]],
}


def random_rational(rng: random.Random, size: int = 5, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, den))


def random_matrix(rng: random.Random, rows: int, cols: int, size: int = 5, den: int = 3) -> Matrix:
    return Matrix([[random_rational(rng, size, den) for _ in range(cols)] for _ in range(rows)], cols)


def random_invertible(rng: random.Random, n: int, size: int = 3) -> Matrix:
    while True:
        P = random_matrix(rng, n, n, size, 1)
        if P.is_invertible():
            return P


def random_pure_block(rng: random.Random, dim: int, twist: int, p: int) -> Matrix:
    """``p^-twist`` times a conjugate of a finite-order or unipotent matrix."""
    K = Matrix(rng.choice(_FINITE_ORDER[dim]), dim)
    P = random_invertible(rng, dim)
    return (P @ K @ P.inverse()) * Fraction(p) ** (-twist)


def random_fog(rng: random.Random, dim: int | None = None, twists=None,
               places=PLACES, n_places: int | None = None, basis_change: bool = True,
               fog_prime: bool = False) -> FOgObject:
    """A mixed object: blocks of distinct twists glued at a few exceptional primes.

    ``twists`` lists one twist per block (duplicates are merged); weights
    are ``-2 * twist``.
    """
    if dim is None:
        dim = rng.randint(1, 3)
    if twists is None:
        k = rng.randint(1, dim)
        twists = rng.sample([-1, 0, 1], min(k, 3))
    twists = sorted(set(twists), reverse=True)  # ascending weight
    k = len(twists)
    sizes = [1] * k
    for _ in range(dim - k):
        sizes[rng.randrange(k)] += 1
    if n_places is None:
        n_places = rng.randint(1, 2)
    chosen = sorted(rng.sample(list(places), n_places))
    starts = [sum(sizes[:j]) for j in range(k)]
    exc = {}
    for p in chosen:
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        for j, (n, s) in enumerate(zip(twists, sizes)):
            blk = random_pure_block(rng, s, n, p)
            for a in range(s):
                for b in range(s):
                    rows[starts[j] + a][starts[j] + b] = blk[a, b]
            for c in range(starts[j] + s, dim):  # glue to heavier blocks
                for a in range(s):
                    rows[starts[j] + a][c] = random_rational(rng, 2, 2)
        exc[p] = Matrix(rows, dim)
    tail = [n for n, s in zip(twists, sizes) for _ in range(s)]
    base = og.make_object(dim, tail, exc)
    steps = [(-2 * n, Matrix.identity(dim).columns(range(starts[j] + sizes[j])))
             for j, n in enumerate(twists)]
    X = wt.fog_object(base, steps, fog_prime=fog_prime)
    if basis_change:
        X = wt.change_basis_fog(X, random_invertible(rng, dim))
    return X


def random_fog_pair(rng: random.Random, max_dim: int = 3) -> tuple[FOgObject, FOgObject]:
    """Two objects that often have nonzero Homs between them."""
    M = random_fog(rng, rng.randint(1, max_dim))
    roll = rng.random()
    if roll < 0.4:
        N = wt.change_basis_fog(M, random_invertible(rng, M.dim))
    elif roll < 0.6 and M.dim < max_dim:
        extra = random_fog(rng, rng.randint(1, max_dim - M.dim))
        N = wt.change_basis_fog(wt.direct_sum_fog(M, extra), random_invertible(rng, M.dim + extra.dim))
    else:
        N = random_fog(rng, rng.randint(1, max_dim))
    return M, N


def random_w0(rng: random.Random, M, N, mode: str | None = None) -> Matrix:
    basis = w0_basis(M, N, mode)
    out = Matrix.zeros(N.dim, M.dim)
    for b in basis:
        out = out + b * random_rational(rng)
    return out


def random_cocycle(rng: random.Random, M, N, mode: str | None = None,
                   places=(2, 3, 5, 7, 11), tail: bool = True) -> Cocycle:
    support = rng.sample(list(places), rng.randint(0, 3))
    g = random_w0(rng, M, N, mode) if tail else None
    return make_cocycle(M, N, g, {p: random_w0(rng, M, N, mode) for p in sorted(support)}, mode)


# ---------------------------------------------------------------- complexes


def _atoms() -> list[FOgObject]:
    U = og.make_object(2, (0, 0), {2: [[1, 1], [0, 1]]})
    R = og.make_object(2, (0, 0), {3: [[0, -1], [1, 0]]})
    A = og.make_object(1, (0,), {2: [[-1]]})
    return [wt.unit_fog(), wt.tate_fog(1), wt.fog_object(U, [(0, Matrix.identity(2))]),
            wt.fog_object(R, [(0, Matrix.identity(2))]), wt.fog_object(A, [(0, Matrix.identity(1))])]


def _random_term(rng: random.Random, atoms, max_dim: int, previous=()) -> tuple[FOgObject, list]:
    """A direct sum of atoms, reusing one of ``previous`` most of the time."""
    parts, dim = [], 0
    if previous and rng.random() < 0.8:
        parts.append(rng.choice(previous))
        dim = parts[0].dim
    for _ in range(rng.randint(0 if parts else 1, 1)):
        a = rng.choice(atoms)
        if dim + a.dim <= max_dim:
            parts.append(a)
            dim += a.dim
    X = wt.direct_sum_fog(*parts)
    return wt.change_basis_fog(X, random_invertible(rng, X.dim)), parts


def _random_hom(rng: random.Random, X, Y) -> Matrix:
    out = Matrix.zeros(Y.dim, X.dim)
    for f in wt.hom_space_fog(X, Y):
        out = out + f.f_dR * rng.randint(-2, 2)
    return out


def random_complex(rng: random.Random, length: int | None = None, max_dim: int = 3,
                   start: int = 0) -> FOgComplex:
    """Terms in degrees ``start .. start+length-1`` with d o d = 0 by construction."""
    atoms = _atoms()
    if length is None:
        length = rng.randint(1, 3)
    terms, parts = {}, ()
    for j in range(length):
        terms[start + j], parts = _random_term(rng, atoms, max_dim, parts)
    diffs = {}
    for i in range(start, start + length - 1):
        X, Y = terms[i], terms[i + 1]
        if i - 1 in diffs:
            Q, proj = wt.fog_cokernel(og.OgusMorphism(terms[i - 1], X, diffs[i - 1], check=False))
            diffs[i] = _random_hom(rng, Q, Y) @ proj.f_dR if Q.dim else Matrix.zeros(Y.dim, X.dim)
        else:
            diffs[i] = _random_hom(rng, X, Y)
    return make_complex(terms, diffs)


def random_b(rng: random.Random, M: FOgComplex, N: FOgComplex, probe) -> dict[int, dict[int, Matrix]]:
    """A random degree-0 element ``b[p][i]`` of the per-place Hom complex."""
    out: dict[int, dict[int, Matrix]] = {}
    for p in probe:
        for i in M.degrees:
            X, Y = M.term(i), N.term(i)
            if X.dim and Y.dim:
                out.setdefault(p, {})[i] = random_w0(rng, X, Y, "fog")
    return out
