"""Exact rational linear algebra and certified root-modulus enclosures.

Everything here works over :class:`fractions.Fraction`.  Matrices are small
and dense; no attempt is made at asymptotically fast algorithms.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np

Rational = Fraction

__all__ = [
    "Rational",
    "to_rational",
    "format_rational",
    "Matrix",
    "Subspace",
    "Polynomial",
    "ModulusInterval",
    "rref",
    "solve",
    "charpoly",
    "certified_root_moduli",
    "sqrt_bounds",
    "roots_on_circle",
    "coordinates",
]


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction.

    Floats are rejected: every input to this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE_ "):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    """Canonical string form: ``"a"`` or ``"a/b"`` in lowest terms."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Matrix:
    """Immutable dense matrix over Q.

    >>> Matrix([[1, 2], [3, 4]]) @ Matrix.identity(2) == Matrix([[1, 2], [3, 4]])
    True
    """

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: Iterable[Iterable], cols: int | None = None):
        data = tuple(tuple(to_rational(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(data)
        self.cols = cols
        self._data = data
        self._hash = None

    @classmethod
    def _raw(cls, data: tuple, rows: int, cols: int) -> "Matrix":
        m = object.__new__(cls)
        m.rows, m.cols, m._data, m._hash = rows, cols, data, None
        return m

    # constructors
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        z = Fraction(0)
        return cls._raw(tuple((z,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one, z = Fraction(1), Fraction(0)
        return cls._raw(
            tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)), n, n
        )

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        z = Fraction(0)
        vals = [to_rational(e) for e in entries]
        return cls._raw(
            tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)), n, n
        )

    @classmethod
    def column(cls, entries: Sequence) -> "Matrix":
        return cls([[e] for e in entries], 1)

    @classmethod
    def hstack(cls, *blocks: "Matrix", rows: int | None = None) -> "Matrix":
        if rows is None:
            if not blocks:
                raise ValueError("hstack of nothing needs an explicit row count")
            rows = blocks[0].rows
        for b in blocks:
            if b.rows != rows:
                raise ValueError("hstack: row counts differ")
        data = tuple(sum((b._data[i] for b in blocks), ()) for i in range(rows))
        return cls._raw(data, rows, sum(b.cols for b in blocks))

    @classmethod
    def vstack(cls, *blocks: "Matrix", cols: int | None = None) -> "Matrix":
        if cols is None:
            if not blocks:
                raise ValueError("vstack of nothing needs an explicit column count")
            cols = blocks[0].cols
        for b in blocks:
            if b.cols != cols:
                raise ValueError("vstack: column counts differ")
        return cls._raw(sum((b._data for b in blocks), ()), sum(b.rows for b in blocks), cols)

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[Fraction(0)] * m for _ in range(n)]
        r = c = 0
        for b in blocks:
            for i in range(b.rows):
                out[r + i][c:c + b.cols] = b._data[i]
            r += b.rows
            c += b.cols
        return cls._raw(tuple(tuple(row) for row in out), n, m)

    @classmethod
    def block(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        return cls.vstack(*(cls.hstack(*row) for row in grid))

    @classmethod
    def unvec(cls, v: Sequence, rows: int, cols: int) -> "Matrix":
        """Inverse of :meth:`vec` (row-major)."""
        flat = [to_rational(x) for x in v]
        if len(flat) != rows * cols:
            raise ValueError("unvec: wrong length")
        return cls._raw(
            tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows)), rows, cols
        )

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def vec(self) -> list[Fraction]:
        """Row-major flattening, so ``vec(A X B) = kron(A, B.T) vec(X)``."""
        return [x for r in self._data for x in r]

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None):
        rows = range(self.rows) if rows is None else rows
        cols = range(self.cols) if cols is None else cols
        cols = list(cols)
        data = tuple(tuple(self._data[i][j] for j in cols) for i in rows)
        return Matrix._raw(data, len(data), len(cols))

    def columns(self, idx: Sequence[int]) -> "Matrix":
        return self.submatrix(None, idx)

    # arithmetic
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.rows, self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.rows, self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._data), self.rows, self.cols)

    def __mul__(self, scalar) -> "Matrix":
        if isinstance(scalar, Matrix):
            raise TypeError("use @ for matrix products")
        c = to_rational(scalar)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._data), self.rows, self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = list(zip(*other._data)) if other.rows else [()] * other.cols
        data = []
        for r in self._data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in ocols:
                s = Fraction(0)
                for k, a in nz:
                    b = c[k]
                    if b:
                        s += a * b
                row.append(s)
            data.append(tuple(row))
        return Matrix._raw(tuple(data), self.rows, other.cols)

    @property
    def T(self) -> "Matrix":
        if not self.rows:
            return Matrix.zeros(self.cols, 0)
        return Matrix._raw(tuple(zip(*self._data)), self.cols, self.rows)

    def kron(self, other: "Matrix") -> "Matrix":
        data = []
        for r in self._data:
            for s in other._data:
                data.append(tuple(a * b for a in r for b in s))
        return Matrix._raw(tuple(data), self.rows * other.rows, self.cols * other.cols)

    def is_zero(self) -> bool:
        return all(not a for r in self._data for a in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def rank(self) -> int:
        return len(rref(self, False)[1])

    def det(self) -> Fraction:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        a = [list(r) for r in self._data]
        n = self.rows
        det = Fraction(1)
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c]), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            det *= a[c][c]
            inv = 1 / a[c][c]
            for r in range(c + 1, n):
                if a[r][c]:
                    f = a[r][c] * inv
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return det

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        R, piv, T = rref(self)
        if len(piv) != self.rows:
            raise ZeroDivisionError("matrix is singular")
        return T

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def nullspace(self) -> "Matrix":
        """Columns spanning ``{x : A x = 0}``, one per free column of the RREF."""
        R, piv, _ = rref(self, False)
        return _kernel_from_rref(R, piv, self.cols)

    def column_space(self) -> "Matrix":
        """Canonical basis (reduced echelon columns) of the column span."""
        R, piv, _ = rref(self.T, False)
        if not piv:
            return Matrix.zeros(self.rows, 0)
        return R.submatrix(range(len(piv)), None).T

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self._data)
        return f"Matrix([{body}], {self.cols})" if not self.rows else f"Matrix([{body}])"


def _integer_rows(rows) -> list[list[int]]:
    """Scale each row of Fractions to a primitive integer row."""
    out = []
    for r in rows:
        den = math.lcm(*(x.denominator for x in r)) if r else 1
        ints = [x.numerator * (den // x.denominator) for x in r]
        g = math.gcd(*ints) if ints else 0
        out.append([v // g for v in ints] if g > 1 else ints)
    return out


def _eliminate(rows: list[list[int]], m: int) -> list[int]:
    """Fraction-free Gauss-Jordan on the first m columns, in place.

    Rows are kept primitive (divided by their content) so entries stay small.
    """
    n = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(m):
        if r == n:
            break
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        a = pr[c]
        for i in range(n):
            b = rows[i][c]
            if i != r and b:
                new = [a * x - b * y for x, y in zip(rows[i], pr)]
                g = math.gcd(*new)
                rows[i] = [v // g for v in new] if g > 1 else new
        pivots.append(c)
        r += 1
    return pivots


def _kernel_from_rref(R: Matrix, piv: list[int], n: int) -> Matrix:
    """Kernel basis of the first n columns of a reduced matrix."""
    pivset = set(piv)
    vecs = []
    for f in range(n):
        if f in pivset:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -R[i, f]
        vecs.append(v)
    if not vecs:
        return Matrix.zeros(n, 0)
    return Matrix(vecs, n).T


def rref(A: Matrix, transform: bool = True) -> tuple[Matrix, list[int], Matrix | None]:
    """Reduced row-echelon form ``R = T @ A`` with T invertible.

    Pivots are chosen leftmost-first, top-down, so the result is deterministic.
    With ``transform=False`` T is not tracked and None is returned in its place.
    """
    n, m = A.rows, A.cols
    if transform:
        one, zero = Fraction(1), Fraction(0)
        src = [A.row(i) + tuple(one if i == j else zero for j in range(n)) for i in range(n)]
    else:
        src = [A.row(i) for i in range(n)]
    rows = _integer_rows(src)
    pivots = _eliminate(rows, m)
    out = []
    for i, row in enumerate(rows):
        a = row[pivots[i]] if i < len(pivots) else 1
        out.append(tuple(Fraction(x, a) for x in row))
    R = Matrix._raw(tuple(row[:m] for row in out), n, m)
    T = Matrix._raw(tuple(row[m:] for row in out), n, n) if transform else None
    return R, pivots, T


class Subspace:
    """A subspace of Q^n, stored by a canonical column basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, spanning: Matrix | None = None):
        self.ambient_dim = ambient_dim
        if spanning is None or spanning.cols == 0:
            self.basis = Matrix.zeros(ambient_dim, 0)
        else:
            if spanning.rows != ambient_dim:
                raise ValueError("spanning vectors have the wrong length")
            self.basis = spanning.column_space()

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @property
    def dim(self) -> int:
        return self.basis.cols

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace({self.ambient_dim}, dim={self.dim})"

    def contains(self, vectors: Matrix) -> bool:
        """True iff every column of ``vectors`` lies in the subspace."""
        if vectors.cols == 0:
            return True
        return Matrix.hstack(self.basis, vectors, rows=self.ambient_dim).rank() == self.dim

    __contains__ = contains

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient_dim, Matrix.hstack(self.basis, other.basis, rows=self.ambient_dim))

    def annihilator(self) -> Matrix:
        """Rows ``a`` with ``a @ v = 0`` for all v in the subspace."""
        if self.dim == 0:
            return Matrix.identity(self.ambient_dim)
        return self.basis.T.nullspace().T

    def intersection(self, other: "Subspace") -> "Subspace":
        ann = Matrix.vstack(self.annihilator(), other.annihilator(), cols=self.ambient_dim)
        return Subspace(self.ambient_dim, ann.nullspace())

    def complement_basis(self) -> Matrix:
        """Standard basis vectors completing ``basis`` to a basis of Q^n."""
        _, piv, _ = rref(self.basis.T, False)
        free = [j for j in range(self.ambient_dim) if j not in set(piv)]
        I = Matrix.identity(self.ambient_dim)
        return I.columns(free)

    def coordinates(self, vectors: Matrix) -> Matrix:
        """Coordinates of ``vectors`` (which must lie in the subspace) in ``basis``."""
        return coordinates(self.basis, vectors)


def solve(A: Matrix, b: Matrix) -> tuple[Matrix, Subspace] | None:
    """Solve ``A x = b`` exactly.

    Returns ``(particular, kernel)`` with free variables set to zero in the
    particular solution, or None when ``b`` is not in the column space.
    ``b`` may have several columns; the particular solution then has as many.
    """
    if b.rows != A.rows:
        raise ValueError(f"dimension mismatch: A has {A.rows} rows, b has {b.rows}")
    aug = Matrix.hstack(A, b, rows=A.rows)
    R, piv, _ = rref(aug, False)
    if any(p >= A.cols for p in piv):
        return None
    x = [[Fraction(0)] * b.cols for _ in range(A.cols)]
    for i, p in enumerate(piv):
        for k in range(b.cols):
            x[p][k] = R[i, A.cols + k]
    part = Matrix._raw(tuple(tuple(r) for r in x), A.cols, b.cols)
    return part, Subspace(A.cols, _kernel_from_rref(R, piv, A.cols))


def coordinates(basis: Matrix, vectors: Matrix) -> Matrix:
    """Unique X with ``basis @ X == vectors``; raises if vectors leave the span."""
    if basis.cols == 0:
        if not vectors.is_zero():
            raise ValueError("vectors are not in the zero subspace")
        return Matrix.zeros(0, vectors.cols)
    sol = solve(basis, vectors)
    if sol is None:
        raise ValueError("vectors are not in the span of the basis")
    return sol[0]


# ---------------------------------------------------------------- polynomials


class Polynomial:
    """Univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [to_rational(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Polynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-to_rational(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = to_rational(other)
            return Polynomial(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs) + 1
        if dq <= 0:
            return Polynomial(), self
        q = [Fraction(0)] * dq
        lead = other.coeffs[-1]
        for k in range(dq - 1, -1, -1):
            c = r[k + len(other.coeffs) - 1] / lead
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] -= c * b
        return Polynomial(q), Polynomial(r[:len(other.coeffs) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self * (1 / self.leading)

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def reversal(self, c=1) -> "Polynomial":
        """``x^d P(c/x)``; its roots are ``c / z`` for the nonzero roots z of P."""
        c = to_rational(c)
        d = self.degree
        return Polynomial(self.coeffs[d - j] * c ** (d - j) for j in range(d + 1))

    def graeffe(self) -> "Polynomial":
        """Monic-up-to-sign polynomial whose roots are the squares of the roots."""
        d = self.degree
        minus = Polynomial((-1) ** k * a for k, a in enumerate(self.coeffs))
        prod = self * minus
        even = prod.coeffs[::2]
        return Polynomial(even) * ((-1) ** d)

    def squarefree_decomposition(self) -> list[tuple["Polynomial", int]]:
        """Yun's algorithm: monic square-free ``f_k`` with ``P = lc * prod f_k^k``."""
        if self.degree < 1:
            return []
        f = self.monic()
        out = []
        fp = f.derivative()
        a = f.gcd(fp)
        b = f // a
        c = fp // a
        d = c - b.derivative()
        k = 1
        while b.degree > 0:
            g = b.gcd(d)
            if g.degree > 0:
                out.append((g, k))
            b = b // g
            c = d // g
            d = c - b.derivative()
            k += 1
        return out

    def sturm_count(self, lo: Fraction, hi: Fraction) -> int:
        """Distinct real roots in the closed interval [lo, hi]."""
        if self.degree < 1:
            return 0
        f = self // self.gcd(self.derivative())
        n = 0
        for end in {lo, hi}:
            if f(end) == 0:
                f = f // Polynomial([-end, 1])
                n += 1
        if f.degree < 1:
            return n
        seq = [f, f.derivative()]
        while seq[-1].degree > 0:
            r = seq[-2] % seq[-1]
            if r.is_zero():
                break
            seq.append(-r)

        def variations(x):
            vals = [v for v in (p(x) for p in seq) if v]
            return sum(1 for u, v in zip(vals, vals[1:]) if (u < 0) != (v < 0))

        return n + variations(lo) - variations(hi)

    def real_root_count(self, lo: Fraction, hi: Fraction) -> int:
        """Real roots in [lo, hi] counted with multiplicity."""
        total = 0
        g = self
        k = 1
        while g.degree >= 1:
            total += g.sturm_count(lo, hi)
            g = g.gcd(self._derivative_n(k))
            k += 1
        return total

    def _derivative_n(self, k: int) -> "Polynomial":
        p = self
        for _ in range(k):
            p = p.derivative()
        return p


def charpoly(A: Matrix) -> Polynomial:
    """``det(xI - A)`` by the Faddeev-LeVerrier recursion."""
    if not A.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = A.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = Matrix.zeros(n, n)
    I = Matrix.identity(n)
    for k in range(1, n + 1):
        M = A @ M + I * coeffs[n - k + 1]
        AM = A @ M
        tr = sum((AM[i, i] for i in range(n)), Fraction(0))
        coeffs[n - k] = -tr / k
    return Polynomial(coeffs)


# ------------------------------------------------------- certified root moduli


class ModulusInterval:
    """Closed rational interval enclosing ``multiplicity`` root moduli."""

    __slots__ = ("lower", "upper", "multiplicity")

    def __init__(self, lower, upper, multiplicity: int = 1):
        self.lower = to_rational(lower)
        self.upper = to_rational(upper)
        self.multiplicity = multiplicity
        if not 0 <= self.lower <= self.upper:
            raise ValueError("modulus interval must satisfy 0 <= lower <= upper")
        if multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, x) -> bool:
        return self.lower <= to_rational(x) <= self.upper

    def contains_sqrt(self, s) -> bool:
        """True iff ``sqrt(s)`` lies in the interval, decided exactly."""
        s = to_rational(s)
        return self.lower ** 2 <= s <= self.upper ** 2

    def excludes_sqrt(self, s) -> bool:
        return not self.contains_sqrt(s)

    def __eq__(self, other):
        if not isinstance(other, ModulusInterval):
            return NotImplemented
        return (self.lower, self.upper, self.multiplicity) == (
            other.lower, other.upper, other.multiplicity)

    def __repr__(self):
        return (f"ModulusInterval({format_rational(self.lower)}, "
                f"{format_rational(self.upper)}, multiplicity={self.multiplicity})")


def sqrt_bounds(s: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rationals ``lo <= sqrt(s) <= hi`` with ``hi - lo <= 2**-bits``."""
    if s < 0:
        raise ValueError("square root of a negative number")
    scale = 4 ** bits
    num, den = s.numerator * scale, s.denominator
    lo_int = math.isqrt(num // den)
    lo = Fraction(lo_int, 2 ** bits)
    hi = lo if Fraction(lo_int * lo_int) * den == num else Fraction(lo_int + 1, 2 ** bits)
    return lo, hi


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _ceval(coeffs: Sequence[Fraction], z) -> tuple[Fraction, Fraction]:
    acc = (Fraction(0), Fraction(0))
    for c in reversed(coeffs):
        acc = _cmul(acc, z)
        acc = (acc[0] + c, acc[1])
    return acc


def _abs2(z) -> Fraction:
    return z[0] * z[0] + z[1] * z[1]


def _mp_to_fraction(x) -> Fraction:
    # read the raw tuple: wrapping in mpf() would round to the ambient precision
    sign, man, exp, _ = x._mpf_
    value = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -value if sign else value


def _approximate_roots(f: Polynomial, dps: int) -> list:
    """Floating approximations of the roots of a square-free f, polished at ``dps``."""
    coeffs_high = [float(c) for c in reversed(f.coeffs)]
    try:
        guesses = list(np.roots(coeffs_high))  # eigenvalues of the companion matrix
    except (np.linalg.LinAlgError, OverflowError, ValueError):
        guesses = []
    with mpmath.workdps(dps):
        mcoeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(f.coeffs)]
        if len(guesses) != f.degree or not all(np.isfinite(guesses)):
            return list(mpmath.polyroots(mcoeffs, maxsteps=200, extraprec=4 * dps))
        roots = []
        dcoeffs = [mcoeffs[i] * (len(mcoeffs) - 1 - i) for i in range(len(mcoeffs) - 1)]
        for g in guesses:
            z = mpmath.mpc(g.real, g.imag)
            for _ in range(8 + dps // 4):
                fz = mpmath.polyval(mcoeffs, z)
                dz = mpmath.polyval(dcoeffs, z)
                if dz == 0:
                    break
                step = fz / dz
                z -= step
                if abs(step) <= abs(z) * mpmath.mpf(2) ** (-3.4 * dps) + mpmath.mpf(10) ** (-dps):
                    break
            roots.append(z)
        return roots


def _certify_squarefree(f: Polynomial, width: Fraction) -> list[tuple[Fraction, Fraction]] | None:
    """Modulus enclosures of every root of square-free ``f``, each of width <= width.

    Each approximation z gets the radius ``n |f(z)| / |f'(z)|``: the disk of that
    radius always contains a root.  When the n disks are pairwise disjoint they
    hold n distinct roots, i.e. all of them, one each.
    """
    n = f.degree
    df = f.derivative().coeffs
    bits = max(64, int(-math.log2(width)) + 16)
    dps = int(bits * 0.302) + 20
    for attempt in range(6):
        approx = _approximate_roots(f, dps)
        pts = []
        for z in approx:
            # round to ``bits`` binary digits to keep the exact arithmetic small
            re = Fraction(round(_mp_to_fraction(z.real) * 2 ** bits), 2 ** bits)
            im = Fraction(round(_mp_to_fraction(z.imag) * 2 ** bits), 2 ** bits)
            pts.append((re, im))
        # conjugate-symmetric points give identical modulus enclosures
        pts = _symmetrize(pts)
        radii = []
        ok = True
        for z in pts:
            fz2 = _abs2(_ceval(f.coeffs, z))
            dz2 = _abs2(_ceval(df, z))
            if dz2 == 0:
                ok = False
                break
            _, r = sqrt_bounds(fz2 / dz2, bits + 8)
            radii.append(n * r)
        if ok:
            for i in range(n):
                for j in range(i + 1, n):
                    d2 = _abs2((pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]))
                    if d2 <= (radii[i] + radii[j]) ** 2:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            out = []
            for z, r in zip(pts, radii):
                lo, hi = sqrt_bounds(_abs2(z), bits + 8)
                lo, hi = max(Fraction(0), lo - r), hi + r
                if hi - lo > width:
                    ok = False
                    break
                out.append((lo, hi))
            if ok:
                return out
        bits *= 2
        dps = int(bits * 0.302) + 20
    return None


def _symmetrize(pts):
    out = list(pts)
    used = [False] * len(out)
    for i, (a, b) in enumerate(out):
        if used[i] or b == 0:
            continue
        best, bestd = None, None
        for j in range(len(out)):
            if j != i and not used[j]:
                d = _abs2((out[j][0] - a, out[j][1] + b))
                if bestd is None or d < bestd:
                    best, bestd = j, d
        if best is not None and bestd < _abs2((0, b)):
            used[i] = used[best] = True
            out[best] = (a, -b)
    return out


def certified_root_moduli(P: Polynomial, precision=Fraction(1, 10 ** 20)) -> list[ModulusInterval]:
    """Rigorous enclosures of the moduli of all complex roots of P.

    Every interval has width <= precision; multiplicities sum to deg P.
    Overlapping enclosures are merged (their multiplicities added).
    """
    precision = to_rational(precision)
    if P.is_zero():
        raise ValueError("root moduli of the zero polynomial")
    if precision <= 0:
        raise ValueError("precision must be positive")
    raw: list[tuple[Fraction, Fraction, int]] = []
    coeffs = list(P.coeffs)
    zeros = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        zeros += 1
    if zeros:
        raw.append((Fraction(0), Fraction(0), zeros))
    Q = Polynomial(coeffs)
    budget = precision / (2 * max(1, P.degree))
    for f, k in Q.squarefree_decomposition():
        if f.degree == 1:
            r = abs(-f.coeffs[0] / f.coeffs[1])
            raw.append((r, r, k))
            continue
        encl = _certify_squarefree(f, budget)
        if encl is None:
            raise ArithmeticError("root isolation failed to certify the enclosures")
        raw.extend((lo, hi, k) for lo, hi in encl)
    raw.sort()
    merged: list[list] = []
    for lo, hi, k in raw:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
            merged[-1][2] += k
        else:
            merged.append([lo, hi, k])
    return [ModulusInterval(lo, hi, k) for lo, hi, k in merged]


def roots_on_circle(P: Polynomial, radius_squared) -> bool:
    """Exact test: do all complex roots of P have ``|z|^2 == radius_squared``?

    Squares the roots (Graeffe) so the radius becomes rational, strips roots at
    +-R, writes the remaining R-reciprocal polynomial as ``x^m T(x + R^2/x)``
    and counts the real roots of T in [-2R, 2R] with Sturm sequences.
    """
    R = to_rational(radius_squared)
    if R <= 0 or P.degree < 1:
        return P.degree < 1
    if P.coeffs[0] == 0:
        return False
    G = P.graeffe().monic()
    for root in (R, -R):
        lin = Polynomial([-root, 1])
        while G.degree >= 1 and G(root) == 0:
            G = G // lin
    if G.degree == 0:
        return True
    if G.degree % 2:
        return False
    m = G.degree // 2
    T = [Fraction(0)] * (m + 1)
    S = G
    base = Polynomial([R * R, 0, 1])  # x^2 + R^2
    for k in range(m, -1, -1):
        c = S.coeffs[m + k] if len(S.coeffs) > m + k else Fraction(0)
        T[k] = c
        if c:
            S = S - (base ** k) * Polynomial([0] * (m - k) + [c])
    if not S.is_zero():
        return False
    Tp = Polynomial(T)
    return Tp.real_root_count(-2 * R, 2 * R) == m
