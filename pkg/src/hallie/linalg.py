"""Exact linear algebra and subspace enumeration over prime fields F_p.

Matrices are immutable tuples of tuples of plain ints reduced mod p; the
whole package works with exact integer arithmetic, no floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ResourceBound


class PrimeField:
    """Arithmetic context for the field with p elements."""

    __slots__ = ("p", "_inverses")

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {p!r}")
        d = 2
        while d * d <= p:
            if p % d == 0:
                raise ValueError(f"modulus {p} is not prime")
            d += 1
        self.p = p
        self._inverses: tuple[int, ...] | None = None

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        if self._inverses is None:
            p = self.p
            self._inverses = (0,) + tuple(pow(x, p - 2, p) for x in range(1, p))
        return self._inverses[a]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class FMatrix:
    """Immutable matrix over a prime field.

    Explicit row/column counts so zero-by-n and n-by-zero matrices behave.
    """

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: PrimeField, nrows: int, ncols: int,
                 rows: tuple[tuple[int, ...], ...]):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Sequence[Sequence[int]],
                  ncols: int | None = None) -> "FMatrix":
        p = field.p
        reduced = tuple(tuple(x % p for x in row) for row in rows)
        if reduced:
            width = len(reduced[0])
            if any(len(r) != width for r in reduced):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError(f"expected {ncols} columns, got {width}")
            ncols = width
        elif ncols is None:
            raise ValueError("ncols required for a matrix with no rows")
        return cls(field, len(reduced), ncols, reduced)

    @classmethod
    def zeros(cls, field: PrimeField, nrows: int, ncols: int) -> "FMatrix":
        row = (0,) * ncols
        return cls(field, nrows, ncols, tuple(row for _ in range(nrows)))

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "FMatrix":
        return cls(field, n, n,
                   tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.rows)

    def transpose(self) -> "FMatrix":
        rows = tuple(tuple(self.rows[i][j] for i in range(self.nrows))
                     for j in range(self.ncols))
        return FMatrix(self.field, self.ncols, self.nrows, rows)

    def mul(self, other: "FMatrix") -> "FMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        p = self.field.p
        ocols = other.ncols
        orows = other.rows
        out = []
        for row in self.rows:
            acc = [0] * ocols
            for k, a in enumerate(row):
                if a:
                    orow = orows[k]
                    for j in range(ocols):
                        acc[j] += a * orow[j]
            out.append(tuple(x % p for x in acc))
        return FMatrix(self.field, self.nrows, ocols, tuple(out))

    def add(self, other: "FMatrix") -> "FMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in add")
        p = self.field.p
        rows = tuple(tuple((a + b) % p for a, b in zip(r1, r2))
                     for r1, r2 in zip(self.rows, other.rows))
        return FMatrix(self.field, self.nrows, self.ncols, rows)

    def sub(self, other: "FMatrix") -> "FMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in sub")
        p = self.field.p
        rows = tuple(tuple((a - b) % p for a, b in zip(r1, r2))
                     for r1, r2 in zip(self.rows, other.rows))
        return FMatrix(self.field, self.nrows, self.ncols, rows)

    def scale(self, c: int) -> "FMatrix":
        p = self.field.p
        c %= p
        rows = tuple(tuple((c * a) % p for a in row) for row in self.rows)
        return FMatrix(self.field, self.nrows, self.ncols, rows)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(vector) != self.ncols:
            raise ValueError("vector length mismatch")
        p = self.field.p
        return tuple(sum(a * v for a, v in zip(row, vector)) % p for row in self.rows)

    def power(self, n: int) -> "FMatrix":
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        result = FMatrix.identity(self.field, self.nrows)
        base = self
        while n > 0:
            if n & 1:
                result = result.mul(base)
            base = base.mul(base)
            n >>= 1
        return result

    def rank(self) -> int:
        return rref(self).rank

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, FMatrix) and other.field == self.field
                and other.shape == self.shape and other.rows == self.rows)

    def __hash__(self) -> int:
        return hash((self.field.p, self.nrows, self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"FMatrix(p={self.field.p}, {self.nrows}x{self.ncols}, {list(map(list, self.rows))})"


def vstack(field: PrimeField, blocks: Sequence[FMatrix], ncols: int) -> FMatrix:
    rows: list[tuple[int, ...]] = []
    for b in blocks:
        if b.ncols != ncols:
            raise ValueError("column mismatch in vstack")
        rows.extend(b.rows)
    return FMatrix(field, len(rows), ncols, tuple(rows))


def hstack(field: PrimeField, blocks: Sequence[FMatrix], nrows: int) -> FMatrix:
    for b in blocks:
        if b.nrows != nrows:
            raise ValueError("row mismatch in hstack")
    rows = tuple(tuple(itertools.chain.from_iterable(b.rows[i] for b in blocks))
                 for i in range(nrows))
    ncols = sum(b.ncols for b in blocks)
    return FMatrix(field, nrows, ncols, rows)


@dataclass(frozen=True)
class RREF:
    matrix: FMatrix
    rank: int
    pivots: tuple[int, ...]


def rref(m: FMatrix) -> RREF:
    """Reduced row echelon form over F_p. Deterministic: the pivot in each
    column is the first nonzero entry scanning down."""
    p = m.field.p
    rows = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c] % p:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = m.field.inv(rows[r][c])
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    reduced = FMatrix(m.field, nrows, ncols, tuple(tuple(row) for row in rows))
    return RREF(reduced, r, tuple(pivots))


def row_space(m: FMatrix) -> FMatrix:
    """Canonical basis (RREF rows, zero rows dropped) of the row space."""
    res = rref(m)
    return FMatrix(m.field, res.rank, m.ncols, res.matrix.rows[:res.rank])


def column_space(m: FMatrix) -> FMatrix:
    """Canonical basis of the column space, as rows of the result."""
    return row_space(m.transpose())


def solve_nullspace(m: FMatrix) -> list[tuple[int, ...]]:
    """A basis of the right kernel {v : m v = 0}, one vector per free column."""
    res = rref(m)
    p = m.field.p
    pivot_set = set(res.pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = [0] * m.ncols
        v[free] = 1
        for i, c in enumerate(res.pivots):
            v[c] = (-res.matrix.rows[i][free]) % p
        basis.append(tuple(v))
    return basis


def gaussian_binomial(d: int, e: int, p: int) -> int:
    """Number of e-dimensional subspaces of F_p^d, by the product formula."""
    if e < 0 or e > d:
        return 0
    num = 1
    den = 1
    for i in range(1, e + 1):
        num *= p ** (d - e + i) - 1
        den *= p ** i - 1
    return num // den


def enumerate_subspaces(d: int, e: int, field: PrimeField,
                        cap: int = 10_000_000) -> Iterator[FMatrix]:
    """Every e-dimensional subspace of F_p^d, exactly once, as a canonical
    reduced-echelon basis matrix (e rows, d columns).

    Subspaces are generated by pivot-column pattern, then by free entries;
    the count is the Gaussian binomial.  Raises ResourceBound if that count
    exceeds ``cap``.
    """
    if e < 0 or e > d:
        raise ValueError(f"need 0 <= e <= d, got e={e}, d={d}")
    total = gaussian_binomial(d, e, field.p)
    if total > cap:
        raise ResourceBound(
            f"{total} subspaces of dimension {e} in F_{field.p}^{d} exceeds cap {cap}")
    p = field.p
    for pivots in itertools.combinations(range(d), e):
        pivot_set = set(pivots)
        free = [(i, j) for i in range(e) for j in range(pivots[i] + 1, d)
                if j not in pivot_set]
        base = [[0] * d for _ in range(e)]
        for i, c in enumerate(pivots):
            base[i][c] = 1
        if not free:
            yield FMatrix(field, e, d, tuple(tuple(r) for r in base))
            continue
        for values in itertools.product(range(p), repeat=len(free)):
            rows = [row[:] for row in base]
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield FMatrix(field, e, d, tuple(tuple(r) for r in rows))


def quotient_projection(base: FMatrix) -> FMatrix:
    """Projection of F_p^d onto the complement coordinates of an RREF basis:
    a (d-r) x d matrix whose kernel is exactly the row space of ``base``."""
    field = base.field
    d = base.ncols
    res = rref(base)
    pivots = res.pivots
    complement = [j for j in range(d) if j not in set(pivots)]
    # pi(v)_k = v_k - sum_i v[pivot_i] * basis_row_i[k]
    rows = []
    for k in complement:
        row = [0] * d
        row[k] = 1
        for i, c in enumerate(pivots):
            row[c] = (-res.matrix.rows[i][k]) % field.p
        rows.append(tuple(row))
    return FMatrix(field, len(complement), d, tuple(rows))


def preimage_subspace(m: FMatrix, base: FMatrix) -> FMatrix:
    """Canonical basis of {x : m x in rowspace(base)}; m maps F_p^s -> F_p^t
    and ``base`` spans a subspace of F_p^t."""
    proj = quotient_projection(base)
    constrained = proj.mul(m)
    kernel = solve_nullspace(constrained)
    return row_space(FMatrix.from_rows(m.field, kernel, ncols=m.ncols))


def intersect_subspaces(a: FMatrix, b: FMatrix) -> FMatrix:
    """Canonical basis of the intersection of two row spaces."""
    stacked = vstack(a.field, [quotient_projection(a), quotient_projection(b)],
                     ncols=a.ncols)
    kernel = solve_nullspace(stacked)
    return row_space(FMatrix.from_rows(a.field, kernel, ncols=a.ncols))


def subspace_contains(outer: FMatrix, inner: FMatrix) -> bool:
    """Whether rowspace(inner) is contained in rowspace(outer) (outer RREF)."""
    res = rref(outer)
    p = outer.field.p
    pivots = res.pivots
    for v in inner.rows:
        recon = [0] * outer.ncols
        for i, c in enumerate(pivots):
            coeff = v[c] % p
            if coeff:
                row = res.matrix.rows[i]
                for j, val in enumerate(row):
                    recon[j] = (recon[j] + coeff * val) % p
        if tuple(recon) != tuple(x % p for x in v):
            return False
    return True


def subspaces_between(lower: FMatrix, upper: FMatrix, e: int,
                      cap: int = 10_000_000) -> Iterator[FMatrix]:
    """Every e-dimensional subspace W with lower <= W <= upper, as canonical
    RREF bases in the ambient coordinates.

    Both bounds are row spaces in F_p^d; enumeration happens in the
    coordinates of ``upper`` and is lifted back.
    """
    field = lower.field
    d = lower.ncols
    up = rref(upper)
    a = up.rank
    upper_rows = up.matrix.rows[:a]
    if e > a or e < lower.nrows:
        return
    # coordinates of lower inside upper
    coords = []
    p = field.p
    for v in lower.rows:
        cv = tuple(v[c] % p for c in up.pivots)
        recon = [0] * d
        for coeff, row in zip(cv, upper_rows):
            if coeff:
                for j, val in enumerate(row):
                    recon[j] = (recon[j] + coeff * val) % p
        if tuple(recon) != tuple(x % p for x in v):
            return  # lower is not inside upper: nothing between them
        coords.append(cv)
    lower_in_upper = row_space(FMatrix.from_rows(field, coords, ncols=a))
    big = FMatrix(field, a, d, upper_rows)
    for w in enumerate_superspaces(lower_in_upper, e, cap=cap):
        lifted = w.mul(big)
        out = rref(lifted)
        assert out.rank == e
        yield FMatrix(field, e, d, out.matrix.rows[:e])


def enumerate_superspaces(base: FMatrix, e: int,
                          cap: int = 10_000_000) -> Iterator[FMatrix]:
    """Every e-dimensional subspace of F_p^d containing the row space of
    ``base`` (an RREF basis, possibly with zero rows already dropped).

    Lifts subspaces of the quotient along the complement-coordinate section;
    each result is again a canonical RREF basis.
    """
    field = base.field
    d = base.ncols
    res = rref(base)
    r = res.rank
    if e < r:
        return
    if e > d:
        return
    rows_r = res.matrix.rows[:r]
    complement = [j for j in range(d) if j not in set(res.pivots)]
    for w in enumerate_subspaces(len(complement), e - r, field, cap=cap):
        lifted = list(rows_r)
        for wrow in w.rows:
            v = [0] * d
            for k, col in enumerate(complement):
                v[col] = wrow[k]
            lifted.append(tuple(v))
        stacked = FMatrix(field, len(lifted), d, tuple(lifted))
        out = rref(stacked)
        assert out.rank == e
        yield FMatrix(field, e, d, out.matrix.rows[:e])
