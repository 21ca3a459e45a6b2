# Copyright 2024 Broda Group Software Inc.
#
# Use of this source code is governed by an MIT-style
# license that can be found in the LICENSE file or at
# https://opensource.org/licenses/MIT.
#
# Created: 2026-10-18
"""
Exact integer linear algebra: Bezout certificates, Smith normal form,
kernel bases, unimodular completion, determinants and the orders of
lattice quotients. Every entry is a Python int, so nothing overflows.
"""
import logging
import math
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import Matrix

try:
    from sympy import igcdex
except ImportError:  # sympy >= 1.13 no longer re-exports it at top level
    from sympy.core.intfunc import igcdex

from common import const
from common.errors import (BezoutError, CompletionError, MatrixShapeError,
                           NotSublatticeError)

logging.basicConfig(level=logging.INFO, format=const.LOGGING_FORMAT)
logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


class BezoutCert(BaseModel):
    """
    Integers psi, phi with x*psi - y*phi = g = gcd(x, y).
    """
    model_config = ConfigDict(frozen=True)

    x: int = Field(description="First input")
    y: int = Field(description="Second input")
    g: int = Field(ge=0, description="gcd(x, y)")
    psi: int = Field(description="Coefficient of x")
    phi: int = Field(description="Coefficient of y, entering with a minus")

    @model_validator(mode="after")
    def _check_certificate(self) -> "BezoutCert":
        if self.g != math.gcd(self.x, self.y):
            raise ValueError(f"g={self.g} is not gcd({self.x}, {self.y})")
        if self.x * self.psi - self.y * self.phi != self.g:
            raise ValueError(
                f"{self.x}*{self.psi} - {self.y}*{self.phi} != {self.g}")
        if self.g > 0 and math.gcd(self.psi, self.phi) != 1:
            raise ValueError(
                f"psi={self.psi} and phi={self.phi} are not coprime")
        return self

    def shifted(self, t: int) -> "BezoutCert":
        """
        Another valid certificate for the same pair:
        (psi, phi) -> (psi + (y/g) t, phi + (x/g) t).
        """
        if t == 0:
            return self
        return BezoutCert(
            x=self.x, y=self.y, g=self.g,
            psi=self.psi + (self.y // self.g) * t,
            phi=self.phi + (self.x // self.g) * t)


def ext_gcd(x: int, y: int) -> BezoutCert:
    """
    Canonical Bezout certificate for (x, y): the solution with the
    smallest |psi|, ties broken toward the nonnegative psi.

    :param x: first integer
    :type x: int
    :param y: second integer
    :type y: int
    :return: certificate with x*psi - y*phi = gcd(x, y)
    :rtype: BezoutCert
    :raises BezoutError: if both inputs are zero
    """
    x, y = int(x), int(y)
    if x == 0 and y == 0:
        raise BezoutError("undefined gcd certificate")

    s, _, g = (int(v) for v in igcdex(x, y))
    if y == 0:
        return BezoutCert(x=x, y=y, g=g, psi=(1 if x > 0 else -1), phi=0)

    step = abs(y) // g
    psi = s % step
    if 2 * psi > step:
        psi -= step
    phi = (x * psi - g) // y
    return BezoutCert(x=x, y=y, g=g, psi=psi, phi=phi)


class IntMatrix(BaseModel):
    """
    Dense integer matrix stored as a tuple of rows.
    """
    model_config = ConfigDict(frozen=True)

    entries: Tuple[Tuple[int, ...], ...] = Field(
        description="Rows of the matrix")

    @model_validator(mode="after")
    def _check_shape(self) -> "IntMatrix":
        if len(self.entries) == 0 or len(self.entries[0]) == 0:
            raise MatrixShapeError("matrix must be nonempty")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise MatrixShapeError(
                    f"ragged matrix: rows of length {width} and {len(row)}")
        return self

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        return cls(entries=tuple(tuple(int(v) for v in r) for r in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "IntMatrix":
        if len(columns) == 0:
            raise MatrixShapeError("matrix must be nonempty")
        return cls.of(list(zip(*columns)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.of([[1 if i == j else 0 for j in range(n)]
                       for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix.of(list(zip(*self.entries)))

    def apply(self, v: Sequence[int]) -> Vector:
        if len(v) != self.ncols:
            raise MatrixShapeError(
                f"vector of length {len(v)} for {self.ncols} columns")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise MatrixShapeError(
                f"cannot multiply {self.nrows}x{self.ncols} "
                f"by {other.nrows}x{other.ncols}")
        cols = list(zip(*other.entries))
        return IntMatrix.of(
            [[sum(a * b for a, b in zip(r, c)) for c in cols]
             for r in self.entries])

    def to_lists(self) -> List[List[int]]:
        return [list(r) for r in self.entries]

    def to_sympy(self) -> Matrix:
        return Matrix(self.to_lists())


class SmithDecomposition(BaseModel):
    """
    U * M * V = D with U, V unimodular and D diagonal with a divisibility
    chain on its diagonal.
    """
    model_config = ConfigDict(frozen=True)

    left: IntMatrix = Field(description="Unimodular U acting on rows")
    diag: Tuple[int, ...] = Field(
        description="Diagonal d1 | d2 | ... with zeros trailing")
    right: IntMatrix = Field(description="Unimodular V acting on columns")
    original: IntMatrix = Field(description="The decomposed matrix M")

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)

    def diagonal_matrix(self) -> IntMatrix:
        m, n = self.original.nrows, self.original.ncols
        return IntMatrix.of(
            [[self.diag[i] if i == j else 0 for j in range(n)]
             for i in range(m)])


def _smallest_pivot(a: List[List[int]], t: int) -> Optional[Tuple[int, int]]:
    best = None
    for i in range(t, len(a)):
        for j in range(t, len(a[0])):
            v = a[i][j]
            if v != 0 and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                best = (i, j)
    return best


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """
    Smith normal form with smallest-absolute-value pivoting. The row
    operations are recorded in U and the column operations in V.
    """
    a = m.to_lists()
    rows, cols = m.nrows, m.ncols
    u = IntMatrix.identity(rows).to_lists()
    v = IntMatrix.identity(cols).to_lists()

    def swap_rows(i: int, k: int):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int):
        for r in a:
            r[j], r[k] = r[k], r[j]
        for r in v:
            r[j], r[k] = r[k], r[j]

    def add_row(target: int, source: int, factor: int):
        a[target] = [x + factor * y for x, y in zip(a[target], a[source])]
        u[target] = [x + factor * y for x, y in zip(u[target], u[source])]

    def add_col(target: int, source: int, factor: int):
        for r in a:
            r[target] += factor * r[source]
        for r in v:
            r[target] += factor * r[source]

    diag: List[int] = []
    for t in range(min(rows, cols)):
        while True:
            pivot = _smallest_pivot(a, t)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]

            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    add_col(j, t, -(a[t][j] // p))

            if any(a[i][t] for i in range(t + 1, rows)) or \
                    any(a[t][j] for j in range(t + 1, cols)):
                continue

            # the pivot has to divide the rest of the submatrix
            bad_row = next(
                (i for i in range(t + 1, rows)
                 if any(a[i][j] % p for j in range(t + 1, cols))), None)
            if bad_row is None:
                break
            add_row(t, bad_row, 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        diag.append(a[t][t])

    logger.debug(f"smith normal form of {m.nrows}x{m.ncols}: {diag}")
    return SmithDecomposition(
        left=IntMatrix.of(u), diag=tuple(diag),
        right=IntMatrix.of(v), original=m)


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.nrows != m.ncols:
        raise MatrixShapeError(
            f"determinant of a non-square {m.nrows}x{m.ncols} matrix")
    return int(m.to_sympy().det(method="bareiss"))


def kernel_basis(m: IntMatrix) -> List[Vector]:
    """
    Lattice basis of the integer kernel of m. The vectors are columns of
    the unimodular V of the Smith form, so they extend to a basis of
    the whole lattice.
    """
    snf = smith_normal_form(m)
    return [snf.right.column(j) for j in range(snf.rank, m.ncols)]


def lattice_coordinates(ambient_basis: Sequence[Sequence[int]],
                        vector: Sequence[int]) -> Vector:
    """
    Integer coordinates of vector in the lattice spanned by
    ambient_basis.

    :raises NotSublatticeError: when the vector is not in that lattice
    """
    return _coordinates(smith_normal_form(
        IntMatrix.from_columns(ambient_basis)), vector)


def _coordinates(snf: SmithDecomposition, vector: Sequence[int]) -> Vector:
    y = snf.left.apply(vector)
    k = snf.original.ncols
    z = []
    for i, yi in enumerate(y):
        d = snf.diag[i] if i < len(snf.diag) else 0
        if i < k and d != 0:
            if yi % d != 0:
                raise NotSublatticeError(
                    f"not a sublattice element: {tuple(vector)}")
            z.append(yi // d)
        elif yi != 0:
            raise NotSublatticeError(
                f"not a sublattice element: {tuple(vector)}")
        elif i < k:
            z.append(0)
    return snf.right.apply(z)


def quotient_order(ambient_basis: Sequence[Sequence[int]],
                   sublattice_gens: Sequence[Sequence[int]]) -> int:
    """
    Order of L/S where L is spanned by ambient_basis and S by
    sublattice_gens. Returns 0 when the quotient is infinite.

    :param ambient_basis: a basis of L
    :param sublattice_gens: generators of S, each inside L
    :return: |L/S|, or 0 for an infinite quotient
    :raises NotSublatticeError: when a generator is outside L
    """
    k = len(ambient_basis)
    if k == 0:
        return 1

    ambient = smith_normal_form(IntMatrix.from_columns(ambient_basis))
    if ambient.rank != k:
        raise MatrixShapeError("ambient basis is not linearly independent")
    if len(sublattice_gens) == 0:
        return 0

    coords = [_coordinates(ambient, g) for g in sublattice_gens]
    snf = smith_normal_form(IntMatrix.from_columns(coords))
    if snf.rank < k:
        return 0
    return math.prod(snf.diag)


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    inverse = m.to_sympy().inv()
    if any(not v.is_integer for v in inverse):
        raise MatrixShapeError("matrix is not unimodular")
    return IntMatrix.of(inverse.tolist())


def complete_to_unimodular(partial: Sequence[Sequence[int]]) -> List[Vector]:
    """
    Extend a primitive family of vectors to a basis of Z^n, keeping the
    given vectors first and in order.

    :raises CompletionError: if the family does not extend to a basis
    """
    if len(partial) == 0:
        raise CompletionError("no unimodular completion of an empty family")
    rows = IntMatrix.of(partial)
    k = rows.nrows
    snf = smith_normal_form(rows)
    if snf.rank != k or any(d != 1 for d in snf.diag):
        raise CompletionError(
            f"no unimodular completion for {[tuple(p) for p in partial]}")

    w = inverse_unimodular(snf.right)
    return [rows.row(i) for i in range(k)] + \
        [w.row(i) for i in range(k, rows.ncols)]
