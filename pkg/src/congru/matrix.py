"""Dense exact matrices over a field with involution.

Matrices are immutable, stored row-major, and may have zero rows or
zero columns; a 0x0 matrix counts as nonsingular.  All elimination is
exact with first-nonzero pivoting (magnitude pivoting is meaningless
over Q(i) or GF(p)), so identical inputs always produce identical
transforms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .scalar import FieldSpec, Scalar


class MatrixParseError(ValueError):
    """Text or JSON input rejected; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(message)
        self.line = line
        self.column = column


class Matrix:
    __slots__ = ("field", "rows", "cols", "_r")

    def __init__(self, field: FieldSpec, rows: int, cols: int,
                 row_tuples: tuple):
        # row_tuples must already hold field elements; use the
        # classmethods for anything that needs coercion
        self.field = field
        self.rows = rows
        self.cols = cols
        self._r = row_tuples

    # -- construction ----------------------------------------------------------

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable],
                  cols: int | None = None) -> "Matrix":
        data = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("cols does not match row width")
            cols = width
        elif cols is None:
            raise ValueError("cols is required for a matrix with no rows")
        return cls(field, len(data), cols, data)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        z = field.zero()
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return cls(field, n, n, tuple(
            tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_blocks(cls, field: FieldSpec, grid: Sequence[Sequence["Matrix"]],
                    ) -> "Matrix":
        """Assemble from a rectangular grid of blocks with consistent
        row heights and column widths (zero-dimension blocks allowed)."""
        if not grid:
            return cls.zeros(field, 0, 0)
        heights = [row[0].rows for row in grid]
        widths = [b.cols for b in grid[0]]
        for bi, row in enumerate(grid):
            if len(row) != len(widths):
                raise ValueError("ragged block grid")
            for bj, b in enumerate(row):
                if b.field != field:
                    raise ValueError("mixed fields in block grid")
                if b.rows != heights[bi] or b.cols != widths[bj]:
                    raise ValueError("inconsistent block dimensions")
        out = []
        for bi, row in enumerate(grid):
            for i in range(heights[bi]):
                acc: list = []
                for b in row:
                    acc.extend(b._r[i])
                out.append(tuple(acc))
        return cls(field, sum(heights), sum(widths), tuple(out))

    # -- basic queries ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(not x for row in self._r for x in row)

    def __getitem__(self, key) -> Scalar:
        i, j = key
        return self._r[i][j]

    def row(self, i: int) -> tuple:
        return self._r[i]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.rows == other.rows
                and self.cols == other.cols and self._r == other._r)

    __hash__ = None

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field})"

    # -- arithmetic ------------------------------------------------------------

    def _check_same_field(self, other: "Matrix"):
        if self.field != other.field:
            raise ValueError("mixed fields")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_field(other)
        if self.shape != other.shape:
            raise ValueError("dimension mismatch in addition")
        return Matrix(self.field, self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self._r, other._r)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_field(other)
        if self.shape != other.shape:
            raise ValueError("dimension mismatch in subtraction")
        return Matrix(self.field, self.rows, self.cols, tuple(
            tuple(a - b for a, b in zip(ra, rb))
            for ra, rb in zip(self._r, other._r)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, tuple(
            tuple(-a for a in row) for row in self._r))

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        return Matrix(self.field, self.rows, self.cols, tuple(
            tuple(c * a for a in row) for row in self._r))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return self.__mul__(other)

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_field(other)
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in product")
        zero = self.field.zero()
        brows = other._r
        bcols = other.cols
        out = []
        for arow in self._r:
            acc = [zero] * bcols
            for k, aik in enumerate(arow):
                if not aik:
                    continue  # skipping zeros carries the sparse structure
                brow = brows[k]
                for j, bkj in enumerate(brow):
                    if bkj:
                        acc[j] = acc[j] + aik * bkj
            out.append(tuple(acc))
        return Matrix(self.field, self.rows, bcols, tuple(out))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, tuple(
            tuple(self._r[i][j] for i in range(self.rows))
            for j in range(self.cols)))

    @property
    def star(self) -> "Matrix":
        """Conjugate transpose under the active involution; the plain
        transpose when the involution is the identity."""
        conj = self.field.conjugate
        return Matrix(self.field, self.cols, self.rows, tuple(
            tuple(conj(self._r[i][j]) for i in range(self.rows))
            for j in range(self.cols)))

    # -- slicing ---------------------------------------------------------------

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        if not (0 <= r0 <= r1 <= self.rows and 0 <= c0 <= c1 <= self.cols):
            raise ValueError("block out of range")
        return Matrix(self.field, r1 - r0, c1 - c0, tuple(
            row[c0:c1] for row in self._r[r0:r1]))

    # -- rank and singularity ----------------------------------------------------

    def is_nonsingular(self) -> bool:
        # 0x0 is nonsingular by convention
        return self.is_square() and rank(self) == self.rows

    # -- text and JSON formats ---------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        render = self.field.render_scalar
        for row in self._r:
            lines.append(" ".join(render(x) for x in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, field: FieldSpec, text: str) -> "Matrix":
        lines = text.splitlines()
        if not lines or not lines[0].strip():
            raise MatrixParseError("missing header line", 1, 1)
        header = lines[0].split()
        if len(header) != 2:
            raise MatrixParseError(
                "header must be two integers: rows cols", 1, 1)
        try:
            rows, cols = int(header[0]), int(header[1])
        except ValueError:
            raise MatrixParseError(
                "header must be two integers: rows cols", 1, 1) from None
        if rows < 0 or cols < 0:
            raise MatrixParseError("negative dimensions", 1, 1)
        data = []
        lineno = 1
        for i in range(rows):
            lineno = i + 2
            raw = lines[i + 1] if i + 1 < len(lines) else ""
            tokens = list(re.finditer(r"\S+", raw))
            if len(tokens) != cols:
                if cols == 0 and not tokens:
                    data.append(())
                    continue
                if len(tokens) > cols:
                    col = tokens[cols].start() + 1
                else:
                    col = (tokens[-1].end() + 1) if tokens else 1
                raise MatrixParseError(
                    f"expected {cols} entries, found {len(tokens)}",
                    lineno, col)
            parsed = []
            for t in tokens:
                try:
                    parsed.append(field.parse_scalar(t.group()))
                except ValueError as exc:
                    raise MatrixParseError(
                        str(exc), lineno, t.start() + 1) from None
            data.append(tuple(parsed))
        for k, extra in enumerate(lines[rows + 1:], start=rows + 2):
            if extra.strip():
                raise MatrixParseError("trailing content after matrix", k, 1)
        return cls(field, rows, cols, tuple(data))

    def to_json_dict(self) -> dict:
        render = self.field.render_scalar
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [render(x) for row in self._r for x in row],
        }

    @classmethod
    def from_json_dict(cls, field: FieldSpec, obj: dict) -> "Matrix":
        if not isinstance(obj, dict):
            raise MatrixParseError("expected a JSON object", 1, 1)
        try:
            rows, cols = int(obj["rows"]), int(obj["cols"])
            entries = obj["entries"]
        except (KeyError, TypeError, ValueError):
            raise MatrixParseError(
                "object must carry rows, cols, entries", 1, 1) from None
        if rows < 0 or cols < 0:
            raise MatrixParseError("negative dimensions", 1, 1)
        if not isinstance(entries, list) or len(entries) != rows * cols:
            raise MatrixParseError(
                f"expected {rows * cols} entries", 1, 1)
        parsed = []
        for k, e in enumerate(entries):
            try:
                parsed.append(field.coerce(e))
            except ValueError as exc:
                raise MatrixParseError(str(exc), 1, k + 1) from None
        return cls(field, rows, cols, tuple(
            tuple(parsed[i * cols:(i + 1) * cols]) for i in range(rows)))


# -- elimination core ----------------------------------------------------------


def _forward_eliminate(a: list, t: list) -> list:
    """In-place forward elimination on row lists `a`, mirroring every
    row operation onto `t`.  Pivots are the first nonzero entry in
    each column.  Returns the pivot (row, col) list."""
    m = len(a)
    n = len(a[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = None
        for k in range(r, m):
            if a[k][c]:
                p = k
                break
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            t[r], t[p] = t[p], t[r]
        prow, trow = a[r], t[r]
        pv = prow[c]
        for k in range(r + 1, m):
            f = a[k][c]
            if not f:
                continue
            f = f / pv
            krow, ktrow = a[k], t[k]
            for j in range(c, n):
                if prow[j]:
                    krow[j] = krow[j] - f * prow[j]
            for j in range(len(trow)):
                if trow[j]:
                    ktrow[j] = ktrow[j] - f * trow[j]
        pivots.append((r, c))
        r += 1
    return pivots


def _rref(a: list, t: list) -> list:
    """Continue _forward_eliminate to reduced row echelon form."""
    pivots = _forward_eliminate(a, t)
    n = len(a[0]) if a else 0
    for r, c in pivots:
        inv = 1 / a[r][c]
        arow, trow = a[r], t[r]
        for j in range(c, n):
            if arow[j]:
                arow[j] = arow[j] * inv
        for j in range(len(trow)):
            if trow[j]:
                trow[j] = trow[j] * inv
    for r, c in reversed(pivots):
        prow, ptrow = a[r], t[r]
        for k in range(r):
            f = a[k][c]
            if not f:
                continue
            krow, ktrow = a[k], t[k]
            for j in range(c, n):
                if prow[j]:
                    krow[j] = krow[j] - f * prow[j]
            for j in range(len(ptrow)):
                if ptrow[j]:
                    ktrow[j] = ktrow[j] - f * ptrow[j]
    return pivots


def _work_copies(a: Matrix) -> tuple[list, list]:
    work = [list(row) for row in a._r]
    z, o = a.field.zero(), a.field.one()
    ident = [[o if i == j else z for j in range(a.rows)]
             for i in range(a.rows)]
    return work, ident


def row_echelon_transform(a: Matrix, zeros: str = "bottom",
                          ) -> tuple[Matrix, int]:
    """A nonsingular T, product of elementary row operations, such that
    T*a has its rank(a) independent rows on top (zeros="bottom") or its
    zero rows on top and the independent rows at the bottom
    (zeros="top").  Returns (T, rank)."""
    if zeros not in ("bottom", "top"):
        raise ValueError('zeros must be "bottom" or "top"')
    work, ident = _work_copies(a)
    pivots = _forward_eliminate(work, ident)
    r = len(pivots)
    if zeros == "top":
        ident = ident[r:] + ident[:r]
    return Matrix(a.field, a.rows, a.rows,
                  tuple(tuple(row) for row in ident)), r


def rank(a: Matrix) -> int:
    work, ident = _work_copies(a)
    return len(_forward_eliminate(work, ident))


def nullity(a: Matrix) -> int:
    return a.cols - rank(a)


def nullspace(a: Matrix) -> Matrix:
    """Columns form a basis of the right null space, one per free
    column of the reduced echelon form, free columns in increasing
    index order."""
    work, ident = _work_copies(a)
    pivots = _rref(work, ident)
    pivot_cols = {c: r for r, c in pivots}
    free_cols = [c for c in range(a.cols) if c not in pivot_cols]
    z, o = a.field.zero(), a.field.one()
    basis_rows = [[z] * len(free_cols) for _ in range(a.cols)]
    for k, fc in enumerate(free_cols):
        basis_rows[fc][k] = o
        for c, r in pivot_cols.items():
            if work[r][fc]:
                basis_rows[c][k] = -work[r][fc]
    return Matrix(a.field, a.cols, len(free_cols),
                  tuple(tuple(row) for row in basis_rows))


def solve(a: Matrix, b: Matrix) -> Matrix:
    """One exact solution X of a*X = b with all free variables zero;
    ValueError when the system is inconsistent."""
    if a.field != b.field:
        raise ValueError("mixed fields")
    if a.rows != b.rows:
        raise ValueError("dimension mismatch in solve")
    work, ident = _work_copies(a)
    pivots = _rref(work, ident)
    t = Matrix(a.field, a.rows, a.rows, tuple(tuple(r) for r in ident))
    rhs = t * b
    for i in range(len(pivots), a.rows):
        if any(rhs._r[i]):
            raise ValueError("inconsistent system")
    z = a.field.zero()
    xrows = [[z] * b.cols for _ in range(a.cols)]
    for r, c in pivots:
        xrows[c] = list(rhs._r[r])
    return Matrix(a.field, a.cols, b.cols, tuple(tuple(r) for r in xrows))


def inverse(a: Matrix) -> Matrix:
    if not a.is_square():
        raise ValueError("inverse requires a square matrix")
    work, ident = _work_copies(a)
    pivots = _rref(work, ident)
    if len(pivots) != a.rows:
        raise ValueError("matrix is singular")
    return Matrix(a.field, a.rows, a.rows, tuple(tuple(r) for r in ident))


def conj_transpose(a: Matrix) -> Matrix:
    """Entry-wise conjugate of the transpose; an involution itself."""
    return a.star


# -- *congruence invariants ------------------------------------------------------


@dataclass(frozen=True)
class Invariants:
    nu: int
    zeta: int
    kappa: int
    rho: int


def invariants(a: Matrix) -> Invariants:
    """nu = nullity, zeta = dim of the common null space of a and its
    conjugate transpose (the nullity of the 2m x m stack), kappa and
    rho the induced complements."""
    if not a.is_square():
        raise ValueError("invariants require a square matrix")
    nu = nullity(a)
    stacked = Matrix.from_blocks(a.field, [[a], [a.star]])
    zeta = nullity(stacked)
    kappa = nu - zeta
    return Invariants(nu, zeta, kappa, a.rows - kappa - nu)


# -- structured constructors ------------------------------------------------------


def direct_sum(field: FieldSpec, blocks: Sequence[Matrix]) -> Matrix:
    """Block-diagonal sum; zero-dimension summands follow the stacking
    conventions (a p x 0 block contributes p zero rows, a 0 x q block
    q zero columns)."""
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    z = field.zero()
    out = []
    c_before = 0
    for b in blocks:
        if b.field != field:
            raise ValueError("mixed fields in direct sum")
        c_after = cols - c_before - b.cols
        for row in b._r:
            out.append((z,) * c_before + row + (z,) * c_after)
        c_before += b.cols
    return Matrix(field, rows, cols, tuple(out))


def jordan_block(field: FieldSpec, n: int) -> Matrix:
    """The n x n singular Jordan block: ones on the first
    superdiagonal, zeros elsewhere."""
    if n < 1:
        raise ValueError("jordan_block requires n >= 1")
    z, o = field.zero(), field.one()
    return Matrix(field, n, n, tuple(
        tuple(o if j == i + 1 else z for j in range(n)) for i in range(n)))


def f_block(field: FieldSpec, n: int) -> Matrix:
    """The (n-1) x n block [I 0]."""
    if n < 1:
        raise ValueError("f_block requires n >= 1")
    z, o = field.zero(), field.one()
    return Matrix(field, n - 1, n, tuple(
        tuple(o if j == i else z for j in range(n)) for i in range(n - 1)))


def g_block(field: FieldSpec, n: int) -> Matrix:
    """The (n-1) x n block [0 I]."""
    if n < 1:
        raise ValueError("g_block requires n >= 1")
    z, o = field.zero(), field.one()
    return Matrix(field, n - 1, n, tuple(
        tuple(o if j == i + 1 else z for j in range(n)) for i in range(n - 1)))


def permutation_matrix(field: FieldSpec, images: Sequence[int]) -> Matrix:
    """P with P[i, images[i]] = 1, so row i of P*A is row images[i]
    of A."""
    n = len(images)
    if sorted(images) != list(range(n)):
        raise ValueError("not a permutation")
    z, o = field.zero(), field.one()
    return Matrix(field, n, n, tuple(
        tuple(o if j == images[i] else z for j in range(n))
        for i in range(n)))
