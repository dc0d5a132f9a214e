"""Exact dense matrices over Q or a prime field.

Everything here is exact: elimination is fraction-free (Bareiss) so
intermediate entries stay integral when the input is integral, and the
characteristic polynomial is computed division-free by minor expansion
with memoization (dimensions are capped at 8, per the callers' needs).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from ncfactor.fields import QQ, RationalField

CHARPOLY_MAX_DIM = 8
ROOTS_MAX_DEGREE = 4


class Matrix:
    """Immutable dense matrix with exact field entries."""

    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        self.field = field
        self.rows = rows

    @classmethod
    def from_ints(cls, field, rows):
        return cls(field, [[field.from_int(x) for x in r] for r in rows])

    @classmethod
    def identity(cls, field, n):
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, nrows, ncols):
        zero = field.zero
        return cls(field, [[zero] * ncols for _ in range(nrows)])

    @classmethod
    def from_cols(cls, field, cols):
        return cls(field, [[c[i] for c in cols] for i in range(len(cols[0]))])

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0])

    @property
    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, i):
        return self.rows[i]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return "Matrix[%s]" % body

    def __add__(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch in matrix addition")
        return Matrix(self.field, [[a + b for a, b in zip(r1, r2)]
                                   for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return self + other.scale(-self.field.one)

    def __neg__(self):
        return self.scale(-self.field.one)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        cols = list(zip(*other.rows))
        return Matrix(self.field,
                      [[_dot(r, c) for c in cols] for r in self.rows])

    def scale(self, c):
        return Matrix(self.field, [[c * x for x in r] for r in self.rows])

    def transpose(self):
        return Matrix(self.field, list(zip(*self.rows)))

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def is_zero(self):
        zero = self.field.zero
        return all(x == zero for r in self.rows for x in r)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch in hstack")
        return Matrix(self.field, [r1 + r2 for r1, r2 in zip(self.rows, other.rows)])

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch in vstack")
        return Matrix(self.field, self.rows + other.rows)

    def submatrix(self, row_idx, col_idx):
        return Matrix(self.field, [[self.rows[i][j] for j in col_idx] for i in row_idx])

    # -- elimination-based queries ------------------------------------

    def _echelon(self):
        """Fraction-free row echelon form: (rows, pivot columns, swap sign).

        Over Q, rows are first scaled to integers so Bareiss keeps every
        intermediate entry an integer.
        """
        zero = self.field.zero
        rows = [list(r) for r in self.rows]
        if isinstance(self.field, RationalField):
            for r in rows:
                scale = lcm(*(x.denominator for x in r))
                if scale != 1:
                    for j in range(len(r)):
                        r[j] = r[j] * scale
        pivots = []
        sign = 1
        prev = self.field.one
        row = 0
        for col in range(self.ncols):
            pivot_row = None
            for i in range(row, len(rows)):
                if rows[i][col] != zero:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            if pivot_row != row:
                rows[row], rows[pivot_row] = rows[pivot_row], rows[row]
                sign = -sign
            pivot = rows[row][col]
            for i in range(row + 1, len(rows)):
                head = rows[i][col]
                for j in range(col + 1, self.ncols):
                    rows[i][j] = (pivot * rows[i][j] - head * rows[row][j]) / prev
                rows[i][col] = zero
            pivots.append(col)
            prev = pivot
            row += 1
            if row == len(rows):
                break
        return rows, pivots, sign

    def rank(self):
        return len(self._echelon()[1])

    def det(self):
        if not self.is_square:
            raise ValueError("determinant of non-square matrix")
        rows, pivots, sign = self._echelon()
        if len(pivots) < self.nrows:
            return self.field.zero
        # Bareiss: the last pivot of the fraction-free echelon form is
        # det of the integer-scaled matrix; undo swaps and row scalings.
        det = rows[self.nrows - 1][pivots[-1]]
        if sign < 0:
            det = -det
        if isinstance(self.field, RationalField):
            for r in self.rows:
                det = det / lcm(*(x.denominator for x in r))
        return det

    def nullspace(self):
        """Basis of the right nullspace; [] when the kernel is trivial."""
        rows, pivots, _ = self._echelon()
        zero, one = self.field.zero, self.field.one
        free_cols = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        for fc in free_cols:
            v = [zero] * self.ncols
            v[fc] = one
            # back-substitute pivot variables
            for k in range(len(pivots) - 1, -1, -1):
                pc = pivots[k]
                s = zero
                for j in range(pc + 1, self.ncols):
                    if v[j] != zero:
                        s = s + rows[k][j] * v[j]
                v[pc] = -s / rows[k][pc]
            basis.append(tuple(v))
        return basis

    def inverse(self):
        """Exact inverse, or None when singular."""
        if not self.is_square:
            raise ValueError("inverse of non-square matrix")
        n = self.nrows
        zero = self.field.zero
        aug = [list(r) + list(ir) for r, ir in
               zip(self.rows, Matrix.identity(self.field, n).rows)]
        row = 0
        for col in range(n):
            pivot_row = None
            for i in range(row, n):
                if aug[i][col] != zero:
                    pivot_row = i
                    break
            if pivot_row is None:
                return None
            aug[row], aug[pivot_row] = aug[pivot_row], aug[row]
            inv_p = self.field.one / aug[row][col]
            aug[row] = [x * inv_p for x in aug[row]]
            for i in range(n):
                if i != row and aug[i][col] != zero:
                    c = aug[i][col]
                    aug[i] = [a - c * b for a, b in zip(aug[i], aug[row])]
            row += 1
        return Matrix(self.field, [r[n:] for r in aug])

    def charpoly(self):
        """Coefficients of det(tI - M), ascending, monic; dimension <= 8."""
        if not self.is_square:
            raise ValueError("characteristic polynomial of non-square matrix")
        n = self.nrows
        if n > CHARPOLY_MAX_DIM:
            raise ValueError("charpoly capped at dimension %d" % CHARPOLY_MAX_DIM)
        zero, one = self.field.zero, self.field.one
        # entries of tI - M as degree<=1 coefficient lists
        ent = [[(( -self.rows[i][j], one) if i == j else (-self.rows[i][j],))
                for j in range(n)] for i in range(n)]
        memo = {frozenset(): (one,)}

        def minor(cols):
            key = frozenset(cols)
            if key in memo:
                return memo[key]
            i = n - len(cols)
            acc = (zero,)
            for pos, j in enumerate(cols):
                rest = minor(cols[:pos] + cols[pos + 1:])
                term = upoly_mul(ent[i][j], rest, self.field)
                if pos % 2:
                    term = tuple(-c for c in term)
                acc = upoly_add(acc, term, self.field)
            memo[key] = acc
            return acc

        p = minor(tuple(range(n)))
        assert len(p) == n + 1 and p[-1] == one
        return tuple(p)


def _dot(r, c):
    it = iter(zip(r, c))
    a, b = next(it)
    s = a * b
    for a, b in it:
        s = s + a * b
    return s


def matvec(m, v):
    return tuple(_dot(r, v) for r in m.rows)


# -- univariate polynomial helpers (coefficient lists, ascending) -----

def upoly_trim(p, field):
    p = list(p)
    while len(p) > 1 and p[-1] == field.zero:
        p.pop()
    return tuple(p)


def upoly_add(p, q, field):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return upoly_trim(out, field)


def upoly_mul(p, q, field):
    out = [field.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == field.zero:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return upoly_trim(out, field)


def upoly_eval(p, x):
    acc = p[-1]
    for c in reversed(p[:-1]):
        acc = acc * x + c
    return acc


def charpoly(m):
    """det(tI - M) as an ascending coefficient tuple (monic)."""
    return m.charpoly()


def nullspace(m):
    """Exact basis of the right nullspace of M."""
    return m.nullspace()


def rational_roots(coeffs):
    """Rational roots (with multiplicity) of a nonzero rational polynomial.

    Uses the rational-root theorem on the primitive integer form; every
    candidate is verified by exact substitution.  Degree is capped at 4.
    Returns a sorted list of (root, multiplicity) pairs.
    """
    p = upoly_trim(coeffs, QQ)
    if len(p) == 1 and p[0] == 0:
        raise ValueError("rational_roots of the zero polynomial")
    if len(p) - 1 > ROOTS_MAX_DEGREE:
        raise ValueError("rational_roots capped at degree %d" % ROOTS_MAX_DEGREE)
    roots = {}
    # strip powers of t: root 0
    zero_mult = 0
    while p[0] == 0 and len(p) > 1:
        zero_mult += 1
        p = p[1:]
    if zero_mult:
        roots[Fraction(0)] = zero_mult
    if len(p) > 1:
        scale = lcm(*(c.denominator for c in p))
        ints = [int(c * scale) for c in p]
        content = gcd(*ints)
        ints = [c // content for c in ints]
        a0, alead = abs(ints[0]), abs(ints[-1])
        cands = set()
        for num in _divisors(a0):
            for den in _divisors(alead):
                cands.add(Fraction(num, den))
                cands.add(Fraction(-num, den))
        for r in sorted(cands):
            if upoly_eval(p, r) == 0:
                mult = 0
                q = p
                while len(q) > 1 and upoly_eval(q, r) == 0:
                    q = _deflate(q, r)
                    mult += 1
                roots[r] = mult
    return sorted(roots.items())


def _divisors(n):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def _deflate(p, r):
    """Divide p by (t - r); the remainder must vanish."""
    n = len(p) - 1
    q = [Fraction(0)] * n
    q[n - 1] = p[n]
    for i in range(n - 1, 0, -1):
        q[i - 1] = p[i] + r * q[i]
    assert p[0] + r * q[0] == 0, "deflation by a non-root"
    return upoly_trim(q, QQ)
