"""Dense exact matrices: products, inverses, nilpotent exponentials, membership.

Matrices are 2n x 2n grids of scalars sharing one mode (see
:mod:`chevalley.scalars`).  All operations are pure and exact; row supports
are precomputed so products of near-identity matrices skip zero work.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import (LAURENT, RATIONAL, coerce, format_scalar, join_mode,
                      mode_of, parse_scalar, scalar_one, scalar_zero)


class MatrixError(ValueError):
    """Size or mode mismatch."""


class SingularMatrixError(ZeroDivisionError):
    """Inversion of a singular matrix; carries the rank found."""

    def __init__(self, rank):
        super().__init__("matrix is singular (rank %d)" % rank)
        self.rank = rank


class ExactMatrix:
    """Immutable 2n x 2n matrix over one exact scalar mode."""

    __slots__ = ("size", "n_block", "mode", "rows", "_support")

    def __init__(self, rows, mode=None):
        rows = [list(r) for r in rows]
        size = len(rows)
        if size == 0 or size % 2 != 0:
            raise MatrixError("matrix size must be even and positive, got %d" % size)
        for r in rows:
            if len(r) != size:
                raise MatrixError("matrix must be square")
        if mode is None:
            mode = join_mode(mode_of(x) for r in rows for x in r
                             if not isinstance(x, int))
        rows = [[coerce(x, mode) for x in r] for r in rows]
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "n_block", size // 2)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_support",
                           tuple(tuple(j for j, x in enumerate(r) if x)
                                 for r in rows))

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(size, mode=RATIONAL):
        one = scalar_one(mode)
        zero = scalar_zero(mode)
        return ExactMatrix([[one if i == j else zero for j in range(size)]
                            for i in range(size)], mode)

    @staticmethod
    def zeros(size, mode=RATIONAL):
        zero = scalar_zero(mode)
        return ExactMatrix([[zero] * size for _ in range(size)], mode)

    @staticmethod
    def elementary(size, i, j, value=1, mode=None):
        """value * e_{i,j} with 1-based indices."""
        if mode is None:
            mode = mode_of(value) if not isinstance(value, int) else RATIONAL
        m = [[scalar_zero(mode) for _ in range(size)] for _ in range(size)]
        m[i - 1][j - 1] = coerce(Fraction(value) if isinstance(value, int) else value, mode)
        return ExactMatrix(m, mode)

    @staticmethod
    def from_entries(size, entries, mode=RATIONAL):
        """Build from {(i, j): value} with 1-based indices; identity base."""
        rows = [[scalar_one(mode) if i == j else scalar_zero(mode)
                 for j in range(size)] for i in range(size)]
        for (i, j), v in entries.items():
            rows[i - 1][j - 1] = coerce(Fraction(v) if isinstance(v, int) else v, mode)
        return ExactMatrix(rows, mode)

    # -- basics ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entry(self, i, j):
        """1-based entry access."""
        return self.rows[i - 1][j - 1]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.size != other.size or self.mode != other.mode:
            return False
        return all(self.rows[i][j] == other.rows[i][j]
                   for i in range(self.size) for j in range(self.size))

    def __hash__(self):
        raise TypeError("ExactMatrix is not hashable")

    def is_identity(self):
        one = scalar_one(self.mode)
        for i, sup in enumerate(self._support):
            if sup != (i,) or self.rows[i][i] != one:
                return False
        return True

    def is_diagonal(self):
        return all(sup in ((), (i,)) for i, sup in enumerate(self._support))

    def transpose(self):
        n = self.size
        return ExactMatrix([[self.rows[j][i] for j in range(n)] for i in range(n)],
                           self.mode)

    def to_mode(self, mode):
        if mode == self.mode:
            return self
        return ExactMatrix(self.rows, mode)

    def first_difference(self, other):
        """(i, j, self_ij, other_ij) of the first divergent entry, 1-based."""
        for i in range(self.size):
            for j in range(self.size):
                if self.rows[i][j] != other.rows[i][j]:
                    return (i + 1, j + 1, self.rows[i][j], other.rows[i][j])
        return None

    def evaluate(self, point):
        """Evaluate a laurent-mode matrix at a rational/gaussian point."""
        if self.mode != LAURENT:
            return self
        return ExactMatrix([[x.evaluate(point) for x in r] for r in self.rows])

    def __repr__(self):
        return "ExactMatrix(%d, %s)" % (self.size, self.mode)

    def __str__(self):
        return format_matrix(self)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def _check_pair(a, b):
    if a.size != b.size:
        raise MatrixError("size mismatch: %d vs %d" % (a.size, b.size))
    if a.mode != b.mode:
        raise MatrixError("mode mismatch: %s vs %s" % (a.mode, b.mode))


def mat_mul(a, b):
    """Exact matrix product."""
    _check_pair(a, b)
    n = a.size
    zero = scalar_zero(a.mode)
    arows = a.rows
    brows = b.rows
    bsup = b._support
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        arow = arows[i]
        orow = out[i]
        for k in a._support[i]:
            v = arow[k]
            brow = brows[k]
            for j in bsup[k]:
                orow[j] = orow[j] + v * brow[j]
    return ExactMatrix(out, a.mode)


def mat_prod(matrices, size=None, mode=RATIONAL):
    """Ordered product; identity for the empty sequence (needs size then)."""
    result = None
    for m in matrices:
        result = m if result is None else mat_mul(result, m)
    if result is None:
        if size is None:
            raise MatrixError("empty product needs an explicit size")
        return ExactMatrix.identity(size, mode)
    return result


def mat_add(a, b):
    _check_pair(a, b)
    n = a.size
    return ExactMatrix([[a.rows[i][j] + b.rows[i][j] for j in range(n)]
                        for i in range(n)], a.mode)


def mat_scale(a, c):
    c = coerce(Fraction(c) if isinstance(c, int) else c, a.mode)
    return ExactMatrix([[x * c for x in r] for r in a.rows], a.mode)


def mat_inv(a):
    """Exact inverse by Gauss-Jordan elimination.

    Raises SingularMatrixError (with the rank) on singular input.
    """
    n = a.size
    zero = scalar_zero(a.mode)
    one = scalar_one(a.mode)
    work = [list(r) for r in a.rows]
    inv = [[one if i == j else zero for j in range(n)] for i in range(n)]
    rank = 0
    for col in range(n):
        piv = None
        for r in range(rank, n):
            if work[r][col]:
                piv = r
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv[rank], inv[piv] = inv[piv], inv[rank]
        pval = work[rank][col]
        if pval != one:
            work[rank] = [x / pval for x in work[rank]]
            inv[rank] = [x / pval for x in inv[rank]]
        for r in range(n):
            if r != rank and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[rank])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[rank])]
        rank += 1
    if rank < n:
        raise SingularMatrixError(rank)
    return ExactMatrix(inv, a.mode)


def mat_det(a):
    """Exact determinant by elimination."""
    n = a.size
    work = [list(r) for r in a.rows]
    det = scalar_one(a.mode)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if work[r][col]:
                piv = r
                break
        if piv is None:
            return scalar_zero(a.mode)
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            det = -det
        pval = work[col][col]
        det = det * pval
        for r in range(col + 1, n):
            if work[r][col]:
                f = work[r][col] / pval
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return det


class NotNilpotentError(ValueError):
    pass


def exp_nilpotent(n_mat):
    """exp of a nilpotent matrix as the finite sum sum_j N^j / j!.

    Nilpotency (N^k = 0 for some k <= size) is checked; semisimple input is
    rejected.  Factorials are absorbed exactly by rational division.
    """
    size = n_mat.size
    term = ExactMatrix.identity(size, n_mat.mode)
    total = term
    power = n_mat
    j = 1
    while any(power._support):
        if j > size:
            raise NotNilpotentError("matrix is not nilpotent (N^%d != 0)" % j)
        term = mat_scale(power, Fraction(1, _factorial(j)))
        total = mat_add(total, term)
        power = mat_mul(power, n_mat)
        j += 1
    return total


def _factorial(j):
    out = 1
    for k in range(2, j + 1):
        out *= k
    return out


# ---------------------------------------------------------------------------
# Group membership
# ---------------------------------------------------------------------------

def symplectic_form(size, mode=RATIONAL):
    """Gram matrix J of the standard skew form: J[i, i+n] = 1, J[i+n, i] = -1."""
    n = size // 2
    entries = {}
    for i in range(1, n + 1):
        entries[(i, i + n)] = Fraction(1)
        entries[(i + n, i)] = Fraction(-1)
    m = [[scalar_zero(mode) for _ in range(size)] for _ in range(size)]
    for (i, j), v in entries.items():
        m[i - 1][j - 1] = coerce(v, mode)
    return ExactMatrix(m, mode)


def check_membership(m, model):
    """True iff m lies in the model's group: m^T J m = J (sp) or det = 1 (sl)."""
    if m.size != 2 * model.n:
        raise MatrixError("matrix size %d does not match model size %d"
                          % (m.size, 2 * model.n))
    if model.family == "sp":
        j = symplectic_form(m.size, m.mode)
        return mat_mul(mat_mul(m.transpose(), j), m) == j
    return mat_det(m) == scalar_one(m.mode)


def check_lie_membership(x, model):
    """Lie-algebra membership: X^T J + J X = 0 (sp) or trace 0 (sl)."""
    if x.size != 2 * model.n:
        raise MatrixError("matrix size %d does not match model size %d"
                          % (x.size, 2 * model.n))
    if model.family == "sp":
        j = symplectic_form(x.size, x.mode)
        lhs = mat_add(mat_mul(x.transpose(), j), mat_mul(j, x))
        return all(not v for row in lhs.rows for v in row)
    tr = scalar_zero(x.mode)
    for i in range(x.size):
        tr = tr + x.rows[i][i]
    return not tr


# ---------------------------------------------------------------------------
# Text format: row-major, semicolon-separated rows, comma-separated entries
# ---------------------------------------------------------------------------

def parse_matrix(text, mode=None):
    rows = []
    for chunk in text.strip().split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        rows.append([parse_scalar(e, mode) for e in chunk.split(",")])
    if not rows:
        raise MatrixError("empty matrix text")
    return ExactMatrix(rows, mode)


def format_matrix(m):
    return ";".join(",".join(format_scalar(x) for x in r) for r in m.rows)
