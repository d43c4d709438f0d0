"""Dense exact matrices and subspace arithmetic over the scalar tower.

Conventions used throughout the package:

* matrices act on column vectors: a ``rows x cols`` matrix maps k^cols to
  k^rows, so ``kernel`` lives in k^cols and ``image`` in k^rows;
* a subspace of k^n is stored as the reduced row-echelon basis of its
  spanning rows, with zero rows pruned.  Two subspaces are equal iff their
  RREF matrices are equal entry-wise.

Row reduction is fraction-free (one-step Gauss-Jordan with division by the
previous pivot) after clearing denominators row-wise, which keeps entries
polynomial over QQ(t); pivots are normalised to 1 only at the end.  Pivoting
is deterministic: leftmost pivot column, first non-zero row.
"""

from __future__ import annotations

from .errors import DimensionMismatch
from .scalars import ONE, ZERO, Scalar, common_denominator, scalar


class Matrix:
    """Immutable dense matrix of Scalars, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data):
        if len(data) != rows * cols:
            raise DimensionMismatch(
                f"matrix data has {len(data)} entries, expected {rows * cols}"
            )
        self.rows = rows
        self.cols = cols
        self.data = tuple(data)

    @staticmethod
    def from_rows(rows, cols=None):
        rows = [tuple(scalar(e) for e in r) for r in rows]
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise DimensionMismatch("rows of unequal length")
        elif cols is None:
            raise DimensionMismatch("cannot infer width of an empty matrix")
        return Matrix(len(rows), cols, [e for r in rows for e in r])

    @staticmethod
    def identity(n):
        data = [ZERO] * (n * n)
        for k in range(n):
            data[k * n + k] = ONE
        return Matrix(n, n, data)

    @staticmethod
    def zeros(rows, cols):
        return Matrix(rows, cols, [ZERO] * (rows * cols))

    def __getitem__(self, rc):
        r, c = rc
        return self.data[r * self.cols + c]

    def row(self, r):
        return self.data[r * self.cols : (r + 1) * self.cols]

    def iter_rows(self):
        for r in range(self.rows):
            yield self.row(r)

    def transpose(self):
        d = self.data
        c = self.cols
        return Matrix(
            c, self.rows, [d[r * c + j] for j in range(c) for r in range(self.rows)]
        )

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = [ZERO] * (self.rows * other.cols)
        oc = other.cols
        for r in range(self.rows):
            base = r * self.cols
            for k in range(self.cols):
                a = self.data[base + k]
                if a.is_zero():
                    continue
                orow = other.data[k * oc : (k + 1) * oc]
                rbase = r * oc
                for j in range(oc):
                    b = orow[j]
                    if not b.is_zero():
                        out[rbase + j] = out[rbase + j] + a * b
        return Matrix(self.rows, oc, out)

    def apply(self, vector):
        """Matrix times column vector, given and returned as a tuple."""
        if len(vector) != self.cols:
            raise DimensionMismatch(
                f"vector of length {len(vector)} fed to a {self.rows}x{self.cols} matrix"
            )
        vec = [scalar(v) for v in vector]
        out = [ZERO] * self.rows
        for r in range(self.rows):
            base = r * self.cols
            acc = ZERO
            for k, v in enumerate(vec):
                if not v.is_zero():
                    a = self.data[base + k]
                    if not a.is_zero():
                        acc = acc + a * v
            out[r] = acc
        return tuple(out)

    def vstack(self, other):
        if self.cols != other.cols:
            raise DimensionMismatch("stacking matrices of different widths")
        return Matrix(self.rows + other.rows, self.cols, self.data + other.data)

    def scale(self, c):
        c = scalar(c)
        return Matrix(self.rows, self.cols, [c * e for e in self.data])

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("adding matrices of different shapes")
        return Matrix(
            self.rows, self.cols, [a + b for a, b in zip(self.data, other.data)]
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def conj(self):
        return Matrix(self.rows, self.cols, [e.conj() for e in self.data])

    def is_zero(self):
        return all(e.is_zero() for e in self.data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(
            " ".join(str(e) for e in self.row(r)) for r in range(self.rows)
        )
        return f"Matrix[{self.rows}x{self.cols}: {body}]"


# ---------------------------------------------------------------------------
# row reduction
# ---------------------------------------------------------------------------


def _clear_denominators(row):
    dens = [e for e in row if not e.is_zero()]
    if not dens:
        return row
    d = common_denominator(dens)
    if d == ONE:
        return row
    return [e * d for e in row]


def _rref_rows(rows, cols):
    """Fraction-free Gauss-Jordan on a list of row lists, in place.

    Returns the list of pivot columns; pivot rows are normalised to leading 1
    and sorted to the top in pivot order, zero rows at the bottom.
    """
    work = [_clear_denominators(list(r)) for r in rows]
    nr = len(work)
    prev = ONE
    pr = 0
    pivcols = []
    for c in range(cols):
        piv_i = None
        for i in range(pr, nr):
            if not work[i][c].is_zero():
                piv_i = i
                break
        if piv_i is None:
            continue
        if piv_i != pr:
            work[pr], work[piv_i] = work[piv_i], work[pr]
        prow = work[pr]
        piv = prow[c]
        scale = None
        for i in range(nr):
            if i == pr:
                continue
            irow = work[i]
            f = irow[c]
            if f.is_zero():
                # one-step formula degenerates to scaling by piv/prev
                if piv == prev:
                    continue
                if scale is None:
                    scale = piv / prev
                for j in range(cols):
                    e = irow[j]
                    if not e.is_zero():
                        irow[j] = e * scale
            else:
                for j in range(cols):
                    a = irow[j]
                    b = prow[j]
                    if a.is_zero():
                        if b.is_zero():
                            continue
                        num = -(f * b)
                    elif b.is_zero():
                        num = piv * a
                    else:
                        num = piv * a - f * b
                    irow[j] = num if prev == ONE else num / prev
        prev = piv
        pivcols.append(c)
        pr += 1
        if pr == nr:
            break
    for r, c in enumerate(pivcols):
        prow = work[r]
        piv = prow[c]
        if piv != ONE:
            work[r] = [e if e.is_zero() else e / piv for e in prow]
    return work, pivcols


def rref(m):
    """Reduced row-echelon form of the same shape (zero rows at the bottom)."""
    work, _ = _rref_rows(list(m.iter_rows()), m.cols)
    return Matrix(m.rows, m.cols, [e for r in work for e in r])


def rank(m):
    _, pivcols = _rref_rows(list(m.iter_rows()), m.cols)
    return len(pivcols)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


class Subspace:
    """Subspace of k^n given by its canonical RREF row basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, basis):
        # internal: basis must already be a pruned RREF matrix
        self.ambient_dim = ambient_dim
        self.basis = basis

    @staticmethod
    def from_rows(rows, ambient_dim):
        rows = [tuple(scalar(e) for e in r) for r in rows]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatch(
                    f"row of length {len(r)} in ambient dimension {ambient_dim}"
                )
        work, pivcols = _rref_rows(rows, ambient_dim)
        pruned = work[: len(pivcols)]
        return Subspace(
            ambient_dim, Matrix(len(pruned), ambient_dim, [e for r in pruned for e in r])
        )

    @staticmethod
    def zero(ambient_dim):
        return Subspace(ambient_dim, Matrix(0, ambient_dim, []))

    @staticmethod
    def full(ambient_dim):
        return Subspace(ambient_dim, Matrix.identity(ambient_dim))

    @staticmethod
    def span_of_coordinates(ambient_dim, indices):
        """Span of the given standard basis vectors (sorted, deduplicated)."""
        idx = sorted(set(indices))
        rows = []
        for k in idx:
            row = [ZERO] * ambient_dim
            row[k] = ONE
            rows.append(row)
        return Subspace(
            ambient_dim, Matrix(len(rows), ambient_dim, [e for r in rows for e in r])
        )

    @property
    def dim(self):
        return self.basis.rows

    def is_zero(self):
        return self.basis.rows == 0

    def is_full(self):
        return self.basis.rows == self.ambient_dim

    def reduce_vector(self, vector):
        """Residue of a vector after eliminating all basis pivots."""
        v = [scalar(e) for e in vector]
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector/ambient dimension mismatch")
        for r in range(self.basis.rows):
            row = self.basis.row(r)
            pc = next(j for j, e in enumerate(row) if not e.is_zero())
            c = v[pc]
            if not c.is_zero():
                for j in range(pc, self.ambient_dim):
                    b = row[j]
                    if not b.is_zero():
                        v[j] = v[j] - c * b
        return tuple(v)

    def contains_vector(self, vector):
        return all(e.is_zero() for e in self.reduce_vector(vector))

    def contains(self, other):
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("subspaces of different ambient spaces")
        return all(
            self.contains_vector(other.basis.row(r)) for r in range(other.basis.rows)
        )

    def sum(self, other):
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("subspaces of different ambient spaces")
        return Subspace.from_rows(
            list(self.basis.iter_rows()) + list(other.basis.iter_rows()),
            self.ambient_dim,
        )

    def intersect(self, other):
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("subspaces of different ambient spaces")
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        if self.is_full():
            return other
        if other.is_full():
            return self
        stacked = self.basis.vstack(other.basis)
        rel = kernel(stacked.transpose())
        p = self.basis.rows
        rows = []
        for r in range(rel.basis.rows):
            coeffs = rel.basis.row(r)[:p]
            vec = [ZERO] * self.ambient_dim
            for k, c in enumerate(coeffs):
                if not c.is_zero():
                    brow = self.basis.row(k)
                    for j in range(self.ambient_dim):
                        b = brow[j]
                        if not b.is_zero():
                            vec[j] = vec[j] + c * b
            rows.append(vec)
        return Subspace.from_rows(rows, self.ambient_dim)

    def map_rows(self, f):
        """Image of this subspace under the linear map given by ``f``."""
        rows = [f.apply(self.basis.row(r)) for r in range(self.basis.rows)]
        return Subspace.from_rows(rows, f.rows)

    def conj(self):
        return Subspace.from_rows(
            [tuple(e.conj() for e in r) for r in self.basis.iter_rows()],
            self.ambient_dim,
        )

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of k^{self.ambient_dim})"


def kernel(m):
    """Right null space {x : m x = 0} as a subspace of k^cols."""
    work, pivcols = _rref_rows(list(m.iter_rows()), m.cols)
    pivset = set(pivcols)
    free = [c for c in range(m.cols) if c not in pivset]
    rows = []
    for fc in free:
        vec = [ZERO] * m.cols
        vec[fc] = ONE
        for r, pc in enumerate(pivcols):
            e = work[r][fc]
            if not e.is_zero():
                vec[pc] = -e
        rows.append(vec)
    return Subspace.from_rows(rows, m.cols)


def image(m):
    """Column space of m as a subspace of k^rows."""
    return Subspace.from_rows(list(m.transpose().iter_rows()), m.rows)


def annihilator(w):
    """Matrix whose rows cut out w: v in w iff (annihilator rows) . v = 0."""
    if w.is_full():
        return Matrix(0, w.ambient_dim, [])
    return kernel(w.basis).basis


def preimage(f, w):
    """{v : f(v) in w} for a matrix f whose codomain is w's ambient space."""
    if f.rows != w.ambient_dim:
        raise DimensionMismatch(
            f"map into k^{f.rows} cannot hit a subspace of k^{w.ambient_dim}"
        )
    if w.is_full():
        return Subspace.full(f.cols)
    return kernel(annihilator(w) @ f)


def is_rational_subspace(w):
    """True iff w is spanned by vectors with plain rational coordinates.

    Decided on the canonical RREF basis: the subspace admits a QQ-basis iff
    every RREF entry is t-free and has no Gaussian part.
    """
    return all(e.is_rational() for e in w.basis.data)


def inverse(m):
    """Inverse of a square matrix; raises on singular input."""
    if m.rows != m.cols:
        raise DimensionMismatch("only square matrices can be inverted")
    n = m.rows
    aug = [list(m.row(r)) + list(Matrix.identity(n).row(r)) for r in range(n)]
    work, pivcols = _rref_rows(aug, 2 * n)
    if len(pivcols) != n or pivcols != list(range(n)):
        raise DimensionMismatch("matrix is singular")
    return Matrix(n, n, [e for r in work for e in r[n:]])


def solve_in_rows(basis_matrix, vector):
    """Coefficients x with x . basis_matrix = vector, or None if unsolvable.

    The basis rows must be linearly independent.
    """
    nb = basis_matrix.rows
    n = basis_matrix.cols
    vec = [scalar(e) for e in vector]
    if len(vec) != n:
        raise DimensionMismatch("vector/ambient dimension mismatch")
    # solve the transposed system augmented with the target column
    aug = [
        [basis_matrix[r, j] for r in range(nb)] + [vec[j]] for j in range(n)
    ]
    work, pivcols = _rref_rows(aug, nb + 1)
    if nb in pivcols:
        return None
    if len(pivcols) != nb:
        raise DimensionMismatch("basis rows are linearly dependent")
    return tuple(work[r][nb] for r in range(nb))
