"""Left-invariant complex structures on a real Lie algebra.

A complex structure is a real n x n matrix J with J^2 = -I; its +i
eigenspace inside the complexification (the (1,0)-space) is kept in RREF
over the Gaussian extension of the base field.  Integrability is always
checked twice, once through the bracket identity on all basis pairs and
once through closure of the (1,0)-space under the bracket; disagreement is
an internal error, never a property of the input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    InternalCheckError,
    NonIntegrableError,
    ValidationFailure,
)
from .linalg import Matrix, Subspace, image, inverse, rank
from .scalars import ONE, ZERO, I, scalar


class ComplexStructure:
    """An endomorphism J of the real algebra with J^2 = -I."""

    __slots__ = ("matrix", "_one_zero")

    def __init__(self, matrix):
        self.matrix = matrix
        self._one_zero = None

    @staticmethod
    def from_matrix(matrix):
        if matrix.rows != matrix.cols:
            raise ValidationFailure("j-shape", "J must be square")
        n = matrix.rows
        if n % 2:
            raise ValidationFailure("j-shape", "J needs an even-dimensional space")
        for e in matrix.data:
            if not e.is_real():
                raise ValidationFailure("j-real", "J must have real entries")
        sq = matrix @ matrix
        if sq != Matrix.identity(n).scale(-1):
            raise ValidationFailure("j-square", "J^2 is not -identity")
        return ComplexStructure(matrix)

    @staticmethod
    def from_onezero(rows):
        """Reconstruct the unique real J whose (1,0)-space is the row span."""
        m, n = rows.rows, rows.cols
        if n != 2 * m:
            raise ValidationFailure(
                "j-onezero", f"{m} rows need ambient dimension {2 * m}, got {n}"
            )
        if rank(rows) != m:
            raise ValidationFailure("j-onezero", "(1,0) rows are linearly dependent")
        P = rows.vstack(rows.conj())
        if rank(P) != n:
            raise ValidationFailure(
                "j-onezero",
                "the row span meets its conjugate: no real J has this eigenspace",
            )
        # row-vector action x -> x P^{-1} D P with D = diag(i,..,i,-i,..,-i)
        D = Matrix(
            n,
            n,
            [
                (I if r < m else -I) if r == c else ZERO
                for r in range(n)
                for c in range(n)
            ],
        )
        M = (inverse(P) @ D) @ P
        jmat = M.transpose()
        for e in jmat.data:
            if not e.is_real():
                raise InternalCheckError("reconstructed J has non-real entries")
        J = ComplexStructure.from_matrix(jmat)
        if J.one_zero() != Subspace.from_rows(list(rows.iter_rows()), n):
            raise InternalCheckError("eigenspace round-trip failed")
        return J

    @property
    def n(self):
        return self.matrix.rows

    def apply(self, vector):
        return self.matrix.apply(vector)

    def one_zero(self):
        """The (1,0)-space as an RREF subspace over the Gaussian extension."""
        if self._one_zero is None:
            n = self.n
            m = Matrix(
                n,
                n,
                [
                    (ONE if r == c else ZERO) - I * self.matrix[r, c]
                    for r in range(n)
                    for c in range(n)
                ],
            )
            self._one_zero = image(m)
        return self._one_zero

    def zero_one(self):
        return self.one_zero().conj()

    def is_rational(self):
        return all(e.is_rational() for e in self.matrix.data)

    def __eq__(self, other):
        if not isinstance(other, ComplexStructure):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"ComplexStructure(n={self.n})"


def from_onezero_basis(L, rows):
    """Spec entry point: build J on L from a (1,0)-basis matrix."""
    if rows.cols != L.n:
        raise DimensionMismatch("(1,0) rows must live in the complexified algebra")
    return ComplexStructure.from_onezero(rows)


def _nijenhuis_vanishes(L, J):
    jcols = [J.apply(tuple(ONE if k == a else ZERO for k in range(L.n))) for a in range(L.n)]
    for a in range(L.n):
        ja = jcols[a]
        for b in range(a + 1, L.n):
            jb = jcols[b]
            term1 = L.bracket_basis(a, b)
            term2 = L.bracket(ja, jb)
            term3 = J.apply(L.bracket_with_basis(ja, b))
            inner = [-c for c in L.bracket_with_basis(jb, a)]
            term4 = J.apply(inner)
            for k in range(L.n):
                if not (term1[k] - term2[k] + term3[k] + term4[k]).is_zero():
                    return False
    return True


def _eigenspace_closed(L, J):
    V = J.one_zero()
    rows = [V.basis.row(r) for r in range(V.basis.rows)]
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            if not V.contains_vector(L.bracket(rows[a], rows[b])):
                return False
    return True


def is_integrable(L, J):
    """Integrability of J on L; the two equivalent tests must agree."""
    if J.n != L.n:
        raise DimensionMismatch("J and the algebra have different dimensions")
    nij = _nijenhuis_vanishes(L, J)
    eig = _eigenspace_closed(L, J)
    if nij != eig:
        raise InternalCheckError(
            "bracket identity and eigenspace closure disagree on integrability"
        )
    return nij


@dataclass(frozen=True)
class ClassifyFlags:
    abelian: bool
    parallelisable: bool
    rational: bool
    nilpotent_j: bool


def classify(L, J):
    """Classification flags of an integrable structure."""
    if not is_integrable(L, J):
        raise NonIntegrableError("classify requires an integrable structure")
    V = J.one_zero()
    vrows = [V.basis.row(r) for r in range(V.basis.rows)]
    wrows = [tuple(e.conj() for e in r) for r in vrows]
    abelian = all(
        all(c.is_zero() for c in L.bracket(vrows[a], vrows[b]))
        for a in range(len(vrows))
        for b in range(a + 1, len(vrows))
    )
    parallelisable = all(
        all(c.is_zero() for c in L.bracket(v, w)) for v in vrows for w in wrows
    )
    _, exhausts = nilpotent_j_series(L, J)
    return ClassifyFlags(
        abelian=abelian,
        parallelisable=parallelisable,
        rational=J.is_rational(),
        nilpotent_j=exhausts,
    )


def j_invariant(J, w):
    """True iff J maps the subspace onto itself."""
    return w.map_rows(J.matrix) == w


def j_closure(J, w):
    """w + Jw, the smallest J-invariant subspace containing w."""
    return w.sum(w.map_rows(J.matrix))


def nilpotent_j_series(L, J):
    """The ascending series whose graded pieces are the largest J-invariant
    subspaces of the successive quotient centres.

    Returns (steps, exhausts): ``exhausts`` is False when the series stalls
    before reaching the whole algebra.
    """
    from .lie import center, quotient_data

    n = L.n
    steps = [Subspace.zero(n)]
    while True:
        t = steps[-1]
        if t.is_full():
            return steps, True
        qd = quotient_data(L, t)
        q = qd.algebra
        # induced J on the quotient: needs t to be J-invariant
        if not j_invariant(J, t):
            raise InternalCheckError("series step is not J-invariant")
        cols = []
        for k in range(q.n):
            unit = tuple(ONE if a == k else ZERO for a in range(q.n))
            cols.append(qd.project(J.apply(qd.lift(unit))))
        jq = Matrix(q.n, q.n, [cols[c][r] for r in range(q.n) for c in range(q.n)])
        if (jq @ jq) != Matrix.identity(q.n).scale(-1):
            raise InternalCheckError("induced quotient J does not square to -1")
        zq = center(q)
        w = zq.intersect(zq.map_rows(jq))
        if w.is_zero():
            return steps, False
        rows = list(t.basis.iter_rows())
        for r in range(w.basis.rows):
            rows.append(qd.lift(w.basis.row(r)))
        steps.append(Subspace.from_rows(rows, n))
