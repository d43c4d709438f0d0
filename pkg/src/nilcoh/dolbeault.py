"""The bigraded complex of an integrable structure and its cohomology.

The complexified Chevalley complex is written in the wedge basis dual to
the RREF basis of the (1,0)-space and its conjugate.  In that basis every
bidegree (p,q) is a coordinate block of Lambda^{p+q}, the differential
splits into the two projections raising p or q, and integrability is
equivalent to the other two projections vanishing (which is re-checked on
every extraction).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .chevalley import chevalley_differential, cohomology_dims, multi_indices
from .cstruct import is_integrable
from .errors import NonIntegrableError
from .lie import change_basis
from .linalg import Matrix, image, kernel


def _submatrix(m, row_idx, col_idx):
    data = []
    for r in row_idx:
        base = r * m.cols
        for c in col_idx:
            data.append(m.data[base + c])
    return Matrix(len(row_idx), len(col_idx), data)


class BigradedComplex:
    """Shared frame for all Dolbeault-side computations on one (L, J) pair."""

    def __init__(self, L, J):
        if not is_integrable(L, J):
            raise NonIntegrableError("the structure is not integrable")
        self.L = L
        self.J = J
        self.n = L.n
        self.m = L.n // 2
        V = J.one_zero()
        basis = V.basis.vstack(V.basis.conj())
        self.complex_basis = basis
        self.Lc = change_basis(L, basis)
        self._diffs = {}
        self._blocks = {}

    def differential(self, k):
        d = self._diffs.get(k)
        if d is None:
            d = chevalley_differential(self.Lc, k)
            self._diffs[k] = d
        return d

    def block_positions(self, k):
        """Positions of each (p, q) block inside the degree-k wedge basis."""
        blocks = self._blocks.get(k)
        if blocks is None:
            blocks = {}
            for pos, T in enumerate(multi_indices(self.n, k)):
                p = sum(1 for a in T if a < self.m)
                blocks.setdefault((p, k - p), []).append(pos)
            self._blocks[k] = blocks
        return blocks

    def positions(self, p, q):
        if not (0 <= p <= self.m and 0 <= q <= self.m):
            return []
        return self.block_positions(p + q).get((p, q), [])

    def del_delbar(self, p, q):
        """The (p+1,q) and (p,q+1) projections of d on the (p,q) block.

        Raises NonIntegrableError if d has a component in the (p+2,q-1) or
        (p-1,q+2) blocks, which integrability forbids.
        """
        k = p + q
        d = self.differential(k)
        cols = self.positions(p, q)
        del_rows = self.positions(p + 1, q)
        delbar_rows = self.positions(p, q + 1)
        stray = self.positions(p + 2, q - 1) + self.positions(p - 1, q + 2)
        if stray and cols:
            if not _submatrix(d, stray, cols).is_zero():
                raise NonIntegrableError(
                    f"differential leaves the bidegree ladder at ({p}, {q})"
                )
        return _submatrix(d, del_rows, cols), _submatrix(d, delbar_rows, cols)

    def delbar(self, p, q):
        return self.del_delbar(p, q)[1]

    def hodge_numbers(self):
        m = self.m
        table = []
        for p in range(m + 1):
            row = []
            prev_rank = 0
            for q in range(m + 1):
                db = self.delbar(p, q)
                ker_dim = db.cols - image(db).dim
                row.append(ker_dim - prev_rank)
                prev_rank = image(db).dim
            table.append(tuple(row))
        return HodgeDiamond(m=m, table=tuple(table))

    def check_bigraded_identities(self):
        """del^2 = delbar^2 = del delbar + delbar del = 0 on every block."""
        m = self.m
        for p in range(m + 1):
            for q in range(m + 1):
                dl, db = self.del_delbar(p, q)
                dl_next, db_after_dl = self.del_delbar(p + 1, q)
                dl_after_db, db_next = self.del_delbar(p, q + 1)
                if not (dl_next @ dl).is_zero():
                    return False
                if not (db_next @ db).is_zero():
                    return False
                if not (dl_after_db @ db + db_after_dl @ dl).is_zero():
                    return False
        return True


@dataclass(frozen=True)
class HodgeDiamond:
    """Table of Dolbeault dimensions h^{p,q}, 0 <= p, q <= m."""

    m: int
    table: tuple

    def entry(self, p, q):
        return self.table[p][q]

    def total(self, k):
        """Sum of h^{p,q} over p + q = k."""
        return sum(
            self.table[p][k - p]
            for p in range(max(0, k - self.m), min(k, self.m) + 1)
        )

    def is_serre_symmetric(self):
        m = self.m
        return all(
            self.table[p][q] == self.table[m - p][m - q]
            for p in range(m + 1)
            for q in range(m + 1)
        )

    def as_lists(self):
        return [list(row) for row in self.table]


def del_delbar(L, J, p, q, frame=None):
    """Matrices of the two projections of d on the (p,q) block."""
    frame = frame or BigradedComplex(L, J)
    return frame.del_delbar(p, q)


def hodge_numbers(L, J, frame=None):
    """The Hodge diamond h^{p,q} of (L, J)."""
    frame = frame or BigradedComplex(L, J)
    return frame.hodge_numbers()


def serre_duality_check(L, J, frame=None):
    """h^{p,q} = h^{m-p,m-q} for all bidegrees."""
    return hodge_numbers(L, J, frame=frame).is_serre_symmetric()


def froelicher_inequality_check(L, J, frame=None):
    """sum_{p+q=k} h^{p,q} >= b_k in every degree."""
    h = hodge_numbers(L, J, frame=frame)
    b = cohomology_dims(L)
    return all(h.total(k) >= b[k] for k in range(L.n + 1))
