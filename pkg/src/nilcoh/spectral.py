"""Exact spectral sequences of finite filtered cochain complexes.

Page dimensions are computed cell by cell from the closed subspace formula

    Z_r^{p,q} = F^p A^{p+q}  intersect  d^{-1}(F^{p+r} A^{p+q+1})
    E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2})

rather than by iterating page differentials; with a compatible filtration
the formula is valid for every r >= 0.  The first page of the
grading-by-(1,0)-degree sequence is the Hodge diamond (the common
indexing; some sources label the same page E_2).
"""

from __future__ import annotations

from dataclasses import dataclass

from .chevalley import cochain_complex, cohomology_dims, multi_indices
from .dolbeault import BigradedComplex
from .errors import FiltrationError, InternalCheckError, NotAnIdealError
from .lie import LieAlgebra, center, change_basis, is_ideal, quotient, restrict
from .linalg import Matrix, Subspace, annihilator, image, kernel, preimage
from .scalars import ONE, ZERO


@dataclass(frozen=True)
class SpectralTable:
    """Dimensions of the pages of one spectral sequence.

    ``pages[r][(p, q)]`` over the rectangle 0 <= p <= p_max, 0 <= q <= q_max;
    ``abutment[n]`` is the cohomology of the total complex.
    """

    pages: dict
    stable_page: int
    abutment: tuple
    p_max: int
    q_max: int

    def page(self, r):
        if r in self.pages:
            return self.pages[r]
        if r > self.stable_page:
            return self.pages[self.stable_page]
        raise KeyError(r)

    def infinity(self):
        return self.pages[self.stable_page]

    def degree_total(self, r, n):
        pg = self.page(r)
        return sum(v for (p, q), v in pg.items() if p + q == n)


class FilteredComplex:
    """A cochain complex with a compatible descending filtration.

    ``dims[n]`` and ``diffs[n]: A^n -> A^{n+1}`` for n = 0..N (the last
    differential may have zero rows); ``filtration[n]`` lists
    F^0 = A^n down to a final zero subspace, the same number of levels for
    every degree.
    """

    def __init__(self, dims, diffs, filtration):
        self.N = len(dims) - 1
        self.dims = tuple(dims)
        self.diffs = list(diffs)
        self.filt = [list(chain) for chain in filtration]
        if len(self.diffs) != self.N + 1 or len(self.filt) != self.N + 1:
            raise FiltrationError("degrees of dims/diffs/filtration disagree")
        depths = {len(chain) for chain in self.filt}
        if len(depths) != 1:
            raise FiltrationError("filtration depth differs across degrees")
        self.zero_level = depths.pop() - 1
        for n in range(self.N + 1):
            d = self.diffs[n]
            if d.cols != self.dims[n] or d.rows != (
                self.dims[n + 1] if n < self.N else 0
            ):
                raise FiltrationError(f"differential {n} has the wrong shape")
            chain = self.filt[n]
            if not chain[0].is_full():
                raise FiltrationError(f"F^0 A^{n} is not the whole space")
            if not chain[-1].is_zero():
                raise FiltrationError(f"the filtration of A^{n} does not end at 0")
            for p in range(len(chain) - 1):
                if not chain[p].contains(chain[p + 1]):
                    raise FiltrationError(f"F^{p + 1} A^{n} not inside F^{p} A^{n}")
        for n in range(self.N):
            if not (self.diffs[n + 1] @ self.diffs[n]).is_zero():
                raise FiltrationError("the differential does not square to zero")
        for n in range(self.N + 1):
            d = self.diffs[n]
            for p in range(1, self.zero_level):
                fp = self.filt[n][p]
                if fp.is_zero():
                    break
                mapped = d @ fp.basis.transpose()
                ann = annihilator(self._F(p, n + 1))
                if ann.rows and not (ann @ mapped).is_zero():
                    raise FiltrationError(
                        f"d does not respect the filtration at F^{p} A^{n}"
                    )
        self._zcache = {}

    # -- accessors -----------------------------------------------------------

    def dim(self, n):
        if 0 <= n <= self.N:
            return self.dims[n]
        return 0

    def _F(self, p, n):
        if n < 0 or n > self.N:
            return Subspace.zero(0)
        if p <= 0:
            return self.filt[n][0]
        if p >= self.zero_level:
            return Subspace.zero(self.dims[n])
        return self.filt[n][p]

    def _d(self, n):
        if 0 <= n <= self.N:
            return self.diffs[n]
        if n < 0:
            return Matrix(self.dim(n + 1), 0, [])
        return Matrix(0, 0, [])

    def _z(self, r, p, n):
        """Z_r^{p, n-p} = F^p A^n intersect d^{-1}(F^{p+r} A^{n+1})."""
        if n < 0 or n > self.N:
            return Subspace.zero(self.dim(n))
        p_eff = max(p, 0)
        s_eff = min(max(p + r, -1), self.zero_level)
        if s_eff <= p_eff:
            # d(F^p) lies in F^p already, so the condition is vacuous
            return self._F(p_eff, n)
        key = (p_eff, s_eff, n)
        z = self._zcache.get(key)
        if z is None:
            pre = preimage(self._d(n), self._F(s_eff, n + 1))
            z = self._F(p_eff, n).intersect(pre)
            self._zcache[key] = z
        return z

    # -- pages ----------------------------------------------------------------

    def cell(self, r, p, q):
        """dim E_r^{p,q}."""
        n = p + q
        if n < 0 or n > self.N:
            return 0
        znum = self._z(r, p, n)
        if znum.is_zero():
            return 0
        bound = self._z(r - 1, p + 1, n)
        dz = self._z(r - 1, p - r + 1, n - 1)
        if not dz.is_zero():
            img = dz.map_rows(self._d(n - 1))
            bound = bound.sum(img)
        return znum.dim - bound.dim

    def page(self, r):
        """Table of dim E_r^{p,q} over the support rectangle of E_0."""
        p_max, q_max = self.rectangle()
        return {
            (p, q): self.cell(r, p, q)
            for p in range(p_max + 1)
            for q in range(q_max + 1)
        }

    def rectangle(self):
        p_max = max(self.zero_level - 1, 0)
        q_max = 0
        for n in range(self.N + 1):
            for p in range(min(p_max, n) + 1):
                q = n - p
                if q > q_max and self._F(p, n).dim > self._F(p + 1, n).dim:
                    q_max = q
        return p_max, q_max

    def abutment(self):
        out = []
        prev_rank = 0
        for n in range(self.N + 1):
            d = self._d(n)
            r = image(d).dim
            out.append(self.dims[n] - r - prev_rank)
            prev_rank = r
        return tuple(out)

    def table(self):
        """All pages up to guaranteed stability, with the convergence check.

        Once r reaches the filtration depth every Z_r and boundary space is
        literally constant in r, so the page there is E_infinity.  Cell
        dimensions decrease pointwise in r, hence the first page equal to it
        is already stable.  (Three equal consecutive pages would not be
        enough: a filtration of depth 3 can have E_0 = E_1 = E_2 with a
        non-zero d_2.)
        """
        r_inf = max(self.zero_level, 1)
        pages = {r: self.page(r) for r in range(r_inf + 1)}
        einf = pages[r_inf]
        stable = r_inf
        for r in range(r_inf + 1):
            if pages[r] == einf:
                stable = r
                break
        abut = self.abutment()
        for n in range(self.N + 1):
            total = sum(v for (p, q), v in einf.items() if p + q == n)
            if total != abut[n]:
                raise InternalCheckError(
                    f"E_infinity total {total} != H^{n} = {abut[n]}"
                )
        p_max, q_max = self.rectangle()
        return SpectralTable(
            pages=pages,
            stable_page=stable,
            abutment=abut,
            p_max=p_max,
            q_max=q_max,
        )


def page(fc, r):
    """Spec entry point: the r-th page table of a filtered complex."""
    return fc.page(r)


# ---------------------------------------------------------------------------
# the two filtrations used by the package
# ---------------------------------------------------------------------------


def froelicher_complex(L, J, frame=None):
    """Filtered complex of the (1,0)-degree filtration on the complexified
    Chevalley complex."""
    frame = frame or BigradedComplex(L, J)
    n = frame.n
    m = frame.m
    dims = [len(multi_indices(n, k)) for k in range(n + 1)]
    diffs = [frame.differential(k) for k in range(n + 1)]
    filtration = []
    for k in range(n + 1):
        blocks = frame.block_positions(k)
        chain = []
        for p in range(m + 2):
            positions = []
            for (bp, bq), pos in blocks.items():
                if bp >= p:
                    positions.extend(pos)
            chain.append(Subspace.span_of_coordinates(dims[k], positions))
        filtration.append(chain)
    return FilteredComplex(dims, diffs, filtration)


def froelicher(L, J, frame=None):
    """Spectral sequence from Dolbeault to de Rham dimensions.

    The first page is cross-checked against the Hodge diamond and the
    abutment against the Betti numbers; a mismatch is an internal error.
    """
    frame = frame or BigradedComplex(L, J)
    fc = froelicher_complex(L, J, frame=frame)
    table = fc.table()
    diamond = frame.hodge_numbers()
    for (p, q), v in table.pages[1].items():
        expected = diamond.entry(p, q) if (p <= frame.m and q <= frame.m) else 0
        if v != expected:
            raise InternalCheckError(
                f"first page cell ({p},{q}) = {v} differs from h^{p}{q} = {expected}"
            )
    betti = cohomology_dims(L)
    if tuple(table.abutment) != tuple(betti):
        raise InternalCheckError("abutment differs from the Betti numbers")
    return table


@dataclass(frozen=True)
class HochschildSerreResult:
    table: SpectralTable
    tensor_check: bool | None  # None when the ideal is not central


def hochschild_serre(L, h):
    """Spectral sequence of the filtration induced by an ideal h.

    When h is central the second page is checked against the product
    formula dim E_2^{p,q} = b_p(g/h) * b_q(h) and the result of that check
    is reported; for a non-central ideal ``tensor_check`` is None.
    """
    if not is_ideal(L, h):
        raise NotAnIdealError("the Hochschild-Serre filtration needs an ideal")
    n = L.n
    # adapted basis: a greedy standard-vector complement first, then h
    rows = []
    complement = []
    span = h
    for j in range(n):
        if h.dim + len(complement) == n:
            break
        e = tuple(ONE if k == j else ZERO for k in range(n))
        if not span.contains_vector(e):
            rows.append(e)
            complement.append(j)
            span = span.sum(Subspace.from_rows([e], n))
    base_count = len(complement)
    rows.extend(h.basis.iter_rows())
    La = change_basis(L, Matrix.from_rows(rows, n))
    cc = cochain_complex(La)
    dims = list(cc.dims)
    diffs = list(cc.diffs)
    filtration = []
    for k in range(n + 1):
        chain = []
        for p in range(base_count + 2):
            positions = [
                pos
                for pos, T in enumerate(multi_indices(n, k))
                if sum(1 for a in T if a < base_count) >= p
            ]
            chain.append(Subspace.span_of_coordinates(dims[k], positions))
        filtration.append(chain)
    fc = FilteredComplex(dims, diffs, filtration)
    table = fc.table()
    tensor_check = None
    if center(L).contains(h):
        bq = cohomology_dims(restrict(L, h)) if h.dim else (1,)
        bp = cohomology_dims(quotient(L, h))
        e2 = table.page(2)
        tensor_check = all(
            v == (bp[p] if p < len(bp) else 0) * (bq[q] if q < len(bq) else 0)
            for (p, q), v in e2.items()
        )
    return HochschildSerreResult(table=table, tensor_check=tensor_check)
