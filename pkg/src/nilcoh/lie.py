"""Nilpotent Lie algebras given by structure constants.

An algebra of dimension n stores the brackets [e_i, e_j] for i < j as
coordinate vectors over the distinguished basis e_0..e_{n-1}; antisymmetry
is implicit in the storage.  When the structure constants are plain
rationals the QQ-span of the distinguished basis is the rational structure
used by all rationality tests in the package.

Indices are 0-based everywhere in code; the file format (see catalog) is
1-based.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    NonIntegrableError,
    NotAnIdealError,
    NotASubalgebraError,
    NotNilpotentError,
)
from .linalg import Matrix, Subspace, inverse, kernel, solve_in_rows
from .scalars import ONE, ZERO, I, Scalar, scalar


class LieAlgebra:
    """Finite-dimensional Lie algebra over a scalar tower."""

    __slots__ = ("n", "_brackets", "_cache")

    def __init__(self, n, brackets):
        self.n = n
        cleaned = {}
        for (i, j), vec in brackets.items():
            if not (0 <= i < j < n):
                raise DimensionMismatch(f"bracket index pair ({i}, {j}) out of range")
            vec = tuple(scalar(c) for c in vec)
            if len(vec) != n:
                raise DimensionMismatch("bracket vector has wrong length")
            if any(not c.is_zero() for c in vec):
                cleaned[(i, j)] = vec
        self._brackets = cleaned
        self._cache = {}

    @staticmethod
    def from_brackets(n, mapping):
        """Build from {(i, j): vector-or-{k: coeff}} with 0-based i < j."""
        brackets = {}
        for (i, j), val in mapping.items():
            if isinstance(val, dict):
                vec = [ZERO] * n
                for k, c in val.items():
                    vec[k] = scalar(c)
            else:
                vec = list(val)
            brackets[(i, j)] = vec
        return LieAlgebra(n, brackets)

    @staticmethod
    def abelian(n):
        return LieAlgebra(n, {})

    def bracket_pairs(self):
        return self._brackets.items()

    def bracket_basis(self, i, j):
        """[e_i, e_j] as a coordinate vector."""
        if i == j:
            return (ZERO,) * self.n
        if i < j:
            return self._brackets.get((i, j), (ZERO,) * self.n)
        vec = self._brackets.get((j, i))
        if vec is None:
            return (ZERO,) * self.n
        return tuple(-c for c in vec)

    def bracket(self, x, y):
        """Bilinear antisymmetric extension of the structure constants."""
        x = [scalar(e) for e in x]
        y = [scalar(e) for e in y]
        if len(x) != self.n or len(y) != self.n:
            raise DimensionMismatch("bracket arguments must have the algebra's dimension")
        out = [ZERO] * self.n
        for (i, j), vec in self._brackets.items():
            coef = x[i] * y[j] - x[j] * y[i]
            if not coef.is_zero():
                for k, c in enumerate(vec):
                    if not c.is_zero():
                        out[k] = out[k] + coef * c
        return tuple(out)

    def bracket_with_basis(self, x, b):
        """[x, e_b] for a coordinate vector x."""
        out = [ZERO] * self.n
        for i, xi in enumerate(x):
            if xi.is_zero() or i == b:
                continue
            vec = self.bracket_basis(i, b)
            for k, c in enumerate(vec):
                if not c.is_zero():
                    out[k] = out[k] + xi * c
        return tuple(out)

    def ad_from_basis(self, b):
        """Matrix of x -> [x, e_b] in the distinguished basis."""
        cols = [self.bracket_basis(i, b) for i in range(self.n)]
        data = [cols[i][k] for k in range(self.n) for i in range(self.n)]
        return Matrix(self.n, self.n, data)

    def is_real(self):
        return all(
            c.is_real() for vec in self._brackets.values() for c in vec
        )

    @property
    def field_level(self):
        has_t = any(
            not c.is_constant() for vec in self._brackets.values() for c in vec
        )
        has_i = not self.is_real()
        if has_t:
            return "QQ(t)(i)" if has_i else "QQ(t)"
        return "QQ(i)" if has_i else "QQ"

    def derived_subalgebra(self):
        """[g, g] as a subspace."""
        rows = list(self._brackets.values())
        return Subspace.from_rows(rows, self.n)

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.n == other.n and self._brackets == other._brackets

    def __repr__(self):
        return f"LieAlgebra(dim {self.n}, {len(self._brackets)} nonzero brackets)"


@dataclass(frozen=True)
class ValidationReport:
    jacobi_ok: bool
    jacobi_failures: tuple
    nilpotent: bool
    nu: int | None


@dataclass(frozen=True)
class CentralSeries:
    kind: str
    steps: tuple
    nu: int


def validate(L):
    """Check the Jacobi identity and nilpotency; never raises."""
    failures = []
    for i in range(L.n):
        for j in range(i + 1, L.n):
            vij = L.bracket_basis(i, j)
            if all(c.is_zero() for c in vij):
                vij = None
            for k in range(j + 1, L.n):
                acc = [ZERO] * L.n
                for vec, b in (
                    (vij, k),
                    (L.bracket_basis(j, k), i),
                    (L.bracket_basis(k, i), j),
                ):
                    if vec is None:
                        continue
                    term = L.bracket_with_basis(vec, b)
                    for a, c in enumerate(term):
                        if not c.is_zero():
                            acc[a] = acc[a] + c
                if any(not c.is_zero() for c in acc):
                    failures.append((i, j, k))
    steps = _descending_steps(L)
    nilpotent = steps[-1].is_zero()
    nu = len(steps) - 1 if nilpotent else None
    return ValidationReport(
        jacobi_ok=not failures,
        jacobi_failures=tuple(failures),
        nilpotent=nilpotent,
        nu=nu,
    )


def _descending_steps(L):
    """C^0 = g, C^{i+1} = [C^i, g]; stops at 0 or at the first repeat."""
    steps = [Subspace.full(L.n)]
    while True:
        cur = steps[-1]
        if cur.is_zero():
            return steps
        rows = []
        for r in range(cur.basis.rows):
            v = cur.basis.row(r)
            for b in range(L.n):
                w = L.bracket_with_basis(v, b)
                if any(not c.is_zero() for c in w):
                    rows.append(w)
        nxt = Subspace.from_rows(rows, L.n)
        if nxt == cur:
            return steps
        steps.append(nxt)


def _ascending_steps(L):
    """Z^0 = 0, Z^{i+1} = preimage of the centre of g/Z^i; stops at g or repeat."""
    from .linalg import annihilator

    steps = [Subspace.zero(L.n)]
    ads = [L.ad_from_basis(b) for b in range(L.n)]
    while True:
        cur = steps[-1]
        if cur.is_full():
            return steps
        ann = annihilator(cur)
        stacked_rows = []
        for ad in ads:
            m = ann @ ad
            stacked_rows.extend(m.iter_rows())
        if stacked_rows:
            big = Matrix(len(stacked_rows), L.n, [e for r in stacked_rows for e in r])
            nxt = kernel(big)
        else:
            nxt = Subspace.full(L.n)
        if nxt == cur:
            return steps
        steps.append(nxt)


def center(L):
    """The centre Z^1(g)."""
    return _ascending_steps_first(L)


def _ascending_steps_first(L):
    ads = [L.ad_from_basis(b) for b in range(L.n)]
    rows = [e for ad in ads for e in ad.iter_rows()]
    big = Matrix(len(rows), L.n, [e for r in rows for e in r])
    return kernel(big)


def central_series(L, kind):
    """Ascending or descending central series of a nilpotent algebra."""
    if kind == "descending":
        steps = _descending_steps(L)
        if not steps[-1].is_zero():
            raise NotNilpotentError("descending central series does not reach 0")
    elif kind == "ascending":
        steps = _ascending_steps(L)
        if not steps[-1].is_full():
            raise NotNilpotentError("ascending central series does not reach g")
    else:
        raise ValueError(f"unknown series kind {kind!r}")
    return CentralSeries(kind=kind, steps=tuple(steps), nu=len(steps) - 1)


def is_ideal(L, h):
    """[h, g] contained in h."""
    if h.ambient_dim != L.n:
        raise DimensionMismatch("subspace of the wrong ambient dimension")
    for r in range(h.basis.rows):
        v = h.basis.row(r)
        for b in range(L.n):
            if not h.contains_vector(L.bracket_with_basis(v, b)):
                return False
    return True


def is_subalgebra(L, h):
    """[h, h] contained in h."""
    rows = [h.basis.row(r) for r in range(h.basis.rows)]
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            if not h.contains_vector(L.bracket(rows[a], rows[b])):
                return False
    return True


@dataclass(frozen=True)
class QuotientData:
    """Quotient algebra together with the projection/lift bookkeeping.

    The complement basis is chosen greedily from the standard basis by lowest
    index, so quotient coordinates are reproducible.
    """

    algebra: LieAlgebra
    complement_indices: tuple
    _coords: Matrix  # maps an ambient vector to its (h + complement) coordinates
    h_dim: int

    def project(self, v):
        """Coordinates of v + h in the complement basis."""
        return self._coords.apply(v)[self.h_dim :]

    def lift(self, qv):
        """The standard-basis representative of a quotient vector."""
        n = self._coords.cols
        out = [ZERO] * n
        for k, idx in enumerate(self.complement_indices):
            c = scalar(qv[k])
            if not c.is_zero():
                out[idx] = out[idx] + c
        return tuple(out)


def quotient_data(L, h):
    if not is_ideal(L, h):
        raise NotAnIdealError("quotient requires an ideal")
    n = L.n
    rows = list(h.basis.iter_rows())
    complement = []
    span = Subspace.from_rows(rows, n)
    for j in range(n):
        if len(rows) == n:
            break
        e = tuple(ONE if k == j else ZERO for k in range(n))
        if not span.contains_vector(e):
            rows.append(e)
            complement.append(j)
            span = Subspace.from_rows(rows, n)
    basis = Matrix.from_rows(rows, n)
    coords = inverse(basis.transpose())
    m = n - h.dim
    qd = QuotientData(
        algebra=LieAlgebra.abelian(m),  # placeholder, replaced below
        complement_indices=tuple(complement),
        _coords=coords,
        h_dim=h.dim,
    )
    brackets = {}
    for a in range(m):
        for b in range(a + 1, m):
            vec = qd.project(L.bracket_basis(complement[a], complement[b]))
            brackets[(a, b)] = vec
    object.__setattr__(qd, "algebra", LieAlgebra(m, brackets))
    return qd


def quotient(L, h):
    """The quotient algebra g/h for an ideal h."""
    return quotient_data(L, h).algebra


def restrict(L, h):
    """h as a Lie algebra in its own RREF basis; requires a subalgebra."""
    if not is_subalgebra(L, h):
        raise NotASubalgebraError("restrict requires a subalgebra")
    d = h.dim
    brackets = {}
    for a in range(d):
        for b in range(a + 1, d):
            v = L.bracket(h.basis.row(a), h.basis.row(b))
            coeffs = solve_in_rows(h.basis, v)
            if coeffs is None:
                raise NotASubalgebraError("bracket left the subspace")
            brackets[(a, b)] = coeffs
    return LieAlgebra(d, brackets)


def change_basis(L, P):
    """Structure constants in the basis whose vectors are the rows of P."""
    if P.rows != L.n or P.cols != L.n:
        raise DimensionMismatch("change of basis must be square of the algebra's size")
    coords = inverse(P.transpose())
    brackets = {}
    for a in range(L.n):
        for b in range(a + 1, L.n):
            v = L.bracket(P.row(a), P.row(b))
            if any(not c.is_zero() for c in v):
                brackets[(a, b)] = coords.apply(v)
    return LieAlgebra(L.n, brackets)


# ---------------------------------------------------------------------------
# two-step algebras from a prescribed differential
# ---------------------------------------------------------------------------


def realify_standard(Lc):
    """Real form of an algebra given on a conjugation-stable basis.

    ``Lc`` has even dimension 2m with basis Z_0..Z_{m-1}, conj(Z_0)..
    conj(Z_{m-1}).  The real basis is e_{2k} = Z_k + conj(Z_k),
    e_{2k+1} = i (Z_k - conj(Z_k)); the constants must come out real.
    Returns the real algebra; its standard complex structure has
    (1,0)-vectors e_{2k} - i e_{2k+1}.
    """
    n = Lc.n
    if n % 2:
        raise DimensionMismatch("realification needs even dimension")
    m = n // 2
    rows = []
    for k in range(m):
        row = [ZERO] * n
        row[k] = ONE
        row[m + k] = ONE
        rows.append(row)
        row = [ZERO] * n
        row[k] = I
        row[m + k] = -I
        rows.append(row)
    E = Matrix.from_rows(rows, n)
    Lr = change_basis(Lc, E)
    for vec in dict(Lr.bracket_pairs()).values():
        for c in vec:
            if not c.is_real():
                raise NonIntegrableError(
                    "constants are not real: the basis is not conjugation-stable"
                )
    return Lr


def from_delta(dim_v, dim_w, delta):
    """Two-step algebra with integrable J from a map of dual generators.

    ``delta`` maps each of the ``dim_w`` extra (1,0) covectors to a 2-form
    on the first block: ``{(s, kind, i, j): coeff}`` where ``kind`` is
    ``"vv"`` (wedge of two (1,0) covectors of the first block, i < j) or
    ``"vvbar"`` (a (1,0) wedge a conjugated covector, any i, j).  A
    ``"vbarvbar"`` key is rejected: it would break integrability.

    Returns the real 2(dim_v + dim_w)-dimensional algebra together with its
    standard complex structure.
    """
    from .cstruct import ComplexStructure, is_integrable

    m = dim_v + dim_w
    n = 2 * m
    # the prescribed differentials as dicts over pairs of complex basis indices
    forms = [dict() for _ in range(dim_w)]
    for key, coeff in delta.items():
        s, kind, i, j = key
        c = scalar(coeff)
        if c.is_zero():
            continue
        if not (0 <= s < dim_w):
            raise DimensionMismatch(f"generator index {s} out of range")
        if kind == "vv":
            if not (0 <= i < j < dim_v):
                raise DimensionMismatch(f"bad vv indices ({i}, {j})")
            pair = (i, j)
        elif kind == "vvbar":
            if not (0 <= i < dim_v and 0 <= j < dim_v):
                raise DimensionMismatch(f"bad vvbar indices ({i}, {j})")
            pair = (i, m + j)
        elif kind == "vbarvbar":
            raise NonIntegrableError(
                "a component on two conjugated covectors breaks integrability"
            )
        else:
            raise ValueError(f"unknown delta component kind {kind!r}")
        forms[s][pair] = forms[s].get(pair, ZERO) + c

    def conj_form(form):
        out = {}
        for (u, v), c in form.items():
            cu, cv = (u + m) % n, (v + m) % n
            if cu < cv:
                out[(cu, cv)] = out.get((cu, cv), ZERO) + c.conj()
            else:
                out[(cv, cu)] = out.get((cv, cu), ZERO) - c.conj()
        return out

    bar_forms = [conj_form(f) for f in forms]

    brackets = {}
    for a in range(n):
        for b in range(a + 1, n):
            vec = [ZERO] * n
            hit = False
            for s in range(dim_w):
                c = forms[s].get((a, b))
                if c is not None and not c.is_zero():
                    vec[dim_v + s] = vec[dim_v + s] - c
                    hit = True
                cb = bar_forms[s].get((a, b))
                if cb is not None and not cb.is_zero():
                    vec[m + dim_v + s] = vec[m + dim_v + s] - cb
                    hit = True
            if hit:
                brackets[(a, b)] = vec
    Lc = LieAlgebra(n, brackets)
    L = realify_standard(Lc)

    rows = []
    for k in range(m):
        row = [ZERO] * n
        row[2 * k] = ONE
        row[2 * k + 1] = -I
        rows.append(row)
    J = ComplexStructure.from_onezero(Matrix.from_rows(rows, n))

    report = validate(L)
    if not report.jacobi_ok or not report.nilpotent or report.nu > 2:
        raise NonIntegrableError("construction produced an unexpected algebra")
    if not is_integrable(L, J):
        raise NonIntegrableError("construction produced a non-integrable structure")
    return L, J
