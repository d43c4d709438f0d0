"""Exterior algebra over the dual space and the Chevalley differential.

Bases of Lambda^k are indexed by strictly increasing index tuples in
lexicographic order.  The differential follows the invariant-forms sign
convention

    (d a)(x_1, .., x_{k+1}) = sum_{i<j} (-1)^{i+j} a([x_i, x_j], x_1, ..,
                              omitting x_i and x_j, .., x_{k+1})

so on covectors d e^k = - sum_{i<j} c_ij^k e^i ^ e^j; all other modules
inherit these signs.  The antiderivation extension of the covector formula
gives the same matrices; :func:`differential_by_extension` exists so tests
can assert that.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import InternalCheckError
from .linalg import Matrix, image, kernel
from .scalars import ONE, ZERO


@lru_cache(maxsize=None)
def multi_indices(n, k):
    """All strictly increasing k-tuples from range(n), lexicographically."""
    if k < 0 or k > n:
        return ()
    if k == 0:
        return ((),)
    out = []

    def rec(start, acc):
        if len(acc) == k:
            out.append(tuple(acc))
            return
        for v in range(start, n - (k - len(acc)) + 1):
            acc.append(v)
            rec(v + 1, acc)
            acc.pop()

    rec(0, [])
    return tuple(out)


@lru_cache(maxsize=None)
def index_of(n, k):
    return {T: pos for pos, T in enumerate(multi_indices(n, k))}


@dataclass(frozen=True)
class ExteriorBasis:
    ambient: int
    degree: int

    @property
    def tuples(self):
        return multi_indices(self.ambient, self.degree)

    def __len__(self):
        return comb(self.ambient, self.degree)


def insertion_sign(c, rest):
    """Sign of sorting (c, *rest) with rest already increasing; 0 on repeat."""
    pos = 0
    for a in rest:
        if a == c:
            return 0, None
        if a < c:
            pos += 1
    merged = rest[:pos] + (c,) + rest[pos:]
    return (-1) ** pos, merged


def wedge_merge(s, t):
    """Merge two increasing tuples into one, with the permutation sign."""
    sign = 1
    merged = t
    for c in reversed(s):
        sg, merged = insertion_sign(c, merged)
        if sg == 0:
            return 0, None
        sign *= sg
    return sign, merged


def chevalley_differential(L, k):
    """Matrix of d_k: Lambda^k -> Lambda^{k+1} in the lexicographic bases."""
    n = L.n
    src = multi_indices(n, k)
    dst = multi_indices(n, k + 1)
    col_of = index_of(n, k)
    out = [ZERO] * (len(dst) * len(src))
    ncols = len(src)
    if k + 1 > n:
        return Matrix(0, ncols, [])
    for row, S in enumerate(dst):
        base = row * ncols
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                vec = L.bracket_basis(S[i], S[j])
                rest = S[:i] + S[i + 1 : j] + S[j + 1 :]
                pairsign = (-1) ** (i + j)  # 0-based has the same parity as 1-based
                for c, coeff in enumerate(vec):
                    if coeff.is_zero():
                        continue
                    sg, merged = insertion_sign(c, rest)
                    if sg == 0:
                        continue
                    col = col_of.get(merged)
                    if col is None:
                        continue
                    term = coeff if pairsign * sg > 0 else -coeff
                    out[base + col] = out[base + col] + term
    return Matrix(len(dst), ncols, out)


def differential_by_extension(L, k):
    """The same matrix built by extending d e^c as an antiderivation."""
    n = L.n
    src = multi_indices(n, k)
    dst = multi_indices(n, k + 1)
    row_of = index_of(n, k + 1)
    ncols = len(src)
    if k + 1 > n:
        return Matrix(0, ncols, [])
    # d e^c = - sum_{i<j} c_ij^c e^i ^ e^j
    dcov = [dict() for _ in range(n)]
    for (i, j), vec in L.bracket_pairs():
        for c, coeff in enumerate(vec):
            if not coeff.is_zero():
                dcov[c][(i, j)] = dcov[c].get((i, j), ZERO) - coeff
    out = [ZERO] * (len(dst) * ncols)
    for col, T in enumerate(src):
        for a in range(k):
            head = T[:a]
            tail = T[a + 1 :]
            sig_a = (-1) ** a
            for (i, j), coeff in dcov[T[a]].items():
                sg1, merged = wedge_merge(head, (i, j))
                if sg1 == 0:
                    continue
                sg2, full = wedge_merge(merged, tail)
                if sg2 == 0:
                    continue
                row = row_of[full]
                term = coeff if sig_a * sg1 * sg2 > 0 else -coeff
                out[row * ncols + col] = out[row * ncols + col] + term
    return Matrix(len(dst), ncols, out)


class CochainComplex:
    """All Chevalley differentials of an algebra; checks d o d = 0 once."""

    __slots__ = ("n", "diffs", "dims")

    def __init__(self, L):
        n = L.n
        self.n = n
        self.dims = tuple(comb(n, k) for k in range(n + 1))
        self.diffs = tuple(chevalley_differential(L, k) for k in range(n + 1))
        for k in range(n):
            if not (self.diffs[k + 1] @ self.diffs[k]).is_zero():
                raise InternalCheckError(f"d_{k + 1} d_{k} != 0")

    def betti(self):
        ranks = []
        for d in self.diffs:
            ranks.append(image(d).dim)
        out = []
        for k in range(self.n + 1):
            ker_dim = self.dims[k] - ranks[k]
            prev = ranks[k - 1] if k else 0
            out.append(ker_dim - prev)
        return tuple(out)


def cochain_complex(L):
    cache = L._cache
    cc = cache.get("cochain")
    if cc is None:
        cc = CochainComplex(L)
        cache["cochain"] = cc
    return cc


def cohomology_dims(L):
    """Betti numbers b_0..b_n of the algebra."""
    return cochain_complex(L).betti()


def poincare_duality_check(L):
    """b_k = b_{n-k} for all k (unimodularity at the algebra level)."""
    b = cohomology_dims(L)
    return all(b[k] == b[len(b) - 1 - k] for k in range(len(b)))
