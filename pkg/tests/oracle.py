"""Independent brute-force rank oracle for Betti and Hodge numbers.

Everything here is deliberately written against sympy and from first
principles (antiderivation rule, eigenvector extraction by nullspace,
plain dense elimination for ranks) so that it shares no code path with the
engine: scalars cross the boundary as rendered strings only.
"""

from itertools import combinations

import sympy
from sympy.polys.matrices import DomainMatrix

T = sympy.symbols("t")
_LOCALS = {"t": T, "i": sympy.I}


def sym(x):
    return sympy.sympify(str(x), locals=_LOCALS, rational=True)


def oracle_rank(M):
    if M.rows == 0 or M.cols == 0:
        return 0
    try:
        return DomainMatrix.from_Matrix(M, extension=True).rank()
    except Exception:
        return M.rank(iszerofunc=lambda e: sympy.cancel(sympy.together(e)) == 0)


def _brackets_table(L):
    """{(i, j): [sympy coeffs]} for i < j, from rendered scalar strings."""
    return {
        (i, j): [sym(c) for c in vec] for (i, j), vec in L.bracket_pairs()
    }


def _covector_differentials(n, table):
    """d e^k = -sum c_ij^k e^i ^ e^j as {k: {(i, j): coeff}}."""
    d = {k: {} for k in range(n)}
    for (i, j), vec in table.items():
        for k, c in enumerate(vec):
            if c != 0:
                d[k][(i, j)] = d[k].get((i, j), 0) - c
    return d


def _wedge_insert(idx, mono):
    """Insert one index into a sorted monomial, with sign; None on repeat."""
    if idx in mono:
        return 0, None
    pos = sum(1 for a in mono if a < idx)
    return (-1) ** pos, tuple(sorted(mono + (idx,)))


def _differential_matrix(n, dcov, k):
    """d_k on Lambda^k by the antiderivation rule, lexicographic bases."""
    src = list(combinations(range(n), k))
    dst = list(combinations(range(n), k + 1))
    pos = {m: a for a, m in enumerate(dst)}
    M = sympy.zeros(len(dst), len(src))
    for col, mono in enumerate(src):
        for a, idx in enumerate(mono):
            rest = mono[:a] + mono[a + 1 :]
            sign_a = (-1) ** a
            for (u, v), coeff in dcov[idx].items():
                s1, m1 = _wedge_insert(v, rest)
                if s1 == 0:
                    continue
                s2, m2 = _wedge_insert(u, m1)
                if s2 == 0:
                    continue
                M[pos[m2], col] += sign_a * s1 * s2 * coeff
    return M


def oracle_betti(L):
    """Betti numbers from ranks of independently constructed differentials."""
    n = L.n
    dcov = _covector_differentials(n, _brackets_table(L))
    ranks = [
        oracle_rank(_differential_matrix(n, dcov, k)) for k in range(n + 1)
    ]
    out = []
    for k in range(n + 1):
        dim = sympy.binomial(n, k)
        prev = ranks[k - 1] if k else 0
        out.append(int(dim) - ranks[k] - prev)
    return tuple(out)


def _complex_constants(L, J):
    """Structure constants on a (1,0)+(0,1) eigenbasis, via sympy only."""
    n = L.n
    m = n // 2
    jm = sympy.Matrix(n, n, lambda r, c: sym(J.matrix[r, c]))
    eig = (jm - sympy.I * sympy.eye(n)).nullspace()
    assert len(eig) == m, "J has the wrong +i eigenspace dimension"
    rows = [list(v.T) for v in eig]
    P = sympy.Matrix(rows + [[sympy.conjugate(e) for e in r] for r in rows])
    assert P.rank() == n
    Pt = P.T
    table = _brackets_table(L)

    def real_bracket(u, v):
        w = [sympy.S.Zero] * n
        for (a, b), vec in table.items():
            coef = u[a] * v[b] - u[b] * v[a]
            if coef != 0:
                for k, c in enumerate(vec):
                    w[k] += coef * c
        return sympy.Matrix(n, 1, w)

    gamma = {}
    basis = [P.row(r).T for r in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            w = real_bracket(list(basis[a]), list(basis[b]))
            coords = Pt.LUsolve(w)
            coords = [sympy.cancel(sympy.expand(c)) for c in coords]
            if any(c != 0 for c in coords):
                gamma[(a, b)] = coords
    return gamma


def oracle_hodge(L, J):
    """Hodge diamond by brute-force ranks of the bidegree blocks."""
    n = L.n
    m = n // 2
    dcov = _covector_differentials(n, _complex_constants(L, J))
    diamonds = []
    for p in range(m + 1):
        row = []
        prev_rank = 0
        for q in range(m + 1):
            k = p + q
            src = list(combinations(range(n), k))
            dst = list(combinations(range(n), k + 1))
            D = _differential_matrix(n, dcov, k)
            cols = [
                a for a, mono in enumerate(src)
                if sum(1 for x in mono if x < m) == p
            ]
            rows = [
                a for a, mono in enumerate(dst)
                if sum(1 for x in mono if x < m) == p
            ]
            block = D[rows, cols] if cols and rows else sympy.zeros(len(rows), len(cols))
            r = oracle_rank(block)
            row.append(len(cols) - r - prev_rank)
            prev_rank = r
        diamonds.append(row)
    return [list(map(int, r)) for r in diamonds]
