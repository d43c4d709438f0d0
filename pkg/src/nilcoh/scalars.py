"""Exact scalar arithmetic over the tower QQ <= QQ(t) <= QQ(t)(i).

A scalar is a Gaussian number a + b*i whose real and imaginary parts are
rational functions of one transcendental parameter ``t`` with integer
polynomial numerator and denominator.  Plain rationals are the degree-zero
case.  Everything is kept in a canonical form so that equality is a plain
component comparison:

* fractions are reduced (coprime contents, coprime primitive parts),
* denominators have positive leading coefficient,
* zero is ``0/1``.

No floating point is used anywhere.

String grammar (see :func:`parse_scalar`): integer literals, ``t``, ``i``,
``+ - * /`` and parentheses.  ``**`` with a non-negative integer literal
exponent is accepted as a convenience superset; the renderer uses it for
powers of ``t``.
"""

from __future__ import annotations

import ast
from math import gcd

from .errors import ScalarSyntaxError

# ---------------------------------------------------------------------------
# integer polynomials: tuple of coefficients, low degree first, no trailing
# zeros, () is the zero polynomial
# ---------------------------------------------------------------------------

_PZERO = ()
_PONE = (1,)


def _pnorm(coeffs):
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def _padd(a, b):
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] += c
    return _pnorm(out)


def _pneg(a):
    return tuple(-c for c in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return _PZERO
    if len(a) == 1:
        if a[0] == 1:
            return b
        c = a[0]
        return tuple(c * x for x in b)
    if len(b) == 1:
        if b[0] == 1:
            return a
        c = b[0]
        return tuple(c * x for x in a)
    out = [0] * (len(a) + len(b) - 1)
    for k, ca in enumerate(a):
        if ca:
            for l, cb in enumerate(b):
                if cb:
                    out[k + l] += ca * cb
    return _pnorm(out)


def _pcontent(a):
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def _pprim(a):
    """Split into (content, primitive part); content > 0, sign stays in the
    primitive part."""
    if not a:
        return 0, _PZERO
    c = _pcontent(a)
    if c == 1:
        return 1, a
    return c, tuple(x // c for x in a)


def _pdivexact(a, b):
    """Exact division in ZZ[t]; the caller guarantees divisibility."""
    if not a:
        return _PZERO
    if len(b) == 1:
        d = b[0]
        if d == 1:
            return a
        return tuple(x // d for x in a)
    rem = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k]
        if c:
            qc = c // lb
            q[k - db] = qc
            for l, cb in enumerate(b):
                rem[k - db + l] -= qc * cb
    return _pnorm(q)


def _pprem(a, b):
    """Pseudo-remainder of a by b: repeatedly scale by lc(b) and subtract."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while True:
        r = _pnorm(r)
        dr = len(r) - 1
        if dr < db or not r:
            return r
        lead = r[-1]
        r = [lb * x for x in r]
        for l, cb in enumerate(b):
            r[dr - db + l] -= lead * cb
        r = list(r)


def _pgcd(a, b):
    """gcd in ZZ[t] via the primitive pseudo-remainder sequence.

    Result has positive leading coefficient (1 when the inputs are coprime).
    """
    if not a:
        g = b
    elif not b:
        g = a
    elif len(a) == 1 and len(b) == 1:
        return (gcd(a[0], b[0]),)
    else:
        ca, pa = _pprim(a)
        cb, pb = _pprim(b)
        while pb:
            _, r = _pprim(_pprem(pa, pb))
            pa, pb = pb, tuple(r)
        c = gcd(ca, cb)
        g = tuple(c * x for x in pa) if c != 1 else pa
    if g and g[-1] < 0:
        g = _pneg(g)
    return g


def _plcm(a, b):
    if not a or not b:
        return _PZERO
    g = _pgcd(a, b)
    m = _pmul(a, _pdivexact(b, g))
    if m[-1] < 0:
        m = _pneg(m)
    return m


# ---------------------------------------------------------------------------
# rational functions: canonical (num, den) pairs
# ---------------------------------------------------------------------------

_RF_ZERO = (_PZERO, _PONE)
_RF_ONE = (_PONE, _PONE)


def _rf_norm(num, den):
    if not den:
        raise ZeroDivisionError("scalar division by zero")
    if not num:
        return _RF_ZERO
    if len(num) == 1 and len(den) == 1:
        n, d = num[0], den[0]
        g = gcd(n, d)
        if g != 1:
            n //= g
            d //= g
        if d < 0:
            n, d = -n, -d
        return ((n,), (d,))
    g = _pgcd(num, den)
    if len(g) > 1 or g[0] != 1:
        num = _pdivexact(num, g)
        den = _pdivexact(den, g)
    if den[-1] < 0:
        num = _pneg(num)
        den = _pneg(den)
    return (num, den)


def _rf_add(a, b):
    an, ad = a
    bn, bd = b
    if not an:
        return b
    if not bn:
        return a
    if ad == bd:
        return _rf_norm(_padd(an, bn), ad)
    return _rf_norm(_padd(_pmul(an, bd), _pmul(bn, ad)), _pmul(ad, bd))


def _rf_sub(a, b):
    return _rf_add(a, (_pneg(b[0]), b[1]))


def _rf_neg(a):
    return (_pneg(a[0]), a[1])


def _rf_mul(a, b):
    an, ad = a
    bn, bd = b
    if not an or not bn:
        return _RF_ZERO
    if an == _PONE and ad == _PONE:
        return b
    if bn == _PONE and bd == _PONE:
        return a
    return _rf_norm(_pmul(an, bn), _pmul(ad, bd))


def _rf_div(a, b):
    bn, bd = b
    if not bn:
        raise ZeroDivisionError("scalar division by zero")
    return _rf_norm(_pmul(a[0], bd), _pmul(a[1], bn))


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------


class Scalar:
    """Immutable exact scalar; construct via :func:`scalar`, :func:`parse_scalar`
    or the module constants ZERO/ONE/I/T."""

    __slots__ = ("_re", "_im")

    def __init__(self, re, im):
        # callers pass canonical rational-function pairs
        self._re = re
        self._im = im

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_int(n):
        if -8 <= n <= 8:
            return _SMALL[n + 8]
        return Scalar(((n,), _PONE), _RF_ZERO)

    @staticmethod
    def from_fraction(num, den):
        return Scalar(_rf_norm((num,) if num else _PZERO, (den,)), _RF_ZERO)

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self._re[0] and not self._im[0]

    def is_real(self):
        return not self._im[0]

    def is_constant(self):
        """True when the scalar lies in QQ(i): no genuine t-dependence."""
        rn, rd = self._re
        im, id_ = self._im
        return len(rn) <= 1 and len(rd) <= 1 and len(im) <= 1 and len(id_) <= 1

    def is_rational(self):
        """True when the scalar lies in QQ itself."""
        return self.is_real() and self.is_constant()

    @property
    def level(self):
        """Minimal tower level: 'QQ', 'QQ(t)', 'QQ(i)' or 'QQ(t)(i)'."""
        has_t = not self.is_constant()
        has_i = not self.is_real()
        if has_t:
            return "QQ(t)(i)" if has_i else "QQ(t)"
        return "QQ(i)" if has_i else "QQ"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(_rf_add(self._re, other._re), _rf_add(self._im, other._im))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(_rf_sub(self._re, other._re), _rf_sub(self._im, other._im))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Scalar(_rf_neg(self._re), _rf_neg(self._im))

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._re, self._im
        c, d = other._re, other._im
        if not b[0] and not d[0]:
            return Scalar(_rf_mul(a, c), _RF_ZERO)
        return Scalar(
            _rf_sub(_rf_mul(a, c), _rf_mul(b, d)),
            _rf_add(_rf_mul(a, d), _rf_mul(b, c)),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c, d = other._re, other._im
        if not d[0]:
            return Scalar(_rf_div(self._re, c), _rf_div(self._im, c))
        # multiply by the conjugate and divide by the norm c^2 + d^2
        norm = _rf_add(_rf_mul(c, c), _rf_mul(d, d))
        a, b = self._re, self._im
        return Scalar(
            _rf_div(_rf_add(_rf_mul(a, c), _rf_mul(b, d)), norm),
            _rf_div(_rf_sub(_rf_mul(b, c), _rf_mul(a, d)), norm),
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def conj(self):
        return Scalar(self._re, _rf_neg(self._im))

    def re(self):
        return Scalar(self._re, _RF_ZERO)

    def im(self):
        return Scalar(self._im, _RF_ZERO)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._re == other._re and self._im == other._im

    def __hash__(self):
        return hash((self._re, self._im))

    def __bool__(self):
        return not self.is_zero()

    # -- rendering ----------------------------------------------------------

    def __str__(self):
        return render_scalar(self)

    def __repr__(self):
        return f"Scalar({render_scalar(self)!r})"


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar.from_int(x)
    return NotImplemented


_SMALL = tuple(
    Scalar(((n,), _PONE) if n else _RF_ZERO, _RF_ZERO) for n in range(-8, 9)
)

ZERO = Scalar.from_int(0)
ONE = Scalar.from_int(1)
I = Scalar(_RF_ZERO, _RF_ONE)
T = Scalar(((0, 1), _PONE), _RF_ZERO)


def scalar(x):
    """Coerce an int, string or Scalar to a Scalar."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar.from_int(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def is_constant(a):
    return scalar(a).is_constant()


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_ALLOWED_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def parse_scalar(text):
    """Parse an expression in integers, ``t``, ``i``, ``+ - * /`` and
    parentheses into a canonical Scalar.

    Raises ScalarSyntaxError on malformed input and ZeroDivisionError when
    the expression divides by a scalar that reduces to zero.
    """
    if not isinstance(text, str):
        raise ScalarSyntaxError(f"expected a string, got {type(text).__name__}")
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ScalarSyntaxError(f"bad scalar syntax: {text!r}") from exc
    return _eval_node(tree.body, text)


def _eval_node(node, text):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int) and not isinstance(node.value, bool):
            return Scalar.from_int(node.value)
        raise ScalarSyntaxError(f"only integer literals allowed, got {node.value!r}")
    if isinstance(node, ast.Name):
        if node.id == "t":
            return T
        if node.id == "i":
            return I
        raise ScalarSyntaxError(f"unknown symbol {node.id!r} in {text!r}")
    if isinstance(node, ast.UnaryOp):
        val = _eval_node(node.operand, text)
        if isinstance(node.op, ast.USub):
            return -val
        if isinstance(node.op, ast.UAdd):
            return val
        raise ScalarSyntaxError(f"operator not allowed in {text!r}")
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exp = node.right
            if (
                isinstance(exp, ast.Constant)
                and isinstance(exp.value, int)
                and exp.value >= 0
            ):
                base = _eval_node(node.left, text)
                out = ONE
                for _ in range(exp.value):
                    out = out * base
                return out
            raise ScalarSyntaxError(
                f"exponent must be a non-negative integer literal in {text!r}"
            )
        fn = _ALLOWED_BINOPS.get(type(node.op))
        if fn is None:
            raise ScalarSyntaxError(f"operator not allowed in {text!r}")
        return fn(_eval_node(node.left, text), _eval_node(node.right, text))
    raise ScalarSyntaxError(f"bad scalar syntax: {text!r}")


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _poly_str(p):
    terms = []
    for d in range(len(p) - 1, -1, -1):
        c = p[d]
        if not c:
            continue
        if d == 0:
            body = str(abs(c))
        elif d == 1:
            body = "t" if abs(c) == 1 else f"{abs(c)}*t"
        else:
            body = f"t**{d}" if abs(c) == 1 else f"{abs(c)}*t**{d}"
        terms.append((c < 0, body))
    if not terms:
        return "0"
    neg, body = terms[0]
    out = ("-" if neg else "") + body
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out


def _nterms(p):
    return sum(1 for c in p if c)


def _den_str(d):
    # a denominator may appear bare only when it parses as a tight atom
    if len(d) == 1:
        return str(d[0])
    if _nterms(d) == 1 and d[-1] == 1:
        return "t" if len(d) == 2 else f"t**{len(d) - 1}"
    return "(" + _poly_str(d) + ")"


def _rf_str(rf):
    num, den = rf
    ns = _poly_str(num)
    if den == _PONE:
        return ns
    if _nterms(num) > 1:
        ns = "(" + ns + ")"
    return ns + "/" + _den_str(den)


def render_scalar(a):
    """Canonical string form; ``parse_scalar(render_scalar(a)) == a``."""
    a = scalar(a)
    re_, im_ = a._re, a._im
    if not im_[0]:
        return _rf_str(re_)
    neg = im_[0][-1] < 0
    mag = _rf_neg(im_) if neg else im_
    if mag == _RF_ONE:
        imterm = "i"
    else:
        ms = _rf_str(mag)
        if _nterms(mag[0]) > 1 and mag[1] == _PONE:
            ms = "(" + ms + ")"
        imterm = ms + "*i"
    if not re_[0]:
        return ("-" if neg else "") + imterm
    return _rf_str(re_) + (" - " if neg else " + ") + imterm


def common_denominator(scalars):
    """A real polynomial scalar d such that d*a has denominator 1 for every a."""
    m = _PONE
    for a in scalars:
        m = _plcm(m, a._re[1])
        m = _plcm(m, a._im[1])
    return Scalar((m, _PONE), _RF_ZERO)
