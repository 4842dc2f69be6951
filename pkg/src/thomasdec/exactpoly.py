"""Exact multivariate polynomials over the rationals.

Variables are arbitrary hashable objects interned to small integer ids.  A
monomial is packed into one Python int: variable ``i`` owns the bit field
``[i*BITS, (i+1)*BITS)``.  Multiplying monomials is then integer addition,
and comparing packed ints is a lexicographic order in which higher ids are
more significant.  That order is only used internally (exact division,
square roots); anything user-visible is ordered through a ranking.

Coefficients are ``int`` where possible and ``fractions.Fraction`` otherwise.
"""

from fractions import Fraction
from heapq import heappop, heappush
from math import gcd as igcd, isqrt

from .errors import ContractError

BITS = 16
FIELD = (1 << BITS) - 1
MAX_EXP = 1 << (BITS - 1)

_objects = []
_ids = {}


def intern(obj):
    """Return the integer id of ``obj``, registering it on first use."""
    i = _ids.get(obj)
    if i is None:
        i = len(_objects)
        _objects.append(obj)
        _ids[obj] = i
    return i


def var_object(i):
    return _objects[i]


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _cdiv(a, b):
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if not r:
            return q
    return _norm(Fraction(a) / b)


def mono_items(m):
    """List of ``(var_id, exponent)`` pairs of a packed monomial."""
    out = []
    while m:
        i = ((m & -m).bit_length() - 1) // BITS
        e = (m >> (i * BITS)) & FIELD
        out.append((i, e))
        m -= e << (i * BITS)
    return out


def mono_degree(m, v):
    return (m >> (v * BITS)) & FIELD


def mono_divides(a, b):
    """True if monomial ``a`` divides monomial ``b``."""
    if a > b:
        return False
    for i, e in mono_items(a):
        if (b >> (i * BITS)) & FIELD < e:
            return False
    return True


def mono_pack(pairs):
    m = 0
    for i, e in pairs:
        if e >= MAX_EXP:
            raise OverflowError("exponent too large")
        m += e << (i * BITS)
    return m


class Poly:
    """Immutable polynomial: a dict from packed monomial to nonzero coefficient."""

    __slots__ = ("terms", "_hash", "_vars")

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}
        self._hash = None
        self._vars = None

    @staticmethod
    def _raw(acc):
        return Poly({m: _norm(c) for m, c in acc.items() if c})

    @classmethod
    def const(cls, c):
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return cls({0: c} if c else {})

    @classmethod
    def var(cls, obj, exp=1):
        return cls({exp << (intern(obj) * BITS): 1})

    @classmethod
    def var_id(cls, i, exp=1):
        return cls({exp << (i * BITS): 1})

    @classmethod
    def from_items(cls, items):
        """Build from ``[(coef, {var_obj: exp, ...}), ...]``."""
        acc = {}
        for c, exps in items:
            m = mono_pack((intern(o), e) for o, e in exps.items() if e)
            acc[m] = acc.get(m, 0) + c
        return cls._raw(acc)

    # -- basic queries -------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        return self.terms.get(0, 0) if self.is_constant() else None

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def vars(self):
        """Frozen set of variable ids occurring in the polynomial."""
        if self._vars is None:
            s = set()
            for m in self.terms:
                while m:
                    i = ((m & -m).bit_length() - 1) // BITS
                    s.add(i)
                    m &= ~(FIELD << (i * BITS))
            self._vars = frozenset(s)
        return self._vars

    def var_objects(self):
        return {_objects[i] for i in self.vars()}

    def degree(self, v):
        sh = v * BITS
        return max(((m >> sh) & FIELD for m in self.terms), default=0)

    def total_degree(self):
        return max((sum(e for _, e in mono_items(m)) for m in self.terms), default=0)

    def __len__(self):
        return len(self.terms)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        acc = dict(self.terms)
        for m, c in other.terms.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = _norm(s)
            else:
                acc.pop(m, None)
        return Poly(acc)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if not c:
            return Poly()
        if c == 1:
            return self
        return Poly({m: _norm(a * c) for m, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly()
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            return Poly({ma + mb: _norm(ca * cb) for ma, ca in a.items()})
        acc = {}
        get = acc.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = ma + mb
                acc[m] = get(m, 0) + ca * cb
        return Poly._raw(acc)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ContractError("power exponent must be a non-negative integer")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_mono(self, m, c=1):
        return Poly({k + m: _norm(a * c) for k, a in self.terms.items()})

    # -- univariate views ----------------------------------------------

    def coeffs(self, v):
        """Dense coefficient list ``[c0, c1, ...]`` in variable id ``v``."""
        sh = v * BITS
        parts = {}
        for m, c in self.terms.items():
            e = (m >> sh) & FIELD
            parts.setdefault(e, {})[m - (e << sh)] = c
        if not parts:
            return []
        out = [Poly() for _ in range(max(parts) + 1)]
        for e, t in parts.items():
            out[e] = Poly(t)
        return out

    def coeff(self, v, k):
        sh = v * BITS
        return Poly({m - (k << sh): c for m, c in self.terms.items()
                     if (m >> sh) & FIELD == k})

    def lead_coeff(self, v):
        return self.coeff(v, self.degree(v))

    def reductum(self, v):
        """The polynomial minus its leading part in ``v``."""
        d = self.degree(v)
        sh = v * BITS
        return Poly({m: c for m, c in self.terms.items() if (m >> sh) & FIELD != d})

    def diff(self, v):
        """Partial derivative with respect to variable id ``v``."""
        sh = v * BITS
        one = 1 << sh
        acc = {}
        for m, c in self.terms.items():
            e = (m >> sh) & FIELD
            if e:
                acc[m - one] = _norm(c * e)
        return Poly(acc)

    def lex_lead(self):
        m = max(self.terms)
        return m, self.terms[m]

    # -- evaluation ----------------------------------------------------

    def evaluate(self, point):
        """Evaluate at ``point``, a mapping from var id to a number."""
        total = 0
        for m, c in self.terms.items():
            val = c
            for i, e in mono_items(m):
                val *= point[i] ** e
            total += val
        return total

    def subs(self, v, q):
        """Substitute polynomial ``q`` for variable id ``v``."""
        cs = self.coeffs(v)
        out = Poly()
        for c in reversed(cs):
            out = out * q + c
        return out

    def map_coeffs(self, f):
        return Poly._raw({m: f(c) for m, c in self.terms.items()})

    # -- content over the integers ------------------------------------

    def int_content(self):
        """Positive rational ``c`` such that ``self / c`` has coprime integer coefficients."""
        num = 0
        den = 1
        for c in self.terms.values():
            if type(c) is int:
                num = igcd(num, c)
            else:
                num = igcd(num, c.numerator)
                den = den * c.denominator // igcd(den, c.denominator)
        if num == 0:
            return 1
        return _norm(Fraction(num, den))

    def int_primitive(self):
        c = self.int_content()
        if c == 1:
            return self
        return Poly({m: _cdiv(a, c) for m, a in self.terms.items()})

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def _default_var_key(i):
    return str(_objects[i])


def format_coeff(c):
    if type(c) is Fraction:
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_poly(p, var_key=None):
    """Render ``p`` as text, highest terms first under ``var_key``.

    ``var_key`` maps a variable id to a sortable key, larger meaning more
    significant.  Variables render through ``str`` of their objects.
    """
    if not p.terms:
        return "0"
    key = var_key or _default_var_key
    rows = []
    for m, c in p.terms.items():
        items = sorted(((key(i), i, e) for i, e in mono_items(m)), reverse=True)
        tkey = [(k, e) for k, _, e in items]
        rows.append((tkey, items, c))
    rows.sort(key=lambda r: r[0], reverse=True)
    parts = []
    for n, (_, items, c) in enumerate(rows):
        neg = c < 0
        a = -c if neg else c
        factors = []
        for _, i, e in items:
            s = str(_objects[i])
            factors.append(s if e == 1 else f"{s}^{e}")
        if not factors:
            body = format_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = format_coeff(a) + "*" + "*".join(factors)
        if n == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


ZERO = Poly()
ONE = Poly.const(1)


def as_poly(x):
    if isinstance(x, Poly):
        return x
    return Poly.const(x)


# -- exact division ----------------------------------------------------

def try_div(p, q):
    """Return ``p / q`` if the division is exact, else None."""
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.terms:
        return Poly()
    if len(q.terms) == 1:
        (mq, cq), = q.terms.items()
        out = {}
        for m, c in p.terms.items():
            if not mono_divides(mq, m):
                return None
            out[m - mq] = _cdiv(c, cq)
        return Poly(out)
    lm, lc = q.lex_lead()
    rest = [(m, c) for m, c in q.terms.items() if m != lm]
    r = dict(p.terms)
    heap = [-m for m in r]
    heap.sort()
    quot = {}
    while r:
        m = -heappop(heap)
        c = r.get(m)
        if c is None:
            continue
        if not mono_divides(lm, m):
            return None
        t = m - lm
        a = _cdiv(c, lc)
        quot[t] = a
        del r[m]
        for mq, cq in rest:
            k = mq + t
            old = r.get(k)
            if old is None:
                r[k] = -a * cq
                heappush(heap, -k)
            else:
                s = old - a * cq
                if s:
                    r[k] = s
                else:
                    del r[k]
    return Poly({m: _norm(c) for m, c in quot.items()})


def exact_div(p, q):
    r = try_div(p, q)
    if r is None:
        raise ArithmeticError("polynomial division is not exact")
    return r


def divides(q, p):
    return try_div(p, q) is not None


# -- multivariate gcd ----------------------------------------------------

def _mono_content(p):
    """Largest monomial dividing every term of ``p``."""
    it = iter(p.terms)
    g = dict(mono_items(next(it)))
    for m in it:
        if not g:
            break
        for i in list(g):
            e = (m >> (i * BITS)) & FIELD
            if e < g[i]:
                if e:
                    g[i] = e
                else:
                    del g[i]
    return mono_pack(g.items())


def _sign_normal(p):
    """Integer-primitive with positive internal leading coefficient."""
    p = p.int_primitive()
    if p.terms and p.terms[max(p.terms)] < 0:
        p = -p
    return p


def gcd(p, q):
    """Greatest common divisor over Q, integer-primitive with positive lex lead.

    ``gcd(0, 0)`` is 0.
    """
    if not p.terms:
        return _sign_normal(q)
    if not q.terms:
        return _sign_normal(p)
    if p.is_constant() or q.is_constant():
        return ONE
    mp, mq = _mono_content(p), _mono_content(q)
    mono = 0
    if mp or mq:
        dp, dq = dict(mono_items(mp)), dict(mono_items(mq))
        mono = mono_pack((i, min(e, dq[i])) for i, e in dp.items() if i in dq)
        if mp:
            p = p.mul_mono(-mp)
        if mq:
            q = q.mul_mono(-mq)
    g = _gcd_nomono(p, q)
    if mono:
        g = g.mul_mono(mono)
    return _sign_normal(g)


def _gcd_nomono(p, q):
    if p.is_constant() or q.is_constant():
        return ONE
    if p == q:
        return p
    vp, vq = p.vars(), q.vars()
    only_p = vp - vq
    if only_p:
        return _gcd_nomono(content(p, min(only_p)), q)
    only_q = vq - vp
    if only_q:
        return _gcd_nomono(p, content(q, min(only_q)))
    v = min(vp, key=lambda i: (min(p.degree(i), q.degree(i)), i))
    cp, cq = content(p, v), content(q, v)
    gc = gcd(cp, cq)
    pp_ = exact_div(p, cp) if not cp.is_constant() else p
    qq = exact_div(q, cq) if not cq.is_constant() else q
    fs, gs = pp_.coeffs(v), qq.coeffs(v)
    if len(fs) < len(gs):
        fs, gs = gs, fs
    prs = _subresultant_prs(fs, gs)[0]
    last = prs[-1]
    if len(last) == 1:
        return gc
    h = _from_coeffs(last, v)
    h = primitive(h, v)
    return gc * h


def lcm(p, q):
    g = gcd(p, q)
    return _sign_normal(exact_div(p, g) * q)


def content(p, v):
    """Content of ``p`` viewed as a polynomial in ``v`` (a v-free polynomial)."""
    cs = [c for c in p.coeffs(v) if c.terms]
    if not cs:
        return Poly()
    if len(cs) == 1:
        return _sign_normal(cs[0])
    cs.sort(key=len)
    g = cs[0]
    for c in cs[1:]:
        g = gcd(g, c)
        if g.is_constant():
            return ONE
    return g


def primitive(p, v):
    """Primitive part of ``p`` in ``v``, integer-primitive with positive internal lead."""
    if not p.terms:
        return p
    c = content(p, v)
    if not c.is_constant():
        p = exact_div(p, c)
    return _sign_normal(p)


# -- univariate (recursive) routines ------------------------------------

def _from_coeffs(cs, v):
    acc = {}
    sh = v * BITS
    for k, c in enumerate(cs):
        for m, a in c.terms.items():
            acc[m + (k << sh)] = a
    return Poly(acc)


def _strip(cs):
    while cs and not cs[-1].terms:
        cs.pop()
    return cs


def _qgcd(x, y):
    x, y = Fraction(x), Fraction(y)
    return _norm(Fraction(igcd(x.numerator * y.denominator, y.numerator * x.denominator),
                          x.denominator * y.denominator))


def _uprem(f, g):
    """Pseudo-remainder ``lc(g)^(df-dg+1) f mod g`` on dense coefficient lists."""
    dg = len(g) - 1
    lc = g[-1]
    r = list(f)
    e = len(f) - len(g) + 1
    while len(r) - 1 >= dg and r:
        lr = r[-1]
        s = len(r) - 1 - dg
        new = [lc * c for c in r]
        for i, gc in enumerate(g):
            new[i + s] = new[i + s] - lr * gc
        r = _strip(new)
        e -= 1
    if e > 0 and r:
        m = lc ** e
        r = [m * c for c in r]
    return r


def _subresultant_prs(f, g):
    """Subresultant PRS of dense lists with ``deg f >= deg g``.

    Returns the sequence and the list of subresultant scalars, whose last
    entry is the resultant when the sequence ends in a constant.
    """
    n, m = len(f) - 1, len(g) - 1
    R = [f, g]
    d = n - m
    b = (-1) ** (d + 1)
    h = [c.scale(b) for c in _uprem(f, g)]
    lc = g[-1]
    c = lc ** d
    S = [ONE, c]
    c = -c
    while h:
        k = len(h) - 1
        R.append(h)
        f, g, m, d = g, h, k, m - k
        b = -lc * c ** d
        h = [exact_div(x, b) for x in _uprem(f, g)]
        lc = g[-1]
        if d > 1:
            c = exact_div((-lc) ** d, c ** (d - 1))
        else:
            c = -lc
        S.append(-c)
    return R, S


def pseudo_divide(p, q, v):
    """Pseudo-division of ``p`` by ``q`` in variable id ``v``.

    Returns ``(c1, c2, r)`` with ``c1*p - c2*q == r`` and ``deg_v r < deg_v q``.
    At each elimination step only the part of ``init_v(q)`` not shared with
    the current leading coefficient is used as multiplier, so ``c1`` divides
    a power of ``init_v(q)``.
    """
    dq = q.degree(v)
    if dq < 1:
        raise ContractError("pseudo_divide: divisor does not involve the variable")
    if p.degree(v) < dq:
        raise ContractError("pseudo_divide: dividend degree below divisor degree")
    g = q.coeffs(v)
    lc = g[-1]
    r = p.coeffs(v)
    c1 = ONE
    quot = {}
    while len(r) - 1 >= dq:
        lr = r[-1]
        s = len(r) - 1 - dq
        gg = gcd(lc, lr)
        a = exact_div(lc, gg) if not gg.is_constant() else lc
        b = exact_div(lr, gg) if not gg.is_constant() else lr
        k = _qgcd(a.int_content(), b.int_content())
        if k != 1:
            a, b = a.scale(Fraction(1) / k), b.scale(Fraction(1) / k)
        new = [a * c for c in r]
        for i, gc in enumerate(g):
            new[i + s] = new[i + s] - b * gc
        new.pop()
        r = _strip(new)
        c1 = c1 * a
        quot = {k: a * x for k, x in quot.items()}
        quot[s] = quot.get(s, ZERO) + b
    qcs = [ZERO] * (max(quot) + 1) if quot else []
    for k, x in quot.items():
        qcs[k] = x
    return c1, _from_coeffs(qcs, v), _from_coeffs(r, v)


def prem(p, q, v):
    """Remainder of :func:`pseudo_divide`; ``p`` itself when its degree is lower."""
    if p.degree(v) < q.degree(v):
        return p
    return pseudo_divide(p, q, v)[2]


def prs_last(p, q, v):
    """Last nonzero element of the subresultant PRS of ``p`` and ``q`` in ``v``."""
    fs, gs = p.coeffs(v), q.coeffs(v)
    if len(fs) < len(gs):
        fs, gs = gs, fs
    if not gs:
        return _from_coeffs(fs, v)
    return _from_coeffs(_subresultant_prs(fs, gs)[0][-1], v)


def gcd_in_leader(p, q, v):
    """Gcd of ``p`` and ``q`` as polynomials in ``v``, primitive in ``v``.

    Correct up to a v-free factor; computed from the subresultant PRS.
    """
    if not p.terms:
        return primitive(q, v)
    if not q.terms:
        return primitive(p, v)
    return primitive(prs_last(p, q, v), v)


def resultant(p, q, v):
    dp, dq = p.degree(v), q.degree(v)
    if dp < 1 or dq < 1:
        raise ContractError("resultant: both arguments must involve the variable")
    if dp < dq:
        r = resultant(q, p, v)
        return -r if (dp * dq) % 2 else r
    R, S = _subresultant_prs(p.coeffs(v), q.coeffs(v))
    if len(R[-1]) > 1:
        return Poly()
    return S[-1]


def discriminant(p, v):
    d = p.degree(v)
    if d < 1:
        raise ContractError("discriminant: polynomial does not involve the variable")
    if d == 1:
        return ONE
    r = resultant(p, p.diff(v), v)
    lc = p.lead_coeff(v)
    if (d * (d - 1) // 2) % 2:
        r = -r
    return exact_div(r, lc)


def squarefree_part(p, v):
    if p.degree(v) < 1:
        raise ContractError("squarefree_part: polynomial does not involve the variable")
    P = primitive(p, v)
    g = gcd_in_leader(P, P.diff(v), v)
    if g.degree(v) == 0:
        return P
    return primitive(exact_div(P, g), v)


def squarefree_decomposition(p, v):
    """Yun's algorithm on the primitive part of ``p`` in ``v``.

    Returns ``[(factor, multiplicity), ...]`` with every factor primitive in
    ``v`` and of positive degree in ``v``.
    """
    P = primitive(p, v)
    if P.degree(v) < 1:
        return []
    dP = P.diff(v)
    a0 = gcd(P, dP)
    b = exact_div(P, a0)
    c = exact_div(dP, a0)
    d = c - b.diff(v)
    out = []
    i = 1
    while b.degree(v) > 0:
        a = gcd(b, d) if d.terms else _sign_normal(b)
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = c - b.diff(v)
        if a.degree(v) > 0:
            out.append((primitive(a, v), i))
        i += 1
    return out


def _rat_sqrt(c):
    if c < 0:
        return None
    c = Fraction(c)
    n, d = isqrt(c.numerator), isqrt(c.denominator)
    if n * n != c.numerator or d * d != c.denominator:
        return None
    return _norm(Fraction(n, d))


def poly_sqrt(p):
    """Exact square root of ``p`` if it is the square of a polynomial, else None."""
    if not p.terms:
        return Poly()
    lm, lc = p.lex_lead()
    if any(e % 2 for _, e in mono_items(lm)):
        return None
    c0 = _rat_sqrt(lc)
    if c0 is None:
        return None
    m0 = lm >> 1
    s = Poly({m0: c0})
    r = p - s * s
    two_c0 = 2 * c0
    while r.terms:
        m, c = r.lex_lead()
        if not mono_divides(m0, m):
            return None
        t = m - m0
        if t >= m0:
            return None
        term = Poly({t: _cdiv(c, two_c0)})
        r = r - (s * 2 + term) * term
        s = s + term
    return s


def factor_opportunistic(p, v):
    """Split ``p`` into factors in ``v`` as far as cheaply possible.

    Returns ``[(content, 1), (f1, m1), ...]``.  The first entry is the
    v-free content (possibly a constant); the rest come from the square-free
    decomposition, with each quadratic factor split further when its
    discriminant is the square of a polynomial.  The product of all entries
    raised to their multiplicities is exactly ``p``.
    """
    if p.degree(v) < 1:
        return [(p, 1)]
    parts = []
    for f, mult in squarefree_decomposition(p, v):
        if f.degree(v) == 2:
            a, b, c = f.coeff(v, 2), f.coeff(v, 1), f.coeff(v, 0)
            s = poly_sqrt(b * b - 4 * a * c)
            if s is not None and s.terms:
                lin = Poly.var_id(v) * (2 * a) + b
                parts.append((primitive(lin - s, v), mult))
                parts.append((primitive(lin + s, v), mult))
                continue
        parts.append((f, mult))
    prod = ONE
    for f, mult in parts:
        prod = prod * f ** mult
    cont = exact_div(p, prod)
    return [(cont, 1)] + parts
