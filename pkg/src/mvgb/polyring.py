"""Multigraded polynomial rings for camera geometry.

The ring has one block of variables (x_i, y_i, z_i) per camera i = 1..n, and
optionally a leading w_i block.  Variables are indexed block-major so that the
default index order is the block lexicographic order x1 > ... > xn > y1 > ...
(w block first when present).  Monomials are sparse tuples of (variable,
exponent) pairs; polynomials are immutable coefficient maps over Q or Q(e).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exactalg import EpsRational

__all__ = [
    "Ring", "Polynomial", "LexOrder", "WeightOrder", "GrevlexOrder",
    "MatrixOrder", "block_order", "elimination_order", "multidegree",
    "compare", "leading_term", "parse_polynomial", "format_polynomial",
    "parse_monomial", "format_monomial", "canonical_string",
]

_BASE_LETTERS = ("x", "y", "z")
_EXT_LETTERS = ("w", "x", "y", "z")


class Ring:
    """K[x,y,z] in 3n variables, or K[w,x,y,z] in 4n when extended.

    aux extra variables (named t1, t2, ...) may be appended; they carry no
    multidegree and exist for internal elimination tricks.
    """

    __slots__ = ("n", "extended", "aux", "nvars", "_names", "_index")

    def __init__(self, n, extended=False, aux=0):
        if n < 1:
            raise ValueError("need at least one camera block")
        self.n = n
        self.extended = bool(extended)
        self.aux = aux
        letters = _EXT_LETTERS if extended else _BASE_LETTERS
        names = ["%s%d" % (L, i) for L in letters for i in range(1, n + 1)]
        names += ["t%d" % (k + 1) for k in range(aux)]
        self.nvars = len(names)
        self._names = tuple(names)
        self._index = {s: i for i, s in enumerate(names)}

    @property
    def letters(self):
        return _EXT_LETTERS if self.extended else _BASE_LETTERS

    def var(self, letter, camera):
        """Index of the variable letter_camera (camera is 1-based)."""
        if not 1 <= camera <= self.n:
            raise ValueError("camera %d out of range" % camera)
        try:
            block = self.letters.index(letter)
        except ValueError:
            raise ValueError("letter %r not in this ring" % letter) from None
        return block * self.n + camera - 1

    def var_info(self, v):
        """(letter, camera) of a block variable, or ('t', k) for aux ones."""
        nblock = len(self.letters) * self.n
        if v < nblock:
            return self.letters[v // self.n], v % self.n + 1
        return "t", v - nblock + 1

    def name(self, v):
        return self._names[v]

    def index(self, name):
        return self._index[name]

    def multidegree(self, mono):
        """Multidegree in N^n; every block letter of camera i has degree e_i."""
        u = [0] * self.n
        nblock = len(self.letters) * self.n
        for v, e in mono:
            if v >= nblock:
                raise ValueError("aux variable has no multidegree")
            u[v % self.n] += e
        return tuple(u)

    def with_aux(self, k):
        return Ring(self.n, self.extended, self.aux + k)

    def drop_aux(self):
        return Ring(self.n, self.extended)

    def __eq__(self, other):
        return (isinstance(other, Ring) and self.n == other.n
                and self.extended == other.extended and self.aux == other.aux)

    def __hash__(self):
        return hash((self.n, self.extended, self.aux))

    def __repr__(self):
        tag = ", extended=True" if self.extended else ""
        tag += ", aux=%d" % self.aux if self.aux else ""
        return "Ring(%d%s)" % (self.n, tag)


# ---------------------------------------------------------------------------
# sparse monomials: sorted tuples of (variable index, positive exponent)

m_one = ()


def m_from_pairs(pairs):
    acc = {}
    for v, e in pairs:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in acc.items() if e))


def m_var(v, e=1):
    return ((v, e),) if e else ()


def m_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for v, e in b:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted(acc.items()))


def m_divides(a, b):
    """Does a divide b?"""
    db = dict(b)
    for v, e in a:
        if db.get(v, 0) < e:
            return False
    return True


def m_div(a, b):
    """a / b, or None when b does not divide a."""
    acc = dict(a)
    for v, e in b:
        r = acc.get(v, 0) - e
        if r < 0:
            return None
        if r:
            acc[v] = r
        else:
            acc.pop(v, None)
    return tuple(sorted(acc.items()))


def m_lcm(a, b):
    acc = dict(a)
    for v, e in b:
        if acc.get(v, 0) < e:
            acc[v] = e
    return tuple(sorted(acc.items()))


def m_gcd(a, b):
    db = dict(b)
    out = []
    for v, e in a:
        f = min(e, db.get(v, 0))
        if f:
            out.append((v, f))
    return tuple(out)


def m_coprime(a, b):
    vb = {v for v, _ in b}
    return not any(v in vb for v, _ in a)


def m_deg(a):
    return sum(e for _, e in a)


def m_exp(a, v):
    for w, e in a:
        if w == v:
            return e
    return 0


def m_squarefree(a):
    return all(e == 1 for _, e in a)


def m_support(a):
    return frozenset(v for v, _ in a)


# ---------------------------------------------------------------------------
# term orders

class TermOrder:
    __slots__ = ("ring", "_cache")

    def key(self, m):
        k = self._cache.get(m)
        if k is None:
            k = self._key(m)
            self._cache[m] = k
        return k

    def leading(self, terms):
        return max(terms, key=self.key)

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


class LexOrder(TermOrder):
    """Lexicographic order on a permutation of the variables (largest first)."""

    __slots__ = ("perm", "_pos")

    def __init__(self, ring, perm=None):
        self.ring = ring
        self._cache = {}
        if perm is None:
            perm = tuple(range(ring.nvars))
        else:
            perm = tuple(perm)
            if sorted(perm) != list(range(ring.nvars)):
                raise ValueError("perm must list every variable exactly once")
        self.perm = perm
        self._pos = {v: i for i, v in enumerate(perm)}

    def _key(self, m):
        out = [0] * self.ring.nvars
        pos = self._pos
        for v, e in m:
            out[pos[v]] = e
        return tuple(out)

    @property
    def signature(self):
        return ("lex", self.perm)


class WeightOrder(TermOrder):
    """Weight vector order refined by a lexicographic tiebreak."""

    __slots__ = ("weights", "tiebreak")

    def __init__(self, ring, weights, tiebreak=None):
        self.ring = ring
        self._cache = {}
        weights = tuple(Fraction(w) for w in weights)
        if len(weights) != ring.nvars:
            raise ValueError("one weight per variable required")
        self.weights = weights
        self.tiebreak = tiebreak if tiebreak is not None else LexOrder(ring)

    def _key(self, m):
        w = sum(self.weights[v] * e for v, e in m)
        return (w,) + self.tiebreak.key(m)

    @property
    def signature(self):
        return ("weight", self.weights, self.tiebreak.signature)


class GrevlexOrder(TermOrder):
    """Graded reverse lexicographic order on a permutation of the variables."""

    __slots__ = ("perm",)

    def __init__(self, ring, perm=None):
        self.ring = ring
        self._cache = {}
        self.perm = tuple(perm) if perm is not None else tuple(range(ring.nvars))

    def _key(self, m):
        exps = dict(m)
        rev = tuple(-exps.get(v, 0) for v in reversed(self.perm))
        return (m_deg(m),) + rev

    @property
    def signature(self):
        return ("grevlex", self.perm)


class MatrixOrder(TermOrder):
    """Order by successive weight rows, with a final lexicographic tiebreak."""

    __slots__ = ("rows", "tiebreak")

    def __init__(self, ring, rows, tiebreak=None):
        self.ring = ring
        self._cache = {}
        self.rows = tuple(tuple(Fraction(w) for w in row) for row in rows)
        self.tiebreak = tiebreak if tiebreak is not None else LexOrder(ring)

    def _key(self, m):
        head = tuple(sum(row[v] * e for v, e in m) for row in self.rows)
        return head + self.tiebreak.key(m)

    @property
    def signature(self):
        return ("matrix", self.rows, self.tiebreak.signature)


def block_order(ring):
    """The default block lexicographic order x1 > ... > xn > y1 > ... > zn."""
    return LexOrder(ring)


def elimination_order(ring, eliminated):
    """Lex order placing the eliminated variables above all kept ones."""
    eliminated = sorted(set(eliminated))
    kept = [v for v in range(ring.nvars) if v not in set(eliminated)]
    return LexOrder(ring, tuple(eliminated + kept))


# ---------------------------------------------------------------------------
# polynomials

def _coeff(c):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, (Fraction, EpsRational)):
        return c
    raise TypeError("unsupported coefficient %r" % (c,))


class Polynomial:
    """An immutable sparse polynomial over Q or Q(e)."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms=None):
        self.ring = ring
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _coeff(c)
                if c:
                    clean[m] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def zero(cls, ring):
        return cls(ring)

    @classmethod
    def constant(cls, ring, c):
        return cls(ring, {m_one: c})

    @classmethod
    def monomial(cls, ring, mono, c=1):
        return cls(ring, {mono: c})

    @classmethod
    def variable(cls, ring, letter, camera):
        return cls(ring, {m_var(ring.var(letter, camera)): 1})

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        acc = dict(self.terms)
        for m, c in other.terms.items():
            v = acc.get(m, 0) + c
            if v:
                acc[m] = v
            else:
                acc.pop(m, None)
        return Polynomial(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            acc = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = m_mul(m1, m2)
                    v = acc.get(m, 0) + c1 * c2
                    if v:
                        acc[m] = v
                    else:
                        acc.pop(m, None)
            return Polynomial(self.ring, acc)
        if isinstance(other, (int, Fraction, EpsRational)):
            if not other:
                return Polynomial(self.ring)
            return Polynomial(self.ring,
                              {m: c * other for m, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction, EpsRational)):
            return Polynomial.constant(self.ring, other)
        return None

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, EpsRational)):
            other = Polynomial.constant(self.ring, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            items = tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))
            self._hash = hash((self.ring, items))
        return self._hash

    def monomials(self):
        return list(self.terms)

    def coefficient(self, mono):
        return self.terms.get(mono, Fraction(0))

    def total_degree(self):
        return max((m_deg(m) for m in self.terms), default=0)

    def multidegree(self):
        """The common multidegree; raises on inhomogeneous input."""
        if not self.terms:
            raise ValueError("zero polynomial has no multidegree")
        degs = {self.ring.multidegree(m) for m in self.terms}
        if len(degs) > 1:
            raise ValueError("inhomogeneous polynomial")
        return degs.pop()

    def is_homogeneous(self):
        return len({self.ring.multidegree(m) for m in self.terms}) <= 1

    def leading_term(self, order):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = order.leading(self.terms)
        return self.terms[m], m

    def map_coefficients(self, fn, ring=None):
        return Polynomial(ring or self.ring,
                          {m: fn(c) for m, c in self.terms.items()})

    def in_ring(self, ring):
        """Reinterpret in a ring with the same block variables."""
        return Polynomial(ring, dict(self.terms))

    def domain(self):
        for c in self.terms.values():
            if isinstance(c, EpsRational):
                return "Q(e)"
        return "Q"

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return "Polynomial(%s)" % format_polynomial(self)


def multidegree(ring, mono):
    return ring.multidegree(mono)


def compare(order, a, b):
    """-1, 0 or 1 comparing monomials under the given term order."""
    return order.compare(a, b)


def leading_term(order, p):
    return p.leading_term(order)


# ---------------------------------------------------------------------------
# text format: signed rational coefficients, '*'-separated variable powers

_VAR_RE = re.compile(r"^([wxyz])(\d+)(?:\^(\d+))?$")
_NUM_RE = re.compile(r"^\d+(?:/\d+)?$")


def format_monomial(ring, mono):
    if not mono:
        return "1"
    parts = []
    for v, e in sorted(mono):
        name = ring.name(v)
        parts.append(name if e == 1 else "%s^%d" % (name, e))
    return "*".join(parts)


def _coeff_str(c, mono_str):
    if isinstance(c, EpsRational):
        s = str(c)
        if s.startswith("-") or " " in s or "/" in s:
            s = "(%s)" % s
        return s if mono_str == "1" else "%s*%s" % (s, mono_str)
    if mono_str == "1":
        return str(c)
    if c == 1:
        return mono_str
    if c == -1:
        return "-" + mono_str
    return "%s*%s" % (c, mono_str)


def format_polynomial(p, order=None):
    if not p.terms:
        return "0"
    order = order or block_order(p.ring)
    out = []
    for m in sorted(p.terms, key=order.key, reverse=True):
        s = _coeff_str(p.terms[m], format_monomial(p.ring, m))
        if not out:
            out.append(s)
        elif s.startswith("-"):
            out.append("- " + s[1:])
        else:
            out.append("+ " + s)
    return " ".join(out)


def canonical_string(p):
    """Canonical serialization: block-lex sorted terms, scaled so that over Q
    the coefficients are coprime integers with positive leading one, and over
    Q(e) the polynomial is monic."""
    if not p.terms:
        return "0"
    lc, _ = p.leading_term(block_order(p.ring))
    if p.domain() == "Q(e)":
        return format_polynomial(p.map_coefficients(lambda c: c / lc))
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // _gcd(den, c.denominator)
    num = 0
    for c in p.terms.values():
        num = _gcd(num, abs(c.numerator * den // c.denominator))
    scale = Fraction(den, num)
    if lc < 0:
        scale = -scale
    return format_polynomial(p * scale)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def parse_monomial(ring, text):
    text = text.strip()
    if text in ("1", ""):
        return m_one
    pairs = []
    for tok in text.split("*"):
        m = _VAR_RE.match(tok.strip())
        if not m:
            raise ValueError("bad monomial factor %r" % tok)
        letter, cam, e = m.group(1), int(m.group(2)), m.group(3)
        pairs.append((ring.var(letter, cam), int(e) if e else 1))
    return m_from_pairs(pairs)


def parse_polynomial(ring, text):
    """Parse the plain text format, e.g. 'x1*y2 - x2*y1' or '2/3*x1^2'."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    # split into signed chunks
    chunks = []
    start = 0
    for i, ch in enumerate(s):
        if ch in "+-" and i > start:
            chunks.append(s[start:i])
            start = i
    chunks.append(s[start:])
    acc = {}
    for chunk in chunks:
        sign = 1
        body = chunk
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:]
        if not body:
            raise ValueError("dangling sign in %r" % text)
        coeff = Fraction(sign)
        monos = []
        for tok in body.split("*"):
            if _NUM_RE.match(tok):
                coeff *= Fraction(tok)
            elif _VAR_RE.match(tok):
                m = _VAR_RE.match(tok)
                monos.append((ring.var(m.group(1), int(m.group(2))),
                              int(m.group(3)) if m.group(3) else 1))
            else:
                raise ValueError("bad factor %r in %r" % (tok, text))
        mono = m_from_pairs(monos)
        v = acc.get(mono, Fraction(0)) + coeff
        if v:
            acc[mono] = v
        else:
            acc.pop(mono, None)
    return Polynomial(ring, acc)
