"""Exact polynomial arithmetic in q^(1/2), plus the q-analog zoo.

Two immutable-by-convention classes:

* QPoly: Laurent polynomial in q^(1/2) with integer coefficients.
  Exponents are stored as integer counts of half powers, so q^(3/2)
  lives under key 3 and q^2 under key 4.  Keys may be negative.
* PQPoly: ordinary polynomial in two variables p, q with integer
  coefficients and nonnegative exponents, keyed by (p_exp, q_exp).

Zero coefficients are never stored, which makes dict equality canonical
equality.  All arithmetic is exact; there is no floating point anywhere.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DivisibilityError, DomainError


class QPoly:
    """Laurent polynomial in q^(1/2) over the integers."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for h, c in terms.items():
                if not isinstance(h, int):
                    raise DomainError("half-exponent keys must be integers")
                if c:
                    cleaned[h] = c
        self.terms = cleaned

    @classmethod
    def from_int(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, half_exp, coeff=1):
        """coeff * q^(half_exp / 2)"""
        return cls({half_exp: coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPoly.from_int(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = QPoly.from_int(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        out = dict(self.terms)
        for h, c in other.terms.items():
            s = out.get(h, 0) + c
            if s:
                out[h] = s
            else:
                out.pop(h, None)
        res = QPoly.__new__(QPoly)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = QPoly.__new__(QPoly)
        res.terms = {h: -c for h, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, int):
            other = QPoly.from_int(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = QPoly.from_int(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        out = {}
        for h1, c1 in self.terms.items():
            for h2, c2 in other.terms.items():
                h = h1 + h2
                s = out.get(h, 0) + c1 * c2
                if s:
                    out[h] = s
                else:
                    out.pop(h, None)
        res = QPoly.__new__(QPoly)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError("QPoly powers must be nonnegative integers")
        result = QPoly.from_int(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def eval_at_one(self):
        """Value at q = 1, i.e. the sum of all coefficients."""
        return sum(self.terms.values())

    def render(self):
        return render_qpoly(self)

    def __repr__(self):
        return "QPoly(%s)" % render_qpoly(self)


class PQPoly:
    """Polynomial in p and q with nonnegative integer exponents."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for key, c in terms.items():
                pe, qe = key
                if pe < 0 or qe < 0:
                    raise DomainError("PQPoly exponents must be nonnegative")
                if c:
                    cleaned[(pe, qe)] = c
        self.terms = cleaned

    @classmethod
    def from_int(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, p_exp, q_exp, coeff=1):
        return cls({(p_exp, q_exp): coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = PQPoly.from_int(other)
        if not isinstance(other, PQPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = PQPoly.from_int(other)
        if not isinstance(other, PQPoly):
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        res = PQPoly.__new__(PQPoly)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = PQPoly.__new__(PQPoly)
        res.terms = {key: -c for key, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, int):
            other = PQPoly.from_int(other)
        if not isinstance(other, PQPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = PQPoly.from_int(other)
        if not isinstance(other, PQPoly):
            return NotImplemented
        out = {}
        for (p1, q1), c1 in self.terms.items():
            for (p2, q2), c2 in other.terms.items():
                key = (p1 + p2, q1 + q2)
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        res = PQPoly.__new__(PQPoly)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError("PQPoly powers must be nonnegative integers")
        result = PQPoly.from_int(1)
        for _ in range(exponent):
            result = result * self
        return result

    def eval_at_one(self):
        """Value at p = q = 1."""
        return sum(self.terms.values())

    def render(self):
        return render_pqpoly(self)

    def __repr__(self):
        return "PQPoly(%s)" % render_pqpoly(self)


# ---------------------------------------------------------------------------
# q-analogs


@lru_cache(maxsize=None)
def qint(n):
    """[n]_q = 1 + q + ... + q^(n-1).  [0]_q = 0."""
    if n < 0:
        raise DomainError("qint needs n >= 0")
    return QPoly({2 * i: 1 for i in range(n)})


@lru_cache(maxsize=None)
def qfact(n):
    """[n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1."""
    if n < 0:
        raise DomainError("qfact needs n >= 0")
    if n == 0:
        return QPoly.from_int(1)
    return qfact(n - 1) * qint(n)


@lru_cache(maxsize=None)
def qbinom(n, k):
    """Gaussian binomial [n choose k]_q, zero outside 0 <= k <= n.

    Computed by exact division of q-factorials; a nonzero remainder
    would raise, which doubles as a self-check of the arithmetic.
    """
    if n < 0:
        raise DomainError("qbinom needs n >= 0")
    if k < 0 or k > n:
        return QPoly()
    return exact_div(qfact(n), qfact(k) * qfact(n - k))


def qmultinom(parts):
    """Gaussian multinomial [n choose n_1, ..., n_k]_q with n = sum."""
    parts = tuple(parts)
    if any(p < 0 for p in parts):
        raise DomainError("qmultinom needs nonnegative parts")
    denom = QPoly.from_int(1)
    for p in parts:
        denom = denom * qfact(p)
    return exact_div(qfact(sum(parts)), denom)


def q_odd_double_fact(n):
    """[2n-1]_q!! = [1]_q [3]_q ... [2n-1]_q."""
    if n < 0:
        raise DomainError("q_odd_double_fact needs n >= 0")
    out = QPoly.from_int(1)
    for j in range(1, n + 1):
        out = out * qint(2 * j - 1)
    return out


def pq_int(n):
    """[n]_{p,q} = p^(n-1) + p^(n-2) q + ... + q^(n-1).  [0] = 0."""
    if n < 0:
        raise DomainError("pq_int needs n >= 0")
    return PQPoly({(n - 1 - i, i): 1 for i in range(n)})


# ---------------------------------------------------------------------------
# division and substitution


def exact_div(f, g):
    """Exact quotient f / g of Laurent polynomials in q^(1/2).

    Long division on leading terms.  Raises DivisibilityError if g does
    not divide f; never returns an approximate result.
    """
    if not isinstance(f, QPoly) or not isinstance(g, QPoly):
        raise DomainError("exact_div operates on QPoly values")
    if not g.terms:
        raise DivisibilityError("division by zero")
    if not f.terms:
        return QPoly()
    # In an integral domain min exponents add under multiplication, so a
    # true quotient never has a term below fmin - gmin.  That bounds the
    # loop when g does not divide f.
    fmin = min(f.terms)
    g_lead = max(g.terms)
    g_lead_coeff = g.terms[g_lead]
    quot_floor = fmin - min(g.terms)
    num = dict(f.terms)
    quot = {}
    while num:
        lead = max(num)
        lead_coeff = num[lead]
        qh = lead - g_lead
        if qh < quot_floor or lead_coeff % g_lead_coeff:
            raise DivisibilityError("nonzero remainder in exact division")
        qc = lead_coeff // g_lead_coeff
        quot[qh] = qc
        for h, c in g.terms.items():
            nh = h + qh
            s = num.get(nh, 0) - c * qc
            if s:
                num[nh] = s
            else:
                num.pop(nh, None)
    return QPoly(quot)


def subst_q_power(f, r):
    """Substitute q -> q^r for rational r with denominator 1 or 2.

    Every stored half-exponent h must map to an integer h*r, otherwise
    the result would leave the ring and a DomainError is raised.
    """
    r = Fraction(r)
    if r == 0:
        raise DomainError("substitution exponent must be nonzero")
    if r.denominator not in (1, 2):
        raise DomainError("substitution exponent must have denominator 1 or 2")
    out = {}
    for h, c in f.terms.items():
        nh = h * r
        if nh.denominator != 1:
            raise DomainError(
                "q^(%d/2) maps outside the ring under q -> q^%s" % (h, r)
            )
        out[int(nh)] = c
    return QPoly(out)


def subst_p_q(f, p_value, q_value):
    """Evaluate a PQPoly at QPoly values of p and q."""
    if not isinstance(f, PQPoly):
        raise DomainError("subst_p_q operates on a PQPoly")
    p_pows = {0: QPoly.from_int(1)}
    q_pows = {0: QPoly.from_int(1)}

    def power(cache, base, e):
        if e not in cache:
            cache[e] = power(cache, base, e - 1) * base
        return cache[e]

    out = QPoly()
    for (pe, qe), c in f.terms.items():
        out = out + power(p_pows, p_value, pe) * power(q_pows, q_value, qe) * c
    return out


def eval_at_one(f):
    return f.eval_at_one()


def pq_swap(f):
    """Exchange the two variables of a PQPoly."""
    if not isinstance(f, PQPoly):
        raise DomainError("pq_swap operates on a PQPoly")
    return PQPoly({(qe, pe): c for (pe, qe), c in f.terms.items()})


# ---------------------------------------------------------------------------
# closed forms used as cross-checks


def touchard_riordan_rhs(n):
    """Crossing-number generating function over matchings of 2n points.

    (1-q)^(-n) * sum_k (C(2n,n-k) - C(2n,n-k-1)) (-1)^k q^(k(k+1)/2),
    computed by exact division so the result is a genuine polynomial.
    """
    if n < 0:
        raise DomainError("touchard_riordan_rhs needs n >= 0")
    num = {}
    for k in range(n + 1):
        c = comb(2 * n, n - k)
        if n - k - 1 >= 0:
            c -= comb(2 * n, n - k - 1)
        c *= (-1) ** k
        h = k * (k + 1)  # half-exponent of q^(k(k+1)/2)
        if c:
            num[h] = num.get(h, 0) + c
    denom = QPoly({0: 1, 2: -1}) ** n
    return exact_div(QPoly(num), denom)


def chu_vandermonde_sides(m, n, k):
    """Both sides of q-Chu-Vandermonde:
    sum_i q^(i(m-k+i)) [m, k-i] [n, i]  and  [m+n, k]."""
    if m < 0 or n < 0 or k < 0:
        raise DomainError("chu_vandermonde_sides needs nonnegative arguments")
    lhs = QPoly()
    for i in range(0, min(n, k) + 1):
        # the exponent i(m-k+i) may be negative; Laurent terms are fine
        lhs = lhs + QPoly.monomial(2 * i * (m - k + i)) * qbinom(m, k - i) * qbinom(n, i)
    return lhs, qbinom(m + n, k)


def chu_vandermonde_check(m, n, k):
    lhs, rhs = chu_vandermonde_sides(m, n, k)
    return lhs == rhs


# ---------------------------------------------------------------------------
# rendering


def _q_power_text(h):
    # h counts half powers of q
    if h == 2:
        return "q"
    if h % 2 == 0:
        e = h // 2
        if e > 0:
            return "q^%d" % e
        return "q^(%d)" % e
    if h > 0:
        return "q^(%d/2)" % h
    return "q^(-%d/2)" % -h


def render_qpoly(f):
    """Canonical text form: terms in ascending exponent order.

    Examples: "0", "1 + 2*q + q^(3/2)", "q^(-1) - q".
    """
    if not f.terms:
        return "0"
    pieces = []
    for h in sorted(f.terms):
        c = f.terms[h]
        if h == 0:
            body = str(abs(c))
        elif abs(c) == 1:
            body = _q_power_text(h)
        else:
            body = "%d*%s" % (abs(c), _q_power_text(h))
        pieces.append((c < 0, body))
    out = ["-" + pieces[0][1] if pieces[0][0] else pieces[0][1]]
    for neg, body in pieces[1:]:
        out.append(" - " + body if neg else " + " + body)
    return "".join(out)


def _pq_power_text(pe, qe):
    parts = []
    if pe == 1:
        parts.append("p")
    elif pe > 1:
        parts.append("p^%d" % pe)
    if qe == 1:
        parts.append("q")
    elif qe > 1:
        parts.append("q^%d" % qe)
    return "*".join(parts)


def render_pqpoly(f):
    """Canonical text form: ascending by total degree, then q-exponent."""
    if not f.terms:
        return "0"
    pieces = []
    for pe, qe in sorted(f.terms, key=lambda key: (key[0] + key[1], key[1])):
        c = f.terms[(pe, qe)]
        power = _pq_power_text(pe, qe)
        if not power:
            body = str(abs(c))
        elif abs(c) == 1:
            body = power
        else:
            body = "%d*%s" % (abs(c), power)
        pieces.append((c < 0, body))
    out = ["-" + pieces[0][1] if pieces[0][0] else pieces[0][1]]
    for neg, body in pieces[1:]:
        out.append(" - " + body if neg else " + " + body)
    return "".join(out)
