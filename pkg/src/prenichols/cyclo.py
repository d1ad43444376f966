"""Exact arithmetic in a fixed cyclotomic field Q(zeta_M).

Elements are stored as reduced residues modulo the M-th cyclotomic
polynomial, with gmpy2 rationals as coefficients.  This is the coefficient
domain for everything else in the package: braiding entries, structure
constants, echelon forms.  No floating point anywhere.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

from .errors import ContextMismatchError, InputError

_ZERO = mpq(0)
_ONE = mpq(1)


def _poly_divmod_int(num, den):
    """Exact division of integer polynomials (lists, low degree first)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        lead = num[k + len(den) - 1]
        if lead % den[-1]:
            raise ArithmeticError("non-exact polynomial division")
        c = lead // den[-1]
        q[k] = c
        if c:
            for j, d in enumerate(den):
                num[k + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("non-exact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m):
    """Coefficients of Phi_m, low degree first, computed by exact division
    of x^m - 1 by Phi_d over the proper divisors d."""
    if m == 1:
        return (-1, 1)
    poly = [0] * m + [1]
    poly[0] = -1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divmod_int(poly, cyclotomic_polynomial(d))
    return tuple(poly)


class CyclotomicContext:
    """The field Q(zeta_M): cyclotomic polynomial plus reduction tables."""

    def __init__(self, order):
        if not isinstance(order, int) or order < 1:
            raise InputError(f"invalid cyclotomic order {order!r}")
        self.order = order
        self.phi_poly = cyclotomic_polynomial(order)
        self.degree = len(self.phi_poly) - 1
        d = self.degree
        # reduction[k] = coefficients of zeta^k mod Phi_M, for k < 2d-1
        red = []
        for k in range(d):
            row = [_ZERO] * d
            row[k] = _ONE
            red.append(tuple(row))
        for k in range(d, 2 * d - 1):
            prev = red[k - 1]
            row = [_ZERO] + list(prev[: d - 1])
            top = prev[d - 1]
            if top:
                for t in range(d):
                    row[t] -= top * self.phi_poly[t]
            red.append(tuple(row))
        self._reduction = tuple(red)
        self._zero = CycNum(self, (_ZERO,) * d)
        one = [_ZERO] * d
        one[0] = _ONE
        self._one = CycNum(self, tuple(one))

    def __repr__(self):
        return f"CyclotomicContext({self.order})"

    def __eq__(self, other):
        return isinstance(other, CyclotomicContext) and other.order == self.order

    def __hash__(self):
        return hash(("CyclotomicContext", self.order))

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def from_rational(self, value):
        co = [_ZERO] * self.degree
        co[0] = mpq(value.numerator, value.denominator) if isinstance(value, Fraction) else mpq(value)
        return CycNum(self, tuple(co))

    def zeta(self, power=1):
        """zeta_M^power as a reduced element."""
        k = power % self.order
        d = self.degree
        if k < d:
            co = [_ZERO] * d
            co[k] = _ONE
            return CycNum(self, tuple(co))
        # reduce zeta^k for d <= k < M by repeated shifting
        acc = list(self._reduction[d - 1])
        for _ in range(k - (d - 1)):
            top = acc[d - 1]
            acc = [_ZERO] + acc[: d - 1]
            if top:
                for t in range(d):
                    acc[t] -= top * self.phi_poly[t]
        return CycNum(self, tuple(acc))

    def parse(self, text):
        return parse_cyclo(text, self)


@lru_cache(maxsize=None)
def get_context(order):
    return CyclotomicContext(order)


class CycNum:
    """An element of Q(zeta_M), stored as the reduced residue mod Phi_M."""

    __slots__ = ("ctx", "co", "_hash")

    def __init__(self, ctx, co):
        self.ctx = ctx
        self.co = co
        self._hash = None

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def _check(a, b):
        if a.ctx.order != b.ctx.order:
            raise ContextMismatchError(
                f"mixed cyclotomic orders {a.ctx.order} and {b.ctx.order}"
            )

    def _coerce(self, other):
        if isinstance(other, CycNum):
            CycNum._check(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.from_rational(other)
        return NotImplemented

    # -- ring structure ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycNum(self.ctx, tuple(x + y for x, y in zip(self.co, other.co)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return CycNum(self.ctx, tuple(x - y for x, y in zip(self.co, other.co)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return CycNum(self.ctx, tuple(-x for x in self.co))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self.ctx.degree
        red = self.ctx._reduction
        acc = [_ZERO] * d
        bco = other.co
        for i, ai in enumerate(self.co):
            if ai:
                for j, bj in enumerate(bco):
                    if bj:
                        c = ai * bj
                        k = i + j
                        if k < d:
                            acc[k] += c
                        else:
                            row = red[k]
                            for t in range(d):
                                if row[t]:
                                    acc[t] += c * row[t]
        return CycNum(self.ctx, tuple(acc))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self):
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_M."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        # xgcd over Q[x]: r0 = Phi_M, r1 = self; track s in r = s*self mod Phi
        d = self.ctx.degree
        r0 = [mpq(c) for c in self.ctx.phi_poly]
        r1 = list(self.co)
        while r1 and not r1[-1]:
            r1.pop()
        s0, s1 = [], [_ONE]
        while True:
            if len(r1) == 1:
                c = r1[0]
                co = [x / c for x in s1] + [_ZERO] * d
                return CycNum(self.ctx, tuple(co[:d]))
            q, r = _poly_divmod_q(r0, r1)
            s = _poly_sub_q(s0, _poly_mul_q(q, s1))
            r0, r1, s0, s1 = r1, r, s1, s

    # -- predicates & hashing --------------------------------------------------

    def is_zero(self):
        return not any(self.co)

    def is_one(self):
        return self.co[0] == 1 and not any(self.co[1:])

    def is_rational(self):
        return not any(self.co[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("not a rational element")
        return Fraction(int(self.co[0].numerator), int(self.co[0].denominator))

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.from_rational(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.ctx.order == other.ctx.order and self.co == other.co

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx.order, self.co))
        return self._hash

    def __repr__(self):
        return f"CycNum({self.ctx.order}, {format_cyclo(self)!r})"

    def __str__(self):
        return format_cyclo(self)

    # -- orders ---------------------------------------------------------------

    def mul_order(self, cap=None):
        """Least n >= 1 with self**n == 1, or None if self is not a root of
        unity.  Roots of unity in Q(zeta_M) have order dividing 2M, so the
        search is finite; cap is a safety bound on top of that."""
        if self.is_zero():
            raise ZeroDivisionError("mul_order of zero")
        bound = 2 * self.ctx.order
        if cap is not None:
            bound = min(bound, cap)
        acc = self
        for n in range(1, bound + 1):
            if acc.is_one():
                return n
            acc = acc * self
        return None


# -- polynomial helpers over mpq (used by inv) ---------------------------------


def _poly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod_q(num, den):
    num = list(num)
    dn = len(den) - 1
    q = [_ZERO] * (len(num) - dn)
    inv_lead = 1 / den[-1]
    for k in range(len(q) - 1, -1, -1):
        c = num[k + dn] * inv_lead
        q[k] = c
        if c:
            for j, dcoef in enumerate(den):
                num[k + j] -= c * dcoef
    return _poly_trim(q), _poly_trim(num[:dn])


def _poly_mul_q(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_sub_q(a, b):
    n = max(len(a), len(b))
    out = [_ZERO] * n
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _poly_trim(out)


# -- q-combinatorics ------------------------------------------------------------


def q_number(n, q):
    """(n)_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise InputError("q_number needs n >= 0")
    acc = q.ctx.zero()
    power = q.ctx.one()
    for _ in range(n):
        acc = acc + power
        power = power * q
    return acc


def q_factorial(n, q):
    acc = q.ctx.one()
    for j in range(1, n + 1):
        acc = acc * q_number(j, q)
    return acc


def q_binomial(n, i, q):
    """Gaussian binomial evaluated at q, by the Pascal recurrence.

    Never computed as a ratio of q-factorials, which may vanish at roots
    of unity."""
    if not 0 <= i <= n:
        raise InputError(f"q_binomial index out of range: ({n}, {i})")
    # row-by-row Pascal: binom(m, j) = binom(m-1, j-1) + q^j binom(m-1, j)
    row = [q.ctx.one()]
    for m in range(1, n + 1):
        new = [q.ctx.one()]
        qpow = q.ctx.one()
        for j in range(1, m):
            qpow = qpow * q
            new.append(row[j - 1] + qpow * row[j])
        new.append(q.ctx.one())
        row = new
    return row[i]


# -- embeddings -------------------------------------------------------------------


def embed(a, big_ctx):
    """Embed Q(zeta_M) into Q(zeta_{kM}) via zeta_M -> zeta_{kM}^k."""
    k, rem = divmod(big_ctx.order, a.ctx.order)
    if rem:
        raise ContextMismatchError(
            f"no canonical embedding of Q(zeta_{a.ctx.order}) into Q(zeta_{big_ctx.order})"
        )
    acc = big_ctx.zero()
    for j, c in enumerate(a.co):
        if c:
            acc = acc + big_ctx.zeta(j * k) * Fraction(int(c.numerator), int(c.denominator))
    return acc


# -- the literal grammar ----------------------------------------------------------
#
# expr := term (("+"|"-") term)*
# term := [rat "*"] "z" ["^" int] | rat
# rat  := int ["/" posint]

_TOKEN = re.compile(r"\s*(?:(\d+)|([zZ])|(\^)|(\*)|(/)|(\+)|(-))")


def parse_cyclo(text, ctx):
    """Parse the cyclotomic literal grammar; z denotes zeta_M of ctx."""
    pos = 0
    n = len(text)

    def error(msg):
        raise InputError(f"cyclotomic literal {text!r}: {msg}")

    tokens = []
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                error(f"unexpected character at {pos}")
            break
        pos = m.end()
        for idx, val in enumerate(m.groups()):
            if val is not None:
                tokens.append((idx, val))
                break
    tokens.append((None, ""))

    it = iter(range(len(tokens)))
    state = {"i": 0}

    def peek():
        return tokens[state["i"]]

    def advance():
        tok = tokens[state["i"]]
        state["i"] += 1
        return tok

    def parse_int():
        sign = 1
        while peek()[0] in (5, 6):
            if advance()[0] == 6:
                sign = -sign
        kind, val = peek()
        if kind != 0:
            error("expected an integer")
        advance()
        return sign * int(val)

    def parse_rat():
        num = parse_int()
        if peek()[0] == 4:
            advance()
            den = parse_int()
            if den <= 0:
                error("denominator must be positive")
            return Fraction(num, den)
        return Fraction(num)

    def parse_term(sign):
        coef = Fraction(sign)
        kind, _ = peek()
        if kind == 0:
            coef *= parse_rat()
            if peek()[0] == 3:
                advance()
                if peek()[0] != 1:
                    error("expected z after *")
            elif peek()[0] == 1:
                error("missing * between coefficient and z")
            else:
                return ctx.from_rational(coef)
        if peek()[0] == 1:
            advance()
            power = 1
            if peek()[0] == 2:
                advance()
                power = parse_int()
            return ctx.zeta(power) * coef
        error("expected a term")

    kind, _ = peek()
    sign = 1
    if kind in (5, 6):
        if advance()[0] == 6:
            sign = -1
    acc = parse_term(sign)
    while True:
        kind, _ = peek()
        if kind is None:
            return acc
        if kind == 5:
            advance()
            acc = acc + parse_term(1)
        elif kind == 6:
            advance()
            acc = acc + parse_term(-1)
        else:
            error("expected + or -")


def _format_rat(c, need_sign=False):
    s = str(abs(c)) if need_sign else str(c)
    return s


def format_cyclo(a):
    """Round-trippable text in the literal grammar."""
    parts = []
    for k, c in enumerate(a.co):
        if not c:
            continue
        mag = c if c > 0 else -c
        if k == 0:
            body = str(mag)
        else:
            z = "z" if k == 1 else f"z^{k}"
            body = z if mag == 1 else f"{mag}*{z}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
