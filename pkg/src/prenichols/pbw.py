"""PBW data for the distinguished pre-Nichols quotient.

Root vectors are realized by explicit bracketing recipes (trees of braided
commutators with optional scalar normalizations), not by Lusztig maps.
Defaults come from a Lyndon-word heuristic and are validated by the basis
property; catalog entries override them with printed realizations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .cyclo import q_number
from .errors import CapExceededError, InputError, RecipeMissingError
from .freealg import (
    FreeElem,
    commutator_c,
    word_count,
    words_of_degree,
)
from .linalg import solve_in_span

# -- recipe trees -------------------------------------------------------------
#
# recipe := ("letter", i) | ("comm", recipe, recipe) | ("scale", CycNum, recipe)


def letter(i):
    return ("letter", i)


def comm(a, b):
    return ("comm", a, b)


def scale(c, node):
    return ("scale", c, node)


def expand_recipe(recipe, braiding):
    kind = recipe[0]
    if kind == "letter":
        return FreeElem.generator(braiding, recipe[1])
    if kind == "comm":
        return commutator_c(
            expand_recipe(recipe[1], braiding), expand_recipe(recipe[2], braiding)
        )
    if kind == "scale":
        return expand_recipe(recipe[2], braiding).scale(recipe[1])
    raise InputError(f"bad recipe node {recipe!r}")


def format_recipe(recipe):
    kind = recipe[0]
    if kind == "letter":
        return str(recipe[1])
    if kind == "comm":
        return f"(comm {format_recipe(recipe[1])} {format_recipe(recipe[2])})"
    if kind == "scale":
        return f"{recipe[1]} * {format_recipe(recipe[2])}"
    raise InputError(f"bad recipe node {recipe!r}")


_RECIPE_TOKEN = re.compile(r"\(|\)|comm|\d+")


def parse_recipe(text, ctx):
    """Parse '[scalar *] sexp' with sexp = int | (comm sexp sexp)."""
    text = text.strip()
    scalar = None
    if "(" in text:
        idx = text.index("(")
        head = text[:idx].rstrip()
        if head:
            if not head.endswith("*"):
                raise InputError(f"recipe scalar prefix must end with '*': {text!r}")
            scalar = ctx.parse(head[:-1])
        body = text[idx:]
    elif "*" in text:
        head, _, body = text.rpartition("*")
        scalar = ctx.parse(head)
    else:
        body = text
    tokens = _RECIPE_TOKEN.findall(body)
    if "".join(tokens).replace(" ", "") != re.sub(r"\s+", "", body):
        raise InputError(f"bad recipe syntax: {text!r}")

    pos = [0]

    def parse_node():
        if pos[0] >= len(tokens):
            raise InputError(f"truncated recipe: {text!r}")
        tok = tokens[pos[0]]
        pos[0] += 1
        if tok.isdigit():
            return letter(int(tok))
        if tok == "(":
            if tokens[pos[0]] != "comm":
                raise InputError(f"expected comm in recipe: {text!r}")
            pos[0] += 1
            a = parse_node()
            b = parse_node()
            if tokens[pos[0]] != ")":
                raise InputError(f"expected ) in recipe: {text!r}")
            pos[0] += 1
            return comm(a, b)
        raise InputError(f"bad recipe token {tok!r}")

    node = parse_node()
    if pos[0] != len(tokens):
        raise InputError(f"trailing tokens in recipe: {text!r}")
    return scale(scalar, node) if scalar is not None else node


# -- Lyndon defaults ------------------------------------------------------------


def is_lyndon(word):
    return bool(word) and all(word < word[k:] for k in range(1, len(word)))


def standard_bracketing(word):
    """Bracket along the standard factorization: v = the longest proper
    Lyndon suffix, recipe = [recipe(u), recipe(v)]."""
    if len(word) == 1:
        return letter(word[0])
    for k in range(1, len(word)):
        if is_lyndon(word[k:]):
            return comm(standard_bracketing(word[:k]), standard_bracketing(word[k:]))
    raise InputError(f"{word} is not a Lyndon word")


def default_recipes(report, braiding, quotient=None):
    """Per positive root, the standard bracketing of the lexicographically
    greatest Lyndon word of that degree with nonzero image (in the quotient
    when one is supplied, else in T(V))."""
    out = {}
    for datum in report.roots:
        beta = datum.beta
        candidates = sorted(
            (w for w in words_of_degree(beta) if is_lyndon(w)), reverse=True
        )
        chosen = None
        for word in candidates:
            recipe = standard_bracketing(word)
            elem = expand_recipe(recipe, braiding)
            if elem.is_zero():
                continue
            if quotient is not None and quotient.normal_form(elem).is_zero():
                continue
            chosen = recipe
            break
        if chosen is None:
            raise RecipeMissingError(f"no nonzero Lyndon recipe for root {beta}")
        out[beta] = chosen
    return out


# -- PBW specification ------------------------------------------------------------


@dataclass(frozen=True)
class PBWMonomial:
    """Exponent vector over the ordered roots beta_1 < ... < beta_M."""

    exponents: tuple

    def multidegree(self, roots):
        theta = len(roots[0])
        deg = [0] * theta
        for a, beta in zip(self.exponents, roots):
            for t in range(theta):
                deg[t] += a * beta[t]
        return tuple(deg)


class PBWSpec:
    """Ordered roots, heights, Cartan flags and root-vector recipes."""

    def __init__(self, report, braiding, quotient, recipes=None):
        self.report = report
        self.braiding = braiding
        self.quotient = quotient
        self.roots = tuple(d.beta for d in report.roots)
        self.heights = tuple(d.height for d in report.roots)
        self.cartan = tuple(d.cartan for d in report.roots)
        self.recipes = dict(recipes) if recipes else default_recipes(report, braiding, quotient)
        missing = [b for b in self.roots if b not in self.recipes]
        if missing:
            defaults = default_recipes(report, braiding, quotient)
            for b in missing:
                self.recipes[b] = defaults[b]
        self._vectors = {}
        self._powers = {}

    def root_vector(self, beta):
        beta = tuple(beta)
        got = self._vectors.get(beta)
        if got is None:
            got = expand_recipe(self.recipes[beta], self.braiding)
            if got.is_zero() or got.degree() != beta:
                raise InputError(f"recipe for {beta} expands to the wrong degree")
            self._vectors[beta] = got
        return got

    def root_power(self, beta, a):
        beta = tuple(beta)
        key = (beta, a)
        got = self._powers.get(key)
        if got is None:
            if a == 0:
                got = FreeElem.one(self.braiding)
            else:
                got = self.root_power(beta, a - 1) * self.root_vector(beta)
            self._powers[key] = got
        return got

    def monomial_element(self, monomial):
        """E^a = E_{beta_M}^{a_M} ... E_{beta_1}^{a_1} (descending order)."""
        out = FreeElem.one(self.braiding)
        for k in range(len(self.roots) - 1, -1, -1):
            a = monomial.exponents[k]
            if a:
                out = out * self.root_power(self.roots[k], a)
        return out

    def enumerate_restricted(self, delta):
        """All restricted monomials of the multidegree, in lexicographic
        order of the exponent vector (a_1, ..., a_M)."""
        delta = tuple(delta)
        roots = self.roots
        M = len(roots)
        out = []
        expo = [0] * M

        def rec(k, remaining):
            if not any(remaining):
                pad = M - k
                if pad >= 0:
                    out.append(PBWMonomial(tuple(expo[:k]) + (0,) * pad))
                return
            if k == M:
                return
            beta = roots[k]
            bound = None if self.cartan[k] else self.heights[k] - 1
            a = 0
            while True:
                if bound is not None and a > bound:
                    break
                rem = tuple(r - a * b for r, b in zip(remaining, beta))
                if any(r < 0 for r in rem):
                    break
                expo[k] = a
                rec(k + 1, rem)
                a += 1
            expo[k] = 0

        rec(0, delta)
        return out

    def restricted_count(self, delta):
        return len(self.enumerate_restricted(delta))

    def pbw_coefficients(self, x, delta=None):
        """The unique expansion of normal_form(x) over expanded restricted
        monomials of its multidegree."""
        if delta is None:
            delta = x.degree()
        delta = tuple(delta)
        monomials = self.enumerate_restricted(delta)
        vectors = [
            self.quotient.normal_form(self.monomial_element(m)).terms for m in monomials
        ]
        target = self.quotient.normal_form(x).terms
        sol = solve_in_span(vectors, target, self.braiding.ctx.one())
        if sol is None:
            raise InputError(
                f"element of degree {delta} is not in the restricted-monomial span: "
                "recipe failure"
            )
        return {monomials[i]: c for i, c in sol.items() if not c.is_zero()}

    def straightening(self, k, l):
        """Solve E_k E_l - chi(beta_k, beta_l) E_l E_k over monomials in the
        strictly intermediate roots; k and l are 1-based positions."""
        if not 1 <= k < l <= len(self.roots):
            raise InputError("straightening needs 1 <= k < l <= M")
        bk, bl = self.roots[k - 1], self.roots[l - 1]
        ek, el = self.root_vector(bk), self.root_vector(bl)
        twist = self.braiding.chi(bk, bl)
        lhs = self.quotient.normal_form(ek * el - (el * ek).scale(twist))
        delta = tuple(a + b for a, b in zip(bk, bl))
        monomials = [
            m
            for m in self.enumerate_restricted(delta)
            if all(m.exponents[j] == 0 for j in range(len(self.roots)) if not k - 1 < j < l - 1)
        ]
        vectors = [
            self.quotient.normal_form(self.monomial_element(m)).terms for m in monomials
        ]
        sol = solve_in_span(vectors, lhs.terms, self.braiding.ctx.one())
        if sol is None:
            return StraighteningResult(k, l, False, {}, lhs)
        coeffs = {monomials[i]: c for i, c in sol.items() if not c.is_zero()}
        return StraighteningResult(k, l, True, coeffs, lhs)


@dataclass
class StraighteningResult:
    k: int
    l: int
    solvable: bool
    coefficients: dict
    normal_form: object

    def to_json(self):
        return {
            "k": self.k,
            "l": self.l,
            "solvable": self.solvable,
            "coefficients": {
                ",".join(map(str, m.exponents)): str(c)
                for m, c in self.coefficients.items()
            },
        }


# -- Hilbert series ------------------------------------------------------------------


def series_coefficients(report, algebra, total_degree):
    """Multidegree coefficients of the product formula up to the total degree.

    nichols:     prod over all roots of (1 + t^beta + ... + t^((N-1) beta))
    prenichols:  the same over non-Cartan roots, times 1/(1 - t^beta) over
                 Cartan roots.
    """
    if algebra not in ("nichols", "prenichols"):
        raise InputError(f"unknown algebra {algebra!r}")
    acc = {tuple(0 for _ in range(report.theta)): 1}
    for datum in report.roots:
        beta = datum.beta
        ht = sum(beta)
        if datum.height is None:
            if algebra == "nichols" or not datum.cartan:
                raise InputError(f"root {beta} has infinite height")
            top = total_degree // ht
        elif algebra == "prenichols" and datum.cartan:
            top = total_degree // ht
        else:
            top = min(datum.height - 1, total_degree // ht)
        new = {}
        for deg, count in acc.items():
            for a in range(top + 1):
                d = tuple(x + a * y for x, y in zip(deg, beta))
                if sum(d) <= total_degree:
                    new[d] = new.get(d, 0) + count
        acc = new
    return acc
