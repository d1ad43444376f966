"""Degree-truncated two-sided graded ideals of T(V) and their quotients.

Each multidegree is handled by explicit spanning followed by exact
echelonization; slices are memoized and built incrementally from the
slices one alpha_i lower:

    I(delta) = sum_i E_i I(delta - alpha_i) + sum_i I(delta - alpha_i) E_i
               + generators of degree delta.

The Nichols ideal is produced without a presentation, as the recursive
kernel of the skew-derivations: J(delta) = {x : partial_i^L(x) in
J(delta - alpha_i) for all i}, with J = 0 in total degree <= 1.

All operations are pure and the memo is idempotent, so callers may farm
distinct multidegrees of one total degree out to concurrent workers;
duplicate recomputation is harmless.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceededError, InputError
from .freealg import (
    FreeElem,
    TensorElem,
    coproduct,
    partial_l,
    word_count,
    word_key,
    words_of_degree,
)
from .linalg import ReducedEchelon

DEFAULT_WORD_CAP = 200_000

NICHOLS = "nichols"


class RelationSet:
    """A labelled list of homogeneous ideal generators."""

    def __init__(self, label, generators):
        self.label = label
        self.generators = tuple(generators)
        by_degree = {}
        for g in self.generators:
            if g.is_zero():
                raise InputError(f"relation set {label!r} contains zero")
            d = g.degree()  # raises on inhomogeneous input
            if not any(d):
                raise InputError(f"relation set {label!r} has a degree-0 generator")
            by_degree.setdefault(d, []).append(g)
        self.by_degree = by_degree

    def __repr__(self):
        return f"RelationSet({self.label!r}, {len(self.generators)} generators)"


@dataclass
class IdealSlice:
    """Echelonized degree-delta part of a two-sided graded ideal."""

    multidegree: tuple
    echelon: ReducedEchelon
    rank: int
    dim: int  # dimension of the quotient at this multidegree

    def quotient_words(self):
        """Non-pivot words, the canonical quotient basis, ascending."""
        pivots = self.echelon.rows
        return [w for w in words_of_degree(self.multidegree) if w not in pivots]

    def reduce(self, terms):
        return self.echelon.reduce(terms)

    def row_elements(self, braiding):
        out = []
        for lead in sorted(self.echelon.rows, key=word_key):
            out.append(FreeElem(braiding, dict(self.echelon.rows[lead])))
        return out


class QuotientView:
    """Normal-form oracle for T(V) modulo a graded ideal.

    source is either a RelationSet or the marker NICHOLS, in which case
    the ideal is the Nichols ideal computed from derivation kernels.
    """

    def __init__(self, braiding, source, word_cap=DEFAULT_WORD_CAP):
        if source is not NICHOLS and not isinstance(source, RelationSet):
            raise InputError("source must be a RelationSet or the NICHOLS marker")
        self.braiding = braiding
        self.source = source
        self.word_cap = word_cap
        self._memo = {}

    @property
    def label(self):
        return self.source if self.source is NICHOLS else self.source.label

    def slice(self, delta):
        delta = tuple(delta)
        if len(delta) != self.braiding.theta or any(d < 0 for d in delta):
            raise InputError(f"bad multidegree {delta}")
        got = self._memo.get(delta)
        if got is not None:
            return got
        # fill bottom-up so recursion depth stays at one
        pending = [delta]
        while pending:
            d = pending[-1]
            missing = [
                lower
                for lower in _lowers(d)
                if sum(lower) >= 1 and lower not in self._memo
            ]
            if missing:
                pending.extend(missing)
                continue
            pending.pop()
            if d not in self._memo:
                if word_count(d) > self.word_cap:
                    raise CapExceededError(
                        f"word count {word_count(d)} exceeds cap {self.word_cap} "
                        f"at multidegree {d}",
                        multidegree=d,
                    )
                if self.source is NICHOLS:
                    self._memo[d] = self._nichols_slice(d)
                else:
                    self._memo[d] = self._relation_slice(d)
        return self._memo[delta]

    # -- relation-set ideals ----------------------------------------------------

    def _relation_slice(self, delta):
        ech = ReducedEchelon()
        theta = self.braiding.theta
        if sum(delta) > 0:
            # letter-prefixed blocks keep disjoint leading words: free inserts
            for i in range(1, theta + 1):
                lower = _minus(delta, i)
                if lower is None:
                    continue
                sub = self.slice(lower).echelon
                if sub.rows:
                    ech.insert_prefixed_block(sub.rows, lambda w, i=i: (i,) + w)
            for i in range(1, theta + 1):
                lower = _minus(delta, i)
                if lower is None:
                    continue
                sub = self.slice(lower).echelon
                for row in sub.rows.values():
                    ech.insert({w + (i,): c for w, c in row.items()})
            for g in self.source.by_degree.get(delta, ()):
                ech.insert(g.terms)
        return IdealSlice(delta, ech, ech.rank, word_count(delta) - ech.rank)

    # -- the Nichols ideal --------------------------------------------------------

    def _nichols_slice(self, delta):
        ech = ReducedEchelon()
        if sum(delta) >= 2:
            targets = []
            for i in range(1, self.braiding.theta + 1):
                lower = _minus(delta, i)
                if lower is not None:
                    targets.append((i, self.slice(lower)))
            # kernel of x -> (NF(partial_i^L x))_i, by image-echelon sweep
            image = ReducedEchelon(key=lambda k: k)
            combos = {}
            kernel_rows = []
            for word in words_of_degree(delta):
                x = FreeElem.from_word(self.braiding, word)
                vec = {}
                for i, sl in targets:
                    for w, c in sl.reduce(partial_l(x, i).terms).items():
                        if not c.is_zero():
                            vec[(i, w)] = c
                combo = {word: self.braiding.ctx.one()}
                vec, combo = _reduce_tracking(image, combos, vec, combo)
                vec = {k: c for k, c in vec.items() if not c.is_zero()}
                if not vec:
                    kernel_rows.append(combo)
                else:
                    lead = max(vec)
                    inv = vec[lead].inv()
                    image.rows[lead] = {k: c * inv for k, c in vec.items()}
                    combos[lead] = {w: c * inv for w, c in combo.items()}
            for row in kernel_rows:
                ech.insert(row)
        return IdealSlice(delta, ech, ech.rank, word_count(delta) - ech.rank)

    # -- the public oracle ------------------------------------------------------------

    def normal_form(self, x):
        """Reduce each homogeneous component against its slice."""
        if x.is_zero():
            return x
        out = FreeElem.zero(self.braiding)
        for delta, comp in x.homogeneous_components().items():
            reduced = self.slice(delta).reduce(comp.terms)
            out = out + FreeElem(self.braiding, reduced)
        return out

    def is_in_ideal(self, x):
        return self.normal_form(x).is_zero()

    def dim(self, delta):
        return self.slice(tuple(delta)).dim

    def reduce_tensor(self, tensor):
        """Leg-wise normal form: the image in (T/I) (x) (T/I) coordinates.

        Left legs are reduced first, grouped by right word, then right legs.
        """
        by_right = {}
        for (w1, w2), c in tensor.terms.items():
            by_right.setdefault(w2, {})[w1] = c
        half = {}
        theta = self.braiding.theta
        for w2, left in by_right.items():
            for d1, terms in _split_by_degree(left, theta).items():
                for w1, c in self.slice(d1).reduce(terms).items():
                    if not c.is_zero():
                        acc = half.setdefault(w1, {})
                        prev = acc.get(w2)
                        prev = c if prev is None else prev + c
                        if prev.is_zero():
                            acc.pop(w2, None)
                        else:
                            acc[w2] = prev
        out = TensorElem.zero(self.braiding)
        for w1, right in half.items():
            for d2, terms in _split_by_degree(right, theta).items():
                for w2, c in self.slice(d2).reduce(terms).items():
                    if not c.is_zero():
                        out.terms[(w1, w2)] = c
        return out

    def is_primitive(self, x):
        """Whether Delta(x) - x (x) 1 - 1 (x) x dies leg-wise modulo the ideal."""
        if not x.is_homogeneous():
            raise InputError("primitivity test needs homogeneous input")
        one = FreeElem.one(self.braiding)
        diff = coproduct(x) - TensorElem.from_pair(x, one) - TensorElem.from_pair(one, x)
        return self.reduce_tensor(diff).is_zero()


def ideal_slice(relations, braiding, delta, word_cap=DEFAULT_WORD_CAP):
    """One-shot slice of the two-sided ideal generated by a RelationSet."""
    return QuotientView(braiding, relations, word_cap).slice(tuple(delta))


def nichols_slice(braiding, delta, word_cap=DEFAULT_WORD_CAP):
    """One-shot slice of the Nichols ideal at the multidegree."""
    return QuotientView(braiding, NICHOLS, word_cap).slice(tuple(delta))


# -- helpers ---------------------------------------------------------------------------


def _minus(delta, i):
    if delta[i - 1] == 0:
        return None
    out = list(delta)
    out[i - 1] -= 1
    return tuple(out)


def _lowers(delta):
    return [low for i in range(1, len(delta) + 1) if (low := _minus(delta, i)) is not None]


def _split_by_degree(terms, theta):
    from .freealg import word_degree

    out = {}
    for w, c in terms.items():
        out.setdefault(word_degree(w, theta), {})[w] = c
    return out


def _reduce_tracking(ech, combos, vec, combo):
    """Reduce vec against a (not necessarily reduced) echelon, tracking the
    expression of the result over the original inserted vectors."""
    while True:
        k = next((key for key in vec if key in ech.rows), None)
        if k is None:
            return vec, combo
        c = vec.pop(k)
        if c.is_zero():
            continue
        for tk, tc in ech.rows[k].items():
            if tk == k:
                continue
            acc = vec.get(tk)
            acc = -(c * tc) if acc is None else acc - c * tc
            if acc.is_zero():
                vec.pop(tk, None)
            else:
                vec[tk] = acc
        for w, cc in combos[k].items():
            acc = combo.get(w)
            acc = -(c * cc) if acc is None else acc - c * cc
            if acc.is_zero():
                combo.pop(w, None)
            else:
                combo[w] = acc
