"""Sparse reduced echelon forms over the cyclotomic field.

Vectors are dicts keyed by words (or any totally ordered hashables) with
CycNum values.  The echelon is kept fully reduced: every row has leading
coefficient 1 and its tail supported on non-pivot keys only.  That keeps
rows as short as the quotient is small, which is what makes per-degree
ideal slices cheap: reduction is a single pass, and inserting a prefixed
or suffixed copy of a reduced row costs almost nothing.
"""

from __future__ import annotations

from .freealg import word_key


class ReducedEchelon:
    """Gauss-Jordan echelon of a growing span, keyed by leading word."""

    __slots__ = ("rows", "_tail_index", "key")

    def __init__(self, key=word_key):
        self.rows = {}  # lead -> dict(word -> CycNum), row[lead] == 1
        self._tail_index = {}  # word -> set of leads whose tail touches it
        self.key = key

    @property
    def rank(self):
        return len(self.rows)

    def pivots(self):
        return self.rows.keys()

    def reduce(self, vec):
        """Image of vec in the chosen complement of the span (single pass:
        tails live on non-pivot words, so no chaining is needed)."""
        out = dict(vec)
        hits = [w for w in out if w in self.rows]
        for w in hits:
            c = out.pop(w)
            if c.is_zero():
                continue
            for tw, tc in self.rows[w].items():
                if tw == w:
                    continue
                acc = out.get(tw)
                acc = -(c * tc) if acc is None else acc - c * tc
                if acc.is_zero():
                    out.pop(tw, None)
                else:
                    out[tw] = acc
        return out

    def insert(self, vec):
        """Reduce vec and adjoin the residual as a new pivot row.

        Returns the new pivot word, or None when vec was already in the
        span.  Existing rows are back-substituted so the echelon stays
        fully reduced.
        """
        res = self.reduce(vec)
        res = {w: c for w, c in res.items() if not c.is_zero()}
        if not res:
            return None
        lead = max(res, key=self.key)
        inv = res[lead].inv()
        row = {w: c * inv for w, c in res.items()}
        self._adjoin(lead, row)
        return lead

    def _adjoin(self, lead, row):
        # back-substitute the new pivot out of existing tails
        holders = self._tail_index.pop(lead, None)
        if holders:
            for other in list(holders):
                orow = self.rows[other]
                c = orow.pop(lead, None)
                if c is None or c.is_zero():
                    continue
                for tw, tc in row.items():
                    if tw == lead:
                        continue
                    acc = orow.get(tw)
                    acc = -(c * tc) if acc is None else acc - c * tc
                    if acc.is_zero():
                        if tw in orow:
                            del orow[tw]
                            self._discard_index(tw, other)
                    else:
                        if tw not in orow:
                            self._tail_index.setdefault(tw, set()).add(other)
                        orow[tw] = acc
        self.rows[lead] = row
        for tw in row:
            if tw != lead:
                self._tail_index.setdefault(tw, set()).add(lead)

    def _discard_index(self, word, lead):
        holders = self._tail_index.get(word)
        if holders is not None:
            holders.discard(lead)
            if not holders:
                del self._tail_index[word]

    def insert_prefixed_block(self, rows, transform):
        """Adjoin {transform(lead): transform-mapped row} for a batch whose
        transformed leads are fresh and whose transformed tails avoid all
        pivots.  Callers guarantee both (letter-prefixed or -suffixed copies
        of a reduced lower echelon do); everything is then a re-keying."""
        for lead, row in rows.items():
            new_row = {transform(w): c for w, c in row.items()}
            self._adjoin(transform(lead), new_row)

    def contains(self, vec):
        res = self.reduce(vec)
        return not any(not c.is_zero() for c in res.values())


def solve_in_span(vectors, target, one, key=word_key):
    """Exact coefficients c with sum c_k vectors[k] = target, or None.

    vectors and target are dicts word -> CycNum, one is the field unit;
    the solution is unique when the vectors are independent (the only
    case the callers rely on).
    """
    ech = ReducedEchelon(key=key)
    combos = {}  # lead -> dict(index -> CycNum)

    def reduce_tracking(vec, combo):
        # rows here are inserted without back-substitution, so tails may hit
        # pivots: iterate to a fixed point, one pivot at a time
        out = dict(vec)
        while True:
            w = next((k for k in out if k in ech.rows), None)
            if w is None:
                return out, combo
            c = out.pop(w)
            if c.is_zero():
                continue
            for tw, tc in ech.rows[w].items():
                if tw == w:
                    continue
                acc = out.get(tw)
                acc = -(c * tc) if acc is None else acc - c * tc
                if acc.is_zero():
                    out.pop(tw, None)
                else:
                    out[tw] = acc
            for idx, cc in combos[w].items():
                acc = combo.get(idx)
                acc = -(c * cc) if acc is None else acc - c * cc
                if acc.is_zero():
                    combo.pop(idx, None)
                else:
                    combo[idx] = acc

    for idx, vec in enumerate(vectors):
        combo = {idx: one}
        res, combo = reduce_tracking(vec, combo)
        res = {w: c for w, c in res.items() if not c.is_zero()}
        if not res:
            continue
        lead = max(res, key=key)
        inv = res[lead].inv()
        ech.rows[lead] = {w: c * inv for w, c in res.items()}
        combos[lead] = {i: c * inv for i, c in combo.items()}

    res, combo = reduce_tracking(dict(target), {})
    if any(not c.is_zero() for c in res.values()):
        return None
    return {idx: -c for idx, c in combo.items()}
