"""Braiding matrices, the induced bicharacter on Z^theta, and derived scalars.

Integer vectors are plain tuples, integer matrices tuples of row tuples.
A braiding matrix is the fundamental object of the whole package: the
bicharacter chi extends its entries biadditively, and the Weyl groupoid
acts on the matrices themselves (equality is entrywise, on the nose).
"""

from __future__ import annotations

from fractions import Fraction

from .cyclo import CycNum, q_number
from .errors import InputError

# -- integer linear algebra helpers ------------------------------------------


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a):
    return tuple(-x for x in a)


def vec_scale(c, a):
    return tuple(c * x for x in a)


def unit_vector(i, theta):
    """alpha_i as an element of Z^theta (i is 1-based)."""
    return tuple(1 if j == i - 1 else 0 for j in range(theta))


def mat_vec(m, v):
    return tuple(sum(r[j] * v[j] for j in range(len(v))) for r in m)


def mat_mul(a, b):
    n = len(b)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(len(b[0])))
        for i in range(len(a))
    )


def identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_det(m):
    """Determinant by fraction-free expansion; matrices here are tiny."""
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = tuple(row[:j] + row[j + 1 :] for row in m[1:])
            total += (-1) ** j * m[0][j] * mat_det(minor)
    return total


def mat_inverse_unimodular(m):
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(m)
    det = mat_det(m)
    if det not in (1, -1):
        raise InputError(f"matrix is not unimodular (det = {det})")
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if work[r][col])
        work[col], work[piv] = work[piv], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    out = tuple(tuple(int(work[i][n + j]) for j in range(n)) for i in range(n))
    return out


def hermite_normal_form(rows):
    """Row-style HNF basis of the lattice spanned by the given integer rows.

    Pivots are positive, entries above a pivot reduced into [0, pivot).
    Returns a tuple of nonzero rows.
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return ()
    ncols = len(rows[0])
    basis = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        # gcd-out the column below the pivot
        for i in range(r + 1, len(rows)):
            while rows[i][c]:
                q = rows[r][c] // rows[i][c]
                rows[r] = [x - q * y for x, y in zip(rows[r], rows[i])]
                rows[r], rows[i] = rows[i], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        r += 1
        if r == len(rows):
            break
    rows = rows[:r]
    # reduce entries above each pivot
    pivots = []
    for i, row in enumerate(rows):
        c = next(j for j, x in enumerate(row) if x)
        pivots.append(c)
        for k in range(i):
            q = rows[k][c] // row[c]
            if q:
                rows[k] = [x - q * y for x, y in zip(rows[k], row)]
    return tuple(tuple(r) for r in rows)


# -- braiding matrices ---------------------------------------------------------


class BraidingMatrix:
    """A theta x theta matrix of nonzero CycNum entries with q_ii != 1.

    Equality and hashing are entrywise and exact; the Weyl groupoid
    exploration uses them as object identity.
    """

    __slots__ = ("ctx", "theta", "q", "label", "_hash", "_chi_cache")

    def __init__(self, ctx, entries, label=None):
        theta = len(entries)
        q = tuple(tuple(row) for row in entries)
        if any(len(row) != theta for row in q):
            raise InputError("braiding matrix must be square")
        for i in range(theta):
            for j in range(theta):
                e = q[i][j]
                if not isinstance(e, CycNum) or e.ctx.order != ctx.order:
                    raise InputError(f"entry ({i + 1},{j + 1}) not in Q(zeta_{ctx.order})")
                if e.is_zero():
                    raise InputError(f"entry ({i + 1},{j + 1}) is zero")
            if q[i][i].is_one():
                raise InputError(f"diagonal entry q_{i + 1}{i + 1} = 1 is not allowed")
        self.ctx = ctx
        self.theta = theta
        self.q = q
        self.label = label
        self._hash = None
        self._chi_cache = {}

    def __eq__(self, other):
        return (
            isinstance(other, BraidingMatrix)
            and self.ctx.order == other.ctx.order
            and self.q == other.q
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx.order, self.q))
        return self._hash

    def __repr__(self):
        rows = "; ".join(", ".join(str(e) for e in row) for row in self.q)
        name = f" {self.label}" if self.label else ""
        return f"<BraidingMatrix{name} theta={self.theta} [{rows}]>"

    def entry(self, i, j):
        """q_ij with 1-based indices."""
        return self.q[i - 1][j - 1]

    def relabel(self, label):
        b = BraidingMatrix(self.ctx, self.q, label)
        return b

    def chi(self, alpha, beta):
        """The bicharacter chi(alpha, beta) = prod q_ij^(a_i b_j)."""
        key = (alpha, beta)
        cached = self._chi_cache.get(key)
        if cached is not None:
            return cached
        acc = self.ctx.one()
        for i, a in enumerate(alpha):
            if a:
                for j, b in enumerate(beta):
                    if b:
                        acc = acc * self.q[i][j] ** (a * b)
        if len(self._chi_cache) < 1 << 16:
            self._chi_cache[key] = acc
        return acc

    def qtilde(self, i, j):
        """q~_ij = q_ij q_ji for i != j."""
        if i == j:
            raise InputError("qtilde requires i != j")
        return self.entry(i, j) * self.entry(j, i)


def chi_eval(braiding, alpha, beta):
    return braiding.chi(tuple(alpha), tuple(beta))


def qtilde(braiding, i, j):
    return braiding.qtilde(i, j)


def pullback(braiding, w, alpha, beta):
    """(w* chi)(alpha, beta) = chi(w^-1 alpha, w^-1 beta) for unimodular w."""
    w_inv = mat_inverse_unimodular(w)
    return braiding.chi(mat_vec(w_inv, tuple(alpha)), mat_vec(w_inv, tuple(beta)))


def lambda_scalar(braiding, i, j, c_ij):
    """The scalar (-c_ij)_{q_ii} * prod_{s=0}^{-c_ij-1} (q_ii^s q~_ij - 1).

    Degenerate at c_ij = 0, where the q-number factor makes it vanish; a
    warning is emitted because the value is then not invertible.
    """
    if i == j:
        raise InputError("lambda_scalar requires i != j")
    if c_ij > 0:
        raise InputError("lambda_scalar requires c_ij <= 0")
    qii = braiding.entry(i, i)
    qt = braiding.qtilde(i, j)
    one = braiding.ctx.one()
    acc = q_number(-c_ij, qii)
    power = one
    for _ in range(-c_ij):
        acc = acc * (power * qt - one)
        power = power * qii
    if c_ij == 0:
        import warnings

        warnings.warn("lambda_scalar is degenerate (zero) at c_ij = 0", stacklevel=2)
    return acc
