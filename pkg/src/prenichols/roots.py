"""Weyl-groupoid data: Cartan matrices, reflections, positive roots,
Cartan roots, heights, GK dimensions, and the power-root lattice.

Objects of the groupoid are braiding matrices compared entrywise; arrows
are the reflections rho_i, morphisms accumulate the integer reflection
matrices s_i.  The longest word is built greedily and enumerates the
positive roots.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .bichar import (
    BraidingMatrix,
    hermite_normal_form,
    identity_matrix,
    mat_det,
    mat_mul,
    mat_vec,
    unit_vector,
)
from .cyclo import q_number
from .errors import InfiniteTypeError, InputError

DEFAULT_CARTAN_CAP = 1000
DEFAULT_LENGTH_CAP = 10_000
DEFAULT_OBJECT_CAP = 1000
DEFAULT_MORPHISM_CAP = 1_000_000


def cartan_entry(braiding, i, j, cap=DEFAULT_CARTAN_CAP):
    """c_ij of the braiding: 2 on the diagonal, else the negated least n
    with (n+1)_{q_ii} (1 - q_ii^n q_ij q_ji) = 0."""
    if i == j:
        return 2
    qii = braiding.entry(i, i)
    qt = braiding.qtilde(i, j)
    one = braiding.ctx.one()
    bound = cap
    order = qii.mul_order()
    if order is not None:
        bound = min(bound, order - 1)
    qn = one  # (n+1)_{q_ii} accumulated incrementally
    power = one  # q_ii^n
    for n in range(bound + 1):
        if qn.is_zero() or (one - power * qt).is_zero():
            return -n
        qn = qn + power * qii
        power = power * qii
    raise InfiniteTypeError(
        f"no Cartan entry c_{i}{j} within cap {cap}: braiding not of finite type"
    )


def cartan_matrix(braiding, cap=DEFAULT_CARTAN_CAP):
    t = braiding.theta
    return tuple(
        tuple(cartan_entry(braiding, i, j, cap) for j in range(1, t + 1))
        for i in range(1, t + 1)
    )


def reflection_matrix(braiding, i, cap=DEFAULT_CARTAN_CAP):
    """The integer matrix of s_i: alpha_j -> alpha_j - c_ij alpha_i."""
    t = braiding.theta
    rows = [[1 if a == b else 0 for b in range(t)] for a in range(t)]
    for j in range(1, t + 1):
        rows[i - 1][j - 1] -= cartan_entry(braiding, i, j, cap)
    return tuple(tuple(r) for r in rows)


def reflect_object(braiding, i, cap=DEFAULT_CARTAN_CAP):
    """rho_i of the braiding: entry (j,k) becomes chi(s_i alpha_j, s_i alpha_k)."""
    s = reflection_matrix(braiding, i, cap)
    t = braiding.theta
    cols = [mat_vec(s, unit_vector(j, t)) for j in range(1, t + 1)]
    entries = [[braiding.chi(cols[a], cols[b]) for b in range(t)] for a in range(t)]
    return BraidingMatrix(braiding.ctx, entries)


def is_cartan_vertex(braiding, i, cap=DEFAULT_CARTAN_CAP):
    """Vertex i is Cartan when q~_ij = q_ii^{c_ij} for every j != i."""
    qii = braiding.entry(i, i)
    for j in range(1, braiding.theta + 1):
        if j == i:
            continue
        c = cartan_entry(braiding, i, j, cap)
        if braiding.qtilde(i, j) != qii**c:
            return False
    return True


@dataclass
class GroupoidAtlas:
    """BFS closure of the Weyl groupoid seen from one object.

    morphisms holds pairs (w, y): w = s_{i_1}^V ... s_{i_m} as an integer
    matrix, y the object with w(Delta^y) = Delta^V.
    """

    root: BraidingMatrix
    objects: list
    arrows: dict  # (object, i) -> object
    morphisms: set  # of (matrix, object)
    complete: bool

    @property
    def object_count(self):
        return len(self.objects)


def explore_groupoid(
    braiding,
    max_objects=DEFAULT_OBJECT_CAP,
    max_morphisms=DEFAULT_MORPHISM_CAP,
    cap=DEFAULT_CARTAN_CAP,
):
    """Close the object set under all rho_i and enumerate morphisms into
    the root object.  complete is False when either cap is hit."""
    theta = braiding.theta
    objects = [braiding]
    seen = {braiding: braiding}
    arrows = {}
    complete = True
    queue = deque([braiding])
    while queue:
        x = queue.popleft()
        for i in range(1, theta + 1):
            y = reflect_object(x, i, cap)
            y = seen.get(y, y)
            arrows[(x, i)] = y
            if y not in seen:
                if len(objects) >= max_objects:
                    complete = False
                    continue
                seen[y] = y
                objects.append(y)
                queue.append(y)

    morphisms = set()
    if complete:
        ident = identity_matrix(theta)
        start = (ident, braiding)
        morphisms.add(start)
        queue = deque([start])
        refl = {x: [reflection_matrix(x, i, cap) for i in range(1, theta + 1)] for x in objects}
        while queue:
            w, y = queue.popleft()
            for i in range(1, theta + 1):
                # extend the word on the right: w' = w . s_i^y, target rho_i(y)
                w2 = mat_mul(w, refl[y][i - 1])
                y2 = arrows[(y, i)]
                m = (w2, y2)
                if m not in morphisms:
                    if len(morphisms) >= max_morphisms:
                        complete = False
                        queue.clear()
                        break
                    morphisms.add(m)
                    queue.append(m)
    return GroupoidAtlas(braiding, objects, arrows, morphisms, complete)


def cartan_roots(braiding, atlas, cap=DEFAULT_CARTAN_CAP):
    """All w(alpha_i) for morphisms w: y -> root and Cartan vertices i of y,
    as positive representatives."""
    if not atlas.complete:
        raise InputError("cartan_roots needs a complete atlas")
    theta = braiding.theta
    flags = {}
    out = set()
    for w, y in atlas.morphisms:
        if y not in flags:
            flags[y] = [is_cartan_vertex(y, i, cap) for i in range(1, theta + 1)]
        for i in range(1, theta + 1):
            if flags[y][i - 1]:
                beta = mat_vec(w, unit_vector(i, theta))
                if all(x <= 0 for x in beta):
                    beta = tuple(-x for x in beta)
                out.add(beta)
    return out


@dataclass(frozen=True)
class RootDatum:
    beta: tuple
    height: Optional[int]  # None marks infinite order
    cartan: bool
    self_braiding: object  # CycNum

    def to_json(self):
        return {
            "beta": list(self.beta),
            "height": self.height if self.height is not None else "infinite",
            "cartan": self.cartan,
            "self_braiding": str(self.self_braiding),
        }


@dataclass
class RootSystemReport:
    braiding: BraidingMatrix
    cartan_matrix: tuple
    roots: tuple  # of RootDatum, in longest-word order
    longest_word: tuple
    coxeter_m: tuple
    gk_dims: tuple
    z_lattice_basis: tuple
    z_lattice_index: Optional[int]
    groupoid_object_count: Optional[int] = None

    @property
    def theta(self):
        return self.braiding.theta

    @property
    def cartan_root_set(self):
        return {r.beta for r in self.roots if r.cartan}

    def root_datum(self, beta):
        beta = tuple(beta)
        for r in self.roots:
            if r.beta == beta:
                return r
        raise KeyError(f"{beta} is not a positive root")

    def to_json(self):
        return {
            "theta": self.theta,
            "zeta_order": self.braiding.ctx.order,
            "cartan_matrix": [list(r) for r in self.cartan_matrix],
            "longest_word": list(self.longest_word),
            "roots": [r.to_json() for r in self.roots],
            "coxeter_m": [list(r) for r in self.coxeter_m],
            "gk_dims": list(self.gk_dims),
            "z_lattice_basis": [list(r) for r in self.z_lattice_basis],
            "z_lattice_index": self.z_lattice_index,
            "groupoid_object_count": self.groupoid_object_count,
        }


def positive_roots(braiding, length_cap=DEFAULT_LENGTH_CAP, cap=DEFAULT_CARTAN_CAP):
    """Greedy longest word and the full root-system report.

    At step k the smallest i with s_{i_1}...s_{i_{k-1}}(alpha_i) positive
    and new is chosen; the partial products enumerate Delta_+ exactly once.
    """
    theta = braiding.theta
    word = []
    roots = []
    cartan_flags = []
    w = identity_matrix(theta)
    x = braiding
    produced = set()
    while True:
        pick = None
        for i in range(1, theta + 1):
            beta = mat_vec(w, unit_vector(i, theta))
            if all(c >= 0 for c in beta) and beta not in produced:
                pick = (i, beta)
                break
        if pick is None:
            break
        if len(word) >= length_cap:
            raise InfiniteTypeError(
                f"longest-word length exceeded {length_cap}: root system appears infinite"
            )
        i, beta = pick
        word.append(i)
        produced.add(beta)
        roots.append(beta)
        cartan_flags.append(is_cartan_vertex(x, i, cap))
        w = mat_mul(w, reflection_matrix(x, i, cap))
        x = reflect_object(x, i, cap)

    data = []
    for beta, flag in zip(roots, cartan_flags):
        qb = braiding.chi(beta, beta)
        data.append(RootDatum(beta, qb.mul_order(), flag, qb))

    cmat = cartan_matrix(braiding, cap)
    coxeter = tuple(
        tuple(
            1
            if i == j
            else sum(
                1
                for beta in roots
                if all(beta[a] == 0 or a in (i, j) for a in range(theta))
            )
            for j in range(theta)
        )
        for i in range(theta)
    )
    report = RootSystemReport(
        braiding=braiding,
        cartan_matrix=cmat,
        roots=tuple(data),
        longest_word=tuple(word),
        coxeter_m=coxeter,
        gk_dims=(0, 0, 0),
        z_lattice_basis=(),
        z_lattice_index=None,
    )
    report.gk_dims = gk_dimensions(report)
    report.z_lattice_basis = z_lattice(report)
    full = len(report.z_lattice_basis) == theta
    if full:
        det = abs(mat_det(report.z_lattice_basis))
        report.z_lattice_index = det
    return report


def gk_dimensions(report):
    """(|O|, |O| + theta, 2|O| + 2 theta) from the Cartan-root count."""
    n_cartan = sum(1 for r in report.roots if r.cartan)
    theta = report.theta
    return (n_cartan, n_cartan + theta, 2 * n_cartan + 2 * theta)


def z_lattice(report):
    """HNF basis of the lattice spanned by N_beta * beta over Cartan roots."""
    rows = []
    for r in report.roots:
        if r.cartan:
            assert r.height is not None, "Cartan root with infinite height"
            rows.append(tuple(r.height * x for x in r.beta))
    return hermite_normal_form(rows)
