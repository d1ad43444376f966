"""Executable checks of the named identities, each returning a structured
pass/fail report with a witness on failure.

All checks are deterministic and side-effect free.  The adjoint-coproduct
closed forms used as expected values are the q-binomial corrections of the
printed ones; see the tests for the N = 1 cross-check against the super
type A coproduct lemma, which pins the convention.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .cyclo import q_binomial
from .errors import InputError
from .freealg import (
    FreeElem,
    TensorElem,
    ad_minus,
    ad_plus,
    commutator_c,
    coproduct,
    dual_action_right,
    frak_r,
    partial_k,
    partial_l,
)
from .quotient import QuotientView


@dataclass
class CheckReport:
    check: str
    label: str
    params: dict
    passed: bool
    witness: str | None = None
    data: dict = field(default_factory=dict)
    runtime_ms: float = 0.0

    def to_json(self):
        out = {
            "check": self.check,
            "label": self.label,
            "params": self.params,
            "passed": self.passed,
            "data": self.data,
            "runtime_ms": round(self.runtime_ms, 3),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _report(check, label, params, passed, witness=None, data=None, started=None):
    ms = (time.perf_counter() - started) * 1000 if started is not None else 0.0
    return CheckReport(
        check=check,
        label=label,
        params=params,
        passed=passed,
        witness=None if passed else witness,
        data=data or {},
        runtime_ms=ms,
    )


def _tensor_witness(diff):
    parts = []
    for (w1, w2), c in sorted(diff.terms.items())[:6]:
        parts.append(f"({c}) {''.join(map(str, w1)) or 'e'}(x){''.join(map(str, w2)) or 'e'}")
    more = "" if len(diff.terms) <= 6 else f" ... ({len(diff.terms)} terms)"
    return " + ".join(parts) + more


# -- coproduct identities -------------------------------------------------------


def power_coproduct_expected(braiding, i, n):
    """sum_s binom(n,s)_{q_ii} E_i^s (x) E_i^{n-s}."""
    qii = braiding.entry(i, i)
    out = TensorElem.zero(braiding)
    for s in range(n + 1):
        c = q_binomial(n, s, qii)
        if not c.is_zero():
            out.terms[((i,) * s, (i,) * (n - s))] = c
    return out


def check_power_coproduct(braiding, i, n, label=None):
    started = time.perf_counter()
    actual = coproduct(FreeElem.generator(braiding, i) ** n)
    expected = power_coproduct_expected(braiding, i, n)
    diff = actual - expected
    return _report(
        "power-coproduct",
        label or braiding.label or "input",
        {"i": i, "N": n},
        diff.is_zero(),
        witness=_tensor_witness(diff),
        started=started,
    )


def adjoint_plus_coproduct_expected(braiding, i, j, n):
    """E+_{j,n} (x) 1 + sum_{s=0}^{n} binom(n,s)_{q_ii}
    prod_{r=n-s}^{n-1} (1 - q_ii^r q~_ij) E_i^s (x) E+_{j,n-s}."""
    qii = braiding.entry(i, i)
    qt = braiding.qtilde(i, j)
    one = braiding.ctx.one()
    ei = FreeElem.generator(braiding, i)
    out = TensorElem.from_pair(ad_plus(braiding, i, j, n), FreeElem.one(braiding))
    for s in range(n + 1):
        c = q_binomial(n, s, qii)
        for r in range(n - s, n):
            c = c * (one - qii**r * qt)
        if c.is_zero():
            continue
        out = out + TensorElem.from_pair(ei**s, ad_plus(braiding, i, j, n - s)).scale(c)
    return out


def adjoint_minus_coproduct_expected(braiding, i, j, n):
    """1 (x) E-_{j,n} + sum_{s=0}^{n} binom(n,s)_{q_ii} q_ij^s
    prod_{r=n-s}^{n-1} (1 - q_ii^-r q~_ij^-1) E-_{j,n-s} (x) E_i^s."""
    qii = braiding.entry(i, i)
    qij = braiding.entry(i, j)
    qt_inv = braiding.qtilde(i, j).inv()
    qii_inv = qii.inv()
    one = braiding.ctx.one()
    ei = FreeElem.generator(braiding, i)
    out = TensorElem.from_pair(FreeElem.one(braiding), ad_minus(braiding, i, j, n))
    for s in range(n + 1):
        c = q_binomial(n, s, qii) * qij**s
        for r in range(n - s, n):
            c = c * (one - qii_inv**r * qt_inv)
        if c.is_zero():
            continue
        out = out + TensorElem.from_pair(ad_minus(braiding, i, j, n - s), ei**s).scale(c)
    return out


def check_adjoint_coproducts(braiding, i, j, n, label=None):
    started = time.perf_counter()
    diff_plus = coproduct(ad_plus(braiding, i, j, n)) - adjoint_plus_coproduct_expected(
        braiding, i, j, n
    )
    diff_minus = coproduct(ad_minus(braiding, i, j, n)) - adjoint_minus_coproduct_expected(
        braiding, i, j, n
    )
    passed = diff_plus.is_zero() and diff_minus.is_zero()
    witness = None
    if not passed:
        bad = diff_plus if not diff_plus.is_zero() else diff_minus
        side = "+" if not diff_plus.is_zero() else "-"
        witness = f"E{side}: " + _tensor_witness(bad)
    return _report(
        "adjoint-coproducts",
        label or braiding.label or "input",
        {"i": i, "j": j, "N": n},
        passed,
        witness=witness,
        started=started,
    )


# -- power-root behaviour ----------------------------------------------------------


def check_qcommute_powers(quotient, root_vector, n_beta, probe, label=None):
    """normal_form(E_beta^N x - chi(N beta, |x|) x E_beta^N) = 0."""
    started = time.perf_counter()
    braiding = quotient.braiding
    beta = root_vector.degree()
    gamma = probe.degree()
    n_beta_beta = tuple(n_beta * b for b in beta)
    power = root_vector**n_beta
    twist = braiding.chi(n_beta_beta, gamma)
    residual = quotient.normal_form(power * probe - (probe * power).scale(twist))
    return _report(
        "qcommute-powers",
        label or braiding.label or "input",
        {"beta": list(beta), "N": n_beta, "probe_degree": list(gamma)},
        residual.is_zero(),
        witness=str(residual),
        started=started,
    )


def check_derivations_vanish(quotient, root_vector, n_beta, label=None):
    """normal_form(partial_j^K/L(E_beta^N)) = 0 for every j."""
    started = time.perf_counter()
    braiding = quotient.braiding
    power = root_vector**n_beta
    witness = None
    passed = True
    for j in range(1, braiding.theta + 1):
        for name, func in (("K", partial_k), ("L", partial_l)):
            residual = quotient.normal_form(func(power, j))
            if not residual.is_zero():
                passed = False
                witness = f"partial_{j}^{name}: {residual}"
                break
        if not passed:
            break
    return _report(
        "derivations-vanish",
        label or braiding.label or "input",
        {"beta": list(root_vector.degree()), "N": n_beta},
        passed,
        witness=witness,
        started=started,
    )


def check_symmetric_character(braiding, report, label=None):
    """chi(N_beta beta, alpha) chi(alpha, N_beta beta) = 1 for every Cartan
    root and every generator degree alpha_j."""
    started = time.perf_counter()
    theta = braiding.theta
    witness = None
    passed = True
    for datum in report.roots:
        if not datum.cartan:
            continue
        nbb = tuple(datum.height * b for b in datum.beta)
        for j in range(theta):
            alpha = tuple(1 if t == j else 0 for t in range(theta))
            value = braiding.chi(nbb, alpha) * braiding.chi(alpha, nbb)
            if not value.is_one():
                passed = False
                witness = f"beta={datum.beta} j={j + 1}: {value}"
                break
        if not passed:
            break
    return _report(
        "symmetric-character",
        label or braiding.label or "input",
        {},
        passed,
        witness=witness,
        started=started,
    )


def check_left_coproduct_structure(spec, k, label=None):
    """Every left tensor factor of Delta(E_{beta_k}^{N_k}) minus its trivial
    part is supported on monomials prod_{j<k} E_{beta_j}^{n_j N_j}."""
    started = time.perf_counter()
    braiding = spec.braiding
    quotient = spec.quotient
    beta = spec.roots[k - 1]
    n_beta = spec.heights[k - 1]
    if not spec.cartan[k - 1]:
        raise InputError(f"root {beta} is not a Cartan root")
    x = spec.root_power(beta, n_beta)
    one = FreeElem.one(braiding)
    diff = coproduct(x) - TensorElem.from_pair(x, one) - TensorElem.from_pair(one, x)
    reduced = quotient.reduce_tensor(diff)
    passed = True
    witness = None
    from .linalg import solve_in_span

    for (d1, d2), comp in sorted(reduced.bidegree_components().items()):
        allowed = _power_products(spec, k - 1, d1)
        vectors = [quotient.normal_form(v).terms for v in allowed]
        by_right = {}
        for (w1, w2), c in comp.terms.items():
            by_right.setdefault(w2, {})[w1] = c
        for w2, left in by_right.items():
            sol = solve_in_span(vectors, left, braiding.ctx.one())
            if sol is None:
                passed = False
                witness = (
                    f"left leg at bidegree ({d1},{d2}) not spanned by lower "
                    f"power-root monomials"
                )
                break
        if not passed:
            break
    return _report(
        "left-coproduct",
        label or braiding.label or "input",
        {"k": k, "beta": list(beta), "N": n_beta},
        passed,
        witness=witness,
        started=started,
    )


def _power_products(spec, upto, degree):
    """All products E_{beta_{upto}}^{n N} ... E_{beta_1}^{n_1 N_1} (descending
    factors, exponents multiples of the heights) of the given multidegree."""
    out = []

    def rec(idx, remaining, acc):
        if not any(remaining):
            out.append(acc)
            return
        if idx < 0:
            return
        beta = spec.roots[idx]
        step = spec.heights[idx]
        n = 0
        while True:
            rem = tuple(r - n * step * b for r, b in zip(remaining, beta))
            if any(r < 0 for r in rem):
                break
            elem = acc if n == 0 else acc * spec.root_power(beta, n * step)
            rec(idx - 1, rem, elem)
            n += 1

    rec(upto - 1, degree, FreeElem.one(spec.braiding))
    return out


# -- frak_R ---------------------------------------------------------------------------


def check_frakr_generator_identity(braiding, i, j, m, label=None):
    """Delta(E+_{j,m}) = frak_R_i(E+_{j,m} (x) 1 + 1 (x) E+_{j,m}), exact in T(V)."""
    started = time.perf_counter()
    x = ad_plus(braiding, i, j, m)
    one = FreeElem.one(braiding)
    argument = TensorElem.from_pair(x, one) + TensorElem.from_pair(one, x)
    diff = coproduct(x) - frak_r(braiding, i, argument)
    return _report(
        "frakR-generators",
        label or braiding.label or "input",
        {"i": i, "j": j, "m": m},
        diff.is_zero(),
        witness=_tensor_witness(diff),
        started=started,
    )


# -- super type A ------------------------------------------------------------------------


def super_a_chain(braiding, j, k):
    """E_{j,k} = (ad_c E_j) ... (ad_c E_{k-1}) E_k."""
    elem = FreeElem.generator(braiding, k)
    for a in range(k - 1, j - 1, -1):
        elem = commutator_c(FreeElem.generator(braiding, a), elem)
    return elem


# -- Hilbert and PBW cross-validation -----------------------------------------------


def check_hilbert(report, view, algebra, total_degree, label=None):
    """Quotient dimensions against the product-formula coefficients, at
    every multidegree of the given total degree or less."""
    from .pbw import series_coefficients

    started = time.perf_counter()
    oracle = series_coefficients(report, algebra, total_degree)
    passed = True
    witness = None
    checked = 0
    for delta in _multidegrees(report.theta, total_degree):
        expected = oracle.get(delta, 0)
        got = view.dim(delta)
        checked += 1
        if got != expected:
            passed = False
            witness = f"dim at {delta}: quotient {got} != series {expected}"
            break
    return _report(
        "hilbert",
        label or view.braiding.label or "input",
        {"algebra": algebra, "total_degree": total_degree},
        passed,
        witness=witness,
        data={"multidegrees_checked": checked},
        started=started,
    )


def check_pbw_count(spec, total_degree, label=None):
    """Restricted-monomial count against the pre-Nichols quotient dimension."""
    started = time.perf_counter()
    passed = True
    witness = None
    checked = 0
    for delta in _multidegrees(spec.braiding.theta, total_degree):
        count = spec.restricted_count(delta)
        dim = spec.quotient.dim(delta)
        checked += 1
        if count != dim:
            passed = False
            witness = f"at {delta}: {count} restricted monomials, quotient dim {dim}"
            break
    return _report(
        "pbw-count",
        label or spec.braiding.label or "input",
        {"total_degree": total_degree},
        passed,
        witness=witness,
        data={"multidegrees_checked": checked},
        started=started,
    )


def check_pbw_expansion_rank(spec, total_degree, label=None):
    """Expanded restricted monomials span the quotient with independent
    normal forms at every multidegree in range."""
    from .linalg import ReducedEchelon

    started = time.perf_counter()
    passed = True
    witness = None
    for delta in _multidegrees(spec.braiding.theta, total_degree):
        monomials = spec.enumerate_restricted(delta)
        dim = spec.quotient.dim(delta)
        ech = ReducedEchelon()
        for m in monomials:
            ech.insert(spec.quotient.normal_form(spec.monomial_element(m)).terms)
        if ech.rank != len(monomials) or ech.rank != dim:
            passed = False
            witness = (
                f"at {delta}: rank {ech.rank} of {len(monomials)} monomials, dim {dim}"
            )
            break
    return _report(
        "pbw-rank",
        label or spec.braiding.label or "input",
        {"total_degree": total_degree},
        passed,
        witness=witness,
        started=started,
    )


def check_straightening(spec, k, l, label=None):
    started = time.perf_counter()
    result = spec.straightening(k, l)
    return _report(
        "straightening",
        label or spec.braiding.label or "input",
        {"k": k, "l": l},
        result.solvable,
        witness=None if result.solvable else f"unsolvable: NF = {result.normal_form}",
        data=result.to_json(),
        started=started,
    )


def _multidegrees(theta, total_degree):
    out = []

    def rec(prefix, remaining):
        if len(prefix) == theta - 1:
            for last in range(remaining + 1):
                out.append(tuple(prefix) + (last,))
            return
        for a in range(remaining + 1):
            rec(prefix + [a], remaining - a)

    rec([], total_degree)
    return sorted(out, key=lambda d: (sum(d), d))


# -- br(2;5) ------------------------------------------------------------------------


def check_br25(variant, level="basic"):
    """The full data block of the rank-2 example family: root data,
    presentation membership in the Nichols ideal, the derivation scalars
    from the root-vector computations, and primitivity of the power roots.

    The extended level verifies the printed degree-(15,5) power coproduct
    for W; it is resource-gated and excluded from the basic run.
    """
    from . import catalog
    from .roots import explore_groupoid, reflect_object

    started = time.perf_counter()
    entry = catalog.get_entry(f"br25-{variant}")
    other = catalog.get_entry("br25-W" if variant == "V" else "br25-V")
    braiding = entry.braiding
    report = entry.report()
    expected = entry.expected
    failures = []

    def expect(cond, what):
        if not cond:
            failures.append(what)

    expect(report.cartan_matrix == expected["cartan_matrix"], "cartan matrix")
    expect(
        tuple(r.beta for r in report.roots) == expected["positive_roots"],
        "positive-root list",
    )
    expect(report.cartan_root_set == expected["cartan_roots"], "Cartan-root set")
    expect(
        {r.beta: r.height for r in report.roots} == expected["heights"], "heights"
    )
    expect(report.gk_dims == expected["gk_dims"], "GK dimensions")

    # reflections: rho_1 fixes the object, rho_2 swaps V and W
    expect(reflect_object(braiding, 1) == braiding, "rho_1 fixes the object")
    expect(reflect_object(braiding, 2) == other.braiding, "rho_2 image")
    atlas = explore_groupoid(braiding)
    expect(atlas.complete and atlas.object_count == 2, "two-object groupoid")

    nichols = entry.nichols()
    for idx, rel in enumerate(entry.relations.generators):
        expect(nichols.is_in_ideal(rel), f"relation {idx + 1} in the Nichols ideal")

    ctx = braiding.ctx
    z = ctx.zeta()
    one = ctx.one()
    if variant == "V":
        e1 = FreeElem.generator(braiding, 1)
        e2 = FreeElem.generator(braiding, 2)
        e12 = commutator_c(e1, e2)
        e112 = commutator_c(e1, e12)
        e1112 = commutator_c(e1, e112)
        expect(
            partial_l(e112, 1) == e12.scale((one + z) * (one - z**3)),
            "partial_1^L(E_112) scalar",
        )
        expect(
            partial_l(e1112, 1) == e112.scale(-(z.inv()) * (one - z**3)),
            "partial_1^L(E_1112) scalar",
        )
        # the bracket identity lives in the quotient: E_2^2 = 0 matters at (2,2)
        bracket_diff = partial_l(commutator_c(e112, e12), 1) - (e12 * e12).scale(
            -(z**3) * (one - z**3) * (one + z) ** 2
        )
        expect(
            entry.quotient().normal_form(bracket_diff).is_zero(),
            "partial_1^L([E_112,E_12]) scalar mod ideal",
        )
        power = FreeElem.generator(braiding, 1) ** 5
        prim = coproduct(power) - TensorElem.from_pair(power, FreeElem.one(braiding)) - TensorElem.from_pair(FreeElem.one(braiding), power)
        expect(prim.is_zero(), "E_1^5 primitive in T(V)")
    else:
        spec = entry.pbw_spec()
        power = spec.root_power((1, 1), 5)
        expect(entry.quotient().is_primitive(power), "E_{a1+a2}^5 primitive mod ideal")

    if level == "extended":
        if variant != "W":
            raise InputError("the extended check is stated for the W variant")
        spec = entry.pbw_spec()
        quotient = entry.quotient()
        root = spec.root_vector((3, 1))
        reduced = quotient.reduce_tensor(coproduct(root))
        power5 = reduced
        for _ in range(4):
            power5 = quotient.reduce_tensor(power5 * reduced)
        x5 = quotient.normal_form(spec.root_power((3, 1), 5))
        one_elem = FreeElem.one(braiding)
        r21 = braiding.entry(2, 1)
        coeff = (
            r21**35
            * z**2
            * ((one - z**3) ** 40 * (one + z) ** 5).inv()
        )
        e1_10 = quotient.normal_form(FreeElem.generator(braiding, 1) ** 10)
        e11_5 = quotient.normal_form(spec.root_power((1, 1), 5))
        expected_tensor = (
            TensorElem.from_pair(x5, one_elem)
            + TensorElem.from_pair(one_elem, x5)
            + TensorElem.from_pair(e1_10, e11_5).scale(coeff)
        )
        diff = power5 - quotient.reduce_tensor(expected_tensor)
        expect(diff.is_zero(), "extended (15,5) power coproduct")

    passed = not failures
    return _report(
        f"br25-{level}",
        entry.name,
        {"variant": variant, "level": level},
        passed,
        witness="; ".join(failures),
        started=started,
    )


def check_super_a_coproduct(entry, j, k, n=None, label=None):
    """The chain coproduct lemma, or its Cartan-power version when n is given,
    modulo the presentation ideal of the entry."""
    started = time.perf_counter()
    braiding = entry.braiding
    quotient = entry.quotient()
    one = FreeElem.one(braiding)
    qt = lambda a: braiding.qtilde(a, a + 1)
    if n is None:
        x = super_a_chain(braiding, j, k)
        expected = TensorElem.from_pair(x, one) + TensorElem.from_pair(one, x)
        for ell in range(j, k):
            c = braiding.ctx.one() - qt(ell)
            expected = expected + TensorElem.from_pair(
                super_a_chain(braiding, j, ell), super_a_chain(braiding, ell + 1, k)
            ).scale(c)
        params = {"j": j, "k": k}
    else:
        report = entry.report()
        alpha = tuple(
            1 if j - 1 <= t <= k - 1 else 0 for t in range(braiding.theta)
        )
        datum = report.root_datum(alpha)
        if not datum.cartan:
            raise InputError(f"root {alpha} is not a Cartan root of {entry.name}")
        if datum.height != n:
            raise InputError(f"root {alpha} has height {datum.height}, not {n}")
        cartan_set = report.cartan_root_set
        x = super_a_chain(braiding, j, k) ** n
        expected = TensorElem.from_pair(x, one) + TensorElem.from_pair(one, x)
        for ell in range(j, k):
            left_deg = tuple(1 if j - 1 <= t <= ell - 1 else 0 for t in range(braiding.theta))
            if left_deg not in cartan_set:
                continue
            right_deg = tuple(1 if ell <= t <= k - 1 else 0 for t in range(braiding.theta))
            c = (braiding.ctx.one() - qt(ell)) ** n
            c = c * braiding.chi(left_deg, right_deg) ** (n * (n - 1) // 2)
            expected = expected + TensorElem.from_pair(
                super_a_chain(braiding, j, ell) ** n,
                super_a_chain(braiding, ell + 1, k) ** n,
            ).scale(c)
        params = {"j": j, "k": k, "N": n}
    diff = quotient.reduce_tensor(coproduct(x) - expected)
    return _report(
        "super-a",
        label or entry.name,
        params,
        diff.is_zero(),
        witness=_tensor_witness(diff),
        started=started,
    )
