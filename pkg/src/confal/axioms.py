"""Law checkers shared by the differential and presented models.

Every function here sees an algebra through a small duck-typed surface:
named generators, the n-th products, the d action, linear arithmetic,
locality degrees, and (for the coefficient-level checks) a coefficient model
with its own multiplication.  Checks return report objects and never raise on
a failed law; the reports carry the first witnesses found.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact_arith import gen_binom
from .diff_conformal import ALL_ZERO


@dataclass
class CheckReport:
    name: str
    ok: bool = True
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def fail(self, witness: str):
        self.ok = False
        self.failures.append(witness)

    def to_json_dict(self):
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "failures": list(self.failures),
            "details": {k: self.details[k] for k in sorted(self.details)},
        }


def conformal_axioms_report(alg, pairs) -> CheckReport:
    """The two d-compatibility laws on the given element pairs.

    (d u)(n) v = -n * u(n-1) v with (d u)(0) v = 0, and the Leibniz law
    d(u (n) v) = (d u)(n) v + u (n) (d v), both checked exactly as elements
    for n up to the pair's scan bound.
    """
    rep = CheckReport("conformal-axioms")
    for label, (u, v) in pairs:
        top = alg.locality_scan_bound(u, v) + 1
        for n in range(top + 1):
            du = alg.derive_elem(u)
            lhs = alg.nth(du, v, n)
            rhs = alg.scale(alg.nth(u, v, n - 1), -n) if n > 0 else alg.scale(u, 0)
            rep.checked += 1
            if not alg.eq(lhs, rhs):
                rep.fail(f"(d u)({n}) v != -n u({n - 1}) v at pair {label}")
                return rep
            left = alg.derive_elem(alg.nth(u, v, n))
            right = alg.add(alg.nth(du, v, n), alg.nth(u, alg.derive_elem(v), n))
            rep.checked += 1
            if not alg.eq(left, right):
                rep.fail(f"d(u ({n}) v) != (d u)({n}) v + u ({n}) (d v) at pair {label}")
                return rep
    return rep


def associativity_report(alg, max_m: int, max_n: int, triples=None) -> CheckReport:
    """Both associativity expansions on generator triples for m <= max_m, n <= max_n.

    Left form:  u (m) (v (n) w)  =  sum_j C(m, j) (u (j) v) (m+n-j) w
    Right form: (u (m) v) (n) w  =  sum_j (-1)^j C(m, j) u (m-j) (v (n+j) w)

    Both sums run over 0 <= j <= m.  The report verifies each form and that
    the two computed values of the full product agree.
    """
    rep = CheckReport("associativity")
    if triples is None:
        gens = alg.generator_items()
        triples = [
            (f"({a},{b},{c})", (ua, ub, uc))
            for a, ua in gens
            for b, ub in gens
            for c, uc in gens
        ]
    for label, (u, v, w) in triples:
        for m in range(max_m + 1):
            for n in range(max_n + 1):
                left_lhs = alg.nth(u, alg.nth(v, w, n), m)
                left_rhs = alg.scale(u, 0)
                for j in range(m + 1):
                    c = gen_binom(m, j)
                    if c == 0:
                        continue
                    left_rhs = alg.add(
                        left_rhs, alg.scale(alg.nth(alg.nth(u, v, j), w, m + n - j), c)
                    )
                rep.checked += 1
                if not alg.eq(left_lhs, left_rhs):
                    rep.fail(f"left-expansion failure at {label}, m={m}, n={n}")
                    return rep
                right_lhs = alg.nth(alg.nth(u, v, m), w, n)
                right_rhs = alg.scale(u, 0)
                for j in range(m + 1):
                    c = gen_binom(m, j)
                    if j % 2:
                        c = -c
                    if c == 0:
                        continue
                    right_rhs = alg.add(
                        right_rhs, alg.scale(alg.nth(u, alg.nth(v, w, n + j), m - j), c)
                    )
                rep.checked += 1
                if not alg.eq(right_lhs, right_rhs):
                    rep.fail(f"right-expansion failure at {label}, m={m}, n={n}")
                    return rep
    return rep


def coefficient_locality_report(alg, window: int, extra_orders: int = 3) -> CheckReport:
    """Coefficient-level locality on generator pairs.

    For each generator pair with locality degree N, the combination
    sum_j (-1)^j C(n, j) u(l-j) v(m+j) must vanish in the coefficient model
    for every n with N < n <= N + extra_orders and all l, m in [-window,
    window].
    """
    rep = CheckReport("coefficient-locality")
    gens = alg.generator_items()
    for aname, u in gens:
        for bname, v in gens:
            deg = alg.locality(u, v)
            start = 0 if deg is ALL_ZERO else deg + 1
            rep.details[f"N({aname},{bname})"] = repr(deg)
            for n in range(start, start + extra_orders):
                for l in range(-window, window + 1):
                    for m in range(-window, window + 1):
                        val = alg.locality_coeff_sum(u, v, n, l, m)
                        rep.checked += 1
                        if not alg.model_is_zero(val):
                            rep.fail(
                                f"coefficient combination nonzero at ({aname},{bname}), "
                                f"n={n}, l={l}, m={m}"
                            )
                            return rep
    return rep


@dataclass
class IdentityReport:
    ok: bool
    self_locality: object
    exactly_one: bool
    failures: list = field(default_factory=list)

    def to_json_dict(self):
        return {
            "ok": self.ok,
            "self_locality": repr(self.self_locality),
            "exactly_one": self.exactly_one,
            "failures": list(self.failures),
        }


def identity_report(alg, e) -> IdentityReport:
    """Is e a conformal identity: e (0) f = f for all f, with N(e, e) <= 1?

    Checking the unit law on generators only is enough: the order-0
    associativity expansion gives e (0) (u (n) v) = (e (0) u) (n) v, so the
    law propagates through products, and (d a)(0) b = 0 makes the fixed set
    stable under d and Q-linear combinations.
    """
    failures = []
    for name, g in alg.generator_items():
        if not alg.eq(alg.nth(e, g, 0), g):
            failures.append(f"e (0) {name} != {name}")
    self_loc = alg.locality(e, e)
    if self_loc is not ALL_ZERO and self_loc > 1:
        failures.append(f"self-locality degree {self_loc} exceeds 1")
    if alg.is_zero(e):
        failures.append("the zero element is not an identity")
    return IdentityReport(
        ok=not failures,
        self_locality=self_loc,
        exactly_one=(self_loc == 1),
        failures=failures,
    )


def left_annihilator_probe(alg, dop_degree_bound: int = 3):
    """Elements killed by every left product against the generators.

    Candidate space: d^p g over the declared generators, p <= the degree
    bound; conditions: candidate (n) g = 0 for every generator g and every n
    up to the pair's scan bound.  Returns a list of independent annihilating
    elements (empty when the probe finds none).  A probe, not a decision
    procedure: it sees only the candidate space up to the bound.
    """
    gens = alg.generator_items()
    cands = []
    for name, g in gens:
        for p in range(dop_degree_bound + 1):
            cands.append((f"d^{p} {name}", alg.apply_dop_power(g, p)))
    rows = []
    row_index: dict = {}

    def row_for(eqkey):
        r = row_index.get(eqkey)
        if r is None:
            r = [0] * len(cands)
            row_index[eqkey] = r
            rows.append(r)
        return r

    for col, (_, cand) in enumerate(cands):
        for gname, g in gens:
            bound = alg.locality_scan_bound(cand, g)
            for n in range(bound + 1):
                prod = alg.nth(cand, g, n)
                for coord, c in alg.coordinates(prod).items():
                    row_for((gname, n, coord))[col] += c

    from .linalg import dense_nullspace

    out = []
    for combo in dense_nullspace(rows, len(cands)):
        elem = alg.scale(cands[0][1], 0)
        for c, (_, cand) in zip(combo, cands):
            if c != 0:
                elem = alg.add(elem, alg.scale(cand, c))
        if not alg.is_zero(elem):
            out.append(elem)
    return out
