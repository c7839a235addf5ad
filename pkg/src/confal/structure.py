"""Constructive structure algorithms.

Three families of tools, all exact:

* unital recognition — given an algebra with a conformal identity e (supplied
  or found in the generator span), peel every element into d-layers via
  products against e, rebuild the quotient by the image of d as a concrete
  algebra with basis, product table, and induced derivation
  delta[u] = -[e (1) u], and cross-check the result from several independent
  directions (coefficient polynomial fit, iterated-derivation law,
  Leibniz on the recovered table, and a product round-trip);

* identity transport — for a finite-dimensional unital A and nilpotent r,
  build the differential algebra over (A, ad r) and the transported identity
  e' = sum_k (1/k!) d^k f_{r^k}, verifying the identity laws afterwards;

* delta-stable ideal probing — saturate seed elements of the coefficient
  algebra under the derivation and one-sided multiplications inside a degree
  filtration, detect units, and sweep for proper stable ideals of the
  subalgebra generated by the zeroth coefficients of the declared generators.

Closures are word-length- or degree-bounded; anything dropped at a boundary
is recorded, never silently discarded.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .axioms import IdentityReport, identity_report
from .diff_conformal import ALL_ZERO, DifferentialAlgebra
from .errors import (
    ClosureBoundExceeded,
    ConfalError,
    MismatchWitness,
    NotNilpotent,
    NotUnital,
)
from .exact_arith import DOp
from .linalg import RowSpace, dense_solve
from .ore_skew import FinDim, MatPolyRing, PolyRing, ad_derivation


# -- d-layer decomposition ---------------------------------------------------------


def class_coords(alg, u) -> dict:
    """Coordinates of the class of u modulo the image of d."""
    return {key: c for (key, p), c in alg.coordinates(u).items() if p == 0}


def canonical_rep(alg, u):
    """The canonical representative of [u]: the d-free part of u."""
    terms = {}
    for key, q in u.terms.items():
        c = q.coeffs.get(0)
        if c:
            terms[key] = DOp.const(c)
    return type(u)(alg, terms)


def find_identity(alg):
    """A conformal identity in the Q-span of the declared generators.

    Solves e (0) g_j = g_j for all generators g_j; d-shifted candidates are
    pointless here because (d u) (0) v = 0.  Raises NotUnital when the system
    has no solution.  The caller still owes a full identity_report pass.
    """
    gens = alg.generator_items()
    if not gens:
        raise NotUnital("no generators to search")
    products = [
        [alg.coordinates(alg.nth(gi, gj, 0)) for _, gj in gens] for _, gi in gens
    ]
    targets = [alg.coordinates(g) for _, g in gens]
    keys = sorted(
        {k for row in products for p in row for k in p}
        | {k for t in targets for k in t}
    )
    rows, rhs = [], []
    for j in range(len(gens)):
        for key in keys:
            rows.append([products[i][j].get(key, Fraction(0)) for i in range(len(gens))])
            rhs.append(targets[j].get(key, Fraction(0)))
    sol = dense_solve(rows, rhs)
    if sol is None:
        raise NotUnital("no conformal identity exists in the span of the generators")
    e = alg.zero_elem()
    for c, (_, g) in zip(sol, gens):
        if c != 0:
            e = alg.add(e, alg.scale(g, c))
    return e


def peel_components(alg, f, e):
    """The d-layers of f against the identity e.

    Returns [(n, c_n), ...] with n strictly decreasing and
    f = sum_n (-1)^n d^n c_n, where c_n = (1/n!) (f (n) e).  Raises NotUnital
    when peeling gets stuck, which means e is not an identity.
    """
    comps = []
    rest = f
    prev_top = None
    while not alg.is_zero(rest):
        top = alg.locality(rest, e)
        if top is ALL_ZERO or (prev_top is not None and top >= prev_top):
            raise NotUnital(
                "peeling against the identity candidate does not terminate; "
                "it is not a conformal identity"
            )
        comp = alg.scale(alg.nth(rest, e, top), Fraction(1, math.factorial(top)))
        comps.append((top, comp))
        step = alg.apply_dop_power(comp, top)
        if top % 2:
            step = alg.scale(step, -1)
        rest = alg.sub(rest, step)
        prev_top = top
    return comps


def _sequence_degree(vals):
    """Degree of the polynomial interpolating an exact value sequence (-1 if zero)."""
    seq = list(vals)
    depth = -1
    while seq and any(v != 0 for v in seq):
        depth += 1
        seq = [b - a for a, b in zip(seq, seq[1:])]
    return depth


def coefficient_fit_degree(alg, f, samples: int | None = None) -> int:
    """Fitted degree of n -> (n-shifted) coefficients of f.

    The k-th coefficient of a d-layer at depth p contributes a degree-p
    polynomial in k once the t-exponent is renormalized by -k, so the fitted
    degree must equal the top d-degree of f.  An independent probe of the
    coefficient functor: it never looks at the symbolic d-degree.
    """
    n_hi = samples if samples is not None else f.max_dop_degree() + 3
    seqs: dict = {}
    for n in range(n_hi + 1):
        for (key, exp), c in alg.model_coords(alg.phi(f, n)).items():
            seqs.setdefault((key, exp - n), [Fraction(0)] * (n_hi + 1))[n] = c
    best = -1
    for vals in seqs.values():
        best = max(best, _sequence_degree(vals))
    return best


def iterated_derivation_check(alg, e, n_max: int = 3):
    """(-e (1) .)^n == (-1)^n e (n) .  on the declared generators."""
    failures = []
    for name, g in alg.generator_items():
        cur = g
        for n in range(1, n_max + 1):
            cur = alg.scale(alg.nth(e, cur, 1), -1)
            rhs = alg.nth(e, g, n)
            if n % 2:
                rhs = alg.scale(rhs, -1)
            if not alg.eq(cur, rhs):
                failures.append(f"iterated-derivation law fails on {name} at n={n}")
                break
    return failures


# -- table arithmetic over a recovered basis ---------------------------------------


def _vec_clean(v: dict) -> dict:
    return {k: c for k, c in v.items() if c != 0}


def _vec_scale(v: dict, c) -> dict:
    return _vec_clean({k: c * a for k, a in v.items()})


def _vec_mul(product: dict, v: dict, w: dict):
    """Bilinear product of coordinate vectors; None if an entry is unresolved."""
    out: dict = {}
    for i, a in v.items():
        for j, b in w.items():
            entry = product.get((i, j))
            if entry is None:
                return None
            for k, c in entry.items():
                out[k] = out.get(k, Fraction(0)) + a * b * c
    return _vec_clean(out)


def _vec_delta(delta: dict, v: dict) -> dict:
    out: dict = {}
    for i, a in v.items():
        for k, c in delta[i].items():
            out[k] = out.get(k, Fraction(0)) + a * c
    return _vec_clean(out)


# -- unital recognition -------------------------------------------------------------


@dataclass
class RecognitionResult:
    """Recovered differential presentation of a unital algebra.

    basis/representatives index the recovered quotient-by-d algebra; product
    maps basis index pairs to coordinate vectors (None marks a product left
    unresolved at the word bound), delta maps each index to the coordinate
    vector of its induced derivative.  The cross-check flags record the
    independent verifications that ran.
    """

    algebra: str
    ok: bool
    identity: IdentityReport
    identity_elem: object
    labels: list
    representatives: list
    dim: int
    closed: bool
    product: dict
    delta: dict
    delta_is_zero: bool
    unit_coords: dict | None
    generator_classes: dict
    components: dict
    fit_ok: bool
    dtilde_ok: bool
    leibniz_ok: bool
    failures: list = field(default_factory=list)
    log: list = field(default_factory=list)
    space: RowSpace | None = None

    def delta_vector(self, label: str) -> dict:
        """Induced derivative of a basis element, keyed by basis labels."""
        i = self.labels.index(label)
        return {self.labels[k]: c for k, c in self.delta[i].items()}

    def product_vector(self, left: str, right: str):
        i, j = self.labels.index(left), self.labels.index(right)
        entry = self.product[(i, j)]
        if entry is None:
            return None
        return {self.labels[k]: c for k, c in entry.items()}

    def to_findim(self) -> FinDim:
        """The recovered table as a FinDim algebra (requires a closed table)."""
        if not self.closed:
            raise ClosureBoundExceeded(
                "the recovered table is not closed; no finite-dimensional model"
            )
        d = self.dim
        table = []
        for i in range(d):
            row = []
            for j in range(d):
                entry = self.product[(i, j)]
                row.append([entry.get(k, Fraction(0)) for k in range(d)])
            table.append(row)
        return FinDim(table, self.labels)

    def to_json_dict(self):
        def vec_str(v):
            if v is None:
                return None
            return {self.labels[k]: str(c) for k, c in sorted(v.items())}

        return {
            "algebra": self.algebra,
            "ok": self.ok,
            "identity": self.identity.to_json_dict(),
            "identity_elem": repr(self.identity_elem),
            "basis": list(self.labels),
            "dim": self.dim,
            "closed": self.closed,
            "product": {
                f"{self.labels[i]} * {self.labels[j]}": vec_str(entry)
                for (i, j), entry in sorted(self.product.items())
            },
            "delta": {self.labels[i]: vec_str(v) for i, v in sorted(self.delta.items())},
            "delta_is_zero": self.delta_is_zero,
            "unit_coords": vec_str(self.unit_coords),
            "generator_classes": {g: vec_str(v) for g, v in self.generator_classes.items()},
            "components": {
                g: [[n, repr(c)] for n, c in comps] for g, comps in self.components.items()
            },
            "checks": {
                "coefficient_fit": self.fit_ok,
                "iterated_derivation": self.dtilde_ok,
                "leibniz_on_table": self.leibniz_ok,
            },
            "failures": list(self.failures),
            "log": list(self.log),
        }


def recognize_unital(
    alg,
    e=None,
    word_bound: int = 8,
    basis_cap: int = 64,
    cross_checks: bool = True,
) -> RecognitionResult:
    """Recover a differential presentation from an algebra with identity e.

    When e is omitted it is searched for in the generator span.  The recovered
    algebra is the subalgebra of the quotient by the image of d generated by
    the generator classes, closed under the induced derivation; products whose
    word length exceeds word_bound are attempted against the final span and
    reported as unresolved (closed=False) when they escape it.
    """
    if e is None:
        e = find_identity(alg)
    id_rep = identity_report(alg, e)
    if not id_rep.ok:
        raise NotUnital(
            "identity verification failed: " + "; ".join(id_rep.failures)
        )

    log: list = []
    labels: list = []
    reps: list = []
    lengths: list = []
    space = RowSpace()
    product: dict = {}
    delta: dict = {}

    def add_basis(elem, label, length):
        vec = class_coords(alg, elem)
        if space.contains(vec):
            return None
        if len(reps) >= basis_cap:
            raise ClosureBoundExceeded(
                f"recovered basis exceeded the cap of {basis_cap} elements"
            )
        idx = len(reps)
        space.add(vec, idx)
        labels.append(label)
        reps.append(elem)
        lengths.append(length)
        return idx

    generator_classes: dict = {}
    components: dict = {}
    for name, g in alg.generator_items():
        components[name] = peel_components(alg, g, e)
        c = canonical_rep(alg, g)
        if alg.is_zero(c):
            log.append(f"generator {name} has a trivial class (pure d-image)")
            generator_classes[name] = {}
            continue
        add_basis(c, name, 1)
        generator_classes[name] = space.express(class_coords(alg, c))

    changed = True
    while changed:
        changed = False
        for i in range(len(reps)):
            if i in delta:
                continue
            img = canonical_rep(alg, alg.scale(alg.nth(e, reps[i], 1), -1))
            vec = class_coords(alg, img)
            expr = space.express(vec)
            if expr is None:
                add_basis(img, f"D({labels[i]})", lengths[i])
                expr = space.express(vec)
                changed = True
            delta[i] = expr
        for i in range(len(reps)):
            for j in range(len(reps)):
                if (i, j) in product:
                    continue
                w = canonical_rep(alg, alg.nth(reps[i], reps[j], 0))
                vec = class_coords(alg, w)
                expr = space.express(vec)
                if expr is not None:
                    product[(i, j)] = expr
                    continue
                if lengths[i] + lengths[j] <= word_bound:
                    add_basis(w, f"{labels[i]}*{labels[j]}", lengths[i] + lengths[j])
                    product[(i, j)] = space.express(vec)
                    changed = True
                else:
                    product[(i, j)] = None

    # the span may have grown after an entry was marked unresolved
    for (i, j), entry in list(product.items()):
        if entry is not None:
            continue
        w = canonical_rep(alg, alg.nth(reps[i], reps[j], 0))
        expr = space.express(class_coords(alg, w))
        if expr is not None:
            product[(i, j)] = expr
        else:
            log.append(f"product left unresolved at the word bound: {labels[i]} * {labels[j]}")
    closed = all(entry is not None for entry in product.values())

    failures: list = []
    fit_ok = dtilde_ok = True
    if cross_checks:
        for name, g in alg.generator_items():
            if alg.is_zero(g):
                continue
            top = g.max_dop_degree()
            fitted = coefficient_fit_degree(alg, g)
            peel_top = alg.locality(g, e)
            if fitted != top:
                fit_ok = False
                failures.append(
                    f"coefficient fit degree {fitted} != d-degree {top} on {name}"
                )
            if peel_top != top:
                fit_ok = False
                failures.append(
                    f"top product order against e is {peel_top!r}, expected {top}, on {name}"
                )
        dt_failures = iterated_derivation_check(alg, e)
        dtilde_ok = not dt_failures
        failures.extend(dt_failures)

    leibniz_ok = True
    for i in range(len(reps)):
        for j in range(len(reps)):
            entry = product[(i, j)]
            if entry is None:
                continue
            lhs = _vec_delta(delta, entry)
            rhs_a = _vec_mul(product, delta[i], {j: Fraction(1)})
            rhs_b = _vec_mul(product, {i: Fraction(1)}, delta[j])
            if rhs_a is None or rhs_b is None:
                log.append(
                    f"Leibniz check skipped on ({labels[i]}, {labels[j]}): "
                    "an intermediate product is unresolved"
                )
                continue
            rhs = dict(rhs_a)
            for k, c in rhs_b.items():
                rhs[k] = rhs.get(k, Fraction(0)) + c
            if _vec_clean(rhs) != lhs:
                leibniz_ok = False
                failures.append(
                    f"induced derivation breaks Leibniz on ({labels[i]}, {labels[j]})"
                )

    unit_coords = space.express(class_coords(alg, e))
    result = RecognitionResult(
        algebra=getattr(alg, "name", "algebra"),
        ok=id_rep.ok and fit_ok and dtilde_ok and leibniz_ok and not failures,
        identity=id_rep,
        identity_elem=e,
        labels=labels,
        representatives=reps,
        dim=len(reps),
        closed=closed,
        product=product,
        delta=delta,
        delta_is_zero=all(not v for v in delta.values()),
        unit_coords=unit_coords,
        generator_classes=generator_classes,
        components=components,
        fit_ok=fit_ok,
        dtilde_ok=dtilde_ok,
        leibniz_ok=leibniz_ok,
        failures=failures,
        log=log,
        space=space,
    )
    return result


def recognition_roundtrip(alg, result: RecognitionResult, n_max: int = 2) -> dict:
    """Replay products through the recovered tables.

    For basis representatives u, v and n <= n_max the class of u (n) v must
    equal (-1)^n times the table product of [u] with the n-th table derivative
    of [v].  Pairs needing an unresolved table entry, or whose product escapes
    the recovered span, are skipped and logged.  Raises MismatchWitness on the
    first disagreement.
    """
    space = result.space
    checked = skipped = 0
    log = []
    for i in range(result.dim):
        for j in range(result.dim):
            for n in range(n_max + 1):
                w = alg.nth(result.representatives[i], result.representatives[j], n)
                lhs = space.express(class_coords(alg, w))
                dj = {j: Fraction(1)}
                for _ in range(n):
                    dj = _vec_delta(result.delta, dj)
                rhs = _vec_mul(result.product, {i: Fraction(1)}, dj)
                if lhs is None or rhs is None:
                    skipped += 1
                    log.append(
                        f"skipped ({result.labels[i]}, {result.labels[j]}, n={n}): "
                        + ("product escapes the span" if lhs is None else "unresolved table entry")
                    )
                    continue
                if n % 2:
                    rhs = _vec_scale(rhs, -1)
                if lhs != rhs:
                    raise MismatchWitness(
                        result.labels[i], result.labels[j], n,
                        detail=f"direct class {lhs} vs table value {rhs}",
                    )
                checked += 1
    return {"checked": checked, "skipped": skipped, "log": log}


# -- identity transport --------------------------------------------------------------


@dataclass
class TransportResult:
    algebra: DifferentialAlgebra
    identity: object
    nil_index: int
    report: IdentityReport

    def to_json_dict(self):
        return {
            "algebra": self.algebra.name,
            "identity": repr(self.identity),
            "nil_index": self.nil_index,
            "report": self.report.to_json_dict(),
        }


def transport_identity(base: FinDim, r, name: str | None = None) -> TransportResult:
    """The differential algebra over (A, ad r) with its transported identity.

    A must be finite-dimensional and unital; r must satisfy r^m = 0 for some
    m <= dim A (raises NotNilpotent otherwise).  The transported identity is
    e' = sum_{k<m} (1/k!) d^k f_{r^k}; the identity laws are re-verified and a
    failure raises, since the construction guarantees them.
    """
    if not isinstance(base, FinDim):
        raise TypeError("identity transport is defined over finite-dimensional algebras")
    powers = [base.one()]
    cur = r
    m = None
    for k in range(1, base.dim + 1):
        if base.is_zero(cur):
            m = k
            break
        powers.append(cur)
        cur = base.mul(cur, r)
    if m is None:
        raise NotNilpotent(
            f"the element is not nilpotent within m <= dim = {base.dim}"
        )
    delta = ad_derivation(base, r)
    gens = {gname: val for gname, val in base.ring_generators()}
    alg = DifferentialAlgebra(base, delta, gens, name=name or "transport")
    e = alg.zero_elem()
    for k in range(m):
        term = alg.apply_dop_power(alg.primitive(powers[k]), k)
        e = alg.add(e, alg.scale(term, Fraction(1, math.factorial(k))))
    rep = identity_report(alg, e)
    if not rep.ok:
        raise ConfalError(
            "transport postcondition failed: " + "; ".join(rep.failures)
        )
    return TransportResult(algebra=alg, identity=e, nil_index=m, report=rep)


# -- delta-stable ideal probing --------------------------------------------------------


@dataclass
class IdealClosure:
    """Span of a delta-stable one-or-two-sided multiplication closure.

    The closure lives inside the degree filtration of the coefficient
    algebra; `dropped` counts products or derivatives discarded for exceeding
    the degree bound (saturated=False then flags that the basis is only a
    lower bound for the true closure).
    """

    degree_bound: int
    basis: list
    dim: int
    unit_found: bool
    unit_reason: str | None
    saturated: bool
    dropped: int
    log: list = field(default_factory=list)
    space: RowSpace | None = None
    base: object = None

    def contains(self, elem) -> bool:
        return self.space.contains(self.base.decompose(elem))

    def to_json_dict(self):
        shown = [self.base.format(b) for b in self.basis[:32]]
        if len(self.basis) > 32:
            shown.append(f"... ({len(self.basis) - 32} more)")
        return {
            "degree_bound": self.degree_bound,
            "dim": self.dim,
            "basis": shown,
            "unit_found": self.unit_found,
            "unit_reason": self.unit_reason,
            "saturated": self.saturated,
            "dropped": self.dropped,
            "log": list(self.log),
        }


def _detect_unit(base, space: RowSpace, basis):
    if isinstance(base, FinDim):
        if base.unit is not None and space.contains(base.decompose(base.unit)):
            return True, "the unit lies in the span"
        return False, None
    if space.contains(base.decompose(base.one())):
        return True, "the unit lies in the span"
    for b in basis:
        if isinstance(base, PolyRing):
            if not b.is_zero() and b.is_const():
                return True, f"invertible element in the span: {base.format(b)}"
        elif isinstance(base, MatPolyRing):
            det = b.det()
            if not det.is_zero() and det.is_const():
                return True, (
                    f"invertible element in the span (determinant {det})"
                )
    return False, None


def _named_elements(base, generators):
    if generators is None:
        return list(base.ring_generators())
    out = []
    for k, g in enumerate(generators):
        if isinstance(g, tuple):
            out.append(g)
        else:
            out.append((f"g{k + 1}", g))
    return out


def delta_stable_closure(
    base,
    delta,
    seeds,
    degree_bound: int = 5,
    generators=None,
    basis_cap: int = 4096,
) -> IdealClosure:
    """Saturate seeds under delta and multiplication by the generator set.

    Multiplication is applied on both sides, so within the degree filtration
    the result spans the delta-stable two-sided ideal generated by the seeds
    relative to the given generators (ring generators by default).
    """
    gens = _named_elements(base, generators)
    space = RowSpace()
    basis: list = []
    work: list = []
    dropped = 0
    log: list = []

    def push(elem, note):
        nonlocal dropped
        if base.is_zero(elem):
            return
        if base.degree(elem) > degree_bound:
            dropped += 1
            return
        vec = base.decompose(elem)
        if space.contains(vec):
            return
        if len(basis) >= basis_cap:
            raise ClosureBoundExceeded(
                f"ideal closure exceeded the basis cap of {basis_cap}"
            )
        space.add(vec, len(basis))
        basis.append(elem)
        work.append(elem)
        if len(basis) <= 8:
            log.append(f"added {base.format(elem)} ({note})")

    for s in seeds:
        push(s, "seed")
    while work:
        u = work.pop(0)
        push(delta(u), "derivative")
        for gname, g in gens:
            push(base.mul(g, u), f"left by {gname}")
            push(base.mul(u, g), f"right by {gname}")

    unit_found, unit_reason = _detect_unit(base, space, basis)
    return IdealClosure(
        degree_bound=degree_bound,
        basis=basis,
        dim=len(basis),
        unit_found=unit_found,
        unit_reason=unit_reason,
        saturated=(dropped == 0),
        dropped=dropped,
        log=log,
        space=space,
        base=base,
    )


def coefficient_subalgebra(alg: DifferentialAlgebra, degree_bound: int = 5):
    """Basis of the delta-closed subalgebra generated by the generators'
    zeroth coefficients, within the degree filtration."""
    base, delta = alg.base, alg.delta
    space = RowSpace()
    basis: list = []
    work: list = []
    dropped = 0

    def push(elem):
        nonlocal dropped
        if base.is_zero(elem):
            return
        if base.degree(elem) > degree_bound:
            dropped += 1
            return
        vec = base.decompose(elem)
        if space.contains(vec):
            return
        space.add(vec, len(basis))
        basis.append(elem)
        work.append(elem)

    for _, g in alg.generator_items():
        push(alg.phi0_base(g))
    while work:
        u = work.pop(0)
        push(delta(u))
        for b in list(basis):
            push(base.mul(u, b))
            push(base.mul(b, u))
    return basis, dropped == 0


@dataclass
class SimplicityReport:
    """Outcome of a sweep for proper delta-stable ideals.

    A named witness is conclusive (the subalgebra is not simple as a
    delta-stable algebra within the filtration); finding none is only
    evidence, bounded by the trials and the degree filtration.
    """

    algebra: str
    degree_bound: int
    trials: int
    candidates_checked: int
    subalgebra_dim: int
    witness_found: bool
    witness: str | None = None
    witness_missing: list = field(default_factory=list)
    witness_closure: IdealClosure | None = None
    log: list = field(default_factory=list)

    def to_json_dict(self):
        return {
            "algebra": self.algebra,
            "degree_bound": self.degree_bound,
            "trials": self.trials,
            "candidates_checked": self.candidates_checked,
            "subalgebra_dim": self.subalgebra_dim,
            "witness_found": self.witness_found,
            "witness": self.witness,
            "witness_missing": list(self.witness_missing),
            "witness_closure": (
                self.witness_closure.to_json_dict() if self.witness_closure else None
            ),
            "log": list(self.log),
        }


def simplicity_probe(
    alg: DifferentialAlgebra,
    trials: int = 50,
    degree_bound: int = 5,
    seed: int = 0,
) -> SimplicityReport:
    """Sweep for a proper nonzero delta-stable ideal of the coefficient
    subalgebra attached to a differential instance.

    Deterministic pass first: every subalgebra basis element is tried as a
    seed.  Then `trials` pseudo-random small-coefficient combinations drawn
    from random.Random(seed).  A witness is an ideal closure that misses part
    of the subalgebra and contains no unit.
    """
    if not isinstance(alg, DifferentialAlgebra):
        raise TypeError("the simplicity probe runs on differential instances")
    base, delta = alg.base, alg.delta
    sub_basis, saturated = coefficient_subalgebra(alg, degree_bound)
    named = [(base.format(b), b) for b in sub_basis]
    log = []
    if not saturated:
        log.append("subalgebra basis is truncated by the degree bound")

    rng = random.Random(seed)
    candidates = [(f"basis element {n}", b) for n, b in named]
    for k in range(trials):
        coeffs = [rng.randint(-2, 2) for _ in sub_basis]
        elem = base.zero()
        for c, b in zip(coeffs, sub_basis):
            if c:
                elem = base.add(elem, base.scale(b, c))
        if base.is_zero(elem):
            continue
        candidates.append((f"random combination #{k + 1}", elem))

    checked = 0
    for desc, s in candidates:
        checked += 1
        closure = delta_stable_closure(
            base, delta, [s], degree_bound=degree_bound, generators=named
        )
        missing = [n for n, b in named if not closure.contains(b)]
        if missing and not closure.unit_found:
            return SimplicityReport(
                algebra=alg.name,
                degree_bound=degree_bound,
                trials=trials,
                candidates_checked=checked,
                subalgebra_dim=len(sub_basis),
                witness_found=True,
                witness=f"{desc}: {base.format(s)}",
                witness_missing=missing,
                witness_closure=closure,
                log=log,
            )
    log.append("no proper delta-stable ideal found at this degree bound")
    return SimplicityReport(
        algebra=alg.name,
        degree_bound=degree_bound,
        trials=trials,
        candidates_checked=checked,
        subalgebra_dim=len(sub_basis),
        witness_found=False,
        log=log,
    )
