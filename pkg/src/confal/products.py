"""The d-reduction engine shared by the differential and presented models.

Elements are dicts mapping a basis symbol to a DOp (a polynomial in d).  The
caller supplies the base case: the order-m product of two pure symbols, as
another such dict.  The engine supplies bilinearity and the removal of d from
both slots of the n-th product:

  * left slot:  a power d^i contributes (-1)^i n(n-1)...(n-i+1) at order n-i,
    which is zero once i exceeds n;
  * right slot: u (n) (d v) = d(u (n) v) + n * (u (n-1) v), applied
    recursively one power of d at a time.
"""

from __future__ import annotations

from fractions import Fraction

from .exact_arith import DOp, falling_factorial


def terms_clean(terms: dict) -> dict:
    return {k: q for k, q in terms.items() if not q.is_zero()}

def terms_add_scaled(dst: dict, src: dict, c) -> None:
    if c == 0:
        return
    for k, q in src.items():
        cur = dst.get(k)
        nq = q * c if cur is None else cur + q * c
        if nq.is_zero():
            dst.pop(k, None)
        else:
            dst[k] = nq


def terms_times_d(terms: dict) -> dict:
    return {k: q.times_d() for k, q in terms.items()}


def _symbol_dpow(ak, m: int, bk, j: int, base_case) -> dict:
    """f_a (m) (d^j f_b) as a terms dict."""
    if j == 0:
        return base_case(ak, m, bk)
    rec = _symbol_dpow(ak, m, bk, j - 1, base_case)
    out = terms_times_d(rec)
    if m > 0:
        terms_add_scaled(out, _symbol_dpow(ak, m - 1, bk, j - 1, base_case), Fraction(m))
    return terms_clean(out)


def nth_product_terms(u_terms: dict, v_terms: dict, n: int, base_case) -> dict:
    """Order-n product of two elements given as terms dicts."""
    if n < 0:
        raise ValueError("product order must be nonnegative")
    out: dict = {}
    for ak, p in u_terms.items():
        for i, ci in p.items():
            if i > n:
                continue  # the left-slot factor n(n-1)...(n-i+1) vanishes
            left = ci * falling_factorial(n, i)
            if i % 2:
                left = -left
            if left == 0:
                continue
            for bk, q in v_terms.items():
                for j, cj in q.items():
                    piece = _symbol_dpow(ak, n - i, bk, j, base_case)
                    terms_add_scaled(out, piece, left * cj)
    return terms_clean(out)


def terms_key(terms: dict):
    """Canonical hashable form of a terms dict (for dedup and span frames)."""
    return tuple((k, terms[k].key()) for k in sorted(terms))


def terms_scalar_normalized_key(terms: dict):
    """Canonical form up to a scalar multiple: leading coefficient set to 1."""
    if not terms:
        return ()
    lead_key = sorted(terms)[0]
    lead = terms[lead_key].coeffs[min(terms[lead_key].coeffs)]
    inv = 1 / lead
    return tuple((k, (terms[k] * inv).key()) for k in sorted(terms))


def terms_max_dop_degree(terms: dict) -> int:
    return max((q.degree() for q in terms.values()), default=0)


def terms_apply_dop(terms: dict, q: DOp) -> dict:
    return terms_clean({k: p * q for k, p in terms.items()})
