"""Base algebras with a locally nilpotent derivation, and the skew Laurent ring.

The ring A[t, t^-1; delta] is kept in the normal form with A-coefficients on
the LEFT of powers of t.  Moving a power of t rightward across a coefficient
uses

    t^n * b = sum_{i >= 0} (-1)^i C(n, i) delta^i(b) t^(n - i)

where C is the generalized binomial, so the same rule covers negative n; the
sum is finite because delta is locally nilpotent.  At n = 1 the rule reads
b*t - t*b = delta(b).  This orientation is fixed here once and inherited by
every other module.

Three coefficient-algebra variants are provided: Q[x], Mat_n(Q[x]), and a
finite-dimensional algebra given by structure constants over a distinguished
basis.  Derivations verify the Leibniz rule and local nilpotency on the ring
generators (and their pairwise products) at construction time.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BoundExceeded, NotNilpotent
from .exact_arith import MatPoly, Poly, gen_binom, rat
from .linalg import dense_solve

NILPOTENCY_BOUND = 64  # default cap on derivation iteration


class BaseAlgebra:
    """Common surface of the coefficient-algebra variants.

    Elements are plain values (Poly, MatPoly, or coordinate tuples); the
    algebra object combines them and decomposes them over its canonical
    countable basis.  Basis keys are hashable and mutually comparable.
    """

    kind = "base"

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def eq(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    def from_coords(self, coords: dict):
        out = self.zero()
        for key, c in coords.items():
            out = self.add(out, self.scale(self.basis_element(key), c))
        return out

    def format(self, a) -> str:
        coords = self.decompose(a)
        if not coords:
            return "0"
        parts = []
        for key in sorted(coords):
            c = coords[key]
            name = self.describe_key(key)
            if name == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c}*{name}")
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        return text


class PolyRing(BaseAlgebra):
    """Q[x] with basis x^k, k >= 0."""

    kind = "poly"

    def __init__(self, var: str = "x"):
        self.var = var

    def zero(self):
        return Poly.zero(self.var)

    def one(self):
        return Poly.one(self.var)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def scale(self, a, c):
        return a * rat(c)

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def decompose(self, a) -> dict:
        return dict(a.coeffs)

    def basis_element(self, key: int):
        return Poly.monomial(key, 1, self.var)

    def describe_key(self, key: int) -> str:
        if key == 0:
            return "1"
        if key == 1:
            return self.var
        return f"{self.var}^{key}"

    def ring_generators(self):
        return [("1", self.one()), (self.var, Poly.variable(self.var))]

    def degree(self, a) -> int:
        return a.degree()

    def element_key(self, a):
        return a.key()


class MatPolyRing(BaseAlgebra):
    """Mat_n(Q[x]) with basis x^k E_ij.  Basis keys are (i, j, k), 0-based."""

    kind = "matpoly"

    def __init__(self, n: int, var: str = "x"):
        if n < 1:
            raise ValueError("matrix dimension must be positive")
        self.n = n
        self.var = var

    def zero(self):
        return MatPoly.zero(self.n, self.var)

    def one(self):
        return MatPoly.identity(self.n, self.var)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def scale(self, a, c):
        return a * rat(c)

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def decompose(self, a) -> dict:
        out = {}
        for i in range(self.n):
            for j in range(self.n):
                for k, c in a.rows[i][j].coeffs.items():
                    out[(i, j, k)] = c
        return out

    def basis_element(self, key):
        i, j, k = key
        return MatPoly.unit(self.n, i, j, self.var, 1, k)

    def describe_key(self, key) -> str:
        i, j, k = key
        e = f"E({i + 1},{j + 1})"
        if k == 0:
            return e
        if k == 1:
            return f"{self.var}*{e}"
        return f"{self.var}^{k}*{e}"

    def ring_generators(self):
        gens = []
        for i in range(self.n):
            for j in range(self.n):
                gens.append((f"E({i + 1},{j + 1})", MatPoly.unit(self.n, i, j, self.var)))
        gens.append(
            (f"{self.var}*1", MatPoly.identity(self.n, self.var) * Poly.variable(self.var))
        )
        return gens

    def degree(self, a) -> int:
        return a.degree()

    def element_key(self, a):
        return a.key()


class FinDim(BaseAlgebra):
    """Finite-dimensional algebra over Q with a distinguished basis.

    Structure constants: table[i][j] is the coordinate tuple of b_i * b_j.
    Associativity is checked exactly on all basis triples at construction.
    Elements are coordinate tuples of Fractions.
    """

    kind = "findim"

    def __init__(self, table, names=None):
        d = len(table)
        self.dim = d
        self.names = tuple(names) if names else tuple(f"b{i + 1}" for i in range(d))
        if len(self.names) != d:
            raise ValueError("basis name count mismatch")
        fixed = []
        for i in range(d):
            if len(table[i]) != d:
                raise ValueError("structure-constant table must be d x d")
            row = []
            for j in range(d):
                coords = tuple(rat(c) for c in table[i][j])
                if len(coords) != d:
                    raise ValueError("structure-constant vectors must have length d")
                row.append(coords)
            fixed.append(tuple(row))
        self.table = tuple(fixed)
        self._check_associativity()
        self.unit = self._find_unit()

    def _check_associativity(self):
        d = self.dim
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    left = self.mul(self.mul(self.basis_element(i), self.basis_element(j)), self.basis_element(k))
                    right = self.mul(self.basis_element(i), self.mul(self.basis_element(j), self.basis_element(k)))
                    if left != right:
                        raise ValueError(
                            f"structure constants are not associative at basis triple ({i}, {j}, {k})"
                        )

    def _find_unit(self):
        # Solve e * b_j = b_j and b_j * e = b_j for all j.
        d = self.dim
        rows, rhs = [], []
        for j in range(d):
            for k in range(d):
                rows.append([self.table[i][j][k] for i in range(d)])
                rhs.append(Fraction(1) if k == j else Fraction(0))
                rows.append([self.table[j][i][k] for i in range(d)])
                rhs.append(Fraction(1) if k == j else Fraction(0))
        sol = dense_solve(rows, rhs)
        return tuple(sol) if sol is not None else None

    def zero(self):
        return tuple(Fraction(0) for _ in range(self.dim))

    def one(self):
        if self.unit is None:
            raise ValueError("this finite-dimensional algebra has no unit")
        return self.unit

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def scale(self, a, c):
        c = rat(c)
        return tuple(x * c for x in a)

    def mul(self, a, b):
        out = [Fraction(0)] * self.dim
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y == 0:
                    continue
                f = x * y
                for k, c in enumerate(self.table[i][j]):
                    if c != 0:
                        out[k] += f * c
        return tuple(out)

    def is_zero(self, a) -> bool:
        return all(x == 0 for x in a)

    def decompose(self, a) -> dict:
        return {i: c for i, c in enumerate(a) if c != 0}

    def basis_element(self, key: int):
        return tuple(Fraction(1) if i == key else Fraction(0) for i in range(self.dim))

    def describe_key(self, key: int) -> str:
        return self.names[key]

    def ring_generators(self):
        return [(self.names[i], self.basis_element(i)) for i in range(self.dim)]

    def degree(self, a) -> int:
        return 0

    def element_key(self, a):
        return tuple(a)


def matrix_findim(n: int) -> FinDim:
    """Mat_n(Q) as a FinDim algebra on the matrix-unit basis (row-major)."""
    d = n * n
    names = [f"E({i + 1},{j + 1})" for i in range(n) for j in range(n)]

    def idx(i, j):
        return i * n + j

    table = []
    for a in range(d):
        i, j = divmod(a, n)
        row = []
        for b in range(d):
            k, l = divmod(b, n)
            coords = [Fraction(0)] * d
            if j == k:
                coords[idx(i, l)] = Fraction(1)
            row.append(coords)
        table.append(row)
    return FinDim(table, names)


class Derivation:
    """delta : A -> A.

    Construction verifies, exactly, the Leibniz rule on all pairs drawn from
    the ring generators and their pairwise products, and local nilpotency of
    delta on that same set within the iteration bound.
    """

    label = "delta"

    def __init__(self, base: BaseAlgebra, bound: int = NILPOTENCY_BOUND, verify: bool = True):
        self.base = base
        self.bound = bound
        if verify:
            self._verify()

    def _apply(self, a):
        raise NotImplementedError

    def apply(self, a):
        return self._apply(a)

    __call__ = apply

    def _probe_set(self):
        base = self.base
        gens = [g for _, g in base.ring_generators()]
        probe = list(gens)
        for a in gens:
            for b in gens:
                p = base.mul(a, b)
                if not base.is_zero(p):
                    probe.append(p)
        return gens, probe

    def _verify(self):
        base = self.base
        gens, probe = self._probe_set()
        for a in probe:
            for b in probe:
                lhs = self._apply(base.mul(a, b))
                rhs = base.add(base.mul(self._apply(a), b), base.mul(a, self._apply(b)))
                if not base.eq(lhs, rhs):
                    raise ValueError(
                        f"Leibniz rule fails on ({base.format(a)}, {base.format(b)})"
                    )
        for a in probe:
            if not base.is_zero(a):
                nilpotency_index(self, a, self.bound)


class ScaledDdx(Derivation):
    """c * d/dx, entrywise on matrix algebras."""

    def __init__(self, base, coeff=1, bound: int = NILPOTENCY_BOUND):
        if not isinstance(base, (PolyRing, MatPolyRing)):
            raise TypeError("d/dx needs a polynomial or matrix-polynomial base")
        self.coeff = rat(coeff)
        self.label = f"{self.coeff}*d/d{base.var}" if self.coeff != 1 else f"d/d{base.var}"
        super().__init__(base, bound)

    def _apply(self, a):
        return a.derive() * self.coeff


class DdxPlusAd(Derivation):
    """d/dx + ad(r) on Mat_n(Q[x]) for a nilpotent r."""

    def __init__(self, base, r: MatPoly, coeff=1, bound: int = NILPOTENCY_BOUND):
        if not isinstance(base, MatPolyRing):
            raise TypeError("d/dx + ad(r) needs a matrix-polynomial base")
        if not (r ** base.n).is_zero():
            raise NotNilpotent(f"r is not nilpotent: r^{base.n} != 0")
        self.r = r
        self.coeff = rat(coeff)
        self.label = f"d/d{base.var} + ad({r})"
        super().__init__(base, bound)

    def _apply(self, a):
        return a.derive() * self.coeff + self.r * a - a * self.r


class ZeroDerivation(Derivation):
    label = "0"

    def _apply(self, a):
        return self.base.zero()

    def _verify(self):
        pass  # the zero map is a derivation and kills everything in one step


class LinearAction(Derivation):
    """Explicit Q-linear action on a FinDim basis.

    matrix[i][j] is the coefficient of b_i in delta(b_j) (columns are images).
    """

    def __init__(self, base: FinDim, matrix, bound: int = NILPOTENCY_BOUND):
        if not isinstance(base, FinDim):
            raise TypeError("an explicit action matrix needs a FinDim base")
        d = base.dim
        self.matrix = tuple(tuple(rat(c) for c in row) for row in matrix)
        if len(self.matrix) != d or any(len(r) != d for r in self.matrix):
            raise ValueError("action matrix must be d x d")
        self.label = "matrix action"
        super().__init__(base, bound)

    def _apply(self, a):
        d = self.base.dim
        out = [Fraction(0)] * d
        for j, c in enumerate(a):
            if c == 0:
                continue
            for i in range(d):
                m = self.matrix[i][j]
                if m != 0:
                    out[i] += m * c
        return tuple(out)


def ad_derivation(base: FinDim, r, bound: int = NILPOTENCY_BOUND) -> LinearAction:
    """ad(r) = [r, -] on a FinDim algebra, built as an explicit action matrix."""
    d = base.dim
    cols = []
    for j in range(d):
        img = base.sub(base.mul(r, base.basis_element(j)), base.mul(base.basis_element(j), r))
        cols.append(img)
    matrix = [[cols[j][i] for j in range(d)] for i in range(d)]
    return LinearAction(base, matrix, bound)


def nilpotency_index(delta: Derivation, a, bound: int | None = None) -> int:
    """Minimal m >= 1 with delta^m(a) = 0, for nonzero a.

    Raises BoundExceeded if no such m within the bound.
    """
    base = delta.base
    if base.is_zero(a):
        raise ValueError("nilpotency index is defined for nonzero elements")
    limit = bound if bound is not None else delta.bound
    cur = delta(a)
    m = 1
    while not base.is_zero(cur):
        m += 1
        if m > limit:
            raise BoundExceeded(
                f"derivation did not vanish on {base.format(a)} within {limit} iterations",
                element=a,
                bound=limit,
            )
        cur = delta(cur)
    return m


class OreRing:
    """The skew Laurent ring A[t, t^-1; delta]."""

    def __init__(self, base: BaseAlgebra, delta: Derivation):
        if delta.base is not base:
            raise ValueError("derivation is attached to a different base algebra")
        self.base = base
        self.delta = delta

    def zero(self) -> "SkewLaurent":
        return SkewLaurent(self, {})

    def one(self) -> "SkewLaurent":
        return SkewLaurent(self, {0: self.base.one()})

    def t(self, n: int = 1) -> "SkewLaurent":
        return SkewLaurent(self, {n: self.base.one()})

    def embed(self, a) -> "SkewLaurent":
        return SkewLaurent(self, {0: a})

    def monomial(self, a, n: int) -> "SkewLaurent":
        """a * t^n."""
        return SkewLaurent(self, {n: a})

    def move_t_across(self, n: int, b):
        """t^n * b as a list of (exponent, coefficient) pairs in normal form."""
        base = self.base
        out = []
        cur = b
        i = 0
        while not base.is_zero(cur):
            if n >= 0 and i > n:
                break  # C(n, i) = 0 from here on for nonnegative n
            c = gen_binom(n, i)
            if c != 0:
                sign = -c if i % 2 else c
                out.append((n - i, base.scale(cur, sign)))
            i += 1
            if i > self.delta.bound:
                raise BoundExceeded(
                    "derivation iteration exceeded the bound while normalizing t^n * b",
                    element=b,
                    bound=self.delta.bound,
                )
            cur = self.delta(cur)
        return out


class SkewLaurent:
    """Element of A[t, t^-1; delta] in normal form: sum a_n t^n, a_n in A."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: OreRing, coeffs: dict):
        self.ring = ring
        base = ring.base
        self.coeffs = {int(n): a for n, a in coeffs.items() if not base.is_zero(a)}

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self):
        return sorted(self.coeffs)

    def _same(self, other: "SkewLaurent"):
        if self.ring is not other.ring:
            raise ValueError("elements of different skew rings")

    def __add__(self, other):
        if not isinstance(other, SkewLaurent):
            return NotImplemented
        self._same(other)
        base = self.ring.base
        out = dict(self.coeffs)
        for n, a in other.coeffs.items():
            out[n] = base.add(out[n], a) if n in out else a
        return SkewLaurent(self.ring, out)

    def __neg__(self):
        base = self.ring.base
        return SkewLaurent(self.ring, {n: base.neg(a) for n, a in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, SkewLaurent):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "SkewLaurent":
        base = self.ring.base
        c = rat(c)
        return SkewLaurent(self.ring, {n: base.scale(a, c) for n, a in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SkewLaurent):
            return NotImplemented
        self._same(other)
        base = self.ring.base
        out: dict = {}
        for l, a in self.coeffs.items():
            for m, b in other.coeffs.items():
                # a t^l * b t^m = a (t^l b) t^m
                for exp, moved in self.ring.move_t_across(l, b):
                    prod = base.mul(a, moved)
                    if base.is_zero(prod):
                        continue
                    n = exp + m
                    out[n] = base.add(out[n], prod) if n in out else prod
        return SkewLaurent(self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, SkewLaurent):
            return NotImplemented
        if self.ring is not other.ring:
            return False
        if set(self.coeffs) != set(other.coeffs):
            return False
        base = self.ring.base
        return all(base.eq(a, other.coeffs[n]) for n, a in self.coeffs.items())

    def key(self):
        base = self.ring.base
        return tuple((n, base.element_key(self.coeffs[n])) for n in sorted(self.coeffs))

    def coords(self) -> dict:
        """Flatten to {(basis_key, t_exponent): Fraction} for linear algebra."""
        base = self.ring.base
        out = {}
        for n, a in self.coeffs.items():
            for key, c in base.decompose(a).items():
                out[(key, n)] = c
        return out

    def __repr__(self):
        if not self.coeffs:
            return "0"
        base = self.ring.base
        parts = []
        for n in sorted(self.coeffs, reverse=True):
            a = base.format(self.coeffs[n])
            if n == 0:
                parts.append(a)
                continue
            tpow = "t" if n == 1 else f"t^{n}"
            parts.append(tpow if a == "1" else f"({a})*{tpow}")
        return " + ".join(parts)


def skew_mul(u: SkewLaurent, v: SkewLaurent) -> SkewLaurent:
    """Product in A[t, t^-1; delta] (normal-form coefficients left of t)."""
    return u * v


def weyl_instance(n: int = 1):
    """(Q[x], d/dx) for n = 1, (Mat_n(Q[x]), entrywise d/dx) for n >= 2.

    In the skew ring of either pair, x * t - t * x = 1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    base = PolyRing("x") if n == 1 else MatPolyRing(n, "x")
    return base, ScaledDdx(base)
