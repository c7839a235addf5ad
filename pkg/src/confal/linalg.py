"""Exact linear algebra over the rationals.

Plumbing for the probes, closures, and rank engines: an incremental
row-echelon span with expression tracking, a dense nullspace, and a dense
solver.  Vectors are sparse dicts from hashable coordinate keys to Fraction;
keys within one computation must be mutually comparable (they always are:
each algebra uses one homogeneous key shape).
"""

from __future__ import annotations

from fractions import Fraction


def vec_clean(vec: dict) -> dict:
    return {k: Fraction(v) for k, v in vec.items() if v != 0}


def vec_add_scaled(dst: dict, src: dict, c: Fraction) -> None:
    if c == 0:
        return
    for k, v in src.items():
        s = dst.get(k, 0) + c * v
        if s == 0:
            dst.pop(k, None)
        else:
            dst[k] = s


class RowSpace:
    """Incremental echelon span of sparse rational vectors.

    Each added vector is tagged; `express` writes a member of the span as a
    combination of the previously added (independent) vectors' tags.
    """

    def __init__(self):
        # (pivot_key, reduced_row, combo) with row[pivot_key] == 1 and
        # row == sum combo[tag] * original_vector[tag]
        self._rows: list[tuple[object, dict, dict]] = []

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, vec: dict, combo: dict) -> dict:
        vec = dict(vec)
        for pivot, row, rc in self._rows:
            c = vec.get(pivot)
            if c:
                vec_add_scaled(vec, row, -c)
                vec_add_scaled(combo, rc, -c)
        return vec_clean(vec)

    def residual(self, vec: dict) -> dict:
        return self._reduce(vec, {})

    def contains(self, vec: dict) -> bool:
        return not self.residual(vec)

    def express(self, vec: dict):
        """Coefficients over added tags reproducing vec, or None if outside."""
        combo: dict = {}
        resid = self._reduce(vec, combo)
        if resid:
            return None
        return {k: -v for k, v in combo.items() if v != 0}

    def add(self, vec: dict, tag) -> bool:
        """Insert vec under tag; returns False if it was already in the span."""
        combo = {tag: Fraction(1)}
        resid = self._reduce(vec, combo)
        if not resid:
            return False
        pivot = min(resid)
        lead = resid[pivot]
        row = {k: v / lead for k, v in resid.items()}
        rc = {k: v / lead for k, v in combo.items() if v != 0}
        self._rows.append((pivot, row, rc))
        return True


def dense_rref(matrix: list[list[Fraction]]):
    """Reduced row echelon form in place; returns the list of pivot columns."""
    if not matrix:
        return []
    nrows, ncols = len(matrix), len(matrix[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if matrix[i][c] != 0), None)
        if pr is None:
            continue
        matrix[r], matrix[pr] = matrix[pr], matrix[r]
        lead = matrix[r][c]
        matrix[r] = [v / lead for v in matrix[r]]
        for i in range(nrows):
            if i != r and matrix[i][c] != 0:
                f = matrix[i][c]
                matrix[i] = [a - f * b for a, b in zip(matrix[i], matrix[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def dense_nullspace(matrix: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right nullspace of the matrix (ncols unknowns)."""
    work = [list(map(Fraction, row)) for row in matrix if any(v != 0 for v in row)]
    if not work:
        basis = []
        for j in range(ncols):
            v = [Fraction(0)] * ncols
            v[j] = Fraction(1)
            basis.append(v)
        return basis
    pivots = dense_rref(work)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -work[r][f]
        basis.append(v)
    return basis


def dense_solve(matrix: list[list[Fraction]], rhs: list[Fraction]):
    """One exact solution of matrix * x = rhs, or None if inconsistent.

    Free unknowns are set to zero.
    """
    if not matrix:
        return None
    ncols = len(matrix[0])
    work = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    pivots = dense_rref(work)
    if ncols in pivots:
        return None  # pivot in the augmented column: inconsistent
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = work[r][ncols]
    return x
