"""Dense exact linear algebra over a finite field.

All matrices are small (at most a few dozen rows/columns), so plain
Gaussian elimination on lists of integer codes is used throughout.
Row-echelon forms are fully reduced (pivots 1, zeros above and below),
which makes them canonical: two row sets span the same space iff their
reduced forms are identical.
"""

from __future__ import annotations

from .fields import GaloisField


def rref(field: GaloisField, rows) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """Reduced row echelon form.

    Args:
        field: coefficient field.
        rows: iterable of equal-length code sequences.

    Returns:
        (pivot_cols, reduced_rows) with zero rows dropped; both tuples,
        canonical per row space.
    """
    mat = [list(r) for r in rows]
    if not mat:
        return (), ()
    ncols = len(mat[0])
    nrows = len(mat)
    sub, mul, inv = field.sub, field.mul, field.inv
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        row = mat[r]
        f = inv(row[c])
        if f != 1:
            for j in range(ncols):
                if row[j]:
                    row[j] = mul(f, row[j])
        for i in range(nrows):
            other = mat[i]
            if i != r and other[c]:
                g = other[c]
                for j in range(ncols):
                    y = row[j]
                    if y:
                        other[j] = sub(other[j], mul(g, y))
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(pivots), tuple(tuple(row) for row in mat[:r])


def rank(field: GaloisField, rows) -> int:
    return len(rref(field, rows)[0])


def residual(field: GaloisField, pivots, rrows, vec) -> tuple[int, ...]:
    """Reduce vec against reduced rows; zero tuple iff vec is in the row space."""
    v = list(vec)
    n = len(v)
    sub, mul = field.sub, field.mul
    for c, row in zip(pivots, rrows):
        f = v[c]
        if f:
            for j in range(n):
                y = row[j]
                if y:
                    v[j] = sub(v[j], mul(f, y))
    return tuple(v)


def in_rowspace(field: GaloisField, pivots, rrows, vec) -> bool:
    return not any(residual(field, pivots, rrows, vec))


def nullspace(field: GaloisField, rows, ncols: int) -> tuple[tuple[int, ...], ...]:
    """Canonical basis of {v : M v = 0} for the matrix with the given rows."""
    pivots, rrows = rref(field, rows)
    pivot_set = set(pivots)
    neg = field.neg
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        v[free] = 1
        for c, row in zip(pivots, rrows):
            v[c] = neg(row[free])
        basis.append(tuple(v))
    return tuple(basis)


def solve_columns(field: GaloisField, cols, target) -> tuple[int, ...] | None:
    """Solve A x = target where A has the given columns.

    Returns the coefficient tuple, or None if the system is inconsistent.
    Free variables (dependent columns) are set to 0.
    """
    ncols = len(cols)
    nrows = len(target)
    aug = [[cols[j][i] for j in range(ncols)] + [target[i]] for i in range(nrows)]
    pivots, rrows = rref(field, aug)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for c, row in zip(pivots, rrows):
        x[c] = row[ncols]
    return tuple(x)


def mat_vec(field: GaloisField, matrix, vec) -> tuple[int, ...]:
    add, mul = field.add, field.mul
    out = []
    for row in matrix:
        acc = 0
        for a, x in zip(row, vec):
            if a and x:
                acc = add(acc, mul(a, x))
        out.append(acc)
    return tuple(out)


def mat_mul(field: GaloisField, A, B) -> tuple[tuple[int, ...], ...]:
    add, mul = field.add, field.mul
    ncols = len(B[0])
    out = []
    for row in A:
        acc = [0] * ncols
        for a, brow in zip(row, B):
            if a:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] = add(acc[j], mul(a, b))
        out.append(tuple(acc))
    return tuple(out)


def mat_inv(field: GaloisField, matrix) -> tuple[tuple[int, ...], ...] | None:
    """Inverse of a square matrix, or None if singular."""
    n = len(matrix)
    aug = [list(matrix[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    pivots, rrows = rref(field, aug)
    if list(pivots) != list(range(n)):
        return None
    return tuple(tuple(row[n:]) for row in rrows)


def transpose(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(zip(*rows)) if rows else ()
