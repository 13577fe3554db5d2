"""Row reduction, null spaces, and solves, cross-checked by enumeration."""

from __future__ import annotations

from itertools import product

import pytest

from pgtool import SplitMix64, create_field, prime_power
from pgtool import linalg


def _random_matrix(field, rows, cols, rng):
    return [
        tuple(rng.randbelow(field.q) for _ in range(cols)) for _ in range(rows)
    ]


def _rank_oracle(field, rows, cols):
    """Rank as the log-size of the row span, by full enumeration."""
    span = set()
    for coeffs in product(field.elements(), repeat=len(rows)):
        acc = [0] * cols
        for c, row in zip(coeffs, rows):
            for i, x in enumerate(row):
                acc[i] = field.add(acc[i], field.mul(c, x))
        span.add(tuple(acc))
    size = len(span)
    rank = 0
    while field.q**rank < size:
        rank += 1
    assert field.q**rank == size
    return rank


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_rank_matches_enumeration(q):
    field = create_field(*prime_power(q))
    rng = SplitMix64(q)
    for _ in range(25):
        rows = _random_matrix(field, rng.randbelow(4), 3, rng)
        assert linalg.rank(field, rows) == _rank_oracle(field, rows, 3)


@pytest.mark.parametrize("q", [2, 3, 4, 9])
def test_rref_canonical_and_idempotent(q):
    field = create_field(*prime_power(q))
    rng = SplitMix64(q + 100)
    for _ in range(25):
        rows = _random_matrix(field, 4, 5, rng)
        pivots, rrows = linalg.rref(field, rows)
        assert list(pivots) == sorted(pivots)
        for k, (c, row) in enumerate(zip(pivots, rrows)):
            assert row[c] == 1
            assert all(other[c] == 0 for i, other in enumerate(rrows) if i != k)
        assert linalg.rref(field, rrows) == (pivots, rrows)
        # row space is preserved
        for row in rows:
            assert linalg.in_rowspace(field, pivots, rrows, row)


@pytest.mark.parametrize("q", [2, 3, 5, 8])
def test_nullspace_is_exact_kernel(q):
    field = create_field(*prime_power(q))
    rng = SplitMix64(q + 200)
    for _ in range(20):
        rows = _random_matrix(field, 3, 4, rng)
        basis = linalg.nullspace(field, rows, 4)
        assert len(basis) == 4 - linalg.rank(field, rows)
        for vec in basis:
            assert all(
                not _dot(field, row, vec) for row in rows
            )
        # every kernel vector is caught (enumeration over the kernel)
        kernel = {
            v
            for v in product(field.elements(), repeat=4)
            if all(not _dot(field, row, v) for row in rows)
        }
        spanned = set()
        for coeffs in product(field.elements(), repeat=len(basis)):
            acc = [0] * 4
            for c, b in zip(coeffs, basis):
                for i, x in enumerate(b):
                    acc[i] = field.add(acc[i], field.mul(c, x))
            spanned.add(tuple(acc))
        assert spanned == kernel


def _dot(field, a, b):
    acc = 0
    for x, y in zip(a, b):
        acc = field.add(acc, field.mul(x, y))
    return acc


@pytest.mark.parametrize("q", [3, 4, 7])
def test_solve_columns(q):
    field = create_field(*prime_power(q))
    rng = SplitMix64(q + 300)
    for _ in range(20):
        cols = [tuple(rng.randbelow(field.q) for _ in range(3)) for _ in range(3)]
        x = [rng.randbelow(field.q) for _ in range(3)]
        target = tuple(
            _dot(field, [cols[j][i] for j in range(3)], x) for i in range(3)
        )
        sol = linalg.solve_columns(field, cols, target)
        assert sol is not None
        rebuilt = tuple(
            _dot(field, [cols[j][i] for j in range(3)], sol) for i in range(3)
        )
        assert rebuilt == target
    # inconsistent system
    assert (
        linalg.solve_columns(field, [(1, 0, 0), (0, 1, 0)], (0, 0, 1)) is None
    )


@pytest.mark.parametrize("q", [2, 3, 9])
def test_matrix_inverse(q):
    field = create_field(*prime_power(q))
    rng = SplitMix64(q + 400)
    ident = tuple(
        tuple(1 if i == j else 0 for j in range(3)) for i in range(3)
    )
    found = 0
    while found < 10:
        m = tuple(
            tuple(rng.randbelow(field.q) for _ in range(3)) for _ in range(3)
        )
        inv = linalg.mat_inv(field, m)
        if linalg.rank(field, m) < 3:
            assert inv is None
            continue
        found += 1
        assert linalg.mat_mul(field, m, inv) == ident
        assert linalg.mat_mul(field, inv, m) == ident
