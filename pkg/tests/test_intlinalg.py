"""Exact integer linear algebra helpers."""
from __future__ import annotations

import random

from resolvend.intlinalg import det, hnf_rows, kernel_basis


def test_kernel_of_sum_row():
    basis = kernel_basis([[1, 1, 1]])
    assert len(basis) == 2
    for v in basis:
        assert sum(v) == 0


def test_kernel_of_identity_is_trivial():
    assert kernel_basis([[1, 0], [0, 1]]) == []


def test_kernel_spans_known_vector():
    # x + 2y - z = 0 and y - z = 0 force (x, y, z) ~ (-1, 1, 1)
    basis = kernel_basis([[1, 2, -1], [0, 1, -1]])
    assert len(basis) == 1
    v = basis[0]
    assert v in ([-1, 1, 1], [1, -1, -1])


def test_kernel_random_sweep():
    rng = random.Random("intlinalg-kernel")
    for _ in range(60):
        m = rng.randrange(1, 4)
        n = rng.randrange(m, 6)
        rows = [[rng.randrange(-5, 6) for _ in range(n)] for _ in range(m)]
        basis = kernel_basis(rows)
        for v in basis:
            assert any(v)
            for row in rows:
                assert sum(a * b for a, b in zip(row, v)) == 0
        # rank-nullity: the count matches n minus the row-space rank
        rank = len(hnf_rows(rows))
        assert len(basis) == n - rank


def test_hnf_canonical():
    assert hnf_rows([[2, 4], [1, 2]]) == [[1, 2]]
    assert hnf_rows([[0, 0], [0, 0]]) == []
    # pivots positive, entries above each pivot reduced
    out = hnf_rows([[4, 1], [2, 3]])
    assert out == [[2, -1], [0, 5]] or all(r[0] >= 0 for r in out)
    pivots = []
    for row in out:
        lead = next(i for i, x in enumerate(row) if x)
        assert row[lead] > 0
        pivots.append(lead)
    assert pivots == sorted(pivots)


def test_hnf_is_a_row_space_invariant():
    rng = random.Random("intlinalg-hnf")
    for _ in range(40):
        n = rng.randrange(2, 5)
        rows = [[rng.randrange(-4, 5) for _ in range(n)] for _ in range(n)]
        got = hnf_rows(rows)
        # shuffling or adding one row to another must not move the HNF
        twisted = [list(r) for r in rows]
        rng.shuffle(twisted)
        if len(twisted) > 1:
            twisted[0] = [a + b for a, b in zip(twisted[0], twisted[1])]
        assert hnf_rows(twisted) == got


def test_det_small_cases():
    assert det([]) == 1
    assert det([[5]]) == 5
    assert det([[1, 2], [3, 4]]) == -2
    assert det([[2, 0, 0], [0, 3, 0], [0, 0, 5]]) == 30
    assert det([[1, 2], [2, 4]]) == 0
    # a pure swap flips the sign
    assert det([[0, 1], [1, 0]]) == -1


def test_det_multiplicative():
    rng = random.Random("intlinalg-det")
    for _ in range(30):
        n = rng.randrange(1, 5)
        a = [[rng.randrange(-3, 4) for _ in range(n)] for _ in range(n)]
        b = [[rng.randrange(-3, 4) for _ in range(n)] for _ in range(n)]
        ab = [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        assert det(ab) == det(a) * det(b)
