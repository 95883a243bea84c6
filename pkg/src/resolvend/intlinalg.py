"""Small exact integer linear algebra: kernels, row HNF, determinants.

Matrices here are a few dozen rows at most, so clarity and deterministic
pivoting win over asymptotics.
"""

from __future__ import annotations


def kernel_basis(rows: list[list[int]]) -> list[list[int]]:
    """Basis of the integer kernel {x : A x = 0} by unimodular column ops."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    col = 0
    for row in range(m):
        if col >= n:
            break
        # clear row to a single pivot among columns col..n-1
        while True:
            live = [j for j in range(col, n) if a[row][j] != 0]
            if not live:
                break
            piv = min(live, key=lambda j: (abs(a[row][j]), j))
            if piv != col:
                for r in a:
                    r[col], r[piv] = r[piv], r[col]
                for r in u:
                    r[col], r[piv] = r[piv], r[col]
            done = True
            for j in range(col + 1, n):
                q = a[row][j] // a[row][col]
                if q:
                    for r in a:
                        r[j] -= q * r[col]
                    for r in u:
                        r[j] -= q * r[col]
                if a[row][j]:
                    done = False
            if done:
                col += 1
                break
    return [[u[i][j] for i in range(n)] for j in range(col, n)]


def hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form: positive pivots, entries above reduced."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return []
    n = len(a[0])
    out: list[list[int]] = []
    col = 0
    while a and col < n:
        live = [r for r in a if r[col] != 0]
        rest = [r for r in a if r[col] == 0]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            base = live[0]
            for r in live[1:]:
                q = r[col] // base[col]
                for i in range(n):
                    r[i] -= q * base[i]
            live = [r for r in live if r[col] != 0] + [r for r in live[1:] if r[col] == 0]
            rest += [r for r in live if r[col] == 0]
            live = [r for r in live if r[col] != 0]
        pivot = live[0]
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        for prev in out:
            if prev[col]:
                q = prev[col] // pivot[col]
                for i in range(n):
                    prev[i] -= q * pivot[i]
        out.append(list(pivot))
        a = [r for r in rest if any(r)]
        col += 1
    return out


def det(rows: list[list[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
