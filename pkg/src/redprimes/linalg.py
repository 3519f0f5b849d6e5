"""Exact linear algebra over Q (row-vector convention: maps act as v @ M)."""

from __future__ import annotations

from gmpy2 import mpq


def mat_inv(rows):
    """Inverse of a square rational matrix given as a list of rows."""
    n = len(rows)
    aug = [list(r) + [mpq(1) if j == i else mpq(0) for j in range(n)]
           for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [tuple(row[n:]) for row in aug]


def mat_det(rows):
    n = len(rows)
    m = [list(r) for r in rows]
    det = mpq(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return mpq(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def mat_mul(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def solve_row(rows, target):
    """c with sum c_i rows[i] = target, or None if target is outside the span."""
    if not rows:
        return None if any(target) else ()
    n = len(rows[0])
    aug = [list(r) + [mpq(1) if j == i else mpq(0) for j in range(len(rows))]
           for i, r in enumerate(rows)]
    pivcols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(aug)) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivcols.append(c)
        r += 1
    coeffs = [mpq(0)] * len(rows)
    v = [mpq(t) for t in target]
    for row, pc in zip(aug[:r], pivcols):
        c = v[pc]
        if c:
            for k in range(len(rows)):
                coeffs[k] += c * row[n + k]
            for j in range(n):
                v[j] -= c * row[j]
    if any(v):
        return None
    return tuple(coeffs)


def nullspace(rows):
    """Basis of {c : sum c_i rows[i] = 0}."""
    if not rows:
        return []
    n = len(rows[0])
    m = len(rows)
    # transpose and find the right-kernel
    Mt = [[mpq(rows[i][j]) for i in range(m)] for j in range(n)]
    R = [list(r) for r in Mt]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, len(R)) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(m) if c not in pivots]
    out = []
    for fc in free:
        v = [mpq(0)] * m
        v[fc] = mpq(1)
        for row, pc in zip(R[:r], pivots):
            v[pc] = -row[fc]
        out.append(tuple(v))
    return out


def charpoly(M):
    """Characteristic polynomial of a square rational matrix, monic, low first
    (Faddeev-LeVerrier)."""
    n = len(M)
    coeffs = [mpq(0)] * (n + 1)
    coeffs[n] = mpq(1)
    Mk = [[mpq(M[i][j]) for j in range(n)] for i in range(n)]
    Mwork = [row[:] for row in Mk]
    for k in range(1, n + 1):
        tr = sum(Mwork[i][i] for i in range(n))
        c = -tr / k
        coeffs[n - k] = c
        if k == n:
            break
        for i in range(n):
            Mwork[i][i] += c
        Mwork = mat_mul(Mk, Mwork)
    return tuple(coeffs)
