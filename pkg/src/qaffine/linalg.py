"""Exact determinants and inverses for small matrices over the q-scalars.

Bareiss-style fraction-free elimination over the Laurent-polynomial ring;
rational-function matrices are cleared row by row first, so no field
arithmetic happens inside the elimination.
"""

from __future__ import annotations

from .qarith import LaurentPoly, QRat, poly_divexact


class SingularMatrix(ZeroDivisionError):
    pass


def _clear_rows(matrix):
    """Scale each row to Laurent-poly entries; returns (rows, row scales)."""
    rows = []
    scales = []
    for row in matrix:
        scale = QRat.from_int(1)
        for x in row:
            if not x.is_poly():
                scale = scale * QRat(x.den)
        cleared = []
        for x in row:
            y = x * scale
            assert y.is_poly()
            num = y.num
            # fold rational coefficients into integers times a fraction
            cleared.append(num)
        rows.append(cleared)
        scales.append(scale)
    return rows, scales


def bareiss_det(rows):
    """Determinant of a square matrix of LaurentPoly values."""
    n = len(rows)
    if n == 0:
        return LaurentPoly.const(1)
    m = [list(r) for r in rows]
    sign = 1
    prev = LaurentPoly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = poly_divexact(num, prev)
            m[i][k] = LaurentPoly.zero()
        prev = m[k][k]
    out = m[n - 1][n - 1]
    return -out if sign < 0 else out


def det(matrix):
    """Determinant of a square QRat matrix."""
    n = len(matrix)
    if n == 0:
        return QRat.from_int(1)
    rows, scales = _clear_rows(matrix)
    value = QRat(bareiss_det(rows))
    for s in scales:
        value = value / s
    return value


def _minor(rows, i, j):
    return [[rows[r][c] for c in range(len(rows)) if c != j]
            for r in range(len(rows)) if r != i]


def inverse(matrix):
    """Exact inverse of a square QRat matrix via adjugate over cleared rows."""
    n = len(matrix)
    rows, scales = _clear_rows(matrix)
    d = QRat(bareiss_det(rows))
    if d.is_zero():
        raise SingularMatrix("matrix is singular")
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cof = QRat(bareiss_det(_minor(rows, j, i)))
            if (i + j) % 2:
                cof = -cof
            # cleared = diag(scales) * matrix, so inverse = cleared^-1 * diag
            out[i][j] = cof * scales[j] / d
    return out


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = QRat.from_int(0)
            for t in range(k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def is_identity(matrix):
    one, zero = QRat.from_int(1), QRat.from_int(0)
    return all(matrix[i][j] == (one if i == j else zero)
               for i in range(len(matrix)) for j in range(len(matrix)))
