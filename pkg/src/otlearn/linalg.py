"""Exact linear algebra over the rationals (fractions.Fraction throughout).

Pivoting is always the first nonzero entry; with exact arithmetic there is
no numerical stability concern, and the deterministic pivot choice keeps
every caller reproducible.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(entries):
    return tuple(Fraction(x) for x in entries)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u):
    return tuple(c * a for a in u)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), ZERO)


def vec_mat(u, m):
    """Row vector times matrix (matrix stored as a tuple of rows)."""
    cols = len(m[0]) if m else 0
    return tuple(
        sum((u[i] * m[i][j] for i in range(len(u))), ZERO) for j in range(cols)
    )


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b):
    return tuple(vec_mat(row, b) for row in a)


def identity(n):
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
    )


def transpose(m):
    if not m:
        return ()
    return tuple(tuple(row[j] for row in m) for j in range(len(m[0])))


def solve_coords(rows, target):
    """Coefficients expressing `target` as a linear combination of `rows`,
    or None when target lies outside their span. Free variables are fixed
    to zero, so the answer is deterministic."""
    k = len(rows)
    if k == 0:
        return () if all(x == 0 for x in target) else None
    n = len(target)
    # augmented system: columns are the rows, RHS is the target
    aug = [[rows[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    pivots = []
    r = 0
    for c in range(k):
        pivot = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = ONE / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n):
        if aug[i][k] != 0:
            return None
    coords = [ZERO] * k
    for row_i, c in enumerate(pivots):
        coords[c] = aug[row_i][k]
    return tuple(coords)


def in_span(rows, target):
    return solve_coords(rows, target) is not None


def rank(rows):
    """Row rank by incremental span membership (exact)."""
    basis = []
    for row in rows:
        if not in_span(basis, row):
            basis.append(row)
    return len(basis)


def format_rational(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def parse_rational(s):
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s)
    raise TypeError(f"cannot parse rational from {s!r}")
