"""Exact integer and rational linear algebra underlying all fan computations.

Everything here works over Python ints and `fractions.Fraction`; no floating
point is used anywhere.  Vectors are plain tuples, matrices are sequences of
row vectors.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

LatticePoint = tuple[int, ...]
RationalVector = tuple[Fraction, ...]


class ZeroVector(ValueError):
    """The zero vector has no direction."""


class DimensionMismatch(ValueError):
    """Vectors of incompatible lengths were combined."""


class NotInSpan(ValueError):
    """The target is not a rational combination of the given vectors."""


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def vscale(c, u):
    return tuple(c * a for a in u)


def vdot(u, v):
    if len(u) != len(v):
        raise DimensionMismatch(f"dot of lengths {len(u)} and {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def vsum(vectors, dim=None):
    """Componentwise sum; `dim` is required for an empty sequence."""
    vectors = list(vectors)
    if not vectors:
        if dim is None:
            raise DimensionMismatch("empty sum without explicit dimension")
        return (0,) * dim
    acc = vectors[0]
    for v in vectors[1:]:
        acc = vadd(acc, v)
    return acc


def content(v) -> int:
    """gcd of the absolute values of the coordinates (0 for the zero vector)."""
    g = 0
    for a in v:
        g = gcd(g, abs(a))
    return g


def primitive_vector(v: LatticePoint) -> LatticePoint:
    """Divide an integer vector by its content, keeping the direction."""
    g = content(v)
    if g == 0:
        raise ZeroVector("cannot normalize the zero vector")
    if g == 1:
        return tuple(v)
    return tuple(a // g for a in v)


def determinant(vs) -> int:
    """Exact determinant of the integer matrix whose rows are `vs`.

    Uses fraction-free Bareiss elimination, so intermediate values stay
    integral regardless of size.
    """
    rows = [list(r) for r in vs]
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise DimensionMismatch(f"need {n} vectors of dimension {n}")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return sign * rows[n - 1][n - 1]


def solve_columns(columns, target):
    """Solve sum_j c_j * columns[j] = target exactly over the rationals.

    Returns the coefficient list (free coefficients set to 0) or None if the
    system is inconsistent.
    """
    m = len(target)
    k = len(columns)
    aug = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(m)]
    pivots = []
    row = 0
    for col in range(k):
        pivot = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[row], aug[pivot] = aug[pivot], aug[row]
        pv = aug[row][col]
        aug[row] = [a / pv for a in aug[row]]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if aug[r][k] != 0:
            return None
    coeffs = [Fraction(0)] * k
    for r, c in pivots:
        coeffs[c] = aug[r][k]
    return coeffs


def solve_integer_relation(targets, basis):
    """Coefficients c with sum(targets) = sum_i c_i * basis[i], exactly.

    Raises NotInSpan when the summed target lies outside the span.
    """
    if not targets:
        raise DimensionMismatch("need at least one target vector")
    t = vsum(targets)
    coeffs = solve_columns(basis, t)
    if coeffs is None:
        raise NotInSpan("target sum is outside the span of the basis")
    return coeffs


def rational_rank(rows) -> int:
    """Rank over Q of the matrix with the given rows."""
    mat = [[Fraction(a) for a in r] for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [a / pv for a in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def unimodular_inverse(rows):
    """Integer inverse of a unimodular integer matrix (|det| = 1)."""
    n = len(rows)
    aug = [[Fraction(rows[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [a / pv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    inv = []
    for i in range(n):
        row = aug[i][n:]
        if any(a.denominator != 1 for a in row):
            raise ValueError("matrix is not unimodular")
        inv.append(tuple(int(a) for a in row))
    return inv


def phase_one(rows, rhs):
    """Exact phase-one simplex: decide whether {x >= 0 : rows . x = rhs} is nonempty.

    Minimizes the sum of artificial variables with Bland's rule, so the run
    always terminates.  Returns a triple (feasible, x, y):

    * feasible: whether the system has a solution,
    * x: a solution (length = number of columns) when feasible, else None,
    * y: a Farkas certificate when infeasible, else None.  It satisfies
      y . rows[:, j] <= 0 for every column j and y . rhs > 0, exactly.
    """
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    tab = []
    b = []
    flip = []
    for i in range(m):
        if rhs[i] < 0:
            tab.append([Fraction(-a) for a in rows[i]])
            b.append(Fraction(-rhs[i]))
            flip.append(-1)
        else:
            tab.append([Fraction(a) for a in rows[i]])
            b.append(Fraction(rhs[i]))
            flip.append(1)
    # append artificial identity columns
    for i in range(m):
        tab[i] += [Fraction(int(i == j)) for j in range(m)]
    total = ncols + m
    basis = list(range(ncols, total))
    # reduced costs for min(sum of artificials): c_j - 1^T A_j
    cost = [Fraction(0)] * total
    for j in range(ncols):
        cost[j] = -sum(tab[i][j] for i in range(m))
    value = -sum(b)

    while True:
        enter = next((j for j in range(total) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = b[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise AssertionError("phase-one objective is bounded; no pivot row found")
        pv = tab[leave][enter]
        tab[leave] = [a / pv for a in tab[leave]]
        b[leave] /= pv
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * c for a, c in zip(tab[i], tab[leave])]
                b[i] -= f * b[leave]
        f = cost[enter]
        cost = [a - f * c for a, c in zip(cost, tab[leave])]
        value -= f * b[leave]
        basis[leave] = enter

    optimum = -value
    if optimum == 0:
        x = [Fraction(0)] * ncols
        for i, var in enumerate(basis):
            if var < ncols:
                x[var] = b[i]
        return True, x, None
    # dual from the reduced costs of the artificial columns: y'_i = 1 - cost[art_i]
    y = [flip[i] * (1 - cost[ncols + i]) for i in range(m)]
    return False, None, y
