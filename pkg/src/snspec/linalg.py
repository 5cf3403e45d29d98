"""Exact rational linear algebra: solving, determinants, rank, LP feasibility.

Everything here works over Fraction (or int) entries and never touches
floating point.  The simplex uses Bland's rule, so termination is guaranteed;
an infeasible system yields an exact Farkas certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def gaussian_solve(matrix, rhs):
    """Solve a square system exactly.  Returns the solution vector.

    Raises ValueError if the matrix is singular.
    """
    m = [[Fraction(x) for x in row] for row in matrix]
    b = [Fraction(x) for x in rhs]
    n = len(m)
    if any(len(row) != n for row in m) or len(b) != n:
        raise ValueError("system is not square")
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        b[col], b[pivot] = b[pivot], b[col]
        inv = m[col][col]
        for r in range(n):
            if r == col or m[r][col] == 0:
                continue
            factor = m[r][col] / inv
            m[r] = [a - factor * c for a, c in zip(m[r], m[col])]
            b[r] -= factor * b[col]
    return [b[i] / m[i][i] for i in range(n)]


def det_bareiss(matrix) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for col in range(n - 1):
        if a[col][col] == 0:
            pivot = next((r for r in range(col + 1, n) if a[r][col] != 0), None)
            if pivot is None:
                return 0
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        for r in range(col + 1, n):
            for c in range(col + 1, n):
                a[r][c] = (a[r][c] * a[col][col] - a[r][col] * a[col][c]) // prev
            a[r][col] = 0
        prev = a[col][col]
    return sign * a[-1][-1]


def rational_rank(rows) -> int:
    """Rank over the rationals, by maintaining a reduced pivot basis."""
    basis = []  # list of (pivot_col, row) with row[pivot_col] == 1
    for row in rows:
        work = [Fraction(x) for x in row]
        for pivot_col, pivot_row in basis:
            coeff = work[pivot_col]
            if coeff:
                work = [a - coeff * b for a, b in zip(work, pivot_row)]
        lead = next((i for i, x in enumerate(work) if x != 0), None)
        if lead is None:
            continue
        inv = work[lead]
        work = [x / inv for x in work]
        basis.append((lead, work))
    return len(basis)


@dataclass
class FeasibilityResult:
    """Outcome of an exact LP feasibility problem.

    If feasible, `x` holds one solution for the original variables.  If not,
    `farkas` holds one multiplier per original constraint: multipliers for
    `>=` rows are nonnegative, the combination of left-hand sides vanishes on
    every free variable (and is <= 0 on every nonnegative variable), yet the
    combination of right-hand sides is positive.
    """

    feasible: bool
    x: list[Fraction] | None = None
    farkas: list[Fraction] | None = None


def solve_feasibility(num_vars, eq_rows, eq_rhs, ge_rows, ge_rhs,
                      nonneg=False) -> FeasibilityResult:
    """Decide whether {x : eq_rows x = eq_rhs, ge_rows x >= ge_rhs} is non-empty.

    Variables are free by default; pass nonneg=True to constrain x >= 0.
    Uses a phase-1 simplex with Bland's rule over exact rationals.
    """
    cols_per_var = 1 if nonneg else 2
    rows = [list(r) for r in eq_rows] + [list(r) for r in ge_rows]
    rhs = list(eq_rhs) + list(ge_rhs)
    n_eq = len(eq_rows)
    n_ge = len(ge_rows)
    m = n_eq + n_ge
    n_slack = n_ge

    width = num_vars * cols_per_var + n_slack
    tableau = []
    flips = []
    for i in range(m):
        row = [Fraction(0)] * width
        for j in range(num_vars):
            a = Fraction(rows[i][j])
            if nonneg:
                row[j] = a
            else:
                row[2 * j] = a
                row[2 * j + 1] = -a
        if i >= n_eq:
            row[num_vars * cols_per_var + (i - n_eq)] = Fraction(-1)
        b = Fraction(rhs[i])
        if b < 0:
            row = [-a for a in row]
            b = -b
            flips.append(-1)
        else:
            flips.append(1)
        tableau.append(row + [b])

    # Phase 1: artificial basis, minimize the artificial sum.
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tableau[i] = tableau[i][:-1] + art + [tableau[i][-1]]
    total_cols = width + m
    obj = [Fraction(0)] * (total_cols + 1)
    for i in range(m):
        for j in range(total_cols + 1):
            obj[j] -= tableau[i][j]
    for i in range(m):
        obj[width + i] = Fraction(0)
    basis = [width + i for i in range(m)]

    while True:
        enter = next((j for j in range(total_cols) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise AssertionError("phase-1 objective is bounded; no pivot found")
        piv = tableau[leave][enter]
        tableau[leave] = [a / piv for a in tableau[leave]]
        for i in range(m):
            if i != leave and tableau[i][enter]:
                f = tableau[i][enter]
                tableau[i] = [a - f * b for a, b in zip(tableau[i], tableau[leave])]
        if obj[enter]:
            f = obj[enter]
            obj = [a - f * b for a, b in zip(obj, tableau[leave])]
        basis[leave] = enter

    value = -obj[-1]
    if value > 0:
        # y_i = 1 - reduced cost of artificial i, unflipped back to row i's sign.
        farkas = [flips[i] * (1 - obj[width + i]) for i in range(m)]
        return FeasibilityResult(False, farkas=farkas)

    solution = [Fraction(0)] * width
    for i, var in enumerate(basis):
        if var < width:
            solution[var] = tableau[i][-1]
    if nonneg:
        x = solution[:num_vars]
    else:
        x = [solution[2 * j] - solution[2 * j + 1] for j in range(num_vars)]
    return FeasibilityResult(True, x=x)


def verify_farkas(farkas, num_vars, eq_rows, eq_rhs, ge_rows, ge_rhs,
                  nonneg=False) -> bool:
    """Check a Farkas certificate exactly against the original system."""
    m = len(eq_rows) + len(ge_rows)
    if len(farkas) != m:
        return False
    n_eq = len(eq_rows)
    for i in range(n_eq, m):
        if farkas[i] < 0:
            return False
    rows = list(eq_rows) + list(ge_rows)
    rhs = list(eq_rhs) + list(ge_rhs)
    for j in range(num_vars):
        combo = sum(farkas[i] * Fraction(rows[i][j]) for i in range(m))
        if nonneg:
            if combo > 0:
                return False
        elif combo != 0:
            return False
    total = sum(farkas[i] * Fraction(rhs[i]) for i in range(m))
    return total > 0
